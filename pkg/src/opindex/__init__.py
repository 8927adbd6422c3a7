"""Exact Fredholm and B-Fredholm indices for block Toeplitz operators and their families."""
__version__ = "0.1.0"
