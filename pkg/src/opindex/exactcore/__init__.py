"""Exact scalar, polynomial and linear-algebra substrate."""
from .scalars import GaussianRational, gq, ZERO, ONE, I, parse_rational, format_rational
from .polynomials import schur_cohn_count, circle_roots_exist, cauchy_disk_count
from .laurent import LaurentPoly, winding, vanishes_on_circle
from .matrices import (ExactMatrix, LinearData, SubspaceDims, linear_data, rank, rank_of,
                       kernel_basis, image_basis, subspace_dims)

__all__ = [
    "GaussianRational", "gq", "ZERO", "ONE", "I", "parse_rational", "format_rational",
    "schur_cohn_count", "circle_roots_exist", "cauchy_disk_count",
    "LaurentPoly", "winding", "vanishes_on_circle",
    "ExactMatrix", "LinearData", "SubspaceDims", "linear_data", "rank", "rank_of",
    "kernel_basis", "image_basis", "subspace_dims",
]
