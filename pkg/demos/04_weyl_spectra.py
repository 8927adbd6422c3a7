"""
Weyl and Browder spectra of normal diagonal families
====================================================

For normal operators the isolated eigenvalues of finite multiplicity are
exactly the spectrum minus the Weyl spectrum.  The same holds for families
when the spectra are joined over the parameter space.
"""
from opindex.exactcore import ExactMatrix, gq
from opindex.bfredholm import finite_spectral_indices
from opindex.weyl import (
    NormalDiagonalOperator, SpectralFamily, check_weyl_browder, family_spectral_report, spectral_report,
)

# diag(2, 0, 0, 0, ...): an isolated simple eigenvalue 2 and an accumulating tail at 0.
a = NormalDiagonalOperator(((gq(2), 1),), frozenset([gq(0)]))
print(spectral_report(a).to_json())

# Eigenvalue 1 of infinite multiplicity belongs to the Weyl spectrum.
b = NormalDiagonalOperator(((gq(1), 3),), frozenset([gq(0), gq(1)]))
print(spectral_report(b).to_json())

fam = SpectralFamily(("x", "y"), {"x": a, "y": NormalDiagonalOperator((), frozenset([gq(2)]))})
rep = family_spectral_report(fam)
print("family:", rep.to_json())
weyl, browder, witness = check_weyl_browder(fam)
print("Weyl holds:", weyl, " Browder holds:", browder, " witness:", witness)

# Ascent and descent of a finite matrix at an eigenvalue.
m = ExactMatrix([[1, 1, 0], [0, 1, 0], [0, 0, 3]])
print("at 1:", finite_spectral_indices(m, gq(1)))
print("at 3:", finite_spectral_indices(m, gq(3)))
