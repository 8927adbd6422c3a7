"""
Toeplitz indices from winding numbers
=====================================

Walk through exact index computations for block Toeplitz operators and
compare them with a floating-point finite-section estimate.
"""
import numpy as np

from opindex.exactcore import LaurentPoly, winding
from opindex.fredholm import index, is_fredholm, nullity_defect, symbol_margin
from opindex.opmodel import adjoint, combine, finite, operator, toeplitz

# The unilateral shift has symbol z, winding 1, so its index is -1.
tz = operator(toeplitz({1: 1}))
print("ind T_z      =", index(tz))
print("ind T_z*     =", index(adjoint(tz)))

# Winding counts roots inside the disk exactly; no sampling is involved.
f = LaurentPoly({-1: 3, 0: 1, 2: "1/2"})
print("winding of", f, "=", winding(f))

# Symbols touching the circle are rejected with a reason.
print(is_fredholm(operator(toeplitz({1: 1, 0: -1}))))

# Indices add under composition, with the finite block contributing nothing.
a = operator(finite([[1, 2], [0, 3]]), toeplitz({-1: 1, 0: "1/4"}))
b = operator(finite([[0, 1], [1, 0]]), toeplitz({2: 1}))
ab = combine(a, b, "compose")
print("ind a, ind b, ind ab:", index(a), index(b), index(ab))

# A certified lower bound for |f| on the circle: perturbations smaller than
# this keep the operator Fredholm with the same index.
print("margin of z - 2:", symbol_margin(LaurentPoly({1: 1, 0: -2})))
print("margin of 3 + z + z^-2/2:", float(symbol_margin(LaurentPoly({0: 3, 1: 1, -2: "1/2"}))))

# Nullity and defect are exact for unpatched blocks.  A patch can shift
# kernel against cokernel, so those fall back to uncertified finite sections.
print("unpatched:", nullity_defect(a))
patched = operator(toeplitz({1: 1}, [[5, 0], [1, 2]]))
print("patched, default mode:", nullity_defect(patched))
print("finite section (256):", nullity_defect(patched, mode="finite_section", size=256, tol=1e-8))

# Argument principle by hand for comparison.
theta = np.linspace(0, 2 * np.pi, 4097)
vals = sum(complex(c) * np.exp(1j * k * theta) for k, c in f.items())
print("numeric winding:", round(np.sum(np.diff(np.unwrap(np.angle(vals)))) / (2 * np.pi)))
