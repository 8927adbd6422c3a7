"""
Leaving the Fredholm class along a path
=======================================

S = I_1 (+) 0 is not Fredholm but is B-Fredholm of index 0.  The straight
line to T = I_1 (+) T_{z^-1} is Fredholm for every t > 0 with index 1, so
the index jumps at t = 0 while staying B-Fredholm throughout.
"""
from opindex.bfredholm import bclassify, dis, stabilization_check
from opindex.exactcore import ExactMatrix
from opindex.fredholm import is_fredholm
from opindex.pathconnect import connect_equal_index, tbp_demo, verify_path
from opindex.opmodel import finite, operator, toeplitz

path, report = tbp_demo(10)
S, T = path.samples[0], path.samples[-1]
print("S:", is_fredholm(S))
print("S:", bclassify(S))
for entry in report.index_profile:
    print(f"  t = {str(entry.t):>5}  {entry.status:<10} index {entry.index}")
print("all B-Fredholm:", report.all_bfredholm, " all Fredholm:", report.all_fredholm)

# The degree of stable iteration of a nilpotent Jordan chain equals its length.
jordan = ExactMatrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
print("dis of a 3x3 Jordan block:", dis(operator(finite([[0, 1, 0], [0, 0, 1], [0, 0, 0]]))))
print(stabilization_check(jordan))

# Two operators with equal B-index can always be joined; the connecting path
# passes through non-Fredholm operators when the block windings differ.
a = operator(toeplitz({-1: 1}), toeplitz({1: 1}))
b = operator(toeplitz({0: 1}), toeplitz({0: 1}))
p = connect_equal_index(a, b, 3)
r = verify_path(p)
print("samples:", len(p.samples), " statuses:", sorted({e.status for e in r.index_profile}))
print("indices along the path:", r.indices)
