"""
Index vectors of operator families
==================================

A family assigns an operator to each vertex of a finite parameter complex.
Its index is one integer per connected component.
"""
from fractions import Fraction

from opindex.family import (
    OperatorFamily, ParamComplex, family_index, homotopy_check, homotopy_family, is_weyl_family,
    local_constancy_check, synthesize_family,
)
from opindex.opmodel import combine, scale

# Two components: a triangle and a lone vertex.
c = ParamComplex(("a", "b", "c", "d"), (("a", "b"), ("b", "c"), ("a", "c")))

# Any prescribed index vector can be realised.
f = synthesize_family(c, {"a": 3, "d": -1})
print(family_index(f).to_json())
print("Weyl family:", is_weyl_family(f))

# Random perturbations inside the certified margin leave the index alone.
r = local_constancy_check(f, 25, seed=1)
print(f"margin {r.margin}, radius {r.radius}, failures {r.failures}/{r.trials}")

# Rescaling by 1 + j/8 in small steps is a homotopy through Fredholm
# operators; the check recomputes the index on every layer.
layers = [f.assignment] + [
    {v: combine(f[v], scale(f[v], Fraction(j, 8)), "add") for v in c.vertices} for j in (1, 2, 3)
]
h = homotopy_family(f, layers)
t = OperatorFamily(c, layers[-1])
rep = homotopy_check(h, f, t)
print("homotopy passed:", rep.passed, " per-layer indices:", [u.values() for u in rep.table])
