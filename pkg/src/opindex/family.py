"""Operator families over finite parameter complexes and their index vectors.

The parameter space is a finite graph; connected components play the role
of the components of the space, and the family index is one integer per
component.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Tuple

import numpy as np

from .errors import (ComponentMismatch, EdgeBoundViolated, EndpointMismatch, IndexChangedAlongHomotopy,
                     IndexMismatchWithinComponent, MalformedDocument, NonFredholmAt, ShapeMismatch)
from .exactcore import ExactMatrix, GaussianRational, LaurentPoly
from .fredholm import fredholm_margin, is_fredholm
from .opmodel import BlockOperator, FiniteBlock, ToeplitzBlock, combine, norm_bound, scale, toeplitz, operator


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the smaller identifier as root so representatives are deterministic
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _edge_key(u, v):
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class ParamComplex:
    vertices: Tuple[str, ...]
    edges: Tuple[Tuple[str, str], ...] = ()

    def __post_init__(self):
        vertices = tuple(self.vertices)
        if len(set(vertices)) != len(vertices):
            raise MalformedDocument("duplicate vertex identifiers", "vertices")
        known = set(vertices)
        edges = set()
        for i, e in enumerate(self.edges):
            if len(e) != 2:
                raise MalformedDocument("an edge joins exactly two vertices", f"edges[{i}]")
            u, v = e
            if u not in known or v not in known:
                raise MalformedDocument(f"edge ({u!r}, {v!r}) uses an undeclared vertex", f"edges[{i}]")
            if u == v:
                raise MalformedDocument(f"self-loop at {u!r}", f"edges[{i}]")
            edges.add(_edge_key(u, v))
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", tuple(sorted(edges)))


def connected_components(c):
    """Components as sorted member lists, ordered by their least member."""
    uf = UnionFind(c.vertices)
    for u, v in c.edges:
        uf.union(u, v)
    groups = {}
    for x in c.vertices:
        groups.setdefault(uf.find(x), []).append(x)
    return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


def path_complex(n, prefix="x"):
    names = [f"{prefix}{i}" for i in range(n)]
    return ParamComplex(tuple(names), tuple(zip(names, names[1:])))


@dataclass(frozen=True)
class OperatorFamily:
    complex: ParamComplex
    assignment: Mapping[str, BlockOperator]
    edge_bounds: Optional[Mapping[Tuple[str, str], Fraction]] = None

    def __post_init__(self):
        missing = [v for v in self.complex.vertices if v not in self.assignment]
        if missing:
            raise MalformedDocument(f"no operator for vertices {missing}", "operators")
        extra = [v for v in self.assignment if v not in set(self.complex.vertices)]
        if extra:
            raise MalformedDocument(f"operators given for undeclared vertices {extra}", "operators")
        sigs = {self.assignment[v].signature for v in self.complex.vertices}
        if len(sigs) > 1:
            raise ShapeMismatch("all operators of a family must share one block signature")
        object.__setattr__(self, "assignment", dict(self.assignment))
        if self.edge_bounds is not None:
            bounds = {}
            edges = set(self.complex.edges)
            for (u, v), b in dict(self.edge_bounds).items():
                key = _edge_key(u, v)
                if key not in edges:
                    raise MalformedDocument(f"edge bound for non-edge {u!r}|{v!r}", "edge_bounds")
                bounds[key] = Fraction(b)
            object.__setattr__(self, "edge_bounds", bounds)

    def __getitem__(self, v):
        return self.assignment[v]

    def check_edge_bounds(self):
        """Verify norm_bound(T_u - T_v) <= declared bound on every bounded edge."""
        for (u, v), bound in (self.edge_bounds or {}).items():
            actual = norm_bound(self.assignment[u] - self.assignment[v])
            if actual > bound:
                raise EdgeBoundViolated((u, v), bound, actual)

    def map(self, fn):
        return OperatorFamily(self.complex, {v: fn(v, op) for v, op in self.assignment.items()})


@dataclass(frozen=True)
class ComponentIndex:
    rep: str
    members: Tuple[str, ...]
    index: int


@dataclass(frozen=True)
class IndexVector:
    components: Tuple[ComponentIndex, ...]

    @property
    def entries(self):
        return {c.rep: c.index for c in self.components}

    def values(self):
        return tuple(c.index for c in self.components)

    def is_zero(self):
        return all(c.index == 0 for c in self.components)

    def to_json(self):
        return {"components": [{"rep": c.rep, "members": list(c.members), "index": c.index}
                               for c in self.components]}

    @classmethod
    def from_entries(cls, c, entries):
        """Build from a map rep -> index for the components of complex c."""
        comps = connected_components(c)
        reps = [g[0] for g in comps]
        if set(entries) != set(reps):
            raise ComponentMismatch(f"index entries {sorted(entries)} do not match components {reps}")
        return cls(tuple(ComponentIndex(g[0], tuple(g), int(entries[g[0]])) for g in comps))


def vertex_indices(f, layer=None):
    out = {}
    for v in f.complex.vertices:
        verdict = is_fredholm(f[v])
        if not verdict.is_fredholm:
            raise NonFredholmAt(v, verdict.reason, layer)
        out[v] = verdict.index
    return out


def family_index(f):
    """One index per connected component.

    Every vertex must carry a Fredholm operator and the index must agree
    along every edge; otherwise no continuous Fredholm family can pass
    through the samples.
    """
    f.check_edge_bounds()
    ind = vertex_indices(f)
    for u, v in f.complex.edges:
        if ind[u] != ind[v]:
            raise IndexMismatchWithinComponent((u, v), (ind[u], ind[v]))
    comps = connected_components(f.complex)
    return IndexVector(tuple(ComponentIndex(g[0], tuple(g), ind[g[0]]) for g in comps))


def is_weyl_family(f):
    try:
        return family_index(f).is_zero()
    except (NonFredholmAt, IndexMismatchWithinComponent, EdgeBoundViolated):
        return False


# homotopies

LAYER_SEP = "@"


def layer_vertex(x, k):
    return f"{x}{LAYER_SEP}{k}"


def product_with_path(c, layers):
    """Graph product of c with a path of ``layers`` time samples, vertices 'x@k'."""
    verts = [layer_vertex(x, k) for k in range(layers) for x in c.vertices]
    edges = [(layer_vertex(u, k), layer_vertex(v, k)) for k in range(layers) for u, v in c.edges]
    edges += [(layer_vertex(x, k), layer_vertex(x, k + 1)) for k in range(layers - 1) for x in c.vertices]
    return ParamComplex(tuple(verts), tuple(edges))


def homotopy_family(s, layer_ops):
    """Build the family on c x path from a list of per-layer assignments (dicts vertex -> operator)."""
    c = s.complex
    prod = product_with_path(c, len(layer_ops))
    assignment = {layer_vertex(x, k): ops[x] for k, ops in enumerate(layer_ops) for x in c.vertices}
    return OperatorFamily(prod, assignment)


@dataclass(frozen=True)
class HomotopyReport:
    passed: bool
    layers: int
    table: Tuple[IndexVector, ...]


def homotopy_check(h, s, t):
    """Verify that h is a sampled Fredholm homotopy from s to t and that the indices agree."""
    if s.complex != t.complex:
        raise EndpointMismatch("endpoint families live on different complexes")
    nv = len(s.complex.vertices)
    if nv == 0 or len(h.complex.vertices) % nv:
        raise MalformedDocument("homotopy complex is not a product with a time path", "vertices")
    layers = len(h.complex.vertices) // nv
    if layers < 2 or h.complex != product_with_path(s.complex, layers):
        raise MalformedDocument("homotopy complex is not the product of the endpoint complex "
                                "with a path of time layers", "vertices")
    for x in s.complex.vertices:
        if h[layer_vertex(x, 0)] != s[x]:
            raise EndpointMismatch(f"layer 0 differs from the start family at {x!r}")
        if h[layer_vertex(x, layers - 1)] != t[x]:
            raise EndpointMismatch(f"last layer differs from the end family at {x!r}")
    table = []
    for k in range(layers):
        layer = OperatorFamily(s.complex, {x: h[layer_vertex(x, k)] for x in s.complex.vertices})
        ind = vertex_indices(layer, layer=k)
        for u, v in s.complex.edges:
            if ind[u] != ind[v]:
                raise IndexMismatchWithinComponent((layer_vertex(u, k), layer_vertex(v, k)), (ind[u], ind[v]))
        table.append(family_index(layer))
    for k in range(1, layers):
        if table[k] != table[0]:
            raise IndexChangedAlongHomotopy(
                f"index vector changes between layers 0 and {k}: {table[0].values()} vs {table[k].values()}")
    if family_index(s) != family_index(t):
        raise IndexChangedAlongHomotopy("endpoint families have different index vectors")
    return HomotopyReport(True, layers, tuple(table))


# synthesis

def synthesize_family(c, u):
    """Constant family T_{z^-n_i} on the i-th component, realizing index vector u."""
    comps = connected_components(c)
    entries = u.entries if isinstance(u, IndexVector) else dict(u)
    reps = [g[0] for g in comps]
    if set(entries) != set(reps):
        raise ComponentMismatch(f"index entries {sorted(entries)} do not match components {reps}")
    assignment = {}
    for g in comps:
        op = operator(toeplitz({-entries[g[0]]: 1}))
        for x in g:
            assignment[x] = op
    return OperatorFamily(c, assignment)


# local constancy

def _random_gaussian(rng, den=16):
    re, im = rng.integers(-den, den + 1, size=2)
    return GaussianRational(Fraction(int(re), den), Fraction(int(im), den))


def random_like(a, rng, band=2, patch_max=3):
    """Random operator with the block signature of ``a`` (rational entries in [-1, 1])."""
    blocks = []
    for b in a.blocks:
        if isinstance(b, FiniteBlock):
            n = b.size
            blocks.append(FiniteBlock(ExactMatrix([[_random_gaussian(rng) for _ in range(n)] for _ in range(n)])))
        else:
            lo = int(rng.integers(-band, 1))
            hi = int(rng.integers(0, band + 1))
            sym = LaurentPoly({d: _random_gaussian(rng) for d in range(lo, hi + 1)})
            k = int(rng.integers(0, patch_max + 1))
            patch = ExactMatrix([[_random_gaussian(rng) for _ in range(k)] for _ in range(k)]) if k else None
            blocks.append(ToeplitzBlock(sym, patch))
    return BlockOperator(tuple(blocks))


def random_perturbation(a, radius, rng):
    """Random same-signature operator p with norm_bound(p) < radius."""
    p = random_like(a, rng)
    nb = norm_bound(p)
    if nb == 0:
        return p
    frac = Fraction(int(rng.integers(1, 100)), 100)
    return scale(p, GaussianRational(radius * frac / nb))


@dataclass(frozen=True)
class LocalConstancyReport:
    margin: Optional[Fraction]
    radius: Fraction
    trials: int
    failures: int
    index: IndexVector

    @property
    def passed(self):
        return self.failures == 0


def family_margin(f):
    margins = [fredholm_margin(f[v]) for v in f.complex.vertices]
    finite = [m for m in margins if m is not None]
    return min(finite) if finite else None


def local_constancy_check(f, trials, seed=0, default_radius=Fraction(1)):
    """Perturb every vertex by less than the certified margin and recompute the index vector.

    The radius is the least vertex margin (``default_radius`` when no vertex
    has a Toeplitz block and any perturbation is admissible).
    """
    base = family_index(f)
    m = family_margin(f)
    radius = m if m is not None else default_radius
    rng = np.random.default_rng(seed)
    failures = 0
    for _ in range(trials):
        pert = OperatorFamily(f.complex, {v: combine(op, random_perturbation(op, radius, rng), "add")
                                          for v, op in f.assignment.items()})
        try:
            if family_index(pert) != base:
                failures += 1
        except (NonFredholmAt, IndexMismatchWithinComponent):
            failures += 1
    return LocalConstancyReport(m, radius, trials, failures, base)
