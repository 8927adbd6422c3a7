"""JSON documents for operators, families, paths and normal diagonal operators.

Rationals are always strings ("p/q"); Gaussian rationals are emitted as
{"re": ..., "im": ...} and accepted either that way or as a bare string.
Parse errors carry the JSON location of the offending field.
"""
import json

from .errors import InputError, MalformedDocument
from .exactcore import ExactMatrix, GaussianRational, LaurentPoly, format_rational, parse_rational
from .family import IndexVector, OperatorFamily, ParamComplex, ComponentIndex
from .opmodel import BlockOperator, FiniteBlock, ToeplitzBlock, validate_operator
from .pathconnect import OperatorPath
from .weyl import FiniteSpectralBlock, NormalDiagonalOperator, SpectralFamily


def _expect(doc, kind, location):
    if not isinstance(doc, kind):
        name = {dict: "an object", list: "a list", str: "a string"}.get(kind, kind.__name__)
        raise MalformedDocument(f"expected {name}", location)
    return doc


def _keys(doc, allowed, required, location):
    extra = set(doc) - set(allowed)
    if extra:
        raise MalformedDocument(f"unexpected keys {sorted(extra)}", location)
    for k in required:
        if k not in doc:
            raise MalformedDocument(f"missing key {k!r}", location)


# matrices and operators

def matrix_from_json(doc, location):
    _expect(doc, list, location)
    rows = [[GaussianRational.from_json(x, f"{location}[{i}][{j}]")
             for j, x in enumerate(_expect(row, list, f"{location}[{i}]"))] for i, row in enumerate(doc)]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise MalformedDocument("matrix must be square", location)
    return ExactMatrix(rows, n, n)


def matrix_to_json(m):
    return [[x.to_json() for x in row] for row in m.entries]


def block_from_json(doc, location):
    _expect(doc, dict, location)
    kind = doc.get("type")
    if kind == "finite":
        _keys(doc, ("type", "matrix"), ("matrix",), location)
        m = matrix_from_json(doc["matrix"], f"{location}.matrix")
        if m.rows == 0:
            raise MalformedDocument("finite block must be nonempty", f"{location}.matrix")
        return FiniteBlock(m)
    if kind == "toeplitz":
        _keys(doc, ("type", "symbol", "patch"), ("symbol",), location)
        sym = LaurentPoly.from_json(doc["symbol"], f"{location}.symbol")
        patch = doc.get("patch")
        patch = None if patch is None else matrix_from_json(patch, f"{location}.patch")
        return ToeplitzBlock(sym, patch)
    raise MalformedDocument(f"block type must be 'finite' or 'toeplitz', got {kind!r}", f"{location}.type")


def block_to_json(b):
    if isinstance(b, FiniteBlock):
        return {"type": "finite", "matrix": matrix_to_json(b.matrix)}
    out = {"type": "toeplitz", "symbol": b.symbol.to_json()}
    if b.patch is not None:
        out["patch"] = matrix_to_json(b.patch)
    return out


def operator_from_json(doc, location="$"):
    _expect(doc, dict, location)
    _keys(doc, ("blocks",), ("blocks",), location)
    blocks = _expect(doc["blocks"], list, f"{location}.blocks")
    if not blocks:
        raise MalformedDocument("an operator needs at least one block", f"{location}.blocks")
    op = BlockOperator(tuple(block_from_json(b, f"{location}.blocks[{i}]") for i, b in enumerate(blocks)))
    return validate_operator(op)


def operator_to_json(a):
    return {"blocks": [block_to_json(b) for b in a.blocks]}


# complexes and families

def _edge_name(u, v):
    return f"{u}|{v}"


def complex_from_json(doc, location="$"):
    _expect(doc, dict, location)
    verts = _expect(doc.get("vertices"), list, f"{location}.vertices")
    for i, v in enumerate(verts):
        _expect(v, str, f"{location}.vertices[{i}]")
    edges = _expect(doc.get("edges", []), list, f"{location}.edges")
    pairs = []
    for i, e in enumerate(edges):
        e = _expect(e, list, f"{location}.edges[{i}]")
        if len(e) != 2:
            raise MalformedDocument("an edge joins exactly two vertices", f"{location}.edges[{i}]")
        pairs.append(tuple(e))
    return ParamComplex(tuple(verts), tuple(pairs))


def complex_to_json(c):
    return {"vertices": list(c.vertices), "edges": [list(e) for e in c.edges]}


def family_from_json(doc, location="$"):
    _expect(doc, dict, location)
    _keys(doc, ("vertices", "edges", "operators", "edge_bounds"), ("vertices", "operators"), location)
    c = complex_from_json(doc, location)
    ops = _expect(doc["operators"], dict, f"{location}.operators")
    assignment = {v: operator_from_json(d, f"{location}.operators[{v}]") for v, d in ops.items()}
    bounds = None
    if doc.get("edge_bounds") is not None:
        bounds = {}
        for key, val in _expect(doc["edge_bounds"], dict, f"{location}.edge_bounds").items():
            parts = key.split("|")
            if len(parts) != 2:
                raise MalformedDocument(f"edge key {key!r} must look like 'u|v'", f"{location}.edge_bounds")
            bounds[tuple(parts)] = parse_rational(val, f"{location}.edge_bounds[{key}]")
    return OperatorFamily(c, assignment, bounds)


def family_to_json(f):
    out = complex_to_json(f.complex)
    out["operators"] = {v: operator_to_json(f[v]) for v in f.complex.vertices}
    if f.edge_bounds:
        out["edge_bounds"] = {_edge_name(u, v): format_rational(b) for (u, v), b in sorted(f.edge_bounds.items())}
    return out


def index_vector_to_json(u):
    return u.to_json()


def index_vector_from_json(doc, location="$"):
    _expect(doc, dict, location)
    comps = _expect(doc.get("components"), list, f"{location}.components")
    out = []
    for i, c in enumerate(comps):
        loc = f"{location}.components[{i}]"
        _expect(c, dict, loc)
        idx = c.get("index")
        if not isinstance(idx, int) or isinstance(idx, bool):
            raise MalformedDocument("index must be an integer", f"{loc}.index")
        rep = _expect(c.get("rep"), str, f"{loc}.rep")
        out.append(ComponentIndex(rep, tuple(c.get("members", [rep])), idx))
    return IndexVector(tuple(out))


# paths

def path_from_json(doc, location="$"):
    _expect(doc, dict, location)
    _keys(doc, ("grid", "samples"), ("grid", "samples"), location)
    grid = [parse_rational(t, f"{location}.grid[{i}]")
            for i, t in enumerate(_expect(doc["grid"], list, f"{location}.grid"))]
    samples = [operator_from_json(s, f"{location}.samples[{i}]")
               for i, s in enumerate(_expect(doc["samples"], list, f"{location}.samples"))]
    return OperatorPath(tuple(grid), tuple(samples))


def path_to_json(p):
    return {"grid": [format_rational(t) for t in p.grid], "samples": [operator_to_json(s) for s in p.samples]}


# normal diagonal operators

def normal_from_json(doc, location="$"):
    _expect(doc, dict, location)
    if "matrix" in doc:
        _keys(doc, ("matrix", "eigenvalues"), ("matrix",), location)
        m = matrix_from_json(doc["matrix"], f"{location}.matrix")
        if "eigenvalues" not in doc:
            return FiniteSpectralBlock.from_triangular(m)
        eig = []
        for i, e in enumerate(_expect(doc["eigenvalues"], list, f"{location}.eigenvalues")):
            loc = f"{location}.eigenvalues[{i}]"
            _expect(e, dict, loc)
            eig.append((GaussianRational.from_json(e.get("value"), f"{loc}.value"), _mult(e, loc)))
        return FiniteSpectralBlock(m, tuple(eig))
    _keys(doc, ("exceptional", "tails"), ("tails",), location)
    exc = []
    for i, e in enumerate(_expect(doc.get("exceptional", []), list, f"{location}.exceptional")):
        loc = f"{location}.exceptional[{i}]"
        _expect(e, dict, loc)
        exc.append((GaussianRational.from_json(e.get("value"), f"{loc}.value"), _mult(e, loc)))
    tails = [GaussianRational.from_json(t, f"{location}.tails[{i}]")
             for i, t in enumerate(_expect(doc["tails"], list, f"{location}.tails"))]
    return NormalDiagonalOperator(tuple(exc), frozenset(tails))


def _mult(e, loc):
    m = e.get("mult")
    if not isinstance(m, int) or isinstance(m, bool) or m <= 0:
        raise MalformedDocument("mult must be a positive integer", f"{loc}.mult")
    return m


def normal_to_json(op):
    if isinstance(op, FiniteSpectralBlock):
        return {"matrix": matrix_to_json(op.matrix),
                "eigenvalues": [{"value": v.to_json(), "mult": m} for v, m in op.eigenvalues]}
    return {"exceptional": [{"value": v.to_json(), "mult": m} for v, m in op.exceptional],
            "tails": [t.to_json() for t in sorted(op.tails, key=lambda g: g.sort_key())]}


def spectral_family_from_json(doc, location="$"):
    """Either a single normal-diagonal document or a family of them under "operators"."""
    _expect(doc, dict, location)
    if "operators" not in doc:
        return SpectralFamily(("x",), {"x": normal_from_json(doc, location)})
    c = complex_from_json(doc, location)
    ops = _expect(doc["operators"], dict, f"{location}.operators")
    return SpectralFamily(c.vertices, {v: normal_from_json(d, f"{location}.operators[{v}]")
                                       for v, d in ops.items()}, c.edges)


def spectral_family_to_json(f):
    return {"vertices": list(f.vertices), "edges": [list(e) for e in f.edges],
            "operators": {v: normal_to_json(f.assignment[v]) for v in f.vertices}}


# files

PARSERS = {
    "operator": operator_from_json,
    "family": family_from_json,
    "path": path_from_json,
    "normal-diagonal": spectral_family_from_json,
    "complex": complex_from_json,
    "index-vector": index_vector_from_json,
}


def loads(text, kind):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedDocument(e.msg, f"line {e.lineno}, column {e.colno}") from None
    try:
        return PARSERS[kind](doc)
    except InputError:
        raise
    except (ValueError, TypeError) as e:
        raise MalformedDocument(str(e), "$") from None


def parse_document(path, kind):
    """Read and validate a UTF-8 JSON document of the given kind."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return loads(text, kind)


def dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=2)
