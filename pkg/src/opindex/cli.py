"""Command-line front end.

Every verb reads JSON documents, runs one library operation and prints a
report.  Exit codes: 0 success, 1 usage / IO / malformed input, 2 a
mathematical failure (the error object is printed as JSON).
"""
import argparse
import json
import sys
from fractions import Fraction

from . import bfredholm, documents, family, fredholm, pathconnect, weyl
from .errors import DomainError, InputError, NotFredholm
from .exactcore import GaussianRational, format_rational, parse_rational
from .opmodel import pad_with_identity_blocks


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# handlers return a JSON-ready dict

def _op_index(args):
    a = documents.parse_document(args.file, "operator")
    v = fredholm.is_fredholm(a)
    if not v.is_fredholm:
        err = NotFredholm(f"operator is not Fredholm ({v.reason})", v.reason)
        if v.reason == fredholm.ZERO_SYMBOL:
            err.details["hint"] = "try op-bindex"
        raise err
    return fredholm.verdict_to_json(a, args.mode, args.fs_size, args.fs_tol)


def _op_bindex(args):
    a = documents.parse_document(args.file, "operator")
    out = bfredholm.bclassify(a).to_json()
    if args.margin and fredholm.is_fredholm(a):
        m = fredholm.fredholm_margin(a)
        out["margin"] = None if m is None else format_rational(m)
    return out


def _op_dis(args):
    a = documents.parse_document(args.file, "operator")
    d = bfredholm.dis(a)
    out = {"dis": "unknown" if d is None else d}
    checks = []
    for b in a.finite_blocks():
        if b.size <= bfredholm.STABILIZATION_MAX_SIZE:
            r = bfredholm.stabilization_check(b.matrix)
            checks.append({"size": b.size, "dis": r.dis, "passed": r.passed, "psi": r.psi_values})
    if checks:
        out["finite_blocks"] = checks
    return out


def _op_spectral(args):
    fam = documents.parse_document(args.file, "normal-diagonal")
    if len(fam.vertices) != 1:
        raise UsageError("op-spectral takes a single operator; use family-weyl for families")
    op = fam.assignment[fam.vertices[0]]
    out = weyl.spectral_report(op).to_json()
    if args.at is not None:
        if not isinstance(op, weyl.FiniteSpectralBlock):
            raise UsageError("--at needs a finite matrix document")
        lam = GaussianRational.from_json(json.loads(args.at) if args.at.lstrip().startswith("{") else args.at, "--at")
        s = bfredholm.finite_spectral_indices(op.matrix, lam)
        out["at"] = {"value": lam.to_json(), "ascent": s.ascent, "descent": s.descent,
                     "pole_of_finite_rank": s.is_pole_of_finite_rank, "multiplicity": s.eigen_multiplicity}
    return out


def _family_index(args):
    f = documents.parse_document(args.file, "family")
    out = documents.index_vector_to_json(family.family_index(f))
    if args.trials:
        r = family.local_constancy_check(f, args.trials, args.seed)
        out["local_constancy"] = {"margin": None if r.margin is None else format_rational(r.margin),
                                  "radius": format_rational(r.radius), "trials": r.trials,
                                  "failures": r.failures, "seed": args.seed}
    return out


def _is_operator_family(path):
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError:
            return False
    ops = doc.get("operators") if isinstance(doc, dict) else None
    return isinstance(ops, dict) and any(isinstance(d, dict) and "blocks" in d for d in ops.values())


def _family_weyl(args):
    # operator families: the index-zero test; normal-diagonal families: Weyl and Browder
    if _is_operator_family(args.file):
        f = documents.parse_document(args.file, "family")
        return {"weyl_family": family.is_weyl_family(f)}
    fam = documents.parse_document(args.file, "normal-diagonal")
    r = weyl.check_weyl_browder(fam)
    return {"weyl_holds": r.weyl_holds, "browder_holds": r.browder_holds,
            "witness": None if r.witness is None else r.witness.to_json(), "report": r.report.to_json()}


def _family_synthesize(args):
    c = documents.parse_document(args.complex, "complex")
    if args.index is not None:
        u = {}
        for item in args.index.split(","):
            rep, _, val = item.partition("=")
            try:
                u[rep.strip()] = int(val)
            except ValueError:
                raise UsageError(f"--index entries look like rep=n, got {item!r}") from None
    elif args.vector is not None:
        u = documents.parse_document(args.vector, "index-vector").entries
    else:
        raise UsageError("give an index vector with --index rep=n,... or --vector FILE")
    return documents.family_to_json(family.synthesize_family(c, u))


def _homotopy_check(args):
    h = documents.parse_document(args.homotopy, "family")
    s = documents.parse_document(args.start, "family")
    t = documents.parse_document(args.end, "family")
    r = family.homotopy_check(h, s, t)
    return {"passed": r.passed, "layers": r.layers, "index": documents.index_vector_to_json(r.table[0])}


def _path_tbp(args):
    path, report = pathconnect.tbp_demo(args.grid)
    out = report.to_json()
    if args.emit_path:
        out["path"] = documents.path_to_json(path)
    return out


def _path_connect(args):
    s = documents.parse_document(args.start, "operator")
    t = documents.parse_document(args.end, "operator")
    if args.pad:
        s, t = pad_with_identity_blocks(s, t)
    path = pathconnect.connect_equal_index(s, t, args.grid, args.mode)
    return {"path": documents.path_to_json(path), "report": pathconnect.verify_path(path).to_json()}


def _path_verify(args):
    p = documents.parse_document(args.file, "path")
    return pathconnect.verify_path(p).to_json()


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def _nonneg(text):
    v = int(text) if text.lstrip("-").isdigit() else None
    if v is None or v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return v


def _tolerance(text):
    try:
        v = float(parse_rational(text)) if "/" in text else float(text)
    except (ValueError, InputError):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return v


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")

    p = _Parser(prog="opindex", description="Exact Fredholm and B-Fredholm index computations.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, handler, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(handler=handler)
        return sp

    sp = verb("op-index", _op_index, "Fredholm index, nullity and defect of an operator")
    sp.add_argument("file")
    sp.add_argument("--mode", choices=("exact", "finite_section"), default="exact")
    sp.add_argument("--fs-size", type=_positive, default=fredholm.FS_SIZE)
    sp.add_argument("--fs-tol", type=_tolerance, default=fredholm.FS_TOL)

    sp = verb("op-bindex", _op_bindex, "B-Fredholm classification, index and dis")
    sp.add_argument("file")
    sp.add_argument("--margin", action="store_true", help="also report a certified Fredholm margin")

    sp = verb("op-dis", _op_dis, "degree of stable iteration")
    sp.add_argument("file")

    sp = verb("op-spectral", _op_spectral, "spectral sets of a normal diagonal operator or finite matrix")
    sp.add_argument("file")
    sp.add_argument("--at", help="eigenvalue for ascent/descent (matrix documents)")

    sp = verb("family-index", _family_index, "index vector of a family")
    sp.add_argument("file")
    sp.add_argument("--trials", type=_nonneg, default=0, help="local-constancy perturbation trials")
    sp.add_argument("--seed", type=int, default=0)

    sp = verb("family-weyl", _family_weyl, "Weyl family test or Weyl/Browder theorem check")
    sp.add_argument("file")

    sp = verb("family-synthesize", _family_synthesize, "family realizing a prescribed index vector")
    sp.add_argument("complex")
    sp.add_argument("--index", help="comma separated rep=n entries")
    sp.add_argument("--vector", help="index-vector document")

    sp = verb("homotopy-check", _homotopy_check, "verify a sampled homotopy between two families")
    sp.add_argument("homotopy")
    sp.add_argument("start")
    sp.add_argument("end")

    sp = verb("path-tbp", _path_tbp, "the shift path from [1]+0 to [1]+T_{1/z}")
    sp.add_argument("--grid", type=_positive, default=10)
    sp.add_argument("--emit-path", action="store_true")

    sp = verb("path-connect", _path_connect, "sampled path between equal-index B-Fredholm operators")
    sp.add_argument("start")
    sp.add_argument("end")
    sp.add_argument("--grid", type=_positive, default=pathconnect.GRID)
    sp.add_argument("--mode", choices=("bfredholm", "fredholm_preserving"), default="bfredholm")
    sp.add_argument("--pad", action="store_true", help="pad with identity blocks when signatures differ")

    sp = verb("path-verify", _path_verify, "classify every sample of a path document")
    sp.add_argument("file")
    return p


def _render_text(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        if set(obj) == {"re", "im"}:
            return [pad + _gauss_text(obj)]
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and not _scalar_like(v):
                lines.append(f"{pad}{k}:")
                lines += _render_text(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _scalar_like(v):
                lines.append(f"{pad}-")
                lines += _render_text(v, indent + 1)
            else:
                lines.append(f"{pad}- {_inline(v)}")
    else:
        lines.append(pad + _inline(obj))
    return lines


def _scalar_like(v):
    if isinstance(v, dict):
        return set(v) == {"re", "im"}
    return all(not isinstance(x, (dict, list)) or _scalar_like(x) for x in v)


def _gauss_text(d):
    re_, im = Fraction(d["re"]), Fraction(d["im"])
    if not im:
        return format_rational(re_)
    if not re_:
        return f"{format_rational(im)}i"
    sign = "+" if im > 0 else "-"
    return f"{format_rational(re_)}{sign}{format_rational(abs(im))}i"


def _inline(v):
    if isinstance(v, dict):
        return _gauss_text(v)
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def emit(obj, fmt, stream):
    if fmt == "text":
        stream.write("\n".join(_render_text(obj)) + "\n")
    else:
        stream.write(documents.dumps(obj) + "\n")


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        stderr.write(f"{e}\n")
        return 1
    except SystemExit as e:  # --help
        return 0 if not e.code else 1
    try:
        result = args.handler(args)
    except DomainError as e:
        emit(e.to_dict(), "json", stdout)
        return 2
    except InputError as e:
        stderr.write(documents.dumps(e.to_dict()) + "\n")
        return 1
    except UsageError as e:
        stderr.write(f"{e}\n")
        return 1
    except OSError as e:
        stderr.write(documents.dumps({"error": "IoError", "message": str(e)}) + "\n")
        return 1
    emit(result, args.format, stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
