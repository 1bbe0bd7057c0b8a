"""Command-line front end.

Exit codes: 0 success, 1 property failure, 2 input error, 3 resource limit.
"""
from __future__ import annotations

import argparse
import sys

from . import config, formats, library
from .classify import classify_code
from .code import is_isotropic, is_lagrangian, unimodular_check
from .errors import FormatError, PreconditionError, ResourceLimitError
from .forms import arf, witt_decompose, witt_class
from .homology import charge_module, coarse_grain, is_fully_mobile
from .qca import (CliffordQCARep, compose, create_stabilizer, inverse, is_separated, qca_range,
                  verify_symplectic)
from .surgery import classify as classify_complex
from .surgery import reduce_to_middle

OK, FAIL, INPUT, LIMIT = 0, 1, 2, 3


class Outcome:
    def __init__(self, report, code=OK, raw=False):
        self.report, self.code, self.raw = report, code, raw


def _read(path):
    try:
        if path == "-":
            return formats.loads(sys.stdin.read())
        with open(path, encoding="utf-8") as fh:
            return formats.loads(fh.read())
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None


def _render_text(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(f"{pad}{_scalar(obj)}")
    return lines


def _flat(v):
    if isinstance(v, dict):
        return False
    return all(not isinstance(x, (dict, list)) or (isinstance(x, list) and _flat(x)) for x in v)


def _scalar(v):
    if v is True:
        return "yes"
    if v is False:
        return "no"
    if v is None:
        return "-"
    return str(v)


# commands

def cmd_verify(args, limits):
    code = formats.parse_code(_read(args.file))
    iso = is_isotropic(code)
    lag = iso and is_lagrangian(code, limits)
    uni = unimodular_check(code.form)
    rep = {"p": code.p, "m": code.m, "q": code.q, "generators": code.k,
           "isotropic": iso, "lagrangian": lag, "unimodular_omega": uni}
    return Outcome(rep, OK if iso and lag and uni else FAIL)


def cmd_charges(args, limits):
    code = formats.parse_code(_read(args.file))
    if not is_lagrangian(code, limits):
        return Outcome({"error": "code is not Lagrangian"}, FAIL)
    if args.degree is not None:
        if args.degree < 0:
            raise FormatError("degree must be non-negative")
        c = charge_module(code, args.degree, limits, check=False)
        return Outcome({"degrees": [c.summary()]})
    rep = is_fully_mobile(code, limits)
    return Outcome(rep.as_dict())


def cmd_classify(args, limits):
    code = formats.parse_code(_read(args.file))
    try:
        return Outcome(classify_code(code, limits))
    except PreconditionError as exc:
        return Outcome({"error": str(exc)}, FAIL)


def cmd_coarsen(args, limits):
    code = formats.parse_code(_read(args.file))
    try:
        factors = [int(v) for v in args.factors.split(",")]
    except ValueError:
        raise FormatError("factors must be comma-separated integers") from None
    if len(factors) != code.m or any(c < 1 for c in factors):
        raise FormatError(f"need {code.m} factors, each >= 1")
    return Outcome(formats.dump_code(coarse_grain(code, factors)), raw=True)


def cmd_witt(args, limits):
    V = formats.parse_form(_read(args.file))
    if not V.is_nondegenerate():
        return Outcome({"error": "form is degenerate"}, FAIL)
    h, A = witt_decompose(V)
    c = witt_class(V)
    rep = {"p": V.p, "dim": V.dim, "hyperbolic_planes": h, "anisotropic_dim": A.dim,
           "class": c.label, "anisotropic_gram": [list(r) for r in c.gram]}
    if V.p == 2:
        rep["arf"] = arf(V)
    return Outcome(rep)


def cmd_surgery(args, limits):
    X = formats.parse_complex(_read(args.file))
    Y, trace = reduce_to_middle(X)
    try:
        cls = classify_complex(X)
    except PreconditionError as exc:
        return Outcome({"error": str(exc), "reduced": Y.as_dict()}, FAIL)
    rep = cls.as_dict()
    rep["reduced"] = Y.as_dict()
    rep["trace"] = [{"degree": j, "class": list(nu)} for j, nu in trace.steps]
    return Outcome(rep)


def _qca(path):
    return formats.parse_qca(_read(path))


def cmd_qca(args, limits):
    if args.action == "verify":
        U = _qca(args.files[0])
        ok = verify_symplectic(U)
        rep = {"p": U.p, "m": U.m, "q": U.q, "symplectic": ok, "range": qca_range(U),
               "separated": is_separated(U) if ok else None}
        return Outcome(rep, OK if ok else FAIL)
    if args.action == "compose":
        if len(args.files) < 2:
            raise FormatError("compose needs at least two QCA files")
        Us = [_qca(f) for f in args.files]
        W = Us[0]
        for V in Us[1:]:
            W = compose(W, V)
        return Outcome(formats.dump_qca(W), raw=True)
    U = _qca(args.files[0])
    if not verify_symplectic(U):
        return Outcome({"error": "matrix is not symplectic"}, FAIL)
    if args.action == "inverse":
        return Outcome(formats.dump_qca(inverse(U)), raw=True)
    return Outcome(formats.dump_code(create_stabilizer(U)), raw=True)


def cmd_examples(args, limits):
    if args.name is None:
        return Outcome({"codes": sorted(library.CODES), "qcas": sorted(library.QCAS)})
    try:
        obj = library.get(args.name)
    except KeyError:
        raise FormatError(f"unknown example {args.name!r}") from None
    if isinstance(obj, CliffordQCARep):
        return Outcome(formats.dump_qca(obj), raw=True)
    return Outcome(formats.dump_code(obj), raw=True)


def build_parser():
    ap = argparse.ArgumentParser(prog="stabclass", description=__doc__.splitlines()[0])
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--config", help="JSON file with resource limits")
    ap.add_argument("--max-spairs", type=int)
    ap.add_argument("--max-degree", type=int)
    ap.add_argument("--max-torus-doublings", type=int)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        return sp

    add("verify", cmd_verify, "check isotropy, the Lagrangian condition and the form").add_argument(
        "file", nargs="?", default="-")
    sp = add("charges", cmd_charges, "charge modules, Krull dimensions and cardinalities")
    sp.add_argument("file", nargs="?", default="-")
    sp.add_argument("--degree", type=int)
    add("classify", cmd_classify, "classifying group, duality and braiding data").add_argument(
        "file", nargs="?", default="-")
    sp = add("coarsen", cmd_coarsen, "coarse-grain along diag(factors)")
    sp.add_argument("file", nargs="?", default="-")
    sp.add_argument("--factors", required=True, help="comma-separated, one per spatial dimension")
    add("witt", cmd_witt, "Witt class of a quadratic form").add_argument("file", nargs="?", default="-")
    add("surgery", cmd_surgery, "surgery reduction and L-class of a Poincare complex").add_argument(
        "file", nargs="?", default="-")
    sp = add("qca", cmd_qca, "Clifford QCA tools")
    sp.add_argument("action", choices=("verify", "inverse", "compose", "create"))
    sp.add_argument("files", nargs="*", default=["-"])
    add("examples", cmd_examples, "builtin codes and QCAs").add_argument("name", nargs="?")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return INPUT if exc.code else OK
    try:
        limits = config.load(args.config) if args.config else config.get_limits()
        limits = limits.replace(max_spairs=args.max_spairs, max_degree=args.max_degree,
                                max_torus_doublings=args.max_torus_doublings)
        out = args.fn(args, limits)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return LIMIT
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAIL
    except (FormatError, ValueError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return INPUT
    if args.format == "text" and not out.raw:
        sys.stdout.write("\n".join(_render_text(out.report)) + "\n")
    else:
        sys.stdout.write(formats.dumps(out.report))
    return out.code


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
