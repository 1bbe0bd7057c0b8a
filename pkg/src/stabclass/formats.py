"""JSON file formats for codes, forms, Poincare complexes and QCAs.

A polynomial entry is a list of terms ``[[e_1, ..., e_m], c]`` with
1 <= c <= p-1, written in ascending exponent order.  Parsing is strict:
unknown fields, wrong types and out-of-range values are FormatErrors.
"""
from __future__ import annotations

import json

from .code import PauliCode
from .errors import FormatError
from .forms import QuadraticSpace
from .qca import CliffordQCARep
from .ring import LaurentMatrix, LaurentPoly, check_prime
from .surgery import PoincareComplex


def _int(v, what):
    if isinstance(v, bool) or not isinstance(v, int):
        raise FormatError(f"{what} must be an integer")
    return v


def _obj(raw, required, optional=(), what="object"):
    if not isinstance(raw, dict):
        raise FormatError(f"{what} must be a JSON object")
    extra = set(raw) - set(required) - set(optional)
    if extra:
        raise FormatError(f"{what}: unknown fields {sorted(extra)}")
    missing = [k for k in required if k not in raw]
    if missing:
        raise FormatError(f"{what}: missing fields {missing}")
    return raw


def _list(v, what):
    if not isinstance(v, list):
        raise FormatError(f"{what} must be a list")
    return v


def _prime(v):
    p = _int(v, "p")
    try:
        return check_prime(p)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def parse_poly(raw, p, m, what="entry") -> LaurentPoly:
    terms = {}
    for t in _list(raw, what):
        if not isinstance(t, list) or len(t) != 2:
            raise FormatError(f"{what}: each term is [exponents, coefficient]")
        exps = tuple(_int(e, f"{what} exponent") for e in _list(t[0], f"{what} exponents"))
        if len(exps) != m:
            raise FormatError(f"{what}: exponent vector must have length {m}")
        c = _int(t[1], f"{what} coefficient")
        if not 1 <= c < p:
            raise FormatError(f"{what}: coefficient {c} outside 1..{p - 1}")
        if exps in terms:
            raise FormatError(f"{what}: repeated exponent {list(exps)}")
        terms[exps] = c
    try:
        return LaurentPoly(p, m, terms)
    except OverflowError as exc:
        raise FormatError(str(exc)) from None


def dump_poly(f: LaurentPoly):
    return [[list(e), c] for e, c in sorted(f.items())]


def parse_matrix(raw, p, m, rows, cols, what) -> LaurentMatrix:
    raw = _list(raw, what)
    if len(raw) != rows or any(not isinstance(r, list) or len(r) != cols for r in raw):
        raise FormatError(f"{what} must be {rows} x {cols}")
    return LaurentMatrix(p, m, [[parse_poly(e, p, m, what) for e in r] for r in raw], rows, cols)


def dump_matrix(M: LaurentMatrix):
    return [[dump_poly(f) for f in r] for r in M.entries]


# codes

def parse_code(raw) -> PauliCode:
    raw = _obj(raw, ("p", "spatial_dims", "qudits_per_site", "generators"), ("omega",), "code file")
    p = _prime(raw["p"])
    m = _int(raw["spatial_dims"], "spatial_dims")
    q = _int(raw["qudits_per_site"], "qudits_per_site")
    if m < 0 or q < 1:
        raise FormatError("spatial_dims must be >= 0 and qudits_per_site >= 1")
    gens = []
    for g in _list(raw["generators"], "generators"):
        g = _list(g, "generator")
        if len(g) != 2 * q:
            raise FormatError(f"each generator needs {2 * q} entries")
        gens.append([parse_poly(e, p, m, "generator entry") for e in g])
    omega = None
    if raw.get("omega") is not None:
        omega = parse_matrix(raw["omega"], p, m, 2 * q, 2 * q, "omega")
        if omega.dagger() != -omega:
            raise FormatError("omega must satisfy dagger(omega) = -omega")
        if not omega.det().is_unit():
            raise FormatError("omega is not unimodular")
    return PauliCode.from_generators(p, m, q, gens, omega)


def dump_code(code: PauliCode) -> dict:
    out = {
        "p": code.p,
        "spatial_dims": code.m,
        "qudits_per_site": code.q,
        "generators": [[dump_poly(f) for f in g] for g in code.generators()],
    }
    if code.omega is not None:
        out["omega"] = dump_matrix(code.omega)
    return out


# quadratic forms

def _int_matrix(raw, n, what):
    raw = _list(raw, what)
    if len(raw) != n or any(not isinstance(r, list) or len(r) != n for r in raw):
        raise FormatError(f"{what} must be {n} x {n}")
    return tuple(tuple(_int(x, what) for x in r) for r in raw)


def parse_form(raw) -> QuadraticSpace:
    raw = _obj(raw, ("p", "dim", "gram"), (), "form file")
    p = _prime(raw["p"])
    n = _int(raw["dim"], "dim")
    if n < 0:
        raise FormatError("dim must be non-negative")
    try:
        return QuadraticSpace(p, _int_matrix(raw["gram"], n, "gram"))
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def dump_form(V: QuadraticSpace) -> dict:
    return V.as_dict()


# Poincare complexes

def parse_complex(raw) -> PoincareComplex:
    raw = _obj(raw, ("p", "d", "dims", "pairings"), ("middle",), "complex file")
    p = _prime(raw["p"])
    d = _int(raw["d"], "d")
    dims = [_int(x, "dims") for x in _list(raw["dims"], "dims")]
    if d < 0 or len(dims) != d + 1:
        raise FormatError(f"dims must list {d + 1} entries")
    pairs = _list(raw["pairings"], "pairings")
    if len(pairs) != (d + 1) // 2:
        raise FormatError(f"pairings must list {(d + 1) // 2} matrices")
    pairs = tuple(_int_matrix(B, dims[i], f"pairing {i}") for i, B in enumerate(pairs))
    middle = ref = None
    if d % 2 == 0:
        mid = _obj(raw.get("middle", {"gram": []} if dims[d // 2] == 0 else None),
                   ("gram",), ("refinement",), "middle")
        n = dims[d // 2]
        middle = _int_matrix(mid["gram"], n, "middle gram")
        if mid.get("refinement") is not None:
            ref = _int_matrix(mid["refinement"], n, "refinement")
    elif "middle" in raw:
        raise FormatError("odd d has no middle form")
    return PoincareComplex(p, d, tuple(dims), pairs, middle, ref)


def dump_complex(X: PoincareComplex) -> dict:
    return X.as_dict()


# QCAs

def parse_qca(raw) -> CliffordQCARep:
    raw = _obj(raw, ("p", "m", "q", "matrix"), (), "QCA file")
    p = _prime(raw["p"])
    m = _int(raw["m"], "m")
    q = _int(raw["q"], "q")
    if m < 0 or q < 1:
        raise FormatError("m must be >= 0 and q >= 1")
    return CliffordQCARep(p, m, q, parse_matrix(raw["matrix"], p, m, 2 * q, 2 * q, "matrix"))


def dump_qca(U: CliffordQCARep) -> dict:
    return {"p": U.p, "m": U.m, "q": U.q, "matrix": dump_matrix(U.U)}


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
