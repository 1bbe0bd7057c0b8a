"""Builtin example codes and QCAs."""
from __future__ import annotations

from .code import PauliCode, hyperbolic_form
from .qca import CliffordQCARep
from .ring import LaurentMatrix, LaurentPoly


def _p(text, p, m):
    return LaurentPoly.parse(text, p, m)


def _code(p, m, q, gens):
    return PauliCode.from_generators(p, m, q, [[_p(t, p, m) for t in g] for g in gens])


def toric2d() -> PauliCode:
    """Qubit toric code: vertex X-check and plaquette Z-check."""
    return _code(2, 2, 2, [["1 + x^-1", "1 + y^-1", "0", "0"], ["0", "0", "1 + y", "1 + x"]])


def toric2d_z3() -> PauliCode:
    """Z/3 toric code."""
    return _code(3, 2, 2, [["1 - x^-1", "1 - y^-1", "0", "0"], ["0", "0", "y - 1", "1 - x"]])


def double_toric2d() -> PauliCode:
    """Two stacked copies of toric2d on q = 4."""
    return _code(2, 2, 4, [
        ["1 + x^-1", "1 + y^-1", "0", "0", "0", "0", "0", "0"],
        ["0", "0", "0", "0", "1 + y", "1 + x", "0", "0"],
        ["0", "0", "1 + x^-1", "1 + y^-1", "0", "0", "0", "0"],
        ["0", "0", "0", "0", "0", "0", "1 + y", "1 + x"],
    ])


def toric3d() -> PauliCode:
    """Qubit 3d toric code: one vertex X-check, three plaquette Z-checks."""
    return _code(2, 3, 3, [
        ["1 + x^-1", "1 + y^-1", "1 + z^-1", "0", "0", "0"],
        ["0", "0", "0", "1 + y", "1 + x", "0"],
        ["0", "0", "0", "0", "1 + z", "1 + y"],
        ["0", "0", "0", "1 + z", "0", "1 + x"],
    ])


def trivial(m=2, q=1, p=2) -> PauliCode:
    """Product code: every qudit carries its own Z check."""
    gens = []
    for j in range(q):
        g = ["0"] * (2 * q)
        g[q + j] = "1"
        gens.append(g)
    return _code(p, m, q, gens)


def vertex_only() -> PauliCode:
    """toric2d without its plaquette check; isotropic, not Lagrangian."""
    return _code(2, 2, 2, [["1 + x^-1", "1 + y^-1", "0", "0"]])


def layered_toric() -> PauliCode:
    """toric2d stacked along z without coupling; its point charges are
    stuck to their layer, so E^0 has Krull dimension 1."""
    return _code(2, 3, 2, [["1 + x^-1", "1 + y^-1", "0", "0"], ["0", "0", "1 + y", "1 + x"]])


def shift_qca() -> CliffordQCARep:
    """Translation by one site, m = 1, q = 1."""
    p, m = 2, 1
    x = LaurentPoly.var(p, m, 0)
    return CliffordQCARep.of(LaurentMatrix.identity(p, m, 2).scale(x))


def swap_qca() -> CliffordQCARep:
    """On-site exchange of X and Z, m = 1, q = 1."""
    return CliffordQCARep.of(hyperbolic_form(2, 1, 1))


CODES = {
    "toric2d": toric2d,
    "toric2d_z3": toric2d_z3,
    "double_toric2d": double_toric2d,
    "toric3d": toric3d,
    "trivial": trivial,
    "vertex_only": vertex_only,
    "nonmobile": layered_toric,
}

QCAS = {
    "shift": shift_qca,
    "swap": swap_qca,
}


def names():
    return sorted(CODES) + sorted(QCAS)


def get(name):
    if name in CODES:
        return CODES[name]()
    if name in QCAS:
        return QCAS[name]()
    raise KeyError(name)
