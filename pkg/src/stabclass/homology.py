"""Free resolutions, the code complex F, charge modules and coarse-graining."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

from .code import PauliCode, excess_map, is_isotropic, is_lagrangian
from .errors import PreconditionError
from .groebner import GroebnerBasis, ModulePresentation, groebner, kernel, syzygies
from .ring import LaurentMatrix, LaurentPoly


@dataclass(frozen=True)
class FreeResolution:
    """d[0] = sigma : F_1 -> P, d[j] : F_{j+1} -> F_j."""

    maps: tuple
    complete: bool

    @property
    def length(self) -> int:
        return len(self.maps)

    def ranks(self):
        return [self.maps[0].rows] + [d.cols for d in self.maps]


def free_resolution(code: PauliCode, max_len: int | None = None, limits=None) -> FreeResolution:
    """Iterated syzygies of sigma's columns, stopping at the first zero kernel.

    ``complete`` is true when the last map is injective.
    """
    if max_len is None:
        max_len = code.m
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    maps = [code.sigma]
    while True:
        d = maps[-1]
        if d.cols == 0:
            return FreeResolution(tuple(maps), True)
        ker = kernel(d, limits)
        if not ker.gens:
            return FreeResolution(tuple(maps), True)
        if len(maps) == max_len:
            return FreeResolution(tuple(maps), False)
        maps.append(ker.matrix())


@dataclass(frozen=True)
class CodeComplex:
    """... F_2 -> F_1 -> P -> F_1* -> F_2* -> ...

    ``left`` are the resolution maps, ``delta`` the middle map and
    ``right[j]`` = dagger(left[j+1]) : F_{j+1}* -> F_{j+2}*.
    """

    code: PauliCode
    resolution: FreeResolution
    delta: LaurentMatrix

    @property
    def left(self):
        return self.resolution.maps

    @cached_property
    def right(self):
        return tuple(d.dagger() for d in self.left[1:])

    def map_into_dual(self, j: int):
        """Map into F_j* (j >= 1): delta for j = 1, dagger(d_j) otherwise."""
        if j == 1:
            return self.delta
        return self.left[j - 1].dagger()

    def map_out_of_dual(self, j: int):
        """dagger(d_{j+1}) : F_j* -> F_{j+1}*, or None past the end."""
        if j < len(self.left):
            return self.left[j].dagger()
        return None

    def composites_vanish(self) -> bool:
        seq = list(reversed(self.left)) + [self.delta] + list(self.right)
        return all((b @ a).is_zero() for a, b in zip(seq, seq[1:]) if a.cols and b.rows)


def build_complex(code: PauliCode, length: int | None = None, limits=None) -> CodeComplex:
    if not is_isotropic(code):
        raise PreconditionError("code is not isotropic")
    res = free_resolution(code, length, limits)
    return CodeComplex(code, res, excess_map(code))


def subquotient(B, A, n, p, m, limits=None):
    """Present ker(B)/im(A) for B: R^n -> R^?, A: R^? -> R^n.

    Returns (K, relations): K is the n x t matrix of kernel generators and
    relations the submodule {c in R^t : K c in im A}.  Either map may be None.
    """
    if B is None or B.rows == 0:
        K = LaurentMatrix.identity(p, m, n)
    else:
        K = kernel(B, limits).matrix() if B.cols else LaurentMatrix.zeros(p, m, n, 0)
    t = K.cols
    if t == 0:
        return K, ModulePresentation(p, m, 0, ())
    cols = list(K.columns())
    if A is not None:
        cols += [c for c in A.columns() if any(c)]
    syz = syzygies(ModulePresentation(p, m, n, tuple(cols)), limits)
    rels = tuple(tuple(g[:t]) for g in syz.gens if any(g[:t]))
    return K, ModulePresentation(p, m, t, rels)


@dataclass
class ChargeModule:
    """E^i = Ext^{i+1}, presented as R^t / relations; ``embedding`` sends
    R^t into F_{i+1}* (columns are the kernel generators)."""

    degree: int
    presentation: ModulePresentation
    embedding: LaurentMatrix
    _gb: GroebnerBasis | None = field(default=None, repr=False)

    @property
    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = groebner(self.presentation)
        return self._gb

    @cached_property
    def krull_dim(self) -> int:
        return self.gb.krull_dim()

    @cached_property
    def fp_dimension(self):
        return self.gb.fp_dimension()

    @property
    def is_finite(self) -> bool:
        return self.krull_dim <= 0

    @property
    def cardinality(self):
        d = self.fp_dimension
        return None if d is None else self.presentation.p ** d

    def summary(self) -> dict:
        return {
            "degree": self.degree,
            "generators": self.presentation.rank,
            "relations": len(self.presentation.gens),
            "krull_dim": self.krull_dim,
            "fp_dimension": self.fp_dimension,
            "cardinality": self.cardinality,
        }


def charge_module(code: PauliCode, i: int, limits=None, *, check=True, complex_=None) -> ChargeModule:
    if i < 0:
        raise ValueError("degree must be non-negative")
    if check and not is_lagrangian(code, limits):
        raise PreconditionError("charge modules are defined for Lagrangian codes only")
    cx = complex_ or build_complex(code, i + 2, limits)
    left = cx.left
    p, m = code.p, code.m
    if i + 1 > len(left):
        return ChargeModule(i, ModulePresentation(p, m, 0, ()), LaurentMatrix.zeros(p, m, 0, 0))
    n = left[i].cols
    A = cx.map_into_dual(i + 1)
    B = cx.map_out_of_dual(i + 1)
    K, rels = subquotient(B, A, n, p, m, limits)
    return ChargeModule(i, rels, K)


def charge_modules(code: PauliCode, limits=None, *, check=True) -> list:
    """E^0..E^{m-1}, sharing one resolution."""
    if check and not is_lagrangian(code, limits):
        raise PreconditionError("charge modules are defined for Lagrangian codes only")
    cx = build_complex(code, code.m + 1, limits)
    return [charge_module(code, i, limits, check=False, complex_=cx) for i in range(max(code.m, 1))]


@dataclass(frozen=True)
class MobilityReport:
    fully_mobile: bool
    degrees: tuple

    def as_dict(self):
        return {"fully_mobile": self.fully_mobile, "degrees": [c.summary() for c in self.degrees]}


def is_fully_mobile(code: PauliCode, limits=None) -> MobilityReport:
    mods = charge_modules(code, limits)
    return MobilityReport(all(c.krull_dim <= 0 for c in mods), tuple(mods))


def pairing_duality_check(code: PauliCode, limits=None, report: MobilityReport | None = None) -> bool:
    """|E^{i-1}| = |E^{m-i-1}| for 1 <= i <= m-1."""
    report = report or is_fully_mobile(code, limits)
    if not report.fully_mobile:
        raise PreconditionError("code is not fully mobile")
    dims = [c.fp_dimension for c in report.degrees]
    m = code.m
    return all(dims[i - 1] == dims[m - i - 1] for i in range(1, m))


def _box(factors):
    return list(product(*(range(c) for c in factors)))


def _split(e, factors):
    g = tuple(v // c for v, c in zip(e, factors))
    r = tuple(v - c * gi for v, c, gi in zip(e, factors, g))
    return g, r


def coarse_grain(code: PauliCode, factors) -> PauliCode:
    """Restrict scalars to the sublattice diag(factors) Z^m.

    Site (i, r) of the new code is old row i at offset r in the fundamental
    box (r inner, lexicographic).  Generators become x^s g for s in the box.
    """
    factors = tuple(int(c) for c in factors)
    if len(factors) != code.m:
        raise ValueError(f"need {code.m} factors, got {len(factors)}")
    if any(c < 1 for c in factors):
        raise ValueError("coarse-graining factors must be >= 1")
    p, m = code.p, code.m
    box = _box(factors)
    where = {r: k for k, r in enumerate(box)}
    C = len(box)
    n = 2 * code.q

    def regroup(vec, s):
        out = [dict() for _ in range(n * C)]
        for i, f in enumerate(vec):
            for e, c in f.items():
                g, r = _split(tuple(a + b for a, b in zip(e, s)), factors)
                row = out[i * C + where[r]]
                row[g] = (row.get(g, 0) + c) % p
        return [LaurentPoly(p, m, d) for d in out]

    gens = [regroup(g, s) for g in code.generators() for s in box]
    omega = None
    if code.omega is not None:
        zero = LaurentPoly.zero(p, m)
        rows = [[zero] * (n * C) for _ in range(n * C)]
        for i in range(n):
            for j in range(n):
                w = code.omega[i, j]
                if not w:
                    continue
                for r in box:
                    for s in box:
                        d = {}
                        for e, c in w.items():
                            tot = tuple(a + b - cr for a, b, cr in zip(e, s, r))
                            g, rr = _split(tot, factors)
                            if not any(rr):
                                d[g] = c
                        if d:
                            rows[i * C + where[r]][j * C + where[s]] = LaurentPoly(p, m, d)
        omega = LaurentMatrix(p, m, rows, n * C, n * C)
    return PauliCode.from_generators(p, m, code.q * C, gens, omega)
