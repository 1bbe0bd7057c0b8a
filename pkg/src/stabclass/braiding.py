"""Point-charge braiding of m = 2 codes, computed on a finite torus.

Pauli vectors on the N x N torus are int64 arrays indexed by
(row i, site a, site b) -> (i*N + a)*N + b.  Syndromes live on
(generator j, site) the same way.  A charge is an element f of F_1* = R^k;
placed at site t it is the syndrome pattern of x^t f.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .code import PauliCode, excess_map, is_lagrangian
from .config import get_limits
from .errors import PreconditionError, ResourceLimitError, StabClassError
from .homology import ChargeModule, charge_module
from .ring import LaurentPoly


class StringSolveError(StabClassError):
    """No string operator exists inside the chosen window at this torus size."""


class TorusTooSmallError(StabClassError, ValueError):
    pass


class DegenerateFormError(StabClassError):
    """The braiding form came out degenerate; the model is inconsistent."""


def _ceil_to(v, t):
    return -(-v // t) * t


@dataclass(frozen=True)
class Geometry:
    """Distances used by the loop and junction constructions."""

    spread: int
    width: int
    period: int

    @property
    def half(self):
        return _ceil_to(2 * self.width + self.spread + 1, self.period)

    @property
    def exit(self):
        return _ceil_to(self.half + 2 * self.width + self.spread + 1, self.period)

    @property
    def arm(self):
        return _ceil_to(2 * self.width + self.spread + 1, self.period)

    def min_torus(self):
        w, s, h = self.width, self.spread, self.half
        need = max(
            2 * h + 2 * w + s + 1,
            h + self.exit + 2 * w + s + 1,
            2 * self.arm + 2 * w + s + 1,
        )
        return _ceil_to(need, self.period)


class FiniteInstance:
    """A code on the N x N torus, x -> shift along the first axis, y along the second."""

    def __init__(self, code: PauliCode, N: int, *, period: int = 1, width: int | None = None):
        if code.m != 2:
            raise PreconditionError("finite torus instances need m = 2")
        spread = code.sigma.spread()
        if N < max(1, 3 * spread):
            raise TorusTooSmallError(f"N = {N} is below 3 x spread = {3 * spread}")
        if N % period:
            raise TorusTooSmallError(f"N = {N} is not a multiple of the charge period {period}")
        self.code = code
        self.p, self.q, self.k, self.N = code.p, code.q, code.k, N
        self.n = 2 * code.q * N * N
        self.nsyn = code.k * N * N
        self.geometry = Geometry(max(1, spread), width or max(1, spread), period)
        delta = excess_map(code)
        self._syn = [
            [(j, e, c) for j in range(code.k) for e, c in delta[j, i].items()] for i in range(2 * code.q)
        ]
        form = code.form
        self._form = [
            [(j, e, c) for j in range(2 * code.q) for e, c in form[i, j].items()] for i in range(2 * code.q)
        ]
        self.isotropic = self._check_isotropic()
        if not self.isotropic:
            raise PreconditionError("stabilizers do not commute on the torus")

    def index(self, i, a, b):
        N = self.N
        return (i * N + a % N) * N + b % N

    def decode(self, idx):
        N = self.N
        rest, b = divmod(idx, N)
        i, a = divmod(rest, N)
        return i, a, b

    def syndrome(self, w) -> np.ndarray:
        """Entry (j, s) is the pairing of x^s sigma_j with w."""
        out = np.zeros(self.nsyn, dtype=np.int64)
        for idx in np.flatnonzero(w):
            i, a, b = self.decode(int(idx))
            v = int(w[idx])
            for j, e, c in self._syn[i]:
                out[self.index(j, a + e[0], b + e[1])] += c * v
        return out % self.p

    def unit_syndrome(self, idx):
        """Sparse syndrome (row, coeff) of the single qudit basis vector idx."""
        i, a, b = self.decode(idx)
        return [(self.index(j, a + e[0], b + e[1]), c) for j, e, c in self._syn[i]]

    def pairing(self, v, w) -> int:
        """Constant term of dagger(v) Omega w."""
        total = 0
        for idx in np.flatnonzero(v):
            i, a, b = self.decode(int(idx))
            vi = int(v[idx])
            for j, e, c in self._form[i]:
                total += vi * c * int(w[self.index(j, a - e[0], b - e[1])])
        return total % self.p

    def embed(self, vec, shift=(0, 0)) -> np.ndarray:
        """Pauli vector of x^shift * vec, vec in R^{2q}."""
        out = np.zeros(self.n, dtype=np.int64)
        for i, f in enumerate(vec):
            for e, c in f.items():
                out[self.index(i, e[0] + shift[0], e[1] + shift[1])] += c
        return out % self.p

    def pattern(self, f, shift=(0, 0)) -> np.ndarray:
        """Syndrome vector of the charge f in R^k placed at ``shift``."""
        out = np.zeros(self.nsyn, dtype=np.int64)
        for j, g in enumerate(f):
            for e, c in g.items():
                out[self.index(j, e[0] + shift[0], e[1] + shift[1])] += c
        return out % self.p

    def check_matrix(self) -> np.ndarray:
        """Dense (2qN^2) x (kN^2) matrix whose columns are the translated checks."""
        H = np.zeros((self.n, self.nsyn), dtype=np.int64)
        gens = self.code.generators()
        for j, g in enumerate(gens):
            for a in range(self.N):
                for b in range(self.N):
                    H[:, self.index(j, a, b)] = self.embed(g, (a, b))
        return H

    def _check_isotropic(self) -> bool:
        for g in self.code.generators():
            if self.syndrome(self.embed(g)).any():
                return False
        return True

    def window(self, lo, hi):
        """Qudit indices in the box lo..hi (inclusive, taken mod N)."""
        N = self.N
        xs = sorted({a % N for a in range(lo[0], hi[0] + 1)})
        ys = sorted({b % N for b in range(lo[1], hi[1] + 1)})
        return [self.index(i, a, b) for i in range(2 * self.q) for a in xs for b in ys]


@dataclass(frozen=True)
class StringOperator:
    vector: np.ndarray = field(compare=False)
    box: tuple
    endpoints: tuple


def instantiate_torus(code: PauliCode, N: int, **kw) -> FiniteInstance:
    return FiniteInstance(code, N, **kw)


def string_operator(inst: FiniteInstance, charge, endpoints, width=None) -> StringOperator:
    """Pauli vector with syndrome charge@end - charge@start inside a thickened box."""
    start, end = (tuple(int(v) for v in e) for e in endpoints)
    w = inst.geometry.width if width is None else width
    target = (inst.pattern(charge, end) - inst.pattern(charge, start)) % inst.p
    lo = (min(start[0], end[0]) - w, min(start[1], end[1]) - w)
    hi = (max(start[0], end[0]) + w, max(start[1], end[1]) + w)
    if not target.any():
        return StringOperator(np.zeros(inst.n, dtype=np.int64), (lo, hi), (start, end))
    cols = inst.window(lo, hi)
    entries = [inst.unit_syndrome(c) for c in cols]
    rows = sorted(set(np.flatnonzero(target).tolist()).union(r for e in entries for r, _ in e))
    where = {r: k for k, r in enumerate(rows)}
    A = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for col, e in enumerate(entries):
        for r, c in e:
            A[where[r], col] = (A[where[r], col] + c) % inst.p
    x = linalg.solve(A, target[rows], inst.p)
    if x is None:
        raise StringSolveError(f"no string operator from {start} to {end} at N = {inst.N}")
    vec = np.zeros(inst.n, dtype=np.int64)
    vec[cols] = x
    if not np.array_equal(inst.syndrome(vec), target):
        raise StringSolveError("string operator has the wrong syndrome")
    return StringOperator(vec, (lo, hi), (start, end))


def _centre(inst):
    return (inst.N // 2, inst.N // 2)


def _need(inst):
    if inst.N < inst.geometry.min_torus():
        raise TorusTooSmallError(f"N = {inst.N} is below the loop geometry bound {inst.geometry.min_torus()}")


def loop_operator(inst: FiniteInstance, a):
    """Closed operator carrying a counterclockwise around the centre."""
    _need(inst)
    c0, c1 = _centre(inst)
    h = inst.geometry.half
    corners = [(c0 - h, c1 - h), (c0 + h, c1 - h), (c0 + h, c1 + h), (c0 - h, c1 + h)]
    total = np.zeros(inst.n, dtype=np.int64)
    for s, t in zip(corners, corners[1:] + corners[:1]):
        total += string_operator(inst, a, (s, t)).vector
    return total % inst.p


def exit_string(inst: FiniteInstance, b):
    """Open string carrying b from the centre to well outside the loop."""
    _need(inst)
    c0, c1 = _centre(inst)
    return string_operator(inst, b, ((c0, c1), (c0, c1 + inst.geometry.exit))).vector


def braid_phase(inst: FiniteInstance, a, b) -> int:
    """Z/p phase of carrying a once around b."""
    if all(not f for f in a) or all(not f for f in b):
        return 0
    return inst.pairing(loop_operator(inst, a), exit_string(inst, b))


# Orientation of the junction relative to the loop; fixed so that
# theta(a+b) - theta(a) - theta(b) = 2 P(a, b).
_JUNCTION_SIGN = -1


def self_statistics(inst: FiniteInstance, a) -> int:
    """theta(a) in Z/2p from the three-arm junction t3 t2^-1 t1 t3^-1 t2 t1^-1."""
    if all(not f for f in a):
        return 0
    _need(inst)
    c = _centre(inst)
    L = inst.geometry.arm
    arms = [(c[0] + L, c[1]), (c[0], c[1] + L), (c[0] - L, c[1])]
    t1, t2, t3 = (string_operator(inst, a, (c, e)).vector for e in arms)
    lam = inst.pairing
    ex = _JUNCTION_SIGN * (lam(t3, t1) - lam(t3, t2) - lam(t2, t1))
    return (2 * ex) % (2 * inst.p)


@dataclass
class ChargeBasis:
    """Z/p basis of E^0 by standard monomials, as elements of F_1* = R^k."""

    module: ChargeModule
    labels: list
    vectors: list
    periods: tuple

    @property
    def dim(self):
        return len(self.vectors)

    def combine(self, coeffs):
        p, m = self.module.presentation.p, self.module.presentation.m
        k = self.module.embedding.rows
        out = [LaurentPoly.zero(p, m) for _ in range(k)]
        for c, v in zip(coeffs, self.vectors):
            if c % p:
                out = [o + f.scale(c) for o, f in zip(out, v)]
        return tuple(out)


def _period(M, p):
    n = M.shape[0]
    I = np.eye(n, dtype=np.int64)
    P = M.copy() % p
    for t in range(1, p ** n + 1):
        if np.array_equal(P, I):
            return t
        P = P @ M % p
    raise StabClassError("action on the charge module is not invertible")


def charge_basis(code: PauliCode, limits=None, module: ChargeModule | None = None) -> ChargeBasis:
    E = module or charge_module(code, 0, limits)
    if not E.is_finite:
        raise PreconditionError("E^0 is not finite; the code is not fully mobile")
    std = sorted(E.gb.standard_monomials())
    K = E.embedding
    labels, vectors = [], []
    for pos, e in std:
        mono = LaurentPoly.monomial(code.p, code.m, e)
        vectors.append(tuple(K[r, pos] * mono for r in range(K.rows)))
        labels.append(f"e{pos}" + ("" if not any(e) else "*" + str(mono)))
    periods = tuple(_period(E.gb.multiplication_matrix(i), code.p) for i in range(code.m)) if std else (1,) * code.m
    return ChargeBasis(E, labels, vectors, periods)


@dataclass
class BraidingForm:
    p: int
    labels: list
    gram: np.ndarray
    theta: list
    N: int
    pair_theta: dict = field(default_factory=dict)

    def refinement_ok(self) -> bool:
        """theta(a+b) - theta(a) - theta(b) = 2 P(a, b) mod 2p on generator pairs."""
        p2 = 2 * self.p
        return all(
            (t - self.theta[i] - self.theta[j] - 2 * int(self.gram[i, j])) % p2 == 0
            for (i, j), t in self.pair_theta.items()
        )

    def as_dict(self):
        return {
            "generators": list(self.labels),
            "gram": self.gram.tolist(),
            "theta": list(self.theta),
            "torus_size": self.N,
        }


def torus_size(code: PauliCode, basis: ChargeBasis, geometry: Geometry) -> int:
    """Starting torus size: 4 spread ceil(log_p |E^0|), raised to fit the loops."""
    card = code.p ** basis.dim
    logp = max(1, math.ceil(math.log(card, code.p) - 1e-9)) if card > 1 else 1
    N = max(8, 4 * geometry.spread * logp, geometry.min_torus())
    return _ceil_to(N, geometry.period)


def braiding_form(code: PauliCode, limits=None, *, with_pairs=True) -> BraidingForm:
    limits = limits or get_limits()
    if code.m != 2:
        raise PreconditionError("braiding is computed for m = 2 only")
    if not is_lagrangian(code, limits):
        raise PreconditionError("code is not Lagrangian")
    basis = charge_basis(code, limits)
    n = basis.dim
    if n == 0:
        return BraidingForm(code.p, [], np.zeros((0, 0), dtype=np.int64), [], 0)
    period = math.lcm(*basis.periods)
    spread = max(1, code.sigma.spread())
    geometry = Geometry(spread, spread, period)
    N = torus_size(code, basis, geometry)
    last = None
    for _ in range(limits.max_torus_doublings + 1):
        try:
            inst = FiniteInstance(code, N, period=period, width=geometry.width)
            bf = _evaluate(inst, basis, with_pairs)
            break
        except StringSolveError as exc:
            last = exc
            N *= 2
            geometry = Geometry(spread, geometry.width * 2, period)
    else:
        raise ResourceLimitError(f"string operators not found after {limits.max_torus_doublings} doublings: {last}")
    gram = bf.gram
    if not np.array_equal(gram, gram.T):
        raise DegenerateFormError("braiding form is not symmetric")
    if linalg.rank(gram, code.p) < n:
        raise DegenerateFormError("braiding form is degenerate")
    return bf


def _evaluate(inst, basis, with_pairs):
    p, n = inst.p, basis.dim
    loops = [loop_operator(inst, v) for v in basis.vectors]
    exits = [exit_string(inst, v) for v in basis.vectors]
    gram = np.array([[inst.pairing(loops[i], exits[j]) for j in range(n)] for i in range(n)], dtype=np.int64)
    theta = [self_statistics(inst, v) for v in basis.vectors]
    bf = BraidingForm(p, list(basis.labels), gram, theta, inst.N)
    pairs = {}
    if with_pairs:
        for i in range(n):
            for j in range(n):
                coeffs = [0] * n
                coeffs[i] += 1
                coeffs[j] += 1
                pairs[(i, j)] = self_statistics(inst, basis.combine(coeffs))
    bf.pair_theta = pairs
    return bf
