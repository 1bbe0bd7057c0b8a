"""Translation-invariant Pauli stabilizer codes and the symplectic form."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import RingMismatchError
from .groebner import ModulePresentation, groebner, kernel
from .ring import LaurentMatrix, LaurentPoly, check_prime


def hyperbolic_form(p: int, m: int, q: int) -> LaurentMatrix:
    """[[0, I_q], [-I_q, 0]] over R."""
    one, mone = LaurentPoly.one(p, m), LaurentPoly.constant(p, m, -1)
    zero = LaurentPoly.zero(p, m)
    rows = [[zero] * (2 * q) for _ in range(2 * q)]
    for i in range(q):
        rows[i][q + i] = one
        rows[q + i][i] = mone
    return LaurentMatrix(p, m, rows, 2 * q, 2 * q)


@dataclass(frozen=True)
class PauliCode:
    """Stabilizer code: the columns of ``sigma`` (2q x k) generate L inside P = R^{2q}.

    Rows 0..q-1 are the X block, rows q..2q-1 the Z block.
    """

    p: int
    m: int
    q: int
    sigma: LaurentMatrix
    omega: LaurentMatrix | None = None

    def __post_init__(self):
        check_prime(self.p)
        if self.sigma.rows != 2 * self.q:
            raise RingMismatchError(f"sigma has {self.sigma.rows} rows, expected {2 * self.q}")
        if (self.sigma.p, self.sigma.m) != (self.p, self.m):
            raise RingMismatchError("sigma lives over a different ring")
        if self.omega is not None:
            if self.omega.shape != (2 * self.q, 2 * self.q):
                raise RingMismatchError("omega must be 2q x 2q")
            if (self.omega.p, self.omega.m) != (self.p, self.m):
                raise RingMismatchError("omega lives over a different ring")

    @property
    def k(self) -> int:
        return self.sigma.cols

    @property
    def form(self) -> LaurentMatrix:
        if self.omega is None:
            return hyperbolic_form(self.p, self.m, self.q)
        return self.omega

    @classmethod
    def from_generators(cls, p, m, q, gens, omega=None):
        return cls(p, m, q, LaurentMatrix.from_columns(p, m, gens, 2 * q), omega)

    def generators(self):
        return self.sigma.columns()

    def with_sigma(self, sigma):
        return PauliCode(self.p, self.m, self.q, sigma, self.omega)


def omega_pairing(a, b, omega: LaurentMatrix) -> LaurentPoly:
    """dagger(a) * omega * b for column vectors a, b."""
    n = omega.rows
    if len(a) != n or len(b) != n:
        raise RingMismatchError("vector length does not match the form")
    p, m = omega.p, omega.m
    total = LaurentPoly.zero(p, m)
    for i in range(n):
        if not a[i]:
            continue
        ai = a[i].involute()
        for j in range(n):
            w = omega[i, j]
            if w and b[j]:
                total = total + ai * w * b[j]
    return total


def unimodular_check(omega: LaurentMatrix) -> bool:
    if omega.rows != omega.cols:
        return False
    return omega.det().is_unit()


def is_isotropic(code: PauliCode) -> bool:
    if code.k == 0:
        return True
    return (code.sigma.dagger() @ code.form @ code.sigma).is_zero()


def excess_map(code: PauliCode) -> LaurentMatrix:
    """delta = dagger(sigma) * omega, a k x 2q matrix."""
    if code.k == 0:
        return LaurentMatrix.zeros(code.p, code.m, 0, 2 * code.q)
    return code.sigma.dagger() @ code.form


def in_column_span(vectors, M: LaurentMatrix, limits=None) -> list:
    gb = groebner(ModulePresentation.from_columns(M), limits)
    return [gb.contains(v) for v in vectors]


def is_lagrangian(code: PauliCode, limits=None) -> bool:
    """L = L^perp, i.e. ker(delta) is contained in im(sigma)."""
    if not is_isotropic(code):
        return False
    ker = kernel(excess_map(code), limits, minimal=False)
    if not ker.gens:
        return True
    return all(in_column_span(ker.gens, code.sigma, limits))
