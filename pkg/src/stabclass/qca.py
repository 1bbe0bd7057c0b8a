"""Clifford QCAs modulo phases: symplectic 2q x 2q Laurent matrices."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .code import PauliCode, hyperbolic_form
from .errors import PreconditionError, RingMismatchError
from .ring import LaurentMatrix, LaurentPoly, check_prime


@dataclass(frozen=True)
class CliffordQCARep:
    p: int
    m: int
    q: int
    U: LaurentMatrix

    def __post_init__(self):
        check_prime(self.p)
        if self.U.shape != (2 * self.q, 2 * self.q):
            raise RingMismatchError(f"QCA matrix must be {2 * self.q} x {2 * self.q}")
        if (self.U.p, self.U.m) != (self.p, self.m):
            raise RingMismatchError("QCA matrix lives over a different ring")

    @classmethod
    def of(cls, U: LaurentMatrix):
        if U.rows != U.cols or U.rows % 2:
            raise RingMismatchError("QCA matrix must be square of even size")
        return cls(U.p, U.m, U.rows // 2, U)

    @property
    def omega(self):
        return hyperbolic_form(self.p, self.m, self.q)


def _rep(U):
    return U if isinstance(U, CliffordQCARep) else CliffordQCARep.of(U)


def verify_symplectic(U) -> bool:
    if isinstance(U, LaurentMatrix) and (U.rows != U.cols or U.rows % 2):
        return False
    U = _rep(U)
    W = U.omega
    return U.U.dagger() @ W @ U.U == W


def _require(U):
    U = _rep(U)
    if not verify_symplectic(U):
        raise PreconditionError("matrix does not preserve the symplectic form")
    return U


def compose(U, V) -> CliffordQCARep:
    """U after V."""
    U, V = _rep(U), _rep(V)
    if (U.p, U.m, U.q) != (V.p, V.m, V.q):
        raise RingMismatchError("cannot compose QCAs over different rings or sizes")
    return CliffordQCARep(U.p, U.m, U.q, U.U @ V.U)


def inverse(U) -> CliffordQCARep:
    """Omega^{-1} dagger(U) Omega, with Omega^{-1} = -Omega."""
    U = _require(U)
    W = U.omega
    return CliffordQCARep(U.p, U.m, U.q, -(W @ U.U.dagger() @ W))


def is_separated(U) -> bool:
    U = _require(U)
    q = U.q
    return U.U.block(0, q, q, 2 * q).is_zero() and U.U.block(q, 2 * q, 0, q).is_zero()


def qca_range(U) -> int:
    U = U.U if isinstance(U, CliffordQCARep) else U
    return U.max_abs_exponent()


def create_stabilizer(U) -> PauliCode:
    """Image of the all-Z Lagrangian: sigma = U [0; I_q]."""
    U = _require(U)
    q = U.q
    return PauliCode(U.p, U.m, q, U.U.block(0, 2 * q, q, 2 * q))


# elementary generators

def identity(p, m, q) -> CliffordQCARep:
    return CliffordQCARep(p, m, q, LaurentMatrix.identity(p, m, 2 * q))


def shift(p, m, q, exps) -> CliffordQCARep:
    mono = LaurentPoly.monomial(p, m, exps)
    return CliffordQCARep(p, m, q, LaurentMatrix.identity(p, m, 2 * q).scale(mono))


def swap_xz(p, m, q, site) -> CliffordQCARep:
    """Fourier-type gate on one qudit: X -> Z, Z -> -X."""
    one, mone = LaurentPoly.one(p, m), LaurentPoly.constant(p, m, -1)
    U = [list(r) for r in LaurentMatrix.identity(p, m, 2 * q).entries]
    zero = LaurentPoly.zero(p, m)
    U[site][site] = zero
    U[q + site][q + site] = zero
    U[q + site][site] = one
    U[site][q + site] = mone
    return CliffordQCARep(p, m, q, LaurentMatrix(p, m, U, 2 * q, 2 * q))


def shear(S: LaurentMatrix) -> CliffordQCARep:
    """[[I, 0], [S, I]] for hermitian S (dagger(S) = S)."""
    if S.dagger() != S:
        raise PreconditionError("shear block must be hermitian")
    p, m, q = S.p, S.m, S.rows
    I = LaurentMatrix.identity(p, m, q)
    Z = LaurentMatrix.zeros(p, m, q, q)
    return CliffordQCARep(p, m, q, I.hstack(Z).vstack(S.hstack(I)))


def separated(A: LaurentMatrix, A_inv: LaurentMatrix) -> CliffordQCARep:
    """[[A, 0], [0, dagger(A)^{-1}]] given A and its inverse."""
    p, m, q = A.p, A.m, A.rows
    if not (A @ A_inv == LaurentMatrix.identity(p, m, q)):
        raise PreconditionError("A_inv is not the inverse of A")
    Z = LaurentMatrix.zeros(p, m, q, q)
    return CliffordQCARep(p, m, q, A.hstack(Z).vstack(Z.hstack(A_inv.dagger())))


def _random_poly(rng, p, m, terms=2, radius=1):
    d = {}
    for _ in range(rng.randint(1, terms)):
        e = tuple(rng.randint(-radius, radius) for _ in range(m))
        d[e] = rng.randrange(1, p)
    return LaurentPoly(p, m, d)


def random_elementary(rng: random.Random, p, m, q) -> CliffordQCARep:
    """One generator drawn from swaps, shears, transvection-type separated
    maps and monomial scalings."""
    kind = rng.randrange(4)
    if kind == 0:
        return swap_xz(p, m, q, rng.randrange(q))
    if kind == 1:
        zero = LaurentPoly.zero(p, m)
        rows = [[zero] * q for _ in range(q)]
        i, j = rng.randrange(q), rng.randrange(q)
        f = _random_poly(rng, p, m)
        if i == j:
            f = f + f.involute()
            rows[i][i] = f
        else:
            rows[i][j] = f
            rows[j][i] = f.involute()
        return shear(LaurentMatrix(p, m, rows, q, q))
    if kind == 2 and q > 1:
        i, j = rng.sample(range(q), 2)
        f = _random_poly(rng, p, m)
        A = [list(r) for r in LaurentMatrix.identity(p, m, q).entries]
        B = [list(r) for r in LaurentMatrix.identity(p, m, q).entries]
        A[i][j] = f
        B[i][j] = -f
        return separated(LaurentMatrix(p, m, A, q, q), LaurentMatrix(p, m, B, q, q))
    i = rng.randrange(q)
    e = tuple(rng.randint(-1, 1) for _ in range(m))
    c = rng.randrange(1, p)
    mono = LaurentPoly.monomial(p, m, e, c)
    A = [list(r) for r in LaurentMatrix.identity(p, m, q).entries]
    B = [list(r) for r in LaurentMatrix.identity(p, m, q).entries]
    A[i][i] = mono
    B[i][i] = mono.inverse()
    return separated(LaurentMatrix(p, m, A, q, q), LaurentMatrix(p, m, B, q, q))


def random_word(rng: random.Random, p, m, q, length) -> CliffordQCARep:
    U = identity(p, m, q)
    for _ in range(length):
        U = compose(random_elementary(rng, p, m, q), U)
    return U
