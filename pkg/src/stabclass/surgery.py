"""Algebraic surgery on split Poincare complexes over Z/p.

Over a field every complex is equivalent to its homology, so a Poincare
complex is stored as graded dimensions dim H_i (0 <= i <= d), invertible
pairings beta_i : H_i x H_{d-i} -> Z/p for i < d/2, and for d = 2k a middle
form on H_k ((-1)^k-symmetric), optionally with a quadratic refinement.
Killing nu in H_j replaces H_j by H_j/<nu> and H_{d-j} by the annihilator
of nu.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import NotPoincareError, PreconditionError
from .forms import QuadraticSpace, arf, witt_class
from .ring import check_prime


def _mat(rows, cols, data=None):
    if data is None:
        return np.zeros((rows, cols), dtype=np.int64)
    return np.array(data, dtype=np.int64).reshape(rows, cols)


def _freeze(A):
    return tuple(tuple(int(x) for x in r) for r in np.asarray(A))


@dataclass(frozen=True)
class PoincareComplex:
    p: int
    d: int
    dims: tuple
    pairings: tuple
    middle: tuple | None = None
    refinement: tuple | None = None

    def __post_init__(self):
        check_prime(self.p)
        p, d = self.p, self.d
        dims = tuple(int(x) for x in self.dims)
        object.__setattr__(self, "dims", dims)
        if d < 0 or len(dims) != d + 1:
            raise NotPoincareError(f"need {d + 1} graded dimensions")
        if any(x < 0 for x in dims):
            raise NotPoincareError("negative dimension")
        if any(dims[i] != dims[d - i] for i in range(d + 1)):
            raise NotPoincareError("dim H_i must equal dim H_{d-i}")
        half = (d + 1) // 2
        if len(self.pairings) != half:
            raise NotPoincareError(f"need {half} pairing matrices")
        pairs = []
        for i, B in enumerate(self.pairings):
            n = dims[i]
            B = _mat(n, n, B) % p if n else _mat(0, 0)
            if n and linalg.rank(B, p) < n:
                raise NotPoincareError(f"pairing in degree {i} is singular")
            pairs.append(_freeze(B))
        object.__setattr__(self, "pairings", tuple(pairs))
        if d % 2:
            if self.middle is not None or self.refinement is not None:
                raise NotPoincareError("odd total degree has no middle form")
            return
        k = d // 2
        n = dims[k]
        M = _mat(n, n, self.middle if self.middle is not None else ([] if n == 0 else None)) % p
        sign = 1 if k % 2 == 0 else -1
        if not np.array_equal(M, (sign * M.T) % p):
            raise NotPoincareError("middle form has the wrong symmetry")
        if sign == -1 and np.any(np.diag(M)):
            raise NotPoincareError("middle form must be alternating")
        if n and linalg.rank(M, p) < n:
            raise NotPoincareError("middle form is degenerate")
        object.__setattr__(self, "middle", _freeze(M))
        if self.refinement is not None:
            Q = _mat(n, n, self.refinement) % p
            if np.any(np.tril(Q, -1)):
                raise NotPoincareError("refinement must be upper-triangular")
            if not np.array_equal((Q + Q.T) % p, M):
                raise NotPoincareError("refinement does not refine the middle form")
            object.__setattr__(self, "refinement", _freeze(Q))

    @property
    def k(self):
        return self.d // 2

    def beta(self, i) -> np.ndarray:
        n = self.dims[i]
        return _mat(n, n, self.pairings[i]) if n else _mat(0, 0)

    def middle_matrix(self) -> np.ndarray:
        n = self.dims[self.k]
        return _mat(n, n, self.middle) if n else _mat(0, 0)

    def is_middle_only(self) -> bool:
        if self.d % 2:
            return all(x == 0 for i, x in enumerate(self.dims) if i not in (self.k, self.k + 1))
        return all(x == 0 for i, x in enumerate(self.dims) if i != self.k)

    def below_middle_rank(self) -> int:
        return sum(self.dims[i] for i in range(len(self.pairings)))

    def as_dict(self):
        out = {"p": self.p, "d": self.d, "dims": list(self.dims),
               "pairings": [[list(r) for r in B] for B in self.pairings]}
        if self.d % 2 == 0:
            mid = {"gram": [list(r) for r in self.middle]}
            if self.refinement is not None:
                mid["refinement"] = [list(r) for r in self.refinement]
            out["middle"] = mid
        return out

    @classmethod
    def middle_only(cls, p, d, gram, refinement=None):
        if d % 2:
            raise ValueError("middle-only complexes need even d")
        n = len(gram)
        dims = [0] * (d + 1)
        dims[d // 2] = n
        return cls(p, d, tuple(dims), tuple(() for _ in range(d // 2)), _freeze(_mat(n, n, gram)) if n else (),
                   None if refinement is None else (_freeze(_mat(n, n, refinement)) if n else ()))

    @classmethod
    def from_form(cls, V: QuadraticSpace, d=4):
        """Middle-only complex (d = 0 mod 4) carrying V."""
        B = V.bilinear()
        return cls.middle_only(V.p, d, B, V.gram if V.p == 2 else None)


@dataclass(frozen=True)
class SurgeryTrace:
    steps: tuple
    initial: PoincareComplex
    final: PoincareComplex

    def replay(self) -> PoincareComplex:
        X = self.initial
        for j, nu in self.steps:
            X = surgery_kill(X, j, nu)
        return X


def _homology(dif_in, dif_out, n, p):
    """Basis rows of ker(dif_out) modulo im(dif_in) representatives, plus
    the cycle and boundary bases."""
    Z = linalg.nullspace(dif_out, p) if dif_out is not None and dif_out.size else np.eye(n, dtype=np.int64)
    Bd = linalg.row_basis(dif_in.T, p) if dif_in is not None and dif_in.size else _mat(0, n)
    reps = []
    cur = Bd.copy()
    for z in Z:
        cand = np.vstack([cur, z]) if cur.size else z.reshape(1, -1)
        if linalg.rank(cand, p) > (linalg.rank(cur, p) if cur.size else 0):
            reps.append(z)
            cur = cand
    return _mat(len(reps), n, reps) if reps else _mat(0, n), Bd


def normalize(p, d, dims, differentials, pairing, refinement=None) -> PoincareComplex:
    """Split a chain-level Poincare complex into its homology.

    ``differentials[i]`` is the matrix of C_i -> C_{i-1} (i = 1..d) and
    ``pairing[i]`` the chain pairing C_i x C_{d-i} -> Z/p (i = 0..d).
    A refinement (d even) is an upper-triangular matrix on C_k.
    """
    check_prime(p)
    dims = [int(x) for x in dims]
    if len(dims) != d + 1:
        raise NotPoincareError(f"need {d + 1} chain dimensions")
    D = {}
    for i in range(1, d + 1):
        A = differentials.get(i) if isinstance(differentials, dict) else differentials[i - 1]
        D[i] = _mat(dims[i - 1], dims[i], A) % p if A is not None and dims[i - 1] * dims[i] else _mat(dims[i - 1], dims[i])
    for i in range(2, d + 1):
        if (D[i - 1] @ D[i] % p).any():
            raise NotPoincareError("differentials do not compose to zero")
    P = {}
    for i in range(d + 1):
        A = pairing.get(i) if isinstance(pairing, dict) else pairing[i]
        P[i] = _mat(dims[i], dims[d - i], A) % p if A is not None and dims[i] * dims[d - i] else _mat(dims[i], dims[d - i])
    H = {}
    for i in range(d + 1):
        H[i], _ = _homology(D.get(i + 1), D.get(i), dims[i], p)
        # boundaries must pair to zero with cycles
    for i in range(d + 1):
        Bd = linalg.row_basis(D[i + 1].T, p) if i < d and D[i + 1].size else _mat(0, dims[i])
        Zc = linalg.nullspace(D[d - i], p) if d - i >= 1 and D[d - i].size else np.eye(dims[d - i], dtype=np.int64)
        if Bd.size and Zc.size and (Bd @ P[i] @ Zc.T % p).any():
            raise NotPoincareError("pairing is not compatible with the differentials")
    hd = [H[i].shape[0] for i in range(d + 1)]
    if any(hd[i] != hd[d - i] for i in range(d + 1)):
        raise NotPoincareError("homology is not self-dual")
    pairs = tuple((H[i] @ P[i] @ H[d - i].T % p) for i in range(d - d // 2))
    pairs = tuple(pairs[i] for i in range((d + 1) // 2))
    middle = ref = None
    if d % 2 == 0:
        k = d // 2
        middle = H[k] @ P[k] @ H[k].T % p
        if refinement is not None:
            Q = _mat(dims[k], dims[k], refinement) % p
            vals = [int(v @ Q @ v) % p for v in H[k]]
            n = hd[k]
            R = np.zeros((n, n), dtype=np.int64)
            for a in range(n):
                R[a, a] = vals[a]
                for b in range(a + 1, n):
                    R[a, b] = middle[a, b]
            ref = R
    try:
        return PoincareComplex(p, d, tuple(hd), tuple(_freeze(B) for B in pairs),
                               None if middle is None else _freeze(middle),
                               None if ref is None else _freeze(ref))
    except NotPoincareError as exc:
        raise NotPoincareError(f"not a Poincare object: {exc}") from None


def surgery_kill(X: PoincareComplex, j: int, nu) -> PoincareComplex:
    p, d = X.p, X.d
    if d % 2 == 0 and not 0 <= j < X.k:
        raise PreconditionError(f"surgery degree must satisfy 0 <= j < {X.k}")
    if d % 2 == 1 and not 0 <= j <= X.k:
        raise PreconditionError(f"surgery degree must satisfy 0 <= j <= {X.k}")
    n = X.dims[j]
    if n == 0:
        raise PreconditionError(f"H_{j} is zero")
    nu = np.asarray(nu, dtype=np.int64).reshape(-1) % p
    if nu.shape != (n,):
        raise PreconditionError(f"class must have {n} coordinates")
    if not nu.any():
        raise PreconditionError("cannot do surgery on the zero class")
    B = X.beta(j)
    quot = linalg.complement_basis(nu.reshape(1, -1), n, p)
    ann = linalg.nullspace((nu @ B % p).reshape(1, -1), p)
    newB = quot @ B @ ann.T % p
    dims = list(X.dims)
    dims[j] -= 1
    dims[d - j] -= 1
    pairs = list(X.pairings)
    pairs[j] = _freeze(newB) if n > 1 else ()
    return PoincareComplex(p, d, tuple(dims), tuple(pairs), X.middle, X.refinement)


def reduce_to_middle(X: PoincareComplex, rng: random.Random | None = None):
    """Kill everything below the middle.  For odd d the degree-k classes are
    killed as well (they span a Lagrangian), leaving the empty complex.
    ``rng`` randomizes the order of degrees and the classes killed."""
    steps = []
    Y = X
    top = X.k if X.d % 2 else X.k - 1
    while True:
        live = [j for j in range(top + 1) if Y.dims[j] > 0]
        if not live:
            break
        if rng is None:
            j = live[0]
            nu = np.zeros(Y.dims[j], dtype=np.int64)
            nu[0] = 1
        else:
            j = rng.choice(live)
            nu = np.zeros(Y.dims[j], dtype=np.int64)
            while not nu.any():
                nu = np.array([rng.randrange(Y.p) for _ in range(Y.dims[j])], dtype=np.int64)
        Y = surgery_kill(Y, j, nu)
        steps.append((j, tuple(int(v) for v in nu)))
    return Y, SurgeryTrace(tuple(steps), X, Y)


def _symplectic_reduce(M, p):
    """Lagrangian of an alternating nondegenerate form by symplectic Gram-Schmidt."""
    n = M.shape[0]
    rest = [r.copy() for r in np.eye(n, dtype=np.int64)]
    lag = []
    while rest:
        a = rest.pop(0)
        k = next(k for k, v in enumerate(rest) if (a @ M @ v) % p)
        b = rest.pop(k)
        b = b * pow(int(a @ M @ b % p), -1, p) % p
        # now M(a, b) = 1 and M(b, a) = -1
        new = []
        for v in rest:
            v = (v - (v @ M @ b) * a + (v @ M @ a) * b) % p
            new.append(v)
        rest = new
        lag.append(a)
    return lag


@dataclass(frozen=True)
class LClass:
    d: int
    p: int
    value: str
    method: str
    lagrangian: tuple = field(default=())
    witt: object = None

    @property
    def is_zero(self) -> bool:
        return self.value == "0"

    def as_dict(self):
        out = {"d": self.d, "p": self.p, "class": self.value, "method": self.method}
        if self.lagrangian:
            out["lagrangian"] = [list(v) for v in self.lagrangian]
        return out


def classify(X: PoincareComplex, rng: random.Random | None = None) -> LClass:
    p, d = X.p, X.d
    if d % 2:
        Y, trace = reduce_to_middle(X, rng)
        # after the kills below k, the classes killed in degree k span H_k,
        # a Lagrangian; the reduction ends at the empty complex
        assert sum(Y.dims) == 0
        return LClass(d, p, "0", "odd degree: H_k is a Lagrangian")
    Y, _ = reduce_to_middle(X, rng)
    M = Y.middle_matrix()
    k = d // 2
    if k % 2 == 1:
        if p != 2:
            lag = _symplectic_reduce(M, p) if M.size else []
            L = np.array(lag, dtype=np.int64).reshape(len(lag), M.shape[0])
            assert not (L @ M @ L.T % p).any()
            return LClass(d, p, "0", "skew form: symplectic Lagrangian", tuple(tuple(int(x) for x in v) for v in lag))
        if Y.refinement is None:
            raise PreconditionError("p = 2 and d = 2 mod 4: a quadratic refinement is required")
        V = QuadraticSpace(2, Y.refinement)
        a = arf(V) if V.dim else 0
        return LClass(d, p, str(a), "Arf invariant of the refinement", witt=witt_class(V))
    if p != 2:
        V = QuadraticSpace.from_bilinear(p, M)
        c = witt_class(V)
        return LClass(d, p, c.label, "Witt class of the middle form", witt=c)
    if Y.refinement is not None:
        V = QuadraticSpace(2, Y.refinement)
        c = witt_class(V)
        return LClass(d, p, str(c.arf), "Arf invariant of the refinement", witt=c)
    return LClass(d, p, str(M.shape[0] % 2), "rank parity of the symmetric middle form")


def negate(X: PoincareComplex) -> PoincareComplex:
    p = X.p
    neg = lambda B: _freeze((-np.asarray(B, dtype=np.int64)) % p) if len(B) else ()
    return PoincareComplex(p, X.d, X.dims, tuple(neg(B) for B in X.pairings),
                           None if X.middle is None else neg(X.middle),
                           None if X.refinement is None else neg(X.refinement))


def _block(A, B):
    A = np.asarray(A, dtype=np.int64).reshape(len(A), -1) if len(A) else _mat(0, 0)
    B = np.asarray(B, dtype=np.int64).reshape(len(B), -1) if len(B) else _mat(0, 0)
    out = _mat(A.shape[0] + B.shape[0], A.shape[1] + B.shape[1])
    out[: A.shape[0], : A.shape[1]] = A
    out[A.shape[0]:, A.shape[1]:] = B
    return _freeze(out)


def direct_sum(X: PoincareComplex, Y: PoincareComplex) -> PoincareComplex:
    if (X.p, X.d) != (Y.p, Y.d):
        raise ValueError("direct sum needs equal p and d")
    dims = tuple(a + b for a, b in zip(X.dims, Y.dims))
    pairs = tuple(_block(a, b) for a, b in zip(X.pairings, Y.pairings))
    middle = ref = None
    if X.d % 2 == 0:
        middle = _block(X.middle, Y.middle)
        if X.refinement is not None and Y.refinement is not None:
            ref = _block(X.refinement, Y.refinement)
    return PoincareComplex(X.p, X.d, dims, pairs, middle, ref)


def _random_invertible(rng, n, p):
    while True:
        A = np.array([[rng.randrange(p) for _ in range(n)] for _ in range(n)], dtype=np.int64).reshape(n, n)
        if linalg.rank(A, p) == n:
            return A


def random_complex(rng: random.Random, p: int, d: int, max_dim: int = 4) -> PoincareComplex:
    """Random valid complex; for p = 2 the middle form always carries a refinement
    when d = 2 mod 4, and does so half the time when d = 0 mod 4."""
    dims = [0] * (d + 1)
    for i in range((d + 1) // 2):
        dims[i] = dims[d - i] = rng.randint(0, max_dim)
    pairs = [_freeze(_random_invertible(rng, dims[i], p)) if dims[i] else () for i in range((d + 1) // 2)]
    if d % 2:
        return PoincareComplex(p, d, tuple(dims), tuple(pairs))
    k = d // 2
    if k % 2:
        n = 2 * rng.randint(0, max_dim // 2)
        dims[k] = n
        A = _random_invertible(rng, n, p) if n else _mat(0, 0)
        J = _mat(n, n)
        for i in range(n // 2):
            J[2 * i, 2 * i + 1] = 1
            J[2 * i + 1, 2 * i] = p - 1
        M = A @ J @ A.T % p
        ref = None
        if p == 2:
            Q = np.triu(M, 1)
            for i in range(n):
                Q[i, i] = rng.randrange(2)
            ref = _freeze(Q) if n else ()
        return PoincareComplex(p, d, tuple(dims), tuple(pairs), _freeze(M) if n else (), ref)
    n = rng.randint(0, max_dim)
    if p == 2 and rng.random() < 0.5:
        n -= n % 2
        dims[k] = n
        A = _random_invertible(rng, n, p) if n else _mat(0, 0)
        J = _mat(n, n)
        for i in range(n // 2):
            J[2 * i, 2 * i + 1] = J[2 * i + 1, 2 * i] = 1
        M = A @ J @ A.T % 2
        Q = np.triu(M, 1)
        for i in range(n):
            Q[i, i] = rng.randrange(2)
        return PoincareComplex(p, d, tuple(dims), tuple(pairs), _freeze(M) if n else (), _freeze(Q) if n else ())
    dims[k] = n
    while True:
        S = np.array([[rng.randrange(p) for _ in range(n)] for _ in range(n)], dtype=np.int64).reshape(n, n)
        M = (np.triu(S) + np.triu(S, 1).T) % p
        if n == 0 or linalg.rank(M, p) == n:
            break
    return PoincareComplex(p, d, tuple(dims), tuple(pairs), _freeze(M) if n else ())
