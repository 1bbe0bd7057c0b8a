"""Quadratic spaces over Z/p, Witt classes, the Arf invariant and L_n(Z/p)."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from sympy.ntheory import is_quad_residue, sqrt_mod

from . import linalg
from .errors import PreconditionError
from .ring import check_prime


@lru_cache(maxsize=None)
def least_nonresidue(p: int) -> int:
    for a in range(2, p):
        if not is_quad_residue(a, p):
            return a
    raise ValueError(f"Z/{p} has no quadratic non-residue")


def is_square(a: int, p: int) -> bool:
    a %= p
    return a == 0 or p == 2 or is_quad_residue(a, p)


@dataclass(frozen=True)
class QuadraticSpace:
    """(Z/p)^dim with a quadratic form.

    Odd p: ``gram`` is symmetric G with q(v) = v^T G v and b = 2G.
    p = 2: ``gram`` is upper-triangular Q with q(v) = v^T Q v and b = Q + Q^T.
    """

    p: int
    gram: tuple

    def __post_init__(self):
        check_prime(self.p)
        p = self.p
        g = tuple(tuple(int(x) % p for x in row) for row in self.gram)
        n = len(g)
        if any(len(r) != n for r in g):
            raise ValueError("gram matrix must be square")
        if p == 2:
            if any(g[i][j] for i in range(n) for j in range(i)):
                raise ValueError("p = 2 forms are stored upper-triangular")
        elif any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise ValueError("gram matrix must be symmetric")
        object.__setattr__(self, "gram", g)

    @property
    def dim(self) -> int:
        return len(self.gram)

    @property
    def G(self) -> np.ndarray:
        return np.array(self.gram, dtype=np.int64).reshape(self.dim, self.dim)

    @classmethod
    def zero(cls, p):
        return cls(p, ())

    @classmethod
    def diagonal(cls, p, values):
        n = len(values)
        return cls(p, tuple(tuple(values[i] if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def hyperbolic(cls, p, copies=1):
        """q(a, b) = ab, repeated."""
        H = cls(p, ((0, 1), (0, 0))) if p == 2 else cls(p, ((0, (p + 1) // 2), ((p + 1) // 2, 0)))
        out = cls.zero(p)
        for _ in range(copies):
            out = out.direct_sum(H)
        return out

    @classmethod
    def from_values(cls, p, values, cross):
        """Form with q(e_i) = values[i] and b(e_i, e_j) = cross[i][j] (i < j)."""
        n = len(values)
        if p == 2:
            return cls(p, tuple(tuple(values[i] if i == j else (cross[i][j] if j > i else 0)
                                      for j in range(n)) for i in range(n)))
        half = (p + 1) // 2
        return cls(p, tuple(tuple(values[i] if i == j else cross[min(i, j)][max(i, j)] * half % p
                                  for j in range(n)) for i in range(n)))

    @classmethod
    def from_bilinear(cls, p, B):
        """Odd p: the form q(v) = b(v, v) / 2 of a symmetric bilinear Gram B."""
        if p == 2:
            raise ValueError("a bilinear form does not determine q at p = 2")
        half = (p + 1) // 2
        return cls(p, tuple(tuple(int(x) * half % p for x in row) for row in B))

    def q(self, v) -> int:
        v = np.asarray(v, dtype=np.int64) % self.p
        return int(v @ self.G @ v) % self.p if self.dim else 0

    def b(self, u, v) -> int:
        u = np.asarray(u, dtype=np.int64) % self.p
        v = np.asarray(v, dtype=np.int64) % self.p
        return int(u @ self.bilinear() @ v) % self.p if self.dim else 0

    def bilinear(self) -> np.ndarray:
        G = self.G
        return (G + G.T) % self.p

    def is_nondegenerate(self) -> bool:
        return linalg.rank(self.bilinear(), self.p) == self.dim if self.dim else True

    def restrict(self, basis) -> "QuadraticSpace":
        """Form on the span of the rows of ``basis`` in that basis."""
        P = np.asarray(basis, dtype=np.int64).reshape(-1, self.dim) % self.p
        n = P.shape[0]
        vals = [self.q(P[i]) for i in range(n)]
        cross = [[self.b(P[i], P[j]) for j in range(n)] for i in range(n)]
        return QuadraticSpace.from_values(self.p, vals, cross)

    change_basis = restrict

    def direct_sum(self, other: "QuadraticSpace") -> "QuadraticSpace":
        if other.p != self.p:
            raise ValueError("forms over different fields")
        a, b = self.dim, other.dim
        rows = [list(r) + [0] * b for r in self.gram] + [[0] * a + list(r) for r in other.gram]
        return QuadraticSpace(self.p, tuple(tuple(r) for r in rows))

    def negate(self) -> "QuadraticSpace":
        return QuadraticSpace(self.p, tuple(tuple(-x for x in r) for r in self.gram))

    def as_dict(self):
        return {"p": self.p, "dim": self.dim, "gram": [list(r) for r in self.gram]}


def radical(V: QuadraticSpace) -> np.ndarray:
    """Rows span the kernel of the bilinear form."""
    if V.dim == 0:
        return np.zeros((0, 0), dtype=np.int64)
    return linalg.nullspace(V.bilinear(), V.p)


def _root(A, B, C, p):
    """Some a with A a^2 + B a + C = 0 mod p, or None."""
    A, B, C = A % p, B % p, C % p
    if A == 0:
        if B:
            return -C * pow(B, -1, p) % p
        return 0 if C == 0 else None
    if p == 2:
        for a in (0, 1):
            if (A * a + B * a + C) % 2 == 0:
                return a
        return None
    D = (B * B - 4 * A * C) % p
    s = 0 if D == 0 else sqrt_mod(D, p)
    if s is None:
        return None
    return (-B + s) * pow(2 * A, -1, p) % p


def _isotropic_in_plane(V, u, w):
    """Nonzero isotropic vector in span(u, w), or None."""
    p = V.p
    qu, qw, buw = V.q(u), V.q(w), V.b(u, w)
    if qu == 0 and np.any(u % p):
        return u % p
    # q(a u + w) = qu a^2 + buw a + qw
    a = _root(qu, buw, qw, p)
    if a is None:
        return None
    v = (a * u + w) % p
    return v if v.any() else None


def find_isotropic_vector(V: QuadraticSpace):
    """Nonzero v with q(v) = 0, or None when V is anisotropic.

    dim <= 2 is solved in closed form.  For dim >= 3 the span of the first
    three basis vectors always contains a zero of q (Chevalley-Warning); it
    is found by solving one quadratic per value of the second coordinate.
    """
    p, n = V.p, V.dim
    if n == 0:
        return None
    E = np.eye(n, dtype=np.int64)
    if n == 1:
        return E[0] if V.q(E[0]) == 0 else None
    v = _isotropic_in_plane(V, E[0], E[1])
    if v is not None or n == 2:
        return v
    for t in range(p):
        w = (t * E[1] + E[2]) % p
        v = _isotropic_in_plane(V, E[0], w)
        if v is not None:
            return v
    raise AssertionError("a ternary quadratic form over a finite field always has a zero")


def split_hyperbolic(V: QuadraticSpace):
    """Return ((u, w), V') with q(u) = q(w) = 0, b(u, w) = 1 and V' the
    orthogonal complement of span(u, w), expressed in a basis."""
    if not V.is_nondegenerate():
        raise PreconditionError("form is degenerate")
    u = find_isotropic_vector(V)
    if u is None:
        raise PreconditionError("form is anisotropic")
    p = V.p
    bu = u @ V.bilinear() % p
    i = int(np.flatnonzero(bu)[0])
    w = np.zeros(V.dim, dtype=np.int64)
    w[i] = pow(int(bu[i]), -1, p)
    w = (w - V.q(w) * u) % p
    M = np.vstack([u @ V.bilinear(), w @ V.bilinear()]) % p
    comp = linalg.nullspace(M, p)
    return (u, w), V.restrict(comp), comp


def witt_decompose(V: QuadraticSpace):
    """(h, A) with V = H^h + A and A anisotropic."""
    if not V.is_nondegenerate():
        raise PreconditionError("form is degenerate")
    h = 0
    while True:
        if find_isotropic_vector(V) is None:
            return h, V
        _, V, _ = split_hyperbolic(V)
        h += 1


@dataclass(frozen=True)
class WittClass:
    """Class of a nondegenerate form, stored as its canonical anisotropic kernel."""

    p: int
    gram: tuple

    @property
    def space(self) -> QuadraticSpace:
        return QuadraticSpace(self.p, self.gram)

    @property
    def is_zero(self) -> bool:
        return not self.gram

    @property
    def arf(self) -> int:
        if self.p != 2:
            raise ValueError("the Arf invariant is defined for p = 2")
        return 0 if self.is_zero else 1

    @property
    def label(self) -> str:
        if self.is_zero:
            return "0"
        if self.p == 2:
            return "Arf=1"
        return "<" + ",".join(str(self.gram[i][i]) for i in range(len(self.gram))) + ">"

    def __add__(self, other):
        return witt_add(self, other)

    def __neg__(self):
        return witt_neg(self)

    def __sub__(self, other):
        return self + (-other)

    def order(self) -> int:
        c, k = self, 1
        while not c.is_zero:
            c, k = c + self, k + 1
        return k

    def as_dict(self):
        return {"p": self.p, "class": self.label, "anisotropic_gram": [list(r) for r in self.gram]}


def canonical_anisotropic(A: QuadraticSpace) -> tuple:
    p, n = A.p, A.dim
    if n == 0:
        return ()
    if p == 2:
        if n != 2:
            raise PreconditionError("anisotropic nondegenerate forms over Z/2 have dimension 2")
        return ((1, 1), (0, 1))
    ns = least_nonresidue(p)
    if n == 1:
        return ((1,),) if is_square(A.gram[0][0], p) else ((ns,),)
    if n == 2:
        return ((1, 0), (0, -ns % p))
    raise PreconditionError("anisotropic forms over Z/p have dimension at most 2")


def witt_class(V: QuadraticSpace) -> WittClass:
    _, A = witt_decompose(V)
    return WittClass(V.p, canonical_anisotropic(A))


def witt_add(c1: WittClass, c2: WittClass) -> WittClass:
    if c1.p != c2.p:
        raise ValueError("Witt classes over different fields")
    return witt_class(c1.space.direct_sum(c2.space))


def witt_neg(c: WittClass) -> WittClass:
    return witt_class(c.space.negate())


def symplectic_basis(V: QuadraticSpace):
    """Pairs (a_i, b_i) with b(a_i, b_j) = delta_ij and b(a_i, a_j) = b(b_i, b_j) = 0."""
    p, n = V.p, V.dim
    B = V.bilinear()
    rest = list(np.eye(n, dtype=np.int64))
    pairs = []
    while rest:
        a = rest.pop(0)
        k = next((k for k, v in enumerate(rest) if (a @ B @ v) % p), None)
        if k is None:
            raise PreconditionError("form is degenerate")
        bb = rest.pop(k)
        bb = bb * pow(int(a @ B @ bb % p), -1, p) % p
        new = []
        for v in rest:
            # v - b(v, b) a + b(v, a) b  is orthogonal to a and b (alternating b)
            v = (v - (v @ B @ bb) * a + (v @ B @ a) * bb) % p
            new.append(v)
        rest = new
        pairs.append((a, bb))
    return pairs


def arf(V: QuadraticSpace) -> int:
    if V.p != 2:
        raise PreconditionError("the Arf invariant needs p = 2")
    if V.dim % 2 or not V.is_nondegenerate():
        raise PreconditionError("the Arf invariant needs a nondegenerate even-dimensional form")
    return sum(V.q(a) * V.q(b) for a, b in symplectic_basis(V)) % 2


@dataclass(frozen=True)
class LGroup:
    """Classifying group for codes in n - 1 spatial dimensions.

    ``label`` follows the classification table (Z/2 for every n = 2 mod 4);
    ``prime_label`` is L_{-n}(Z/p) for this single prime, which vanishes at
    n = 2 mod 4 when p is odd.
    """

    n: int
    p: int
    label: str
    structure: str
    prime_label: str

    def __str__(self):
        return self.label

    def as_dict(self):
        return {"n": self.n, "p": self.p, "group": self.label, "structure": self.structure,
                "prime_group": self.prime_label}


def witt_group_structure(p: int) -> str:
    if p == 2:
        return "Z/2"
    return "Z/4" if p % 4 == 3 else "Z/2 x Z/2"


def l_group(n: int, p: int) -> LGroup:
    """Classifying group keyed on n mod 4 and p."""
    check_prime(p)
    r = n % 4
    if r in (1, 3):
        return LGroup(n, p, "0", "0", "0")
    if r == 2:
        return LGroup(n, p, "Z/2", "Z/2", "Z/2" if p == 2 else "0")
    w = f"Witt(Z/{p})"
    return LGroup(n, p, w, witt_group_structure(p), w)
