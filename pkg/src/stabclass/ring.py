"""Exact arithmetic over R = Z/p[x1^±1, ..., xm^±1].

Polynomials are sparse maps from exponent vectors to nonzero residues;
matrices are dense grids of polynomials.  Everything is immutable.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from sympy import isprime

from .errors import ExponentOverflowError, RingMismatchError

EXP_BOUND = 2**31 - 1


@lru_cache(maxsize=None)
def check_prime(p: int) -> int:
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise ValueError(f"modulus {p!r} is not prime")
    return p


@dataclass(frozen=True)
class FpScalar:
    p: int
    value: int

    def __post_init__(self):
        check_prime(self.p)
        object.__setattr__(self, "value", self.value % self.p)

    def __add__(self, other):
        return FpScalar(self.p, self.value + _scalar(other, self.p))

    def __sub__(self, other):
        return FpScalar(self.p, self.value - _scalar(other, self.p))

    def __mul__(self, other):
        return FpScalar(self.p, self.value * _scalar(other, self.p))

    def __neg__(self):
        return FpScalar(self.p, -self.value)

    def inverse(self) -> "FpScalar":
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse mod p")
        return FpScalar(self.p, pow(self.value, -1, self.p))

    def __int__(self):
        return self.value


def _scalar(x, p):
    if isinstance(x, FpScalar):
        if x.p != p:
            raise RingMismatchError(f"moduli {x.p} and {p} differ")
        return x.value
    return int(x)


def var_names(m: int) -> list[str]:
    return ["x", "y", "z"][:m] if m <= 3 else [f"x{i + 1}" for i in range(m)]


def _check_exps(e):
    for v in e:
        if v > EXP_BOUND or v < -EXP_BOUND:
            raise ExponentOverflowError(f"exponent {v} exceeds the signed 32-bit range")
    return e


class LaurentPoly:
    """Element of Z/p[x1^±1..xm^±1].

    ``terms`` maps exponent tuples to residues in 1..p-1; zero coefficients
    are never stored, so equality of term maps is equality of polynomials.
    """

    __slots__ = ("p", "m", "_terms", "_hash")

    def __init__(self, p: int, m: int, terms=None, *, _trusted=False):
        self.p = p
        self.m = m
        if _trusted:
            self._terms = terms
        else:
            check_prime(p)
            clean = {}
            for e, c in (terms or {}).items():
                e = tuple(int(v) for v in e)
                if len(e) != m:
                    raise RingMismatchError(f"exponent {e} does not have {m} entries")
                _check_exps(e)
                c = int(c) % p
                if c:
                    c = (clean.get(e, 0) + c) % p
                    if c:
                        clean[e] = c
                    else:
                        clean.pop(e, None)
            self._terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def zero(cls, p, m):
        return cls(p, m, {}, _trusted=True)

    @classmethod
    def one(cls, p, m):
        return cls.constant(p, m, 1)

    @classmethod
    def constant(cls, p, m, c):
        c = int(c) % p
        return cls(p, m, {(0,) * m: c} if c else {}, _trusted=True)

    @classmethod
    def monomial(cls, p, m, exps, c=1):
        return cls(p, m, {tuple(exps): c})

    @classmethod
    def var(cls, p, m, i, power=1):
        e = [0] * m
        e[i] = power
        return cls(p, m, {tuple(e): 1})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    is_unit = is_monomial

    def coeff(self, exps) -> int:
        return self._terms.get(tuple(exps), 0)

    def constant_term(self) -> int:
        return self._terms.get((0,) * self.m, 0)

    def _same(self, other):
        if not isinstance(other, LaurentPoly):
            return LaurentPoly.constant(self.p, self.m, _scalar(other, self.p))
        if other.p != self.p or other.m != self.m:
            raise RingMismatchError(
                f"ring mismatch: (p={self.p}, m={self.m}) vs (p={other.p}, m={other.m})"
            )
        return other

    def __eq__(self, other):
        if isinstance(other, int):
            return self == LaurentPoly.constant(self.p, self.m, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.p == other.p and self.m == other.m and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.m, frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other):
        other = self._same(other)
        p = self.p
        out = dict(self._terms)
        for e, c in other._terms.items():
            c = (out.get(e, 0) + c) % p
            if c:
                out[e] = c
            else:
                out.pop(e, None)
        return LaurentPoly(p, self.m, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return LaurentPoly(p, self.m, {e: p - c for e, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return self._same(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, FpScalar)):
            return self.scale(_scalar(other, self.p))
        other = self._same(other)
        p = self.p
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = (out.get(e, 0) + c1 * c2) % p
                if c:
                    out[e] = c
                else:
                    out.pop(e, None)
        for e in out:
            _check_exps(e)
        return LaurentPoly(p, self.m, out, _trusted=True)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have negative powers")
            (e, c), = self._terms.items()
            return LaurentPoly.monomial(self.p, self.m, [n * v for v in e], pow(c, n, self.p))
        out = LaurentPoly.one(self.p, self.m)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c: int):
        c %= self.p
        if not c:
            return LaurentPoly.zero(self.p, self.m)
        p = self.p
        return LaurentPoly(p, self.m, {e: v * c % p for e, v in self._terms.items()}, _trusted=True)

    def shift(self, exps):
        """Multiply by the monomial x^exps."""
        out = {tuple(a + b for a, b in zip(e, exps)): c for e, c in self._terms.items()}
        for e in out:
            _check_exps(e)
        return LaurentPoly(self.p, self.m, out, _trusted=True)

    def involute(self):
        return LaurentPoly(
            self.p, self.m, {tuple(-v for v in e): c for e, c in self._terms.items()}, _trusted=True
        )

    def inverse(self):
        """Inverse of a unit (nonzero scalar times a monomial)."""
        if not self.is_monomial():
            raise ZeroDivisionError(f"{self} is not a unit")
        (e, c), = self._terms.items()
        return LaurentPoly(
            self.p, self.m, {tuple(-v for v in e): pow(c, -1, self.p)}, _trusted=True
        )

    def span(self) -> int:
        """Largest spread max(e_i) - min(e_i) over the support, per direction."""
        if not self._terms:
            return 0
        cols = list(zip(*self._terms))
        return max((max(c) - min(c) for c in cols), default=0)

    def max_abs_exponent(self) -> int:
        return max((abs(v) for e in self._terms for v in e), default=0)

    # canonical text
    def sorted_terms(self):
        return sorted(self._terms.items())

    def __str__(self):
        if not self._terms:
            return "0"
        names = var_names(self.m)
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if v == 1 else f"{n}^{v}" for n, v in zip(names, e) if v
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"LaurentPoly(p={self.p}, m={self.m}, '{self}')"

    @classmethod
    def parse(cls, text: str, p: int, m: int) -> "LaurentPoly":
        """Inverse of ``str``; also accepts ``-`` and spaces anywhere."""
        names = var_names(m)
        aliases = {n: i for i, n in enumerate(names)}
        aliases.update({f"x{i + 1}": i for i in range(m)})
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial")
        if s[0] not in "+-":
            s = "+" + s
        terms: dict = {}
        pieces = re.split(r"(?<!\^)([+-])", s)[1:]
        for sign, body in zip(pieces[::2], pieces[1::2]):
            coeff = 1
            exps = [0] * m
            for factor in body.split("*"):
                mt = re.fullmatch(r"([A-Za-z]\w*)(?:\^(-?\d+))?", factor)
                if factor.isdigit():
                    coeff *= int(factor)
                elif mt and mt.group(1) in aliases:
                    exps[aliases[mt.group(1)]] += int(mt.group(2) or 1)
                else:
                    raise ValueError(f"cannot parse factor {factor!r} in {text!r}")
            if sign == "-":
                coeff = -coeff
            key = tuple(exps)
            terms[key] = terms.get(key, 0) + coeff
        return cls(p, m, terms)


class LaurentMatrix:
    """Dense rows x cols matrix over R."""

    __slots__ = ("p", "m", "rows", "cols", "entries")

    def __init__(self, p: int, m: int, entries, rows: int | None = None, cols: int | None = None):
        entries = tuple(tuple(r) for r in entries)
        self.p, self.m = p, m
        self.rows = len(entries) if rows is None else rows
        self.cols = (len(entries[0]) if entries else 0) if cols is None else cols
        if len(entries) != self.rows:
            raise ValueError("row count mismatch")
        norm = []
        for r in entries:
            if len(r) != self.cols:
                raise ValueError("ragged matrix")
            row = []
            for f in r:
                if not isinstance(f, LaurentPoly):
                    f = LaurentPoly.constant(p, m, f)
                if f.p != p or f.m != m:
                    raise RingMismatchError("matrix entries over different rings")
                row.append(f)
            norm.append(tuple(row))
        self.entries = tuple(norm)

    @classmethod
    def zeros(cls, p, m, rows, cols):
        z = LaurentPoly.zero(p, m)
        return cls(p, m, [[z] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, p, m, n):
        one, z = LaurentPoly.one(p, m), LaurentPoly.zero(p, m)
        return cls(p, m, [[one if i == j else z for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_columns(cls, p, m, columns, rows):
        columns = [list(c) for c in columns]
        if not columns:
            return cls.zeros(p, m, rows, 0)
        return cls(p, m, [[c[i] for c in columns] for i in range(rows)], rows, len(columns))

    @property
    def shape(self):
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j):
        return tuple(self.entries[i][j] for i in range(self.rows))

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def row(self, i):
        return self.entries[i]

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return (self.p, self.m, self.shape, self.entries) == (other.p, other.m, other.shape, other.entries)

    def __hash__(self):
        return hash((self.p, self.m, self.shape, self.entries))

    def _check(self, other):
        if (self.p, self.m) != (other.p, other.m):
            raise RingMismatchError("matrices over different rings")

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return LaurentMatrix(
            self.p, self.m,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
            self.rows, self.cols,
        )

    def __neg__(self):
        return LaurentMatrix(self.p, self.m, [[-a for a in r] for r in self.entries], self.rows, self.cols)

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other):
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        z = LaurentPoly.zero(self.p, self.m)
        out = []
        ocols = other.columns()
        for r in self.entries:
            row = []
            for c in ocols:
                acc = z
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return LaurentMatrix(self.p, self.m, out, self.rows, other.cols)

    def scale(self, f):
        return LaurentMatrix(self.p, self.m, [[f * a for a in r] for r in self.entries], self.rows, self.cols)

    def transpose(self):
        return LaurentMatrix(
            self.p, self.m, [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.cols, self.rows,
        )

    def dagger(self):
        """Conjugate transpose: transpose with the bar involution entrywise."""
        return LaurentMatrix(
            self.p, self.m,
            [[self.entries[i][j].involute() for i in range(self.rows)] for j in range(self.cols)],
            self.cols, self.rows,
        )

    def is_zero(self):
        return all(not f for r in self.entries for f in r)

    def hstack(self, other):
        self._check(other)
        if self.rows != other.rows:
            raise ValueError("row mismatch")
        return LaurentMatrix(
            self.p, self.m, [r1 + r2 for r1, r2 in zip(self.entries, other.entries)],
            self.rows, self.cols + other.cols,
        )

    def vstack(self, other):
        self._check(other)
        if self.cols != other.cols:
            raise ValueError("column mismatch")
        return LaurentMatrix(self.p, self.m, self.entries + other.entries, self.rows + other.rows, self.cols)

    def block(self, r0, r1, c0, c1):
        return LaurentMatrix(
            self.p, self.m, [r[c0:c1] for r in self.entries[r0:r1]], r1 - r0, c1 - c0
        )

    def max_abs_exponent(self) -> int:
        return max((f.max_abs_exponent() for r in self.entries for f in r), default=0)

    def spread(self) -> int:
        """Largest per-direction extent of a single column's support."""
        best = 0
        for j in range(self.cols):
            exps = [e for i in range(self.rows) for e in self.entries[i][j]._terms]
            if exps and self.m:
                best = max(best, max(max(c) - min(c) for c in zip(*exps)))
        return best

    def det(self) -> LaurentPoly:
        """Determinant, via a fraction-free elimination in sympy."""
        if self.rows != self.cols:
            raise ValueError("det of a non-square matrix")
        return _det(self)

    def __str__(self):
        return "[" + "; ".join(", ".join(str(f) for f in r) for r in self.entries) + "]"

    __repr__ = __str__


def _det(M: LaurentMatrix) -> LaurentPoly:
    from sympy import GF, symbols
    from sympy.polys.matrices import DomainMatrix

    p, m, n = M.p, M.m, M.rows
    if n == 0:
        return LaurentPoly.one(p, m)
    if not m:
        K = GF(p)
        dm = DomainMatrix([[K(f.constant_term()) for f in r] for r in M.entries], (n, n), K)
        return LaurentPoly.constant(p, 0, int(dm.det()))
    # shift each row to nonnegative exponents; det(M) = det(shifted) * x^sum(low)
    lowsum = [0] * m
    rows = []
    for r in M.entries:
        low = [0] * m
        for f in r:
            for e in f._terms:
                low = [min(a, b) for a, b in zip(low, e)]
        lowsum = [a + b for a, b in zip(lowsum, low)]
        rows.append([f.shift([-v for v in low]) for f in r])
    K = GF(p)[symbols(f"t0:{m}")]
    conv = lambda f: K.ring.from_dict({e: K.domain(c) for e, c in f._terms.items()}) if f else K.zero
    d = DomainMatrix([[conv(f) for f in r] for r in rows], (n, n), K).det()
    return LaurentPoly(p, m, {tuple(a + b for a, b in zip(e, lowsum)): int(c) for e, c in d.to_dict().items()})


def add(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    return f + g


def mul(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    return f * g


def involute(f: LaurentPoly) -> LaurentPoly:
    return f.involute()


def dagger(M: LaurentMatrix) -> LaurentMatrix:
    return M.dagger()


def box(lo, hi, m):
    """All integer vectors with entries in [lo, hi]."""
    return product(range(lo, hi + 1), repeat=m)
