"""Groebner bases for submodules of R^r, R = Z/p[x1^±1..xm^±1].

R is presented as S / (u_i v_i - 1) with S = Z/p[u1..um, v1..vm]; a Laurent
monomial x^λ corresponds to u^{λ+} v^{λ-}.  Every module computation
implicitly contains the relation rows (u_i v_i - 1) e_j.  Elements are kept
reduced modulo those rows (no monomial holds both u_i and v_i), so they
can be stored with signed exponent vectors; the S-pair of an element with
a relation row is then the element multiplied by x_i^{-1} or x_i.

Term order: position over term, lower position more significant; inside a
position degree-reverse-lexicographic on (u1..um, v1..vm).
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import _kernels
from .config import get_limits
from .errors import ResourceLimitError
from .ring import LaurentMatrix, LaurentPoly, var_names

# A module vector in sparse form: {(pos, exps): coeff}, coeff in 1..p-1.
Vec = dict


@lru_cache(maxsize=1 << 20)
def term_key(term):
    """Sort key of (pos, exps); larger key means larger term."""
    pos, e = term
    a = [v if v > 0 else 0 for v in e]
    b = [-v if v < 0 else 0 for v in e]
    ab = a + b
    return (-pos, sum(ab)) + tuple(-v for v in reversed(ab))


def s_degree(e) -> int:
    return sum(abs(v) for v in e)


def _divides(lead, e) -> bool:
    for li, ei in zip(lead, e):
        if (li > 0 and ei < li) or (li < 0 and ei > li):
            return False
    return True


def _monic(f: Vec, p) -> Vec:
    lt = max(f, key=term_key)
    inv = pow(f[lt], -1, p)
    if inv == 1:
        return f
    return {k: c * inv % p for k, c in f.items()}


def _shift(f: Vec, t, c, p) -> Vec:
    return {(pos, tuple(a + b for a, b in zip(e, t))): v * c % p for (pos, e), v in f.items()}


def _sub_into(acc: Vec, f: Vec, p):
    for k, c in f.items():
        v = (acc.get(k, 0) - c) % p
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


def to_vec(v) -> Vec:
    out = {}
    for pos, f in enumerate(v):
        for e, c in f.items():
            out[(pos, e)] = c
    return out


def from_vec(f: Vec, p, m, rank):
    comps = [dict() for _ in range(rank)]
    for (pos, e), c in f.items():
        comps[pos][e] = c
    return tuple(LaurentPoly(p, m, d, _trusted=True) for d in comps)


class _Index:
    """Leading data of a monic basis, grouped by position, for reduction."""

    def __init__(self):
        self.by_pos: dict = {}

    def add(self, f: Vec):
        lt = max(f, key=term_key)
        tail = [(pos, e, c) for (pos, e), c in f.items() if (pos, e) != lt]
        self.by_pos.setdefault(lt[0], []).append((lt[1], tail))

    def reduce(self, f: Vec, p) -> Vec:
        return _kernels.reduce_vector(dict(f), self.by_pos, term_key, p)


def buchberger(gens, p: int, m: int, limits=None) -> list:
    """Reduced Groebner basis (relation rows left implicit) of the span of ``gens``."""
    limits = limits or get_limits()
    G: list = []
    leads: list = []
    index = _Index()
    heap: list = []
    counter = 0
    processed = 0

    def push_pairs(t):
        nonlocal counter
        pos_t, lt = leads[t]
        a_t = [max(v, 0) for v in lt]
        b_t = [max(-v, 0) for v in lt]
        for i in range(t):
            pos_i, li = leads[i]
            if pos_i != pos_t:
                continue
            A = [max(x, max(v, 0)) for x, v in zip(a_t, li)]
            B = [max(x, max(-v, 0)) for x, v in zip(b_t, li)]
            deg = sum(A) + sum(B)
            heapq.heappush(heap, (deg, counter, i, t, A, B))
            counter += 1
        for k, v in enumerate(lt):
            if v:
                heapq.heappush(heap, (s_degree(lt) + 1, counter, t, -1 - k, None, None))
                counter += 1

    def insert(f):
        f = _monic(f, p)
        lt = max(f, key=term_key)
        if s_degree(lt[1]) > limits.max_degree:
            raise ResourceLimitError(
                f"Groebner basis element of degree {s_degree(lt[1])} exceeds max_degree={limits.max_degree}"
            )
        G.append(f)
        leads.append(lt)
        index.add(f)
        push_pairs(len(G) - 1)

    for g in sorted((dict(g) for g in gens if g), key=lambda f: (len(f), max(map(term_key, f)))):
        r = index.reduce(g, p)
        if r:
            insert(r)

    while heap:
        deg, _, i, j, A, B = heapq.heappop(heap)
        processed += 1
        if processed > limits.max_spairs:
            raise ResourceLimitError(f"more than max_spairs={limits.max_spairs} S-pairs")
        if j < 0:
            k = -1 - j
            t = [0] * m
            t[k] = -1 if leads[i][1][k] > 0 else 1
            s = _shift(G[i], t, 1, p)
        else:
            if _chain_skip(i, j, A, B, leads):
                continue
            li, lj = leads[i][1], leads[j][1]
            ti = [(x - max(v, 0)) - (y - max(-v, 0)) for x, y, v in zip(A, B, li)]
            tj = [(x - max(v, 0)) - (y - max(-v, 0)) for x, y, v in zip(A, B, lj)]
            s = _shift(G[i], ti, 1, p)
            _sub_into(s, _shift(G[j], tj, 1, p), p)
        if not s:
            continue
        r = index.reduce(s, p)
        if r:
            insert(r)

    return _interreduce(G, leads, p)


def _chain_skip(i, j, A, B, leads) -> bool:
    # Gebauer-Moeller style: some earlier lead divides lcm(i, j) strictly
    pos = leads[i][0]
    for k, (pk, lk) in enumerate(leads):
        if k in (i, j) or pk != pos or k > j:
            continue
        ak = [max(v, 0) for v in lk]
        bk = [max(-v, 0) for v in lk]
        if all(x <= y for x, y in zip(ak, A)) and all(x <= y for x, y in zip(bk, B)):
            if _lcm(leads[i][1], lk) != (A, B) and _lcm(leads[j][1], lk) != (A, B):
                return True
    return False


def _lcm(l1, l2):
    return (
        [max(max(a, 0), max(b, 0)) for a, b in zip(l1, l2)],
        [max(max(-a, 0), max(-b, 0)) for a, b in zip(l1, l2)],
    )


def _interreduce(G, leads, p) -> list:
    keep = []
    for i, (pos, li) in enumerate(leads):
        dominated = False
        for j, (pj, lj) in enumerate(leads):
            if j == i or pj != pos or not _divides(lj, li):
                continue
            if lj != li or j < i:
                dominated = True
                break
        if not dominated:
            keep.append(i)
    out = []
    for i in keep:
        others = _Index()
        for j in keep:
            if j != i:
                others.add(G[j])
        lt = leads[i]
        head = {lt: G[i][lt]}
        tail = {k: c for k, c in G[i].items() if k != lt}
        r = others.reduce(tail, p) if tail else {}
        r.update(head)
        out.append(_monic(r, p))
    out.sort(key=lambda f: max(map(term_key, f)))
    return out


@dataclass(frozen=True)
class PolyVector:
    """A vector over S = Z/p[u1..um, v1..vm]; exps have length 2m."""

    p: int
    m: int
    rank: int
    terms: dict = field(hash=False)

    def __str__(self):
        names = [f"u{i + 1}" for i in range(self.m)] + [f"v{i + 1}" for i in range(self.m)]
        comps = []
        for pos in range(self.rank):
            # descending lex in (u1..um, v1..vm), constants last
            items = sorted(((e, c) for (q, e), c in self.terms.items() if q == pos), reverse=True)
            if not items:
                comps.append("0")
                continue
            parts = []
            for e, c in items:
                mono = "*".join(n if v == 1 else f"{n}^{v}" for n, v in zip(names, e) if v)
                parts.append(mono if mono and c == 1 else (f"{c}*{mono}" if mono else str(c)))
            comps.append(" + ".join(parts))
        return comps[0] if self.rank == 1 else "(" + ", ".join(comps) + ")"


def laurent_to_poly(v) -> PolyVector:
    """x^λ -> u^{λ+} v^{λ-}, componentwise."""
    if isinstance(v, LaurentPoly):
        v = (v,)
    v = tuple(v)
    p, m = v[0].p, v[0].m
    terms = {}
    for pos, f in enumerate(v):
        for e, c in f.items():
            ab = tuple(max(x, 0) for x in e) + tuple(max(-x, 0) for x in e)
            terms[(pos, ab)] = c
    return PolyVector(p, m, len(v), terms)


def poly_to_laurent(w: PolyVector):
    """Substitute v_i = u_i^{-1}."""
    m = w.m
    comps = [LaurentPoly.zero(w.p, m) for _ in range(w.rank)]
    for (pos, ab), c in w.terms.items():
        e = tuple(a - b for a, b in zip(ab[:m], ab[m:]))
        comps[pos] = comps[pos] + LaurentPoly(w.p, m, {e: c})
    return tuple(comps)


def relation_rows(p, m, rank) -> list:
    """The implicit generators (u_i v_i - 1) e_j as S-vectors."""
    rows = []
    for j in range(rank):
        for i in range(m):
            ab = [0] * (2 * m)
            ab[i] = ab[m + i] = 1
            rows.append(PolyVector(p, m, rank, {(j, tuple(ab)): 1, (j, (0,) * (2 * m)): p - 1}))
    return rows


@dataclass(frozen=True)
class ModulePresentation:
    """Submodule of R^rank generated by ``gens`` (each a tuple of LaurentPoly);
    its cokernel R^rank / <gens> is the module being presented."""

    p: int
    m: int
    rank: int
    gens: tuple

    @classmethod
    def from_columns(cls, M: LaurentMatrix):
        return cls(M.p, M.m, M.rows, tuple(M.columns()))

    def matrix(self) -> LaurentMatrix:
        return LaurentMatrix.from_columns(self.p, self.m, self.gens, self.rank)

    def relation_rows(self):
        return relation_rows(self.p, self.m, self.rank)

    def is_zero_submodule(self):
        return all(not f for g in self.gens for f in g)


class GroebnerBasis:
    """Reduced Groebner basis of a submodule of R^rank (relation rows implicit)."""

    def __init__(self, p, m, rank, elements):
        self.p, self.m, self.rank = p, m, rank
        self.elements = tuple(elements)
        self._index = _Index()
        for f in self.elements:
            self._index.add(f)
        self.leads = [max(f, key=term_key) for f in self.elements]

    def vectors(self):
        return [from_vec(f, self.p, self.m, self.rank) for f in self.elements]

    def reduce(self, f: Vec) -> Vec:
        return self._index.reduce(f, self.p)

    def normal_form(self, v):
        if isinstance(v, PolyVector):
            return laurent_to_poly(self.normal_form(poly_to_laurent(v)))
        if isinstance(v, LaurentPoly):
            v = (v,)
        return from_vec(self.reduce(to_vec(v)), self.p, self.m, self.rank)

    def contains(self, v) -> bool:
        if isinstance(v, LaurentPoly):
            v = (v,)
        return not self.reduce(to_vec(v))

    def is_whole_module(self) -> bool:
        return all(any(l == (pos, (0,) * self.m) for l in self.leads) for pos in range(self.rank))

    # monomial-ideal data of the leading module
    def _lead_monomials(self, pos):
        out = []
        for q, e in self.leads:
            if q == pos:
                out.append(tuple(max(v, 0) for v in e) + tuple(max(-v, 0) for v in e))
        for i in range(self.m):
            ab = [0] * (2 * self.m)
            ab[i] = ab[self.m + i] = 1
            out.append(tuple(ab))
        return out

    def krull_dim(self) -> int:
        """Dimension of the cokernel; -1 for the zero module."""
        n = 2 * self.m
        best = -1
        for pos in range(self.rank):
            mons = self._lead_monomials(pos)
            if any(not any(a) for a in mons):
                continue
            supports = [frozenset(i for i, v in enumerate(a) if v) for a in mons]
            d = 0
            for size in range(n, -1, -1):
                if size <= d:
                    break
                for U in combinations(range(n), size):
                    Us = set(U)
                    if not any(s <= Us for s in supports):
                        d = size
                        break
            best = max(best, d)
        return best

    def standard_monomials(self, limit=1_000_000):
        """Finite list of standard (pos, exps), or None if infinite."""
        if self.krull_dim() > 0:
            return None
        out = []
        m = self.m
        for pos in range(self.rank):
            leads = [e for q, e in self.leads if q == pos]

            def standard(e):
                return not any(_divides(l, e) for l in leads)

            origin = (0,) * m
            if not standard(origin):
                continue
            seen = {origin}
            frontier = [origin]
            while frontier:
                nxt = []
                for e in frontier:
                    for i in range(m):
                        for step in (1, -1):
                            if e[i] * step < 0:
                                continue
                            f = list(e)
                            f[i] += step
                            f = tuple(f)
                            if f not in seen and standard(f):
                                seen.add(f)
                                nxt.append(f)
                if len(seen) > limit:
                    raise ResourceLimitError("standard monomial enumeration exceeded its limit")
                frontier = nxt
            out.extend((pos, e) for e in seen)
        out.sort(key=term_key)
        return out

    def fp_dimension(self):
        """Z/p-dimension of the cokernel, or None when it is infinite."""
        std = self.standard_monomials()
        return None if std is None else len(std)

    def multiplication_matrix(self, i: int, power: int = 1) -> np.ndarray:
        """Matrix of x_i^power on the standard-monomial basis (finite modules only)."""
        std = self.standard_monomials()
        if std is None:
            raise ValueError("module is not finite-dimensional")
        where = {t: k for k, t in enumerate(std)}
        M = np.zeros((len(std), len(std)), dtype=np.int64)
        for col, (pos, e) in enumerate(std):
            f = list(e)
            f[i] += power
            r = self.reduce({(pos, tuple(f)): 1})
            for t, c in r.items():
                M[where[t], col] = c
        return M

    def s_pairs_reduce_to_zero(self) -> bool:
        """Buchberger's criterion, including pairs with the relation rows."""
        G, leads, p, m = self.elements, self.leads, self.p, self.m
        for i, (pos, li) in enumerate(leads):
            for k, v in enumerate(li):
                if v:
                    t = [0] * m
                    t[k] = -1 if v > 0 else 1
                    if self.reduce(_shift(G[i], t, 1, p)):
                        return False
            for j in range(i):
                if leads[j][0] != pos:
                    continue
                lj = leads[j][1]
                A, B = _lcm(li, lj)
                ti = [(x - max(v, 0)) - (y - max(-v, 0)) for x, y, v in zip(A, B, li)]
                tj = [(x - max(v, 0)) - (y - max(-v, 0)) for x, y, v in zip(A, B, lj)]
                s = _shift(G[i], ti, 1, p)
                _sub_into(s, _shift(G[j], tj, 1, p), p)
                if s and self.reduce(s):
                    return False
        return True

    def is_autoreduced(self) -> bool:
        for i, f in enumerate(self.elements):
            for j, (pos, lj) in enumerate(self.leads):
                if i == j:
                    continue
                if any(q == pos and _divides(lj, e) for (q, e) in f):
                    return False
        return True

    def to_text(self) -> str:
        lines = []
        for v in self.vectors():
            lines.append("(" + ", ".join(str(f) for f in v) + ")")
        return "\n".join(lines)


def groebner(pres: ModulePresentation, limits=None) -> GroebnerBasis:
    els = buchberger([to_vec(g) for g in pres.gens], pres.p, pres.m, limits)
    return GroebnerBasis(pres.p, pres.m, pres.rank, els)


def normal_form(v, gb: GroebnerBasis):
    return gb.normal_form(v)


def membership(v, pres: ModulePresentation, limits=None) -> bool:
    return groebner(pres, limits).contains(v)


def syzygies(pres: ModulePresentation, limits=None) -> ModulePresentation:
    """Generators of {c in R^s : sum c_j g_j = 0}, s = len(gens).

    Computed by elimination: a basis of <(g_j, e_j)> in R^{rank+s} under
    position-over-term with the first ``rank`` positions dominant; the
    elements with zero head part are exactly the syzygy module.
    """
    p, m, r = pres.p, pres.m, pres.rank
    s = len(pres.gens)
    graph = []
    for j, g in enumerate(pres.gens):
        f = to_vec(g)
        f[(r + j, (0,) * m)] = 1
        graph.append(f)
    els = buchberger(graph, p, m, limits)
    out = []
    for f in els:
        lt = max(f, key=term_key)
        if lt[0] >= r:
            out.append({(pos - r, e): c for (pos, e), c in f.items()})
    gens = tuple(from_vec(f, p, m, s) for f in out)
    return ModulePresentation(p, m, s, gens)


def kernel(M: LaurentMatrix, limits=None, minimal=True) -> ModulePresentation:
    """Generators of ker(M : R^cols -> R^rows)."""
    syz = syzygies(ModulePresentation.from_columns(M), limits)
    return minimize(syz, limits) if minimal else syz


def _normalize_unit(v):
    """Scale by a unit so that coefficients start at 1 and exponents at 0."""
    exps = [e for f in v for e in f._terms]
    if not exps:
        return v
    low = [min(c) for c in zip(*exps)] if exps[0] else []
    f = to_vec(v)
    lt = max(f, key=term_key)
    inv = pow(f[lt], -1, v[0].p)
    return tuple(g.shift([-x for x in low]).scale(inv) for g in v)


def minimize(pres: ModulePresentation, limits=None) -> ModulePresentation:
    """Drop generators lying in the span of the others (greedy, largest first)."""
    gens = []
    seen = set()
    for g in pres.gens:
        if all(not f for f in g):
            continue
        g = _normalize_unit(g)
        if g not in seen:
            seen.add(g)
            gens.append(g)
    order = sorted(range(len(gens)), key=lambda i: (-sum(len(f) for f in gens[i]), -i))
    alive = set(range(len(gens)))
    for i in order:
        rest = [gens[j] for j in sorted(alive) if j != i]
        if not rest:
            continue
        gb = groebner(ModulePresentation(pres.p, pres.m, pres.rank, tuple(rest)), limits)
        if gb.contains(gens[i]):
            alive.discard(i)
    kept = tuple(gens[j] for j in sorted(alive))
    return ModulePresentation(pres.p, pres.m, pres.rank, kept)


def krull_dim(pres: ModulePresentation, limits=None) -> int:
    return groebner(pres, limits).krull_dim()


def fp_dimension(pres: ModulePresentation, limits=None):
    return groebner(pres, limits).fp_dimension()


def variable_names(m):
    return var_names(m)
