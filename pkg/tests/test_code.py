import pytest
from conftest import polys
from hypothesis import given
from hypothesis import strategies as st
from oracles import dense_membership, torus_counts

from stabclass import library
from stabclass.code import (PauliCode, excess_map, hyperbolic_form, in_column_span, is_isotropic,
                            is_lagrangian, omega_pairing, unimodular_check)
from stabclass.errors import RingMismatchError
from stabclass.groebner import kernel
from stabclass.ring import LaurentMatrix, LaurentPoly


def unit_vec(p, m, n, i, f=None):
    v = [LaurentPoly.zero(p, m)] * n
    v[i] = f if f is not None else LaurentPoly.one(p, m)
    return v


def test_omega_pairing_examples():
    p, m, q = 3, 1, 2
    W = hyperbolic_form(p, m, q)
    e1, eq1 = unit_vec(p, m, 4, 0), unit_vec(p, m, 4, q)
    assert omega_pairing(e1, eq1, W) == LaurentPoly.one(p, m)
    assert omega_pairing(e1, e1, W).is_zero()
    x = LaurentPoly.var(p, m, 0)
    assert omega_pairing(unit_vec(p, m, 4, 0, x), eq1, W) == x.involute()
    with pytest.raises(RingMismatchError):
        omega_pairing(e1[:3], eq1, W)


@given(st.data())
def test_omega_sesquilinear_and_skew(data):
    p, m, q = data.draw(st.sampled_from([2, 3, 5])), data.draw(st.integers(1, 2)), data.draw(st.integers(1, 2))
    W = hyperbolic_form(p, m, q)
    a = [data.draw(polys(p, m, 2, 2)) for _ in range(2 * q)]
    b = [data.draw(polys(p, m, 2, 2)) for _ in range(2 * q)]
    r = data.draw(polys(p, m, 2, 2))
    assert omega_pairing([r * f for f in a], b, W) == r.involute() * omega_pairing(a, b, W)
    assert omega_pairing(a, [r * f for f in b], W) == r * omega_pairing(a, b, W)
    assert omega_pairing(a, b, W) == -omega_pairing(b, a, W).involute()


def test_unimodular_examples():
    assert unimodular_check(hyperbolic_form(2, 2, 2))
    x = LaurentPoly.var(2, 1, 0)
    one, zero = LaurentPoly.one(2, 1), LaurentPoly.zero(2, 1)
    assert not unimodular_check(LaurentMatrix(2, 1, [[one + x, zero], [zero, one]]))
    assert unimodular_check(LaurentMatrix.identity(2, 1, 2).scale(x))


def test_isotropy_examples():
    assert is_isotropic(library.toric2d())
    p, m, q = 2, 2, 1
    xz = PauliCode.from_generators(p, m, q, [unit_vec(p, m, 2, 0), unit_vec(p, m, 2, 1)])
    assert not is_isotropic(xz)
    assert not is_lagrangian(xz)
    assert is_isotropic(PauliCode.from_generators(p, m, q, []))


def test_excess_map_examples():
    t = library.toric2d()
    assert (excess_map(t) @ t.sigma).is_zero()
    assert excess_map(PauliCode.from_generators(2, 2, 3, [])).shape == (0, 6)
    triv = library.trivial(m=1, q=2, p=3)
    d = excess_map(triv)
    # a Z-check pairs with the X-component of the same qudit: row j reads -e_j
    for j in range(2):
        for c in range(4):
            want = LaurentPoly.constant(3, 1, -1) if c == j else LaurentPoly.zero(3, 1)
            assert d[j, c] == want


def test_lagrangian_examples():
    assert is_lagrangian(library.toric2d())
    assert is_lagrangian(library.trivial(m=2, q=3, p=5))
    v = library.vertex_only()
    assert is_isotropic(v) and not is_lagrangian(v)
    plaquette = library.toric2d().generators()[1]
    ker = kernel(excess_map(v))
    assert in_column_span([plaquette], ker.matrix()) == [True]
    assert in_column_span([plaquette], v.sigma) == [False]
    assert not dense_membership(plaquette, v.generators(), 2, 2, 4)


@pytest.mark.parametrize("name", ["toric2d", "toric2d_z3", "double_toric2d"])
def test_lagrangian_matches_torus_counts(name):
    # on the N x N torus dim L^perp - rank L stays bounded (the logical
    # qudits) for a Lagrangian code, and grows with N otherwise
    c = library.get(name)
    gaps = set()
    for N in (3, 4, 5):
        r, perp, iso = torus_counts(c.generators(), c.p, c.q, N)
        assert iso
        gaps.add(perp - r)
    assert len(gaps) == 1


def test_non_lagrangian_torus_gap_grows():
    c = library.vertex_only()
    gaps = [torus_counts(c.generators(), c.p, c.q, N) for N in (3, 4, 5)]
    assert gaps[0][1] - gaps[0][0] < gaps[1][1] - gaps[1][0] < gaps[2][1] - gaps[2][0]


@pytest.mark.parametrize("name", ["toric2d", "toric2d_z3", "toric3d", "double_toric2d"])
def test_lagrangian_both_inclusions(name):
    c = library.get(name)
    d = excess_map(c)
    assert (d @ c.sigma).is_zero()
    ker = kernel(d, minimal=False)
    assert all(in_column_span(ker.gens, c.sigma))


@given(st.data())
def test_lagrangian_invariant_under_column_operations(data):
    c = data.draw(st.sampled_from([library.toric2d(), library.toric2d_z3(), library.vertex_only()]))
    p, m = c.p, c.m
    cols = [list(col) for col in c.generators()]
    for _ in range(data.draw(st.integers(1, 4))):
        i = data.draw(st.integers(0, len(cols) - 1))
        op = data.draw(st.sampled_from(["add", "unit", "dup"]))
        if op == "add" and len(cols) > 1:
            j = data.draw(st.integers(0, len(cols) - 1).filter(lambda j: j != i))
            r = data.draw(polys(p, m, 2, 1))
            cols[j] = [a + r * b for a, b in zip(cols[j], cols[i])]
        elif op == "unit":
            e = tuple(data.draw(st.integers(-2, 2)) for _ in range(m))
            u = LaurentPoly(p, m, {e: data.draw(st.integers(1, p - 1))})
            cols[i] = [u * a for a in cols[i]]
        else:
            r = data.draw(polys(p, m, 2, 1))
            cols.append([r * a for a in cols[i]])
    d = PauliCode.from_generators(p, m, c.q, cols)
    assert is_lagrangian(d) == is_lagrangian(c)
