import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import gf_rank, torus_check_matrix, torus_symplectic

from stabclass import library
from stabclass.braiding import (Geometry, TorusTooSmallError, braid_phase, braiding_form,
                                charge_basis, instantiate_torus, self_statistics, string_operator)
from stabclass.errors import PreconditionError
from stabclass.ring import LaurentPoly


def admissible(code):
    s = max(1, code.sigma.spread())
    return Geometry(s, s, 1).min_torus()


@pytest.fixture(scope="module")
def toric():
    code = library.toric2d()
    basis = charge_basis(code)
    return code, basis, instantiate_torus(code, admissible(code))


def charge(p, *coeffs):
    return tuple(LaurentPoly.constant(p, 2, c) for c in coeffs)


def oracle_syndrome(code, N, vec):
    S, n = torus_check_matrix(code.generators(), code.p, code.q, N)
    return (S.T @ (torus_symplectic(n) @ vec)) % code.p


def oracle_pairing(code, N, v, w):
    n = code.q * N * N
    return int(v @ (torus_symplectic(n) @ w)) % code.p


def test_instantiate_torus():
    inst = instantiate_torus(library.toric2d(), 4)
    H = inst.check_matrix()
    # one column per translated check, one row per Pauli coordinate
    assert H.shape == (2 * 2 * 16, 2 * 16)
    S, _ = torus_check_matrix(library.toric2d().generators(), 2, 2, 4)
    assert np.array_equal(H, S)
    n = 2 * 16
    assert not np.any(H.T @ torus_symplectic(n) @ H % 2)
    triv = instantiate_torus(library.trivial(), 5)
    Ht = triv.check_matrix()
    assert gf_rank(Ht, 2) == 25 and not Ht[:25].any()
    with pytest.raises(TorusTooSmallError):
        instantiate_torus(library.toric2d(), 2)
    with pytest.raises(TorusTooSmallError):
        instantiate_torus(library.toric2d(), 6, period=4)
    with pytest.raises(PreconditionError):
        instantiate_torus(library.toric3d(), 9)


def test_e_and_m_strings(toric):
    code, _, inst = toric
    N = inst.N
    n = code.q * N * N
    e = string_operator(inst, charge(2, 1, 0), ((3, 3), (3, 9)))
    m = string_operator(inst, charge(2, 0, 1), ((3, 3), (9, 3)))
    # e strings are Z type, m strings X type
    assert not e.vector[:n].any() and e.vector[n:].any()
    assert m.vector[:n].any() and not m.vector[n:].any()
    for s, j in ((e, 0), (m, 1)):
        syn = oracle_syndrome(code, N, s.vector)
        hits = sorted(int(i) for i in np.flatnonzero(syn))
        ends = sorted(inst.index(j, *pt) for pt in s.endpoints)
        assert hits == ends
    zero = string_operator(inst, charge(2, 0, 0), ((3, 3), (3, 9)))
    assert not zero.vector.any()


def test_braid_phases_toric(toric):
    code, _, inst = toric
    e, m, z = charge(2, 1, 0), charge(2, 0, 1), charge(2, 0, 0)
    assert braid_phase(inst, e, m) == 1
    assert braid_phase(inst, e, e) == 0
    assert braid_phase(inst, m, m) == 0
    assert braid_phase(inst, z, m) == 0
    # independent commutator count between the loop and exit operators
    from stabclass.braiding import exit_string, loop_operator
    assert oracle_pairing(code, inst.N, loop_operator(inst, e), exit_string(inst, m)) == 1


def test_self_statistics_toric(toric):
    _, _, inst = toric
    assert self_statistics(inst, charge(2, 1, 0)) == 0
    assert self_statistics(inst, charge(2, 0, 1)) == 0
    assert self_statistics(inst, charge(2, 1, 1)) == 2
    assert self_statistics(inst, charge(2, 0, 0)) == 0


def test_braiding_form_toric():
    bf = braiding_form(library.toric2d())
    assert bf.gram.tolist() == [[0, 1], [1, 0]]
    assert bf.theta == [0, 0]
    assert bf.pair_theta[(0, 1)] == 2
    assert bf.refinement_ok()


def test_braiding_form_trivial_and_stacked():
    bf = braiding_form(library.trivial())
    assert bf.gram.shape == (0, 0) and bf.theta == []
    st2 = braiding_form(library.double_toric2d())
    H = [[0, 1], [1, 0]]
    want = np.block([[np.array(H), np.zeros((2, 2), int)], [np.zeros((2, 2), int), np.array(H)]])
    # generators ordered by check: vertex1, plaquette1, vertex2, plaquette2
    assert np.array_equal(st2.gram, want)
    assert st2.refinement_ok()


def test_braiding_form_z3():
    bf = braiding_form(library.toric2d_z3())
    g = bf.gram
    assert np.array_equal(g, g.T)
    assert gf_rank(g, 3) == 2
    assert bf.theta == [0, 0]
    assert bf.refinement_ok()


def test_braiding_form_rejects():
    with pytest.raises(PreconditionError):
        braiding_form(library.toric3d())
    with pytest.raises(PreconditionError):
        braiding_form(library.vertex_only())


@pytest.fixture(scope="module")
def z3():
    code = library.toric2d_z3()
    basis = charge_basis(code)
    return code, basis, instantiate_torus(code, admissible(code))


coeffs = st.lists(st.integers(0, 2), min_size=2, max_size=2)


@settings(max_examples=15)
@given(coeffs, coeffs, coeffs)
def test_symmetry_and_bilinearity(z3, a, a2, b):
    _, basis, inst = z3
    A, A2, B = basis.combine(a), basis.combine(a2), basis.combine(b)
    AA2 = basis.combine([x + y for x, y in zip(a, a2)])
    assert braid_phase(inst, A, B) == braid_phase(inst, B, A)
    assert braid_phase(inst, AA2, B) == (braid_phase(inst, A, B) + braid_phase(inst, A2, B)) % 3


@settings(max_examples=10)
@given(coeffs, coeffs)
def test_refinement_identity_random(z3, a, b):
    _, basis, inst = z3
    A, B = basis.combine(a), basis.combine(b)
    AB = basis.combine([x + y for x, y in zip(a, b)])
    lhs = self_statistics(inst, AB) - self_statistics(inst, A) - self_statistics(inst, B)
    assert lhs % 6 == 2 * braid_phase(inst, A, B) % 6
    # odd p: theta(a) agrees with P(a, a) mod p
    assert self_statistics(inst, A) % 3 == braid_phase(inst, A, A)


@pytest.mark.parametrize("name", ["toric2d", "toric2d_z3"])
def test_stable_in_torus_size(name):
    code = library.get(name)
    basis = charge_basis(code)
    N0 = admissible(code)
    grams = []
    for N in (N0, N0 + 1):
        inst = instantiate_torus(code, N)
        grams.append([[braid_phase(inst, a, b) for b in basis.vectors] for a in basis.vectors])
        grams[-1].append([self_statistics(inst, a) for a in basis.vectors])
    assert grams[0] == grams[1]


def test_loop_geometry_gate():
    inst = instantiate_torus(library.toric2d(), 12)
    with pytest.raises(TorusTooSmallError):
        braid_phase(inst, charge(2, 1, 0), charge(2, 0, 1))


def test_doubling_then_resource_limit(monkeypatch):
    from stabclass import braiding
    from stabclass.config import Limits
    from stabclass.errors import ResourceLimitError
    seen = []
    real = braiding._evaluate

    def flaky(inst, basis, with_pairs):
        seen.append(inst.N)
        if len(seen) == 1:
            raise braiding.StringSolveError("forced")
        return real(inst, basis, with_pairs)
    monkeypatch.setattr(braiding, "_evaluate", flaky)
    bf = braiding_form(library.toric2d())
    assert seen == [seen[0], 2 * seen[0]] and bf.N == 2 * seen[0]
    assert bf.gram.tolist() == [[0, 1], [1, 0]]

    def never(inst, basis, with_pairs):
        raise braiding.StringSolveError("forced")
    monkeypatch.setattr(braiding, "_evaluate", never)
    with pytest.raises(ResourceLimitError):
        braiding_form(library.toric2d(), Limits(max_torus_doublings=1))
