"""C-symmetry predicates, weak form, defect spaces, anti-involution."""

import numpy as np
import pytest

import csymlab as cs

from conftest import random_complex


def test_entrywise_csym_is_transpose_symmetry(rng):
    c = cs.entrywise_conjugation(4)
    s = cs.random_symmetric(4, rng)
    assert cs.is_c_selfadjoint(cs.from_matrix(s), c)
    ns = s.copy()
    ns[0, 1] += 1.0
    assert not cs.is_c_selfadjoint(cs.from_matrix(ns), c)


def test_matrix_condition(rng):
    # A is C-self-adjoint iff AK symmetric, K the conjugation matrix
    for _ in range(20):
        n = int(rng.integers(1, 7))
        c = cs.random_conjugation(n, rng)
        a = cs.random_csym_matrix(n, rng, c)
        ak = a @ c.matrix
        np.testing.assert_allclose(ak, ak.T, atol=1e-10)
        assert cs.is_c_selfadjoint(cs.from_matrix(a), c)


def test_restriction_is_symmetric_not_selfadjoint(rng):
    spec = cs.random_restriction(5, seed=11)
    rel, c = spec.relation(), spec.conjugation()
    assert cs.is_c_symmetric(rel, c)
    assert not cs.is_c_selfadjoint(rel, c)


def test_weak_form_residual_tracks_predicate(rng):
    c = cs.entrywise_conjugation(3)
    sym = cs.from_matrix(cs.random_symmetric(3, rng))
    assert cs.weak_c_symmetry_residual(sym, c) <= 1e-10
    asym = cs.from_matrix(random_complex(rng, 3, 3) + np.diag([5.0, 0, 0]))
    if not cs.is_c_symmetric(asym, c):
        assert cs.weak_c_symmetry_residual(asym, c) > 1e-8


def test_adjoint_pair_relations(rng):
    spec = cs.zero_on_subspace(4)
    pair = cs.adjoint_pair(spec.relation(), spec.conjugation())
    # B = CAC and the adjoint pair inclusions
    assert pair.b.equals(pair.a.conjugated(pair.c))
    assert pair.b.contained_in(pair.a_star)
    assert pair.a.contained_in(pair.b_star)
    # conjugating the adjoint gives the adjoint of the conjugate
    assert pair.b_star.equals(pair.a_star.conjugated(pair.c))


def test_m_spaces_two_path_identity():
    # frakM first components = N(I + A*B*), both computed independently
    for spec in (cs.minimal_identity(), cs.zero_on_subspace(4), cs.random_restriction(6, seed=3)):
        pair = cs.adjoint_pair(spec.relation(), spec.conjugation())
        spaces = cs.m_spaces(pair)
        n = pair.a.ambient_dim
        first = cs.orthonormal_basis(spaces.frakM.basis[:n], ambient_dim=n)
        assert cs.subspace_equal(spaces.m_bstar, first, 1e-9)
        # frakM orthogonal to graph(A) inside graph(B*)
        if spaces.frakM.dim and pair.a.graph.dim:
            overlap = np.abs(pair.a.graph.basis.conj().T @ spaces.frakM.basis).max()
            assert overlap <= 1e-10
        total = cs.subspace_sum(pair.a.graph, spaces.frakM)
        assert cs.subspace_equal(total, pair.b_star.graph, 1e-9)


def test_m_spaces_trivial_for_selfadjoint(rng):
    c = cs.entrywise_conjugation(3)
    pair = cs.adjoint_pair(cs.from_matrix(cs.random_symmetric(3, rng)), c)
    spaces = cs.m_spaces(pair)
    assert spaces.frakM.dim == 0
    assert spaces.m_bstar.dim == 0


def test_m_spaces_requires_symmetry(rng):
    c = cs.entrywise_conjugation(2)
    bad = cs.from_matrix(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(cs.InputError):
        cs.m_spaces(cs.adjoint_pair(bad, c))


def test_graph_inner(rng):
    m = random_complex(rng, 3, 3)
    t = cs.from_matrix(m)
    f = random_complex(rng, 3)
    g = random_complex(rng, 3)
    expected = cs.inner(f, g) + cs.inner(m @ f, m @ g)
    assert cs.graph_inner(t, f, g) == pytest.approx(expected)


def test_anti_involution_square_and_invariance():
    spec = cs.zero_on_subspace(4)
    pair = cs.adjoint_pair(spec.relation(), spec.conjugation())
    s = cs.anti_involution(pair)
    frak_m = cs.m_spaces(pair).frakM
    # S^2 = -I on frakM and S frakM = frakM
    for v in frak_m.basis.T:
        np.testing.assert_allclose(s.apply(s.apply(v)), -v, atol=1e-10)
        assert frak_m.contains_vector(s.apply(v), atol=1e-9)
    # S is anti-isometric on pairs
    u, w = frak_m.basis[:, 0], frak_m.basis[:, -1]
    assert cs.inner(s.apply(u), s.apply(w)) == pytest.approx(cs.inner(w, u), abs=1e-10)


def test_domain_criterion_on_extension():
    spec = cs.minimal_identity()
    rel, c = spec.relation(), spec.conjugation()
    dp = cs.build_doubled(rel, c)
    res = cs.canonical_extension(dp)
    if res.diagnostics["is_operator"]:
        assert cs.domain_criterion(res.a_ext, rel, c)
    # the full adjoint is too large to satisfy the criterion
    assert not cs.domain_criterion(rel.adjoint(), rel, c)
