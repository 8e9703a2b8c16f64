"""Block powers of the doubled operator, norm identities, quasi-analytic sums."""

import numpy as np
import pytest

import csymlab as cs

from conftest import random_complex


def brute_power(a, c, n, order):
    k = c.matrix
    b = k @ np.conj(a) @ np.conj(k)
    z = np.zeros_like(a)
    frak = np.block([[z, a], [b, z]])
    return np.linalg.matrix_power(frak, order)


def test_block_power_identity_random(rng):
    for _ in range(20):
        n = int(rng.integers(1, 5))
        c = cs.random_conjugation(n, rng)
        a = random_complex(rng, n, n)
        for order in range(1, 6):
            rep = cs.doubled_power_blocks(a, c, order)
            assert rep.checks.all_pass, (order, rep.checks.to_list())


def test_even_powers_are_block_diagonal(rng):
    c = cs.entrywise_conjugation(3)
    a = random_complex(rng, 3, 3)
    direct = brute_power(a, c, 3, 4)
    np.testing.assert_allclose(direct[:3, 3:], 0.0, atol=1e-10)
    np.testing.assert_allclose(direct[3:, :3], 0.0, atol=1e-10)
    # diagonal block is the alternating word (AC)^4 as a linear map
    ac = cs.SemilinearOperator.from_antilinear(a @ c.matrix)
    np.testing.assert_allclose(direct[:3, :3], ac.power(4).matrix, atol=1e-9)


def test_odd_powers_are_off_diagonal(rng):
    c = cs.flip_conjugation(2)
    a = random_complex(rng, 2, 2)
    direct = brute_power(a, c, 2, 3)
    np.testing.assert_allclose(direct[:2, :2], 0.0, atol=1e-10)
    np.testing.assert_allclose(direct[2:, 2:], 0.0, atol=1e-10)


def test_power_identity_scalar_case():
    # A = 2I, entrywise C: frak^2 = 4I exactly
    a = 2.0 * np.eye(2)
    c = cs.entrywise_conjugation(2)
    np.testing.assert_allclose(brute_power(a, c, 2, 2), 4.0 * np.eye(4), atol=1e-14)
    rep = cs.doubled_power_blocks(a, c, 2)
    assert rep.checks.all_pass


def test_norm_identities(rng):
    for _ in range(20):
        n = int(rng.integers(1, 5))
        c = cs.random_conjugation(n, rng)
        a = random_complex(rng, n, n)
        x = random_complex(rng, n)
        y = random_complex(rng, n)
        for order in range(1, 4):
            dev_even, dev_odd = cs.power_norm_identities(a, c, x, y, order)
            scale = (1.0 + np.linalg.norm(a, 2)) ** (2 * order + 1)
            cap = 1e-9 * scale * max(1.0, np.linalg.norm(x) ** 2 + np.linalg.norm(y) ** 2)
            assert dev_even <= cap and dev_odd <= cap


def test_norm_identity_explicit(rng):
    # ||frak^m (x, y)||^2 = ||(AC)^m x||^2 + ||(AC)^m C y||^2, checked by hand
    n = 3
    c = cs.random_conjugation(n, rng)
    a = random_complex(rng, n, n)
    x, y = random_complex(rng, n), random_complex(rng, n)
    m = 2
    frak_m = brute_power(a, c, n, m)
    lhs = np.linalg.norm(frak_m @ np.concatenate([x, y])) ** 2
    ac = cs.SemilinearOperator.from_antilinear(a @ c.matrix)
    rhs = (
        np.linalg.norm(ac.power(m).apply(x)) ** 2
        + np.linalg.norm(ac.power(m).apply(c.apply(y))) ** 2
    )
    assert lhs == pytest.approx(rhs, rel=1e-9)


def test_power_report_assembles(rng):
    for _ in range(5):
        n = int(rng.integers(1, 5))
        c = cs.random_conjugation(n, rng)
        a = random_complex(rng, n, n)
        x, y = random_complex(rng, n), random_complex(rng, n)
        for order in range(1, 6):
            rep = cs.power_report(a, c, x, y, order)
            assert rep.checks.all_pass, (order, rep.checks.to_list())
            assert rep.n == order
            assert len(rep.partial_sums) > 0


def test_qa_terms_identity():
    # A = I: ||(AC)^k x|| = 1 for unit x, terms all 1, sums grow linearly;
    # diverged stays False because it flags annihilation, not a finite-budget
    # guess about the series
    c = cs.entrywise_conjugation(2)
    qa = cs.qa_partial_sums(np.eye(2), c, np.array([1.0, 0.0]), 6)
    np.testing.assert_allclose(qa.terms, 1.0)
    np.testing.assert_allclose(qa.partial_sums, np.arange(1, 7, dtype=float))
    assert not qa.diverged
    assert qa.growth_bound == pytest.approx(1.0)


def test_qa_scalar_growth():
    # A = 2I: terms are 1/2 each, growth bound is max_k (2^k / k!)^(1/k) = 2
    c = cs.entrywise_conjugation(3)
    qa = cs.qa_partial_sums(2.0 * np.eye(3), c, np.ones(3) / np.sqrt(3), 8)
    np.testing.assert_allclose(qa.terms, 0.5)
    assert qa.growth_bound == pytest.approx(2.0)


def test_qa_nilpotent_annihilation():
    # (AC) e2 = e1, (AC)^2 e2 = 0: the series hits an infinite term
    a = np.array([[0.0, 1.0], [0.0, 0.0]])
    c = cs.entrywise_conjugation(2)
    qa = cs.qa_partial_sums(a, c, np.array([0.0, 1.0]), 5)
    assert qa.terms[0] == pytest.approx(1.0)
    assert np.isinf(qa.terms[1])
    assert qa.diverged


def test_qa_rejects_zero_vector():
    with pytest.raises(cs.InputError):
        cs.qa_partial_sums(np.eye(2), cs.entrywise_conjugation(2), np.zeros(2), 4)


def test_power_rejects_bad_order(rng):
    c = cs.entrywise_conjugation(2)
    a = random_complex(rng, 2, 2)
    with pytest.raises(cs.InputError):
        cs.doubled_power_blocks(a, c, 0)
