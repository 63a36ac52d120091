import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gschur import (
    DimensionMismatch,
    InvalidInput,
    NotPositive,
    TolerancePolicy,
    is_psd,
    loewner_leq,
    make_psd,
    pseudo_inverse,
    range_inclusion,
    sqrt_psd,
)
from gschur.psd_core import generalized_inverse, hermitian
from gschur.testing import random_psd

from helpers import close

I2 = np.eye(2)


def test_make_psd_examples():
    p = make_psd(np.eye(2))
    assert close(p.eigenvalues, [1, 1]) and p.rank == 2
    with pytest.raises(NotPositive):
        make_psd([[1, 2], [2, 1]])
    assert make_psd(np.zeros((3, 3))).rank == 0


def test_make_psd_symmetrizes_and_clamps():
    m = np.array([[1.0, 1.0 + 1e-13], [1.0, 1.0]])
    p = make_psd(m)
    assert close(p.matrix, p.matrix.conj().T, 0)
    assert np.all(p.eigenvalues >= 0)
    assert p.rank == 1


def test_make_psd_rejects_bad_input():
    with pytest.raises(DimensionMismatch):
        make_psd(np.ones((2, 3)))
    with pytest.raises(InvalidInput):
        make_psd([[np.nan, 0], [0, 1]])


def test_make_psd_empty():
    p = make_psd(np.zeros((0, 0)))
    assert p.dim == 0 and p.rank == 0


def test_tolerance_policy_validation():
    with pytest.raises(InvalidInput):
        TolerancePolicy(psd_tol=-1)
    with pytest.raises(InvalidInput):
        TolerancePolicy(eq_tol=float("inf"))
    pol = TolerancePolicy(rank_tol=1e-6)
    assert pol.rank_cutoff(5) == 1e-6
    assert TolerancePolicy().rank_cutoff(4) == pytest.approx(64 * 4 * np.finfo(float).eps)


def test_pseudo_inverse_examples():
    assert close(pseudo_inverse(np.diag([2.0, 0.0])), np.diag([0.5, 0]))
    assert close(pseudo_inverse(np.eye(3)), np.eye(3))
    ones = np.ones((2, 2))
    assert close(pseudo_inverse(ones), 0.25 * ones)


def test_sqrt_examples():
    assert close(sqrt_psd(np.diag([4.0, 9.0])).matrix, np.diag([2, 3]))
    assert close(sqrt_psd(I2).matrix, I2)
    m = np.array([[2.0, 1.0], [1.0, 2.0]])
    s = sqrt_psd(m).matrix
    assert close(s @ s, m) and is_psd(s)


def test_range_inclusion_examples():
    e1 = np.array([[1.0], [0.0]])
    assert range_inclusion(e1 @ e1.T, make_psd(I2))
    assert not range_inclusion(np.diag([0.0, 1.0]), make_psd(np.diag([1.0, 0.0])))
    assert range_inclusion(np.array([[1.0], [1.0]]), make_psd(np.ones((2, 2))))
    with pytest.raises(DimensionMismatch):
        range_inclusion(np.ones((3, 1)), make_psd(I2))


def test_loewner_examples():
    assert loewner_leq(np.zeros((2, 2)), I2)
    assert loewner_leq(np.diag([1.0, 0.0]), I2)
    assert not loewner_leq(np.diag([2.0, 0.0]), I2)
    with pytest.raises(DimensionMismatch):
        loewner_leq(I2, np.eye(3))


def test_weighted_generalized_inverse_is_a_one_inverse(rng):
    a = random_psd(rng, 5, 3)
    g = generalized_inverse(a, weights=rng.uniform(0.5, 3.0, 5))
    assert close(a @ g @ a, a, 1e-10)


def test_hermitian_accepts_real_input():
    h = hermitian([[1, 2], [0, 1]])
    assert h.dtype == complex and close(h, [[1, 1], [1, 1]])


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.integers(0, 8), st.integers(0, 2**31))
def test_penrose_identities(n, r, seed):
    rng = np.random.default_rng(seed)
    a = random_psd(rng, n, min(r, n))
    p = pseudo_inverse(a)
    tol = 1e-8
    assert close(a @ p @ a, a, tol)
    assert close(p @ a @ p, p, tol)
    assert close((a @ p).conj().T, a @ p, tol)
    assert close((p @ a).conj().T, p @ a, tol)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.integers(0, 8), st.integers(0, 2**31))
def test_sqrt_properties(n, r, seed):
    rng = np.random.default_rng(seed)
    a = random_psd(rng, n, min(r, n))
    s = sqrt_psd(a).matrix
    assert close(s @ s, a, 1e-8)
    assert close(s @ a, a @ s, 1e-8)
    x = rng.standard_normal((n, 2)) + 1j * rng.standard_normal((n, 2))
    for cand in (x, a @ x):
        assert range_inclusion(cand, make_psd(a)) == range_inclusion(cand, sqrt_psd(a))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2**31))
def test_loewner_reflexive_transitive(n, seed):
    rng = np.random.default_rng(seed)
    a = random_psd(rng, n)
    b = a + random_psd(rng, n, int(rng.integers(0, n + 1)))
    c = b + random_psd(rng, n, int(rng.integers(0, n + 1)))
    assert loewner_leq(a, a)
    assert loewner_leq(a, b) and loewner_leq(b, c) and loewner_leq(a, c)
