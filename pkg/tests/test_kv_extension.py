import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gschur import InvalidInput, NotExtensible, PartialPositiveOperator, check_extensibility, krein_von_neumann, loewner_leq
from gschur.errors import DimensionMismatch
from gschur.testing import random_non_extensible, random_partial_operator, random_psd

from helpers import close

e1 = np.array([[1.0], [0.0]])
e2 = np.array([[0.0], [1.0]])


def test_extensibility_examples(rng):
    a = random_psd(rng, 3)
    assert check_extensibility(PartialPositiveOperator(np.eye(3), a))
    v = check_extensibility(PartialPositiveOperator(e1, e2))
    assert not v and "Ax != 0" in v.reason
    assert check_extensibility(PartialPositiveOperator(e1, np.array([[1.0], [1.0]])))


def test_extension_examples(rng):
    a = random_psd(rng, 3)
    assert close(krein_von_neumann(PartialPositiveOperator(np.eye(3), a)).extension.matrix, a, 1e-10)
    assert close(krein_von_neumann(PartialPositiveOperator(e1, e1)).extension.matrix, np.diag([1, 0]))
    assert close(krein_von_neumann(PartialPositiveOperator(e1, np.array([[1.0], [1.0]]))).extension.matrix, np.ones((2, 2)))
    with pytest.raises(NotExtensible):
        krein_von_neumann(PartialPositiveOperator(e1, e2))


def test_extensibility_failure_reasons():
    # Gram not Hermitian: A e1 = e1 + i e2, A e2 = e2 with an off-diagonal mismatch
    v = np.eye(2)
    w = np.array([[1.0, 1.0], [0.0, 1.0]])
    assert "Hermitian" in check_extensibility(PartialPositiveOperator(v, w)).reason
    assert "negative" in check_extensibility(PartialPositiveOperator(e1, -e1)).reason


def test_partial_operator_validation():
    with pytest.raises(InvalidInput):
        PartialPositiveOperator(np.array([[1.0, 1.0], [0.0, 0.0]]), np.eye(2))
    with pytest.raises(DimensionMismatch):
        PartialPositiveOperator(np.eye(2), np.eye(3))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2**31))
def test_extension_and_minimality(n, seed):
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, n + 1))
    m, v, w = random_partial_operator(rng, n, k, int(rng.integers(0, n + 1)))
    kv = krein_von_neumann(PartialPositiveOperator(v, w))
    assert close(kv.extension.matrix @ v, w, 1e-9)
    assert loewner_leq(kv.extension.matrix, m)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 6), st.integers(0, 2**31))
def test_engineered_non_extensible(n, seed):
    rng = np.random.default_rng(seed)
    v, w = random_non_extensible(rng, n, int(rng.integers(1, n)))
    assert not check_extensibility(PartialPositiveOperator(v, w))
