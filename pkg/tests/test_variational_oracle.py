import math

import numpy as np
import pytest

from gschur import DimensionMismatch, InvalidInput, oracle_inf, oracle_sup
from gschur import variational_oracle as orc
from gschur.verify import FORMULAS, check_supplied, passed, run_checks

e1 = np.array([1.0, 0.0])
e2 = np.array([0.0, 1.0])
I2 = np.eye(2)


def test_sup_examples():
    for form in (1, 2):
        est = oracle_sup("complement_pair", (I2, I2), e1, form=form, seed=0)
        assert est.value == pytest.approx(1, abs=1e-12) and est.converged
        assert abs(abs(np.vdot(est.witness, e1)) - 1) < 1e-8 and abs(est.witness[1]) < 1e-8
    est = oracle_sup("pardiff", (0.5 * I2, I2), e1, seed=0)
    assert est.value == pytest.approx(1, abs=1e-12)
    assert np.allclose(est.witness, e1, atol=1e-8)
    for form in (1, 2):
        est = oracle_sup("complement_pair", (np.diag([1.0, 0]), np.diag([0, 1.0])), e2, form=form, seed=0)
        assert est.unbounded and math.isinf(est.value)


def test_inf_examples():
    est = oracle_inf("parallel_sum", I2, I2, e1, seed=0)
    assert est.value == pytest.approx(0.5, abs=1e-12)
    assert np.allclose(est.witness, -0.5 * e1, atol=1e-8)
    y = np.array([0.3, -1.2])
    est = oracle_inf("parallel_sum", I2, np.zeros((2, 2)), y, seed=0)
    assert est.value == pytest.approx(0, abs=1e-12)
    assert np.allclose(est.witness, -y, atol=1e-8)
    est = oracle_inf("parallel_sum", np.diag([1.0, 0]), np.diag([0, 1.0]), e1, seed=0)
    assert est.value == pytest.approx(0, abs=1e-12)


def test_witness_reproduces_value(rng):
    a = rng.standard_normal((3, 3))
    a = a @ a.T
    b = rng.standard_normal((2, 3))
    y = rng.standard_normal(2)
    for form in (1, 2):
        est = oracle_sup("complement_pair", (a, b), y, form=form, seed=1)
        assert orc.evaluate("complement_pair", (a, b), y, est.witness, form=form) == pytest.approx(est.value, abs=1e-8)
    est = oracle_inf("parallel_sum", a, a, rng.standard_normal(3), seed=1)
    assert est.value >= 0


def test_soundness_bounds(rng):
    # sup estimates never exceed the closed form, inf estimates never undercut it
    a = np.diag([2.0, 1.0, 0.5])
    b = np.array([[1.0, 2.0, 0.0]])
    y = np.array([1.0])
    kernel = float((b @ np.linalg.inv(a) @ b.T)[0, 0])
    for budget in (1, 3, 200):
        est = oracle_sup("complement_pair", (a, b), y, budget=budget, seed=3)
        assert est.value <= kernel + 1e-8
        est = oracle_inf("parallel_sum", a, a, np.ones(3), budget=budget, seed=3)
        assert est.value >= 0.5 * 3.5 - 1e-8


def test_input_errors():
    with pytest.raises(DimensionMismatch):
        oracle_sup("complement_pair", (I2, np.eye(3)), e1)
    with pytest.raises(InvalidInput):
        oracle_sup("nonsense", (I2, I2), e1)
    with pytest.raises(InvalidInput):
        oracle_inf("complement_pair", I2, I2, e1)


def test_random_cross_checks_pass():
    checks = run_checks(instances=15, max_dim=5, seed=11)
    assert [c.formula for c in checks] == list(FORMULAS)
    assert passed(checks)
    assert all(c.converged == c.bounded for c in checks)


def test_supplied_system_checks(rng):
    a = np.diag([1.0, 2.0, 0.0])
    checks = check_supplied(a, a, [rng.standard_normal(3) for _ in range(3)], seed=0)
    assert passed(checks) and {c.formula for c in checks} == {"complement_form1", "complement_form2", "parallel_sum_inf"}
    checks = check_supplied(np.diag([1.0, 0]), np.diag([0, 1.0]), [e2], seed=0)
    assert passed(checks) and checks[0].bounded == 0
