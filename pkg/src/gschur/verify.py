"""Cross-check of closed-form kernels against the variational oracle.

Each check draws random instances, evaluates the kernel's quadratic form
at a random vector ``y`` and compares it with the oracle's sup/inf.  When
the kernel's own predicate says the quantity is infinite (no completion,
undefined parallel difference, non-extensible partial operator) the
oracle must report ``+inf``, and vice versa.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import variational_oracle as orc
from .completion import IncompleteBlockSystem, complement, is_completable
from .kv_extension import PartialPositiveOperator, check_extensibility, krein_von_neumann
from .parallel import parallel_difference, parallel_sum, pardiff_exists
from .psd_core import DEFAULT_POLICY, TolerancePolicy, make_psd
from .testing import (
    random_completable,
    random_leaky,
    random_non_extensible,
    random_pardiff_pair,
    random_partial_operator,
    random_psd,
    random_vector,
)

FORMULAS = (
    "complement_form1",
    "complement_form2",
    "complement_selfadj",
    "parallel_sum_inf",
    "pardiff_sup",
    "kv_form1",
    "kv_form2",
)


@dataclass
class FormulaCheck:
    formula: str
    instances: int = 0
    converged: int = 0
    bounded: int = 0
    max_deviation: float = 0.0
    verdict_mismatches: int = 0
    worst_case: dict = field(default_factory=dict)

    def record(self, kernel: float, est: orc.OracleEstimate, finite: bool) -> None:
        self.instances += 1
        if est.unbounded == finite:
            self.verdict_mismatches += 1
            return
        if not finite:
            return
        self.bounded += 1
        if not est.converged:
            return
        self.converged += 1
        dev = abs(kernel - est.value)
        if dev > self.max_deviation:
            self.max_deviation = dev
            self.worst_case = {"kernel": kernel, "oracle": est.value}

    def as_dict(self) -> dict:
        return {
            "formula": self.formula,
            "instances": self.instances,
            "bounded": self.bounded,
            "converged": self.converged,
            "maxDeviation": self.max_deviation,
            "verdictMismatches": self.verdict_mismatches,
        }


def _form(m, y) -> float:
    return float(np.real(np.vdot(y, m @ y)))


def one_instance(formula: str, rng, dim: int, pol: TolerancePolicy = DEFAULT_POLICY, **oracle_kw):
    """Draw one instance for ``formula``; return ``(kernel, estimate, finite)``.

    ``kernel`` is ``nan`` when the closed form is infinite.
    """
    seed = int(rng.integers(2**32))
    kw = dict(seed=seed, pol=pol, **oracle_kw)
    n = dim
    if formula in ("complement_form1", "complement_form2"):
        n2 = int(rng.integers(1, n + 1))
        if n > 1 and rng.random() < 0.3:
            a, b = random_leaky(rng, n, n2, int(rng.integers(0, n)))
        else:
            a, b = random_completable(rng, n, n2, int(rng.integers(1, n + 1)))
        y = random_vector(rng, n2)
        s = IncompleteBlockSystem.from_arrays(a, b, pol)
        finite = is_completable(s, pol)
        kernel = _form(complement(s, pol).matrix, y) if finite else math.nan
        est = orc.oracle_sup(orc.COMPLEMENT_PAIR, (a, b), y, form=int(formula[-1]), **kw)
        return kernel, est, finite
    if formula == "complement_selfadj":
        a = random_psd(rng, n, int(rng.integers(1, n + 1)))
        if rng.random() < 0.3:
            b = random_psd(rng, n, int(rng.integers(1, n + 1)))
        else:
            k = random_psd(rng, n)
            b = a @ k @ a
        y = random_vector(rng, n)
        s = IncompleteBlockSystem.from_arrays(a, b, pol)
        finite = is_completable(s, pol)
        kernel = _form(complement(s, pol).matrix, y) if finite else math.nan
        est = orc.oracle_sup(orc.COMPLEMENT_SELFADJ, (a, b), y, **kw)
        return kernel, est, finite
    if formula == "parallel_sum_inf":
        a = random_psd(rng, n, int(rng.integers(0, n + 1)))
        b = random_psd(rng, n, int(rng.integers(0, n + 1)))
        y = random_vector(rng, n)
        kernel = _form(parallel_sum(a, b, pol).matrix, y)
        est = orc.oracle_inf(orc.PARALLEL_SUM, a, b, y, **kw)
        return kernel, est, True
    if formula == "pardiff_sup":
        b, a = random_pardiff_pair(rng, n, valid=rng.random() < 0.7)
        y = random_vector(rng, n)
        finite = bool(pardiff_exists(b, a, pol))
        kernel = _form(parallel_difference(b, a, pol), y) if finite else math.nan
        est = orc.oracle_sup(orc.PARDIFF, (b, a), y, **kw)
        return kernel, est, finite
    if formula in ("kv_form1", "kv_form2"):
        k = int(rng.integers(1, n)) if n > 1 else 1
        if n > 1 and rng.random() < 0.3:
            v, w = random_non_extensible(rng, n, k)
        else:
            _, v, w = random_partial_operator(rng, n, k, int(rng.integers(0, n + 1)))
        p = PartialPositiveOperator(v, w)
        y = random_vector(rng, n)
        finite = bool(check_extensibility(p, pol))
        kernel = _form(krein_von_neumann(p, pol).extension, y) if finite else math.nan
        est = orc.oracle_sup(orc.KV_EXTENSION, (v, w), y, form=int(formula[-1]), **kw)
        return kernel, est, finite
    raise ValueError(f"unknown formula {formula!r}")


def run_checks(
    formulas=FORMULAS,
    instances: int = 20,
    max_dim: int = 5,
    seed: int = 0,
    pol: TolerancePolicy = DEFAULT_POLICY,
    **oracle_kw,
) -> list[FormulaCheck]:
    """Run ``instances`` random cross-checks for each formula."""
    rng = np.random.default_rng(seed)
    out = []
    for formula in formulas:
        check = FormulaCheck(formula)
        for _ in range(instances):
            dim = int(rng.integers(1, max_dim + 1))
            kernel, est, finite = one_instance(formula, rng, dim, pol, **oracle_kw)
            check.record(kernel, est, finite)
        out.append(check)
    return out


def check_supplied(a, b, probes, pol: TolerancePolicy = DEFAULT_POLICY, seed: int = 0, **oracle_kw) -> list[FormulaCheck]:
    """Oracle checks of the complement of a user-supplied system ``(A, B)``.

    Both complement forms are checked at every probe; when ``B`` is
    square the parallel-sum inf (``A:B`` for PSD ``B``) is checked too.
    """
    s = IncompleteBlockSystem.from_arrays(a, b, pol)
    finite = is_completable(s, pol)
    a_b = complement(s, pol).matrix if finite else None
    rng = np.random.default_rng(seed)
    checks = [FormulaCheck("complement_form1"), FormulaCheck("complement_form2")]
    for y in probes:
        kernel = _form(a_b, y) if finite else math.nan
        for form, check in ((1, checks[0]), (2, checks[1])):
            est = orc.oracle_sup(
                orc.COMPLEMENT_PAIR, (a, b), y, form=form, seed=int(rng.integers(2**32)), pol=pol, **oracle_kw
            )
            check.record(kernel, est, finite)
    bm = np.asarray(b, dtype=complex)
    if bm.shape == s.a.matrix.shape and np.allclose(bm, bm.conj().T):
        try:
            bp = make_psd(bm, pol)
        except Exception:
            bp = None
        if bp is not None:
            ps = FormulaCheck("parallel_sum_inf")
            value = parallel_sum(s.a, bp, pol).matrix
            for y in probes:
                est = orc.oracle_inf(orc.PARALLEL_SUM, s.a.matrix, bp.matrix, y, seed=int(rng.integers(2**32)), pol=pol, **oracle_kw)
                ps.record(_form(value, y), est, True)
            checks.append(ps)
    return checks


def passed(checks, tol: float = 1e-7) -> bool:
    return all(c.verdict_mismatches == 0 and c.max_deviation <= tol for c in checks)


__all__ = ["FORMULAS", "FormulaCheck", "one_instance", "run_checks", "check_supplied", "passed"]
