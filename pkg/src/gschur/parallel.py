"""Parallel sum and parallel difference of positive operators.

``A:B = A - (A+B)_A`` and ``B / A = (A-B)_A - A``, where ``X_Y`` is the
complement of the system ``[[X, Y], [Y, *]]``.
"""

from __future__ import annotations

import numpy as np

from .completion import complement_matrix
from .errors import DimensionMismatch, NotDefined, NotPositive
from .kv_extension import Verdict
from .psd_core import (
    DEFAULT_POLICY,
    PsdOperator,
    TolerancePolicy,
    hermitian,
    make_psd,
    range_inclusion,
)


def _same_dim(a: PsdOperator, b) -> None:
    if a.dim != np.shape(b)[0]:
        raise DimensionMismatch(f"operands have dimensions {a.dim} and {np.shape(b)[0]}")


def parallel_sum(a, b, pol: TolerancePolicy = DEFAULT_POLICY) -> PsdOperator:
    """``A:B`` computed as ``A - (A+B)_A``.

    The system ``[[A+B, A], [A, *]]`` is always completable, so no range
    test is made.  The work is done in the eigenbasis of ``B``, where
    ``A + B`` is graded by the eigenvalues of ``B``; scaling the
    generalized inverse by that grading keeps ``A:(nB)`` accurate for
    ``n`` up to 2**60.
    """
    a = make_psd(a, pol)
    b = make_psd(b, pol)
    _same_dim(a, b.matrix)
    if a.dim == 0:
        return a
    u = b.eigenvectors
    a_rot = u.conj().T @ a.matrix @ u
    a_rot = 0.5 * (a_rot + a_rot.conj().T)
    lam = b.truncated_eigenvalues()
    total = a_rot + np.diag(lam)
    floor = float(np.max(np.real(np.diag(a_rot))))
    if floor <= 0:
        return make_psd(np.zeros_like(a.matrix), pol)
    short = complement_matrix(total, a_rot, pol, weights=floor + lam)
    result = u @ (a_rot - short) @ u.conj().T
    return make_psd(result, pol)


def weighted_parallel_sum(a, b, n: float, pol: TolerancePolicy = DEFAULT_POLICY) -> PsdOperator:
    """``A:(nB)`` for real ``n > 0``."""
    b = make_psd(b, pol)
    return parallel_sum(a, b.scaled(float(n)), pol)


def pardiff_exists(b, a, pol: TolerancePolicy = DEFAULT_POLICY) -> Verdict:
    """Whether ``B / A`` is defined, i.e. ``(A-B)_A`` exists.

    ``b`` may be any Hermitian matrix; ``a`` must be PSD.
    """
    a = make_psd(a, pol)
    hb = hermitian(b)
    _same_dim(a, hb)
    try:
        diff = make_psd(a.matrix - hb, pol)
    except NotPositive:
        return Verdict(False, "A - B is not positive semidefinite")
    if not range_inclusion(a.matrix, diff, pol):
        return Verdict(False, "ran A is not contained in ran(A - B); the supremum is infinite")
    return Verdict(True)


def parallel_difference(b, a, pol: TolerancePolicy = DEFAULT_POLICY) -> np.ndarray:
    """``B / A = (A-B)_A - A``, returned as a Hermitian matrix.

    The result is PSD whenever ``B`` is; ``B`` itself only needs to be
    Hermitian (``C_B = B + (B - C) / B`` uses an indefinite ``B - C``).

    Raises
    ------
    NotDefined
        If ``(A-B)_A`` does not exist.
    """
    verdict = pardiff_exists(b, a, pol)
    if not verdict:
        raise NotDefined(f"parallel difference B / A is undefined: {verdict.reason}")
    a = make_psd(a, pol)
    diff = make_psd(a.matrix - hermitian(b), pol)
    out = complement_matrix(diff, a.matrix, pol) - a.matrix
    return 0.5 * (out + out.conj().T)
