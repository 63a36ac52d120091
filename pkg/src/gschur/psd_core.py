"""Hermitian and positive semidefinite matrix primitives.

Every operator in this package is a complex square matrix acting on C^n
with the pairing ``<f, x> = sum(conj(x_i) * f_i)``.  Positive operators are
Hermitian PSD matrices; a Hermitian matrix doubles as a Hermitian
sesquilinear form ``t(x, y) = y^* M x``.

All numerical cut-offs live in :class:`TolerancePolicy`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidInput, NotPositive

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class TolerancePolicy:
    """Numerical tolerances shared by every kernel.

    Parameters
    ----------
    psd_tol : float
        Relative slack for PSD acceptance: eigenvalues down to
        ``-psd_tol * max(1, lambda_max)`` are treated as zero.
    rank_tol : float or None
        Relative rank cut-off.  ``None`` means ``64 * n * eps`` for an
        n x n operator.
    eq_tol : float
        Matrix equality and range-residual tolerance.
    lim_tol : float
        Stopping tolerance for limits of operator sequences.
    """

    psd_tol: float = 1e-9
    rank_tol: float | None = None
    eq_tol: float = 1e-8
    lim_tol: float = 1e-9

    def __post_init__(self):
        for name in ("psd_tol", "rank_tol", "eq_tol", "lim_tol"):
            value = getattr(self, name)
            if value is None and name == "rank_tol":
                continue
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value >= 0):
                raise InvalidInput(f"{name} must be a finite nonnegative number, got {value!r}")

    def rank_cutoff(self, n: int) -> float:
        if self.rank_tol is not None:
            return float(self.rank_tol)
        return 64.0 * max(n, 1) * _EPS

    def as_dict(self) -> dict:
        return {
            "psd_tol": self.psd_tol,
            "rank_tol": self.rank_tol,
            "eq_tol": self.eq_tol,
            "lim_tol": self.lim_tol,
        }


DEFAULT_POLICY = TolerancePolicy()


def hermitian(m) -> np.ndarray:
    """Return ``(m + m^*) / 2`` as a complex array, checking shape and finiteness."""
    if isinstance(m, PsdOperator):
        return m.matrix
    arr = np.array(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInput("matrix has non-finite entries")
    return 0.5 * (arr + arr.conj().T)


def as_matrix(m) -> np.ndarray:
    """Complex 2-d array view of a matrix-like (no symmetrization)."""
    if isinstance(m, PsdOperator):
        return m.matrix
    arr = np.array(m, dtype=complex)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got {arr.ndim}-d input")
    if not np.all(np.isfinite(arr)):
        raise InvalidInput("matrix has non-finite entries")
    return arr


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PsdOperator:
    """A positive operator together with its eigendecomposition.

    ``eigenvalues`` are ascending and clipped at zero; ``rank`` counts the
    eigenvalues above the relative rank cut-off fixed at construction.
    Instances are immutable; use :func:`make_psd` to build one.
    """

    matrix: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    rank: int

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def range_basis(self) -> np.ndarray:
        """Orthonormal columns spanning the numerical range."""
        return self.eigenvectors[:, self.dim - self.rank:]

    @property
    def null_basis(self) -> np.ndarray:
        return self.eigenvectors[:, : self.dim - self.rank]

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[-1]) if self.dim else 0.0

    def range_projector(self) -> np.ndarray:
        u = self.range_basis
        return u @ u.conj().T

    def truncated_eigenvalues(self) -> np.ndarray:
        """Eigenvalues with everything below the rank cut-off set to exactly zero."""
        w = self.eigenvalues.copy()
        w[: self.dim - self.rank] = 0.0
        return w

    def scaled(self, t: float) -> PsdOperator:
        """``t * self`` for ``t > 0``, keeping the numerical null space exactly null.

        Rebuilding from the truncated spectrum matters when ``t`` is huge:
        round-off eigenvalues of size 1e-16 would otherwise be blown up into
        spurious range.
        """
        if not (t > 0 and math.isfinite(t)):
            raise InvalidInput(f"scale factor must be positive and finite, got {t!r}")
        w = t * self.truncated_eigenvalues()
        u = self.eigenvectors
        m = (u * w) @ u.conj().T
        m = 0.5 * (m + m.conj().T)
        return PsdOperator(_frozen(m), _frozen(w), self.eigenvectors, self.rank)

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.matrix.copy()
        return self.matrix.astype(dtype)


def make_psd(m, pol: TolerancePolicy = DEFAULT_POLICY) -> PsdOperator:
    """Decompose a Hermitian matrix, rejecting it if it is not PSD.

    Raises
    ------
    NotPositive
        If ``lambda_min < -psd_tol * max(1, lambda_max)``.
    """
    if isinstance(m, PsdOperator):
        return m
    h = hermitian(m)
    n = h.shape[0]
    if n == 0:
        empty = np.zeros((0, 0), dtype=complex)
        return PsdOperator(_frozen(empty), _frozen(np.zeros(0)), _frozen(empty.copy()), 0)
    w, u = np.linalg.eigh(h)
    scale = max(1.0, float(w[-1]))
    if w[0] < -pol.psd_tol * scale:
        raise NotPositive(
            f"matrix is not positive semidefinite: lambda_min = {w[0]:.3e} "
            f"(allowed down to {-pol.psd_tol * scale:.3e})"
        )
    w = np.clip(w, 0.0, None)
    rank = int(np.count_nonzero(w > pol.rank_cutoff(n) * scale))
    return PsdOperator(_frozen(h), _frozen(w), _frozen(u), rank)


def is_psd(m, pol: TolerancePolicy = DEFAULT_POLICY) -> bool:
    try:
        make_psd(m, pol)
    except NotPositive:
        return False
    return True


def pseudo_inverse(a: PsdOperator) -> np.ndarray:
    """Moore-Penrose inverse, inverting only the eigenvalues above the rank cut-off."""
    a = make_psd(a)
    u = a.range_basis
    w = a.eigenvalues[a.dim - a.rank:]
    p = (u / w) @ u.conj().T
    return 0.5 * (p + p.conj().T)


def sqrt_psd(a: PsdOperator) -> PsdOperator:
    a = make_psd(a)
    w = np.sqrt(a.eigenvalues)
    u = a.eigenvectors
    s = (u * w) @ u.conj().T
    s = 0.5 * (s + s.conj().T)
    return PsdOperator(_frozen(s), _frozen(w), u, a.rank)


def generalized_inverse_factor(m, pol: TolerancePolicy = DEFAULT_POLICY, weights=None) -> np.ndarray:
    """``F`` such that ``G = F F^*`` is a {1}-inverse of the PSD matrix ``m``.

    Without ``weights`` this is the Moore-Penrose inverse.  With positive
    ``weights`` it is ``D (D M D)^+ D`` for ``D = diag(weights)^{-1/2}``.
    For ``X`` with ``ran X`` inside ``ran M`` the product ``X^* G X`` is the
    same for every {1}-inverse ``G``, so the diagonal scaling changes only
    the rounding: it keeps graded matrices such as ``A + n B`` (huge ``n``)
    accurate when ``weights`` follows the grading.
    """
    h = hermitian(m)
    if weights is None:
        s = np.ones(h.shape[0])
    else:
        weights = np.asarray(weights, dtype=float)
        if weights.shape != (h.shape[0],) or np.any(weights <= 0):
            raise InvalidInput("weights must be a positive vector matching the matrix dimension")
        s = 1.0 / np.sqrt(weights)
    scaled = make_psd(s[:, None] * h * s[None, :], pol)
    u = scaled.range_basis
    w = scaled.eigenvalues[scaled.dim - scaled.rank:]
    return s[:, None] * (u / np.sqrt(w))


def generalized_inverse(m, pol: TolerancePolicy = DEFAULT_POLICY, weights=None) -> np.ndarray:
    f = generalized_inverse_factor(m, pol, weights)
    return f @ f.conj().T


def range_inclusion(x, a: PsdOperator, pol: TolerancePolicy = DEFAULT_POLICY) -> bool:
    """Whether every column of ``x`` lies in the numerical range of ``a``.

    The residual ``||(I - P) x||_2`` is compared against
    ``eq_tol * max(1, ||x||_2)``.
    """
    a = make_psd(a, pol)
    x = as_matrix(x)
    if x.shape[0] != a.dim:
        raise DimensionMismatch(f"x has {x.shape[0]} rows, operator has dim {a.dim}")
    if x.size == 0:
        return True
    u = a.range_basis
    resid = x - u @ (u.conj().T @ x)
    return bool(np.linalg.norm(resid, 2) <= pol.eq_tol * max(1.0, np.linalg.norm(x, 2)))


def loewner_leq(a, b, pol: TolerancePolicy = DEFAULT_POLICY) -> bool:
    """``a <= b`` in the Loewner order: ``b - a`` PSD up to ``psd_tol``.

    The slack is relative to ``max(1, ||a||, ||b||)`` so that a tiny
    difference of two large operators is judged at the operands' scale.
    """
    ha, hb = hermitian(a), hermitian(b)
    if ha.shape != hb.shape:
        raise DimensionMismatch(f"shapes {ha.shape} and {hb.shape} differ")
    if ha.size == 0:
        return True
    scale = max(1.0, np.linalg.norm(ha, 2), np.linalg.norm(hb, 2))
    lam_min = np.linalg.eigvalsh(hb - ha)[0]
    return bool(lam_min >= -pol.psd_tol * scale)


def numerical_rank(x, pol: TolerancePolicy = DEFAULT_POLICY) -> int:
    """Rank of a rectangular matrix with the policy's relative cut-off on singular values."""
    x = as_matrix(x)
    if x.size == 0:
        return 0
    sv = np.linalg.svd(x, compute_uv=False)
    return int(np.count_nonzero(sv > pol.rank_cutoff(max(x.shape)) * max(1.0, sv[0])))
