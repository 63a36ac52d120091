"""Positive completion of the incomplete block system ``[[A, B^*], [B, *]]``.

``A`` is a PSD n1 x n1 matrix and ``B`` an n2 x n1 matrix.  The system
admits a PSD completion exactly when ``ran B^*`` lies in ``ran A``; the
smallest completion (the complement ``A_B``) is ``B A^+ B^*``, and for any
other completion ``C`` the Schur complement is ``C - A_B``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BlockNotPositive, DimensionMismatch, NotCompletable
from .psd_core import (
    DEFAULT_POLICY,
    PsdOperator,
    TolerancePolicy,
    as_matrix,
    generalized_inverse_factor,
    hermitian,
    is_psd,
    make_psd,
    range_inclusion,
)


@dataclass(frozen=True, eq=False)
class IncompleteBlockSystem:
    """The pair ``(A, B)`` of the system ``[[A, B^*], [B, *]]``."""

    a: PsdOperator
    b: np.ndarray

    def __post_init__(self):
        b = as_matrix(self.b)
        if b.shape[1] != self.a.dim:
            raise DimensionMismatch(
                f"B must have {self.a.dim} columns to act on the domain of A, got {b.shape}"
            )
        b.setflags(write=False)
        object.__setattr__(self, "b", b)

    @classmethod
    def from_arrays(cls, a, b, pol: TolerancePolicy = DEFAULT_POLICY) -> IncompleteBlockSystem:
        return cls(make_psd(a, pol), b)

    @property
    def n1(self) -> int:
        return self.a.dim

    @property
    def n2(self) -> int:
        return self.b.shape[0]


@dataclass(frozen=True, eq=False)
class CompletionReport:
    completable: bool
    complement: PsdOperator | None = None
    best_constants: list[tuple[np.ndarray, float]] = field(default_factory=list)


def is_completable(s: IncompleteBlockSystem, pol: TolerancePolicy = DEFAULT_POLICY) -> bool:
    return range_inclusion(s.b.conj().T, s.a, pol)


def complement_matrix(a, b, pol: TolerancePolicy = DEFAULT_POLICY, weights=None) -> np.ndarray:
    """``B A^- B^*`` without the completability check.

    Callers must know that ``ran B^*`` lies in ``ran A``.  The result is
    assembled as ``X X^*`` and is PSD by construction.  ``weights`` is
    forwarded to :func:`generalized_inverse_factor`.
    """
    a = make_psd(a, pol)
    b = as_matrix(b)
    if a.dim == 0 or b.shape[0] == 0:
        return np.zeros((b.shape[0], b.shape[0]), dtype=complex)
    x = b @ generalized_inverse_factor(a.matrix, pol, weights)
    c = x @ x.conj().T
    return 0.5 * (c + c.conj().T)


def complement(s: IncompleteBlockSystem, pol: TolerancePolicy = DEFAULT_POLICY) -> PsdOperator:
    """The smallest ``C >= 0`` making ``[[A, B^*], [B, C]]`` positive.

    Raises
    ------
    NotCompletable
        If ``ran B^*`` is not contained in ``ran A``.
    """
    if not is_completable(s, pol):
        raise NotCompletable("ran B^* is not contained in ran A; no positive completion exists")
    return make_psd(complement_matrix(s.a, s.b, pol), pol)


def assemble_block(a, b, c) -> np.ndarray:
    """``[[A, B^*], [B, C]]`` as one Hermitian matrix."""
    a = hermitian(a)
    c = hermitian(c)
    b = as_matrix(b)
    if b.shape != (c.shape[0], a.shape[0]):
        raise DimensionMismatch(
            f"B has shape {b.shape}; expected {(c.shape[0], a.shape[0])} for A {a.shape} and C {c.shape}"
        )
    return np.block([[a, b.conj().T], [b, c]])


def check_block_psd(a, b, c, pol: TolerancePolicy = DEFAULT_POLICY) -> bool:
    return is_psd(assemble_block(a, b, c), pol)


def schur_complement(
    s: IncompleteBlockSystem, c, pol: TolerancePolicy = DEFAULT_POLICY
) -> np.ndarray:
    """``C - A_B`` for a completion ``C`` of the system.

    Raises
    ------
    NotCompletable
        If the system has no positive completion.
    BlockNotPositive
        If ``[[A, B^*], [B, C]]`` itself is not PSD.
    """
    c = hermitian(c)
    if c.shape[0] != s.n2:
        raise DimensionMismatch(f"C must be {s.n2} x {s.n2}, got {c.shape}")
    a_b = complement(s, pol)
    if not check_block_psd(s.a, s.b, c, pol):
        raise BlockNotPositive("[[A, B^*], [B, C]] is not positive semidefinite")
    return c - a_b.matrix


def completion_report(
    s: IncompleteBlockSystem, probes=(), pol: TolerancePolicy = DEFAULT_POLICY
) -> CompletionReport:
    """Completability verdict, the complement, and the least constants ``M_y``.

    For a probe ``y`` the least ``M`` with ``|<Bx, y>|^2 <= M <Ax, x>`` for
    all ``x`` is ``<A_B y, y>``.
    """
    if not is_completable(s, pol):
        return CompletionReport(False)
    a_b = complement(s, pol)
    constants = []
    for y in probes:
        y = np.asarray(y, dtype=complex).reshape(-1)
        if y.shape[0] != s.n2:
            raise DimensionMismatch(f"probe has length {y.shape[0]}, expected {s.n2}")
        constants.append((y, float(np.real(y.conj() @ a_b.matrix @ y))))
    return CompletionReport(True, a_b, constants)
