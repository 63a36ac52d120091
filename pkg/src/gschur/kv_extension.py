"""Krein-von Neumann extension of a positive operator given on a subspace.

The operator is specified by a basis ``V`` (n x k, full column rank) of its
domain and the images ``W = A V``.  The Gram matrix ``G = V^* W`` carries
the inner product ``<Ax, Ax'> := <Ax, x'>`` of the auxiliary Hilbert space,
and the smallest positive everywhere-defined extension is ``W G^+ W^*``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .completion import complement_matrix
from .errors import DimensionMismatch, InvalidInput, NotExtensible, NotPositive
from .psd_core import (
    DEFAULT_POLICY,
    PsdOperator,
    TolerancePolicy,
    as_matrix,
    make_psd,
    numerical_rank,
)


@dataclass(frozen=True)
class Verdict:
    """Boolean outcome with a human-readable reason."""

    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, eq=False)
class PartialPositiveOperator:
    domain_basis: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        v = as_matrix(self.domain_basis)
        w = as_matrix(self.values)
        if v.shape != w.shape:
            raise DimensionMismatch(f"domain basis {v.shape} and values {w.shape} differ in shape")
        if v.shape[1] > v.shape[0]:
            raise InvalidInput("more domain vectors than the ambient dimension")
        if numerical_rank(v) != v.shape[1]:
            raise InvalidInput("domain basis is not linearly independent")
        v.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "domain_basis", v)
        object.__setattr__(self, "values", w)

    @property
    def ambient_dim(self) -> int:
        return self.domain_basis.shape[0]

    @property
    def gram(self) -> np.ndarray:
        """``G[i, j] = <A v_j, v_i>``."""
        return self.domain_basis.conj().T @ self.values


@dataclass(frozen=True, eq=False)
class KvExtension:
    extension: PsdOperator
    gram: PsdOperator
    domain: PartialPositiveOperator


def check_extensibility(p: PartialPositiveOperator, pol: TolerancePolicy = DEFAULT_POLICY) -> Verdict:
    g = p.gram
    w = p.values
    scale = max(1.0, np.linalg.norm(g, 2))
    if np.linalg.norm(g - g.conj().T, 2) > pol.eq_tol * scale:
        return Verdict(False, "<Ax, x> is not real on the domain (Gram matrix is not Hermitian)")
    try:
        gp = make_psd(g, pol)
    except NotPositive:
        return Verdict(False, "A is not positive on its domain (Gram matrix has a negative eigenvalue)")
    # vectors of zero H_A-seminorm must be mapped to zero
    leak = w @ gp.null_basis
    if leak.size and np.linalg.norm(leak, 2) > pol.eq_tol * max(1.0, np.linalg.norm(w, 2)):
        return Verdict(False, "some domain vector has <Ax, x> = 0 but Ax != 0")
    return Verdict(True)


def krein_von_neumann(p: PartialPositiveOperator, pol: TolerancePolicy = DEFAULT_POLICY) -> KvExtension:
    """The smallest positive extension ``A_N = W G^+ W^*``.

    Raises
    ------
    NotExtensible
        If no positive extension exists.
    """
    verdict = check_extensibility(p, pol)
    if not verdict:
        raise NotExtensible(verdict.reason)
    g = make_psd(p.gram, pol)
    ext = complement_matrix(g, p.values, pol)
    return KvExtension(make_psd(ext, pol), g, p)

