"""Lebesgue-type decomposition ``A = A_r + A_s`` relative to ``B``.

``A_r`` is ``B``-absolutely continuous (``ker B`` inside ``ker A_r``) and
``A_s`` is ``B``-singular (``ran A_s`` meets ``ran B`` only in 0).  The
regular part is obtained three ways:

1. the limit of ``A:(2^k B)``;
2. ``(A:B) / B``;
3. ``(B - B:A)_B - B``.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field

import numpy as np

from .completion import IncompleteBlockSystem, complement
from .errors import DimensionMismatch, RouteDisagreement
from .parallel import parallel_difference, parallel_sum, weighted_parallel_sum
from .psd_core import DEFAULT_POLICY, PsdOperator, TolerancePolicy, make_psd, range_inclusion

MAX_DOUBLINGS = 60
ROUTE_SLACK = 100.0


def _pair(a, b, pol):
    a = make_psd(a, pol)
    b = make_psd(b, pol)
    if a.dim != b.dim:
        raise DimensionMismatch(f"operands have dimensions {a.dim} and {b.dim}")
    return a, b


def absolutely_continuous(a, b, pol: TolerancePolicy = DEFAULT_POLICY) -> bool:
    """``A << B``: ``ker B`` is contained in ``ker A``, i.e. ``ran A`` in ``ran B``."""
    a, b = _pair(a, b, pol)
    return range_inclusion(a.matrix, b, pol)


def mutually_singular(a, b, pol: TolerancePolicy = DEFAULT_POLICY) -> bool:
    """``A _|_ B``: the ranges intersect only in 0.

    Decided by the rank of the stacked orthonormal range bases: their
    smallest singular value is ``sqrt(2) sin(theta/2)`` for the smallest
    principal angle ``theta`` and is compared against ``sqrt(eq_tol)``.
    """
    a, b = _pair(a, b, pol)
    if a.rank == 0 or b.rank == 0:
        return True
    if a.rank + b.rank > a.dim:
        return False
    stacked = np.hstack([a.range_basis, b.range_basis])
    smallest = np.linalg.svd(stacked, compute_uv=False)[-1]
    return bool(smallest > math.sqrt(pol.eq_tol))


def certificate_policy(pol: TolerancePolicy, dim: int) -> TolerancePolicy:
    """Policy for judging a split whose regular part is only known to ``lim_tol``.

    The truncated limit leaves eigenvalues of order ``lim_tol`` in the
    singular part; the rank cut-off is raised above that level.
    """
    cutoff = max(pol.rank_cutoff(dim), ROUTE_SLACK * pol.lim_tol)
    return dataclasses.replace(pol, rank_tol=cutoff)


@dataclass(frozen=True, eq=False)
class LebesgueSplit:
    regular: PsdOperator
    singular: PsdOperator
    routes: dict[str, np.ndarray] = field(default_factory=dict)
    deviations: dict[str, float] = field(default_factory=dict)
    iterations: int = 0
    converged: bool = True
    regular_is_continuous: bool = True
    singular_is_singular: bool = True


def limit_route(a, b, pol: TolerancePolicy = DEFAULT_POLICY):
    """Iterate ``A:(2^k B)`` until successive iterates are ``lim_tol``-close.

    Returns ``(value, doublings, converged)``.
    """
    a, b = _pair(a, b, pol)
    threshold = pol.lim_tol * max(1.0, np.linalg.norm(a.matrix))
    prev = parallel_sum(a, b, pol).matrix
    for k in range(1, MAX_DOUBLINGS + 1):
        cur = weighted_parallel_sum(a, b, 2.0**k, pol).matrix
        if np.linalg.norm(cur - prev) <= threshold:
            return cur, k, True
        prev = cur
    return prev, MAX_DOUBLINGS, False


def lebesgue_decompose(a, b, pol: TolerancePolicy = DEFAULT_POLICY) -> LebesgueSplit:
    """Lebesgue decomposition of ``a`` with respect to ``b``.

    Raises
    ------
    RouteDisagreement
        If the three evaluations of the regular part differ by more than
        ``100 * lim_tol * max(1, ||A||_F)``.
    """
    a, b = _pair(a, b, pol)
    limit, k, converged = limit_route(a, b, pol)
    a_par_b = parallel_sum(a, b, pol)
    via_difference = parallel_difference(a_par_b.matrix, b, pol)
    b_par_a = parallel_sum(b, a, pol)
    via_complement = complement(
        IncompleteBlockSystem(make_psd(b.matrix - b_par_a.matrix, pol), b.matrix), pol
    ).matrix - b.matrix

    routes = {"limit": limit, "parallel_difference": via_difference, "complement": via_complement}
    deviations = {
        "limit_vs_parallel_difference": float(np.linalg.norm(limit - via_difference)),
        "limit_vs_complement": float(np.linalg.norm(limit - via_complement)),
        "parallel_difference_vs_complement": float(np.linalg.norm(via_difference - via_complement)),
    }
    threshold = ROUTE_SLACK * pol.lim_tol * max(1.0, np.linalg.norm(a.matrix))
    worst = max(deviations.values())
    if worst > threshold:
        raise RouteDisagreement(
            f"regular-part routes disagree by {worst:.3e} (threshold {threshold:.3e}); "
            f"limit converged={converged} after {k} doublings"
        )

    regular = make_psd(limit, pol)
    singular = make_psd(a.matrix - limit, pol)
    cert = certificate_policy(pol, a.dim)
    return LebesgueSplit(
        regular=regular,
        singular=singular,
        routes=routes,
        deviations=deviations,
        iterations=k,
        converged=converged,
        regular_is_continuous=absolutely_continuous(regular.matrix, b.matrix, cert),
        singular_is_singular=mutually_singular(singular.matrix, b.matrix, cert),
    )


def identity_relative_decompose(a, pol: TolerancePolicy = DEFAULT_POLICY) -> LebesgueSplit:
    """Decomposition relative to the identity weight.

    In finite dimension the identity has full range, so every positive
    operator is absolutely continuous with respect to it: the result is
    always ``(A, 0)``.  Kept for API symmetry with the rigged-space setting.
    """
    a = make_psd(a, pol)
    return lebesgue_decompose(a, np.eye(a.dim), pol)
