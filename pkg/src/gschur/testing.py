"""Random instance generators shared by the test suite, the demos and ``verify``.

Spectra are drawn from ``[low, high]`` so that random instances are
well conditioned on their ranges; rank deficiency is always exact (built
from orthonormal bases), never a matter of tiny eigenvalues.
"""

from __future__ import annotations

import numpy as np

from .star_algebra import FiniteStarAlgebra, Functional


def complex_normal(rng, *shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def random_unitary(rng, n: int) -> np.ndarray:
    q, r = np.linalg.qr(complex_normal(rng, n, n))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_psd(rng, n: int, rank: int | None = None, low: float = 0.1, high: float = 2.0, basis=None) -> np.ndarray:
    """PSD matrix of exact rank ``rank`` (default ``n``).

    ``basis`` (n x r, orthonormal columns) fixes the range.
    """
    if basis is None:
        rank = n if rank is None else rank
        basis = random_unitary(rng, n)[:, :rank] if n else np.zeros((0, 0))
    rank = basis.shape[1]
    lam = rng.uniform(low, high, rank)
    m = (basis * lam) @ basis.conj().T
    return 0.5 * (m + m.conj().T)


def random_vector(rng, n: int) -> np.ndarray:
    return complex_normal(rng, n)


def range_and_null(a: np.ndarray, tol: float = 1e-10):
    w, u = np.linalg.eigh(a)
    big = w > tol * max(1.0, np.abs(w).max(initial=0.0))
    return u[:, big], u[:, ~big]


def random_completable(rng, n1: int, n2: int, rank: int | None = None):
    """``(A, B)`` with ``ran B^*`` inside ``ran A``: ``B = K A``."""
    a = random_psd(rng, n1, rank)
    b = complex_normal(rng, n2, n1) @ a
    return a, b


def random_leaky(rng, n1: int, n2: int, rank: int):
    """``(A, B)`` with rank-deficient ``A`` and ``B^*`` leaking into ``ker A``.

    Requires ``rank < n1``.
    """
    a = random_psd(rng, n1, rank)
    _, null = range_and_null(a)
    b = complex_normal(rng, n2, n1) @ a + complex_normal(rng, n2, null.shape[1]) @ null.conj().T
    return a, b


def random_lebesgue_pair(rng, n: int):
    """Random ``(A, B)`` with random ranks, ``B`` often rank-deficient."""
    rank_a = int(rng.integers(1, n + 1))
    rank_b = int(rng.integers(0, n + 1))
    return random_psd(rng, n, rank_a), random_psd(rng, n, rank_b)


def random_pardiff_pair(rng, n: int, valid: bool):
    """``(B, A)`` with ``B / A`` defined (``valid``) or not.

    Both are diagonal in a common random basis.  ``B`` is PSD with
    ``mu_i < lambda_i`` on ``ran A`` when valid; when invalid one
    eigenvalue of ``B`` equals that of ``A``, so ``ran A`` escapes
    ``ran(A - B)``.
    """
    u = random_unitary(rng, n)
    rank = int(rng.integers(1, n + 1))
    lam = np.zeros(n)
    lam[:rank] = rng.uniform(0.5, 2.0, rank)
    mu = lam * rng.uniform(0.0, 0.8, n)
    if not valid:
        i = int(rng.integers(0, rank))
        mu[i] = lam[i]
    a = (u * lam) @ u.conj().T
    b = (u * mu) @ u.conj().T
    return 0.5 * (b + b.conj().T), 0.5 * (a + a.conj().T)


def random_partial_operator(rng, n: int, k: int, rank: int | None = None):
    """``(M, V, W)`` with ``W = M V``; ``V`` is n x k of full column rank."""
    m = random_psd(rng, n, rank)
    v = complex_normal(rng, n, k)
    return m, v, m @ v


def random_non_extensible(rng, n: int, k: int):
    """``(V, W)`` with Hermitian PSD Gram ``V^* W`` but ``W`` nonzero on its kernel.

    Needs ``1 <= k < n``.  One domain vector lies in ``ker M`` and the
    values leak outside ``ran V`` along it.
    """
    m = random_psd(rng, n, n - 1)
    _, null = range_and_null(m)
    v = complex_normal(rng, n, k)
    v[:, 0] = null[:, 0]
    q, _ = np.linalg.qr(v)
    e = complex_normal(rng, n, k)
    e -= q @ (q.conj().T @ e)
    e[:, 1:] = 0
    return v, m @ v + e


def standard_algebras() -> dict[str, FiniteStarAlgebra]:
    return {
        "C": FiniteStarAlgebra.scalars(),
        "C2": FiniteStarAlgebra.diagonal(2),
        "D3": FiniteStarAlgebra.diagonal(3),
        "M2": FiniteStarAlgebra.full_matrix(2),
    }


def random_state(rng, alg: FiniteStarAlgebra, rank: int | None = None) -> Functional:
    """``a -> tr(rho a)`` for a random PSD density ``rho`` of the given rank."""
    d = alg.env_dim
    rank = int(rng.integers(0, d + 1)) if rank is None else rank
    g = complex_normal(rng, d, rank)
    return alg.trace_functional(g @ g.conj().T)
