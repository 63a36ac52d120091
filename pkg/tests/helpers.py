"""Independent reference computations used only by the tests."""

import numpy as np


def close(x, y, tol=1e-10):
    return np.allclose(np.asarray(x), np.asarray(y), atol=tol, rtol=0)


def min_eig(m):
    m = np.asarray(m)
    return float(np.linalg.eigvalsh(0.5 * (m + m.conj().T))[0]) if m.size else 0.0


def opnorm(m):
    m = np.asarray(m)
    return float(np.linalg.norm(m, 2)) if m.size else 0.0


def shortcut_parallel_sum(a, b):
    """Classical ``A (A+B)^+ B``, an independent check of ``A - (A+B)_A``."""
    p = a @ np.linalg.pinv(a + b, rcond=1e-12, hermitian=True) @ b
    return 0.5 * (p + p.conj().T)


def shorted_onto_range(a, b, tol=1e-10):
    """Generalized Schur complement of ``A`` onto ``ran B``.

    In a basis whose leading vectors span ``ran B``:
    ``[[A11 - A12 A22^+ A21, 0], [0, 0]]``.
    """
    w, u = np.linalg.eigh(b)
    keep = w > tol * max(1.0, np.abs(w).max(initial=0.0))
    q = np.hstack([u[:, keep], u[:, ~keep]])
    r = int(keep.sum())
    ar = q.conj().T @ a @ q
    a11, a12, a21, a22 = ar[:r, :r], ar[:r, r:], ar[r:, :r], ar[r:, r:]
    out = np.zeros_like(ar)
    out[:r, :r] = a11 - a12 @ np.linalg.pinv(a22, rcond=1e-12, hermitian=True) @ a21
    res = q @ out @ q.conj().T
    return 0.5 * (res + res.conj().T)


def literal_absolutely_continuous(a, b, rng, samples=20, n_big=1e6):
    """Sequence definition of ``A << B`` on the family ``x_n = c + d / n``.

    ``<B x_n, x_n> -> 0`` forces ``B c = 0`` and ``x_n`` is always
    ``A``-Cauchy, so the definition asks ``<A c, c> = 0`` for every such
    ``c``.  Sampled ``c`` run over random combinations of the kernel of ``B``
    (and its basis vectors); the limit is read off at ``n = n_big``.
    """
    w, u = np.linalg.eigh(b)
    ker = u[:, w <= 1e-10 * max(1.0, np.abs(w).max(initial=0.0))]
    if ker.shape[1] == 0:
        return True
    n = a.shape[0]
    cands = [ker[:, i] for i in range(ker.shape[1])]
    cands += [ker @ (rng.standard_normal(ker.shape[1]) + 1j * rng.standard_normal(ker.shape[1])) for _ in range(samples)]
    for c in cands:
        c = c / np.linalg.norm(c)
        d = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        x = c + d / n_big
        if np.real(np.vdot(x, b @ x)) < 1e-9 and np.real(np.vdot(x, a @ x)) > 1e-6:
            return False
    return True


def _max_rank_one_below(a, v, tol=1e-10):
    """Largest ``t`` with ``t v v^* <= A``, by bisection on Loewner feasibility."""
    lo, hi = 0.0, 2.0 * opnorm(a) / max(np.vdot(v, v).real, 1e-300) + 1.0
    vv = np.outer(v, v.conj())
    if min_eig(a - 1e-12 * vv) < -tol:
        return 0.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if min_eig(a - mid * vv) >= -tol * max(1.0, opnorm(a)):
            lo = mid
        else:
            hi = mid
    return lo


def literal_mutually_singular(a, b, rng, iters=2000, tol=1e-6):
    """Common-lower-bound definition of ``A _|_ B`` searched over rank-one ``C``.

    Candidate directions come from alternating projections onto ``ran A``
    and ``ran B`` (they converge into the intersection), started from
    random vectors.  ``A _|_ B`` fails when some ``t v v^* <= A, B`` with
    ``t > tol``.
    """
    def proj(m):
        w, u = np.linalg.eigh(m)
        q = u[:, w > 1e-10 * max(1.0, np.abs(w).max(initial=0.0))]
        return q @ q.conj().T

    pa, pb = proj(a), proj(b)
    n = a.shape[0]
    for _ in range(3):
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        for _ in range(iters):
            v = pb @ (pa @ v)
            nv = np.linalg.norm(v)
            if nv < 1e-200:
                break
            v = v / nv
        else:
            t = min(_max_rank_one_below(a, v), _max_rank_one_below(b, v))
            if t > tol:
                return False
    return True
