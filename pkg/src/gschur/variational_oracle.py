"""Independent numerical evaluation of the sup/inf quadratic-form formulas.

Every closed-form kernel in this package has a variational description,
e.g. ``<A_B y, y> = sup_x 2 Re<Bx, y> - <Ax, x>``.  The estimators here
solve those optimisation problems directly with multi-start ascent and
exact line searches, touching the operands only through matrix-vector
products.  They never form a pseudo-inverse, so they are a genuinely
independent check of the closed forms.

A sup estimate is always a certified lower bound: ``value`` is the exact
objective at ``witness``.  An inf estimate is a certified upper bound.
``value == inf`` means a direction ``d`` was found along which the
objective grows without bound; ``witness`` is that direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DimensionMismatch, InvalidInput
from .psd_core import DEFAULT_POLICY, TolerancePolicy, as_matrix

DEFAULT_STARTS = 32
DEFAULT_BUDGET = 200

Matvec = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class OracleEstimate:
    value: float
    witness: np.ndarray
    iterations: int
    converged: bool

    @property
    def unbounded(self) -> bool:
        return math.isinf(self.value)


def _cdot(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Column-wise ``v^* u``."""
    return np.sum(v.conj() * u, axis=0)


def _random_columns(rng, n, k) -> np.ndarray:
    return rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))


def maximize_quadratic(
    q: Matvec,
    c: np.ndarray,
    const: float,
    *,
    scale: float,
    pol: TolerancePolicy = DEFAULT_POLICY,
    starts: int = DEFAULT_STARTS,
    budget: int = DEFAULT_BUDGET,
    rng=None,
) -> OracleEstimate:
    """``sup_x  const + 2 Re(c^* x) - Re(x^* Q x)`` by conjugate-direction ascent.

    ``q`` applies the Hermitian matrix ``Q`` to a block of columns.  Each
    start runs Fletcher-Reeves steps with exact line search; every
    ``2n`` steps the residual is recomputed, the direction is reset to the
    gradient, and one exact line search along a random direction is taken.
    """
    rng = np.random.default_rng(rng)
    c = np.asarray(c, dtype=complex).reshape(-1)
    n = c.shape[0]
    cnorm = float(np.linalg.norm(c))
    curv_floor = pol.psd_tol * max(1.0, scale)
    slope_floor = math.sqrt(pol.eq_tol) * max(1.0, cnorm)
    gtol = 1e-13 * max(1.0, cnorm, scale)

    def objective(x):
        return const + 2.0 * np.real(_cdot(x, c[:, None])) - np.real(_cdot(q(x), x))

    if n == 0:
        return OracleEstimate(float(const), np.zeros(0, dtype=complex), 0, True)

    x = _random_columns(rng, n, starts)
    x[:, 0] = 0.0
    period = max(2 * n, 2)

    def line_step(x, r, p):
        """Exact line search along p; returns (x, r, t, unbounded column or None)."""
        qp = q(p)
        curv = np.real(_cdot(qp, p))
        slope = np.real(_cdot(r, p))
        pn2 = np.real(_cdot(p, p))
        pn = np.sqrt(pn2)
        flat = curv <= curv_floor * pn2
        bad = (pn > 0) & ((curv < -curv_floor * pn2) | (flat & (np.abs(slope) > slope_floor * pn)))
        if np.any(bad):
            j = int(np.flatnonzero(bad)[0])
            d = p[:, j] * (np.sign(slope[j]) or 1.0)
            return x, r, None, d / pn[j]
        t = np.where(flat, 0.0, slope / np.where(flat, 1.0, curv))
        return x + t * p, r - t * qp, t, None

    r = c[:, None] - q(x)
    p = r.copy()
    it = 0
    converged = False
    for it in range(1, budget + 1):
        x, r_new, _, direction = line_step(x, r, p)
        if direction is not None:
            return OracleEstimate(math.inf, direction, it, True)
        rn_new = np.real(_cdot(r_new, r_new))
        if np.all(np.sqrt(rn_new) <= gtol):
            r = r_new
            converged = True
            break
        if it % period == 0:
            r = c[:, None] - q(x)
            x, r, _, direction = line_step(x, r, _random_columns(rng, n, starts))
            if direction is not None:
                return OracleEstimate(math.inf, direction, it, True)
            r = c[:, None] - q(x)
            p = r.copy()
            continue
        rn_old = np.real(_cdot(r, r))
        beta = np.where(rn_old > 0, rn_new / np.where(rn_old > 0, rn_old, 1.0), 0.0)
        r = r_new
        p = r + beta * p

    r = c[:, None] - q(x)
    if not converged:
        converged = bool(np.all(np.linalg.norm(r, axis=0) <= 1e3 * gtol))
    values = objective(x)
    j = int(np.argmax(values))
    return OracleEstimate(float(objective(x[:, j : j + 1])[0]), x[:, j].copy(), it, converged)


def maximize_ratio(
    q: Matvec,
    c: np.ndarray,
    *,
    scale: float,
    pol: TolerancePolicy = DEFAULT_POLICY,
    starts: int = DEFAULT_STARTS,
    budget: int = DEFAULT_BUDGET,
    rng=None,
) -> OracleEstimate:
    """``sup { |c^* x|^2 : Re(x^* Q x) <= 1 }``.

    Equivalently the sup of ``N/D`` with ``N = |c^* x|^2`` and
    ``D = x^* Q x``.  Polak-Ribiere ascent on the ratio; the line search
    along ``x + t p`` is exact because ``(N/D)' = 0`` reduces to a
    quadratic in ``t``.  The witness is scaled to ``D = 1``.
    """
    rng = np.random.default_rng(rng)
    c = np.asarray(c, dtype=complex).reshape(-1)
    n = c.shape[0]
    cnorm = float(np.linalg.norm(c))
    if n == 0 or cnorm == 0.0:
        return OracleEstimate(0.0, np.zeros(n, dtype=complex), 0, True)
    curv_floor = pol.psd_tol * max(1.0, scale)
    num_floor = pol.eq_tol * max(1.0, cnorm) ** 2
    cc = c[:, None]

    def parts(x):
        qx = q(x)
        return np.abs(_cdot(x, cc)) ** 2, np.real(_cdot(qx, x)), qx

    def unbounded(p):
        num, den, _ = parts(p)
        pn2 = np.real(_cdot(p, p))
        hit = (den <= curv_floor * pn2) & (num > num_floor * pn2)
        if np.any(hit):
            j = int(np.flatnonzero(hit)[0])
            return p[:, j] / math.sqrt(pn2[j])
        return None

    # starts inside ran Q: null-space components never change N or D and
    # would only be inflated by the normalisation
    x = q(_random_columns(rng, n, starts))
    x[:, 0] = q(c[:, None])[:, 0]
    x[:, 1 % starts] = c
    direction = unbounded(x)
    if direction is not None:
        return OracleEstimate(math.inf, direction, 0, True)

    def normalise(x):
        _, den, _ = parts(x)
        return x / np.sqrt(np.where(den > 0, den, 1.0))

    x = normalise(x)
    g_prev = None
    p = None
    ratio = parts(x)[0]
    converged = False
    it = 0
    period = max(2 * n, 2)
    for it in range(1, budget + 1):
        num, den, qx = parts(x)
        alpha = _cdot(x, cc)
        # ascent direction for N/D (Wirtinger gradient times D^2)
        g = cc * alpha[None, :] * den[None, :] - num[None, :] * qx
        # a gradient at round-off level carries no information; freeze the column
        g_size = np.abs(alpha) * den * cnorm + num * np.linalg.norm(qx, axis=0)
        stalled = np.linalg.norm(g, axis=0) <= 1e-12 * np.maximum(g_size, 1e-300)
        g[:, stalled] = 0.0
        if g_prev is None or it % period == 0:
            p = g
            if it % period == 0:
                kick = q(_random_columns(rng, n, x.shape[1]))
                kick *= np.linalg.norm(g, axis=0) / np.maximum(np.linalg.norm(kick, axis=0), 1e-300)
                p = g + 1e-3 * kick
        else:
            gp2 = np.real(_cdot(g_prev, g_prev))
            beta = np.maximum(0.0, np.real(_cdot(g - g_prev, g)) / np.where(gp2 > 0, gp2, 1.0))
            p = g + beta * p
        p[:, stalled] = 0.0
        g_prev = g
        if np.all(stalled):
            converged = True
            break
        direction = unbounded(p)
        if direction is not None:
            return OracleEstimate(math.inf, direction, it, True)
        # N(t) = n0 + 2 n1 t + n2 t^2,  D(t) = d0 + 2 d1 t + d2 t^2
        beta_c = _cdot(p, cc)
        qp = q(p)
        n0, n1, n2 = np.abs(alpha) ** 2, np.real(np.conj(alpha) * beta_c), np.abs(beta_c) ** 2
        d0, d1, d2 = den, np.real(_cdot(qx, p)), np.real(_cdot(qp, p))
        qa, qb, qc = n2 * d1 - n1 * d2, n2 * d0 - n0 * d2, n1 * d0 - n0 * d1
        best_t = np.zeros_like(n0)
        best_f = n0 / np.where(d0 > 0, d0, 1.0)
        disc = qb**2 - 4 * qa * qc
        for sgn in (1.0, -1.0):
            with np.errstate(divide="ignore", invalid="ignore"):
                root = np.where(
                    np.abs(qa) > 1e-300,
                    (-qb + sgn * np.sqrt(np.maximum(disc, 0.0))) / (2 * qa),
                    -qc / np.where(np.abs(qb) > 1e-300, qb, np.inf),
                )
            root = np.where(np.isfinite(root), root, 0.0)
            den_t = d0 + 2 * d1 * root + d2 * root**2
            f = (n0 + 2 * n1 * root + n2 * root**2) / np.where(den_t > 0, den_t, np.inf)
            better = f > best_f
            best_t = np.where(better, root, best_t)
            best_f = np.where(better, f, best_f)
        x = normalise(x + best_t * p)
        direction = unbounded(x)
        if direction is not None:
            return OracleEstimate(math.inf, direction, it, True)
        new_ratio = parts(x)[0]
        gain = np.max(new_ratio) - np.max(ratio)
        ratio = new_ratio
        if it > period and abs(gain) <= 1e-15 * max(1.0, float(np.max(ratio))):
            gnorm = np.linalg.norm(g, axis=0)
            j = int(np.argmax(ratio))
            if gnorm[j] <= 1e-9 * max(1.0, float(ratio[j])) * cnorm * max(1.0, scale):
                converged = True
                break
    num, den, _ = parts(x)
    j = int(np.argmax(num))
    w = x[:, j] / math.sqrt(max(den[j], np.finfo(float).tiny))
    return OracleEstimate(float(abs(np.vdot(c, w)) ** 2), w, it, converged)


def _opnorm(*ms) -> float:
    return float(sum(np.linalg.norm(m, 2) for m in ms if m.size))


COMPLEMENT_PAIR = "complement_pair"
COMPLEMENT_SELFADJ = "complement_selfadj"
PARDIFF = "pardiff"
KV_EXTENSION = "kv_extension"
PARALLEL_SUM = "parallel_sum"


def oracle_sup(
    objective: str,
    operands,
    y,
    *,
    form: int = 2,
    budget: int = DEFAULT_BUDGET,
    starts: int = DEFAULT_STARTS,
    seed=None,
    pol: TolerancePolicy = DEFAULT_POLICY,
) -> OracleEstimate:
    """Estimate one of the sup formulas at the vector ``y``.

    ``objective`` / ``operands``:

    * ``"complement_pair"``, ``(A, B)``:
      form 1 ``sup{|<Bx,y>|^2 : <Ax,x> <= 1}``,
      form 2 ``sup{<Bx,y> + <B^*y,x> - <Ax,x>}``.
    * ``"complement_selfadj"``, ``(A, B)`` with both PSD:
      ``sup{<By,x> + <Bx,y> - <Ax,x>}``.
    * ``"pardiff"``, ``(B, A)``: ``sup{<B(x+y),x+y> - <Ax,x>}``.
    * ``"kv_extension"``, ``(V, W)`` (domain basis, values):
      form 1 ``sup{|<Ax,y>|^2 : x in dom A, <Ax,x> <= 1}``,
      form 2 ``sup{<Ax,y> + conj<Ax,y> - <Ax,x> : x in dom A}``.
      The witness is given in domain coordinates (``x = V z``).
    """
    y = np.asarray(y, dtype=complex).reshape(-1)
    mats = [as_matrix(m) for m in operands]
    if len(mats) != 2:
        raise InvalidInput("operands must be a pair of matrices")
    rng = np.random.default_rng(seed)
    kw = dict(pol=pol, starts=starts, budget=budget, rng=rng)

    if objective in (COMPLEMENT_PAIR, COMPLEMENT_SELFADJ):
        a, b = mats
        if a.shape[0] != a.shape[1] or b.shape[1] != a.shape[0] or b.shape[0] != y.shape[0]:
            raise DimensionMismatch(f"incompatible shapes A {a.shape}, B {b.shape}, y {y.shape}")
        if objective == COMPLEMENT_SELFADJ:
            if b.shape[0] != b.shape[1]:
                raise DimensionMismatch("complement_selfadj needs a square B")
            c = b @ y
        else:
            c = b.conj().T @ y
        scale = _opnorm(a)
        if form == 1 and objective == COMPLEMENT_PAIR:
            return maximize_ratio(lambda x: a @ x, c, scale=scale, **kw)
        return maximize_quadratic(lambda x: a @ x, c, 0.0, scale=scale, **kw)

    if objective == PARDIFF:
        b, a = mats
        if a.shape != b.shape or a.shape[0] != y.shape[0]:
            raise DimensionMismatch(f"incompatible shapes B {b.shape}, A {a.shape}, y {y.shape}")
        by = b @ y
        const = float(np.real(np.vdot(y, by)))
        return maximize_quadratic(lambda x: a @ x - b @ x, by, const, scale=_opnorm(a, b), **kw)

    if objective == KV_EXTENSION:
        v, w = mats
        if v.shape != w.shape or v.shape[0] != y.shape[0]:
            raise DimensionMismatch(f"incompatible shapes V {v.shape}, W {w.shape}, y {y.shape}")
        c = w.conj().T @ y

        def gram(z):
            return v.conj().T @ (w @ z)

        scale = _opnorm(v) * _opnorm(w)
        if form == 1:
            return maximize_ratio(gram, c, scale=scale, **kw)
        return maximize_quadratic(gram, c, 0.0, scale=scale, **kw)

    raise InvalidInput(f"unknown sup objective {objective!r}")


def oracle_inf(
    objective: str,
    a,
    b,
    y,
    *,
    budget: int = DEFAULT_BUDGET,
    starts: int = DEFAULT_STARTS,
    seed=None,
    pol: TolerancePolicy = DEFAULT_POLICY,
) -> OracleEstimate:
    """``inf{<A(y+x), y+x> + <Bx, x>}``, the quadratic form of ``A:B`` at ``y``."""
    if objective != PARALLEL_SUM:
        raise InvalidInput(f"unknown inf objective {objective!r}")
    a, b = as_matrix(a), as_matrix(b)
    y = np.asarray(y, dtype=complex).reshape(-1)
    if a.shape != b.shape or a.shape[0] != y.shape[0]:
        raise DimensionMismatch(f"incompatible shapes A {a.shape}, B {b.shape}, y {y.shape}")
    ay = a @ y
    const = -float(np.real(np.vdot(y, ay)))
    est = maximize_quadratic(
        lambda x: a @ x + b @ x,
        -ay,
        const,
        scale=_opnorm(a, b),
        pol=pol,
        starts=starts,
        budget=budget,
        rng=np.random.default_rng(seed),
    )
    return OracleEstimate(-est.value, est.witness, est.iterations, est.converged)


def evaluate(objective: str, operands, y, x, *, form: int = 2) -> float:
    """Exact objective value at a witness ``x``; used to re-check estimates."""
    y = np.asarray(y, dtype=complex).reshape(-1)
    x = np.asarray(x, dtype=complex).reshape(-1)
    m1, m2 = (as_matrix(m) for m in operands)
    if objective == PARALLEL_SUM:
        a, b = m1, m2
        s = y + x
        return float(np.real(np.vdot(s, a @ s) + np.vdot(x, b @ x)))
    if objective == PARDIFF:
        b, a = m1, m2
        s = x + y
        return float(np.real(np.vdot(s, b @ s) - np.vdot(x, a @ x)))
    if objective == COMPLEMENT_SELFADJ:
        a, b = m1, m2
        return float(np.real(np.vdot(x, b @ y) + np.vdot(y, b @ x) - np.vdot(x, a @ x)))
    if objective in (COMPLEMENT_PAIR, KV_EXTENSION):
        if objective == COMPLEMENT_PAIR:
            a, b = m1, m2
            bx, ax = b @ x, a @ x
            quad = np.real(np.vdot(x, ax))
        else:
            v, w = m1, m2
            bx = w @ x
            quad = np.real(np.vdot(v @ x, bx))
        pairing = np.vdot(y, bx)
        if form == 1:
            return float(abs(pairing) ** 2) if quad <= 1 + 1e-12 else -math.inf
        return float(2 * np.real(pairing) - quad)
    raise InvalidInput(f"unknown objective {objective!r}")
