"""Matrix power series, exp/log, Bernoulli series and the BCH flow.

The group law mu(X, Y) is the time-1 value of the initial value problem

    dW/dt = F(X, W) = X + sum_{k>=1} (B_k / k!) ad_W^k(X),   W(0) = Y,

integrated with fixed-step RK4, and satisfies exp(mu(X,Y)) = exp(X)exp(Y).
All heavy arithmetic runs on packed blade arrays through the selected
kernel backend, which restricts this module to budgets with a dense
blade table (<= 12 generators).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import backend
from .blades import MAX_TABLE_BUDGET, blade_table
from .errors import (IncompatibleOperands, NumericalFailure, OutOfDomain,
                     SeriesDivergence)
from .linalg import SuperMatrix

BERNOULLI_MAX = 40


@dataclass(frozen=True)
class FlowConfig:
    """Integration and series-truncation parameters."""

    steps: int = 200
    series_tol: float = 1e-14
    series_max_terms: int = 64
    radius_guard: float = 0.5

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        if self.series_tol <= 0 or self.radius_guard <= 0:
            raise ValueError("tolerances must be positive")
        if self.series_max_terms < 1:
            raise ValueError("series_max_terms must be >= 1")


DEFAULT_FLOW = FlowConfig()


@lru_cache(maxsize=None)
def bernoulli(k):
    """Bernoulli number B_k as a Fraction, convention sum B_k/k! x^k = x/(e^x - 1).

    So B_1 = -1/2 and B_k = 0 for odd k >= 3.  Guarded to k <= 40.
    """
    if not (0 <= k <= BERNOULLI_MAX):
        raise OutOfDomain(f"bernoulli index {k} outside 0..{BERNOULLI_MAX}")
    if k == 0:
        return Fraction(1)
    # sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1
    acc = Fraction(0)
    for j in range(k):
        acc += math.comb(k + 1, j) * bernoulli(j)
    return -acc / (k + 1)


def _coeff_fn(spec):
    if callable(spec):
        return spec
    table = {
        "exp": lambda k: 1.0 / math.factorial(k),
        "log1p": lambda k: 0.0 if k == 0 else (-1.0) ** (k + 1) / k,
        "geometric": lambda k: 1.0,
        "eta": lambda k: 1.0 / math.factorial(k + 1),
        "zeta": lambda k: float(bernoulli(k)) / math.factorial(k),
    }
    if spec in table:
        return table[spec]
    raise ValueError(f"unknown coefficient spec {spec!r}")


def _zeta_coeffs(max_terms):
    n = min(max_terms, BERNOULLI_MAX) + 1
    c = np.array([float(bernoulli(k)) / math.factorial(k) for k in range(n)])
    tails = np.concatenate([np.cumsum(np.abs(c)[::-1])[::-1], [0.0]])
    return c, tails


def _packed(M):
    if M.budget > MAX_TABLE_BUDGET:
        raise IncompatibleOperands(
            f"flow kernels need a blade table (budget <= {MAX_TABLE_BUDGET})"
        )
    return blade_table(M.budget), M.to_packed()


def _require_even(M, what):
    if not M.is_even():
        raise IncompatibleOperands(f"{what} must be an even supermatrix")


@dataclass(frozen=True)
class SeriesResult:
    value: "SuperMatrix"
    terms: int
    last_term_norm: float


def matrix_series(coeffs, M, cfg=DEFAULT_FLOW):
    """Evaluate f(M) = sum_k a_k M^k by accumulating partial sums.

    ``coeffs`` is a name ('exp', 'log1p', 'geometric', 'eta', 'zeta') or a
    callable k -> a_k.  Stops once the power norm vanishes (nilpotent
    argument) or two consecutive term norms drop below
    series_tol * (1 + |acc|); a single small term is not trusted because
    interleaved zero coefficients (the odd Bernoulli numbers) would end
    the series early.  Persistent growth of the increments or exhaustion
    of series_max_terms raises SeriesDivergence carrying the last term
    norm.
    """
    _require_even(M, "series argument")
    a = _coeff_fn(coeffs)
    tab, Mp = _packed(M)
    n, D = M.n, 1 << M.budget
    acc = np.zeros((n, n, D), dtype=Mp.dtype)
    acc[:, :, 0] = a(0) * np.eye(n)
    term = np.zeros_like(acc)
    term[:, :, 0] = np.eye(n)
    prev_norm = math.inf
    grow_streak = 0
    small_streak = 0
    last = abs(a(0)) * n
    for k in range(1, cfg.series_max_terms + 1):
        term = backend.matmul(term, Mp, tab)
        power_norm = backend.norm1(term)
        ak = a(k)
        if ak != 0.0:
            acc = acc + ak * term
        last = abs(ak) * power_norm
        done = SeriesResult(
            SuperMatrix.from_packed(acc, M.p, M.q, M.budget, M.field), k, last
        )
        if power_norm == 0.0:
            return done
        tol_eff = cfg.series_tol * (1.0 + backend.norm1(acc))
        small_streak = small_streak + 1 if last < tol_eff else 0
        if small_streak >= 2:
            return done
        grow_streak = grow_streak + 1 if last >= prev_norm else 0
        if last > 0.0:
            prev_norm = last
        if grow_streak >= 4:
            raise SeriesDivergence(
                f"series increments keep growing (term {k}, norm {last:.3e})",
                last_term_norm=last,
            )
    raise SeriesDivergence(
        f"series did not converge within {cfg.series_max_terms} terms",
        last_term_norm=last,
    )


def exp_matrix(M, cfg=DEFAULT_FLOW):
    """Matrix exponential by scaling and squaring.

    The argument is halved until its norm is <= 0.5, the Taylor series is
    summed (the soul part terminates exactly by nilpotency), and the
    result is squared back.
    """
    _require_even(M, "exp argument")
    nrm = M.norm()
    s = max(0, math.ceil(math.log2(nrm / 0.5))) if nrm > 0.5 else 0
    tab, Mp = _packed(M)
    T = Mp * (0.5**s)
    small = matrix_series("exp", SuperMatrix.from_packed(T, M.p, M.q, M.budget, M.field), cfg)
    E = small.value.to_packed()
    for _ in range(s):
        E = backend.matmul(E, E, tab)
    return SuperMatrix.from_packed(E, M.p, M.q, M.budget, M.field)


def log_matrix(G, cfg=DEFAULT_FLOW):
    """Mercator series log(G) for G near the identity (|G - I| < 1)."""
    _require_even(G, "log argument")
    E = G - SuperMatrix.identity(G.p, G.q, G.budget, G.field)
    if E.norm() >= 1.0:
        raise OutOfDomain(f"log requires |G - I| < 1, got {E.norm():.3f}")
    return matrix_series("log1p", E, cfg).value


def eta(ad, cfg=DEFAULT_FLOW):
    """eta(X) = (e^(ad_X) - I)/ad_X = sum_k ad_X^k / (k+1)! as a matrix.

    Takes the adjoint endomorphism matrix (see superlie.ad_matrix).
    """
    _guard_ad(ad, cfg)
    return matrix_series("eta", ad, cfg).value


def zeta(ad, cfg=DEFAULT_FLOW):
    """zeta(X) = ad_X/(e^(ad_X) - I) = sum_k (B_k/k!) ad_X^k; inverse of eta."""
    from dataclasses import replace

    _guard_ad(ad, cfg)
    cfg = replace(cfg, series_max_terms=min(cfg.series_max_terms, BERNOULLI_MAX))
    return matrix_series("zeta", ad, cfg).value


def _guard_ad(ad, cfg):
    _require_even(ad, "adjoint matrix")
    if ad.norm() > cfg.radius_guard + 1e-15:
        raise OutOfDomain(
            f"|ad| = {ad.norm():.3f} exceeds radius guard {cfg.radius_guard}"
        )


def _series_apply_packed(Wp, Xp, tab, cfg):
    c, tails = _zeta_coeffs(cfg.series_max_terms)
    F, terms, last, converged = backend.series_apply(Wp, Xp, c, tails, cfg.series_tol, tab)
    if not converged:
        raise SeriesDivergence(
            f"bracket series did not converge within {len(c) - 1} terms",
            last_term_norm=last,
        )
    return F


def bch_rhs(X, Z, cfg=DEFAULT_FLOW):
    """F(X, Z) = zeta(ad_Z) applied to X; the k=0 term is X itself."""
    _require_even(X, "X")
    _require_even(Z, "Z")
    for M, name in ((X, "X"), (Z, "Z")):
        if M.norm() > cfg.radius_guard + 1e-15:
            raise OutOfDomain(f"|{name}| = {M.norm():.3f} exceeds guard {cfg.radius_guard}")
    tab, Xp = _packed(X)
    _, Zp = _packed(Z)
    F = _series_apply_packed(Zp, Xp, tab, cfg)
    return SuperMatrix.from_packed(F, X.p, X.q, X.budget, X.field)


def bch_flow(X, Y, cfg=DEFAULT_FLOW):
    """mu(X, Y) = W(1) for dW/dt = F(X, W), W(0) = Y, fixed-step RK4.

    Satisfies exp(mu(X, Y)) = exp(X) exp(Y) within the configured
    tolerances for inputs inside the radius guard.
    """
    _require_even(X, "X")
    _require_even(Y, "Y")
    X._check_compat(Y)
    for M, name in ((X, "X"), (Y, "Y")):
        if M.norm() > cfg.radius_guard + 1e-15:
            raise OutOfDomain(f"|{name}| = {M.norm():.3f} exceeds guard {cfg.radius_guard}")
    tab, Xp = _packed(X)
    _, Yp = _packed(Y)
    W = _flow_packed(Xp, Yp, tab, cfg)
    return SuperMatrix.from_packed(W, X.p, X.q, X.budget, X.field)


def _flow_packed(Xp, Yp, tab, cfg):
    c, tails = _zeta_coeffs(cfg.series_max_terms)

    def rhs(W):
        F, _terms, last, converged = backend.series_apply(
            W, Xp, c, tails, cfg.series_tol, tab
        )
        if not converged:
            raise SeriesDivergence(
                "bracket series did not converge during the flow",
                last_term_norm=last,
            )
        return F

    W = Yp.copy()
    h = 1.0 / cfg.steps
    for _ in range(cfg.steps):
        k1 = rhs(W)
        k2 = rhs(W + (0.5 * h) * k1)
        k3 = rhs(W + (0.5 * h) * k2)
        k4 = rhs(W + h * k3)
        W = W + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.isfinite(W).all():
            raise NumericalFailure("flow produced non-finite values")
    return W


def bch_series_oracle(X, Y, order):
    """Classical BCH polynomial through 4th order; independent check of the flow.

    X + Y + [X,Y]/2 + ([X,[X,Y]] + [Y,[Y,X]])/12 - [Y,[X,[X,Y]]]/24.
    """
    from .superlie import super_bracket

    if order not in (1, 2, 3, 4):
        raise ValueError("oracle order must be 1..4")
    acc = X + Y
    if order >= 2:
        xy = super_bracket(X, Y)
        acc = acc + xy * 0.5
    if order >= 3:
        xxy = super_bracket(X, xy)
        yyx = super_bracket(Y, super_bracket(Y, X))
        acc = acc + (xxy + yyx) * (1.0 / 12.0)
    if order >= 4:
        acc = acc - super_bracket(Y, xxy) * (1.0 / 24.0)
    return acc
