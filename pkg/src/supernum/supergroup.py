"""Matrix super Lie groups: even invertible supermatrices, log charts,
transition maps, the Adjoint and the left-invariant field bracket.

Charts follow kappa^x(y) = log(x^-1 y) with a fixed domain radius of 0.4
in the matrix norm, inside both the log radius and the BCH guard.  The
transition between two charts is evaluated through the flow formula
mu(mu(Y_o, -X_o), X), with the common point taken at the exp-midpoint
between the chart centers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IncompatibleOperands, NotInvertible, OutOfDomain
from .expbch import DEFAULT_FLOW, FlowConfig, bch_flow, exp_matrix, log_matrix
from .linalg import SuperMatrix
from .superlie import super_bracket

CHART_RADIUS = 0.4


class GroupElement:
    """Even supermatrix with invertible body."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        if not matrix.is_even():
            raise IncompatibleOperands("group elements must be even supermatrices")
        body = matrix.body()
        det = np.linalg.det(body)
        if not np.isfinite(det) or abs(det) < 1e-300:
            raise NotInvertible("matrix body is singular; not a group element")
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, *a):
        raise AttributeError("GroupElement is immutable")

    @classmethod
    def identity(cls, p, q, budget, field="R"):
        return cls(SuperMatrix.identity(p, q, budget, field))

    @classmethod
    def from_algebra(cls, X, cfg=DEFAULT_FLOW):
        """exp of an even algebra element."""
        return cls(exp_matrix(X, cfg))

    def __repr__(self):
        return f"GroupElement({self.matrix!r})"


def group_mul(g, h):
    return GroupElement(g.matrix @ h.matrix)


def group_inv(g):
    """Inverse via body inversion plus a terminating soul Neumann series."""
    M = g.matrix
    p, q, budget, fld = M.p, M.q, M.budget, M.field
    body_inv = np.linalg.inv(M.body())
    Binv = SuperMatrix.from_body(body_inv, p, q, budget, fld)
    soul = M - SuperMatrix.from_body(M.body(), p, q, budget, fld)
    T = -(Binv @ soul)
    acc = SuperMatrix.identity(p, q, budget, fld)
    power = acc
    for _ in range(budget):
        power = power @ T
        if power.norm() == 0.0:
            break
        acc = acc + power
    return GroupElement(acc @ Binv)


def Ad(g, X):
    """Adjoint action g X g^-1 on even algebra elements."""
    if not X.is_even():
        raise IncompatibleOperands("Ad acts on even algebra elements")
    return (g.matrix @ X) @ group_inv(g).matrix


@dataclass(frozen=True)
class Chart:
    """Log chart kappa^x(y) = log(x^-1 y) with a norm-ball domain."""

    center: GroupElement
    radius: float = CHART_RADIUS
    cfg: FlowConfig = DEFAULT_FLOW

    def contains(self, y):
        E = group_mul(group_inv(self.center), y).matrix
        I = SuperMatrix.identity(E.p, E.q, E.budget, E.field)
        return (E - I).norm() <= self.radius


def chart_apply(c, y):
    """kappa-coordinates of y; OutOfDomain outside the chart ball."""
    rel = group_mul(group_inv(c.center), y).matrix
    I = SuperMatrix.identity(rel.p, rel.q, rel.budget, rel.field)
    if (rel - I).norm() > c.radius:
        raise OutOfDomain(
            f"point lies outside the chart ball (|x^-1 y - I| = {(rel - I).norm():.3f})"
        )
    return log_matrix(rel, c.cfg)


def chart_inverse(c, X):
    """Point with kappa-coordinates X."""
    if X.norm() > c.radius:
        raise OutOfDomain(f"coordinates |X| = {X.norm():.3f} exceed chart radius")
    return GroupElement(c.center.matrix @ exp_matrix(X, c.cfg))


def transition(cx, cy, X, cfg=None):
    """Chart transition kappa^y o (kappa^x)^-1 via mu(mu(Y_o, -X_o), X).

    X_o, Y_o are the coordinates of the exp-midpoint between the chart
    centers; OutOfDomain when the image would leave cy's ball.
    """
    cfg = cfg or cx.cfg
    z = chart_inverse(cx, X)
    if not cy.contains(z):
        raise OutOfDomain("point is outside the overlap of the two charts")
    V = chart_apply(cx, cy.center)
    w = chart_inverse(cx, V * 0.5)
    X_o = V * 0.5
    Y_o = chart_apply(cy, w)
    return bch_flow(bch_flow(Y_o, -X_o, cfg), X, cfg)


def group_op_chart_residual(x, y, X, Y, cfg=DEFAULT_FLOW):
    """Residual of the group operation written in charts.

    Checks kappa^{x y^-1}(m(kappa^x-1(X), kappa^y-1(Y))) against
    Ad(y)(mu(X, -Y)) where m(a, b) = a b^-1; returns the norm difference.
    """
    cx, cy = Chart(x, cfg=cfg), Chart(y, cfg=cfg)
    a = chart_inverse(cx, X)
    b = chart_inverse(cy, Y)
    m_ab = group_mul(a, group_inv(b))
    target = Chart(group_mul(x, group_inv(y)), cfg=cfg)
    lhs = chart_apply(target, m_ab)
    rhs = Ad(y, bch_flow(X, -Y, cfg))
    return (lhs - rhs).norm()


def livf_bracket_check(M, N, points, tol=1e-12):
    """Left-invariant field bracket X^[M,N] = [X^M, X^N] on linear fields.

    X^M is the field A -> AM; its bracket with X^N evaluates to
    A (MN - (-1)^(eps(M) eps(N)) NM).  Checks that stepwise evaluation
    (A M) N - sign (A N) M matches A [M, N] at each sample point.
    """
    if M.is_even():
        eps_m = 0
    elif M.is_odd():
        eps_m = 1
    else:
        raise IncompatibleOperands("fields are generated by pure matrices")
    if N.is_even():
        eps_n = 0
    elif N.is_odd():
        eps_n = 1
    else:
        raise IncompatibleOperands("fields are generated by pure matrices")
    sign = -1 if (eps_m and eps_n) else 1
    bracket = super_bracket(M, N)
    worst = 0.0
    for A in points:
        stepwise = (A @ M) @ N - ((A @ N) @ M) * sign
        direct = A @ bracket
        worst = max(worst, (stepwise - direct).norm())
    return {"max_residual": worst, "pass": worst <= tol, "samples": len(points)}
