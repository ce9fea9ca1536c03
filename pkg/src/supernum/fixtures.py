"""Fixture maps for the supersmoothness checker and the CLI.

The polynomial superfunctions are built from coordinate sums and
products with supernumber coefficients, hence supersmooth by the closure
properties; body() is the canonical negative control; the mu-chart map
cross-checks the BCH flow machinery.
"""

from __future__ import annotations

from .expbch import FlowConfig, bch_flow
from .grassmann import Supernumber
from .linalg import even_coords, from_even_coords
from .superdiff import SampledMap


def _sn(terms, budget, field="R"):
    return Supernumber.from_terms(terms, budget, field)


def poly_fixtures(budget=8, field="R"):
    """Five polynomial superfunction fixtures on small model spaces."""
    c12 = _sn({(): 1, (1, 2): 0.5}, budget, field)
    z1 = Supernumber.zeta(1, budget, field)
    z2 = Supernumber.zeta(2, budget, field)
    one = Supernumber.scalar(1, budget, field)

    def f1(v):
        (x,) = v.entries
        return (x * x + c12 * x,)

    def f2(v):
        x, th = v.entries
        return (x * th + z1 * x,)

    def f3(v):
        x, th = v.entries
        return (x * x + th * z1, x * th + z2 * (x * x))

    def f4(v):
        x, y, th = v.entries
        return (x * y + one, (x + y) * th)

    def f5(v):
        x, t1, t2 = v.entries
        return (x + t1 * t2,)

    return [
        SampledMap(1, 0, budget, field, f1, 1, k_max=3, max_generator=2),
        SampledMap(1, 1, budget, field, f2, 1, k_max=2, max_generator=1),
        SampledMap(1, 1, budget, field, f3, 2, k_max=2, max_generator=2),
        SampledMap(2, 1, budget, field, f4, 2, k_max=2, max_generator=0),
        SampledMap(1, 2, budget, field, f5, 1, k_max=2, max_generator=0),
    ]


def body_fixture(budget=8, field="R"):
    """f(z) = body(z) on K^{1|0}: R-linear but not supersmooth."""

    def f(v):
        (x,) = v.entries
        return (Supernumber.scalar(x.body, budget, field),)

    return SampledMap(1, 0, budget, field, f, 1, k_max=1, max_generator=0)


def mu_chart_fixture(budget=8, field="R", x0_scale=0.1, steps=20):
    """The exp-chart map Y -> mu(X0, Y) on gl(1|1), coordinates in K^{2|2}.

    X0 is a fixed even element with soul content on low generators.  The
    reduced step count is sound here: the fixed-step RK4 flow is itself a
    polynomial map of (X0, Y), so it is exactly supersmooth at any step
    count, and the probe increments are tiny.
    """
    cfg = FlowConfig(steps=steps)
    z = Supernumber.zero(budget, field)
    a = _sn({(): 1.0, (1, 2): 0.25}, budget, field)
    d = _sn({(): -0.5, (3, 4): 0.5}, budget, field)
    beta = _sn({(1,): 0.75, (1, 2, 3): 0.25}, budget, field)
    gamma = _sn({(2,): -0.5}, budget, field)
    X0_vec_entries = [a * x0_scale, d * x0_scale, beta * x0_scale, gamma * x0_scale]
    from .linalg import SuperVector

    X0 = from_even_coords(SuperVector(2, 2, X0_vec_entries), 1, 1)

    def f(v):
        Y = from_even_coords(v, 1, 1)
        return even_coords(bch_flow(X0, Y, cfg)).entries

    return SampledMap(2, 2, budget, field, f, 4, k_max=2, max_generator=4)


def default_base_point(f, name=""):
    """Deterministic probing point inside the fixture's headroom region."""
    from .linalg import SuperVector

    if name == "mu-chart":
        return SuperVector(f.p, f.q, [Supernumber.zero(f.budget, f.field)
                                      for _ in range(f.p + f.q)])
    ents = []
    for i in range(f.p + f.q):
        if i < f.p:
            ents.append(_sn({(): 0.4, (1, 2): 0.1}, f.budget, f.field))
        else:
            ents.append(_sn({(1,): 0.3, (2,): 0.1}, f.budget, f.field))
    return SuperVector(f.p, f.q, ents)


def fixture_by_name(name, budget=8, field="R"):
    if name.startswith("poly"):
        idx = int(name[4:]) - 1
        fixtures = poly_fixtures(budget, field)
        if not (0 <= idx < len(fixtures)):
            raise ValueError(f"unknown polynomial fixture {name!r}")
        return fixtures[idx]
    if name == "body":
        return body_fixture(budget, field)
    if name == "mu-chart":
        return mu_chart_fixture(budget, field)
    raise ValueError(f"unknown fixture {name!r}")
