"""Seeded random generators for supernumbers, vectors and matrices.

Every sampler takes a numpy Generator so that verification sweeps are
reproducible from a single seed.
"""

from __future__ import annotations

import numpy as np

from .blades import grade
from .grassmann import Supernumber
from .linalg import SuperMatrix, SuperVector


def _masks_by_parity(budget, parity):
    if parity is None:
        return list(range(1 << budget))
    return [m for m in range(1 << budget) if grade(m) % 2 == parity]


def random_supernumber(rng, budget, field="R", max_terms=4, parity=None, scale=1.0):
    """Sparse supernumber with coefficients uniform in [-scale, scale]."""
    masks = _masks_by_parity(budget, parity)
    n = int(rng.integers(1, max_terms + 1))
    terms = {}
    for _ in range(n):
        m = int(masks[int(rng.integers(0, len(masks)))])
        c = float(rng.uniform(-scale, scale))
        if field == "C":
            c = complex(c, float(rng.uniform(-scale, scale)))
        terms[m] = terms.get(m, 0) + c
    return Supernumber(field, budget, terms)


def random_pure_matrix(rng, p, q, budget, field="R", parity=0, max_terms=3,
                       norm_cap=None, with_body=True):
    """Random supermatrix of definite parity; rescaled below norm_cap.

    Entries whose requested parity is even get an explicit body term by
    default, so even matrices have genuinely non-nilpotent dynamics.
    """
    n = p + q
    ents = []
    for i in range(n):
        row = []
        for j in range(n):
            slot = ((0 if i < p else 1) + (0 if j < p else 1)) % 2
            want = (slot + parity) % 2
            e = random_supernumber(rng, budget, field, max_terms=max_terms,
                                   parity=want)
            if with_body and want == 0:
                body = float(rng.uniform(-1, 1))
                if field == "C":
                    body = complex(body, float(rng.uniform(-1, 1)))
                e = e + Supernumber.scalar(body, budget, field)
            row.append(e)
        ents.append(row)
    M = SuperMatrix(p, q, ents)
    if norm_cap is not None and M.norm() > 0:
        M = M * (norm_cap * float(rng.uniform(0.5, 1.0)) / M.norm())
    return M


def random_even_matrix(rng, p, q, budget, field="R", max_terms=3, norm_cap=None,
                       with_body=True):
    return random_pure_matrix(rng, p, q, budget, field, 0, max_terms, norm_cap,
                              with_body)


def random_vector(rng, p, q, budget, field="R", max_terms=3, max_generator=None):
    """Random element of K^{p|q}; generators restricted when asked."""
    sub_budget = max_generator or budget
    ents = []
    for i in range(p + q):
        parity = 0 if i < p else 1
        z = random_supernumber(rng, sub_budget, field, max_terms, parity)
        ents.append(Supernumber(field, budget, dict(z._terms)))
    return SuperVector(p, q, ents)
