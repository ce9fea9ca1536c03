"""Shared helpers: an independent brute-force Grassmann oracle and
random-object factories used across the suite."""

import numpy as np
import pytest

from supernum.grassmann import Supernumber


def sorted_sign(indices):
    """Sign of sorting an index sequence by adjacent transpositions.

    Returns (sign, tuple) or (0, None) when an index repeats.  This is
    the oracle's own bookkeeping, independent of the bitmask kernels.
    """
    seq = list(indices)
    sign = 1
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                sign = -sign
    for a, b in zip(seq, seq[1:]):
        if a == b:
            return 0, None
    return sign, tuple(seq)


def oracle_mul(a, b):
    """Brute-force product of two supernumbers via index concatenation."""
    from supernum.blades import indices_from_mask

    out = {}
    for ma, ca in a.terms():
        for mb, cb in b.terms():
            concat = indices_from_mask(ma) + indices_from_mask(mb)
            sign, idx = sorted_sign(concat)
            if sign == 0:
                continue
            out[idx] = out.get(idx, 0) + sign * ca * cb
    return Supernumber.from_terms(out, a.budget, a.field)


def rand_sn(rng, budget, field="R", terms=4, parity=None, lo=-1.0, hi=1.0):
    from supernum.blades import grade

    masks = [m for m in range(1 << budget)
             if parity is None or grade(m) % 2 == parity]
    t = {}
    for _ in range(int(rng.integers(1, terms + 1))):
        m = int(masks[int(rng.integers(0, len(masks)))])
        c = float(rng.uniform(lo, hi))
        if field == "C":
            c = complex(c, float(rng.uniform(lo, hi)))
        t[m] = t.get(m, 0) + c
    return Supernumber(field, budget, t)


@pytest.fixture
def rng():
    return np.random.default_rng(2024)
