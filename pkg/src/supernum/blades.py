"""Blade bookkeeping for a finitely generated Grassmann algebra.

A monomial in the anticommuting generators z[1]..z[N] is stored as an
integer bitmask: bit i-1 set means generator i is present.  The empty
mask is the scalar blade.  All sign conventions come from sorting a
concatenated index sequence into increasing order and counting swaps.
"""

from __future__ import annotations

import numpy as np

#: largest budget for which dense blade tables are built (3**N pair table)
MAX_TABLE_BUDGET = 12

#: largest generator budget accepted anywhere
MAX_BUDGET = 64


def mask_from_indices(indices, budget):
    """Bitmask for a strictly increasing index tuple; validates the tuple."""
    mask = 0
    prev = 0
    for i in indices:
        if not isinstance(i, (int, np.integer)):
            raise ValueError(f"generator label {i!r} is not an integer")
        if i <= prev:
            raise ValueError(f"indices must be strictly increasing, got {tuple(indices)}")
        if i > budget:
            raise ValueError(f"generator {i} exceeds budget {budget}")
        mask |= 1 << (i - 1)
        prev = i
    return mask


def indices_from_mask(mask):
    """Sorted generator labels present in the mask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def grade(mask):
    return int(mask).bit_count()


def merge_sign(a, b):
    """Sign of z^a * z^b as +-1, or 0 when the masks overlap.

    Equals (-1)**(number of transpositions needed to interleave the two
    increasing sequences), i.e. (-1)**#{(x,y): x in a, y in b, x > y}.
    """
    if a & b:
        return 0
    swaps = 0
    t = a >> 1
    while t:
        swaps += (t & b).bit_count()
        t >>= 1
    return -1 if swaps & 1 else 1


class BladeTable:
    """Dense multiplication table for budget N <= MAX_TABLE_BUDGET.

    Enumerates the 3**N disjoint blade pairs (i, j) with sign s and
    product blade k = i | j.  The packed kernels contract coefficient
    arrays of length 2**N through these triples.
    """

    def __init__(self, budget):
        if budget > MAX_TABLE_BUDGET:
            raise ValueError(
                f"blade tables limited to budget {MAX_TABLE_BUDGET}, got {budget}"
            )
        self.budget = budget
        self.dim = 1 << budget
        n_pairs = 3**budget
        I = np.empty(n_pairs, dtype=np.int32)
        J = np.empty(n_pairs, dtype=np.int32)
        S = np.empty(n_pairs, dtype=np.float64)
        t = 0
        for i in range(self.dim):
            free = ~i & (self.dim - 1)
            j = free
            while True:
                I[t] = i
                J[t] = j
                S[t] = merge_sign(i, j)
                t += 1
                if j == 0:
                    break
                j = (j - 1) & free
        assert t == n_pairs
        self.I, self.J, self.S = I, J, S
        self.K = (I | J).astype(np.int32)
        grades = np.array([grade(m) for m in range(self.dim)])
        self.even_mask = (grades % 2 == 0)
        self.grades = grades

    def __repr__(self):
        return f"BladeTable(budget={self.budget})"


_TABLE_CACHE = {}


def blade_table(budget):
    tab = _TABLE_CACHE.get(budget)
    if tab is None:
        tab = _TABLE_CACHE[budget] = BladeTable(budget)
    return tab
