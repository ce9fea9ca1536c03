"""Graded vectors in K^{p|q} and supermatrices with block structure.

A supermatrix of shape (p, q) is a (p+q) x (p+q) array of supernumbers
with the usual block decomposition [[A, B], [C, D]]; it is even when A, D
hold even supernumbers and B, C odd ones, odd when the pattern is
flipped.  Entry slots 1..p are even, p+1..p+q odd.

Matrix products dispatch to the packed blade kernels when the generator
budget admits a dense table, and fall back to sparse per-entry products
otherwise.  Packed form is an ndarray of shape (n, n, 2**budget).
"""

from __future__ import annotations

import numpy as np

from . import backend
from .blades import MAX_TABLE_BUDGET, blade_table
from .errors import IncompatibleOperands
from .grassmann import DEFAULT_TOL, Parity, Supernumber, even_part, odd_part

_DTYPES = {"R": np.float64, "C": np.complex128}


def _slot_parity(i, p):
    return 0 if i < p else 1


class SuperVector:
    """Element of K^{p|q}: p even then q odd supernumber entries."""

    __slots__ = ("p", "q", "entries")

    def __init__(self, p, q, entries):
        entries = tuple(entries)
        if len(entries) != p + q:
            raise IncompatibleOperands(f"expected {p + q} entries, got {len(entries)}")
        for i, e in enumerate(entries):
            ok = e.is_even() if _slot_parity(i, p) == 0 else e.is_odd()
            if not ok:
                kind = "even" if _slot_parity(i, p) == 0 else "odd"
                raise IncompatibleOperands(
                    f"entry {i + 1} must be {kind}, got parity {e.parity.name}"
                )
        _check_uniform(entries)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, *a):
        raise AttributeError("SuperVector is immutable")

    @classmethod
    def zero(cls, p, q, budget, field="R"):
        z = Supernumber.zero(budget, field)
        return cls(p, q, [z] * (p + q))

    @property
    def budget(self):
        return self.entries[0].budget

    @property
    def field(self):
        return self.entries[0].field

    def norm(self):
        return float(sum(e.norm() for e in self.entries))

    def __add__(self, other):
        self._check_shape(other)
        return SuperVector(self.p, self.q,
                           [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._check_shape(other)
        return SuperVector(self.p, self.q,
                           [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self):
        return SuperVector(self.p, self.q, [-a for a in self.entries])

    def __mul__(self, alpha):
        """Left scaling by a field scalar or an even supernumber."""
        if isinstance(alpha, Supernumber) and not alpha.is_even():
            raise IncompatibleOperands("K^{p|q} admits scaling by even supernumbers only")
        return SuperVector(self.p, self.q, [alpha * e for e in self.entries])

    __rmul__ = __mul__

    def approx_eq(self, other, tol=DEFAULT_TOL):
        self._check_shape(other)
        return all(a.approx_eq(b, tol) for a, b in zip(self.entries, other.entries))

    def _check_shape(self, other):
        if (self.p, self.q) != (other.p, other.q):
            raise IncompatibleOperands(
                f"shape mismatch: ({self.p},{self.q}) vs ({other.p},{other.q})"
            )

    def __repr__(self):
        return f"SuperVector(p={self.p}, q={self.q}, [" + "; ".join(map(repr, self.entries)) + "])"


def _check_uniform(entries):
    b, f = entries[0].budget, entries[0].field
    for e in entries:
        if e.budget != b or e.field != f:
            raise IncompatibleOperands("entries must share budget and field")


class SuperMatrix:
    """(p+q) x (p+q) supernumber matrix with graded block structure."""

    __slots__ = ("p", "q", "entries", "_packed")

    def __init__(self, p, q, entries):
        n = p + q
        rows = tuple(tuple(r) for r in entries)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise IncompatibleOperands(f"expected {n}x{n} entries")
        _check_uniform([e for r in rows for e in r])
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "_packed", None)

    def __setattr__(self, *a):
        raise AttributeError("SuperMatrix is immutable")

    # -- constructors --------------------------------------------------

    @classmethod
    def zeros(cls, p, q, budget, field="R"):
        z = Supernumber.zero(budget, field)
        n = p + q
        return cls(p, q, [[z] * n for _ in range(n)])

    @classmethod
    def identity(cls, p, q, budget, field="R"):
        z = Supernumber.zero(budget, field)
        one = Supernumber.scalar(1, budget, field)
        n = p + q
        return cls(p, q, [[one if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, p, q, i, j, budget, field="R", value=1):
        """Matrix unit E_ij (1-based indices)."""
        z = Supernumber.zero(budget, field)
        v = Supernumber.scalar(value, budget, field)
        n = p + q
        return cls(p, q, [[v if (r, c) == (i - 1, j - 1) else z for c in range(n)]
                          for r in range(n)])

    @classmethod
    def from_body(cls, arr, p, q, budget, field="R"):
        arr = np.asarray(arr)
        n = p + q
        return cls(p, q, [[Supernumber.scalar(arr[i, j], budget, field)
                           for j in range(n)] for i in range(n)])

    @classmethod
    def from_packed(cls, arr, p, q, budget, field="R"):
        n = p + q
        ents = []
        for i in range(n):
            row = []
            for j in range(n):
                col = arr[i, j]
                terms = {int(m): col[m] for m in np.nonzero(col)[0]}
                row.append(Supernumber(field, budget, terms))
            ents.append(row)
        return cls(p, q, ents)

    # -- accessors ------------------------------------------------------

    @property
    def n(self):
        return self.p + self.q

    @property
    def budget(self):
        return self.entries[0][0].budget

    @property
    def field(self):
        return self.entries[0][0].field

    def entry(self, i, j):
        """1-based entry access."""
        return self.entries[i - 1][j - 1]

    def slot_parity(self, i):
        """Parity of row/column slot i (0-based)."""
        return _slot_parity(i, self.p)

    def is_even(self):
        return all(
            e.is_even() if (self.slot_parity(i) + self.slot_parity(j)) % 2 == 0 else e.is_odd()
            for i, row in enumerate(self.entries) for j, e in enumerate(row)
        )

    def is_odd(self):
        return all(
            e.is_odd() if (self.slot_parity(i) + self.slot_parity(j)) % 2 == 0 else e.is_even()
            for i, row in enumerate(self.entries) for j, e in enumerate(row)
        )

    @property
    def parity(self):
        if self.is_even():
            return Parity.EVEN
        if self.is_odd():
            return Parity.ODD
        return Parity.MIXED

    def norm(self):
        return float(sum(e.norm() for row in self.entries for e in row))

    def body(self):
        """Numeric part as an ndarray."""
        out = np.zeros((self.n, self.n), dtype=_DTYPES[self.field])
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                out[i, j] = e.body
        return out

    def to_packed(self):
        """Dense blade-coefficient array of shape (n, n, 2**budget)."""
        if self._packed is None:
            D = 1 << self.budget
            arr = np.zeros((self.n, self.n, D), dtype=_DTYPES[self.field])
            for i, row in enumerate(self.entries):
                for j, e in enumerate(row):
                    for m, c in e._terms.items():
                        arr[i, j, m] = c
            object.__setattr__(self, "_packed", arr)
        return self._packed

    # -- arithmetic ------------------------------------------------------

    def _check_compat(self, other):
        if (self.p, self.q) != (other.p, other.q):
            raise IncompatibleOperands(
                f"shape mismatch: ({self.p},{self.q}) vs ({other.p},{other.q})"
            )
        if self.budget != other.budget or self.field != other.field:
            raise IncompatibleOperands("budget/field mismatch")

    def __add__(self, other):
        self._check_compat(other)
        return SuperMatrix(self.p, self.q,
                           [[a + b for a, b in zip(ra, rb)]
                            for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._check_compat(other)
        return SuperMatrix(self.p, self.q,
                           [[a - b for a, b in zip(ra, rb)]
                            for ra, rb in zip(self.entries, other.entries)])

    def __neg__(self):
        return SuperMatrix(self.p, self.q, [[-a for a in r] for r in self.entries])

    def __mul__(self, alpha):
        """Entrywise left multiplication by a scalar or supernumber."""
        return SuperMatrix(self.p, self.q, [[alpha * e if isinstance(alpha, Supernumber)
                                             else e * alpha for e in r]
                                            for r in self.entries])

    __rmul__ = __mul__

    def __matmul__(self, other):
        return mat_mul(self, other)

    def approx_eq(self, other, tol=DEFAULT_TOL):
        self._check_compat(other)
        return all(a.approx_eq(b, tol) for ra, rb in zip(self.entries, other.entries)
                   for a, b in zip(ra, rb))

    def __repr__(self):
        rows = ["[" + ", ".join(repr(e) for e in r) + "]" for r in self.entries]
        return f"SuperMatrix(p={self.p}, q={self.q},\n  " + "\n  ".join(rows) + ")"


# -- operations ---------------------------------------------------------


def vec_norm(v):
    """Norm on K^{p|q}: sum of entry norms."""
    return v.norm()


def mat_norm(M):
    """Sum of entry norms; submultiplicative for the matrix product."""
    return M.norm()


def mat_mul(M, N):
    """Supermatrix product, packed kernel when a blade table exists."""
    M._check_compat(N)
    if M.budget <= MAX_TABLE_BUDGET:
        tab = blade_table(M.budget)
        C = backend.matmul(M.to_packed(), N.to_packed(), tab)
        return SuperMatrix.from_packed(C, M.p, M.q, M.budget, M.field)
    n = M.n
    zero = Supernumber.zero(M.budget, M.field)
    ents = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = zero
            for k in range(n):
                acc = acc + M.entries[i][k] * N.entries[k][j]
            row.append(acc)
        ents.append(row)
    return SuperMatrix(M.p, M.q, ents)


def mat_vec(M, v):
    """Apply a supermatrix to a K^{p|q} vector: (Mv)_i = sum_j M_ij v_j.

    For even M the result is again in K^{p|q}; mixed-parity images are
    rejected by the SuperVector invariant.
    """
    if (M.p, M.q) != (v.p, v.q):
        raise IncompatibleOperands("matrix and vector shapes differ")
    ents = []
    for i in range(M.n):
        acc = Supernumber.zero(M.budget, M.field)
        for j in range(M.n):
            acc = acc + M.entries[i][j] * v.entries[j]
        ents.append(acc)
    return SuperVector(v.p, v.q, ents)


def matrix_parity_project(M, target):
    """Even/odd part of a supermatrix relative to its block structure."""
    ents = []
    for i, row in enumerate(M.entries):
        out_row = []
        for j, e in enumerate(row):
            diag = (M.slot_parity(i) + M.slot_parity(j)) % 2 == 0
            if target == Parity.EVEN:
                out_row.append(even_part(e) if diag else odd_part(e))
            else:
                out_row.append(odd_part(e) if diag else even_part(e))
        ents.append(out_row)
    return SuperMatrix(M.p, M.q, ents)


def module_scale(alpha, M):
    """Left module action of a supernumber on a supermatrix.

    Supermatrices represent left endomorphisms, so scaling is operator
    scaling (alpha M)(v) = alpha M(v); on right-coordinate entries that
    is (alpha M)_ij = (-1)^(eps(alpha) eps_i) alpha M_ij.  This twist is
    what makes the supercommutator left-linear, [alpha X, Y] = alpha [X, Y].
    """
    a_even, a_odd = even_part(alpha), odd_part(alpha)
    ents = []
    for i, row in enumerate(M.entries):
        row_sign = -1 if M.slot_parity(i) else 1
        ents.append([a_even * e + (a_odd * e) * row_sign for e in row])
    return SuperMatrix(M.p, M.q, ents)


def right_action(v, alpha):
    """Induced right module action v * alpha = (-1)^(eps(v) eps(alpha)) alpha * v.

    Works on supernumbers and supermatrices of any parity (by bilinear
    parity decomposition) and on K^{p|q} vectors for even alpha.  For
    supermatrices "alpha * v" is the module action of
    :func:`module_scale`, so [X, Y * alpha] = [X, Y] * alpha holds.
    """
    if isinstance(v, SuperVector):
        if not alpha.is_even():
            raise IncompatibleOperands(
                "right action on K^{p|q} vectors requires an even supernumber"
            )
        return SuperVector(v.p, v.q, [alpha * e for e in v.entries])

    a_even, a_odd = even_part(alpha), odd_part(alpha)
    if isinstance(v, Supernumber):
        v_even, v_odd = even_part(v), odd_part(v)
        # sign is -1 only on the odd/odd pairing
        return a_even * v_even + a_even * v_odd + a_odd * v_even - (a_odd * v_odd)
    if isinstance(v, SuperMatrix):
        v_even = matrix_parity_project(v, Parity.EVEN)
        v_odd = matrix_parity_project(v, Parity.ODD)
        out = module_scale(a_even, v_even) + module_scale(a_even, v_odd)
        out = out + module_scale(a_odd, v_even) - module_scale(a_odd, v_odd)
        return out
    raise TypeError(f"unsupported module element {type(v).__name__}")


def even_coords(M):
    """Coordinates of an even supermatrix as a K^{r|s} vector.

    Even slots scan the diagonal blocks (A then D) row-major; odd slots
    scan the off-diagonal blocks (B then C) row-major.
    """
    even, odd = [], []
    for i, row in enumerate(M.entries):
        for j, e in enumerate(row):
            if (M.slot_parity(i) + M.slot_parity(j)) % 2 == 0:
                even.append(e)
            else:
                odd.append(e)
    return SuperVector(len(even), len(odd), even + odd)


def from_even_coords(vec, p, q):
    """Inverse of :func:`even_coords` for shape (p, q)."""
    n = p + q
    expected = (p * p + q * q, 2 * p * q)
    if (vec.p, vec.q) != expected:
        raise IncompatibleOperands(
            f"coordinate vector has shape ({vec.p},{vec.q}), expected {expected}"
        )
    ev = list(vec.entries[:vec.p])
    od = list(vec.entries[vec.p:])
    ents = []
    for i in range(n):
        row = []
        for j in range(n):
            diag = (_slot_parity(i, p) + _slot_parity(j, p)) % 2 == 0
            row.append(ev.pop(0) if diag else od.pop(0))
        ents.append(row)
    return SuperMatrix(p, q, ents)
