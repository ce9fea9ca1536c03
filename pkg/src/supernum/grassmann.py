"""Supernumbers: exact arithmetic in a finitely generated Grassmann algebra.

A supernumber is a finite linear combination of blades z^I over R or C,
stored sparsely as {bitmask: coefficient}.  With N generators this is an
exact subalgebra of the infinitely generated algebra: products never
leave it, so the algebraic identities below hold up to float rounding
only.  The norm is the l1 norm of the coefficients, which makes the
algebra a Banach algebra (``norm(a*b) <= norm(a)*norm(b)``).
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass

from .blades import MAX_BUDGET, grade, indices_from_mask, mask_from_indices, merge_sign
from .errors import IncompatibleOperands, NotInvertible


def default_budget():
    """Generator budget used when none is given (env SUPERNUM_BUDGET)."""
    return int(os.environ.get("SUPERNUM_BUDGET", "8"))


class Parity(enum.Enum):
    EVEN = 0
    ODD = 1
    MIXED = 2


@dataclass(frozen=True)
class Tolerance:
    """Combined absolute/relative comparison tolerance."""

    abs_eps: float = 1e-12
    rel_eps: float = 1e-9

    def __post_init__(self):
        for v in (self.abs_eps, self.rel_eps):
            if not (math.isfinite(v) and v >= 0):
                raise ValueError(f"tolerances must be finite and >= 0, got {v}")

    def close(self, a, b, scale=0.0):
        return abs(a - b) <= self.abs_eps + self.rel_eps * max(abs(a), abs(b), scale)


DEFAULT_TOL = Tolerance()


def _coerce(value, field):
    if field == "R":
        if isinstance(value, complex):
            if value.imag != 0.0:
                raise IncompatibleOperands(f"complex coefficient {value} in a real algebra")
            return float(value.real)
        return float(value)
    return complex(value)


class Supernumber:
    """Immutable sparse supernumber over a fixed generator budget.

    Construct via :meth:`scalar`, :meth:`zeta`, :meth:`from_terms` or the
    arithmetic operators.  ``terms`` maps blade bitmasks to nonzero
    coefficients; the empty blade (mask 0) is the body.
    """

    __slots__ = ("field", "budget", "_terms")

    def __init__(self, field, budget, terms):
        if field not in ("R", "C"):
            raise ValueError(f"field must be 'R' or 'C', got {field!r}")
        if not (1 <= budget <= MAX_BUDGET):
            raise ValueError(f"budget must be in 1..{MAX_BUDGET}, got {budget}")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "budget", budget)
        clean = {m: c for m, c in terms.items() if c != 0}
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("Supernumber is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def scalar(cls, value, budget=None, field="R"):
        budget = default_budget() if budget is None else budget
        return cls(field, budget, {0: _coerce(value, field)})

    @classmethod
    def zero(cls, budget=None, field="R"):
        budget = default_budget() if budget is None else budget
        return cls(field, budget, {})

    @classmethod
    def zeta(cls, i, budget=None, field="R"):
        """The generator z[i]."""
        budget = default_budget() if budget is None else budget
        return cls(field, budget, {mask_from_indices((i,), budget): _coerce(1, field)})

    @classmethod
    def from_terms(cls, terms, budget=None, field="R"):
        """Build from {index-tuple: coefficient}, e.g. {(): 2, (1, 2): 0.5}."""
        budget = default_budget() if budget is None else budget
        by_mask = {}
        for idx, c in terms.items():
            m = mask_from_indices(tuple(idx), budget)
            by_mask[m] = by_mask.get(m, _coerce(0, field)) + _coerce(c, field)
        return cls(field, budget, by_mask)

    # -- accessors ----------------------------------------------------

    def terms(self):
        """Stored (bitmask, coefficient) pairs in increasing mask order."""
        return sorted(self._terms.items())

    def coefficient(self, indices):
        return self._terms.get(mask_from_indices(tuple(indices), self.budget),
                               _coerce(0, self.field))

    @property
    def body(self):
        return self._terms.get(0, _coerce(0, self.field))

    def soul(self):
        return Supernumber(self.field, self.budget,
                           {m: c for m, c in self._terms.items() if m != 0})

    def norm(self):
        return float(sum(abs(c) for c in self._terms.values()))

    def soul_norm(self):
        return float(sum(abs(c) for m, c in self._terms.items() if m != 0))

    def is_zero(self):
        return not self._terms

    def is_even(self):
        return all(grade(m) % 2 == 0 for m in self._terms)

    def is_odd(self):
        return all(grade(m) % 2 == 1 for m in self._terms)

    @property
    def parity(self):
        """EVEN / ODD / MIXED; the zero supernumber reports EVEN."""
        if self.is_even():
            return Parity.EVEN
        if self.is_odd():
            return Parity.ODD
        return Parity.MIXED

    # -- arithmetic ---------------------------------------------------

    def _check_compat(self, other):
        if self.budget != other.budget or self.field != other.field:
            raise IncompatibleOperands(
                f"operands disagree: budget {self.budget} vs {other.budget}, "
                f"field {self.field} vs {other.field}"
            )

    def __add__(self, other):
        if not isinstance(other, Supernumber):
            other = Supernumber.scalar(other, self.budget, self.field)
        self._check_compat(other)
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms.get(m, 0) + c
        return Supernumber(self.field, self.budget, terms)

    __radd__ = __add__

    def __neg__(self):
        return Supernumber(self.field, self.budget,
                           {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Supernumber):
            other = Supernumber.scalar(other, self.budget, self.field)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Supernumber):
            c = _coerce(other, self.field)
            return Supernumber(self.field, self.budget,
                               {m: v * c for m, v in self._terms.items()})
        self._check_compat(other)
        acc = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                s = merge_sign(ma, mb)
                if s == 0:
                    continue
                m = ma | mb
                acc[m] = acc.get(m, 0) + s * ca * cb
        return Supernumber(self.field, self.budget, acc)

    def __rmul__(self, other):
        # scalars from the field commute with everything
        return self.__mul__(other)

    def __truediv__(self, other):
        if isinstance(other, Supernumber):
            return self * invert(other)
        return self * (1.0 / other)

    def __eq__(self, other):
        """Tolerance-based equality at the default tolerance, never bitwise."""
        if not isinstance(other, Supernumber):
            other = Supernumber.scalar(other, self.budget, self.field)
        return self.approx_eq(other, DEFAULT_TOL)

    __hash__ = None

    def approx_eq(self, other, tol=DEFAULT_TOL):
        self._check_compat(other)
        scale = max(self.norm(), other.norm())
        masks = set(self._terms) | set(other._terms)
        return all(
            tol.close(self._terms.get(m, 0), other._terms.get(m, 0), scale)
            for m in masks
        )

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.terms():
            mono = "" if m == 0 else "z[" + ",".join(map(str, indices_from_mask(m))) + "]"
            if isinstance(c, complex):
                coeff = f"({c.real:g}{c.imag:+g}j)"
            else:
                coeff = f"{c:g}"
            parts.append(f"{coeff}*{mono}" if mono else coeff)
        return " + ".join(parts).replace("+ -", "- ")


# -- module-level operations ------------------------------------------


def mul(a, b):
    """Grassmann product; bilinear, with anticommuting generators."""
    return a * b


def norm(z):
    """Sum of coefficient magnitudes."""
    return z.norm()


def body_soul(z):
    """Split z = body + soul; the soul is nilpotent within the budget."""
    return z.body, z.soul()


def parity_project(z, target):
    """Keep the terms whose blade length has the given parity."""
    want = 0 if target == Parity.EVEN else 1
    return Supernumber(z.field, z.budget,
                       {m: c for m, c in z._terms.items() if grade(m) % 2 == want})


def even_part(z):
    return parity_project(z, Parity.EVEN)


def odd_part(z):
    return parity_project(z, Parity.ODD)


def invert(z, tol=DEFAULT_TOL):
    """Exact inverse 1/z = (1/z_B) * sum_k (-z_S/z_B)**k.

    The series terminates because each soul power raises the minimal
    blade grade; it is cut off at the generator budget.
    """
    b = z.body
    if abs(b) <= tol.abs_eps:
        raise NotInvertible(f"body {b!r} is below tolerance {tol.abs_eps}")
    w = z.soul() * (-1.0 / b)
    acc = Supernumber.scalar(1, z.budget, z.field)
    power = acc
    for _ in range(z.budget):
        power = power * w
        if power.is_zero():
            break
        acc = acc + power
    return acc * (1.0 / b)
