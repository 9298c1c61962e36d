"""Truncated formal power series in t over an exact coefficient ring.

A :class:`Series` stores the coefficients of t^0 .. t^N and is exact modulo
t^(N+1); N is the truncation order.  Coefficients come from either of the
rings in :mod:`apostol.algebra` (rationals or polynomials), so symbolic and
numeric computations share this one implementation.

Arithmetic between two series requires equal truncation orders; callers
truncate first.  Division is valuation-aware: a common power of t is
cancelled from numerator and denominator before inverting the unit part,
which is exactly the mechanism that makes kernels like t/(e^t - 1)
well-defined.  Products use the naive O(N^2) Cauchy convolution; at the
desk-scale orders used here (N <= ~40) that is plenty.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .algebra import CoefficientRing, MathDomainError, RATIONALS, Scalar, ring_for


class Series:
    """An immutable truncated power series a_0 + a_1 t + ... + a_N t^N."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: CoefficientRing, coeffs: Sequence):
        if not coeffs:
            raise ValueError("a series needs at least the t^0 coefficient")
        self.ring = ring
        self.coeffs = tuple(coeffs)

    # -- constructors --------------------------------------------------------

    @staticmethod
    def constant(value, order: int, ring: CoefficientRing | None = None) -> "Series":
        ring = ring or ring_for(value)
        zero = ring.zero()
        coeffs = [zero] * (order + 1)
        coeffs[0] = lift_into(ring, value)
        return Series(ring, coeffs)

    @staticmethod
    def zero(order: int, ring: CoefficientRing = RATIONALS) -> "Series":
        return Series(ring, [ring.zero()] * (order + 1))

    @staticmethod
    def one(order: int, ring: CoefficientRing = RATIONALS) -> "Series":
        return Series.constant(1, order, ring)

    @staticmethod
    def monomial(coeff, power: int, order: int, ring: CoefficientRing | None = None) -> "Series":
        """coeff * t^power, truncated at the given order."""
        if power < 0:
            raise ValueError("monomial power must be nonnegative")
        ring = ring or ring_for(coeff)
        zero = ring.zero()
        coeffs = [zero] * (order + 1)
        if power <= order:
            coeffs[power] = lift_into(ring, coeff)
        return Series(ring, coeffs)

    @staticmethod
    def exp_monomial(coeff, power: int, order: int, ring: CoefficientRing | None = None) -> "Series":
        """exp(coeff * t^power) = sum_k coeff^k t^(k*power) / k!.

        ``power`` must be >= 1.  The coefficient may be a rational or a
        polynomial (e.g. the symbolic x in e^{xt}).
        """
        if power < 1:
            raise ValueError("exponent power must be >= 1")
        ring = ring or ring_for(coeff)
        c = lift_into(ring, coeff)
        coeffs = [ring.zero()] * (order + 1)
        ck = ring.one()
        k = 0
        while k * power <= order:
            coeffs[k * power] = ck * ring.from_rational(Fraction(1, math.factorial(k)))
            ck = ck * c
            k += 1
        return Series(ring, coeffs)

    # -- structure -----------------------------------------------------------

    @property
    def order(self) -> int:
        """Truncation order N; the series is exact modulo t^(N+1)."""
        return len(self.coeffs) - 1

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None if all stored
        coefficients vanish (the valuation exceeds the truncation order)."""
        for k, c in enumerate(self.coeffs):
            if not self.ring.is_zero(c):
                return k
        return None

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise ValueError(f"cannot extend a series (have order {self.order}, asked {order})")
        return Series(self.ring, self.coeffs[: order + 1])

    def taylor_coefficient(self, n: int):
        """n! * a_n — the coefficient in the sum f_n t^n / n! convention."""
        if n < 0 or n > self.order:
            raise IndexError(f"index {n} outside truncation order {self.order}")
        return math.factorial(n) * self.coeffs[n]

    def _check_compatible(self, other: "Series") -> None:
        if self.ring is not other.ring:
            raise ValueError("series live over different coefficient rings")
        if self.order != other.order:
            raise ValueError(
                f"truncation orders differ ({self.order} vs {other.order}); truncate first"
            )

    # -- arithmetic ----------------------------------------------------------

    def add(self, other: "Series") -> "Series":
        self._check_compatible(other)
        return Series(self.ring, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def sub(self, other: "Series") -> "Series":
        self._check_compatible(other)
        return Series(self.ring, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, value) -> "Series":
        """Multiply every coefficient by a fixed ring element."""
        c = lift_into(self.ring, value)
        return Series(self.ring, [c * a for a in self.coeffs])

    def mul(self, other: "Series") -> "Series":
        """Cauchy product at the common truncation order."""
        self._check_compatible(other)
        zero = self.ring.zero()
        n = self.order
        a, b = self.coeffs, other.coeffs
        out = [zero] * (n + 1)
        for i, ai in enumerate(a):
            if self.ring.is_zero(ai):
                continue
            for j in range(n + 1 - i):
                bj = b[j]
                if not self.ring.is_zero(bj):
                    out[i + j] = out[i + j] + ai * bj
        return Series(self.ring, out)

    def div(self, den: "Series") -> "Series":
        """Exact quotient q with q * den = self (mod t^(N - v + 1)).

        v is the denominator's valuation; the numerator must vanish to at
        least the same order, and the denominator's first nonzero
        coefficient must be invertible.  The result's truncation order is
        N - v.
        """
        self._check_compatible(den)
        v = den.valuation()
        if v is None:
            raise MathDomainError("division by the zero series")
        num_val = self.valuation()
        if num_val is not None and num_val < v:
            raise MathDomainError(
                f"non-series quotient: numerator valuation {num_val} below denominator valuation {v}"
            )
        if v > 0:
            lead = self.coeffs[:v]
            if any(not self.ring.is_zero(c) for c in lead):
                raise MathDomainError("non-series quotient: numerator valuation below denominator's")
        n = self.order - v
        a = self.coeffs[v:]
        b = den.coeffs[v:]
        inv = self.ring.invert(b[0])
        out = []
        for k in range(n + 1):
            acc = a[k]
            for i in range(1, k + 1):
                acc = acc - b[i] * out[k - i]
            out.append(inv * acc)
        return Series(self.ring, out)

    def int_pow(self, m: int) -> "Series":
        """m-fold product; m = 0 gives the constant-one series."""
        if m < 0:
            raise ValueError("integer power must be nonnegative")
        result = Series.one(self.order, self.ring)
        base = self
        while m:
            if m & 1:
                result = result.mul(base)
            base = base.mul(base)
            m >>= 1
        return result

    def scale_t(self, c: Scalar) -> "Series":
        """Substitute t -> c*t: coefficient k becomes c^k * a_k."""
        factor = Fraction(c) if not isinstance(c, Fraction) else c
        out = []
        ck = Fraction(1)
        for a in self.coeffs:
            out.append(self.ring.from_rational(ck) * a)
            ck *= factor
        return Series(self.ring, out)

    # -- operators, equality, display ----------------------------------------

    __add__ = add
    __sub__ = sub
    __mul__ = mul

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.ring is other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.ring), self.coeffs))

    def __repr__(self):
        inner = ", ".join(str(c) for c in self.coeffs[:6])
        tail = ", ..." if self.order > 5 else ""
        return f"Series[{self.ring}; N={self.order}]({inner}{tail})"


def lift_into(ring: CoefficientRing, value):
    """Embed ints, Fractions, or ring elements into ``ring``."""
    from .algebra import lift

    return lift(ring, value)
