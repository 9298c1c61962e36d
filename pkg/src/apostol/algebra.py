"""Exact coefficient arithmetic: rational scalars and a small polynomial ring.

Every number that flows through this package is an exact rational
(:class:`fractions.Fraction`); there is no floating point anywhere on the
computation path.  Symbolic coefficient tables live in :class:`PolyXY`, a
sparse polynomial ring over the fixed indeterminate set ``{x, y, X, Y}``
with rational coefficients.

Both coefficient domains are exposed to the series layer through a tiny
ring contract (:class:`CoefficientRing`): the elements themselves carry the
arithmetic via operators, the ring object only supplies constants,
embedding of rationals, and (partial) inversion.  The singletons
:data:`RATIONALS` and :data:`POLYNOMIALS` are the two rings in use.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping, Union

#: The fixed indeterminates, in canonical order.
VARIABLES = ("x", "y", "X", "Y")

#: Exponent vector: one entry per variable in VARIABLES order.
Exponent = tuple[int, int, int, int]

_ZERO_EXP: Exponent = (0, 0, 0, 0)

Scalar = Union[int, Fraction]


class MathDomainError(ArithmeticError):
    """An exact operation left its mathematical domain.

    Raised for non-series quotients (numerator valuation below the
    denominator's), non-invertible leading coefficients, and singular
    kernel parameter combinations.  Distinct from usage errors
    (ValueError and friends) so callers can map it to a dedicated
    exit code.
    """


def make_rational(p: int, q: int = 1) -> Fraction:
    """Return the canonical rational p/q.

    The result always has a positive denominator and gcd(|p|, q) = 1;
    q = 0 raises ZeroDivisionError.
    """
    return Fraction(p, q)


def binomial(n: int, k: int) -> int:
    """Binomial coefficient C(n, k); 0 when k > n or k < 0."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def _as_fraction(value: Scalar) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an int or Fraction, got {type(value).__name__}")


class PolyXY:
    """Sparse polynomial in x, y, X, Y over the rationals.

    Terms are stored as a map from exponent vectors to nonzero rational
    coefficients; zero terms are never kept, so structural equality of the
    term maps is polynomial equality.  Instances are immutable and hashable.

    The usual operators are supported, with ints and Fractions coerced to
    constant polynomials::

        >>> x, y = PolyXY.variable("x"), PolyXY.variable("y")
        >>> str((x + y) * (x - y))
        'x^2 - y^2'
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, Fraction]):
        self._terms = {e: c for e, c in terms.items() if c != 0}
        self._hash: int | None = None

    @staticmethod
    def zero() -> "PolyXY":
        return PolyXY({})

    @staticmethod
    def one() -> "PolyXY":
        return PolyXY({_ZERO_EXP: Fraction(1)})

    @staticmethod
    def constant(value: Scalar) -> "PolyXY":
        return PolyXY({_ZERO_EXP: _as_fraction(value)})

    @staticmethod
    def variable(name: str) -> "PolyXY":
        if name not in VARIABLES:
            raise ValueError(f"unknown indeterminate {name!r}; expected one of {VARIABLES}")
        exp = [0, 0, 0, 0]
        exp[VARIABLES.index(name)] = 1
        return PolyXY({tuple(exp): Fraction(1)})

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        """A copy of the term map (exponent vector -> nonzero coefficient)."""
        return dict(self._terms)

    def is_constant(self) -> bool:
        return all(e == _ZERO_EXP for e in self._terms)

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial; raises otherwise."""
        if not self.is_constant():
            raise MathDomainError(f"{self} is not a constant polynomial")
        return self._terms.get(_ZERO_EXP, Fraction(0))

    def variables_used(self) -> tuple[str, ...]:
        used = [False, False, False, False]
        for exp in self._terms:
            for i, e in enumerate(exp):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(VARIABLES, used) if u)

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other) -> "PolyXY | None":
        if isinstance(other, PolyXY):
            return other
        if isinstance(other, (int, Fraction)):
            return PolyXY.constant(other)
        return None

    def __add__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        terms = dict(self._terms)
        for exp, coeff in rhs._terms.items():
            acc = terms.get(exp, Fraction(0)) + coeff
            if acc:
                terms[exp] = acc
            else:
                terms.pop(exp, None)
        return PolyXY(terms)

    __radd__ = __add__

    def __neg__(self):
        return PolyXY({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs + (-self)

    def __mul__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in rhs._terms.items():
                exp = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
                acc = terms.get(exp, Fraction(0)) + c1 * c2
                if acc:
                    terms[exp] = acc
                else:
                    terms.pop(exp, None)
        return PolyXY(terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = PolyXY.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self._terms == rhs._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- evaluation and printing -------------------------------------------

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        """Evaluate at a rational point.

        ``point`` must assign every indeterminate that actually appears;
        a missing assignment raises ValueError.
        """
        missing = [v for v in self.variables_used() if v not in point]
        if missing:
            raise ValueError(f"no value assigned for {', '.join(missing)}")
        values = {v: _as_fraction(point[v]) for v in point if v in VARIABLES}
        total = Fraction(0)
        for exp, coeff in self._terms.items():
            term = coeff
            for var, e in zip(VARIABLES, exp):
                if e:
                    term *= values[var] ** e
            total += term
        return total

    @staticmethod
    def _print_order(exp: Exponent):
        # graded lexicographic, highest degree first, x-major within a degree
        return (-sum(exp), tuple(-e for e in exp))

    @staticmethod
    def _monomial_str(exp: Exponent) -> str:
        parts = []
        for var, e in zip(VARIABLES, exp):
            if e == 1:
                parts.append(var)
            elif e > 1:
                parts.append(f"{var}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces: list[str] = []
        for exp in sorted(self._terms, key=self._print_order):
            coeff = self._terms[exp]
            mono = self._monomial_str(exp)
            mag = abs(coeff)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            if not pieces:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"PolyXY({str(self)})"


# -- ring contract ----------------------------------------------------------


class CoefficientRing:
    """Constants, rational embedding, and partial inversion for a coefficient domain.

    Elements carry their own arithmetic through operators; series code only
    needs the ring object to manufacture constants and invert leading
    coefficients during division.
    """

    name: str

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def from_rational(self, value: Scalar):
        raise NotImplementedError

    def invert(self, element):
        raise NotImplementedError

    def is_zero(self, element) -> bool:
        return element == self.zero()

    def __repr__(self):
        return self.name


class RationalRing(CoefficientRing):
    name = "Q"

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def from_rational(self, value: Scalar) -> Fraction:
        return _as_fraction(value)

    def invert(self, element: Fraction) -> Fraction:
        if element == 0:
            raise MathDomainError("division by zero coefficient")
        return 1 / _as_fraction(element)


class PolynomialRing(CoefficientRing):
    name = "Q[x,y,X,Y]"

    def zero(self) -> PolyXY:
        return PolyXY.zero()

    def one(self) -> PolyXY:
        return PolyXY.one()

    def from_rational(self, value: Scalar) -> PolyXY:
        return PolyXY.constant(value)

    def invert(self, element: PolyXY) -> PolyXY:
        # only constants are units in Q[x,y,X,Y]
        c = element.constant_value()
        if c == 0:
            raise MathDomainError("division by zero coefficient")
        return PolyXY.constant(1 / c)


RATIONALS = RationalRing()
POLYNOMIALS = PolynomialRing()


def ring_for(*values) -> CoefficientRing:
    """The smallest ring containing the given coefficient values."""
    if any(isinstance(v, PolyXY) for v in values):
        return POLYNOMIALS
    return RATIONALS


def lift(ring: CoefficientRing, value) -> object:
    """Embed a scalar (or polynomial) into ``ring``."""
    if isinstance(value, PolyXY):
        if isinstance(ring, PolynomialRing):
            return value
        raise TypeError("cannot lower a polynomial into the rational ring")
    if isinstance(ring, PolynomialRing):
        return PolyXY.constant(value)
    return _as_fraction(value)
