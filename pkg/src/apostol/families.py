"""Polynomial family builders and (generalized) power sums.

Every sequence here is produced the same way: assemble the family's
generating function from series primitives, then read off the Taylor-style
coefficients F_n = n! * [t^n].

The two-variable families are governed by three ingredients:

* the Apostol kernel ``(2^mu * t^nu / (lam * e^t + 1))^m``,
* the exponential factor ``e^{x t}``,
* a base ``phi(y, t)`` chosen from a small catalogue (:class:`BaseKind`).

Each non-trivial base obeys the scaling law ``phi(y, a t) = phi(a^sc * y, t)``
for its scaling exponent ``sc``; the symmetry identities lean on exactly
this fact, so it is also exposed (and property-tested) here.

Power sums come in four flavours: the plain sums S_k(n) = sum i^k and
M_k(n) = sum (-1)^i i^k (with 0^0 = 1), and their lambda-weighted
generalizations defined through the series ratios

    sum_k S_k(n, lam) t^k / k!  =  (lam e^{(n+1)t} - 1) / (lam e^t - 1)
    sum_k M_k(n, lam) t^k / k!  =  (1 - lam (-e^t)^{n+1}) / (lam e^t + 1)

computed by exact series division (lambda = 1, resp. lambda = -1 with even
n, cancel a common factor of t before inverting).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .algebra import (
    MathDomainError,
    PolyXY,
    RATIONALS,
    CoefficientRing,
    lift,
    ring_for,
)
from .series import Series

Coefficient = Union[int, Fraction, PolyXY]
PolySeq = tuple  # entry n is F_n at the given arguments

_BASE_KINDS = ("unit", "exp", "gould_hopper", "laguerre", "trunc_exp")


@dataclass(frozen=True)
class BaseKind:
    """One choice of the second factor phi(y, t).

    kind        phi(y, t)                      scaling exponent
    ----        ---------                      ----------------
    unit        1                              (unused)
    exp         e^{y t}                        1
    gould_hopper(s)   e^{y t^s}                s
    laguerre(s)       sum_k y^k t^{sk}/(k!)^2  s
    trunc_exp(r)      sum_k y^k t^{rk}         r

    The Laguerre base is the 0th-order Tricomi-Bessel series
    C_0(u) = sum (-u)^k/(k!)^2 evaluated at u = -y t^s; the truncated
    exponential base is the geometric series of 1/(1 - y t^r).
    """

    kind: str
    degree: int = 1

    def __post_init__(self):
        if self.kind not in _BASE_KINDS:
            raise ValueError(f"unknown base kind {self.kind!r}; expected one of {_BASE_KINDS}")
        if self.degree < 1:
            raise ValueError("base degree must be >= 1")

    @property
    def scale_exponent(self) -> int:
        """sc with phi(y, a*t) = phi(a^sc * y, t); 1 for the unit base."""
        if self.kind in ("unit", "exp"):
            return 1
        return self.degree

    def label(self) -> str:
        if self.kind in ("unit", "exp"):
            return self.kind
        return f"{self.kind}({self.degree})"


UNIT = BaseKind("unit")
EXP = BaseKind("exp")


def gould_hopper(s: int) -> BaseKind:
    return BaseKind("gould_hopper", s)


def laguerre(s: int) -> BaseKind:
    return BaseKind("laguerre", s)


def trunc_exp(r: int) -> BaseKind:
    return BaseKind("trunc_exp", r)


@dataclass(frozen=True)
class FamilyParams:
    """Identifies one family instance: order m, kernel parameters, and base."""

    m: int
    lam: Fraction
    mu: int
    nu: int
    base: BaseKind = UNIT

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        if self.m < 0:
            raise ValueError("order m must be nonnegative")
        if self.lam == 0:
            raise ValueError("lambda must be nonzero")
        if self.nu < 0:
            raise ValueError("nu must be a nonnegative integer")

    def truncation_order(self, n_max: int) -> int:
        # guard of 2 over the kernel's t^(nu*m) prefactor
        return n_max + self.nu * self.m + 2


def base_phi(base: BaseKind, y: Coefficient, order: int,
             ring: CoefficientRing | None = None) -> Series:
    """The base series phi(y, t) truncated at the given order."""
    ring = ring or ring_for(y)
    return _base_phi_cached(base, _freeze(y, ring), order, ring)


@lru_cache(maxsize=1 << 14)
def _base_phi_cached(base: BaseKind, y, order: int, ring: CoefficientRing) -> Series:
    if base.kind == "unit":
        return Series.one(order, ring)
    if base.kind in ("exp", "gould_hopper"):
        power = 1 if base.kind == "exp" else base.degree
        return Series.exp_monomial(y, power, order, ring)
    step = base.degree
    coeffs = [ring.zero()] * (order + 1)
    yk = ring.one()
    k = 0
    while k * step <= order:
        if base.kind == "laguerre":
            weight = ring.from_rational(Fraction(1, math.factorial(k) ** 2))
        else:  # trunc_exp: geometric series
            weight = ring.one()
        coeffs[k * step] = yk * weight
        yk = yk * y
        k += 1
    return Series(ring, coeffs)


def apostol_kernel(m: int, lam: Fraction, mu: int, nu: int, order: int,
                   ring: CoefficientRing = RATIONALS) -> Series:
    """(2^mu * t^nu / (lam * e^t + 1))^m, exact to the returned order.

    For lam != -1 the result keeps the requested truncation order and has
    valuation nu*m.  For lam = -1 the denominator vanishes at t = 0 and one
    power of t is cancelled against the numerator, so nu >= 1 is required
    (when m >= 1) and the returned order is one lower.
    """
    lam = Fraction(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    if m == 0:
        return Series.one(order, ring)
    num = Series.monomial(Fraction(2) ** mu, nu, order, ring)
    den = Series.exp_monomial(1, 1, order, ring).scale(lam) + Series.one(order, ring)
    factor = num.div(den)
    return factor.int_pow(m)


# Sequences for n_max below this floor share one cached series, so sweeping
# n over a grid does not recompute the generating function every time.
_SEQUENCE_FLOOR = 8


def atp_sequence(params: FamilyParams, x: Coefficient, y: Coefficient,
                 n_max: int) -> PolySeq:
    """Values F_n(x, y) for n = 0..n_max of the two-variable family.

    Entry n is n! * [t^n] of kernel * e^{xt} * phi(y, t).  x and y may be
    rationals or PolyXY symbols; the computation runs over whichever ring
    contains them.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    ring = ring_for(x, y)
    frozen = (_freeze(x, ring), _freeze(y, ring))
    values = _atp_cached(params, frozen[0], frozen[1], max(n_max, _SEQUENCE_FLOOR), ring)
    return values[: n_max + 1]


@lru_cache(maxsize=1 << 17)
def _atp_cached(params: FamilyParams, x, y, n_max: int, ring: CoefficientRing) -> PolySeq:
    order = params.truncation_order(n_max)
    kernel = _kernel_cached(params.m, params.lam, params.mu, params.nu, order, ring)
    n = kernel.order
    series = kernel.mul(_exp_x_cached(x, n, ring))
    if params.base.kind != "unit":
        series = series.mul(_base_phi_cached(params.base, y, n, ring))
    return tuple(series.taylor_coefficient(k) for k in range(n_max + 1))


@lru_cache(maxsize=1 << 12)
def _kernel_cached(m: int, lam: Fraction, mu: int, nu: int, order: int,
                   ring: CoefficientRing) -> Series:
    return apostol_kernel(m, lam, mu, nu, order, ring)


@lru_cache(maxsize=1 << 14)
def _exp_x_cached(x, order: int, ring: CoefficientRing) -> Series:
    return Series.exp_monomial(x, 1, order, ring)


def _freeze(value: Coefficient, ring: CoefficientRing):
    """Normalize a coefficient to a canonical hashable ring element."""
    return lift(ring, value)


# -- classical reductions ----------------------------------------------------

_CLASSICAL_KINDS = ("bernoulli", "euler", "genocchi")


def classical_reduce(which: str, m: int, lam: Fraction, x: Coefficient,
                     y: Coefficient, base: BaseKind, n_max: int) -> PolySeq:
    """Apostol Bernoulli/Euler/Genocchi sequences via their kernel maps.

    bernoulli: (-1)^m * F with (lam -> -lam, mu=0, nu=1), the order-m
    Apostol-Bernoulli family (kernel (t/(lam e^t - 1))^m); euler: mu=1,
    nu=0; genocchi: mu=1, nu=1.  lam = 1 gives the classical sequences.
    """
    lam = Fraction(lam)
    if which == "bernoulli":
        seq = atp_sequence(FamilyParams(m, -lam, 0, 1, base), x, y, n_max)
        if m % 2:
            return tuple(-v for v in seq)
        return seq
    if which == "euler":
        return atp_sequence(FamilyParams(m, lam, 1, 0, base), x, y, n_max)
    if which == "genocchi":
        return atp_sequence(FamilyParams(m, lam, 1, 1, base), x, y, n_max)
    raise ValueError(f"unknown classical kind {which!r}; expected one of {_CLASSICAL_KINDS}")


# -- power sums ---------------------------------------------------------------


def power_sum_direct(kind: str, k: int, n: int) -> Fraction:
    """S_k(n) = sum_{i=0}^{n} i^k or M_k(n) = sum_{i=0}^{n} (-1)^i i^k.

    Uses the 0^0 = 1 convention, so S_0(n) = n + 1.
    """
    if kind not in ("S", "M"):
        raise ValueError("kind must be 'S' or 'M'")
    if k < 0 or n < 0:
        raise ValueError("k and n must be nonnegative")
    total = 0
    for i in range(n + 1):
        term = 1 if (i == 0 and k == 0) else i ** k
        if kind == "M" and i % 2:
            term = -term
        total += term
    return Fraction(total)


def gen_power_sum(kind: str, k: int, n: int, lam: Fraction) -> Fraction:
    """The lambda-weighted power sums S_k(n, lam) and M_k(n, lam).

    Computed as k! * [t^k] of the defining series ratio.  lam = 1 (kind S)
    and lam = -1 (kind M, even n) go through valuation cancellation; the
    remaining singular combinations raise MathDomainError.
    """
    table = gen_power_sum_values(kind, n, Fraction(lam), k)
    return table[k]


def gen_power_sum_values(kind: str, n: int, lam: Fraction, k_max: int) -> tuple[Fraction, ...]:
    """S_k(n, lam) (or M_k) for k = 0..k_max, from one series division."""
    if k_max < 0:
        raise ValueError("k must be nonnegative")
    table = _gen_power_sum_cached(kind, n, Fraction(lam), max(k_max, _SEQUENCE_FLOOR))
    return table[: k_max + 1]


@lru_cache(maxsize=1 << 14)
def _gen_power_sum_cached(kind: str, n: int, lam: Fraction, k_max: int) -> tuple[Fraction, ...]:
    if kind not in ("S", "M"):
        raise ValueError("kind must be 'S' or 'M'")
    if k_max < 0 or n < 0:
        raise ValueError("k and n must be nonnegative")
    lam = Fraction(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    order = k_max + 1
    e_big = Series.exp_monomial(n + 1, 1, order)
    one = Series.one(order)
    if kind == "S":
        num = e_big.scale(lam) - one
        den = Series.exp_monomial(1, 1, order).scale(lam) - one
    else:
        sign = Fraction(-1) ** (n + 1)
        num = one - e_big.scale(lam * sign)
        den = Series.exp_monomial(1, 1, order).scale(lam) + one
    quotient = num.div(den)
    return tuple(quotient.taylor_coefficient(k) for k in range(k_max + 1))


def clear_caches() -> None:
    """Drop all memoized series and sequences (mainly for tests)."""
    _atp_cached.cache_clear()
    _kernel_cached.cache_clear()
    _exp_x_cached.cache_clear()
    _base_phi_cached.cache_clear()
    _gen_power_sum_cached.cache_clear()
