"""Independent second routes for cross-checking the main series path.

Nothing in this module is used by production code; it exists so the test
suite can catch systematic errors.  The two family routes deliberately
avoid the main path's division-then-power construction:

* the kernel reciprocal is rebuilt from the finite difference expansion

      1/(lam e^t + 1) = 1/(lam+1) * sum_j (-lam/(lam+1))^j (e^t - 1)^j

  which is exact under truncation because (e^t - 1)^j has valuation j;

* order-m kernels are assembled as an explicit m-fold product of order-1
  kernels instead of a single power.

The module also assembles, directly from series primitives, the symmetric
generating functions whose two expansions *are* the two sides of each
identity shape, so tests can tie the statement-level sums back to their
coefficient streams.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .algebra import MathDomainError, RATIONALS
from .families import BaseKind, FamilyParams, PolySeq, base_phi, classical_reduce
from .identities import IdentityPoint
from .series import Series


def kernel_via_difference_expansion(lam: Fraction, order: int) -> Series:
    """1/(lam e^t + 1) rebuilt without series division; lam = -1 unsupported."""
    lam = Fraction(lam)
    if lam == -1:
        raise MathDomainError("difference expansion needs lam != -1")
    em1 = Series.exp_monomial(1, 1, order) - Series.one(order)
    ratio = -lam / (lam + 1)
    total = Series.zero(order)
    power = Series.one(order)
    weight = Fraction(1, lam + 1)
    for _ in range(order + 1):
        total = total + power.scale(weight)
        power = power.mul(em1)
        weight *= ratio
    return total


def atp_via_factored_product(params: FamilyParams, x, y, n_max: int) -> PolySeq:
    """Family values built from an explicit m-fold product of order-1 kernels."""
    order = params.truncation_order(n_max)
    prefactor = Series.monomial(Fraction(2) ** params.mu, params.nu, order)
    if params.lam == -1:
        denominator = Series.exp_monomial(1, 1, order).scale(params.lam) + Series.one(order)
        unit_kernel = prefactor.div(denominator)
    else:
        unit_kernel = prefactor.mul(kernel_via_difference_expansion(params.lam, order))
    n = unit_kernel.order
    kernel = Series.one(n)
    for _ in range(params.m):
        kernel = kernel.mul(unit_kernel.truncate(n))
    product = kernel.mul(Series.exp_monomial(x, 1, n, RATIONALS))
    product = product.mul(base_phi(params.base, y, n))
    return tuple(product.taylor_coefficient(k) for k in range(n_max + 1))


def genocchi_shift_oracle(m: int, lam: Fraction, x, y, base: BaseKind, n_max: int) -> bool:
    """Check the t^m shift between the Genocchi and Euler kernels.

    True iff G_n = n!/(n-m)! * E_{n-m} for m <= n <= n_max and G_n = 0
    for n < m, at the given arguments.
    """
    gen = classical_reduce("genocchi", m, lam, x, y, base, n_max)
    eul = classical_reduce("euler", m, lam, x, y, base, n_max)
    for n in range(n_max + 1):
        if n < m:
            if gen[n] != 0:
                return False
        elif gen[n] != math.perm(n, m) * eul[n - m]:
            return False
    return True


# -- statement <-> coefficient-stream consistency -------------------------------


def _scaled_phi(base: BaseKind, value: Fraction, scale: int, order: int) -> Series:
    # phi(value, scale*t) via the t -> scale*t substitution (not the scaling law)
    return base_phi(base, value, order).scale_t(Fraction(scale))


def convolution_stream_value(pt: IdentityPoint) -> Fraction:
    """c^(nu*m) d^(nu*m) * n! [t^n] of the convolution shape's symmetric series.

    The series is the ratio whose two expansions give the identity's two
    sides: numerator 2^(mu(2m-1)) t^(nu(2m-1)) e^{cdxt} phi(y,cdt)
    (lam e^{cdt} + 1) e^{cdXt} phi(Y,cdt), denominator
    (lam e^{ct} + 1)^m (lam e^{dt} + 1)^m.
    """
    m, nu, mu, lam, c, d = pt.m, pt.nu, pt.mu, pt.lam, pt.c, pt.d
    order = pt.n + nu * (2 * m - 1) + 2
    cd = c * d
    num = Series.monomial(Fraction(2) ** (mu * (2 * m - 1)), nu * (2 * m - 1), order)
    num = num.mul(Series.exp_monomial(cd * pt.x, 1, order))
    num = num.mul(_scaled_phi(pt.base, pt.y, cd, order))
    num = num.mul(Series.exp_monomial(cd, 1, order).scale(lam) + Series.one(order))
    num = num.mul(Series.exp_monomial(cd * pt.X, 1, order))
    num = num.mul(_scaled_phi(pt.base, pt.Y, cd, order))
    den_c = Series.exp_monomial(c, 1, order).scale(lam) + Series.one(order)
    den_d = Series.exp_monomial(d, 1, order).scale(lam) + Series.one(order)
    stream = num.div(den_c.int_pow(m).mul(den_d.int_pow(m)))
    return Fraction(c) ** (nu * m) * Fraction(d) ** (nu * m) * stream.taylor_coefficient(pt.n)


def product_stream_value(pt: IdentityPoint) -> Fraction:
    """c^(nu*m) d^(nu*m) * n! [t^n] of the product shape's symmetric series.

    Valid as a cross-check of the identity's sides only for odd c and d,
    where the finite geometric expansions match this closed form.
    """
    m, nu, mu, lam, c, d = pt.m, pt.nu, pt.mu, pt.lam, pt.c, pt.d
    order = pt.n + 2 * nu * m + 2
    cd = c * d
    num = Series.monomial(Fraction(2) ** (2 * mu * m), 2 * nu * m, order)
    num = num.mul(Series.exp_monomial(cd * pt.x, 1, order))
    num = num.mul(_scaled_phi(pt.base, pt.y, cd, order))
    num = num.mul(Series.exp_monomial(cd, 1, order).scale(lam ** c) + Series.one(order))
    num = num.mul(Series.exp_monomial(cd, 1, order).scale(lam ** d) + Series.one(order))
    num = num.mul(Series.exp_monomial(cd * pt.X, 1, order))
    num = num.mul(_scaled_phi(pt.base, pt.Y, cd, order))
    den_c = Series.exp_monomial(c, 1, order).scale(lam) + Series.one(order)
    den_d = Series.exp_monomial(d, 1, order).scale(lam) + Series.one(order)
    stream = num.div(den_c.int_pow(m + 1).mul(den_d.int_pow(m + 1)))
    return Fraction(c) ** (nu * m) * Fraction(d) ** (nu * m) * stream.taylor_coefficient(pt.n)
