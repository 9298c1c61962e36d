"""Registry of symmetry identities and the exact grid verifier.

Every identity in the catalogue is an equality of two multi-indexed
convolution sums that trade the roles of two positive integers c and d.
They come in two shapes:

* the **convolution shape** (tags ``thm21``, ``cor31/33/35``, and the first
  half of every table row): an order-m family convolved with generalized
  power sums and an order-(m-1) family,

      lhs = sum_k C(n,k) c^(n-k) d^(nu+k) F[m]_{n-k}(d*x, d^sc*y)
                  * sum_l C(k,l) S_l(c-1; -lam) F[m-1]_{k-l}(c*X, c^sc*Y)

  and rhs the same expression with c and d exchanged;

* the **product shape** (tags ``thm22``, ``cor32/34/36``, second half of the
  table rows): a double sum over shifted arguments,

      lhs = sum_k C(n,k) sum_{i<c} sum_{j<d} (-lam)^(i+j) c^k d^(n-k)
                  * F[m]_k(d*x + (d/c)*i, d^sc*y)
                  * F[m]_{n-k}(c*X + (c/d)*j, c^sc*Y)

  and rhs with (c, i-range) and (d, j-range) exchanged.  The product shape
  is proved through a finite geometric expansion that matches its closed
  form only for odd c and d; the identity itself holds at every parity
  (both sides expand the same product of geometric sums), and the verifier
  evaluates any parity so reports document this empirically.

``lam`` above is always the lambda sitting inside the kernel
``(2^mu t^nu / (lam e^t + 1))^m``.  Table rows substitute a family for F:
the Bernoulli rows map lambda -> -lambda with sign (-1)^m (so their power
sums come out as S_l(.; +lambda)), the Euler and Genocchi rows keep lambda
(power sums S_l(.; -lambda), which is the alternating sum M_l(.; lambda)
whenever the count is even).

All checks are exact equalities of rationals; there is no tolerance
anywhere.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .algebra import MathDomainError, binomial
from .families import (
    BaseKind,
    EXP,
    FamilyParams,
    UNIT,
    atp_sequence,
    classical_reduce,
    gen_power_sum_values,
    gould_hopper,
    laguerre,
    trunc_exp,
)

SHAPE_CONVOLUTION = "thm21"
SHAPE_PRODUCT = "thm22"
_SHAPES = (SHAPE_CONVOLUTION, SHAPE_PRODUCT)


@dataclass(frozen=True)
class IdentityPoint:
    """One evaluation point of an identity.

    ``shape`` selects the convolution or product form (relevant for table
    tags, which cover both).  ``mu``/``nu`` are the kernel parameters; for
    table tags they are pinned by the row.  ``lam`` is the row-level
    lambda (the Bernoulli rows map it to -lambda internally).
    """

    shape: str
    n: int
    m: int
    c: int
    d: int
    lam: Fraction
    mu: int
    nu: int
    base: BaseKind
    x: Fraction
    y: Fraction
    X: Fraction
    Y: Fraction

    def __post_init__(self):
        if self.shape not in _SHAPES:
            raise ValueError(f"unknown shape {self.shape!r}")
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if self.c < 1 or self.d < 1:
            raise ValueError("c and d must be positive integers")
        for field in ("lam", "x", "y", "X", "Y"):
            object.__setattr__(self, field, Fraction(getattr(self, field)))

    def swapped_cd(self) -> "IdentityPoint":
        """The same point with the roles of c and d exchanged."""
        return IdentityPoint(self.shape, self.n, self.m, self.d, self.c, self.lam,
                             self.mu, self.nu, self.base, self.x, self.y, self.X, self.Y)

    def sort_key(self):
        return (self.shape, self.base.kind, self.base.degree, self.mu, self.nu,
                self.m, self.n, self.c, self.d, self.lam, self.x, self.y, self.X, self.Y)

    def to_json_dict(self) -> dict:
        return {
            "shape": self.shape,
            "base": self.base.kind,
            "degree": self.base.degree,
            "mu": self.mu,
            "nu": self.nu,
            "m": self.m,
            "n": self.n,
            "c": self.c,
            "d": self.d,
            "lambda": str(self.lam),
            "x": str(self.x),
            "y": str(self.y),
            "X": str(self.X),
            "Y": str(self.Y),
        }

    @staticmethod
    def from_json_dict(data: dict, tag: str) -> "IdentityPoint":
        """Build a point from its JSON form, filling tag-pinned fields."""
        spec = identity_spec(tag)
        shape = data.get("shape")
        if shape is None:
            if len(spec.shapes) != 1:
                raise ValueError(f"identity {tag} covers both shapes; point needs a 'shape'")
            shape = spec.shapes[0]
        base_kind = data.get("base")
        if base_kind is None:
            if spec.base_kind is not None:
                base_kind = spec.base_kind
            else:
                raise ValueError(f"identity {tag} needs an explicit 'base' per point")
        base = BaseKind(base_kind, int(data.get("degree", 1)))
        mu, nu = spec.pinned_mu_nu if spec.pinned_mu_nu else (data.get("mu"), data.get("nu"))
        if mu is None or nu is None:
            raise ValueError(f"identity {tag} needs explicit 'mu' and 'nu' per point")
        lam = Fraction(data["lambda"]) if spec.lam_fixed is None else Fraction(spec.lam_fixed)
        return IdentityPoint(
            shape=shape,
            n=int(data["n"]),
            m=int(data["m"]),
            c=int(data["c"]),
            d=int(data["d"]),
            lam=lam,
            mu=int(mu),
            nu=int(nu),
            base=base,
            x=Fraction(data.get("x", _SAMPLE_X)),
            y=Fraction(data.get("y", _SAMPLE_Y)),
            X=Fraction(data.get("X", _SAMPLE_XX)),
            Y=Fraction(data.get("Y", _SAMPLE_YY)),
        )


# -- family plumbing ----------------------------------------------------------

_FAMILY_KINDS = ("atp", "bernoulli", "euler", "genocchi")
_ROW_MU_NU = {"bernoulli": (0, 1), "euler": (1, 0), "genocchi": (1, 1)}


def _family_values(kind: str, order: int, lam: Fraction, mu: int, nu: int,
                   base: BaseKind, u: Fraction, v: Fraction, n_max: int) -> tuple:
    """F_0..F_{n_max} at arguments (u, v) for the requested family and order."""
    if kind == "atp":
        return atp_sequence(FamilyParams(order, lam, mu, nu, base), u, v, n_max)
    return classical_reduce(kind, order, lam, u, v, base, n_max)


def _kernel_lambda(kind: str, lam: Fraction) -> Fraction:
    """The lambda inside (lam e^t + 1) after the row's substitution."""
    return -lam if kind == "bernoulli" else lam


def _effective_mu_nu(kind: str, mu: int, nu: int) -> tuple[int, int]:
    if kind == "atp":
        return mu, nu
    return _ROW_MU_NU[kind]


# -- the two shapes -----------------------------------------------------------


_INNER_FLOOR = 8  # grids sweep n 0..8; share one cached table across them


def _conv_inner(kind: str, m: int, lam: Fraction, mu: int, nu: int, base: BaseKind,
                a: int, XX: Fraction, YY: Fraction, k_max: int) -> tuple:
    """W[k] = sum_l C(k,l) S_l(a-1; -kernel_lam) F[m-1]_{k-l}(a*X, a^sc*Y)."""
    table = _conv_inner_cached(kind, m, lam, mu, nu, base, a, XX, YY,
                               max(k_max, _INNER_FLOOR))
    return table[: k_max + 1]


@lru_cache(maxsize=1 << 16)
def _conv_inner_cached(kind: str, m: int, lam: Fraction, mu: int, nu: int,
                       base: BaseKind, a: int, XX: Fraction, YY: Fraction,
                       k_max: int) -> tuple:
    sc = base.scale_exponent
    sums = gen_power_sum_values("S", a - 1, -_kernel_lambda(kind, lam), k_max)
    flo = _family_values(kind, m - 1, lam, mu, nu, base,
                         a * XX, Fraction(a) ** sc * YY, k_max)
    out = []
    for k in range(k_max + 1):
        acc = Fraction(0)
        for l in range(k + 1):
            acc += binomial(k, l) * sums[l] * flo[k - l]
        out.append(acc)
    return tuple(out)


def _convolution_side(pt: IdentityPoint, kind: str, a: int, b: int) -> Fraction:
    """One side of the convolution shape; lhs has (a, b) = (c, d)."""
    sc = pt.base.scale_exponent
    _, nu_pow = _effective_mu_nu(kind, pt.mu, pt.nu)
    fhi = _family_values(kind, pt.m, pt.lam, pt.mu, pt.nu, pt.base,
                         b * pt.x, Fraction(b) ** sc * pt.y, pt.n)
    inner = _conv_inner(kind, pt.m, pt.lam, pt.mu, pt.nu, pt.base, a, pt.X, pt.Y, pt.n)
    total = Fraction(0)
    for k in range(pt.n + 1):
        total += (binomial(pt.n, k) * Fraction(a) ** (pt.n - k) * Fraction(b) ** (nu_pow + k)
                  * fhi[pt.n - k] * inner[k])
    return total


def _prod_bracket(kind: str, m: int, lam: Fraction, mu: int, nu: int, base: BaseKind,
                  count: int, scale: int, u: Fraction, v: Fraction, k_max: int) -> tuple:
    """P[k] = sum_{i<count} w^i F[m]_k(scale*u + (scale/count)*i, scale^sc*v),
    with w = -kernel_lambda."""
    table = _prod_bracket_cached(kind, m, lam, mu, nu, base, count, scale, u, v,
                                 max(k_max, _INNER_FLOOR))
    return table[: k_max + 1]


@lru_cache(maxsize=1 << 16)
def _prod_bracket_cached(kind: str, m: int, lam: Fraction, mu: int, nu: int,
                         base: BaseKind, count: int, scale: int,
                         u: Fraction, v: Fraction, k_max: int) -> tuple:
    # Linearity lets the i-sum happen inside the generating function: the
    # bracket is k![t^k] of kernel(t) * (sum_i w^i e^{(scale*u + (scale/count)i) t})
    # * phi(scale^sc * v, t), which costs one series product per bracket
    # instead of one per shift.  Exact, since everything is rational.
    from .families import _base_phi_cached, _kernel_cached  # intra-package caches
    from .algebra import RATIONALS
    from .series import Series

    sc = base.scale_exponent
    klam = _kernel_lambda(kind, lam)
    kmu, knu = _effective_mu_nu(kind, mu, nu)
    params = FamilyParams(m, klam, kmu, knu, base)
    order = params.truncation_order(k_max)
    kernel = _kernel_cached(m, klam, kmu, knu, order, RATIONALS)
    n = kernel.order
    w = -klam
    geo = Series.zero(n)
    wi = Fraction(1)
    for i in range(count):
        shift = scale * u + Fraction(scale, count) * i
        geo = geo + Series.exp_monomial(shift, 1, n).scale(wi)
        wi *= w
    series = kernel.mul(geo)
    if base.kind != "unit":
        series = series.mul(_base_phi_cached(base, Fraction(scale) ** sc * v, n, RATIONALS))
    sign = -1 if (kind == "bernoulli" and m % 2) else 1
    return tuple(sign * series.taylor_coefficient(k) for k in range(k_max + 1))


def _product_side(pt: IdentityPoint, kind: str, a: int, b: int) -> Fraction:
    """One side of the product shape; lhs has (a, b) = (c, d)."""
    p = _prod_bracket(kind, pt.m, pt.lam, pt.mu, pt.nu, pt.base, a, b, pt.x, pt.y, pt.n)
    q = _prod_bracket(kind, pt.m, pt.lam, pt.mu, pt.nu, pt.base, b, a, pt.X, pt.Y, pt.n)
    total = Fraction(0)
    for k in range(pt.n + 1):
        total += (binomial(pt.n, k) * Fraction(a) ** k * Fraction(b) ** (pt.n - k)
                  * p[k] * q[pt.n - k])
    return total


def product_side_literal(pt: IdentityPoint, kind: str, a: int, b: int) -> Fraction:
    """The product shape evaluated as the literal triple sum (no grouping).

    Used by tests to pin the grouped evaluation in :func:`_product_side`
    to the spelled-out formula; over exact rationals the two are equal
    term for term.
    """
    sc = pt.base.scale_exponent
    w = -_kernel_lambda(kind, pt.lam)
    total = Fraction(0)
    for k in range(pt.n + 1):
        for i in range(a):
            for j in range(b):
                left = _family_values(kind, pt.m, pt.lam, pt.mu, pt.nu, pt.base,
                                      b * pt.x + Fraction(b, a) * i,
                                      Fraction(b) ** sc * pt.y, pt.n)[k]
                right = _family_values(kind, pt.m, pt.lam, pt.mu, pt.nu, pt.base,
                                       a * pt.X + Fraction(a, b) * j,
                                       Fraction(a) ** sc * pt.Y, pt.n)[pt.n - k]
                total += (binomial(pt.n, k) * w ** (i + j)
                          * Fraction(a) ** k * Fraction(b) ** (pt.n - k) * left * right)
    return total


def _sides(pt: IdentityPoint, kind: str) -> tuple[Fraction, Fraction]:
    if pt.shape == SHAPE_CONVOLUTION:
        return (_convolution_side(pt, kind, pt.c, pt.d),
                _convolution_side(pt, kind, pt.d, pt.c))
    return (_product_side(pt, kind, pt.c, pt.d),
            _product_side(pt, kind, pt.d, pt.c))


# -- registry -----------------------------------------------------------------


@dataclass(frozen=True)
class IdentitySpec:
    """Descriptor of one identity tag: family substitution and default grid."""

    tag: str
    name: str
    shapes: tuple[str, ...]
    family_kind: str
    base_kind: str | None        # None: sweep the full base catalogue
    pinned_mu_nu: tuple[int, int] | None
    lam_fixed: Fraction | None   # classical rows pin lambda = 1
    lam_defaults: tuple[Fraction, ...]

    def describe(self) -> dict:
        if self.family_kind == "atp":
            kernel = "unified kernel, mu/nu per point"
        elif self.family_kind == "bernoulli":
            kernel = "Bernoulli rows: lambda -> -lambda, mu=0, nu=1, sign (-1)^m"
        elif self.family_kind == "euler":
            kernel = "Euler rows: mu=1, nu=0"
        else:
            kernel = "Genocchi rows: mu=1, nu=1"
        return {
            "tag": self.tag,
            "name": self.name,
            "shapes": list(self.shapes),
            "base": self.base_kind or "any",
            "substitution": kernel,
            "lambda": "fixed 1" if self.lam_fixed is not None else "free nonzero rational",
        }


_GRID_LAMBDAS = (Fraction(2), Fraction(1, 2), Fraction(-2), Fraction(3))
_GRID_LAMBDAS_TBL = _GRID_LAMBDAS + (Fraction(1),)
_GRID_M = (1, 2, 3)
_GRID_N_MAX = 8
_GRID_CD_CONV = (1, 2, 3)
_GRID_CD_PROD = (1, 3, 5)
_GRID_MU_NU = ((0, 1), (1, 0), (1, 1))
_GRID_DEGREES = (1, 2, 3)
_SAMPLE_X = Fraction(1, 2)
_SAMPLE_Y = Fraction(1, 3)
_SAMPLE_XX = Fraction(1, 5)
_SAMPLE_YY = Fraction(2, 7)


def _base_catalogue(kind: str | None) -> tuple[BaseKind, ...]:
    if kind is None:
        bases: list[BaseKind] = [UNIT, EXP]
        for make in (gould_hopper, laguerre, trunc_exp):
            bases.extend(make(s) for s in _GRID_DEGREES)
        return tuple(bases)
    if kind in ("unit", "exp"):
        return (BaseKind(kind),)
    return tuple(BaseKind(kind, s) for s in _GRID_DEGREES)


def _spec(tag: str, name: str, shapes, family_kind: str, base_kind: str | None,
          pinned=None, lam_fixed=None) -> IdentitySpec:
    if lam_fixed is not None:
        lam_defaults: tuple[Fraction, ...] = (Fraction(lam_fixed),)
    elif family_kind == "atp":
        lam_defaults = _GRID_LAMBDAS
    else:
        lam_defaults = _GRID_LAMBDAS_TBL
    return IdentitySpec(tag, name, tuple(shapes), family_kind, base_kind,
                        pinned, lam_fixed, lam_defaults)


_ROW_PINS = {"bernoulli": (0, 1), "euler": (1, 0), "genocchi": (1, 1)}
_ROW_NAMES = {"bernoulli": "Apostol-Bernoulli", "euler": "Apostol-Euler",
              "genocchi": "Apostol-Genocchi"}
_BASE_NAMES = {None: "general base", "gould_hopper": "Gould-Hopper base",
               "laguerre": "Laguerre base", "trunc_exp": "truncated-exponential base"}


def _build_registry() -> dict[str, IdentitySpec]:
    registry: dict[str, IdentitySpec] = {}

    def add(spec: IdentitySpec):
        registry[spec.tag] = spec

    add(_spec("thm21", "convolution symmetry for the unified two-variable family "
                       "(order m against order m-1 with generalized power sums)",
              (SHAPE_CONVOLUTION,), "atp", None))
    add(_spec("thm22", "double-sum product symmetry with shifted arguments for the "
                       "unified two-variable family",
              (SHAPE_PRODUCT,), "atp", None))
    for tag, base_kind, shape in (
        ("cor31", "gould_hopper", SHAPE_CONVOLUTION),
        ("cor32", "gould_hopper", SHAPE_PRODUCT),
        ("cor33", "laguerre", SHAPE_CONVOLUTION),
        ("cor34", "laguerre", SHAPE_PRODUCT),
        ("cor35", "trunc_exp", SHAPE_CONVOLUTION),
        ("cor36", "trunc_exp", SHAPE_PRODUCT),
    ):
        shape_name = "convolution" if shape == SHAPE_CONVOLUTION else "product"
        add(_spec(tag, f"{shape_name} symmetry, {_BASE_NAMES[base_kind]}",
                  (shape,), "atp", base_kind))

    tables = (("tbl21", None), ("tbl31", "gould_hopper"),
              ("tbl32", "laguerre"), ("tbl33", "trunc_exp"))
    for prefix, base_kind in tables:
        for row, suffix in (("bernoulli", "B"), ("euler", "E"), ("genocchi", "G")):
            add(_spec(f"{prefix}_{suffix}",
                      f"{_ROW_NAMES[row]} specialization, {_BASE_NAMES[base_kind]}, both shapes",
                      _SHAPES, row, base_kind, pinned=_ROW_PINS[row]))
    for row, suffix in (("bernoulli", "B"), ("euler", "E"), ("genocchi", "G")):
        name = _ROW_NAMES[row].replace("Apostol-", "classical ")
        add(_spec(f"tbl22_{suffix}", f"{name} specialization (lambda = 1), "
                                     f"general base, both shapes",
                  _SHAPES, row, None, pinned=_ROW_PINS[row], lam_fixed=Fraction(1)))
    return registry


_REGISTRY = _build_registry()


def identity_ids() -> tuple[str, ...]:
    return tuple(sorted(_REGISTRY))


def identity_spec(tag: str) -> IdentitySpec:
    try:
        return _REGISTRY[tag]
    except KeyError:
        raise KeyError(f"unknown identity {tag!r}; run the list command for the catalogue") from None


def sides(tag: str, pt: IdentityPoint) -> tuple[Fraction, Fraction]:
    """Exact left and right side values of the identity at one point."""
    spec = identity_spec(tag)
    if pt.shape not in spec.shapes:
        raise ValueError(f"identity {tag} has no {pt.shape} shape")
    if spec.base_kind is not None and pt.base.kind != spec.base_kind:
        raise ValueError(f"identity {tag} is pinned to base {spec.base_kind}, got {pt.base.kind}")
    if spec.pinned_mu_nu is not None and (pt.mu, pt.nu) != spec.pinned_mu_nu:
        raise ValueError(f"identity {tag} pins (mu, nu) = {spec.pinned_mu_nu}")
    if spec.lam_fixed is not None and pt.lam != spec.lam_fixed:
        raise ValueError(f"identity {tag} pins lambda = {spec.lam_fixed}")
    return _sides(pt, spec.family_kind)


def default_grid(tag: str) -> tuple[IdentityPoint, ...]:
    """The compiled-in verification grid for one identity tag."""
    spec = identity_spec(tag)
    points: list[IdentityPoint] = []
    mu_nu_choices = (spec.pinned_mu_nu,) if spec.pinned_mu_nu else _GRID_MU_NU
    for shape in spec.shapes:
        cd = _GRID_CD_CONV if shape == SHAPE_CONVOLUTION else _GRID_CD_PROD
        for base in _base_catalogue(spec.base_kind):
            for mu, nu in mu_nu_choices:
                for m in _GRID_M:
                    for lam in spec.lam_defaults:
                        for c in cd:
                            for d in cd:
                                for n in range(_GRID_N_MAX + 1):
                                    points.append(IdentityPoint(
                                        shape, n, m, c, d, lam, mu, nu, base,
                                        _SAMPLE_X, _SAMPLE_Y, _SAMPLE_XX, _SAMPLE_YY))
    return tuple(points)


# -- verification reports ------------------------------------------------------


@dataclass(frozen=True)
class PointResult:
    point: IdentityPoint
    lhs: Fraction | None
    rhs: Fraction | None
    passed: bool
    error: str | None = None

    def to_json_dict(self) -> dict:
        record = {
            "point": self.point.to_json_dict(),
            "lhs": None if self.lhs is None else str(self.lhs),
            "rhs": None if self.rhs is None else str(self.rhs),
            "pass": self.passed,
        }
        if self.error is not None:
            record["error"] = self.error
        return record


@dataclass(frozen=True)
class VerificationReport:
    identity: str
    results: tuple[PointResult, ...]

    @property
    def total(self) -> int:
        return len(self.results)

    @property
    def passed(self) -> int:
        return sum(1 for r in self.results if r.passed)

    @property
    def failed(self) -> int:
        return sum(1 for r in self.results if not r.passed and r.error is None)

    @property
    def errored(self) -> int:
        return sum(1 for r in self.results if r.error is not None)

    @property
    def all_passed(self) -> bool:
        return self.passed == self.total

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "identity": self.identity,
            "points": [r.to_json_dict() for r in self.results],
            "summary": {
                "total": self.total,
                "passed": self.passed,
                "failed": self.failed,
                "errored": self.errored,
            },
        }


def _evaluate_point(tag: str, pt: IdentityPoint) -> PointResult:
    try:
        lhs, rhs = sides(tag, pt)
    except (MathDomainError, ValueError, ZeroDivisionError) as exc:
        return PointResult(pt, None, None, False, f"{type(exc).__name__}: {exc}")
    return PointResult(pt, lhs, rhs, lhs == rhs)


def worker_count() -> int:
    """Worker cap from APX_THREADS (>= 1); evaluation stays deterministic."""
    raw = os.environ.get("APX_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def verify_grid(tag: str, points: Iterable[IdentityPoint] | None = None,
                workers: int | None = None) -> VerificationReport:
    """Evaluate both sides at every point and record exact equality.

    Per-point evaluation errors are recorded in the report rather than
    raised.  Results are sorted by the points' deterministic key, so the
    report is identical no matter how (or in what order) the points were
    evaluated.
    """
    spec = identity_spec(tag)
    pts = tuple(points) if points is not None else default_grid(spec.tag)
    if workers is None:
        workers = worker_count()
    if workers > 1 and len(pts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda p: _evaluate_point(spec.tag, p), pts))
    else:
        results = [_evaluate_point(spec.tag, p) for p in pts]
    results.sort(key=lambda r: r.point.sort_key())
    return VerificationReport(spec.tag, tuple(results))
