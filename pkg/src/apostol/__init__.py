"""Exact-arithmetic toolkit for two-variable Apostol-type polynomial families.

Computes Bernoulli/Euler/Genocchi-style polynomial families (and their
two-variable Gould-Hopper, Laguerre, and truncated-exponential extensions)
from their generating functions over exact rationals, evaluates plain and
lambda-weighted power sums, and verifies the families' symmetry identities
bit-exactly over parameter grids.
"""

from .algebra import MathDomainError, PolyXY, binomial, make_rational
from .families import (
    BaseKind,
    EXP,
    FamilyParams,
    UNIT,
    atp_sequence,
    base_phi,
    apostol_kernel,
    classical_reduce,
    gen_power_sum,
    gould_hopper,
    laguerre,
    power_sum_direct,
    trunc_exp,
)
from .identities import (
    IdentityPoint,
    VerificationReport,
    default_grid,
    identity_ids,
    identity_spec,
    sides,
    verify_grid,
)
from .series import Series

__version__ = "0.1.0"

__all__ = [
    "BaseKind",
    "EXP",
    "FamilyParams",
    "IdentityPoint",
    "MathDomainError",
    "PolyXY",
    "Series",
    "UNIT",
    "VerificationReport",
    "__version__",
    "apostol_kernel",
    "atp_sequence",
    "base_phi",
    "binomial",
    "classical_reduce",
    "default_grid",
    "gen_power_sum",
    "gould_hopper",
    "identity_ids",
    "identity_spec",
    "laguerre",
    "make_rational",
    "power_sum_direct",
    "sides",
    "trunc_exp",
    "verify_grid",
]
