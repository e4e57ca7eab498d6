"""E0 curves, extremal erasure/crossover channel bounds, and error-exponent
tools for binary-input discrete channels under uniform input.

The workhorse functions live at the top level; the kernel internals stay in
e0kit.gfun and the verification harness in e0kit.verify.
"""

from . import gfun, verify
from .channels import (
    BinaryChannel,
    ZDistribution,
    capacity,
    channel_from_z,
    cutoff_rate,
    e0_general,
    e0_over_rho,
    e0_raw,
    e0_z,
    er_at_rate,
    er_parametric,
    r_slope,
    z_representation,
)
from .extremal import (
    BecParams,
    BscParams,
    IntersectionReport,
    OutOfRange,
    bec_from_e0,
    bec_matrix,
    binary_entropy_nats,
    bsc_from_e0,
    bsc_matrix,
    e0_bec,
    e0_bsc,
    intersections,
    match_at_rho,
    r_bec,
    r_bsc,
)
from .numerics import (
    DEFAULT_TOL,
    DomainError,
    InvalidInterval,
    NoBracket,
    NumericsError,
    ToleranceConfig,
    central_diff,
    find_root,
    maximize_concave,
)
from .renyi import (
    JointDistribution,
    order_mutual_info,
    renyi_cond_entropy,
    renyi_entropy,
    uniform_joint,
)

__version__ = "0.1.0"

__all__ = [
    "BecParams",
    "BinaryChannel",
    "BscParams",
    "DEFAULT_TOL",
    "DomainError",
    "IntersectionReport",
    "InvalidInterval",
    "JointDistribution",
    "NoBracket",
    "NumericsError",
    "OutOfRange",
    "ToleranceConfig",
    "ZDistribution",
    "bec_from_e0",
    "bec_matrix",
    "binary_entropy_nats",
    "bsc_from_e0",
    "bsc_matrix",
    "capacity",
    "central_diff",
    "channel_from_z",
    "cutoff_rate",
    "e0_bec",
    "e0_bsc",
    "e0_general",
    "e0_over_rho",
    "e0_raw",
    "e0_z",
    "er_at_rate",
    "er_parametric",
    "find_root",
    "gfun",
    "intersections",
    "match_at_rho",
    "maximize_concave",
    "order_mutual_info",
    "r_bec",
    "r_bsc",
    "r_slope",
    "renyi_cond_entropy",
    "renyi_entropy",
    "uniform_joint",
    "verify",
    "z_representation",
]
