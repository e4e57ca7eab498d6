"""Erasure and crossover extremal channels: closed forms, matching, intersections.

The binary erasure channel (parameter eps) and the binary symmetric channel
(crossover x) bracket every binary-input channel's E0 curve once matched to
it at a reference rho0. This module supplies their closed-form E0 and rate
curves, builds matched pairs, inverts E0 back to parameters, and classifies
where two matched extremal curves cross each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import channels, gfun
from .channels import BinaryChannel
from .numerics import (
    DEFAULT_TOL,
    DomainError,
    NumericsError,
    ToleranceConfig,
    check_rho,
    find_root,
)

_LN2 = math.log(2.0)


class OutOfRange(NumericsError):
    """Requested value is outside the attainable range of the family."""


def _check_eps(eps: float) -> float:
    if not 0.0 <= eps <= 1.0:
        raise DomainError(f"erasure rate eps={eps!r} outside [0, 1]")
    return eps


def _check_x(x: float) -> float:
    if not 0.0 <= x <= 0.5:
        raise DomainError(f"crossover x={x!r} outside [0, 1/2]")
    return x


@dataclass(frozen=True)
class BecParams:
    """Validated erasure rate in [0, 1]."""

    eps: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.eps <= 1.0:
            raise ValueError(f"erasure rate {self.eps!r} outside [0, 1]")


@dataclass(frozen=True)
class BscParams:
    """Validated crossover probability in [0, 1/2]."""

    x: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.x <= 0.5:
            raise ValueError(f"crossover {self.x!r} outside [0, 1/2]")


def binary_entropy_nats(p: float) -> float:
    """-p ln p - (1-p) ln(1-p), with the 0 ln 0 = 0 convention."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"probability {p!r} outside [0, 1]")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log(p) - (1.0 - p) * math.log1p(-p)


def e0_bec(rho: float, eps: float, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """E0 of the erasure channel: -ln(2^-rho (1-eps) + eps)."""
    check_rho(rho, tol)
    _check_eps(eps)
    return -math.log(math.exp(-rho * _LN2) * (1.0 - eps) + eps)


def r_bec(rho: float, eps: float, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """dE0/drho of the erasure channel, in closed form."""
    check_rho(rho, tol)
    _check_eps(eps)
    t = math.exp(-rho * _LN2) * (1.0 - eps)
    return t * _LN2 / (t + eps)


def e0_bsc(rho: float, x: float, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """E0 of the crossover channel.

    Evaluated as rho ln 2 - ln(1-x) - (1+rho) ln(1 + r^s) with r = x/(1-x)
    and s = 1/(1+rho): exactly 0 at x = 1/2 and rho ln 2 at x = 0, finite
    down to the rho floor.
    """
    check_rho(rho, tol)
    _check_x(x)
    if x == 0.0:
        return rho * _LN2
    s = 1.0 / (1.0 + rho)
    r = x / (1.0 - x)
    return rho * _LN2 - math.log1p(-x) - (1.0 + rho) * math.log1p(r**s)


def r_bsc(rho: float, x: float, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """dE0/drho of the crossover channel: ln 2 minus the entropy of the
    tilted crossover delta = r^s / (1 + r^s), r = x/(1-x), s = 1/(1+rho)."""
    check_rho(rho, tol)
    _check_x(x)
    if x == 0.0:
        return _LN2
    rs = (x / (1.0 - x)) ** (1.0 / (1.0 + rho))
    delta = rs / (1.0 + rs)
    return _LN2 - binary_entropy_nats(delta)


def bec_matrix(eps: float) -> BinaryChannel:
    """Three-output transition matrix of the erasure channel."""
    _check_eps(eps)
    return BinaryChannel(
        np.array([1.0 - eps, eps, 0.0]), np.array([0.0, eps, 1.0 - eps])
    )


def bsc_matrix(x: float) -> BinaryChannel:
    """Two-output transition matrix of the crossover channel."""
    _check_x(x)
    return BinaryChannel(np.array([1.0 - x, x]), np.array([x, 1.0 - x]))


def _matching_defect(
    ch: BinaryChannel,
    rho0: float,
    bec: BecParams,
    bsc: BscParams,
    tol: ToleranceConfig,
) -> float:
    if rho0 == 0.0:
        target = channels.capacity(ch)
        got_b = r_bec(0.0, bec.eps, tol)
        got_s = r_bsc(0.0, bsc.x, tol)
    else:
        target = channels.e0_raw(rho0, ch, tol)
        got_b = e0_bec(rho0, bec.eps, tol)
        got_s = e0_bsc(rho0, bsc.x, tol)
    return max(abs(got_b - target), abs(got_s - target))


def match_at_rho(
    ch: BinaryChannel, rho0: float, tol: ToleranceConfig = DEFAULT_TOL
) -> tuple[BecParams, BscParams]:
    """Erasure and crossover parameters whose E0 agrees with ch at rho0.

    At rho0 = 0 the E0 values all vanish, so matching is by capacity
    instead. The result is checked to reproduce the target within 1e-9
    before being returned.
    """
    check_rho(rho0, tol)
    if rho0 == 0.0:
        cap = channels.capacity(ch)
        eps = 1.0 - cap / _LN2
        x = find_root(
            lambda xx: _LN2 - binary_entropy_nats(xx) - cap,
            0.0,
            0.5,
            tol.root_abs_tol,
        )
        pair = BecParams(min(max(eps, 0.0), 1.0)), BscParams(min(max(x, 0.0), 0.5))
    else:
        mean_t = math.exp(-channels.e0_raw(rho0, ch, tol))
        zstar = gfun.g_inv(rho0, mean_t, tol)
        eps = (mean_t - math.exp(-rho0 * _LN2)) / -math.expm1(-rho0 * _LN2)
        pair = BecParams(min(max(eps, 0.0), 1.0)), BscParams(0.5 * (1.0 - zstar))
    defect = _matching_defect(ch, rho0, pair[0], pair[1], tol)
    if defect > 1e-9:
        raise NumericsError(
            f"matching at rho0={rho0!r} missed its target by {defect!r}"
        )
    return pair


def bec_from_e0(rho: float, e0: float, tol: ToleranceConfig = DEFAULT_TOL) -> BecParams:
    """Erasure rate whose E0 at rho equals e0 (closed-form inversion)."""
    check_rho(rho, tol)
    if rho == 0.0:
        raise DomainError("every erasure rate has E0 = 0 at rho = 0")
    lo, hi = (0.0, rho * _LN2) if rho > 0.0 else (rho * _LN2, 0.0)
    if not lo - 1e-9 <= e0 <= hi + 1e-9:
        raise OutOfRange(f"e0={e0!r} unattainable at rho={rho!r}; range [{lo}, {hi}]")
    eps = (math.exp(-e0) - math.exp(-rho * _LN2)) / -math.expm1(-rho * _LN2)
    return BecParams(min(max(eps, 0.0), 1.0))


def bsc_from_e0(rho: float, e0: float, tol: ToleranceConfig = DEFAULT_TOL) -> BscParams:
    """Crossover probability whose E0 at rho equals e0 (bisection)."""
    check_rho(rho, tol)
    if rho == 0.0:
        raise DomainError("every crossover has E0 = 0 at rho = 0")
    lo, hi = (0.0, rho * _LN2) if rho > 0.0 else (rho * _LN2, 0.0)
    if not lo - 1e-9 <= e0 <= hi + 1e-9:
        raise OutOfRange(f"e0={e0!r} unattainable at rho={rho!r}; range [{lo}, {hi}]")
    target = min(max(e0, lo), hi)
    x = find_root(
        lambda xx: e0_bsc(rho, xx, tol) - target, 0.0, 0.5, tol.root_abs_tol
    )
    return BscParams(min(max(x, 0.0), 0.5))


TRANSVERSAL = "transversal"
TANGENT = "tangent"

CLASS_ONLY_ZERO = "only-zero"
CLASS_SECOND_NEG = "second-in-(-1,0)"
CLASS_SECOND_UNIT = "second-in-(0,1]"
CLASS_TANGENT_HIGH = "tangent-at-rho>1"
CLASS_TWO_HIGH = "two-in-(1,inf)"


@dataclass(frozen=True)
class IntersectionReport:
    """Nonzero E0 crossings of an erasure/crossover pair.

    roots: (rho, kind) pairs in ascending rho, kind one of TRANSVERSAL or
    TANGENT. classification: one of the CLASS_* labels.
    """

    roots: tuple[tuple[float, str], ...]
    classification: str


def _refine_tangent_rho(
    eps: float, x: float, rmax: float, rho_hi: float, tol: ToleranceConfig
) -> float:
    # at a tangency the difference curve has a critical zero, so locate the
    # rate crossing (the derivative root) nearest the kernel hump instead of
    # chasing a sign change that may not exist in floats
    def rate_diff(rho: float) -> float:
        return r_bsc(rho, x, tol) - r_bec(rho, eps, tol)

    lo = 1.0 + 1e-9
    grid = np.linspace(lo, rho_hi, 129)
    vals = [rate_diff(r) for r in grid]
    best: float | None = None
    for (r0, v0), (r1, v1) in zip(zip(grid, vals), zip(grid[1:], vals[1:])):
        if v0 == 0.0:
            cand = float(r0)
        elif v0 * v1 < 0.0:
            cand = find_root(rate_diff, float(r0), float(r1), tol.root_abs_tol)
        else:
            continue
        if best is None or abs(cand - rmax) < abs(best - rmax):
            best = cand
    return best if best is not None else rmax


def intersections(
    bec: BecParams,
    bsc: BscParams,
    rho_hi: float = 40.0,
    tol: ToleranceConfig = DEFAULT_TOL,
    grid_points: int = 2048,
    tangency_tol: float = 1e-3,
) -> IntersectionReport:
    """Classify the nonzero solutions of e0_bsc(rho, x) = e0_bec(rho, eps).

    Every pair agrees trivially at rho = 0; that root is always dropped.
    Transversal roots come from a sign scan over (-1 + floor, rho_hi] plus
    bisection. A tangency in the high region is declared when the erasure
    rate sits within tangency_tol of the critical rate
    h_norm(rho_max(z), z) at which the curves just touch (z = 1 - 2x), lies
    above the large-rho asymptote h_norm(1, z), and no transversal root at
    or below 1 contradicts it; the two near-touching sign changes (or none,
    when the gap is below float resolution) are then reported as a single
    tangent root at the critical point.
    """
    eps, x = bec.eps, bsc.x
    if not (0.0 < eps < 1.0 and 0.0 < x < 0.5):
        raise DomainError(
            "intersection analysis needs nondegenerate parameters: "
            f"eps={eps!r} in (0,1), x={x!r} in (0,1/2)"
        )
    if not rho_hi > 1.0:
        raise DomainError(f"rho_hi={rho_hi!r} must exceed 1")
    z = 1.0 - 2.0 * x

    def diff(rho: float) -> float:
        return e0_bsc(rho, x, tol) - e0_bec(rho, eps, tol)

    lo = -1.0 + tol.rho_floor_offset
    grid = np.linspace(lo, rho_hi, grid_points)
    vals = [diff(float(r)) for r in grid]
    roots: list[float] = []
    for (r0, v0), (r1, v1) in zip(zip(grid, vals), zip(grid[1:], vals[1:])):
        if v0 == 0.0:
            roots.append(float(r0))
        elif v0 * v1 < 0.0:
            roots.append(find_root(diff, float(r0), float(r1), tol.root_abs_tol))
    if vals[-1] == 0.0:
        roots.append(float(grid[-1]))
    # the shared zero at rho = 0 is structural, never reported
    roots = [r for r in roots if abs(r) > 1e-6]

    # a refined root can land a few ulps past 1 when the true crossing sits
    # exactly on the boundary (pairs matched at rho0 = 1), so split with slack
    boundary = 1.0 + 1e-6
    low = [r for r in roots if r <= boundary]
    high = [r for r in roots if r > boundary]

    rmax = gfun.rho_max(z, tol)
    eps_critical = gfun.h_norm(rmax, z, tol)
    tangent = (
        abs(eps - eps_critical) <= tangency_tol
        and eps > gfun.h_norm(1.0, z, tol)
        and not low
        and len(high) in (0, 2)
    )
    if tangent:
        rho_t = _refine_tangent_rho(eps, x, rmax, rho_hi, tol)
        return IntersectionReport(((rho_t, TANGENT),), CLASS_TANGENT_HIGH)

    reported = tuple((r, TRANSVERSAL) for r in roots)
    if not roots:
        classification = CLASS_ONLY_ZERO
    elif len(roots) == 1 and roots[0] < 0.0:
        classification = CLASS_SECOND_NEG
    elif len(roots) == 1 and roots[0] <= boundary:
        classification = CLASS_SECOND_UNIT
    else:
        classification = CLASS_TWO_HIGH
    return IntersectionReport(reported, classification)
