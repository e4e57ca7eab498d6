"""Binary-input discrete channels and their uniform-input E0 functionals.

Two evaluation routes are kept deliberately separate: e0_raw works straight
off the transition matrix (vectorized, max-factored power sums), while e0_z
goes through the Z statistic and the scalar kernel. They must agree to
near machine precision on every channel; the tests lean on that redundancy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import gfun
from .numerics import (
    DEFAULT_TOL,
    DomainError,
    ToleranceConfig,
    check_rho,
    maximize_concave,
)

_LN2 = math.log(2.0)

# rows may miss unit mass by this much before the channel is rejected
ROW_SUM_TOL = 1e-9


@dataclass(frozen=True)
class BinaryChannel:
    """Transition matrix of a binary-input channel.

    w0 and w1 are the output distributions for inputs 0 and 1, over a common
    finite output alphabet. Rows are validated (nonnegative, unit mass within
    ROW_SUM_TOL) and frozen.
    """

    w0: np.ndarray
    w1: np.ndarray

    def __post_init__(self) -> None:
        w0 = np.array(self.w0, dtype=float)
        w1 = np.array(self.w1, dtype=float)
        if w0.ndim != 1 or w1.ndim != 1 or w0.shape != w1.shape or w0.size == 0:
            raise ValueError("channel rows must be equal-length nonempty 1-D vectors")
        for name, row in (("input-0 row", w0), ("input-1 row", w1)):
            if not np.all(row >= 0.0):
                raise ValueError(f"{name} has negative entries")
            total = float(row.sum())
            if abs(total - 1.0) > ROW_SUM_TOL:
                raise ValueError(f"{name} sums to {total!r}, not 1")
        w0.flags.writeable = False
        w1.flags.writeable = False
        object.__setattr__(self, "w0", w0)
        object.__setattr__(self, "w1", w1)

    @property
    def n_outputs(self) -> int:
        return int(self.w0.size)


@dataclass(frozen=True)
class ZDistribution:
    """Law of Z = |W(y|0) - W(y|1)| / (W(y|0) + W(y|1)) under the output mix.

    Atoms are strictly increasing in z with strictly positive masses summing
    to 1 (within 1e-12).
    """

    z: np.ndarray
    p: np.ndarray

    def __post_init__(self) -> None:
        z = np.array(self.z, dtype=float)
        p = np.array(self.p, dtype=float)
        if z.ndim != 1 or p.ndim != 1 or z.shape != p.shape or z.size == 0:
            raise ValueError("atoms must be equal-length nonempty 1-D vectors")
        if not np.all((z >= 0.0) & (z <= 1.0)):
            raise ValueError("z atoms must lie in [0, 1]")
        if z.size > 1 and not np.all(np.diff(z) > 0.0):
            raise ValueError("z atoms must be strictly increasing")
        if not np.all(p > 0.0):
            raise ValueError("atom masses must be strictly positive")
        total = float(p.sum())
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"atom masses sum to {total!r}, not 1")
        z.flags.writeable = False
        p.flags.writeable = False
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "p", p)

    @property
    def n_atoms(self) -> int:
        return int(self.z.size)


def z_representation(ch: BinaryChannel) -> ZDistribution:
    """Collapse a channel to the law of its per-output Z statistic.

    Outputs with zero total mass are dropped; equal z values are merged.
    """
    total = ch.w0 + ch.w1
    mask = total > 0.0
    z = np.abs(ch.w0 - ch.w1)[mask] / total[mask]
    p = 0.5 * total[mask]
    order = np.argsort(z, kind="stable")
    z, p = z[order], p[order]
    zs: list[float] = []
    ps: list[float] = []
    for zi, pi in zip(z, p):
        if zs and zi == zs[-1]:
            ps[-1] += float(pi)
        else:
            zs.append(float(zi))
            ps.append(float(pi))
    return ZDistribution(np.array(zs), np.array(ps))


def channel_from_z(zd: ZDistribution) -> BinaryChannel:
    """Symmetric channel realizing a Z law.

    Atom i becomes the output pair (2i, 2i+1) with input-0 probabilities
    (p(1+z)/2, p(1-z)/2); input 1 sees the mirrored pair.
    """
    w0 = np.empty(2 * zd.n_atoms)
    w0[0::2] = zd.p * (1.0 + zd.z) / 2.0
    w0[1::2] = zd.p * (1.0 - zd.z) / 2.0
    w1 = np.empty_like(w0)
    w1[0::2] = w0[1::2]
    w1[1::2] = w0[0::2]
    return BinaryChannel(w0, w1)


def _gallager_terms(rho: float, w0: np.ndarray, w1: np.ndarray) -> np.ndarray:
    # per-output ((w0^s + w1^s)/2)^(1+rho) with the larger entry factored out,
    # so nothing overflows as s = 1/(1+rho) blows up near the rho floor
    s = 1.0 / (1.0 + rho)
    hi = np.maximum(w0, w1)
    lo = np.minimum(w0, w1)
    out = np.zeros_like(hi)
    pos = hi > 0.0
    ratio = lo[pos] / hi[pos]
    out[pos] = hi[pos] * np.exp((1.0 + rho) * (np.log1p(ratio**s) - _LN2))
    return out


def e0_raw(rho: float, ch: BinaryChannel, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Uniform-input E0 in nats, straight off the transition matrix."""
    check_rho(rho, tol)
    return -math.log(float(_gallager_terms(rho, ch.w0, ch.w1).sum()))


def e0_general(
    rho: float, q: float, ch: BinaryChannel, tol: ToleranceConfig = DEFAULT_TOL
) -> float:
    """E0 for input weights (q, 1-q); brute-force reference for e0_raw at q = 1/2."""
    check_rho(rho, tol)
    if not 0.0 <= q <= 1.0:
        raise DomainError(f"input weight q={q!r} outside [0, 1]")
    if q == 0.0 or q == 1.0:
        return 0.0
    s = 1.0 / (1.0 + rho)
    hi = np.maximum(ch.w0, ch.w1)
    pos = hi > 0.0
    r0 = ch.w0[pos] / hi[pos]
    r1 = ch.w1[pos] / hi[pos]
    inner = q * r0**s + (1.0 - q) * r1**s
    total = float((hi[pos] * np.exp((1.0 + rho) * np.log(inner))).sum())
    return -math.log(total)


def e0_z(rho: float, zd: ZDistribution, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """E0 from the Z law: -ln E[g(rho, Z)]. Independent route from e0_raw."""
    check_rho(rho, tol)
    total = 0.0
    for zi, pi in zip(zd.z, zd.p):
        total += float(pi) * gfun.g(rho, float(zi), tol)
    return -math.log(total)


def r_slope(rho: float, ch: BinaryChannel, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """dE0/drho in closed form: E[-g_drho(rho, Z)] / E[g(rho, Z)].

    This is the rate coordinate of the parametric exponent curve; at rho = 0
    it equals the uniform-input mutual information.
    """
    check_rho(rho, tol)
    zd = z_representation(ch)
    num = 0.0
    den = 0.0
    for zi, pi in zip(zd.z, zd.p):
        zf, pf = float(zi), float(pi)
        num -= pf * gfun.g_drho(rho, zf, tol)
        den += pf * gfun.g(rho, zf, tol)
    return num / den


def capacity(ch: BinaryChannel) -> float:
    """Mutual information in nats between a uniform input and the output."""
    mix = 0.5 * (ch.w0 + ch.w1)
    total = 0.0
    for row in (ch.w0, ch.w1):
        pos = row > 0.0
        total += 0.5 * float(np.sum(row[pos] * np.log(row[pos] / mix[pos])))
    return total


def cutoff_rate(ch: BinaryChannel, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """E0 at rho = 1, in nats."""
    return e0_raw(1.0, ch, tol)


def e0_over_rho(rho: float, ch: BinaryChannel, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """E0(rho)/rho, continuously extended to capacity at rho = 0."""
    check_rho(rho, tol)
    if rho == 0.0:
        return capacity(ch)
    return e0_raw(rho, ch, tol) / rho


def er_parametric(
    rho: float, ch: BinaryChannel, tol: ToleranceConfig = DEFAULT_TOL
) -> tuple[float, float]:
    """Point (rate, exponent) of the random-coding curve at slope parameter rho.

    Needs rho in [0, 1]; the exponent E0(rho) - rho * R(rho) is clamped at 0.
    """
    if not 0.0 <= rho <= 1.0:
        raise DomainError(f"parametric rho={rho!r} outside [0, 1]")
    rate = r_slope(rho, ch, tol)
    exponent = e0_raw(rho, ch, tol) - rho * rate
    return rate, max(0.0, exponent)


def er_at_rate(rate: float, ch: BinaryChannel, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Random-coding exponent max_{rho in [0,1]} (E0(rho) - rho * rate).

    Exactly 0 at rates >= capacity and exactly E0(1) - rate in the straight
    line segment below R(1); golden-section search in between.
    """
    if rate < 0.0:
        raise DomainError(f"rate={rate!r} is negative")
    if rate >= capacity(ch):
        return 0.0
    if rate <= r_slope(1.0, ch, tol):
        return e0_raw(1.0, ch, tol) - rate
    _, val = maximize_concave(
        lambda r: e0_raw(r, ch, tol) - r * rate, 0.0, 1.0, tol=1e-10
    )
    return max(0.0, val)
