"""Renyi entropies of joint input-output laws and the order-based information.

For a uniform binary input X into channel W with output Y, the gap between
the order-alpha input entropy and the order-alpha conditional entropy (the
Arimoto form) reproduces E0(rho)/rho at alpha = 1/(1+rho). That identity is
the bridge the tests use between the channel functionals and these entropies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import BinaryChannel
from .numerics import DomainError

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class JointDistribution:
    """Joint law over (input, output): nonnegative matrix with unit mass."""

    pxy: np.ndarray

    def __post_init__(self) -> None:
        pxy = np.array(self.pxy, dtype=float)
        if pxy.ndim != 2 or pxy.size == 0:
            raise ValueError("joint law must be a nonempty 2-D matrix")
        if not np.all(pxy >= 0.0):
            raise ValueError("joint law has negative entries")
        total = float(pxy.sum())
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"joint law sums to {total!r}, not 1")
        pxy.flags.writeable = False
        object.__setattr__(self, "pxy", pxy)


def uniform_joint(ch: BinaryChannel) -> JointDistribution:
    """Joint law of a uniform input with the channel output."""
    return JointDistribution(0.5 * np.vstack([ch.w0, ch.w1]))


def _check_alpha(alpha: float) -> float:
    if not alpha > 0.0 or alpha == 1.0:
        raise DomainError(f"order alpha={alpha!r} must be positive and not 1")
    return alpha


def renyi_entropy(alpha: float, dist) -> float:
    """Order-alpha Renyi entropy in nats: (1/(1-alpha)) ln sum p^alpha."""
    _check_alpha(alpha)
    p = np.asarray(dist, dtype=float)
    if not np.all(p >= 0.0):
        raise DomainError("distribution has negative entries")
    total = float(p.sum())
    if abs(total - 1.0) > 1e-12:
        raise DomainError(f"distribution sums to {total!r}, not 1")
    power_sum = float(np.sum(p[p > 0.0] ** alpha))
    return math.log(power_sum) / (1.0 - alpha)


def renyi_cond_entropy(alpha: float, joint: JointDistribution) -> float:
    """Arimoto conditional Renyi entropy in nats:
    (alpha/(1-alpha)) ln sum_y (sum_x P(x,y)^alpha)^(1/alpha)."""
    _check_alpha(alpha)
    inner = np.sum(joint.pxy**alpha, axis=0) ** (1.0 / alpha)
    return alpha / (1.0 - alpha) * math.log(float(inner.sum()))


def order_mutual_info(alpha: float, ch: BinaryChannel) -> float:
    """H_alpha(X) - H_alpha(X|Y) for a uniform binary input.

    Equals E0(rho)/rho at rho = 1/alpha - 1; since the input is uniform the
    unconditional term is exactly ln 2.
    """
    _check_alpha(alpha)
    joint = uniform_joint(ch)
    hx = renyi_entropy(alpha, np.array([0.5, 0.5]))
    return hx - renyi_cond_entropy(alpha, joint)
