"""The symmetric-output kernel behind every E0 quantity for binary-input channels.

A binary-input channel seen through the per-output statistic
Z = |W(y|0) - W(y|1)| / (W(y|0) + W(y|1)) reduces uniform-input E0 to an
expectation of the kernel

    g(rho, z) = ( (1/2) (1+z)^(1/(1+rho)) + (1/2) (1-z)^(1/(1+rho)) )^(1+rho)

over the law of Z. This module evaluates g, its partial derivatives, its
inverse in z, the normalized form h_norm that converts a kernel value into an
equivalent erasure rate, and the auxiliary maps (m_fun, F_fun, ell, f,
f_tilde) whose signs and curvature drive the extremal-channel orderings.

Evaluation is routed through k = (1-z)/(1+z) and log1p/expm1 so the kernel
stays finite and exact at the corners (z = 0, z = 1, rho = 0) all the way
down to the rho floor just above -1, where the naive half-power form
overflows.
"""

from __future__ import annotations

import math

from .numerics import (
    DEFAULT_TOL,
    DomainError,
    NoBracket,
    NumericsError,
    ToleranceConfig,
    check_rho,
    find_root,
    maximize_concave,
)

_LN2 = math.log(2.0)

# upper end of every rho search in this module; h_norm and m_fun are within
# O(1/RHO_CAP) of their rho -> infinity limits here
RHO_CAP = 200.0


class NotInvertible(NumericsError):
    """g(rho, .) is constant and cannot be inverted (rho = 0)."""


def _check_z(z: float) -> float:
    if not 0.0 <= z <= 1.0:
        raise DomainError(f"z={z!r} outside [0, 1]")
    return z


def _check_k(k: float, *, open_right: bool = False) -> float:
    hi_ok = k < 1.0 if open_right else k <= 1.0
    if not (0.0 < k and hi_ok):
        bound = "(0, 1)" if open_right else "(0, 1]"
        raise DomainError(f"k={k!r} outside {bound}")
    return k


def g(rho: float, z: float, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Kernel value; equals 1 at z = 0 and 2^-rho at z = 1, exactly."""
    check_rho(rho, tol)
    _check_z(z)
    if z == 0.0:
        return 1.0
    if z == 1.0:
        return math.exp(-rho * _LN2)
    s = 1.0 / (1.0 + rho)
    k = (1.0 - z) / (1.0 + z)
    return math.exp(math.log1p(z) + (1.0 + rho) * (math.log1p(k**s) - _LN2))


def g_dz(rho: float, z: float, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Partial derivative of g in z.

    Closed form (1/2)^(1+rho) * (1 + k^(1/(1+rho)))^rho * (1 - k^(-rho/(1+rho)))
    with k = (1-z)/(1+z). Unbounded as z -> 1 for rho > 0 (DomainError there);
    identically 0 at rho = 0 and at z = 0.
    """
    check_rho(rho, tol)
    _check_z(z)
    if rho == 0.0:
        return 0.0
    if z == 1.0:
        if rho > 0.0:
            raise DomainError("g_dz is unbounded at z=1 for rho > 0")
        return math.exp(-(1.0 + rho) * _LN2)
    s = 1.0 / (1.0 + rho)
    k = (1.0 - z) / (1.0 + z)
    alpha = (1.0 + k**s) ** rho
    beta = 1.0 - k ** (-rho * s)
    return math.exp(-(1.0 + rho) * _LN2) * alpha * beta


def g_drho(rho: float, z: float, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Partial derivative of g in rho, in closed form.

    g * (log((1 + k^s)/2) - s * ln(k) * k^s / (1 + k^s)), s = 1/(1+rho).
    Exactly 0 at z = 0 and -2^-rho * ln 2 at z = 1.
    """
    check_rho(rho, tol)
    _check_z(z)
    if z == 0.0:
        return 0.0
    if z == 1.0:
        return -_LN2 * math.exp(-rho * _LN2)
    s = 1.0 / (1.0 + rho)
    k = (1.0 - z) / (1.0 + z)
    ks = k**s
    inner = math.log1p(ks) - _LN2 - s * math.log(k) * ks / (1.0 + ks)
    return g(rho, z, tol) * inner


def t_range(rho: float) -> tuple[float, float]:
    """Closed interval of kernel values g(rho, [0, 1]), as (lo, hi)."""
    two = math.exp(-rho * _LN2)
    return (two, 1.0) if rho > 0.0 else (1.0, two)


def g_inv(rho: float, t: float, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """The z in [0, 1] with g(rho, z) = t, for rho != 0.

    g(rho, .) is strictly monotone for rho != 0, so the inverse is found by
    bisection; t may sit up to 1e-9 outside the attainable range to absorb
    roundoff from upstream expectations, and is clamped back in.
    """
    check_rho(rho, tol)
    if rho == 0.0:
        raise NotInvertible("g(0, z) = 1 for every z; nothing to invert")
    lo, hi = t_range(rho)
    if not lo - 1e-9 <= t <= hi + 1e-9:
        raise DomainError(f"t={t!r} outside the kernel range [{lo!r}, {hi!r}]")
    t = min(max(t, lo), hi)
    if t == 1.0:
        return 0.0
    if t == math.exp(-rho * _LN2):
        return 1.0
    z = find_root(lambda zz: g(rho, zz, tol) - t, 0.0, 1.0, tol.root_abs_tol)
    return min(max(z, 0.0), 1.0)


def h_norm(rho: float, z: float, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """(g(rho, z) - 2^-rho) / (1 - 2^-rho): the erasure rate whose
    one-erasure-output channel has the same kernel value at this rho.

    Removable 0/0 at rho = 0 (DomainError). Equals 1 at z = 0 and 0 at
    z = 1 for every rho.
    """
    check_rho(rho, tol)
    _check_z(z)
    if rho == 0.0:
        raise DomainError("h_norm has a removable 0/0 at rho = 0")
    num = g(rho, z, tol) - math.exp(-rho * _LN2)
    den = -math.expm1(-rho * _LN2)
    return num / den


def rho_max(
    z: float,
    tol: ToleranceConfig = DEFAULT_TOL,
    grid_points: int = 512,
) -> float:
    """Maximizer of rho -> h_norm(rho, z) over (0, RHO_CAP].

    The map rises from its rho -> 0 limit, peaks once, and decays to the
    rho -> infinity limit h_norm applied at rho = 1. A grid scan brackets
    the peak (and guards the single-peak assumption), then golden-section
    refinement narrows it. Undefined at z = 0 and z = 1, where h_norm is
    constant in rho.
    """
    _check_z(z)
    if z == 0.0 or z == 1.0:
        raise DomainError("h_norm is flat in rho at z = 0 and z = 1")
    rhos = [RHO_CAP * (i + 1) / grid_points for i in range(grid_points)]
    vals = [h_norm(r, z, tol) for r in rhos]
    i = max(range(grid_points), key=vals.__getitem__)
    lo = rhos[i - 1] if i > 0 else 0.5 * rhos[0]
    hi = rhos[i + 1] if i + 1 < grid_points else RHO_CAP
    arg, _ = maximize_concave(lambda q: h_norm(q, z, tol), lo, hi, tol=1e-9)
    return arg


def f(rho1: float, rho2: float, t: float, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Kernel value at rho2 of the z where the rho1 kernel equals t."""
    return g(rho2, g_inv(rho1, t, tol), tol)


def f_tilde(
    rho1: float, rho2: float, t: float, tol: ToleranceConfig = DEFAULT_TOL
) -> float:
    """Kernel rho-derivative at rho2 of the z where the rho1 kernel equals t."""
    return g_drho(rho2, g_inv(rho1, t, tol), tol)


def k_of_z(z: float) -> float:
    """The involution z -> (1-z)/(1+z) mapping [0, 1] onto itself."""
    _check_z(z)
    return (1.0 - z) / (1.0 + z)


def m_fun(k: float, rho: float) -> float:
    """Sign factor deciding how the z-slopes of two kernel levels compare.

    m(k, rho) = (k - k^(1/(1+rho))) + (k^(rho/(1+rho)) - 1)
                - (k^(rho/(1+rho)) + k^(1/(1+rho))) * (rho/(1+rho)) * ln k

    Grouped so the zeros at rho = 0 and k = 1 are exact in floating point.
    Defined for k in (0, 1] and any rho != -1 (both sides of the pole are
    meaningful). Nonpositive for rho in (-1, 3], nonnegative for rho < -1,
    and crosses back to positive at rho_star(k) >= 3.
    """
    _check_k(k)
    if rho == -1.0:
        raise DomainError("m_fun has a pole at rho = -1")
    a = 1.0 / (1.0 + rho)
    b = rho / (1.0 + rho)
    ka = k**a
    kb = k**b
    return (k - ka) + (kb - 1.0) - (kb + ka) * b * math.log(k)


def m_fun_limit(k: float) -> float:
    """Limit of m_fun(k, rho) as rho -> infinity: -2(1-k) - (1+k) ln k."""
    _check_k(k)
    return -2.0 * (1.0 - k) - (1.0 + k) * math.log(k)


def rho_star(k: float, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Upper sign change of rho -> m_fun(k, rho); always at least 3.

    Brackets on [3 - 1e-3, RHO_CAP], retrying once at ten times the cap
    (m_fun is extremely flat in rho for k near 1) before giving up.
    """
    _check_k(k, open_right=True)
    lo = 3.0 - 1e-3
    for cap in (RHO_CAP, 10.0 * RHO_CAP):
        if m_fun(k, lo) * m_fun(k, cap) <= 0.0:
            return find_root(lambda r: m_fun(k, r), lo, cap, tol.root_abs_tol)
    raise NoBracket(f"m_fun(k={k!r}, .) does not change sign below {10.0 * RHO_CAP}")


def F_fun(k: float, rho: float) -> float:
    """(rho/(1+rho)) * (1+k)/k, divided by
    (1 + k^(1/(1+rho))) * (k^(rho/(1+rho)) - 1).

    Defined for k in (0, 1) and rho > 0; negative there, tending to
    1/(k ln k) as rho -> 0+ and strictly decreasing in rho.
    """
    _check_k(k, open_right=True)
    if not rho > 0.0:
        raise DomainError(f"F_fun needs rho > 0, got {rho!r}")
    b = rho / (1.0 + rho)
    gamma = (1.0 + k ** (1.0 / (1.0 + rho))) * math.expm1(b * math.log(k))
    return b * (1.0 + k) / (k * gamma)


def ell(rho: float, z: float, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Logarithmic z-slope comparator for kernel level sets.

    ell(rho, z) = (-2/(1+z)^2) * (rho/(1+rho)) * (1+k)/k
                  / ((1 + k^(1/(1+rho))) * (k^(rho/(1+rho)) - 1))

    i.e. F_fun at k(z) times dk/dz, extended to rho in (-1, 0) where the
    same expression stays finite. At rho = 1 it collapses to 1/(z - z^3).
    Needs z in (0, 1) and rho != 0.
    """
    check_rho(rho, tol)
    if not 0.0 < z < 1.0:
        raise DomainError(f"ell needs z in (0, 1), got {z!r}")
    if rho == 0.0:
        raise DomainError("ell has a removable singularity at rho = 0")
    k = (1.0 - z) / (1.0 + z)
    b = rho / (1.0 + rho)
    gamma = (1.0 + k ** (1.0 / (1.0 + rho))) * math.expm1(b * math.log(k))
    dkdz = -2.0 / ((1.0 + z) * (1.0 + z))
    return b * (1.0 + k) / (k * gamma) * dkdz
