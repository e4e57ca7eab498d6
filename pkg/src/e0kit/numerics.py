"""Deterministic scalar root finding, concave maximization, and difference quotients.

Everything in this module is bracket-based and derivative-free, so results are
bit-reproducible across runs and platforms. Brackets are mandatory; nothing
here guesses starting points or falls back to unbracketed iteration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable


class NumericsError(Exception):
    """Base class for numerical failures raised by this package."""


class InvalidInterval(NumericsError):
    """Interval endpoints are not properly ordered."""


class NoBracket(NumericsError):
    """The function does not change sign over the given interval."""


class DomainError(NumericsError):
    """Argument outside the domain of the function being evaluated."""


@dataclass(frozen=True)
class ToleranceConfig:
    """Shared numerical tolerances.

    root_abs_tol: absolute bracket width at which bisection stops.
    deriv_step: default step for central differences.
    rho_floor_offset: rho arguments must satisfy rho >= -1 + rho_floor_offset.
    ineq_slack: additive slack when checking analytic inequalities in floats.
    """

    root_abs_tol: float = 1e-12
    deriv_step: float = 1e-6
    rho_floor_offset: float = 1e-6
    ineq_slack: float = 1e-9


DEFAULT_TOL = ToleranceConfig()


def check_rho(rho: float, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Validate rho against the -1 + rho_floor_offset floor; returns rho."""
    # written so NaN fails the comparison and lands in the raise
    if not rho >= -1.0 + tol.rho_floor_offset:
        raise DomainError(
            f"rho={rho!r} below the floor -1 + {tol.rho_floor_offset}"
        )
    return rho


def find_root(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float | None = None,
) -> float:
    """Locate a zero of f on [a, b] by bisection.

    Requires a < b and f(a) * f(b) <= 0; an endpoint where f vanishes is
    returned directly. Otherwise the midpoint of the final bracket is
    returned, with bracket width at most tol (default: root_abs_tol).
    """
    if tol is None:
        tol = DEFAULT_TOL.root_abs_tol
    if not a < b:
        raise InvalidInterval(f"need a < b, got [{a!r}, {b!r}]")
    fa = f(a)
    if fa == 0.0:
        return a
    fb = f(b)
    if fb == 0.0:
        return b
    if (fa > 0.0) == (fb > 0.0):
        raise NoBracket(f"f({a!r})={fa!r} and f({b!r})={fb!r} have the same sign")
    while b - a > tol:
        mid = 0.5 * (a + b)
        if not a < mid < b:
            break  # bracket narrowed to adjacent floats
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0.0) == (fa > 0.0):
            a, fa = mid, fm
        else:
            b = mid
    return 0.5 * (a + b)


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_INVPHI2 = (3.0 - math.sqrt(5.0)) / 2.0


def maximize_concave(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-10,
) -> tuple[float, float]:
    """Golden-section maximization of a concave f on [a, b].

    Returns (argmax, max). Endpoints are legitimate answers: after the
    interior search collapses, the midpoint is compared against f(a) and
    f(b) and the best of the three is returned, so boundary maxima come
    back exactly at the boundary.
    """
    if a > b:
        raise InvalidInterval(f"need a <= b, got [{a!r}, {b!r}]")
    if a == b:
        return a, f(a)
    lo, hi = a, b
    c = lo + _INVPHI2 * (hi - lo)
    d = lo + _INVPHI * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > tol:
        if fc >= fd:
            hi = d
            d, fd = c, fc
            c = lo + _INVPHI2 * (hi - lo)
            fc = f(c)
        else:
            lo = c
            c, fc = d, fd
            d = lo + _INVPHI * (hi - lo)
            fd = f(d)
    x = 0.5 * (lo + hi)
    best_val, best_arg = max(
        (f(x), x), (f(a), a), (f(b), b), key=lambda pair: pair[0]
    )
    return best_arg, best_val


def central_diff(
    f: Callable[[float], float],
    x: float,
    h: float | None = None,
) -> float:
    """Symmetric difference quotient (f(x+h) - f(x-h)) / (2h).

    Raises DomainError if either probe point is outside f's domain
    (signalled by the callee raising ValueError, ArithmeticError, or a
    NumericsError).
    """
    if h is None:
        h = DEFAULT_TOL.deriv_step
    if not h > 0.0:
        raise DomainError(f"step must be positive, got {h!r}")
    try:
        fp = f(x + h)
        fm = f(x - h)
    except (ValueError, ArithmeticError, NumericsError) as exc:
        raise DomainError(f"f undefined within step {h!r} of {x!r}: {exc}") from exc
    return (fp - fm) / (2.0 * h)
