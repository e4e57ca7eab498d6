"""Randomized verification of the extremal orderings and kernel lemmas.

Each suite draws seeded random channels, recomputes the claimed inequalities
at many parameter points, and records any violation beyond a small float
slack together with the inputs needed to reproduce it. Reports serialize to
plain dicts for the CLI's JSON output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from . import channels, extremal, gfun
from .channels import BinaryChannel, ZDistribution, channel_from_z
from .numerics import DEFAULT_TOL, DomainError, ToleranceConfig, find_root

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class CheckFailure:
    """One inequality violation: lhs <= rhs failed by `violation` > slack."""

    suite: str
    check: str
    lhs: float
    rhs: float
    violation: float
    inputs: dict

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "check": self.check,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "violation": self.violation,
            "inputs": self.inputs,
        }


@dataclass
class VerificationReport:
    """Counter of checks run and violations found for one suite."""

    suite: str
    trials: int = 0
    checks: int = 0
    max_violation: float = 0.0
    failures: list[CheckFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(
        self,
        lhs: float,
        rhs: float,
        slack: float,
        check: str,
        inputs: Mapping[str, object],
    ) -> None:
        """Require lhs <= rhs + slack; log a failure otherwise."""
        self.checks += 1
        violation = lhs - rhs
        if violation > self.max_violation:
            self.max_violation = violation
        if violation > slack:
            self.failures.append(
                CheckFailure(
                    suite=self.suite,
                    check=check,
                    lhs=float(lhs),
                    rhs=float(rhs),
                    violation=float(violation),
                    inputs={k: _plain(v) for k, v in inputs.items()},
                )
            )

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "trials": self.trials,
            "checks": self.checks,
            "ok": self.ok,
            "max_violation": self.max_violation,
            "failures": [f.to_dict() for f in self.failures],
        }


def _plain(value: object) -> object:
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    return value


def random_channel(seed: int, n_outputs: int | None = None) -> BinaryChannel:
    """Channel with independent exponential row weights, deterministic in seed."""
    rng = np.random.default_rng(seed)
    if n_outputs is None:
        n_outputs = int(rng.integers(2, 9))
    rows = -np.log1p(-rng.random((2, n_outputs)))
    rows /= rows.sum(axis=1, keepdims=True)
    return BinaryChannel(rows[0], rows[1])


def _random_z_law(rng: np.random.Generator, n_atoms: int | None = None) -> ZDistribution:
    if n_atoms is None:
        n_atoms = int(rng.integers(1, 6))
    z = np.unique(rng.uniform(0.001, 0.999, size=n_atoms))
    p = -np.log1p(-rng.random(z.size))
    p /= p.sum()
    return ZDistribution(z, p)


def random_symmetric_channel(seed: int, n_atoms: int | None = None) -> BinaryChannel:
    """Symmetric channel built from a random Z law, deterministic in seed."""
    return channel_from_z(_random_z_law(np.random.default_rng(seed), n_atoms))


def random_symmetric_channel_at_capacity(
    seed: int, cap_nats: float, tol: ToleranceConfig = DEFAULT_TOL
) -> BinaryChannel:
    """Random symmetric channel rescaled so its capacity hits cap_nats.

    The base Z law is interpolated toward the useless channel (scale c -> 0)
    or the noiseless one (c -> 2); both maps preserve atom ordering, so a
    single root-find in c lands on the target capacity.
    """
    if not 0.0 < cap_nats < _LN2:
        raise DomainError(f"target capacity {cap_nats!r} outside (0, ln 2)")
    zd = _random_z_law(np.random.default_rng(seed))

    def scaled(c: float) -> ZDistribution:
        z = zd.z * c if c <= 1.0 else zd.z + (c - 1.0) * (1.0 - zd.z)
        return ZDistribution(z, zd.p)

    def cap_gap(c: float) -> float:
        return channels.capacity(channel_from_z(scaled(c))) - cap_nats

    c = find_root(cap_gap, 1e-9, 2.0 - 1e-12, tol.root_abs_tol)
    return channel_from_z(scaled(c))


def check_theorem1(
    ch: BinaryChannel,
    rho1: float,
    rho2_grid: Iterable[float],
    tol: ToleranceConfig = DEFAULT_TOL,
    report: VerificationReport | None = None,
    context: Mapping[str, object] | None = None,
) -> VerificationReport:
    """Extremal-ordering checks against the pair matched to ch at rho1.

    Which orderings hold at each rho2 depends on where (rho1, rho2) falls:

    * rho1 in [0, 3], rho2 in [rho1, 3]: rates and E0 both sandwich the
      channel between the crossover (below) and erasure (above) curves.
    * rho1 in (-1, 0], rho2 <= rho1: the rate sandwich reverses while E0
      keeps the crossover-below/erasure-above order.
    * E0-only regimes: standard order for rho1 <= 0 with rho2 >= 0 and for
      rho1 in [0, 1] with rho2 >= rho1; *reversed* for rho1 > 1 with
      rho2 in [0, 1]; standard again for rho1 > 1 with rho2 <= 0.
    """
    if report is None:
        report = VerificationReport(suite="theorem1")
    bec, bsc = extremal.match_at_rho(ch, rho1, tol)
    slack = tol.ineq_slack
    base = dict(context or {})
    base.update({"rho1": rho1, "eps": bec.eps, "x": bsc.x})
    for rho2 in rho2_grid:
        rho2 = float(rho2)
        inputs = {**base, "rho2": rho2}
        e_w = channels.e0_raw(rho2, ch, tol)
        e_b = extremal.e0_bec(rho2, bec.eps, tol)
        e_s = extremal.e0_bsc(rho2, bsc.x, tol)

        def rec(lhs: float, rhs: float, label: str) -> None:
            report.record(lhs, rhs, slack, label, inputs)

        if 0.0 <= rho1 <= 3.0 and rho1 <= rho2 <= 3.0:
            r_w = channels.r_slope(rho2, ch, tol)
            rec(extremal.r_bsc(rho2, bsc.x, tol), r_w, "rate: bsc<=w, low band")
            rec(r_w, extremal.r_bec(rho2, bec.eps, tol), "rate: w<=bec, low band")
            rec(e_s, e_w, "e0: bsc<=w, low band")
            rec(e_w, e_b, "e0: w<=bec, low band")
        if -1.0 < rho1 <= 0.0 and rho2 <= rho1:
            r_w = channels.r_slope(rho2, ch, tol)
            rec(extremal.r_bec(rho2, bec.eps, tol), r_w, "rate: bec<=w, negative band")
            rec(r_w, extremal.r_bsc(rho2, bsc.x, tol), "rate: w<=bsc, negative band")
            rec(e_s, e_w, "e0: bsc<=w, negative band")
            rec(e_w, e_b, "e0: w<=bec, negative band")
        if -1.0 < rho1 <= 0.0 and rho2 >= 0.0:
            rec(e_s, e_w, "e0: bsc<=w, cross band")
            rec(e_w, e_b, "e0: w<=bec, cross band")
        if 0.0 <= rho1 <= 1.0 and rho2 >= rho1:
            rec(e_s, e_w, "e0: bsc<=w, unit band")
            rec(e_w, e_b, "e0: w<=bec, unit band")
        if rho1 > 1.0 and 0.0 <= rho2 <= 1.0:
            rec(e_b, e_w, "e0: bec<=w, reversed band")
            rec(e_w, e_s, "e0: w<=bsc, reversed band")
        if rho1 > 1.0 and rho2 <= 0.0:
            rec(e_s, e_w, "e0: bsc<=w, high-negative band")
            rec(e_w, e_b, "e0: w<=bec, high-negative band")
    report.trials += 1
    return report


def check_capacity_corollary(
    ch: BinaryChannel,
    tol: ToleranceConfig = DEFAULT_TOL,
    report: VerificationReport | None = None,
    context: Mapping[str, object] | None = None,
    rho_grid: Iterable[float] | None = None,
    rate_fractions: Iterable[float] | None = None,
) -> VerificationReport:
    """Capacity-matched sandwich: E0 order on a rho grid and random-coding
    exponent order on a rate grid."""
    if report is None:
        report = VerificationReport(suite="capacity")
    bec, bsc = extremal.match_at_rho(ch, 0.0, tol)
    slack = tol.ineq_slack
    base = dict(context or {})
    base.update({"eps": bec.eps, "x": bsc.x})
    if rho_grid is None:
        rho_grid = np.linspace(-0.99, 10.0, 16)
    for rho in rho_grid:
        rho = float(rho)
        inputs = {**base, "rho": rho}
        e_w = channels.e0_raw(rho, ch, tol)
        report.record(
            extremal.e0_bsc(rho, bsc.x, tol), e_w, slack, "e0: bsc<=w", inputs
        )
        report.record(
            e_w, extremal.e0_bec(rho, bec.eps, tol), slack, "e0: w<=bec", inputs
        )
    cap = channels.capacity(ch)
    if rate_fractions is None:
        rate_fractions = np.linspace(0.05, 0.95, 8)
    bec_ch = extremal.bec_matrix(bec.eps)
    bsc_ch = extremal.bsc_matrix(bsc.x)
    for frac in rate_fractions:
        rate = float(frac) * cap
        inputs = {**base, "rate": rate}
        er_w = channels.er_at_rate(rate, ch, tol)
        er_b = channels.er_at_rate(rate, bec_ch, tol)
        er_s = channels.er_at_rate(rate, bsc_ch, tol)
        report.record(er_s, er_w, slack, "exponent: bsc<=w", inputs)
        report.record(er_w, er_b, slack, "exponent: w<=bec", inputs)
    report.trials += 1
    return report


def check_corollary1(
    ch: BinaryChannel,
    rho: float,
    tol: ToleranceConfig = DEFAULT_TOL,
    report: VerificationReport | None = None,
    context: Mapping[str, object] | None = None,
) -> VerificationReport:
    """Equal-rate coupling at rho in (0, 1]: the E0 sandwich flips.

    With the erasure and crossover channels chosen to share the channel's
    rate R(rho), the erasure curve drops below and the crossover curve
    rises above, both for E0 and for the parametric exponent at that rho.
    """
    if not 0.0 < rho <= 1.0:
        raise DomainError(f"equal-rate coupling needs rho in (0, 1], got {rho!r}")
    if report is None:
        report = VerificationReport(suite="corollary1")
    slack = tol.ineq_slack
    r_w = channels.r_slope(rho, ch, tol)
    eps = find_root(
        lambda e: extremal.r_bec(rho, e, tol) - r_w, 0.0, 1.0, tol.root_abs_tol
    )
    x = find_root(
        lambda xx: extremal.r_bsc(rho, xx, tol) - r_w, 0.0, 0.5, tol.root_abs_tol
    )
    inputs = dict(context or {})
    inputs.update({"rho": rho, "eps": eps, "x": x, "rate": r_w})
    e_w = channels.e0_raw(rho, ch, tol)
    e_b = extremal.e0_bec(rho, eps, tol)
    e_s = extremal.e0_bsc(rho, x, tol)
    report.record(e_b, e_w, slack, "e0: bec<=w at equal rate", inputs)
    report.record(e_w, e_s, slack, "e0: w<=bsc at equal rate", inputs)
    exp_w = e_w - rho * r_w
    exp_b = e_b - rho * extremal.r_bec(rho, eps, tol)
    exp_s = e_s - rho * extremal.r_bsc(rho, x, tol)
    report.record(exp_b, exp_w, slack, "exponent: bec<=w at equal rate", inputs)
    report.record(exp_w, exp_s, slack, "exponent: w<=bsc at equal rate", inputs)
    report.trials += 1
    return report


def closed_form_equal_rate_eps(rho: float, rate: float) -> float:
    """Erasure rate with r_bec(rho, eps) = rate, in closed form: c/(1+c)
    with c = 2^-rho (ln 2 - rate) / rate."""
    if not 0.0 < rate < _LN2:
        raise DomainError(f"rate {rate!r} outside (0, ln 2)")
    c = math.exp(-rho * _LN2) * (_LN2 - rate) / rate
    return c / (1.0 + c)


def check_lemma_suite(tol: ToleranceConfig = DEFAULT_TOL) -> VerificationReport:
    """Grid checks of the kernel facts the orderings rest on.

    Covers the sign table and late crossing of m_fun, monotonicity of F_fun,
    curvature of the composed maps f and f_tilde, the slope comparator ell
    against its rho = 1 pivot, and the single-hump shape of h_norm.
    """
    report = VerificationReport(suite="lemmas")
    slack = tol.ineq_slack
    k_grid = np.linspace(0.03, 0.97, 12)

    for k in k_grid:
        k = float(k)
        for rho in np.linspace(-0.97, 3.0, 32):
            report.record(
                gfun.m_fun(k, float(rho)), 0.0, 1e-12,
                "m_fun <= 0 on (-1, 3]", {"k": k, "rho": float(rho)},
            )
        for rho in (-1.5, -2.0, -5.0, -20.0):
            report.record(
                -gfun.m_fun(k, rho), 0.0, 1e-12,
                "m_fun >= 0 below -1", {"k": k, "rho": rho},
            )

    for k in np.linspace(0.05, 0.95, 10):
        k = float(k)
        star = gfun.rho_star(k, tol)
        report.record(3.0 - 1e-6, star, 0.0, "rho_star >= 3", {"k": k})
        for bump in (0.5, 2.0, 20.0):
            report.record(
                -gfun.m_fun(k, star + bump), 0.0, 1e-12,
                "m_fun >= 0 above rho_star", {"k": k, "rho": star + bump},
            )

    for k in k_grid:
        k = float(k)
        rhos = np.linspace(0.05, 1.0, 12)
        prev = gfun.F_fun(k, float(rhos[0]))
        for rho in rhos[1:]:
            cur = gfun.F_fun(k, float(rho))
            report.record(
                cur, prev, -1e-12,
                "F_fun strictly decreasing on (0, 1]", {"k": k, "rho": float(rho)},
            )
            prev = cur

    # curvature of t -> f(rho1, rho2, t) via second differences on the
    # interior of the rho1 kernel range; the diagonal is affine (identity)
    curvature_cases = [
        ((-0.5, 1.0), -1.0),
        ((0.5, 2.0), -1.0),
        ((2.0, -0.5), -1.0),
        ((2.0, 0.5), +1.0),
    ]
    for (rho1, rho2), sign in curvature_cases:
        lo, hi = gfun.t_range(rho1)
        ts = np.linspace(lo, hi, 23)[1:-1]
        step = float(ts[1] - ts[0])
        vals = [gfun.f(rho1, rho2, float(t), tol) for t in ts]
        for i in range(1, len(vals) - 1):
            d2 = vals[i - 1] - 2.0 * vals[i] + vals[i + 1]
            report.record(
                sign * -d2, 0.0, slack,
                f"f curvature sign {sign:+.0f}",
                {"rho1": rho1, "rho2": rho2, "t": float(ts[i]), "step": step},
            )

    tilde_cases = [
        ((0.25, 0.25), -1.0),
        ((1.0, 1.0), -1.0),
        ((2.9, 2.9), -1.0),
        ((0.5, 2.0), -1.0),
        ((-0.5, 1.0), -1.0),
        ((-0.5, -0.5), +1.0),
        ((-0.1, -0.1), +1.0),
    ]
    for (rho1, rho2), sign in tilde_cases:
        lo, hi = gfun.t_range(rho1)
        ts = np.linspace(lo, hi, 23)[1:-1]
        vals = [gfun.f_tilde(rho1, rho2, float(t), tol) for t in ts]
        for i in range(1, len(vals) - 1):
            d2 = vals[i - 1] - 2.0 * vals[i] + vals[i + 1]
            report.record(
                sign * -d2, 0.0, slack,
                f"f_tilde curvature sign {sign:+.0f}",
                {"rho1": rho1, "rho2": rho2, "t": float(ts[i])},
            )

    z_grid = np.linspace(0.05, 0.95, 10)
    for z in z_grid:
        z = float(z)
        pivot = gfun.ell(1.0, z, tol)
        for rho in (1.5, 2.0, 5.0, 20.0):
            report.record(
                pivot, gfun.ell(rho, z, tol), slack,
                "ell above its rho=1 value for rho>=1", {"z": z, "rho": rho},
            )
        for rho in (-0.5, -0.1, 0.2, 0.7):
            report.record(
                gfun.ell(rho, z, tol), pivot, slack,
                "ell below its rho=1 value for rho<=1", {"z": z, "rho": rho},
            )

    for z in z_grid:
        z = float(z)
        rmax = gfun.rho_max(z, tol)
        report.record(3.0 - 1e-6, rmax, 0.0, "rho_max >= 3", {"z": z})
        peak = gfun.h_norm(rmax, z, tol)
        tail = gfun.h_norm(1.0, z, tol)
        for rho in np.linspace(0.1, gfun.RHO_CAP, 24):
            report.record(
                gfun.h_norm(float(rho), z, tol), peak, slack,
                "h_norm peaks at rho_max", {"z": z, "rho": float(rho)},
            )
        report.record(
            tail, gfun.h_norm(gfun.RHO_CAP, z, tol), slack,
            "h_norm approaches its limit from above", {"z": z},
        )
    report.trials += 1
    return report


def run_theorem1_fuzz(
    seed: int = 0,
    trials: int = 200,
    grid_points: int = 16,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> VerificationReport:
    """Random channels and matching points across every ordering regime."""
    report = VerificationReport(suite="theorem1")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        cseed = int(rng.integers(0, 2**31 - 1))
        symmetric = bool(rng.integers(0, 2))
        ch = random_symmetric_channel(cseed) if symmetric else random_channel(cseed)
        ctx = {"seed": cseed, "symmetric": symmetric}

        rho1 = float(rng.uniform(0.0, 3.0))
        check_theorem1(ch, rho1, np.linspace(rho1, 3.0, grid_points), tol, report, ctx)
        check_theorem1(
            ch,
            min(rho1, 1.0),
            np.linspace(min(rho1, 1.0), 10.0, grid_points),
            tol,
            report,
            ctx,
        )

        rho1_neg = float(rng.uniform(-0.95, 0.0))
        lo = min(-0.97, rho1_neg - 0.02)
        check_theorem1(
            ch, rho1_neg, np.linspace(lo, rho1_neg, grid_points), tol, report, ctx
        )
        check_theorem1(
            ch, rho1_neg, np.linspace(0.0, 10.0, grid_points), tol, report, ctx
        )

        rho1_high = float(rng.uniform(1.0 + 1e-3, 5.0))
        check_theorem1(
            ch, rho1_high, np.linspace(0.0, 1.0, grid_points), tol, report, ctx
        )
        check_theorem1(
            ch, rho1_high, np.linspace(-0.95, 0.0, grid_points), tol, report, ctx
        )
    report.trials = trials
    return report


def run_capacity_fuzz(
    seed: int = 0, trials: int = 50, tol: ToleranceConfig = DEFAULT_TOL
) -> VerificationReport:
    """Capacity-matched sandwich over random channels."""
    report = VerificationReport(suite="capacity")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        cseed = int(rng.integers(0, 2**31 - 1))
        symmetric = bool(rng.integers(0, 2))
        ch = random_symmetric_channel(cseed) if symmetric else random_channel(cseed)
        check_capacity_corollary(
            ch, tol, report, {"seed": cseed, "symmetric": symmetric}
        )
    report.trials = trials
    return report


def run_corollary1_fuzz(
    seed: int = 0, trials: int = 50, tol: ToleranceConfig = DEFAULT_TOL
) -> VerificationReport:
    """Equal-rate coupling over random channels and rho in (0, 1]."""
    report = VerificationReport(suite="corollary1")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        cseed = int(rng.integers(0, 2**31 - 1))
        symmetric = bool(rng.integers(0, 2))
        ch = random_symmetric_channel(cseed) if symmetric else random_channel(cseed)
        rho = float(rng.uniform(0.01, 1.0))
        check_corollary1(ch, rho, tol, report, {"seed": cseed, "symmetric": symmetric})
    report.trials = trials
    return report
