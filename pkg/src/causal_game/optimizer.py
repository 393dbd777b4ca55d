"""Optimal timing offset, violation thresholds and parameter sweeps.

Everything here assumes equal widths for the two labs unless a separate
``sigma_b`` is passed to :func:`sweep`.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import InvalidConfig, NoViolation
from .game import GameConfig, success_probability

BIFURCATION_SIGMA_TAU = 1 / math.sqrt(2)
REGIME_A_FRACTION = 0.95
COARSE_POINTS = 4096
DT_RESOLUTION = 1e-12
THRESHOLD_RTOL = 1e-10
THRESHOLD_BRACKET = 20.0


class Regime(enum.Enum):
    A = "A"  # dt* close to +-tau: nearly light-like exchange
    B = "B"  # 0 < dt* < 0.95 tau
    C = "C"  # dt* = 0: symmetric timing


@dataclass(frozen=True)
class OptimumReport:
    dt_star: float
    p_succ_star: float
    regime: Regime
    bifurcation_sigma_tau: float = BIFURCATION_SIGMA_TAU


def transmission_sum(dt, sigma: float, tau: float):
    """exp(-(dt - tau)^2 sigma^2) + exp(-(dt + tau)^2 sigma^2); works on arrays."""
    return np.exp(-((dt - tau) ** 2) * sigma**2) + np.exp(-((dt + tau) ** 2) * sigma**2)


def _stationarity(u: float, a: float) -> float:
    """q(u) = 1 - a tanh(2 a u) / u, with q(0) = 1 - 2 a^2.

    In units u = sigma*dt, a = sigma*tau the derivative of the transmission
    sum is -4 exp(-u^2 - a^2) cosh(2au) * u * q(u), and q is increasing on
    u > 0, so q has at most one positive root.
    """
    if u == 0.0:
        return 1.0 - 2.0 * a * a
    return 1.0 - a * math.tanh(2.0 * a * u) / u


def _check_positive(**kw):
    for name, v in kw.items():
        if not (v > 0 and math.isfinite(v)):
            raise InvalidConfig(f"{name} must be positive and finite, got {v!r}")


def classify(dt_star: float, tau: float) -> Regime:
    if dt_star == 0.0:
        return Regime.C
    if dt_star >= REGIME_A_FRACTION * tau:
        return Regime.A
    return Regime.B


def optimal_dt(sigma: float, tau: float) -> OptimumReport:
    """Maximise P_succ over dt for equal widths; returns the dt* >= 0 of the
    +-dt* pair."""
    _check_positive(sigma=sigma, tau=tau)
    a = sigma * tau

    grid = np.linspace(0.0, 2.0 * tau, COARSE_POINTS)
    f = transmission_sum(grid, sigma, tau)
    i = int(np.argmax(f))

    # flat maximum at the bifurcation resolves to 0
    if 1.0 - 2.0 * a * a >= -4 * np.finfo(float).eps:
        dt_star = 0.0
    else:
        lo = float(grid[i - 1]) if i > 0 else 0.0
        hi = float(grid[i + 1]) if i + 1 < len(grid) else float(grid[-1])
        if not (_stationarity(sigma * lo, a) <= 0.0 <= _stationarity(sigma * hi, a)):
            # q(0) < 0 < q(tau) always brackets the single root
            lo, hi = 0.0, tau
        while hi - lo > DT_RESOLUTION * tau:
            mid = 0.5 * (lo + hi)
            if _stationarity(sigma * mid, a) < 0.0:
                lo = mid
            else:
                hi = mid
        dt_star = 0.5 * (lo + hi)

    p_star = success_probability(GameConfig.symmetric(sigma, tau, dt_star)).p_succ
    return OptimumReport(dt_star, p_star, classify(dt_star, tau))


@dataclass(frozen=True)
class ThresholdResult:
    """Largest sigma with P_succ >= 3/4. ``always_violates`` means the bound
    holds over the whole bracket, and ``sigma`` is the bracket top."""

    sigma: float
    always_violates: bool = False


def violation_threshold_sigma(tau: float, dt: float = 0.0) -> ThresholdResult:
    _check_positive(tau=tau)

    def excess(sigma):
        # P_succ - 3/4 = (sum - 1) / 4; work with the better-conditioned sum
        return float(transmission_sum(dt, sigma, tau)) - 1.0

    hi = THRESHOLD_BRACKET / tau
    if excess(hi) >= 0.0:
        return ThresholdResult(hi, always_violates=True)
    lo = hi * 1e-12
    if excess(lo) < 0.0:
        raise NoViolation(f"P_succ < 3/4 on the whole bracket for tau={tau!r}, dt={dt!r}")
    while hi - lo > THRESHOLD_RTOL * hi:
        mid = 0.5 * (lo + hi)
        if excess(mid) >= 0.0:
            lo = mid
        else:
            hi = mid
    return ThresholdResult(lo)


@dataclass(frozen=True)
class SweepRow:
    sigma_a: float
    sigma_b: float
    tau: float
    dt: float
    p_ab: float
    p_ba: float
    p_succ: float
    violates: bool


FIELDS = ("sigma_a", "sigma_b", "tau", "dt", "p_ab", "p_ba", "p_succ", "violates")


def sweep(
    sigma_list: Iterable[float],
    tau: float,
    dt_grid: Iterable[float],
    sigma_b: Optional[float] = None,
    k0: Optional[float] = None,
) -> list[SweepRow]:
    """Rows in sigma-major, dt-minor order. ``sigma_b=None`` means Bob's
    width tracks Alice's."""
    sigmas: Sequence[float] = list(sigma_list)
    dts: Sequence[float] = list(dt_grid)
    if not sigmas or not dts:
        raise InvalidConfig("sweep grids must be nonempty")
    rows = []
    for s in sigmas:
        sb = s if sigma_b is None else sigma_b
        for dt in dts:
            st = success_probability(GameConfig(s, sb, tau, dt, k0))
            rows.append(SweepRow(s, sb, tau, dt, st.p_transmit_ab, st.p_transmit_ba, st.p_succ, st.violates_bound))
    return rows
