"""Gaussian-localised photon modes in 1+1-D and their overlaps.

A mode with carrier ``k0``, spectral width ``sigma`` and centre ``(t, x)``
has spectral amplitude

    g(k) = exp(-(k - k0)^2 / (4 sigma^2)) / (2 pi sigma^2)^(1/4)

and spacetime phase ``exp(-i k (t - x))`` (right movers, omega_k = k).
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import InvalidMode, MismatchedCarrier, QuadratureFailure

PARAXIAL_RATIO = 10.0
WINDOW_SIGMAS = 12.0
MAX_DEPTH = 40


class Polarization(enum.Enum):
    H = "h"
    V = "v"


class Method(enum.Enum):
    ANALYTIC = "analytic"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class GaussianMode:
    k0: float
    sigma: float
    t_center: float = 0.0
    x_center: float = 0.0
    polarization: Polarization = Polarization.H

    def __post_init__(self):
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise InvalidMode(f"sigma must be positive and finite, got {self.sigma!r}")
        if not (self.k0 > 0 and math.isfinite(self.k0)):
            raise InvalidMode(f"k0 must be positive and finite, got {self.k0!r}")

    @property
    def paraxial_ok(self) -> bool:
        return self.k0 / self.sigma >= PARAXIAL_RATIO

    def spectrum(self, k: float) -> float:
        """Real spectral amplitude g(k), normalised so that int |g|^2 dk = 1."""
        return math.exp(-((k - self.k0) ** 2) / (4 * self.sigma**2)) / (
            2 * math.pi * self.sigma**2
        ) ** 0.25


@dataclass(frozen=True)
class OverlapResult:
    probability: float
    method: Method
    warning: Optional[str] = None


def delay_argument(sender: GaussianMode, receiver: GaussianMode) -> float:
    """(t_recv - t_send) - (x_recv - x_send); zero when the receiver sits on
    the sender's light-like trajectory."""
    return (receiver.t_center - sender.t_center) - (receiver.x_center - sender.x_center)


def _paraxial_warning(*modes: GaussianMode) -> Optional[str]:
    bad = [m for m in modes if not m.paraxial_ok]
    if not bad:
        return None
    ratios = ", ".join(f"{m.k0 / m.sigma:.3g}" for m in bad)
    return f"k0/sigma below {PARAXIAL_RATIO:g} (got {ratios}); 1+1-D right-mover model is marginal"


def gaussian_transmission(sigma_send: float, sigma_recv: float, delay: float) -> float:
    """Closed-form |<0|a_recv a_send^dagger|0>|^2 for equal carriers."""
    prod = sigma_send * sigma_recv
    s2 = sigma_send**2 + sigma_recv**2
    return 2 * prod / s2 * math.exp(-2 * delay**2 * prod**2 / s2)


def transmission_deficit(sigma_send: float, sigma_recv: float, delay: float) -> float:
    """1 - gaussian_transmission(...), accurate when the transmission is close to 1."""
    prod = sigma_send * sigma_recv
    s2 = sigma_send**2 + sigma_recv**2
    ratio = 2 * prod / s2
    width_loss = (sigma_send - sigma_recv) ** 2 / s2
    return width_loss - ratio * math.expm1(-2 * delay**2 * prod**2 / s2)


def transmission_probability(sender: GaussianMode, receiver: GaussianMode) -> OverlapResult:
    """Probability that a photon in ``sender`` passes a mode-selective mirror
    matched to ``receiver``.

    Reduces to ``exp(-delay^2 sigma^2)`` for equal widths.
    """
    if sender.k0 != receiver.k0:
        raise MismatchedCarrier(
            f"analytic overlap needs equal k0 (got {sender.k0!r} and {receiver.k0!r}); "
            "use overlap_probability_quadrature"
        )
    p = gaussian_transmission(sender.sigma, receiver.sigma, delay_argument(sender, receiver))
    return OverlapResult(min(p, 1.0), Method.ANALYTIC, _paraxial_warning(sender, receiver))


def _adaptive_simpson(f: Callable[[float], complex], a: float, b: float, tol: float) -> complex:
    def simpson(fa, fm, fb, h):
        return h / 6 * (fa + 4 * fm + fb)

    def recurse(a, fa, m, fm, b, fb, whole, tol, depth):
        lm, rm = (a + m) / 2, (m + b) / 2
        flm, frm = f(lm), f(rm)
        left = simpson(fa, flm, fm, m - a)
        right = simpson(fm, frm, fb, b - m)
        diff = left + right - whole
        if abs(diff) <= 15 * tol:
            return left + right + diff / 15
        if depth >= MAX_DEPTH:
            raise QuadratureFailure(
                f"no convergence on [{a:.6g}, {b:.6g}] after {MAX_DEPTH} halvings"
            )
        return recurse(a, fa, lm, flm, m, fm, left, tol / 2, depth + 1) + recurse(
            m, fm, rm, frm, b, fb, right, tol / 2, depth + 1
        )

    fa, fb, m = f(a), f(b), (a + b) / 2
    fm = f(m)
    return recurse(a, fa, m, fm, b, fb, simpson(fa, fm, fb, b - a), tol, 0)


def integrate(f: Callable[[float], complex], a: float, b: float, tol: float, panels: int = 24) -> complex:
    """Adaptive Simpson over ``panels`` equal sub-intervals, absolute error ~ tol."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    edges = [a + (b - a) * i / panels for i in range(panels + 1)]
    return sum(
        (_adaptive_simpson(f, lo, hi, tol / panels) for lo, hi in zip(edges, edges[1:])),
        0j,
    )


def overlap_amplitude_quadrature(sender: GaussianMode, receiver: GaussianMode, tol: float = 1e-10) -> complex:
    """<0|a_recv a_send^dagger|0> by direct integration of the k-integral.

    A constant phase exp(-i k_ref d) is pulled out of the integrand; it does
    not change the modulus but keeps the panels from oscillating at k0.
    """
    d = delay_argument(sender, receiver)
    width = WINDOW_SIGMAS * max(sender.sigma, receiver.sigma)
    lo = min(sender.k0, receiver.k0) - width
    hi = max(sender.k0, receiver.k0) + width
    k_ref = (lo + hi) / 2

    def integrand(k):
        return sender.spectrum(k) * receiver.spectrum(k) * cmath.exp(-1j * (k - k_ref) * d)

    return integrate(integrand, lo, hi, tol) * cmath.exp(-1j * k_ref * d)


def overlap_probability_quadrature(sender: GaussianMode, receiver: GaussianMode, tol: float = 1e-10) -> OverlapResult:
    if not tol > 0:
        raise ValueError("tol must be positive")
    # |A|^2 error <= 2|A| dA + dA^2 with |A| <= 1
    amp = overlap_amplitude_quadrature(sender, receiver, tol / 3)
    p = abs(amp) ** 2
    return OverlapResult(min(max(p, 0.0), 1.0), Method.QUADRATURE, _paraxial_warning(sender, receiver))


def spectral_energy(k0: float, sigma: float, tol: float = 1e-10) -> float:
    """int dk/(2 pi sigma) |k| exp(-(k - k0)^2 / (2 sigma^2)), by quadrature.

    Accepts k0 <= 0 (unlike GaussianMode) so the symmetric-spectrum limit
    can be evaluated.
    """
    if not (sigma > 0 and math.isfinite(sigma)):
        raise InvalidMode(f"sigma must be positive and finite, got {sigma!r}")
    norm = 1 / (2 * math.pi * sigma)

    def integrand(k):
        return norm * abs(k) * math.exp(-((k - k0) ** 2) / (2 * sigma**2))

    lo, hi = k0 - WINDOW_SIGMAS * sigma, k0 + WINDOW_SIGMAS * sigma
    # split at the kink of |k|
    if lo < 0 < hi:
        pieces = [(lo, 0.0), (0.0, hi)]
    else:
        pieces = [(lo, hi)]
    return sum(integrate(integrand, a, b, tol / len(pieces)).real for a, b in pieces)


def energy_expectation(mode: GaussianMode, tol: float = 1e-10) -> float:
    """<1,j|H|1,j> for a single photon in ``mode``.

    For k0 >> sigma this approaches k0 / sqrt(2 pi).
    """
    return spectral_energy(mode.k0, mode.sigma, tol)
