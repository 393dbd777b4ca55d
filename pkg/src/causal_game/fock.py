"""Truncated Fock-space engine for the few-photon circuits around the labs.

States are sparse maps from occupation vectors to amplitudes over an ordered
list of labelled modes. Two-mode linear optics acts on creation operators:
a 2x2 matrix ``U`` sends a_i^dag -> U[0,0] a_i^dag + U[1,0] a_j^dag and
a_j^dag -> U[0,1] a_i^dag + U[1,1] a_j^dag.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Sequence

import numpy as np

from .errors import InvalidEta, InvalidMode, TruncationOverflow, UnknownMode

NORM_TOL = 1e-12
DROP_TOL = 1e-15

Occupation = tuple[int, ...]

BEAMSPLITTER_50_50 = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)


def coupler(theta: float) -> np.ndarray:
    """exp(i theta (a b^dag + a^dag b)); theta = pi/2 swaps a -> i b."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, 1j * s], [1j * s, c]], dtype=complex)


@dataclass(frozen=True)
class FockState:
    mode_labels: tuple[str, ...]
    amplitudes: Mapping[Occupation, complex]
    n_max: int = 2

    def __post_init__(self):
        labels = tuple(self.mode_labels)
        if len(set(labels)) != len(labels):
            raise InvalidMode(f"duplicate mode labels in {labels}")
        clean = {}
        for occ, amp in self.amplitudes.items():
            occ = tuple(int(n) for n in occ)
            if len(occ) != len(labels) or min(occ, default=0) < 0:
                raise InvalidMode(f"occupation {occ} does not fit modes {labels}")
            if sum(occ) > self.n_max:
                raise TruncationOverflow(f"occupation {occ} exceeds n_max={self.n_max}")
            amp = complex(amp)
            if abs(amp) > DROP_TOL:
                clean[occ] = clean.get(occ, 0j) + amp
        norm = sum(abs(a) ** 2 for a in clean.values())
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm is {norm!r}, expected 1")
        object.__setattr__(self, "mode_labels", labels)
        object.__setattr__(self, "amplitudes", MappingProxyType(clean))

    @classmethod
    def vacuum(cls, mode_labels: Sequence[str], n_max: int = 2) -> "FockState":
        return cls(tuple(mode_labels), {(0,) * len(mode_labels): 1.0}, n_max)

    @classmethod
    def basis(cls, mode_labels: Sequence[str], photons: Mapping[str, int], n_max: int = 2) -> "FockState":
        """|n_1, n_2, ...> with the listed photon numbers, others empty."""
        labels = tuple(mode_labels)
        unknown = set(photons) - set(labels)
        if unknown:
            raise UnknownMode(sorted(unknown))
        return cls(labels, {tuple(photons.get(m, 0) for m in labels): 1.0}, n_max)

    def index(self, label: str) -> int:
        try:
            return self.mode_labels.index(label)
        except ValueError:
            raise UnknownMode(label) from None

    def norm(self) -> float:
        return math.sqrt(sum(abs(a) ** 2 for a in self.amplitudes.values()))

    def amplitude(self, photons: Mapping[str, int]) -> complex:
        occ = tuple(photons.get(m, 0) for m in self.mode_labels)
        return self.amplitudes.get(occ, 0j)

    def photon_numbers(self) -> set[int]:
        return {sum(occ) for occ in self.amplitudes}

    def relabel(self, mode_labels: Sequence[str]) -> "FockState":
        if len(mode_labels) != len(self.mode_labels):
            raise InvalidMode("relabel must keep the number of modes")
        return FockState(tuple(mode_labels), dict(self.amplitudes), self.n_max)

    def marginal(self, labels: Sequence[str]) -> dict[Occupation, float]:
        """Photon-number distribution on a subset of modes."""
        idx = [self.index(m) for m in labels]
        out: dict[Occupation, float] = {}
        for occ, amp in self.amplitudes.items():
            key = tuple(occ[i] for i in idx)
            out[key] = out.get(key, 0.0) + abs(amp) ** 2
        return out

    def reduced_density_matrix(self, label: str) -> np.ndarray:
        """Partial trace onto one mode; (n_max+1)x(n_max+1) in the number basis."""
        k = self.index(label)
        rho = np.zeros((self.n_max + 1, self.n_max + 1), dtype=complex)
        by_rest: dict[Occupation, list[tuple[int, complex]]] = {}
        for occ, amp in self.amplitudes.items():
            rest = occ[:k] + occ[k + 1:]
            by_rest.setdefault(rest, []).append((occ[k], amp))
        for terms in by_rest.values():
            for n, a in terms:
                for m, b in terms:
                    rho[n, m] += a * b.conjugate()
        return rho


def apply_two_mode(state: FockState, mode_i: str, mode_j: str, matrix: np.ndarray) -> FockState:
    """Apply a passive two-mode unitary given by its action on creation operators."""
    i, j = state.index(mode_i), state.index(mode_j)
    if i == j:
        raise InvalidMode("two-mode operation needs distinct modes")
    u = np.asarray(matrix, dtype=complex)
    out: dict[Occupation, complex] = {}
    for occ, amp in state.amplitudes.items():
        ni, nj = occ[i], occ[j]
        total = ni + nj
        scale = amp / math.sqrt(math.factorial(ni) * math.factorial(nj))
        for p in range(ni + 1):
            cp = math.comb(ni, p) * u[0, 0] ** p * u[1, 0] ** (ni - p)
            for q in range(nj + 1):
                cq = math.comb(nj, q) * u[0, 1] ** q * u[1, 1] ** (nj - q)
                mi, mj = p + q, total - p - q
                new = list(occ)
                new[i], new[j] = mi, mj
                key = tuple(new)
                coeff = scale * cp * cq * math.sqrt(math.factorial(mi) * math.factorial(mj))
                out[key] = out.get(key, 0j) + coeff
    if any(sum(occ) > state.n_max for occ in out):
        # photon number is conserved, so this means a broken input state
        raise TruncationOverflow("passive optics produced a term above n_max")
    return FockState(state.mode_labels, out, state.n_max)


def apply_beamsplitter(state: FockState, mode_i: str, mode_j: str) -> FockState:
    """50:50 beamsplitter: a_i -> (a_i + a_j)/sqrt2, a_j -> (a_i - a_j)/sqrt2."""
    return apply_two_mode(state, mode_i, mode_j, BEAMSPLITTER_50_50)


def apply_cross_kerr(state: FockState, mode_i: str, mode_j: str, phase: float = math.pi) -> FockState:
    i, j = state.index(mode_i), state.index(mode_j)
    if i == j:
        raise InvalidMode("cross-Kerr needs distinct modes")
    out = {}
    for occ, amp in state.amplitudes.items():
        n = occ[i] * occ[j]
        # exact sign for the pi case so CNOT amplitudes carry no 1e-16 imaginary dust
        if phase == math.pi:
            out[occ] = amp * (-1) ** n
        else:
            out[occ] = amp * cmath.exp(1j * phase * n)
    return FockState(state.mode_labels, out, state.n_max)


@dataclass(frozen=True, eq=False)
class SingleModeMixedState:
    """rho = (1 - eta)|0><0| + eta |1><1| in the lab mode."""

    eta: float
    matrix: np.ndarray = field(repr=False)

    @classmethod
    def closed_form(cls, eta: float) -> "SingleModeMixedState":
        return cls(eta, np.diag([1.0 - eta, eta]).astype(complex))

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)


MIRROR_MODES = ("a0", "a_perp", "b_perp")


def mirror_output_state(eta: float) -> FockState:
    """Single photon split sqrt(eta) a0 + sqrt(1-eta) a_perp, after the mirror
    unitary has swapped a_perp into the reflected mode b_perp (with a factor i)."""
    if not (0.0 <= eta <= 1.0):
        raise InvalidEta(f"eta must be in [0, 1], got {eta!r}")
    incoming = FockState(
        MIRROR_MODES,
        {(1, 0, 0): math.sqrt(eta), (0, 1, 0): math.sqrt(1.0 - eta)},
    )
    return apply_two_mode(incoming, "a_perp", "b_perp", coupler(math.pi / 2))


def mode_selective_mirror(eta: float, input_has_photon: bool = True) -> SingleModeMixedState:
    """Lab-mode state behind a mirror that transmits only a0.

    ``eta`` is the squared overlap between the incoming photon's mode and a0.
    """
    if not (0.0 <= eta <= 1.0):
        raise InvalidEta(f"eta must be in [0, 1], got {eta!r}")
    if not input_has_photon:
        return SingleModeMixedState.closed_form(0.0)
    rho = mirror_output_state(eta).reduced_density_matrix("a0")
    if abs(rho[2:, :]).max(initial=0.0) > NORM_TOL or abs(rho[:, 2:]).max(initial=0.0) > NORM_TOL:
        raise TruncationOverflow("lab mode picked up two-photon weight")
    block = rho[:2, :2]
    return SingleModeMixedState(float(block[1, 1].real), block)


@dataclass(frozen=True)
class DualRailQubit:
    """alpha on rail 0, beta on rail 1."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        n = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(n - 1.0) > NORM_TOL:
            raise ValueError(f"qubit not normalised: |alpha|^2 + |beta|^2 = {n!r}")

    @classmethod
    def zero(cls) -> "DualRailQubit":
        return cls(1.0, 0.0)

    @classmethod
    def one(cls) -> "DualRailQubit":
        return cls(0.0, 1.0)

    @classmethod
    def bit(cls, value: int) -> "DualRailQubit":
        return cls.one() if value else cls.zero()


CNOT_INPUT_MODES = ("a", "a'", "b", "b'")
CNOT_OUTPUT_MODES = ("a", "a'", "d+", "d-")

# (control, target) -> (control, target, amplitude) for the Kerr circuit with
# the beamsplitter convention above: CNOT followed by Z on the control.
CNOT_BASIS_MAP = {
    (0, 0): (0, 0, 1),
    (0, 1): (0, 1, 1),
    (1, 0): (1, 1, -1),
    (1, 1): (1, 0, -1),
}


def dual_rail_input(control: DualRailQubit, target: DualRailQubit) -> FockState:
    amps = {}
    for c_occ, c_amp in (((1, 0), control.alpha), ((0, 1), control.beta)):
        for t_occ, t_amp in (((1, 0), target.alpha), ((0, 1), target.beta)):
            amps[c_occ + t_occ] = c_amp * t_amp
    return FockState(CNOT_INPUT_MODES, amps)


def cnot_open_loop(control: DualRailQubit, target: DualRailQubit) -> FockState:
    """Kerr CNOT: split the target on a beamsplitter, give arm b a pi phase
    per photon in a', recombine. Output modes are a, a', d+, d-."""
    state = dual_rail_input(control, target)
    state = apply_beamsplitter(state, "b", "b'")
    state = apply_cross_kerr(state, "b", "a'", math.pi)
    state = apply_beamsplitter(state, "b", "b'")
    return state.relabel(CNOT_OUTPUT_MODES)


def dual_rail_statistics(state: FockState) -> dict[tuple[int, int], float]:
    """Probabilities of (control bit, target bit) for a 4-mode dual-rail state.

    Raises if any component leaves the one-photon-per-qubit subspace.
    """
    out: dict[tuple[int, int], float] = {}
    for occ, amp in state.amplitudes.items():
        a, a1, t0, t1 = occ
        if a + a1 != 1 or t0 + t1 != 1:
            raise ValueError(f"component {occ} is outside the dual-rail code space")
        key = (a1, t1)
        out[key] = out.get(key, 0.0) + abs(amp) ** 2
    return out


def _parity(n: int) -> int:
    """Eigenvalue of exp(-i pi n_op) on an n-photon state."""
    return -1 if n % 2 else 1


def cnot_feedback_zero_time(qubit: DualRailQubit) -> tuple[float, float]:
    """Detection probabilities at (d+, d-) when the CNOT outputs a, a'_out are
    fed straight back into b, b'.

    With b = a and b' = a'_out the output operators read
        d+- = [(P' +- 1) a + (P' -+ 1) K a'] / 2,
    P' = exp(-i pi a'^dag a'), K = exp(-i pi c^dag c). Acting on a single
    photon, both P' and K are evaluated after the photon has been annihilated,
    i.e. on the vacuum, so the self-referential c never needs to be solved.
    """
    p_vac = _parity(0)
    k_vac = _parity(0)
    amp_plus = qubit.alpha * (p_vac + 1) / 2 + qubit.beta * (p_vac - 1) * k_vac / 2
    amp_minus = qubit.alpha * (p_vac - 1) / 2 + qubit.beta * (p_vac + 1) * k_vac / 2
    return abs(amp_plus) ** 2, abs(amp_minus) ** 2
