"""Two-party causal-inequality game played with Gaussian-localised photon modes."""
from .errors import (
    CausalGameError,
    InvalidConfig,
    InvalidEta,
    InvalidMode,
    MismatchedCarrier,
    NoViolation,
    QuadratureFailure,
    TruncationOverflow,
    UnknownMode,
)
from .fock import (
    DualRailQubit,
    FockState,
    SingleModeMixedState,
    apply_beamsplitter,
    apply_cross_kerr,
    cnot_feedback_zero_time,
    cnot_open_loop,
    mode_selective_mirror,
)
from .game import (
    GameConfig,
    MonteCarloReport,
    SuccessStats,
    causal_bound,
    simulate_game,
    success_probability,
    violates_bound,
)
from .modes import (
    GaussianMode,
    OverlapResult,
    Polarization,
    energy_expectation,
    overlap_probability_quadrature,
    spectral_energy,
    transmission_deficit,
    transmission_probability,
)
from .optimizer import OptimumReport, Regime, SweepRow, ThresholdResult, optimal_dt, sweep, violation_threshold_sigma

__version__ = "0.1.0"
