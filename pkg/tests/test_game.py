import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from causal_game.errors import InvalidConfig
from causal_game.game import (
    GameConfig,
    causal_bound,
    guess_probability,
    simulate_game,
    success_probability,
    violates_bound,
)
from causal_game.modes import gaussian_transmission

widths = st.floats(min_value=0.01, max_value=10.0)
taus = st.floats(min_value=0.01, max_value=10.0)
offsets = st.floats(min_value=-20.0, max_value=20.0)


def equal_width_psucc(sigma, tau, dt):
    return 0.25 * (2 + math.exp(-((tau - dt) ** 2) * sigma**2) + math.exp(-((tau + dt) ** 2) * sigma**2))


def test_causal_bound():
    assert causal_bound() == 0.75
    assert not violates_bound(0.75)
    assert violates_bound(0.7500001)


def test_threshold_is_exactly_three_quarters():
    stats = success_probability(GameConfig.symmetric(math.sqrt(math.log(2)), 1.0))
    assert stats.p_succ == pytest.approx(0.75, abs=1e-15)
    assert not stats.violates_bound


def test_asymmetric_timing():
    stats = success_probability(GameConfig.symmetric(1.0, 1.0, dt=1.0))
    assert stats.p_succ == pytest.approx(0.25 * (3 + math.exp(-4)), abs=1e-15)
    assert stats.p_succ == pytest.approx(0.754579, abs=1e-6)
    assert stats.p_transmit_ab == 1.0
    assert stats.violates_bound


def test_delocalised_limit():
    assert success_probability(GameConfig.symmetric(1e-6, 1.0)).p_succ == pytest.approx(1.0, abs=1e-11)


def test_direction_of_transmissions():
    # Bob late by tau: Alice's photon arrives on time, Bob's is 2 tau off
    stats = success_probability(GameConfig(0.5, 0.5, 1.0, dt=1.0))
    assert stats.p_transmit_ab == 1.0
    assert stats.p_transmit_ba == pytest.approx(math.exp(-1.0), abs=1e-15)
    assert stats.p_bob_guesses_right == 1.0


def test_unequal_widths_general_formula():
    sa, sb, tau, dt = 0.4, 1.1, 1.3, 0.2
    s2 = sa**2 + sb**2
    expected = 0.25 * (
        2
        + 2 * sa * sb / s2 * math.exp(-2 * (dt + tau) ** 2 * sa**2 * sb**2 / s2)
        + 2 * sa * sb / s2 * math.exp(-2 * (-dt + tau) ** 2 * sa**2 * sb**2 / s2)
    )
    assert success_probability(GameConfig(sa, sb, tau, dt)).p_succ == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("kwargs", [dict(sigma_a=0), dict(sigma_b=-1), dict(tau=0), dict(dt=math.nan)])
def test_invalid_config(kwargs):
    base = dict(sigma_a=1.0, sigma_b=1.0, tau=1.0, dt=0.0)
    base.update(kwargs)
    with pytest.raises(InvalidConfig):
        GameConfig(**base)


def test_default_carrier():
    assert GameConfig(0.5, 2.0, 1.0).k0 == 200.0


@given(widths, widths, taus, offsets)
def test_stats_invariants(sa, sb, tau, dt):
    s = success_probability(GameConfig(sa, sb, tau, dt))
    assert 0.5 <= s.p_succ <= 1.0
    assert s.p_succ == pytest.approx((s.p_bob_guesses_right + s.p_alice_guesses_right) / 2, abs=1e-15)
    assert s.p_bob_guesses_right == guess_probability(s.p_transmit_ab)
    assert s.p_alice_guesses_right == guess_probability(s.p_transmit_ba)
    assert s.excess_over_bound == pytest.approx(s.p_succ - 0.75, abs=1e-15)
    if s.p_succ > 0.75 + 1e-15:
        assert s.violates_bound
    if s.p_succ < 0.75:
        assert not s.violates_bound
    if s.violates_bound:
        assert s.excess_over_bound > 0 and s.p_succ >= 0.75


@pytest.mark.parametrize("sigma_tau", [4.0, 6.0, 10.0])
def test_violation_below_one_ulp_is_still_flagged(sigma_tau):
    # 3/4 + e^(-4 a^2)/4 rounds to exactly 0.75
    s = success_probability(GameConfig.symmetric(sigma_tau, 1.0, dt=1.0))
    assert s.p_succ == 0.75
    assert s.violates_bound
    assert s.excess_over_bound == pytest.approx(0.25 * math.exp(-4 * sigma_tau**2), rel=1e-12)


def test_near_miss_of_asymmetric_timing_is_not_flagged():
    # dt slightly off tau: the loss in p_ab outweighs e^-100 from p_ba
    s = success_probability(GameConfig.symmetric(5.0, 1.0, dt=1.0 + 1e-7))
    assert s.p_succ < 0.75
    assert not s.violates_bound


@given(widths, taus, offsets)
def test_equal_width_closed_form_and_evenness(sigma, tau, dt):
    p = success_probability(GameConfig.symmetric(sigma, tau, dt)).p_succ
    assert p == pytest.approx(equal_width_psucc(sigma, tau, dt), abs=1e-15)
    assert p == pytest.approx(success_probability(GameConfig.symmetric(sigma, tau, -dt)).p_succ, abs=1e-15)


@given(widths, widths, taus, offsets)
def test_unequal_width_prefactor(sa, sb, tau, dt):
    s = success_probability(GameConfig(sa, sb, tau, dt))
    prefactor = gaussian_transmission(sa, sb, 0.0)
    assert prefactor <= 1.0
    assert s.p_transmit_ab <= prefactor and s.p_transmit_ba <= prefactor
    if abs(sa - sb) > 1e-6 * max(sa, sb):
        assert prefactor < 1.0


def test_unequal_width_can_beat_geometric_mean_at_large_delay():
    # Pins the reason the "same geometric mean" comparison is not used as a property:
    # a wider exponent can outweigh the prefactor once the delay is many widths.
    equal = success_probability(GameConfig.symmetric(1.0, 3.0)).p_succ
    unequal = success_probability(GameConfig(0.5, 2.0, 3.0)).p_succ
    assert unequal > equal


def test_both_blocked_gives_coin_flip():
    s = success_probability(GameConfig.symmetric(100.0, 1.0))
    assert s.p_transmit_ab == s.p_transmit_ba == 0.0
    assert s.p_succ == 0.5


# -- Monte Carlo -------------------------------------------------------------


def test_certain_delivery():
    rep = simulate_game(GameConfig.symmetric(1e-12, 1.0), 50_000, seed=11)
    assert rep.empirical_p_succ == 1.0
    assert rep.standard_error == 0.0


def test_blocked_delivery_is_half():
    rep = simulate_game(GameConfig.symmetric(100.0, 1.0), 400_000, seed=5)
    assert abs(rep.empirical_p_succ - 0.5) <= 5 * rep.standard_error


def test_monte_carlo_symmetric_case():
    rep = simulate_game(GameConfig.symmetric(0.5, 1.0), 1_000_000, seed=2024)
    analytic = 0.5 * (1 + math.exp(-0.25))
    assert analytic == pytest.approx(0.889400, abs=1e-6)
    assert abs(rep.empirical_p_succ - analytic) <= 5 * rep.standard_error
    assert rep.standard_error == math.sqrt(rep.empirical_p_succ * (1 - rep.empirical_p_succ) / rep.n_rounds)
    assert rep.empirical_p_succ == pytest.approx((rep.empirical_p_xb + rep.empirical_p_ya) / 2, abs=1e-15)


def test_seeded_determinism_and_worker_independence():
    cfg = GameConfig.symmetric(0.8, 1.0, dt=0.3)
    a = simulate_game(cfg, 300_001, seed=2**64 - 1, workers=1)
    b = simulate_game(cfg, 300_001, seed=2**64 - 1, workers=4)
    c = simulate_game(cfg, 300_001, seed=2**64 - 1)
    assert a == b == c
    assert simulate_game(cfg, 300_001, seed=1) != a


def test_threads_env_var(monkeypatch):
    cfg = GameConfig.symmetric(0.8, 1.0)
    monkeypatch.setenv("CAUSAL_GAME_THREADS", "3")
    a = simulate_game(cfg, 200_000, seed=9)
    monkeypatch.setenv("CAUSAL_GAME_THREADS", "1")
    assert simulate_game(cfg, 200_000, seed=9) == a
    monkeypatch.setenv("CAUSAL_GAME_THREADS", "-2")
    with pytest.raises(InvalidConfig):
        simulate_game(cfg, 10, seed=9)


@pytest.mark.parametrize("n, seed", [(0, 1), (-5, 1), (2.5, 1), (10, -1), (10, 2**64)])
def test_simulate_rejects_bad_arguments(n, seed):
    with pytest.raises(InvalidConfig):
        simulate_game(GameConfig.symmetric(1, 1), n, seed)


MC_GRID = [
    (st_, dt_frac)
    for st_ in (0.2, 0.35, 0.5, 0.7, 0.9, 1.2, 1.6, 2.0, 2.5, 3.0)
    for dt_frac in (0.0, 1.0)
]


@pytest.mark.parametrize("seed, case", list(enumerate(MC_GRID)))
def test_monte_carlo_agrees_with_analytic(seed, case):
    sigma_tau, dt_frac = case
    cfg = GameConfig.symmetric(sigma_tau, 1.0, dt=dt_frac)
    rep = simulate_game(cfg, 200_000, seed=1000 + seed)
    analytic = success_probability(cfg)
    assert abs(rep.empirical_p_succ - analytic.p_succ) <= 5 * rep.standard_error
    # per-channel frequencies track their own guess probabilities
    se_ch = math.sqrt(0.25 / rep.n_rounds)
    assert abs(rep.empirical_p_xb - analytic.p_bob_guesses_right) <= 5 * se_ch
    assert abs(rep.empirical_p_ya - analytic.p_alice_guesses_right) <= 5 * se_ch


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=0, max_value=2**64 - 1))
def test_any_seed_is_reproducible(seed):
    cfg = GameConfig.symmetric(0.6, 1.0)
    assert simulate_game(cfg, 1000, seed) == simulate_game(cfg, 1000, seed)
