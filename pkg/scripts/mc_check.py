"""Compare the round-by-round simulation against the closed form over a grid
of widths and offsets; prints the z-score of each point."""
import argparse

from causal_game.game import GameConfig, simulate_game, success_probability


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rounds", type=int, default=1_000_000)
    ap.add_argument("--seed", type=int, default=2018)
    ap.add_argument("--tau", type=float, default=1.0)
    args = ap.parse_args()

    worst = 0.0
    print(f"{'sigma_a':>8} {'sigma_b':>8} {'dt':>6} {'analytic':>10} {'empirical':>10} {'z':>7}")
    for sa, sb in ((0.5, 0.5), (1.0, 1.0), (0.5, 2.0), (2.0, 2.0)):
        for dt in (0.0, 0.5 * args.tau, args.tau):
            cfg = GameConfig(sa, sb, args.tau, dt)
            exact = success_probability(cfg).p_succ
            rep = simulate_game(cfg, args.rounds, args.seed)
            z = (rep.empirical_p_succ - exact) / rep.standard_error
            worst = max(worst, abs(z))
            print(f"{sa:8g} {sb:8g} {dt:6g} {exact:10.6f} {rep.empirical_p_succ:10.6f} {z:7.2f}")
    print(f"max |z| = {worst:.2f}")


if __name__ == "__main__":
    main()
