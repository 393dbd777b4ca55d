"""Largest width that still reaches the causal bound, across separations and offsets."""
import argparse
import math

from causal_game.optimizer import violation_threshold_sigma


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--tau", type=float, nargs="+", default=[0.5, 1.0, 2.0, 10.0])
    ap.add_argument("--dt-fraction", type=float, nargs="+", default=[0.0, 0.25, 0.5, 0.75, 1.0],
                    help="offsets as multiples of tau")
    args = ap.parse_args()

    print(f"{'tau':>6} {'dt/tau':>7} {'sigma_max':>14} {'sigma_max*tau':>14}")
    for tau in args.tau:
        for f in args.dt_fraction:
            res = violation_threshold_sigma(tau, f * tau)
            if res.always_violates:
                print(f"{tau:6g} {f:7g} {'inf':>14} {'inf':>14}")
            else:
                print(f"{tau:6g} {f:7g} {res.sigma:14.10f} {res.sigma * tau:14.10f}")
    print(f"sqrt(ln 2) = {math.sqrt(math.log(2)):.10f}")


if __name__ == "__main__":
    main()
