"""P_succ against dt for one representative width per regime, plus the
optimal dt as a function of sigma*tau. Writes two CSV files."""
import argparse
import csv
from pathlib import Path

import numpy as np

from causal_game.optimizer import FIELDS, optimal_dt, sweep

REPRESENTATIVES = {"C": 0.5, "B": 0.9, "A": 2.0}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--tau", type=float, default=1.0)
    ap.add_argument("--points", type=int, default=401)
    ap.add_argument("--outdir", type=Path, default=Path("results"))
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)

    dts = np.linspace(-3 * args.tau, 3 * args.tau, args.points).tolist()
    sigmas = [a / args.tau for a in REPRESENTATIVES.values()]
    curves = args.outdir / "psucc_vs_dt.csv"
    with curves.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(FIELDS)
        for r in sweep(sigmas, args.tau, dts):
            w.writerow([getattr(r, f) for f in FIELDS])

    optimum = args.outdir / "optimal_dt.csv"
    with optimum.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["sigma_tau", "dt_star_over_tau", "p_succ_star", "regime"])
        for a in np.linspace(0.05, 3.0, 120):
            rep = optimal_dt(a / args.tau, args.tau)
            w.writerow([repr(float(a)), repr(rep.dt_star / args.tau), repr(rep.p_succ_star), rep.regime.value])

    for name, a in REPRESENTATIVES.items():
        rep = optimal_dt(a / args.tau, args.tau)
        print(f"regime {name}: sigma*tau={a}  dt*/tau={rep.dt_star / args.tau:.6f}  P_succ*={rep.p_succ_star:.6f}")
    print(f"wrote {curves} and {optimum}")


if __name__ == "__main__":
    main()
