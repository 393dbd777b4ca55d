"""Command-line front end.

    causal-game psucc --sigma-a 1 --sigma-b 1 --tau 1 --dt 0
    causal-game optimize --sigma 0.9 --tau 1
    causal-game threshold --tau 1 --dt 0
    causal-game sweep --sigma 0.5 0.8 1.2 --tau 1 --dt-range -2 2 81 -o fig3.csv
    causal-game montecarlo --sigma-a 0.5 --sigma-b 0.5 --tau 1 --rounds 1000000 --seed 1
    causal-game fock-demo

Exit codes: 0 ok, 1 runtime failure, 2 bad flags.
"""
from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from . import fock
from .errors import CausalGameError, InvalidConfig, InvalidMode
from .game import GameConfig, simulate_game, success_probability
from .optimizer import FIELDS, optimal_dt, sweep, violation_threshold_sigma


def fmt(value) -> str:
    """Shortest round-trip decimal for floats, lowercase booleans."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if hasattr(value, "value"):  # enums
        return str(value.value)
    return str(value)


def _jsonable(d: dict) -> dict:
    out = {}
    for k, v in d.items():
        if hasattr(v, "value") and not isinstance(v, (bool, int, float)):
            v = v.value
        elif isinstance(v, np.floating):
            v = float(v)
        out[k] = v
    return out


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _kv_lines(d: dict, formatter: Callable = fmt) -> str:
    return "".join(f"{k} = {formatter(v)}\n" for k, v in d.items())


@dataclass
class RunConfig:
    """Sweep/run parameters after merging config file and flags."""

    sigma: list[float] = field(default_factory=list)
    sigma_b: Optional[float] = None
    tau: Optional[float] = None
    dt: list[float] = field(default_factory=list)
    k0: Optional[float] = None
    output: Optional[str] = None
    format: str = "csv"

    def validate(self) -> None:
        if not self.sigma:
            raise InvalidConfig("sigma grid is empty")
        if not self.dt:
            raise InvalidConfig("dt grid is empty")
        if self.tau is None:
            raise InvalidConfig("tau is required")
        if self.format not in ("csv", "json"):
            raise InvalidConfig(f"format must be csv or json, got {self.format!r}")


def _floats(text: str) -> list[float]:
    return [float(t) for t in text.replace(",", " ").split()]


def _dt_range(start: float, stop: float, num: float) -> list[float]:
    n = int(num)
    if n < 1 or n != num:
        raise InvalidConfig(f"dt range needs a positive integer count, got {num!r}")
    return [float(v) for v in np.linspace(start, stop, n)]


def load_run_config(path: str) -> RunConfig:
    """Flat ``key = value`` file; keys: sigma, sigma_b, tau, dt, dt_range, k0,
    output, format. Lists are whitespace or comma separated."""
    parser = configparser.ConfigParser()
    parser.read_string("[run]\n" + Path(path).read_text(encoding="utf-8"))
    raw = dict(parser["run"])
    known = {"sigma", "sigma_b", "tau", "dt", "dt_range", "k0", "output", "format"}
    unknown = set(raw) - known
    if unknown:
        raise InvalidConfig(f"unknown config keys: {', '.join(sorted(unknown))}")
    cfg = RunConfig()
    if "sigma" in raw:
        cfg.sigma = _floats(raw["sigma"])
    if "sigma_b" in raw:
        cfg.sigma_b = float(raw["sigma_b"])
    if "tau" in raw:
        cfg.tau = float(raw["tau"])
    if "dt" in raw:
        cfg.dt = _floats(raw["dt"])
    if "dt_range" in raw:
        cfg.dt = _dt_range(*_floats(raw["dt_range"]))
    if "k0" in raw:
        cfg.k0 = float(raw["k0"])
    cfg.output = raw.get("output", cfg.output)
    cfg.format = raw.get("format", cfg.format)
    return cfg


def cmd_psucc(args) -> int:
    cfg = GameConfig(args.sigma_a, args.sigma_b, args.tau, args.dt, args.k0)
    stats = success_probability(cfg)

    def nine(v):
        return fmt(v) if isinstance(v, bool) else f"{v:#.9g}"

    _emit(_kv_lines(asdict(stats), nine), None)
    return 0


def cmd_optimize(args) -> int:
    rep = optimal_dt(args.sigma, args.tau)
    _emit(_kv_lines(asdict(rep)), None)
    return 0


def cmd_threshold(args) -> int:
    res = violation_threshold_sigma(args.tau, args.dt)
    _emit(_kv_lines({"sigma": res.sigma, "always_violates": res.always_violates}), None)
    return 0


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FIELDS)
    for r in rows:
        w.writerow([fmt(getattr(r, f)) for f in FIELDS])
    return buf.getvalue()


def rows_to_json(rows) -> str:
    return json.dumps([asdict(r) for r in rows], indent=2) + "\n"


def cmd_sweep(args) -> int:
    cfg = load_run_config(args.config) if args.config else RunConfig()
    if args.sigma is not None:
        cfg.sigma = args.sigma
    if args.sigma_b is not None:
        cfg.sigma_b = args.sigma_b
    if args.tau is not None:
        cfg.tau = args.tau
    if args.dt is not None:
        cfg.dt = args.dt
    if args.dt_range is not None:
        cfg.dt = _dt_range(*args.dt_range)
    if args.k0 is not None:
        cfg.k0 = args.k0
    if args.output is not None:
        cfg.output = args.output
    if args.format is not None:
        cfg.format = args.format
    cfg.validate()

    rows = sweep(cfg.sigma, cfg.tau, cfg.dt, sigma_b=cfg.sigma_b, k0=cfg.k0)
    text = rows_to_csv(rows) if cfg.format == "csv" else rows_to_json(rows)
    _emit(text, cfg.output)
    return 0


def cmd_montecarlo(args) -> int:
    cfg = GameConfig(args.sigma_a, args.sigma_b, args.tau, args.dt, args.k0)
    rep = simulate_game(cfg, args.rounds, args.seed)
    d = asdict(rep)
    d["analytic_p_succ"] = success_probability(cfg).p_succ
    if args.format == "json":
        text = json.dumps(_jsonable(d), indent=2) + "\n"
    else:
        text = _kv_lines(d)
    _emit(text, args.output)
    return 0


def fock_checks() -> list[tuple[str, bool]]:
    checks = []
    worst = 0.0
    for eta in np.linspace(0.0, 1.0, 11):
        got = fock.mode_selective_mirror(float(eta)).matrix
        worst = max(worst, float(np.abs(got - np.diag([1 - eta, eta])).max()))
    checks.append(("mirror reduced state = diag(1-eta, eta)", worst < 1e-12))

    for (c, t), (c_out, t_out, _) in fock.CNOT_BASIS_MAP.items():
        stats = fock.dual_rail_statistics(fock.cnot_open_loop(fock.DualRailQubit.bit(c), fock.DualRailQubit.bit(t)))
        ok = abs(stats.get((c_out, t_out), 0.0) - 1.0) < 1e-12
        checks.append((f"CNOT |{c}{t}> -> |{c_out}{t_out}>", ok))

    h = 1 / math.sqrt(2)
    bell = fock.dual_rail_statistics(fock.cnot_open_loop(fock.DualRailQubit(h, h), fock.DualRailQubit.zero()))
    ok = abs(bell.get((0, 0), 0) - 0.5) < 1e-12 and abs(bell.get((1, 1), 0) - 0.5) < 1e-12
    checks.append(("CNOT |+>|0> -> Bell correlations", ok))

    for alpha, beta in ((1.0, 0.0), (0.0, 1.0), (h, h)):
        p = fock.cnot_feedback_zero_time(fock.DualRailQubit(alpha, beta))
        checks.append((f"zero-time feedback is identity for ({alpha:.4g}, {beta:.4g})",
                       p == (abs(alpha) ** 2, abs(beta) ** 2)))
    return checks


def cmd_fock_demo(args) -> int:
    checks = fock_checks()
    for name, ok in checks:
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
    return 0 if all(ok for _, ok in checks) else 1


def _positive(text: str) -> float:
    v = float(text)
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"must be a positive number, got {text}")
    return v


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return v


def build_parser() -> argparse.ArgumentParser:
    fmt_cls = argparse.ArgumentDefaultsHelpFormatter
    p = argparse.ArgumentParser(prog="causal-game", description=__doc__.split("\n")[0] if __doc__ else None)
    sub = p.add_subparsers(dest="command", required=True)

    def game_flags(sp):
        sp.add_argument("--sigma-a", type=_positive, required=True, help="Alice's spectral width")
        sp.add_argument("--sigma-b", type=_positive, required=True, help="Bob's spectral width")
        sp.add_argument("--tau", type=_positive, required=True, help="separation x_B - x_A")
        sp.add_argument("--dt", type=float, default=0.0, help="timing offset t_B - t_A")
        sp.add_argument("--k0", type=_positive, default=None,
                        help="carrier wavenumber (None means 100*max(sigma))")

    sp = sub.add_parser("psucc", help="success probability for one configuration", formatter_class=fmt_cls)
    game_flags(sp)
    sp.set_defaults(func=cmd_psucc)

    sp = sub.add_parser("optimize", help="optimal dt for equal widths", formatter_class=fmt_cls)
    sp.add_argument("--sigma", type=_positive, required=True)
    sp.add_argument("--tau", type=_positive, required=True)
    sp.set_defaults(func=cmd_optimize)

    sp = sub.add_parser("threshold", help="largest sigma with P_succ >= 3/4", formatter_class=fmt_cls)
    sp.add_argument("--tau", type=_positive, required=True)
    sp.add_argument("--dt", type=float, default=0.0)
    sp.set_defaults(func=cmd_threshold)

    sp = sub.add_parser("sweep", help="grid of P_succ values as CSV/JSON", formatter_class=fmt_cls)
    sp.add_argument("--config", default=None, help="flat key = value file; flags override it")
    sp.add_argument("--sigma", type=_positive, nargs="+", default=None, help="widths (Alice; Bob too unless --sigma-b)")
    sp.add_argument("--sigma-b", type=_positive, default=None, help="fixed width for Bob")
    sp.add_argument("--tau", type=_positive, default=None)
    grid = sp.add_mutually_exclusive_group()
    grid.add_argument("--dt", type=float, nargs="+", default=None)
    grid.add_argument("--dt-range", type=float, nargs=3, metavar=("START", "STOP", "NUM"), default=None)
    sp.add_argument("--k0", type=_positive, default=None, help="carrier (None means 100*max(sigma))")
    sp.add_argument("-o", "--output", default=None, help="output path (stdout if omitted)")
    sp.add_argument("--format", choices=("csv", "json"), default=None, help="output format (csv if unset)")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("montecarlo", help="seeded round-by-round simulation", formatter_class=fmt_cls)
    game_flags(sp)
    sp.add_argument("--rounds", type=int, default=1_000_000)
    sp.add_argument("--seed", type=_seed, default=0)
    sp.add_argument("-o", "--output", default=None)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_montecarlo)

    sp = sub.add_parser("fock-demo", help="mirror and CNOT self-checks", formatter_class=fmt_cls)
    sp.set_defaults(func=cmd_fock_demo)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidConfig, InvalidMode) as exc:
        parser.error(str(exc))
    except (CausalGameError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
