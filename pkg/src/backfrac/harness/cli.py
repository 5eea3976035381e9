"""``backfrac`` command line.

Exit codes: 0 success, 2 configuration error, 3 infeasible discrepancy or
degenerate data, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Any, Sequence

from ..errors import BackfracError
from ..forward import forward_solve
from ..mlf import MlParams, mlf_eval
from ..regularize import backward_solve
from ..spectral import synthesize
from .config import ExperimentConfig, build_config, load_toml, parse_seeds
from .experiments import (
    Problem,
    profile_in_time,
    rates,
    run_preset,
    table1,
    write_field,
    write_report,
)


def _floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="TOML experiment file")
    p.add_argument("--preset", choices=("example1", "example2", "example3"))
    p.add_argument("--gamma", type=float)
    p.add_argument("--T", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--p", type=float)
    p.add_argument("--E", type=float)
    p.add_argument("--tau", type=float)
    p.add_argument("--rule", help="apriori | aposteriori | fixed:<alpha>")
    p.add_argument("--noise", choices=("percent", "absolute"), help="how --levels is read")
    p.add_argument("--levels", type=_floats, help="noise levels, e.g. 0.1,0.2")
    p.add_argument("--seeds", type=parse_seeds, help="e.g. 1-10 or 1,3,5")
    p.add_argument("--Ni", type=int)
    p.add_argument("--Np", type=int)
    p.add_argument("--n-grid", type=int, dest="n_grid")
    p.add_argument("--times", type=_floats, help="sample times, e.g. 0,0.1")
    p.add_argument("--discrepancy-modes", choices=("all", "Ni"), dest="discrepancy_modes")
    p.add_argument("--out", help="output directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="backfrac",
        description="Backward time-fractional diffusion with Sobolev-type regularization.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (
        ("forward", "sample u(t) on the grid"),
        ("backward", "noisy runs; writes errors and the reconstruction"),
        ("table1", "p x noise grid of mean e_r(0)"),
        ("profile", "e_r over t in [0, T]"),
        ("rates", "empirical convergence slope"),
    ):
        _common(sub.add_parser(name, help=help_))
    ml = sub.add_parser("mlf-eval", help="print E_{gamma,beta}(z)")
    ml.add_argument("--gamma", type=float, required=True)
    ml.add_argument("--beta", type=float, default=1.0)
    ml.add_argument("z", type=float, nargs="+", help="points z <= 0")
    return parser


_FLAG_KEYS = {
    "preset": "preset", "gamma": "gamma", "T": "T", "b": "reg_b", "p": "reg_p",
    "E": "reg_E", "tau": "reg_tau", "rule": "rule", "noise": "noise_mode",
    "levels": "noise_levels", "seeds": "seeds", "Ni": "reg_N_i", "Np": "N_p",
    "n_grid": "n_grid", "times": "times", "discrepancy_modes": "discrepancy_modes",
    "out": "out_dir",
}


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    values: dict[str, Any] = load_toml(args.config) if args.config else {}
    for flag, key in _FLAG_KEYS.items():
        val = getattr(args, flag, None)
        if val is not None:
            values[key] = val
    return build_config(values)


def _cmd_forward(cfg: ExperimentConfig) -> None:
    prob = Problem(cfg)
    for t in cfg.times:
        fld = synthesize(forward_solve(prob.spec, t, cfg.Np))
        path = write_field(fld, Path(cfg.out_dir) / f"forward_t{t:g}.csv", cfg.seeds)
        print(path)


def _cmd_backward(cfg: ExperimentConfig) -> None:
    report = run_preset(cfg)
    for path in write_report([report], cfg.out_dir, "backward"):
        print(path)
    # Reconstruction of the first (noise, seed) run, in long format.
    prob = Problem(cfg)
    first = report.runs[0]
    f = prob.datum(first.eps, first.seed, 0)
    for t in cfg.times:
        v = backward_solve(f, first.alpha, cfg.reg.b, cfg.gamma, cfg.T, t, cfg.Ni)
        print(write_field(synthesize(v), Path(cfg.out_dir) / f"backward_t{t:g}.csv", cfg.seeds))
    for row in report.summary_rows():
        print(f"noise={row['noise']:g} t={row['t']:g} mean e_r={row['mean_e_r']:.6g}%")


def _cmd_table1(cfg: ExperimentConfig) -> None:
    reports = table1(cfg)
    for path in write_report(reports, cfg.out_dir, "table1")[:2]:
        print(path)
    for rep in reports:
        cells = " ".join(f"{rep.mean_error(n):8.4f}" for n in rep.config.noise_levels)
        print(f"p={rep.config.reg.p:g}: {cells}")


def _cmd_profile(cfg: ExperimentConfig) -> None:
    times = cfg.times if len(cfg.times) > 1 else None
    report = profile_in_time(cfg, times)
    for path in write_report([report], cfg.out_dir, "profile")[:2]:
        print(path)


def _cmd_rates(cfg: ExperimentConfig) -> None:
    res = rates(cfg)
    for path in write_report([res.report], cfg.out_dir, "rates")[:2]:
        print(path)
    print(f"slope={res.slope:.6f}")


_COMMANDS = {
    "forward": _cmd_forward,
    "backward": _cmd_backward,
    "table1": _cmd_table1,
    "profile": _cmd_profile,
    "rates": _cmd_rates,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "mlf-eval":
            params = MlParams(args.gamma, args.beta)
            for z in args.z:
                print(f"{mlf_eval(params, z):.15g}")
            return 0
        _COMMANDS[args.command](config_from_args(args))
    except BackfracError as exc:
        print(f"backfrac: error: {exc}", file=sys.stderr)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
