"""Experiment orchestration: noisy-data runs, Table-1 grids, time profiles, rates.

Each run follows the same two steps: choose alpha from the noisy datum, then
evaluate the regularized solution at the requested times.  Everything is a
pure function of the :class:`ExperimentConfig`, seeds included.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .. import __version__
from ..errors import BackfracError
from ..forward import ProblemSpec, forward_solve
from ..measure import NoiseSpec, add_noise, rate_fit, rel_error
from ..mlf import BACKEND
from ..param import RegConfig, Rule, choose_alpha
from ..regularize import backward_solve
from ..spectral import GridField, SpectralCoeffs, norm_p, project, synthesize
from .config import ExperimentConfig, format_seeds

TABLE1_NOISE = (0.1, 0.2, 0.4, 0.8, 1.6, 3.2)
TABLE1_P = (1.0, 2.0, 3.0)
# 2.5 decades of eps / ||u(T)||, in percent.
RATE_NOISE = tuple(100.0 * np.logspace(-4.5, -2.0, 6))

RUN_COLUMNS = (
    "preset", "gamma", "T", "b", "p", "rule", "tau", "N_p", "N_i",
    "noise", "eps", "seed", "alpha", "t", "e_r",
)
SUMMARY_COLUMNS = (
    "preset", "gamma", "T", "b", "p", "rule", "tau", "N_p", "N_i",
    "noise", "eps", "n_seeds", "t", "mean_e_r", "std_e_r",
)


@dataclass(frozen=True)
class RunResult:
    """One (noise level, seed) run; ``errors`` holds e_r at each sample time."""

    noise: float
    eps: float
    seed: int
    alpha: float
    times: tuple[float, ...]
    errors: tuple[float, ...]
    wall: float

    @property
    def e_r0(self) -> float:
        return self.errors[self.times.index(0.0)] if 0.0 in self.times else float("nan")


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    E: float
    runs: list[RunResult] = field(default_factory=list)

    def _params(self) -> dict[str, object]:
        cfg = self.config
        rule = cfg.reg.rule.value
        if cfg.reg.rule is Rule.FIXED:
            rule = f"fixed:{cfg.reg.alpha:.15g}"
        return {
            "preset": cfg.preset, "gamma": cfg.gamma, "T": cfg.T, "b": cfg.reg.b,
            "p": cfg.reg.p, "rule": rule, "tau": cfg.reg.tau, "N_p": cfg.Np, "N_i": cfg.Ni,
        }

    def run_rows(self) -> list[dict[str, object]]:
        base = self._params()
        rows = []
        for r in self.runs:
            for t, e in zip(r.times, r.errors):
                rows.append({**base, "noise": r.noise, "eps": r.eps, "seed": r.seed,
                             "alpha": r.alpha, "t": t, "e_r": e})
        return rows

    def summary_rows(self) -> list[dict[str, object]]:
        """Mean and population std of e_r over seeds, per (noise, t)."""
        base = self._params()
        rows = []
        for noise in dict.fromkeys(r.noise for r in self.runs):
            group = [r for r in self.runs if r.noise == noise]
            for k, t in enumerate(group[0].times):
                errs = np.array([r.errors[k] for r in group])
                rows.append({**base, "noise": noise, "eps": group[0].eps,
                             "n_seeds": len(group), "t": t,
                             "mean_e_r": float(errs.mean()), "std_e_r": float(errs.std())})
        return rows

    def mean_error(self, noise: float, t: float = 0.0) -> float:
        errs = [r.errors[r.times.index(t)] for r in self.runs if r.noise == noise]
        return float(np.mean(errs))


class Problem:
    """Preset-derived quantities shared by all runs of one config."""

    def __init__(self, cfg: ExperimentConfig):
        preset = cfg.problem_preset
        self.system = preset.system(cfg.n_grid)
        grid = self.system.grid
        if cfg.analytic:
            u0 = SpectralCoeffs(preset.coeffs(self.system), self.system)
        else:
            u0 = GridField.from_function(preset.u0, grid)
        self.spec = ProblemSpec(cfg.gamma, cfg.T, self.system, u0)
        self.u0_field = GridField.from_function(preset.u0, grid)
        self.uT = synthesize(forward_solve(self.spec, cfg.T, cfg.Np))
        self._exact: dict[float, GridField] = {0.0: self.u0_field}
        self.cfg = cfg

    def exact(self, t: float) -> GridField:
        if t not in self._exact:
            self._exact[t] = synthesize(forward_solve(self.spec, t, self.cfg.Np))
        return self._exact[t]

    def E(self) -> float:
        """The configured bound, else the exact ||u0||_p over the N_p modes."""
        if self.cfg.reg.E is not None:
            return self.cfg.reg.E
        return norm_p(self.spec.initial_coeffs(self.cfg.Np), self.cfg.reg.p)

    def datum(self, eps: float, seed: int, stream: int) -> SpectralCoeffs:
        """Noisy u(T), projected onto every mode the grid resolves."""
        f_field = add_noise(self.uT, NoiseSpec(eps, seed, stream))
        return project(f_field, self.system, self.system.n_modes)

    def eps(self, level: float) -> float:
        if self.cfg.noise_mode == "percent":
            return level / 100.0 * self.uT.norm()
        return level


def _context(cfg: ExperimentConfig, **extra: object) -> str:
    bits = [f"preset={cfg.preset}", f"gamma={cfg.gamma}", f"p={cfg.reg.p}", f"b={cfg.reg.b}",
            f"rule={cfg.reg.rule.value}"]
    bits += [f"{k}={v}" for k, v in extra.items()]
    return "[" + " ".join(bits) + "]"


def run_preset(cfg: ExperimentConfig) -> ExperimentReport:
    """Run every (noise level, seed) pair of ``cfg`` in a fixed order."""
    try:
        prob = Problem(cfg)
        E = prob.E()
    except BackfracError as exc:
        raise type(exc)(f"{_context(cfg)} {exc}") from exc
    reg = RegConfig(b=cfg.reg.b, p=cfg.reg.p, E=E, tau=cfg.reg.tau, rule=cfg.reg.rule,
                    alpha=cfg.reg.alpha, N_i=cfg.Ni)
    report = ExperimentReport(cfg, E)
    for stream, level in enumerate(cfg.noise_levels):
        eps = prob.eps(level)
        for seed in cfg.seeds:
            start = time.perf_counter()
            try:
                f = prob.datum(eps, seed, stream)
                f_disc = f if cfg.discrepancy_modes == "all" else f.truncate(cfg.Ni)
                alpha = choose_alpha(reg, eps, f_disc)
                errors = tuple(
                    rel_error(prob.exact(t),
                              synthesize(backward_solve(f, alpha, reg.b, cfg.gamma, cfg.T, t, cfg.Ni)))
                    for t in cfg.times
                )
            except BackfracError as exc:
                raise type(exc)(f"{_context(cfg, noise=level, seed=seed)} {exc}") from exc
            report.runs.append(RunResult(level, eps, seed, alpha, cfg.times, errors,
                                         time.perf_counter() - start))
    return report


def table1(cfg: ExperimentConfig,
           noise_levels: Sequence[float] = TABLE1_NOISE,
           p_values: Sequence[float] = TABLE1_P) -> list[ExperimentReport]:
    """One report per p, each over ``noise_levels``; e_r is sampled at t = 0."""
    base = cfg.replace(noise_levels=tuple(noise_levels), times=(0.0,))
    return [run_preset(base.replace(reg_p=float(p))) for p in p_values]


def profile_in_time(cfg: ExperimentConfig, times: Sequence[float] | None = None) -> ExperimentReport:
    """e_r over a time grid; defaults to 11 equispaced points on [0, T]."""
    if times is None:
        times = tuple(float(t) for t in np.linspace(0.0, cfg.T, 11))
    return run_preset(cfg.replace(times=tuple(times)))


@dataclass(frozen=True)
class RateResult:
    slope: float
    report: ExperimentReport

    def pairs(self) -> list[tuple[float, float]]:
        return [(r.eps, r.e_r0) for r in self.report.runs]


def rates(cfg: ExperimentConfig, noise_levels: Sequence[float] = RATE_NOISE) -> RateResult:
    """Fit log e_r(0) against log eps over every (level, seed) run."""
    report = run_preset(cfg.replace(noise_levels=tuple(noise_levels), times=(0.0,),
                                    noise_mode="percent"))
    return RateResult(rate_fit((r.eps, r.e_r0) for r in report.runs), report)


# CSV output -----------------------------------------------------------------


def header_line(seeds: Iterable[int]) -> str:
    return (f"# backfrac {__version__} seed-set={format_seeds(tuple(seeds))} "
            f"noise-ref=u(T) backend={BACKEND}")


def _fmt(value: object) -> str:
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".15g")
    return str(value)


def csv_text(rows: Sequence[dict[str, object]], columns: Sequence[str], seeds: Iterable[int]) -> str:
    buf = io.StringIO()
    buf.write(header_line(seeds) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row[c]) for c in columns])
    return buf.getvalue()


def field_rows(fld: GridField, name: str = "value") -> tuple[list[dict[str, object]], tuple[str, ...]]:
    """Long-format rows (x[, y], value) of a grid field."""
    pts = fld.grid.points
    axes = ("x", "y")[: pts.shape[1]]
    rows = [{**{a: float(c) for a, c in zip(axes, p)}, name: float(v)}
            for p, v in zip(pts, fld.values)]
    return rows, (*axes, name)


def write_report(reports: Sequence[ExperimentReport], out_dir: str | Path, stem: str) -> list[Path]:
    """Write ``<stem>_runs.csv``, ``<stem>_summary.csv`` and a wall-time sidecar.

    Wall times live in ``<stem>_timing.csv`` so the two data files are a pure
    function of the configuration.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    seeds = reports[0].config.seeds
    runs = [row for rep in reports for row in rep.run_rows()]
    summary = [row for rep in reports for row in rep.summary_rows()]
    timing = [{"p": rep.config.reg.p, "noise": r.noise, "seed": r.seed, "wall_s": r.wall}
              for rep in reports for r in rep.runs]
    paths = [out / f"{stem}_runs.csv", out / f"{stem}_summary.csv", out / f"{stem}_timing.csv"]
    paths[0].write_text(csv_text(runs, RUN_COLUMNS, seeds))
    paths[1].write_text(csv_text(summary, SUMMARY_COLUMNS, seeds))
    paths[2].write_text(csv_text(timing, ("p", "noise", "seed", "wall_s"), seeds))
    return paths


def write_field(fld: GridField, path: str | Path, seeds: Iterable[int] = ()) -> Path:
    rows, cols = field_rows(fld)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(csv_text(rows, cols, seeds))
    return path


__all__ = [
    "ExperimentReport",
    "RateResult",
    "RunResult",
    "TABLE1_NOISE",
    "TABLE1_P",
    "RATE_NOISE",
    "csv_text",
    "profile_in_time",
    "rates",
    "run_preset",
    "table1",
    "write_field",
    "write_report",
]
