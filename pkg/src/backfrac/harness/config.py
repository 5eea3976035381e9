"""Experiment configuration: dataclass, TOML loading and CLI overrides.

A config file has up to four tables::

    [problem]
    preset = "example1"      # example1 | example2 | example3
    gamma = 0.5
    T = 1.0
    Np = 3                   # optional, preset default otherwise
    n_grid = 201             # optional
    analytic = true          # closed-form u0 coefficients instead of quadrature
    times = [0.0, 0.1]

    [regularization]
    rule = "apriori"         # apriori | aposteriori | fixed:<alpha>
    b = 4.0
    p = 3.0
    E = 918.0                # optional; exact ||u0||_p when omitted
    tau = 1.05
    Ni = 5                   # optional
    discrepancy_modes = "all"  # all | Ni

    [noise]
    levels = [0.1, 0.2]      # percent of ||u(T)||, or absolute eps
    mode = "percent"         # percent | absolute
    seeds = [1, 2, 3]

    [output]
    dir = "runs"
"""

from __future__ import annotations

import dataclasses
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from ..errors import ConfigError
from ..param import RegConfig, Rule, parse_rule
from .presets import get_preset

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

NOISE_MODES = ("percent", "absolute")
DISCREPANCY_MODES = ("all", "Ni")


@dataclass(frozen=True)
class ExperimentConfig:
    preset: str = "example1"
    gamma: float = 0.5
    T: float = 1.0
    noise_levels: tuple[float, ...] = (2.0,)
    noise_mode: str = "percent"
    seeds: tuple[int, ...] = tuple(range(1, 11))
    reg: RegConfig = field(default_factory=RegConfig)
    N_p: int | None = None
    n_grid: int | None = None
    times: tuple[float, ...] = (0.0,)
    analytic: bool = True
    discrepancy_modes: str = "all"
    out_dir: str = "runs"

    def __post_init__(self) -> None:
        get_preset(self.preset)
        if not 0.0 < self.gamma < 1.0:
            raise ConfigError(f"gamma must lie in (0, 1), got {self.gamma}")
        if not self.T > 0:
            raise ConfigError(f"T must be positive, got {self.T}")
        if self.noise_mode not in NOISE_MODES:
            raise ConfigError(f"noise mode must be one of {NOISE_MODES}")
        if self.discrepancy_modes not in DISCREPANCY_MODES:
            raise ConfigError(f"discrepancy_modes must be one of {DISCREPANCY_MODES}")
        if not self.seeds:
            raise ConfigError("at least one seed is required")
        if any(s < 0 for s in self.seeds):
            raise ConfigError("seeds must be non-negative")
        if any(lv < 0 for lv in self.noise_levels):
            raise ConfigError("noise levels must be non-negative")
        if any(not 0.0 <= t <= self.T for t in self.times):
            raise ConfigError("sample times must lie in [0, T]")

    @property
    def problem_preset(self):
        return get_preset(self.preset)

    @property
    def Np(self) -> int:
        return self.N_p or self.problem_preset.N_p

    @property
    def Ni(self) -> int:
        return self.reg.N_i or self.problem_preset.N_i

    def replace(self, **changes: Any) -> "ExperimentConfig":
        reg_changes = {k[4:]: changes.pop(k) for k in list(changes) if k.startswith("reg_")}
        reg = dataclasses.replace(self.reg, **reg_changes) if reg_changes else self.reg
        return dataclasses.replace(self, reg=reg, **changes)


_PROBLEM_KEYS = {
    "preset": "preset", "gamma": "gamma", "T": "T", "Np": "N_p",
    "n_grid": "n_grid", "analytic": "analytic", "times": "times",
}
_REG_KEYS = {"b": "b", "p": "p", "E": "E", "tau": "tau", "Ni": "N_i"}


def _flatten(doc: dict[str, Any]) -> dict[str, Any]:
    unknown = set(doc) - {"problem", "regularization", "noise", "output"}
    if unknown:
        raise ConfigError(f"unknown config tables: {sorted(unknown)}")
    flat: dict[str, Any] = {}
    for key, val in doc.get("problem", {}).items():
        if key not in _PROBLEM_KEYS:
            raise ConfigError(f"unknown key problem.{key}")
        flat[_PROBLEM_KEYS[key]] = val
    for key, val in doc.get("regularization", {}).items():
        if key == "rule":
            flat["rule"] = val
        elif key == "discrepancy_modes":
            flat["discrepancy_modes"] = val
        elif key in _REG_KEYS:
            flat["reg_" + _REG_KEYS[key]] = val
        else:
            raise ConfigError(f"unknown key regularization.{key}")
    noise = doc.get("noise", {})
    for key, val in noise.items():
        name = {"levels": "noise_levels", "mode": "noise_mode", "seeds": "seeds"}.get(key)
        if name is None:
            raise ConfigError(f"unknown key noise.{key}")
        flat[name] = val
    for key, val in doc.get("output", {}).items():
        if key != "dir":
            raise ConfigError(f"unknown key output.{key}")
        flat["out_dir"] = val
    return flat


def load_toml(path: str | Path) -> dict[str, Any]:
    try:
        with open(path, "rb") as fh:
            return _flatten(tomllib.load(fh))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"invalid TOML in {path}: {exc}") from exc


def build_config(values: dict[str, Any], base: ExperimentConfig | None = None) -> ExperimentConfig:
    """Apply flat overrides (file keys first, then CLI flags) to ``base``."""
    values = dict(values)
    changes: dict[str, Any] = {}
    if "rule" in values:
        rule, alpha = parse_rule(str(values.pop("rule")))
        changes["reg_rule"] = rule
        changes["reg_alpha"] = alpha
    for key in ("noise_levels", "times"):
        if key in values:
            changes[key] = tuple(float(v) for v in values.pop(key))
    if "seeds" in values:
        changes["seeds"] = tuple(int(v) for v in values.pop("seeds"))
    changes.update(values)
    try:
        return (base or ExperimentConfig()).replace(**changes)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def parse_seeds(text: str) -> tuple[int, ...]:
    """``"1-10"``, ``"1,4,9"`` or a mix like ``"1-3,7"``."""
    seeds: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if "-" in part:
                lo, hi = part.split("-", 1)
                seeds.extend(range(int(lo), int(hi) + 1))
            elif part:
                seeds.append(int(part))
    except ValueError:
        raise ConfigError(f"bad seed list {text!r}") from None
    if not seeds:
        raise ConfigError("empty seed list")
    return tuple(seeds)


def format_seeds(seeds: tuple[int, ...]) -> str:
    """Compact form of a seed list, inverse of :func:`parse_seeds`."""
    out, i = [], 0
    while i < len(seeds):
        j = i
        while j + 1 < len(seeds) and seeds[j + 1] == seeds[j] + 1:
            j += 1
        out.append(str(seeds[i]) if i == j else f"{seeds[i]}-{seeds[j]}")
        i = j + 1
    return ",".join(out)


__all__ = [
    "ExperimentConfig",
    "Rule",
    "build_config",
    "format_seeds",
    "load_toml",
    "parse_seeds",
]
