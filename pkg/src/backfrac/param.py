"""Choice of the regularization parameter alpha.

Two rules are provided:

* a priori, from the noise level and a bound ``E >= ||u(0)||_p``;
* a posteriori (discrepancy principle), the unique root of
  ``||B_alpha f - f|| = tau * eps``.  The discrepancy is strictly increasing in
  alpha, tends to 0 as alpha -> 0 and to ``||f||`` as alpha -> infinity, so a
  bisection on ``log(alpha)`` always converges once a bracket is found.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from scipy.optimize import bisect

from .errors import ConfigError, DegenerateDataError, DomainError, InfeasibleDiscrepancyError
from .regularize import discrepancy
from .spectral import SpectralCoeffs

ALPHA_LO = 1e-16
ALPHA_HI = 1e16
MAX_BISECT = 62


class Rule(enum.Enum):
    APRIORI = "apriori"
    APOSTERIORI = "aposteriori"
    FIXED = "fixed"


@dataclass(frozen=True)
class RegConfig:
    """Everything needed to pick alpha and run the backward solve.

    ``E`` may be left as ``None`` for synthetic runs, where the harness fills
    in the exact ``||u(0)||_p``; ``alpha`` is only read by ``Rule.FIXED``.
    ``N_i = None`` defers the mode count to the problem preset.
    """

    b: float = 4.0
    p: float = 3.0
    E: float | None = None
    tau: float = 1.05
    rule: Rule = Rule.APRIORI
    alpha: float | None = None
    N_i: int | None = None

    def __post_init__(self) -> None:
        if self.b < 1:
            raise ConfigError(f"b must be >= 1, got {self.b}")
        if not self.p > 0:
            raise ConfigError(f"p must be positive, got {self.p}")
        if not self.tau > 1:
            raise ConfigError(f"tau must exceed 1, got {self.tau}")
        if self.E is not None and not self.E > 0:
            raise ConfigError(f"E must be positive, got {self.E}")
        if self.N_i is not None and self.N_i < 1:
            raise ConfigError(f"N_i must be >= 1, got {self.N_i}")
        if self.rule is Rule.FIXED and not (self.alpha and self.alpha > 0):
            raise ConfigError("rule 'fixed' needs a positive alpha")


def parse_rule(text: str) -> tuple[Rule, float | None]:
    """Parse ``apriori``, ``aposteriori`` or ``fixed:<alpha>``."""
    name, _, arg = text.strip().partition(":")
    try:
        rule = Rule(name.lower())
    except ValueError:
        raise ConfigError(f"unknown rule {text!r}") from None
    if rule is Rule.FIXED:
        try:
            alpha = float(arg)
        except ValueError:
            raise ConfigError(f"fixed rule needs a number, got {text!r}") from None
        if not alpha > 0:
            raise ConfigError("fixed alpha must be positive")
        return rule, alpha
    if arg:
        raise ConfigError(f"rule {name!r} takes no argument")
    return rule, None


def alpha_apriori(eps: float, cfg: RegConfig) -> float:
    """(eps/E)^(b/(p+1)) if p < b, else (eps/E)^(b/(b+1))."""
    if cfg.E is None:
        raise ConfigError("the a priori rule needs E")
    if not eps > 0:
        raise DomainError("eps must be positive")
    if not eps < cfg.E:
        raise DomainError(f"the a priori rule needs eps < E (eps={eps}, E={cfg.E})")
    expo = cfg.b / (cfg.p + 1.0) if cfg.p < cfg.b else cfg.b / (cfg.b + 1.0)
    return (eps / cfg.E) ** expo


def alpha_aposteriori(f: SpectralCoeffs, eps: float, cfg: RegConfig) -> float:
    """Root of discrepancy(f, alpha, b) = tau * eps."""
    if not eps > 0:
        raise DomainError("eps must be positive")
    fnorm = f.l2()
    if fnorm == 0.0:
        raise DegenerateDataError("data is identically zero")
    target = cfg.tau * eps
    if not target < fnorm:
        raise InfeasibleDiscrepancyError(
            f"tau*eps = {target:.6g} must be below ||f|| = {fnorm:.6g}"
        )

    def g(log_alpha: float) -> float:
        return discrepancy(f, math.exp(log_alpha), cfg.b) - target

    lo, hi = math.log(ALPHA_LO), math.log(ALPHA_HI)
    while g(lo) >= 0.0:
        lo -= 10.0
        if lo < -700.0:
            raise DegenerateDataError("discrepancy does not vanish as alpha -> 0")
    while g(hi) <= 0.0:
        hi += 10.0
        if hi > 700.0:
            raise InfeasibleDiscrepancyError("discrepancy never reaches tau*eps")
    root = bisect(g, lo, hi, xtol=1e-15, maxiter=MAX_BISECT, disp=False)
    return math.exp(root)


def choose_alpha(cfg: RegConfig, eps: float, f: SpectralCoeffs | None = None) -> float:
    if cfg.rule is Rule.FIXED:
        return float(cfg.alpha)
    if cfg.rule is Rule.APRIORI:
        return alpha_apriori(eps, cfg)
    if f is None:
        raise ConfigError("the a posteriori rule needs data")
    return alpha_aposteriori(f, eps, cfg)
