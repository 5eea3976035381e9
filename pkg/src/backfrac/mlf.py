"""Mittag-Leffler functions E_{gamma,beta}(z) on the non-positive real axis.

The numerical kernel is compiled from ``_mlf_core.pyx`` when available and
falls back to the pure-Python ``_mlf_py`` otherwise.  Set the environment
variable ``BACKFRAC_PURE_PYTHON=1`` to force the fallback.  The active kernel
is reported by :data:`BACKEND`.

Accuracy: relative error below 1e-10 (typically ~1e-15) for
``0 < gamma <= 0.999`` and ``gamma == 1``, ``beta`` in ``[0, 1]``, and
``z`` in ``[-1e10, 0]`` and beyond.  For ``0.999 < gamma < 1`` the quadrature
step stops shrinking and the accuracy degrades gracefully.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from types import ModuleType

import numpy as np

from . import _mlf_py
from .errors import DomainError


def _load_kernel() -> tuple[ModuleType, str]:
    if os.environ.get("BACKFRAC_PURE_PYTHON") == "1":
        return _mlf_py, "python"
    try:
        from . import _mlf_core
    except ImportError:
        return _mlf_py, "python"
    return _mlf_core, "cython"


_kernel, BACKEND = _load_kernel()


def kernels() -> dict[str, ModuleType]:
    """All importable kernels by name; used by tests and the benchmark."""
    found = {"python": _mlf_py}
    try:
        from . import _mlf_core
    except ImportError:
        pass
    else:
        found["cython"] = _mlf_core
    return found


@dataclass(frozen=True)
class MlParams:
    """Parameters of E_{gamma,beta}.

    ``gamma == 1`` is admitted with ``beta`` in ``{0, 1}`` only, where closed
    forms exist (``exp(z)`` and ``z exp(z)``).
    """

    gamma: float
    beta: float = 1.0

    def __post_init__(self) -> None:
        if not (0.0 < self.gamma <= 1.0):
            raise DomainError(f"gamma must lie in (0, 1], got {self.gamma}")
        if not (0.0 <= self.beta <= 1.0):
            raise DomainError(f"beta must lie in [0, 1], got {self.beta}")
        if self.gamma == 1.0 and self.beta not in (0.0, 1.0):
            raise DomainError("gamma = 1 supports beta in {0, 1} only")


def _exp_case(beta: float, z):
    if beta == 1.0:
        return np.exp(z)
    return z * np.exp(z)


def mlf_eval(params: MlParams, z: float) -> float:
    """Evaluate E_{gamma,beta}(z) for real ``z <= 0``.

    >>> mlf_eval(MlParams(0.5, 1.0), 0.0)
    1.0
    >>> round(mlf_eval(MlParams(1.0, 1.0), -2.0), 10)
    0.1353352832
    """
    z = float(z)
    if not z <= 0.0:
        raise DomainError(f"z must be <= 0, got {z}")
    if params.gamma == 1.0:
        return float(_exp_case(params.beta, z))
    return float(_kernel.ml_scalar(params.gamma, params.beta, -z))


def mittag_leffler(gamma: float, beta: float, z) -> np.ndarray:
    """Vectorized E_{gamma,beta}(z) over an array of non-positive ``z``."""
    params = MlParams(gamma, beta)
    z = np.asarray(z, dtype=float)
    if np.any(~(z <= 0.0)):
        raise DomainError("all arguments must be <= 0")
    if params.gamma == 1.0:
        return np.asarray(_exp_case(params.beta, z), dtype=float)
    return np.asarray(_kernel.ml_array(params.gamma, params.beta, -z), dtype=float)


def mlf_deriv_check(
    params: MlParams, s: float, t: float, h: float | None = None
) -> tuple[float, float]:
    """Both sides of d/ds E_{g,1}(s t^g) = E_{g,0}(s t^g) / (g s).

    Follows from differentiating the power series term by term; at ``g = 1``,
    ``t = 1`` both sides reduce to ``exp(s)``.

    Returns ``(analytic, finite_difference)``; the latter is a central
    difference of ``E_{g,1}`` with step ``h`` (default ``1e-6 * max(1, |s|)``).
    ``params.beta`` is ignored.
    """
    if not s < 0.0 or not t > 0.0:
        raise DomainError("need s < 0 and t > 0")
    if h is None:
        h = 1e-6 * max(1.0, abs(s))
    if not 0.0 < h < abs(s):
        raise DomainError("step h must satisfy 0 < h < |s|")
    g = params.gamma
    tg = t**g
    x = s * tg
    analytic = mlf_eval(MlParams(g, 0.0), x) / (g * s)
    one = MlParams(g, 1.0)
    fd = (mlf_eval(one, (s + h) * tg) - mlf_eval(one, (s - h) * tg)) / (2.0 * h)
    return analytic, fd


__all__ = [
    "BACKEND",
    "MlParams",
    "kernels",
    "mlf_deriv_check",
    "mlf_eval",
    "mittag_leffler",
]
