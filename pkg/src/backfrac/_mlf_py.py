"""Pure-Python Mittag-Leffler kernel.

Reference implementation of the algorithm compiled in ``_mlf_core.pyx``; it is
used when the extension is not built, and by the tests as a second backend.

All entry points take ``x = -z >= 0`` and ``0 < gamma < 1``; the ``gamma == 1``
shortcut and argument validation live in :mod:`backfrac.mlf`.

Regions, in terms of ``w = x**(1/gamma)``:

* ``x <= x_series`` and ``w <= 1``: Taylor series.  For small ``gamma`` the
  terms decay slowly and cancel, hence both limits.
* ``w >= w_asym``: algebraic asymptotic expansion, accepted only when its
  smallest term is below double precision.
* otherwise: the inverse-Laplace integral with the Hankel contour collapsed
  onto the branch cut,

      E(-x) = 1/(pi*gamma) * int_0^inf exp(-u**(1/gamma)) u**((1-beta)/gamma)
              * (u sin(pi beta) - x sin(pi (gamma - beta)))
              / (u**2 + 2 u x cos(pi gamma) + x**2) du,

  integrated by the trapezoid rule in ``v = log(u)``.  The integrand is
  analytic in the strip ``|Im v| < min(pi (1 - gamma), pi gamma / 2)``, so the
  rule converges geometrically with a step chosen from the strip width.
"""

from __future__ import annotations

import math

import numpy as np

X_SERIES = 0.5
W_ASYM = 40.0

# ln(1/tolerance) of the trapezoid rule, and the floor on the strip half-width
# (reached at gamma = 0.999; beyond that the step stops shrinking).
_TRAP_LOG_TOL = 38.0
_MIN_STRIP = 0.9 * math.pi * 1e-3
_V_LOW = -40.0
_W_HIGH = 70.0

_TINY = 2.0**-56
_EULER = 0.5772156649015329


def sinpi(a: float) -> float:
    n = round(a)
    s = math.sin(math.pi * (a - n))
    return -s if n % 2 else s


def rgamma(a: float) -> float:
    """1/Gamma(a), zero at the poles."""
    if a <= 0.0 and a == math.floor(a):
        return 0.0
    if abs(a) < 1e-8:
        return a * (1.0 + _EULER * a)  # Gamma(a) overflows for subnormal a
    if a > 171.0:
        return math.exp(-math.lgamma(a))
    if a < -170.0:
        return sinpi(a) * math.exp(math.lgamma(1.0 - a)) / math.pi
    return 1.0 / math.gamma(a)


def series(gamma: float, beta: float, x: float) -> float:
    total = 0.0
    w = x ** (1.0 / gamma)
    k = 0
    xk = 1.0
    while True:
        term = xk * rgamma(k * gamma + beta)
        if k % 2:
            term = -term
        total += term
        if k * gamma > 2.0 * w + 2.0 and abs(term) <= _TINY * abs(total):
            return total
        k += 1
        xk *= x
        if k > 100000:
            raise ArithmeticError("Mittag-Leffler series failed to converge")


def asymptotic(gamma: float, beta: float, x: float) -> float | None:
    """Algebraic expansion -sum_k z**-k / Gamma(beta - k gamma), or None.

    Terms are summed while their envelope ``Gamma(1 - a) / (pi x**k)`` keeps
    shrinking; the result is rejected unless the envelope fell below
    double precision relative to the partial sum.
    """
    total = 0.0
    logx = math.log(x)
    prev = math.inf
    smallest = math.inf
    for k in range(1, 4000):
        a = beta - k * gamma
        if a > 0.0:
            env = math.exp(-k * logx) / math.gamma(a)
            mag = env
        elif a == math.floor(a):
            continue
        else:
            env = math.exp(math.lgamma(1.0 - a) - k * logx) / math.pi
            mag = sinpi(a) * env
        total += -mag if k % 2 == 0 else mag
        smallest = min(smallest, env)
        if total != 0.0 and env <= _TINY * abs(total):
            return total
        if env > prev and k * gamma > 1.0:
            break
        prev = env
    if total != 0.0 and smallest <= 1e-16 * abs(total):
        return total
    return None


def _nodes(gamma: float, x: float) -> tuple[np.ndarray, float]:
    strip = max(min(math.pi * (1.0 - gamma), 0.5 * math.pi * gamma) * 0.9, _MIN_STRIP)
    h = 2.0 * math.pi * strip / _TRAP_LOG_TOL
    v_lo = math.log(min(1.0, x)) + _V_LOW
    v_hi = gamma * math.log(_W_HIGH)
    n = int(math.ceil((v_hi - v_lo) / h))
    return v_lo + h * np.arange(n + 1), h


def integral(gamma: float, beta: float, x: float) -> float:
    v, h = _nodes(gamma, x)
    u = np.exp(v)
    num = u * math.sin(math.pi * beta) - x * math.sin(math.pi * (gamma - beta))
    den = u * u + 2.0 * x * math.cos(math.pi * gamma) * u + x * x
    f = np.exp(-np.exp(v / gamma) + v * (1.0 + (1.0 - beta) / gamma)) * num / den
    return float(math.fsum(f)) * h / (math.pi * gamma)


def ml_scalar(
    gamma: float,
    beta: float,
    x: float,
    x_series: float = X_SERIES,
    w_asym: float = W_ASYM,
) -> float:
    """E_{gamma,beta}(-x) for x >= 0 and 0 < gamma < 1."""
    if x == 0.0:
        return rgamma(beta)
    w = x ** (1.0 / gamma)
    if x <= x_series and w <= 1.0:
        return series(gamma, beta, x)
    if w >= w_asym:
        val = asymptotic(gamma, beta, x)
        if val is not None:
            return val
    return integral(gamma, beta, x)


def ml_array(gamma: float, beta: float, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    vals = [ml_scalar(gamma, beta, float(xi)) for xi in x.ravel()]
    return np.array(vals, dtype=float).reshape(x.shape)
