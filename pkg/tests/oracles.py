"""Independent reference values for the Mittag-Leffler function."""

import math

import mpmath as mp
from scipy.special import erfcx


def ml_series_mp(gamma: float, beta: float, z: float, dps: int | None = None) -> float:
    """Power series in extended precision.

    The largest term is about exp(|z|^(1/gamma)), so the working precision is
    raised with it; keep |z|^(1/gamma) below a few hundred.
    """
    if dps is None:
        dps = 40 + int(0.9 * abs(z) ** (1 / gamma))
    with mp.workdps(dps):
        g, b, zz = mp.mpf(gamma), mp.mpf(beta), mp.mpf(z)
        total, k = mp.mpf(0), 0
        tol = mp.mpf(10) ** (-dps + 5)
        while True:
            term = zz**k * mp.rgamma(g * k + b)
            total += term
            if k * gamma > 2 * abs(z) ** (1 / gamma) + 10 and abs(term) <= tol * max(abs(total), tol):
                return float(total)
            k += 1


def ml_half_one(x: float) -> float:
    """E_{1/2,1}(-x) = exp(x^2) erfc(x)."""
    return float(erfcx(x))


def ml_half_half(x: float) -> float:
    """E_{1/2,1/2}(-x) = 1/sqrt(pi) - x exp(x^2) erfc(x)."""
    return 1.0 / math.sqrt(math.pi) - x * float(erfcx(x))
