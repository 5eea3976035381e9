# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Mittag-Leffler kernel; same algorithm as ``_mlf_py``."""

from libc.math cimport M_PI, ceil, cos, exp, fabs, floor, lgamma, log, pow, round, sin, tgamma

import numpy as np

cdef double X_SERIES = 0.5
cdef double W_ASYM = 40.0
cdef double TRAP_LOG_TOL = 38.0
cdef double MIN_STRIP = 0.9 * M_PI * 1e-3
cdef double V_LOW = -40.0
cdef double W_HIGH = 70.0
cdef double TINY = 1.3877787807814457e-17  # 2**-56
cdef double EULER = 0.5772156649015329


cdef inline double sinpi(double a) nogil:
    cdef double n = round(a)
    cdef double s = sin(M_PI * (a - n))
    if fmod2(n):
        return -s
    return s


cdef inline bint fmod2(double n) nogil:
    return fabs(n - 2.0 * floor(n / 2.0)) > 0.5


cdef double rgamma(double a) nogil:
    if a <= 0.0 and a == floor(a):
        return 0.0
    if fabs(a) < 1e-8:
        return a * (1.0 + EULER * a)
    if a > 171.0:
        return exp(-lgamma(a))
    if a < -170.0:
        return sinpi(a) * exp(lgamma(1.0 - a)) / M_PI
    return 1.0 / tgamma(a)


cdef double series(double gamma, double beta, double x) except? -1e300 nogil:
    cdef double total = 0.0, term, xk = 1.0
    cdef double w = pow(x, 1.0 / gamma)
    cdef long k = 0
    while True:
        term = xk * rgamma(k * gamma + beta)
        if k % 2:
            term = -term
        total += term
        if k * gamma > 2.0 * w + 2.0 and fabs(term) <= TINY * fabs(total):
            return total
        k += 1
        xk *= x
        if k > 100000:
            with gil:
                raise ArithmeticError("Mittag-Leffler series failed to converge")


cdef bint asymptotic(double gamma, double beta, double x, double* result) nogil:
    cdef double total = 0.0, logx = log(x)
    cdef double prev = 1e308, smallest = 1e308
    cdef double a, env, mag
    cdef long k
    for k in range(1, 4000):
        a = beta - k * gamma
        if a > 0.0:
            env = exp(-k * logx) / tgamma(a)
            mag = env
        elif a == floor(a):
            continue
        else:
            env = exp(lgamma(1.0 - a) - k * logx) / M_PI
            mag = sinpi(a) * env
        if k % 2 == 0:
            total -= mag
        else:
            total += mag
        if env < smallest:
            smallest = env
        if total != 0.0 and env <= TINY * fabs(total):
            result[0] = total
            return True
        if env > prev and k * gamma > 1.0:
            break
        prev = env
    if total != 0.0 and smallest <= 1e-16 * fabs(total):
        result[0] = total
        return True
    return False


cdef double integral(double gamma, double beta, double x) nogil:
    cdef double strip = 0.9 * min(M_PI * (1.0 - gamma), 0.5 * M_PI * gamma)
    if strip < MIN_STRIP:
        strip = MIN_STRIP
    cdef double h = 2.0 * M_PI * strip / TRAP_LOG_TOL
    cdef double v_lo = log(min(1.0, x)) + V_LOW
    cdef double v_hi = gamma * log(W_HIGH)
    cdef long n = <long>ceil((v_hi - v_lo) / h)
    cdef double sb = sin(M_PI * beta), sgb = x * sin(M_PI * (gamma - beta))
    cdef double c2 = 2.0 * x * cos(M_PI * gamma), xx = x * x
    cdef double power = 1.0 + (1.0 - beta) / gamma
    cdef double total = 0.0, v, u
    cdef long k
    for k in range(n + 1):
        v = v_lo + h * k
        u = exp(v)
        total += exp(-exp(v / gamma) + v * power) * (u * sb - sgb) / (u * u + c2 * u + xx)
    return total * h / (M_PI * gamma)


cpdef double ml_scalar(double gamma, double beta, double x,
                       double x_series=X_SERIES, double w_asym=W_ASYM) except? -1e300:
    """E_{gamma,beta}(-x) for x >= 0 and 0 < gamma < 1."""
    cdef double w, val
    if x == 0.0:
        return rgamma(beta)
    w = pow(x, 1.0 / gamma)
    if x <= x_series and w <= 1.0:
        return series(gamma, beta, x)
    if w >= w_asym and asymptotic(gamma, beta, x, &val):
        return val
    return integral(gamma, beta, x)


def ml_array(double gamma, double beta, x):
    arr = np.ascontiguousarray(x, dtype=np.float64)
    out = np.empty_like(arr)
    cdef double[::1] src = arr.reshape(-1)
    cdef double[::1] dst = out.reshape(-1)
    cdef Py_ssize_t i
    for i in range(src.shape[0]):
        dst[i] = ml_scalar(gamma, beta, src[i])
    return out
