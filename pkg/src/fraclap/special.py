"""Scalar special functions shared by all modules.

log-Gamma, reciprocal Gamma (entire), digamma, Pochhammer symbols with
sign/log bookkeeping, generalized binomial coefficients, Chebyshev
polynomials of the second kind, and the Riemann zeta function with its
first derivative.  All functions are pure.
"""

from __future__ import annotations

import math

import mpmath
import numpy as np
from scipy import special as sp

EULER_GAMMA = 0.5772156649015328606


def _is_nonpositive_int(x: float) -> bool:
    return x <= 0.0 and x == math.floor(x)


def _sinpi(x: float) -> float:
    """sin(pi*x) with argument reduction (accurate for large |x|)."""
    r = x - round(x)
    s = math.sin(math.pi * r)
    return -s if round(x) % 2 else s


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if x <= 0.0:
        raise ValueError(f"log_gamma requires x > 0, got {x}; use reciprocal_gamma for x <= 0")
    return math.lgamma(x)


def reciprocal_gamma(x: float) -> float:
    """1/Gamma(x), entire in x; exactly 0 at 0, -1, -2, ..."""
    if _is_nonpositive_int(x):
        return 0.0
    return float(sp.rgamma(x))


def digamma(x: float) -> float:
    """psi(x) = Gamma'(x)/Gamma(x); poles at the non-positive integers."""
    if _is_nonpositive_int(x):
        raise ValueError(f"digamma pole at x = {x}")
    return float(sp.psi(x))


def signed_log_gamma(x: float) -> tuple[float, float]:
    """(sign, ln|Gamma(x)|); sign is 0.0 at the poles (reciprocal vanishes)."""
    if x > 0.0:
        return 1.0, math.lgamma(x)
    if _is_nonpositive_int(x):
        return 0.0, math.inf
    # reflection: Gamma(x) = pi / (sin(pi x) Gamma(1-x))
    s = _sinpi(x)
    return math.copysign(1.0, s), math.log(math.pi) - math.log(abs(s)) - math.lgamma(1.0 - x)


def log_pochhammer(a: float, k: int) -> tuple[float, float]:
    """(sign, ln|(a)_k|) of the ascending factorial a(a+1)...(a+k-1).

    Overflow-safe for k up to at least 10^6.  sign is 0.0 when a factor
    is exactly zero.
    """
    if k < 0:
        raise ValueError("k must be a non-negative integer")
    if k == 0:
        return 1.0, 0.0
    if a > 0.0:
        return 1.0, math.lgamma(a + k) - math.lgamma(a)
    if a == math.floor(a):  # non-positive integer start
        if a + k > 0:
            return 0.0, -math.inf  # the factor 0 occurs
        # all factors are negative integers
        sign = -1.0 if k % 2 else 1.0
        return sign, math.lgamma(1.0 - a) - math.lgamma(1.0 - a - k)
    # a < 0, non-integer: the first m factors are negative
    m = min(k, math.ceil(-a))
    sign = -1.0 if m % 2 else 1.0
    # |a(a+1)...(a+m-1)| = Gamma(1-a)/Gamma(1-a-m)
    log_abs = math.lgamma(1.0 - a) - math.lgamma(1.0 - a - m)
    if m < k:
        log_abs += math.lgamma(a + k) - math.lgamma(a + m)
    return sign, log_abs


def pochhammer(a: float, k: int) -> float:
    """(a)_k = a(a+1)...(a+k-1), with (a)_0 = 1."""
    sign, log_abs = log_pochhammer(a, k)
    if sign == 0.0:
        return 0.0
    return sign * math.exp(log_abs)


def gen_binomial(a: float, b: float) -> float:
    """Generalized binomial Gamma(a+1) / (Gamma(b+1) Gamma(a-b+1)).

    Evaluated through the entire reciprocal Gamma function, so the value
    is 0 whenever b+1 or a-b+1 is a non-positive integer while a+1 is not.
    """
    s_num, l_num = signed_log_gamma(a + 1.0)
    s_d1, l_d1 = signed_log_gamma(b + 1.0)
    s_d2, l_d2 = signed_log_gamma(a - b + 1.0)
    num_pole = s_num == 0.0
    den_poles = (s_d1 == 0.0) + (s_d2 == 0.0)
    if not num_pole:
        if den_poles:
            return 0.0
        return s_num * s_d1 * s_d2 * math.exp(l_num - l_d1 - l_d2)
    if den_poles == 0:
        return math.inf
    # pole against pole: take the symmetric limit in the upper argument
    eps = 1e-7
    lo = gen_binomial(a - eps, b)
    hi = gen_binomial(a + eps, b)
    return 0.5 * (lo + hi)


def chebyshev_u(n: int, x):
    """Chebyshev polynomial of the second kind U_n evaluated at x.

    Uses sin((n+1)theta)/sin(theta) on [-1,1] away from the endpoints,
    the three-term recurrence where |sin theta| < 1e-6 (the trig form
    loses all relative accuracy there), and the hyperbolic analogue for
    |x| > 1.  Accepts scalars or numpy arrays.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    scalar = np.isscalar(x)
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)

    inside = np.abs(x) <= 1.0
    if np.any(inside):
        xi = x[inside]
        theta = np.arccos(xi)
        s = np.sin(theta)
        vals = np.empty_like(xi)
        trig = s >= 1e-6
        if np.any(trig):
            vals[trig] = np.sin((n + 1) * theta[trig]) / s[trig]
        if np.any(~trig):
            vals[~trig] = _u_recurrence(n, xi[~trig])
        out[inside] = vals
    if np.any(~inside):
        xo = x[~inside]
        sgn = np.where(xo > 1.0, 1.0, (-1.0) ** n)
        ax = np.abs(xo)
        t = np.arccosh(ax)
        small = t < 1e-6
        vals = np.empty_like(ax)
        if np.any(~small):
            ts = t[~small]
            vals[~small] = np.sinh((n + 1) * ts) / np.sinh(ts)
        if np.any(small):
            vals[small] = _u_recurrence(n, ax[small])
        out[~inside] = sgn * vals
    return float(out) if scalar else out


def _u_recurrence(n: int, x: np.ndarray) -> np.ndarray:
    u_prev = np.ones_like(x)
    if n == 0:
        return u_prev
    u = 2.0 * x
    for _ in range(n - 1):
        u_prev, u = u, 2.0 * x * u - u_prev
    return u


def zeta_and_derivative(s: float) -> tuple[float, float]:
    """(zeta(s), zeta'(s)) for s > 1."""
    if s <= 1.0:
        raise ValueError(f"zeta_and_derivative requires s > 1, got {s}")
    with mpmath.workdps(30):
        z = mpmath.zeta(s)
        zp = mpmath.zeta(s, derivative=1)
    return float(z), float(zp)
