"""Square of the discrete Laplacian with a single-site attractive coupling.

The resolvent of the squared operator factorizes through the pair of
Joukowski parameters solving z + 1/z = 2 -/+ sqrt(lam), |z| < 1, which
gives a closed-form Green kernel.  A rank-one perturbation -c at one site
then produces exactly one negative eigenvalue per coupling, available in
closed form for site 1 and by a one-dimensional root find in general.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .special import chebyshev_u

#: the essential spectrum of the squared operator
SPECTRUM_TOP = 16.0


@dataclass(frozen=True)
class JoukowskiPair:
    """The two inside-the-disk solutions of z + 1/z = 2 -/+ sqrt(lam)."""

    xi: complex
    eta: complex

    @property
    def lam(self) -> complex:
        s = 0.5 * ((self.eta + 1.0 / self.eta) - (self.xi + 1.0 / self.xi))
        return s * s


def _big_root(w: complex, w_minus_2: complex | None = None) -> tuple[complex, complex]:
    """Root z of z^2 - w z + 1 = 0 with |z| > 1, returned as (z, z - 1).

    z - 1 = ((w - 2) + disc)/2 is free of cancellation precisely when z is
    close to 1 (there |w - 2| << |disc|), which is where it is needed.
    Passing w - 2 exactly keeps the discriminant (w-2)(w+2) accurate when
    w is within rounding distance of 2.
    """
    if w_minus_2 is None:
        w_minus_2 = w - 2.0
    disc = cmath.sqrt(w_minus_2 * (w + 2.0))
    if (w.conjugate() * disc).real < 0.0:
        disc = -disc
    return 0.5 * (w + disc), 0.5 * (w_minus_2 + disc)


def _unit_disk_root(w: complex) -> complex:
    """Root of z^2 - w z + 1 = 0 with |z| < 1, via the stable big root."""
    return 1.0 / _big_root(w)[0]


def _pair_with_gaps(lam) -> tuple[complex, complex, complex, complex]:
    """(xi, eta, 1 - xi, 1 - eta) for a spectral point lam off [0, 16].

    The gaps 1 - xi and 1 - eta are computed to full relative accuracy
    even when both parameters crowd the point z = 1 (lam -> 0).
    """
    lam = complex(lam)
    if lam.imag == 0.0 and 0.0 <= lam.real <= SPECTRUM_TOP:
        raise ValueError(f"lam={lam.real} lies in the essential spectrum [0, 16]")
    root = cmath.sqrt(lam)
    z_xi, d_xi = _big_root(2.0 - root, -root)
    z_eta, d_eta = _big_root(2.0 + root, root)
    # 1 - 1/z = (z - 1)/z
    return 1.0 / z_xi, 1.0 / z_eta, d_xi / z_xi, d_eta / z_eta


def joukowski_pair(lam) -> JoukowskiPair:
    """Joukowski parameters for a spectral point lam off [0, 16]."""
    xi, eta, _, _ = _pair_with_gaps(lam)
    return JoukowskiPair(xi=xi, eta=eta)


def _log1p(x: complex) -> complex:
    """log(1 + x) for complex x, accurate for small |x|.

    Uses log(1+x) = 2 atanh(x/(2+x)); the atanh series has no alternating
    cancellation and converges quickly for |x| <= 1/2.
    """
    if abs(x) > 0.5:
        return cmath.log(1.0 + x)
    y = x / (2.0 + x)
    y2 = y * y
    term = y
    acc = y
    k = 3
    while abs(term) > 1e-17 * abs(acc):
        term *= y2
        acc += term / k
        k += 2
    return 2.0 * acc


def _expm1(x: complex) -> complex:
    """exp(x) - 1 for complex x, accurate for small |x|."""
    if abs(x) > 0.5:
        return cmath.exp(x) - 1.0
    term = x
    acc = x
    k = 2
    while abs(term) > 1e-17 * abs(acc):
        term *= x / k
        acc += term
        k += 1
    return acc


def _kernel_factor(z: complex, p: int, d: int, gap: complex | None = None) -> complex:
    """f(z) = (z^p - z^d) / (z - 1/z).

    When the accurate gap 1 - z is supplied and small, numerator and
    denominator are both rewritten around z = 1 so that neither suffers
    the z^p - z^d cancellation.
    """
    if gap is not None and abs(gap) < 1e-2:
        num = (1.0 - gap) ** d * _expm1((p - d) * _log1p(-gap))
        den = -gap * (2.0 - gap) / (1.0 - gap)
        return num / den
    return (z**p - z**d) / (z - 1.0 / z)


def _kernel_factor_deriv(z: complex, p: int, d: int) -> complex:
    """f'(z); the direct formula cancels catastrophically near z = 1, so a
    Taylor expansion in u = z - 1 takes over there."""
    u = z - 1.0
    if abs(u) < 1e-4:

        def _coeffs(k: float) -> tuple[float, float, float]:
            return (
                k * k / 4.0,
                k**3 / 6.0 - k * k / 4.0 - k / 6.0,
                k**4 / 16.0 - k**3 / 4.0 + k * k / 8.0 + k / 4.0,
            )

        cp, cd = _coeffs(float(p)), _coeffs(float(d))
        return (cp[0] - cd[0]) + u * ((cp[1] - cd[1]) + u * (cp[2] - cd[2]))
    denom = z - 1.0 / z
    num = (p * z ** (p - 1) - d * z ** (d - 1)) * denom - (z**p - z**d) * (1.0 + z**-2)
    return num / denom**2


def green_entry(m: int, n: int, lam):
    """Resolvent entry of the squared operator, (A^2 - lam)^(-1)_{m,n}.

    Closed form: with f(z) = (z^(m+n) - z^|m-n|)/(z - 1/z),

        G = xi*eta / ((1 - xi*eta)(xi - eta)) * (f(xi) - f(eta)),

    taking the confluent (derivative) limit when the two parameters
    coincide.  Returns a float for real lam, complex otherwise.
    """
    if m < 1 or n < 1:
        raise ValueError("indices are 1-based: m, n >= 1")
    is_real = not isinstance(lam, complex)
    xi, eta, gap_xi, gap_eta = _pair_with_gaps(lam)
    p, d = m + n, abs(m - n)
    # 1 - xi*eta and xi - eta rebuilt from the gaps: exact algebra, no
    # cancellation when both parameters crowd z = 1
    prefactor = xi * eta / (gap_xi + gap_eta - gap_xi * gap_eta)
    diff = gap_eta - gap_xi  # xi - eta
    if abs(diff) < 2e-6 * max(abs(xi), abs(eta)):
        # confluent limit: the divided difference becomes f'(midpoint)
        gap_mid = 0.5 * (gap_xi + gap_eta)
        val = prefactor * _kernel_factor_deriv(1.0 - gap_mid, p, d)
    else:
        val = (
            prefactor
            * (_kernel_factor(xi, p, d, gap_xi) - _kernel_factor(eta, p, d, gap_eta))
            / diff
        )
    return float(val.real) if is_real else val


def _coupling_inverse(s: float, site: int) -> float:
    """1/c as a function of s = 1 - r^2 along the bound-state curve.

    Equals ((1-s)/s) * sum_{j=0}^{site-1} (1-s)^j U_{2j}(2 sqrt(1-s)/(2-s)),
    strictly decreasing from +inf (s -> 0) to 0 (s -> 1).
    """
    r2 = 1.0 - s
    x = 2.0 * math.sqrt(r2) / (2.0 - s)
    acc = 0.0
    w = 1.0
    for j in range(site):
        acc += w * chebyshev_u(2 * j, x)
        w *= r2
    return r2 / s * acc


def _lambda_from_s(s: float) -> float:
    return -(s**4) / ((1.0 - s) * (2.0 - s) ** 2)


def lambda_site1_closed(c: float) -> float:
    """Bound state for a coupling at site 1: -c^4 / ((c+1)(c+2)^2)."""
    if c <= 0.0:
        raise ValueError("coupling c > 0 required")
    return -(c**4) / ((c + 1.0) * (c + 2.0) ** 2)


def lambda_bound_state(site: int, c: float, tol: float = 1e-14) -> float:
    """The unique negative eigenvalue of A^2 - c*delta_site.

    Root-finds the bound-state condition in the variable s = 1 - r^2 (the
    eigenvalue is -s^4/((1-s)(2-s)^2), so relative accuracy in s carries
    over to lam even when lam underflows the scale of c).
    """
    if site < 1:
        raise ValueError("site >= 1 required")
    if c <= 0.0:
        raise ValueError("coupling c > 0 required")

    def f(s):
        return c * _coupling_inverse(s, site) - 1.0

    lo, hi = 1e-16, 1.0 - 1e-16
    # f(lo) > 0 and f(hi) < 0 by monotonicity; guard against underflow at lo
    if f(lo) <= 0.0:
        lo = 1e-300
    # reaching s ~ 1e-300 from a unit-size bracket takes ~1000 bisections
    s = brentq(
        f, lo, hi, xtol=1e-300, rtol=4.0 * np.finfo(float).eps * (1.0 + tol), maxiter=1200
    )
    return _lambda_from_s(s)


def lambda_asymptotic(site: int, c: float, regime: str) -> float:
    """Leading asymptotics of the bound state in the coupling.

    regime "small_c": -(n^8 c^4 / 4)(1 - (2n(4n^2-1)/3) c), n = site;
    regime "large_c": -c + 6 for site >= 2, -c + 5 for site 1.
    """
    if site < 1:
        raise ValueError("site >= 1 required")
    if c <= 0.0:
        raise ValueError("coupling c > 0 required")
    if regime == "small_c":
        n = float(site)
        return -(n**8) * c**4 / 4.0 * (1.0 - 2.0 * n * (4.0 * n * n - 1.0) / 3.0 * c)
    if regime == "large_c":
        return -c + (5.0 if site == 1 else 6.0)
    raise ValueError(f"unknown regime {regime!r}; expected 'small_c' or 'large_c'")
