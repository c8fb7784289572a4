"""Matrix entries and finite sections of powers of the discrete Laplacian.

The operator acts on square-summable sequences over {1,2,...} with the
Dirichlet convention u_0 = 0.  For positive powers the entries follow the
closed form

    A(alpha)_{m,n} = (-1)^{m+n} [ C(2a, a+m-n) - C(2a, a+m+n) ],  a = alpha,

with C the generalized binomial; the two negative powers -1/2 and -1
have their own closed forms (digamma expression and min(m,n)).  Entries
are Toeplitz-minus-Hankel in (m-n, m+n), which the assembler exploits.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field
from typing import IO

import numpy as np
from scipy import special as sp
from scipy.linalg import hankel, toeplitz

from . import quadrature
from .special import _sinpi, digamma, gen_binomial

SPECIAL_NEGATIVE = (-0.5, -1.0)


class UnsupportedExponentError(ValueError):
    """alpha outside the supported set: alpha > 0 or alpha in {-1/2, -1}."""


@dataclass(frozen=True)
class Exponent:
    """A validated power of the Laplacian with its regime classification."""

    alpha: float

    def __post_init__(self):
        a = self.alpha
        if not (a > 0.0 or a in SPECIAL_NEGATIVE):
            raise UnsupportedExponentError(
                f"alpha={a}: only positive powers and the special values "
                f"-1/2 and -1 are supported"
            )

    @property
    def subcritical_regime(self) -> bool:
        return 0.0 < self.alpha < 1.5

    @property
    def critical_regime(self) -> bool:
        return self.alpha >= 1.5

    @property
    def special_negative(self) -> bool:
        return self.alpha in SPECIAL_NEGATIVE

    @property
    def regime(self) -> str:
        if self.special_negative:
            return "special_negative"
        return "critical" if self.critical_regime else "subcritical"


@dataclass(frozen=True)
class TruncatedOperator:
    """A dense symmetric finite section, immutable once assembled."""

    size: int
    entries: np.ndarray = field(repr=False)
    provenance: str = "power_alpha"

    def __post_init__(self):
        self.entries.setflags(write=False)


def _signed_coeff(alpha: float, k: np.ndarray) -> np.ndarray:
    """(-1)^k C(2*alpha, alpha+k) for integer k >= 0, vectorized.

    Computed in log-Gamma space; for k > alpha the reflection formula
    turns the Gamma at the negative argument alpha-k+1 into
    (-1)^(k+1) sin(pi*alpha) Gamma(k-alpha) / pi, so no overflow occurs
    for any section size.
    """
    k = np.asarray(k, dtype=float)
    out = np.empty_like(k)
    if alpha > 0.0 and alpha == math.floor(alpha):
        # integer power: plain binomials, exact in floats (no log round trip)
        a = int(alpha)
        for i, kf in enumerate(k.ravel()):
            ki = int(kf)
            val = float(math.comb(2 * a, a + ki)) if ki <= a else 0.0
            out.ravel()[i] = -val if ki % 2 else val
        return out
    lg_top = math.lgamma(2.0 * alpha + 1.0)
    direct = alpha - k + 1.0 > 0.0
    if np.any(direct):
        kd = k[direct]
        sign = np.where(kd.astype(int) % 2 == 0, 1.0, -1.0)
        out[direct] = sign * np.exp(
            lg_top - sp.gammaln(alpha + kd + 1.0) - sp.gammaln(alpha - kd + 1.0)
        )
    rest = ~direct
    if np.any(rest):
        kr = k[rest]
        s = _sinpi(alpha)
        if s == 0.0:  # integer alpha: binomial vanishes beyond the band
            out[rest] = 0.0
        else:
            out[rest] = -(s / math.pi) * np.exp(
                lg_top + sp.gammaln(kr - alpha) - sp.gammaln(alpha + kr + 1.0)
            )
    return out


def _entry_neg_half_diag(k: np.ndarray) -> np.ndarray:
    """T(k) = [psi(1/2+k) + psi(1/2-k)] / [Gamma(1/2+k) Gamma(1/2-k)].

    The Gamma product equals (-1)^k pi exactly (reflection at half
    integers), which keeps the expression stable for large k.
    """
    k = np.asarray(k, dtype=float)
    psum = sp.psi(0.5 + k) + sp.psi(0.5 - k)
    sign = np.where(k.astype(int) % 2 == 0, 1.0, -1.0)
    return sign * psum / math.pi


def entry(alpha: float | Exponent, m: int, n: int) -> float:
    """Matrix entry A(alpha)_{m,n} for m, n >= 1."""
    exp_ = alpha if isinstance(alpha, Exponent) else Exponent(alpha)
    if m < 1 or n < 1:
        raise ValueError("indices are 1-based: m, n >= 1")
    a = exp_.alpha
    if a == -1.0:
        return float(min(m, n))
    if a == -0.5:
        t = _entry_neg_half_diag(np.array([m + n, m - n]))
        sign = 1.0 if (m + n) % 2 == 0 else -1.0
        return float(0.5 * sign * (t[0] - t[1]))
    c = _signed_coeff(a, np.array([abs(m - n), m + n]))
    return float(c[0] - c[1])


def assemble(alpha: float | Exponent, size: int) -> TruncatedOperator:
    """The leading size x size section of A(alpha), symmetric by construction."""
    exp_ = alpha if isinstance(alpha, Exponent) else Exponent(alpha)
    if size < 1:
        raise ValueError("size must be >= 1")
    a = exp_.alpha
    if a == -1.0:
        idx = np.arange(1, size + 1)
        mat = np.minimum.outer(idx, idx).astype(float)
    elif a == -0.5:
        t = _entry_neg_half_diag(np.arange(0, 2 * size + 1))
        idx = np.arange(1, size + 1)
        parity = np.where(np.add.outer(idx, idx) % 2 == 0, 1.0, -1.0)
        t_sum = hankel(t[2 : size + 2], t[size + 1 : 2 * size + 1])
        t_diff = toeplitz(t[:size])
        mat = 0.5 * parity * (t_sum - t_diff)
    else:
        c = _signed_coeff(a, np.arange(0, 2 * size + 1))
        mat = toeplitz(c[:size]) - hankel(c[2 : size + 2], c[size + 1 : 2 * size + 1])
    return TruncatedOperator(size=size, entries=mat, provenance="power_alpha")


def assemble_reflected(alpha: float | Exponent, size: int) -> TruncatedOperator:
    """Section of 4^alpha * I - A(alpha); requires a positive power."""
    exp_ = alpha if isinstance(alpha, Exponent) else Exponent(alpha)
    if exp_.alpha <= 0.0:
        raise UnsupportedExponentError("reflected operator needs alpha > 0")
    base = assemble(exp_, size)
    mat = 4.0**exp_.alpha * np.eye(size) - base.entries
    return TruncatedOperator(size=size, entries=mat, provenance="reflected_4alpha_minus_power")


def entry_oracle(alpha: float, m: int, n: int, tol: float = 1e-12) -> float:
    """Independent quadrature evaluation of the entry, valid for alpha > -3/2.

    Integrates (2^(alpha+1)/pi) * (2 sin^2(theta/2))^alpha sin(m theta)
    sin(n theta) over (0, pi); the angular form keeps full accuracy at the
    endpoint singularity for negative alpha.
    """
    if alpha <= -1.5:
        raise ValueError("quadrature representation requires alpha > -3/2")
    if m < 1 or n < 1:
        raise ValueError("indices are 1-based: m, n >= 1")

    if alpha >= 0.0:
        def g(theta):
            base = 2.0 * np.sin(0.5 * theta) ** 2
            return base**alpha * np.sin(m * theta) * np.sin(n * theta)
    else:
        # negative power: the base factor alone overflows at the deepest
        # quadrature nodes; assemble the product in log space instead
        def g(theta):
            sm = np.sin(m * theta)
            sn = np.sin(n * theta)
            with np.errstate(divide="ignore"):
                logs = (
                    alpha * np.log(2.0 * np.sin(0.5 * theta) ** 2)
                    + np.log(np.abs(sm))
                    + np.log(np.abs(sn))
                )
            return np.sign(sm) * np.sign(sn) * np.exp(logs)

    val = quadrature.integrate_theta(g, tol)
    return float(2.0 ** (alpha + 1.0) / math.pi * val)


def save_matrix_csv(op: TruncatedOperator, fh: IO[str]) -> None:
    """Row-major CSV with 17 significant digits (round-trip safe)."""
    for row in op.entries:
        fh.write(",".join(f"{v:.17g}" for v in row))
        fh.write("\n")


def load_matrix_csv(fh: IO[str]) -> np.ndarray:
    rows = [[float(v) for v in line.split(",")] for line in fh if line.strip()]
    return np.array(rows)


def save_matrix_binary(op: TruncatedOperator, fh: IO[bytes]) -> None:
    """8-byte little-endian size header followed by row-major float64."""
    fh.write(struct.pack("<Q", op.size))
    fh.write(np.ascontiguousarray(op.entries, dtype="<f8").tobytes())


def load_matrix_binary(fh: IO[bytes]) -> np.ndarray:
    (size,) = struct.unpack("<Q", fh.read(8))
    data = np.frombuffer(fh.read(8 * size * size), dtype="<f8")
    return data.reshape(size, size).copy()
