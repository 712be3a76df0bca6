"""Complex gamma, reciprocal gamma and digamma.

Lanczos approximation (g = 7, nine terms) in the half-plane Re z >= 1/2,
switching to the Stirling series for |z| >= 10, and the reflection formula
below Re z = 1/2.  The digamma function uses upward
recurrence into |z| >= 10 followed by the Stirling-type asymptotic series.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "GammaValue",
    "gamma",
    "recip_gamma",
    "digamma",
    "psi_recip_gamma",
    "pochhammer",
    "is_nonpositive_integer",
    "sinpi",
    "cospi",
]

_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)

# B_{2k} / (2k) for the digamma asymptotic series
_PSI_ASYMP = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
)

# pole detection: exact integers only, plus a relative slack for round-off
_POLE_TOL = 1e-14


@dataclass(frozen=True)
class GammaValue:
    """Result of :func:`gamma`.

    At a pole ``value`` is ``nan`` and ``at_pole`` is true; the reciprocal
    is then exactly zero (see :func:`recip_gamma`).
    """

    value: complex
    at_pole: bool

    @property
    def reciprocal(self) -> complex:
        return 0j if self.at_pole else 1.0 / self.value


def is_nonpositive_integer(z, tol=_POLE_TOL) -> bool:
    z = complex(z)
    if abs(z.imag) > tol or z.real > 0.5:
        return False
    n = round(z.real)
    return n <= 0 and abs(z.real - n) <= tol * max(1.0, abs(n))


def _cos_reduced(r: float) -> float:
    # cos(pi r) for |r| <= 1/2, exactly zero at the endpoints
    return 0.0 if abs(r) == 0.5 else math.cos(math.pi * r)


def sinpi(z) -> complex:
    """sin(pi z) with exact reduction of the real part."""
    z = complex(z)
    n = round(z.real)
    r = z.real - n
    sign = -1.0 if n % 2 else 1.0
    y = math.pi * z.imag
    return sign * complex(math.sin(math.pi * r) * math.cosh(y), _cos_reduced(r) * math.sinh(y))


def cospi(z) -> complex:
    """cos(pi z) with exact reduction of the real part."""
    z = complex(z)
    n = round(z.real)
    r = z.real - n
    sign = -1.0 if n % 2 else 1.0
    y = math.pi * z.imag
    return sign * complex(_cos_reduced(r) * math.cosh(y), -math.sin(math.pi * r) * math.sinh(y))


# B_{2k} / (2k (2k - 1)) for the log-gamma Stirling series
_LOGGAMMA_ASYMP = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def _stirling(z: complex) -> complex:
    # |z| >= 10, Re z >= 1/2: last term ~1e-19
    inv = 1.0 / z
    inv2 = inv * inv
    series = 0j
    p = inv
    for c in _LOGGAMMA_ASYMP:
        series += c * p
        p *= inv2
    return cmath.exp((z - 0.5) * cmath.log(z) - z + _HALF_LOG_2PI + series)


def _lanczos(z: complex) -> complex:
    # valid for Re z >= 1/2
    if abs(z) >= 10.0:
        return _stirling(z)
    z = z - 1.0
    acc = _LANCZOS_COEF[0]
    for k in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    return _SQRT_2PI * cmath.exp((z + 0.5) * cmath.log(t) - t) * acc


def gamma(z) -> GammaValue:
    """Gamma function of a complex argument.

    >>> abs(gamma(5).value - 24) < 1e-12
    True
    >>> gamma(-2).at_pole
    True
    """
    z = complex(z)
    if is_nonpositive_integer(z):
        return GammaValue(complex(math.nan, math.nan), True)
    if z.real >= 0.5:
        return GammaValue(_lanczos(z), False)
    return GammaValue(math.pi / (sinpi(z) * _lanczos(1.0 - z)), False)


def recip_gamma(z) -> complex:
    """1/Gamma(z), an entire function; exactly 0 at z = 0, -1, -2, ..."""
    z = complex(z)
    if is_nonpositive_integer(z):
        return 0j
    if z.real >= 0.5:
        return 1.0 / _lanczos(z)
    return sinpi(z) * _lanczos(1.0 - z) / math.pi


def _psi_right(z: complex) -> complex:
    acc = 0j
    while abs(z) < 10.0 or z.real < 5.0:
        acc -= 1.0 / z
        z += 1.0
    inv2 = 1.0 / (z * z)
    series = 0j
    p = inv2
    for c in _PSI_ASYMP:
        series += c * p
        p *= inv2
    return acc + cmath.log(z) - 0.5 / z - series


def digamma(z) -> complex:
    """Logarithmic derivative of the gamma function.

    Raises
    ------
    DomainError
        At the poles z = 0, -1, -2, ...
    """
    z = complex(z)
    if is_nonpositive_integer(z):
        raise DomainError(f"digamma has a pole at z = {z}")
    if z.real >= 0.5:
        return _psi_right(z)
    # psi(1 - z) - psi(z) = pi cot(pi z)
    return _psi_right(1.0 - z) - math.pi * cospi(z) / sinpi(z)


def psi_recip_gamma(z) -> complex:
    """psi(z)/Gamma(z), continued through the poles.

    At z = -j the product tends to (-1)^(j+1) j!.
    """
    z = complex(z)
    if is_nonpositive_integer(z):
        j = -round(z.real)
        return complex((-1.0) ** (j + 1) * math.factorial(j))
    return digamma(z) * recip_gamma(z)


def pochhammer(a, n: int) -> complex:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1) for integer n >= 0."""
    a = complex(a)
    out = 1.0 + 0j
    for k in range(n):
        out *= a + k
    return out
