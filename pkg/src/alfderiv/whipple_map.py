"""The map f(z) = z / (sqrt(z+1) sqrt(z-1)) and w(z) = log coth(z/2).

f is analytic off [-1, 1], even there, and has positive real part.  Its
image of the vertical line Re z = 1 is the curve that bounds the region
Re f(z) > 1, parameterised here by z = 1 - i t, t > 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .kernel import CUT_TOL, sqrt_prod

__all__ = [
    "BoundaryCurvePoint",
    "SpecialPoints",
    "f_map",
    "w_map",
    "boundary_curve",
    "boundary_curve_arrays",
    "special_points",
    "asymptotic_near_one",
    "asymptotic_at_infinity",
    "approach_angle_near_one",
    "asymptote_angle",
    "T_A",
    "T_B",
    "T_C",
]

T_A = math.sqrt(2.0)
T_B = 2.0 / math.sqrt(3.0)
T_C = math.sqrt(math.sqrt(5.0) - 2.0)


def f_map(z):
    """z / (sqrt(z+1) sqrt(z-1)), principal square roots.

    Works on scalars and numpy arrays.  On (-1, 1) the sign of a zero
    imaginary part picks the side: f(x + i0) = -i x / sqrt(1 - x^2).

    >>> f_map(2)
    (1.1547005383792517+0j)
    """
    arr = np.asarray(z, dtype=complex)
    out = arr / np.asarray(sqrt_prod(arr))
    return complex(out) if np.ndim(z) == 0 else out


def _check_w_domain(arr):
    n = np.round(arr.imag / (2.0 * math.pi))
    bad = (arr.real <= CUT_TOL) & (np.abs(arr.imag - 2.0 * math.pi * n) <= CUT_TOL)
    if np.any(bad):
        raise DomainError("w(z) = log coth(z/2) is undefined on the rays Re z <= 0, Im z = 2 pi n")


def w_map(z):
    """log coth(z/2) with the principal logarithm.

    Evaluated as log1p(2 / expm1(z)) to keep accuracy when Re z is large.
    Period 2 pi i; an involution on the strip |Im z| < pi.
    """
    arr = np.asarray(z, dtype=complex)
    _check_w_domain(arr)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.log1p(2.0 / np.expm1(arr))
    return complex(out) if np.ndim(z) == 0 else out


@dataclass(frozen=True)
class BoundaryCurvePoint:
    t: float
    x: float
    y: float
    dist_sq: float


def boundary_curve_arrays(t):
    """x(t), y(t), |f|^2 of f(1 - i t) from the closed-form radicals."""
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise DomainError("boundary curve parameter t must be positive")
    s = np.sqrt(4.0 + t * t)
    plus = np.sqrt(s + 2.0)
    # sqrt(s - 2) = t / sqrt(s + 2) avoids cancellation as t -> 0
    minus = t / plus
    scale = 1.0 / (2.0 * np.sqrt(t * (4.0 + t * t)))
    x = scale * ((1.0 + t) * plus + (t - 1.0) * minus)
    y = scale * ((1.0 - t) * plus + (t + 1.0) * minus)
    dist_sq = (1.0 + t * t) / (t * s)
    return x, y, dist_sq


def boundary_curve(t: float) -> BoundaryCurvePoint:
    """Point of the curve f(1 - i t)."""
    x, y, d = boundary_curve_arrays(t)
    return BoundaryCurvePoint(float(t), float(x), float(y), float(d))


@dataclass(frozen=True)
class SpecialPoints:
    """Closed-form special points of the boundary curve.

    A is closest to the origin, B has the smallest real part and C is where
    the curve crosses Re w = 1.  Each entry is (x, y); ``t_*`` give the
    curve parameters.
    """

    A: tuple
    B: tuple
    C: tuple
    t_A: float = T_A
    t_B: float = T_B
    t_C: float = T_C


def special_points() -> SpecialPoints:
    r3 = math.sqrt(3.0)
    a = (0.5 * math.sqrt((3.0 * r3 + 5.0) / 3.0), 0.5 * math.sqrt((3.0 * r3 - 5.0) / 3.0))
    b = (0.75 * math.sqrt(1.5), 1.0 / (4.0 * math.sqrt(2.0)))
    c = (1.0, T_C)
    return SpecialPoints(A=a, B=b, C=c)


def asymptotic_near_one(epsilon: float, phi: float) -> complex:
    """Leading term of f(1 + eps e^{i phi}) as eps -> 0: (2 eps)^(-1/2) e^{-i phi/2}."""
    return (2.0 * epsilon) ** -0.5 * complex(math.cos(phi / 2.0), -math.sin(phi / 2.0))


def asymptotic_at_infinity(R: float, phi: float) -> complex:
    """f(R e^{i phi}) ~ 1 + e^{-2 i phi} / (2 R^2), error O(R^-4)."""
    return 1.0 + complex(math.cos(2.0 * phi), -math.sin(2.0 * phi)) / (2.0 * R * R)


def approach_angle_near_one(epsilon: float) -> float:
    """Polar angle about w = 1 at which the boundary curve reaches distance eps from 1."""
    return math.pi - 2.0 * math.sqrt(2.0 * epsilon)


def asymptote_angle(R: float) -> float:
    """Polar angle of the boundary-curve point at modulus R, for R -> infinity.

    The curve approaches the line Re w = Im w from below; the deficit is
    3 / (8 R^2) + O(R^-4).
    """
    return math.pi / 4.0 - 3.0 / (8.0 * R * R)
