"""Principal-branch primitives.

Every fractional power of ``z**2 - 1`` in the package is read as the product
``(z + 1)**a * (z - 1)**a`` of two principal powers.  This is *not* the
principal power of ``z**2 - 1``: the two differ by a phase for Re z < 0.
Arguments are Python/numpy complex numbers; ``arg`` is taken in (-pi, pi]
and a signed-zero imaginary part selects the side of a cut, so
``complex(0.5, -0.0)`` is the point 0.5 - i0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "CUT_TOL",
    "RegionVerdict",
    "sqrt_prod",
    "half_power",
    "classify_region",
    "distance_to_cut",
    "on_cut_minus_inf_1",
    "on_cut_pm1",
    "require_cut_plane",
]

#: points closer than this to a cut segment are treated as lying on it
CUT_TOL = 1e-13


def _prepare(z):
    arr = np.asarray(z, dtype=complex)
    if np.any((arr == 1) | (arr == -1)):
        raise DomainError("z = +1 and z = -1 are branch points")
    return arr


def _shift(arr, d):
    # arr + d without touching the imaginary part: complex + real turns an
    # imaginary -0.0 into +0.0 and so moves the point across a cut
    out = np.array(arr, dtype=complex, copy=True)
    out.real += d
    return out


def _out(arr, like):
    return complex(arr) if np.ndim(like) == 0 else arr


def sqrt_prod(z):
    """sqrt(z + 1) * sqrt(z - 1) with both square roots principal.

    >>> sqrt_prod(2)
    (1.7320508075688772+0j)
    """
    arr = _prepare(z)
    return _out(np.sqrt(_shift(arr, 1.0)) * np.sqrt(_shift(arr, -1.0)), z)


def half_power(z, alpha):
    """(z**2 - 1)**alpha read as (z + 1)**alpha * (z - 1)**alpha."""
    alpha = complex(alpha)
    if alpha == 0.5:
        return sqrt_prod(z)
    arr = _prepare(z)
    if alpha.imag == 0 and alpha.real == round(alpha.real):
        k = int(round(alpha.real))
        return _out(_shift(arr, 1.0) ** k * _shift(arr, -1.0) ** k, z)
    return _out(np.exp(alpha * (np.log(_shift(arr, 1.0)) + np.log(_shift(arr, -1.0)))), z)


def _dist_to_ray(z: complex, right: float) -> float:
    # distance from z to (-inf, right]
    if z.real <= right:
        return abs(z.imag)
    return math.hypot(z.real - right, z.imag)


def _dist_to_segment(z: complex) -> float:
    x = min(max(z.real, -1.0), 1.0)
    return math.hypot(z.real - x, z.imag)


def distance_to_cut(z) -> float:
    """Euclidean distance from z to the ray (-inf, 1]."""
    return _dist_to_ray(complex(z), 1.0)


def on_cut_minus_inf_1(z) -> bool:
    return distance_to_cut(z) <= CUT_TOL


def on_cut_pm1(z) -> bool:
    return _dist_to_segment(complex(z)) <= CUT_TOL


def require_cut_plane(z, what="z") -> complex:
    """Return z as complex, raising DomainError if it lies on (-inf, 1]."""
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"{what} = {z} is not finite")
    if on_cut_minus_inf_1(z):
        raise DomainError(f"{what} = {z} lies on the branch cut (-inf, 1]")
    return z


@dataclass(frozen=True)
class RegionVerdict:
    """Which convergence regions contain a point z.

    ``re_f_gt_one`` implies ``re_f_positive``, and so does
    ``in_cut_plane_pm1``.
    """

    in_cut_plane_minus_inf_1: bool
    in_cut_plane_pm1: bool
    re_f_positive: bool
    re_f_gt_one: bool
    distance_to_nearest_cut: float


def classify_region(z) -> RegionVerdict:
    """Evaluate the four region predicates at z.

    The real part of f(z) = z / (sqrt(z+1) sqrt(z-1)) is invariant under
    z -> -z and z -> conj(z), so it is computed at the quadrant-I
    representative of z.
    """
    from .whipple_map import f_map

    z = complex(z)
    plane_1 = not on_cut_minus_inf_1(z)
    plane_pm1 = not on_cut_pm1(z)
    if plane_pm1:
        folded = complex(abs(z.real), abs(z.imag))
        re_f = f_map(folded).real
        re_pos = re_f > 0
        re_gt1 = re_f > 1
    else:
        re_pos = re_gt1 = False
    return RegionVerdict(
        in_cut_plane_minus_inf_1=plane_1,
        in_cut_plane_pm1=plane_pm1,
        re_f_positive=bool(re_pos),
        re_f_gt_one=bool(re_gt1),
        distance_to_nearest_cut=distance_to_cut(z),
    )
