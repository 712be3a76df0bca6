"""Laplace-integral representations of P and Q with modified Bessel kernels.

Each function returns the Legendre function computed by quadrature, as a
:class:`~alfderiv.derivatives.DerivativeResult` with method "quadrature".
Convergence inequalities are strict; a point on a boundary is rejected
with a :class:`~alfderiv.errors.ConstraintError` naming the inequality.
"""

from __future__ import annotations

import cmath
import math

from .derivatives import DerivativeResult
from .errors import ConstraintError, DomainError, RegionError
from .gamma import recip_gamma, sinpi
from .kernel import classify_region, half_power, on_cut_pm1, require_cut_plane
from .legendre import legendre_q
from .quadrature import IntegrandSpec, laplace_bessel_integral
from .whipple_map import f_map, special_points

__all__ = [
    "q_via_k_integral",
    "p_via_k_integral",
    "q_via_i_integral",
    "p_via_i_integral",
]


def _expjpi(x):
    return cmath.exp(1j * math.pi * x)


def _off_segment(z) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"z = {z} is not finite")
    if on_cut_pm1(z):
        raise DomainError(f"z = {z} lies on [-1, 1]")
    return z


def _result(pref, quad, region, extra=0j, extra_err=0.0):
    value = pref * quad.value + extra
    err = abs(pref) * quad.abs_error_estimate + extra_err
    return DerivativeResult(value, "quadrature", err, region)


def q_via_k_integral(nu, mu, z, tol=None) -> DerivativeResult:
    """Q_{nu-1/2}^mu(z) from a K_mu Laplace integral.

    Q_{nu-1/2}^mu(z) = (z^2-1)^(-nu/2-1/4) e^{i pi mu} / Gamma(nu-mu+1/2)
    * int_0^inf exp(-f(z) t) K_mu(t) t^(nu-1/2) dt,  f(z) = z / sqrt(z^2-1).

    Valid for z off [-1, 1] and Re nu > |Re mu| - 1/2; Re f(z) > 0 holds
    automatically there.
    """
    nu = complex(nu)
    mu = complex(mu)
    z = _off_segment(z)
    if not nu.real > abs(mu.real) - 0.5:
        raise ConstraintError(
            f"K-integral for Q diverges at t = 0: Re nu = {nu.real:g}, |Re mu| - 1/2 = {abs(mu.real) - 0.5:g}",
            "Re nu > |Re mu| - 1/2",
        )
    spec = IntegrandSpec("K", mu, nu - 0.5, f_map(z))
    quad = laplace_bessel_integral(spec, tol=tol)
    pref = half_power(z, -nu / 2 - 0.25) * _expjpi(mu) * recip_gamma(nu - mu + 0.5)
    return _result(pref, quad, classify_region(z))


def p_via_k_integral(nu, mu, z, tol=None) -> DerivativeResult:
    """P_{nu-1/2}^{-mu}(z) from a K_nu Laplace integral.

    P_{nu-1/2}^{-mu}(z) = sqrt(2/pi) (z^2-1)^(mu/2)
    / (Gamma(mu-nu+1/2) Gamma(mu+nu+1/2)) * int_0^inf e^{-z t} K_nu(t) t^(mu-1/2) dt.

    Needs Re z > -1 and Re mu > |Re nu| - 1/2, with z off the cut (-inf, 1].
    """
    nu = complex(nu)
    mu = complex(mu)
    z = require_cut_plane(z)
    if not z.real > -1:
        raise ConstraintError(f"K-integral for P diverges at infinity: Re z = {z.real:g}", "Re z > -1")
    if not mu.real > abs(nu.real) - 0.5:
        raise ConstraintError(
            f"K-integral for P diverges at t = 0: Re mu = {mu.real:g}, |Re nu| - 1/2 = {abs(nu.real) - 0.5:g}",
            "Re mu > |Re nu| - 1/2",
        )
    spec = IntegrandSpec("K", nu, mu - 0.5, z)
    quad = laplace_bessel_integral(spec, tol=tol)
    pref = (math.sqrt(2.0 / math.pi) * half_power(z, mu / 2)
            * recip_gamma(mu - nu + 0.5) * recip_gamma(mu + nu + 0.5))
    return _result(pref, quad, classify_region(z))


def q_via_i_integral(nu, mu, z, tol=None) -> DerivativeResult:
    """Q_{nu-1/2}^mu(z) from an I_nu Laplace integral.

    Q_{nu-1/2}^mu(z) = sqrt(pi/2) e^{i pi mu} (z^2-1)^(mu/2)
    * int_0^inf e^{-z t} t^(mu-1/2) I_nu(t) dt,  for Re z > 1, Re mu > -Re nu - 1/2.
    """
    nu = complex(nu)
    mu = complex(mu)
    z = complex(z)
    if not z.real > 1:
        raise ConstraintError(f"I-integral for Q diverges at infinity: Re z = {z.real:g}", "Re z > 1")
    if not mu.real > -nu.real - 0.5:
        raise ConstraintError(
            f"I-integral for Q diverges at t = 0: Re mu = {mu.real:g}, -Re nu - 1/2 = {-nu.real - 0.5:g}",
            "Re mu > -Re nu - 1/2",
        )
    spec = IntegrandSpec("I", nu, mu - 0.5, z)
    quad = laplace_bessel_integral(spec, tol=tol)
    pref = math.sqrt(0.5 * math.pi) * _expjpi(mu) * half_power(z, mu / 2)
    return _result(pref, quad, classify_region(z))


def p_via_i_integral(nu, mu, z, tol=None) -> DerivativeResult:
    """P_{nu-1/2}^mu(z) from an I_mu Laplace integral plus a Q correction.

    P_{nu-1/2}^mu(z) = (2/pi) e^{-i mu pi} sin(mu pi) Q_{nu-1/2}^mu(z)
    + (z^2-1)^(-nu/2-1/4) / Gamma(nu-mu+1/2)
    * int_0^inf exp(-f(z) t) I_mu(t) t^(nu-1/2) dt.

    The integral converges only where Re f(z) > 1.  In the first quadrant
    that region lies to the right of the curve f(1 - i t); its leftmost
    point is B and it crosses Re w = 1 at C (see
    :func:`~alfderiv.whipple_map.special_points`).

    Raises
    ------
    RegionError
        If Re f(z) <= 1.
    ConstraintError
        If Re nu <= -Re mu - 1/2.
    """
    nu = complex(nu)
    mu = complex(mu)
    z = require_cut_plane(z)
    region = classify_region(z)
    if not region.re_f_gt_one:
        sp = special_points()
        raise RegionError(
            f"I-integral for P needs Re f(z) > 1; z = {z} lies outside the region bounded by "
            f"the curve through B = {sp.B[0]:.6f}+{sp.B[1]:.6f}i and C = 1+{sp.C[1]:.6f}i",
            "Re f(z) > 1",
        )
    if not nu.real > -mu.real - 0.5:
        raise ConstraintError(
            f"I-integral for P diverges at t = 0: Re nu = {nu.real:g}, -Re mu - 1/2 = {-mu.real - 0.5:g}",
            "Re nu > -Re mu - 1/2",
        )
    spec = IntegrandSpec("I", mu, nu - 0.5, f_map(z))
    quad = laplace_bessel_integral(spec, tol=tol)
    pref = half_power(z, -nu / 2 - 0.25) * recip_gamma(nu - mu + 0.5)
    s = sinpi(mu)
    extra = 0j
    extra_err = 0.0
    if s != 0:
        extra = 2.0 / math.pi * _expjpi(-mu) * s * legendre_q(nu - 0.5, mu, z)
        extra_err = 1e-13 * abs(extra)
    return _result(pref, quad, region, extra, extra_err)
