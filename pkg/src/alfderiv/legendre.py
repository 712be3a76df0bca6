"""Associated Legendre functions P_nu^mu(z), Q_nu^mu(z) off the cut (-inf, 1].

Both are evaluated through Gauss hypergeometric functions in mpmath at
30 significant digits and returned as Python complex numbers:

* P_nu^mu(z) = [(z+1)/(z-1)]^(mu/2) 2F1(-nu, nu+1; 1-mu; (1-z)/2) / Gamma(1-mu),
  with the ratio read as (z+1)^(mu/2) (z-1)^(-mu/2);
* Q_nu^mu(z) = e^{i mu pi} sqrt(pi) Gamma(nu+mu+1) / (2^(nu+1) Gamma(nu+3/2))
  z^(-nu-mu-1) (z^2-1)^(mu/2) 2F1((nu+mu)/2+1, (nu+mu+1)/2; nu+3/2; 1/z^2).

The second form has no removable singularity at integer order, which is
where the order derivatives are needed.  mpmath continues 2F1 outside the
unit disc, so both forms cover the whole cut plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .errors import DomainError, PoleError
from .gamma import cospi, gamma, is_nonpositive_integer, recip_gamma, sinpi
from .kernel import half_power, require_cut_plane
from .whipple_map import f_map

__all__ = [
    "LegendreParams",
    "legendre_p",
    "legendre_q",
    "whipple_p_from_q",
    "whipple_q_from_p",
    "mapped_argument",
]

_DPS = 30


@dataclass(frozen=True)
class LegendreParams:
    degree: complex
    order: complex
    argument: complex

    def p(self) -> complex:
        return legendre_p(self.degree, self.order, self.argument)

    def q(self) -> complex:
        return legendre_q(self.degree, self.order, self.argument)


def _is_positive_integer(x: complex) -> int:
    """Return m if x is (numerically) a positive integer m, else 0."""
    if abs(x.imag) > 1e-14:
        return 0
    m = round(x.real)
    if m >= 1 and abs(x.real - m) <= 1e-14 * m:
        return m
    return 0


def _to_complex(v) -> complex:
    v = complex(v)
    if not (math.isfinite(v.real) and math.isfinite(v.imag)):
        raise DomainError("Legendre function value is not finite")
    return v


def legendre_p(nu, mu, z) -> complex:
    """P_nu^mu(z) for complex degree and order.

    Parameters
    ----------
    nu, mu : complex
        Degree and order.
    z : complex
        Point of the plane cut along (-inf, 1].

    Raises
    ------
    DomainError
        If z lies on the cut.

    Examples
    --------
    >>> legendre_p(1, 0, 2)
    (2+0j)
    """
    nu = complex(nu)
    mu = complex(mu)
    z = require_cut_plane(z)
    m = _is_positive_integer(mu)
    with mpmath.workdps(_DPS):
        zz = mpmath.mpc(z)
        x = (1 - zz) / 2
        if m:
            # 2F1(a, b; 1-m; x) / Gamma(1-m) = (a)_m (b)_m x^m / m! 2F1(a+m, b+m; m+1; x)
            a, b = -mpmath.mpc(nu), mpmath.mpc(nu) + 1
            reg = mpmath.rf(a, m) * mpmath.rf(b, m) * x**m / mpmath.factorial(m)
            reg *= mpmath.hyp2f1(a + m, b + m, m + 1, x)
            val = (zz + 1) ** (m / 2.0) * (zz - 1) ** (-m / 2.0) * reg
        else:

            def terms(nu_, mu_):
                return (([zz + 1, zz - 1], [mu_ / 2, -mu_ / 2], [], [1 - mu_],
                         [-nu_, nu_ + 1], [1 - mu_], x),)

            val = mpmath.hypercomb(terms, [mpmath.mpc(nu), mpmath.mpc(mu)])
    return _to_complex(val)


def legendre_q(nu, mu, z) -> complex:
    """Q_nu^mu(z), the Legendre function of the second kind.

    Raises
    ------
    DomainError
        If z lies on the cut.
    PoleError
        If nu + mu + 1 is a nonpositive integer, where Gamma(nu+mu+1) in
        the normalisation has a pole.

    Examples
    --------
    >>> round(legendre_q(0, 0, 2).real, 7)
    0.5493061
    """
    nu = complex(nu)
    mu = complex(mu)
    z = require_cut_plane(z)
    if is_nonpositive_integer(nu + mu + 1):
        raise PoleError(f"Q_nu^mu undefined: nu + mu + 1 = {nu + mu + 1} is a pole of Gamma", nu + mu + 1)
    with mpmath.workdps(_DPS):
        zz = mpmath.mpc(z)

        def terms(nu_, mu_):
            return (([mpmath.expjpi(mu_), 2, mpmath.pi, zz, zz - 1, zz + 1],
                     [1, -nu_ - 1, 0.5, -nu_ - mu_ - 1, mu_ / 2, mu_ / 2],
                     [nu_ + mu_ + 1], [nu_ + 1.5],
                     [(nu_ + mu_) / 2 + 1, (nu_ + mu_) / 2 + 0.5], [nu_ + 1.5], zz**-2),)

        val = mpmath.hypercomb(terms, [mpmath.mpc(nu), mpmath.mpc(mu)])
    return _to_complex(val)


def _expjpi(x: complex) -> complex:
    # e^{i pi x}
    return cospi(x) + 1j * sinpi(x)


def _require_right_half(z) -> complex:
    z = require_cut_plane(z)
    if not z.real > 0:
        raise DomainError(f"Whipple formulae need Re z > 0, got z = {z}")
    return z


def whipple_p_from_q(nu, mu, z) -> complex:
    """P_{-mu-1/2}^{-nu-1/2}(f(z)) from Q_nu^mu(z), f(z) = z / sqrt(z^2 - 1).

    Computes sqrt(2/pi) (z^2-1)^(1/4) e^{-i mu pi} Q_nu^mu(z) / Gamma(nu+mu+1).

    Raises
    ------
    DomainError
        If Re z <= 0.
    PoleError
        If nu + mu + 1 is a nonpositive integer.
    """
    nu = complex(nu)
    mu = complex(mu)
    z = _require_right_half(z)
    if is_nonpositive_integer(nu + mu + 1):
        raise PoleError(f"Gamma(nu+mu+1) has a pole at {nu + mu + 1}", nu + mu + 1)
    pref = math.sqrt(2.0 / math.pi) * half_power(z, 0.25) * _expjpi(-mu) * recip_gamma(nu + mu + 1)
    return pref * legendre_q(nu, mu, z)


def whipple_q_from_p(nu, mu, z) -> complex:
    """Q_{-mu-1/2}^{-nu-1/2}(f(z)) from P_nu^mu(z).

    Computes -i sqrt(pi/2) Gamma(-nu-mu) (z^2-1)^(1/4) e^{-i nu pi} P_nu^mu(z).

    Raises
    ------
    DomainError
        If Re z <= 0.
    PoleError
        If nu + mu is a nonnegative integer.
    """
    nu = complex(nu)
    mu = complex(mu)
    z = _require_right_half(z)
    g = gamma(-nu - mu)
    if g.at_pole:
        raise PoleError(f"Gamma(-nu-mu) has a pole at {-nu - mu}", -nu - mu)
    pref = -1j * math.sqrt(0.5 * math.pi) * g.value * half_power(z, 0.25) * _expjpi(-nu)
    return pref * legendre_p(nu, mu, z)


def mapped_argument(z) -> complex:
    """f(z) = z / sqrt(z^2 - 1), the argument on the left of both Whipple formulae."""
    return f_map(_require_right_half(z))

