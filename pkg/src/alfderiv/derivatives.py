"""Closed-form parameter derivatives of P and Q, plus a finite-difference oracle.

All four closed forms use the degree parameterisation nu - 1/2, so for
example :func:`dq_dorder_at_int` returns d/dmu Q_{nu-1/2}^mu(z) at mu = +-m.

Pole handling
-------------
Several terms carry Gamma or digamma factors whose poles cancel between
terms.  When any constituent sits exactly on a pole, the formula is
evaluated at the continuous parameter shifted by +-delta and +-delta/2,
and the symmetric averages are Richardson-extrapolated.  If the
antisymmetric part grows as delta shrinks, the singularity is genuine and
:class:`~alfderiv.errors.PoleError` is raised.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

from .errors import DomainError, PoleError, StencilPoleError
from .gamma import digamma, gamma, is_nonpositive_integer, pochhammer, recip_gamma
from .kernel import RegionVerdict, classify_region, half_power, require_cut_plane
from .legendre import LegendreParams, legendre_p, legendre_q
from .whipple_map import f_map

__all__ = [
    "DerivativeResult",
    "dq_dorder_at_int",
    "dp_ddegree_at_halfint",
    "dq_ddegree_at_halfint",
    "dp_dorder_at_int",
    "fd_param_derivative",
]

# relative accuracy assumed for each gamma/digamma/Legendre evaluation
_CONSTITUENT_REL = 1e-13
_LIMIT_STEP = 1e-4


@dataclass(frozen=True)
class DerivativeResult:
    """Value plus provenance.

    ``method`` is one of "closed-form", "quadrature", "finite-difference".
    """

    value: complex
    method: str
    error_estimate: float
    region_checked: RegionVerdict


class _Terms:
    """Accumulates a sum and the magnitudes of its parts for error propagation."""

    def __init__(self):
        self.total = 0j
        self.scale = 0.0

    def add(self, v):
        v = complex(v)
        self.total += v
        self.scale += abs(v)

    def scaled(self, factor):
        self.total *= factor
        self.scale *= abs(factor)
        return self


def _gamma_or_pole(a):
    g = gamma(a)
    if g.at_pole:
        raise PoleError(f"Gamma has a pole at {complex(a)}", complex(a))
    return g.value


def _psi_or_pole(a):
    if is_nonpositive_integer(a):
        raise PoleError(f"digamma has a pole at {complex(a)}", complex(a))
    return digamma(a)


def _ratio(nu, m, sign):
    """Gamma(nu - m + 1/2) / Gamma(nu - sign m + 1/2) as a finite product."""
    if sign == 1:
        return 1.0 + 0j
    den = pochhammer(nu - m + 0.5, 2 * m)
    if den == 0:
        raise PoleError(f"Gamma(nu - m + 1/2) has a pole at {nu - m + 0.5}", nu - m + 0.5)
    return 1.0 / den


def _check_index(n, name):
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise DomainError(f"{name} must be a nonnegative integer, got {n!r}")
    return int(n)


def _check_sign(sign):
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign!r}")
    return sign


def _expjpi(x):
    return cmath.exp(1j * math.pi * x)


def _with_limit(raw, p0, region):
    """Evaluate raw(p) at p0, falling back to the symmetric limit path."""
    try:
        terms = raw(p0)
        err = _CONSTITUENT_REL * terms.scale
        return DerivativeResult(terms.total, "closed-form", err, region)
    except PoleError as first:
        pole = first
    # a power of two keeps p0 +- delta and every parameter derived from it
    # exact when p0 has few bits, as it does at the removable poles; a
    # rounding mismatch between cancelling pole terms costs eps / delta^2
    delta = 2.0 ** round(math.log2(_LIMIT_STEP * max(1.0, abs(p0))))

    def sym(d):
        a = raw(p0 + d)
        b = raw(p0 - d)
        return 0.5 * (a.total + b.total), abs(a.total - b.total), max(a.scale, b.scale)

    s1, d1, sc1 = sym(delta)
    s2, d2, sc2 = sym(0.5 * delta)
    grows = d2 > 0.75 * d1 and d2 > 1e-6 * max(1.0, abs(s2))
    drifts = abs(s2 - s1) > 1e-3 * max(1.0, abs(s2))
    if grows or drifts:
        raise PoleError(f"derivative is singular: {pole}", pole.argument) from pole
    value = (4.0 * s2 - s1) / 3.0
    err = abs(s2 - s1) / 3.0 + _CONSTITUENT_REL * max(sc1, sc2) * 2.0
    return DerivativeResult(value, "closed-form", err, region)


# ---------------------------------------------------------------------------
# order derivatives at integer order


def _dq_dorder_terms(nu, m, sign, z):
    a = nu - sign * m + 0.5
    t = _Terms()
    t.add((1j * math.pi + _psi_or_pole(a)) * legendre_q(nu - 0.5, m, z))
    fm = math.factorial(m)
    for k in range(m):
        coef = (-1.0) ** (k - m) / (math.factorial(k) * (m - k) * 2.0 ** (k - m + 1))
        t.add(sign * fm * coef * half_power(z, (k - m) / 2.0) * legendre_q(nu + k - m - 0.5, k, z))
    return t.scaled(_ratio(nu, m, sign))


def dq_dorder_at_int(nu, m: int, sign: int, z) -> DerivativeResult:
    """d/dmu Q_{nu-1/2}^mu(z) at mu = sign * m.

    Parameters
    ----------
    nu : complex
        Degree parameter; the function differentiated is Q_{nu-1/2}^mu.
    m : int
        Nonnegative integer order.
    sign : {+1, -1}
        Selects mu = +m or mu = -m.
    z : complex
        Point off the cut (-inf, 1].

    Returns
    -------
    DerivativeResult

    Raises
    ------
    PoleError
        If the derivative itself is singular at this point.
    DomainError
        If z lies on the cut.
    """
    nu = complex(nu)
    m = _check_index(m, "m")
    sign = _check_sign(sign)
    z = require_cut_plane(z)
    return _with_limit(lambda p: _dq_dorder_terms(p, m, sign, z), nu, classify_region(z))


def _dp_dorder_terms(nu, m, sign, z):
    a = nu - sign * m + 0.5
    t = _Terms()
    t.add(legendre_q(nu - 0.5, m, z))
    t.add(_psi_or_pole(a) * legendre_p(nu - 0.5, m, z))
    fm = math.factorial(m)
    for k in range(m):
        coef = (-1.0) ** (k - m) / (2.0 ** (k - m + 1) * math.factorial(k) * (m - k))
        t.add(sign * fm * coef * half_power(z, (k - m) / 2.0) * legendre_p(nu + k - m - 0.5, k, z))
    return t.scaled(_ratio(nu, m, sign))


def dp_dorder_at_int(nu, m: int, sign: int, z) -> DerivativeResult:
    """d/dmu P_{nu-1/2}^mu(z) at mu = sign * m.

    At m = 0 this is Q_{nu-1/2}(z) + psi(nu + 1/2) P_{nu-1/2}(z).
    """
    nu = complex(nu)
    m = _check_index(m, "m")
    sign = _check_sign(sign)
    z = require_cut_plane(z)
    return _with_limit(lambda p: _dp_dorder_terms(p, m, sign, z), nu, classify_region(z))


# ---------------------------------------------------------------------------
# degree derivatives at odd-half-integer degree


def _dp_ddegree_terms(n, sign, mu, z):
    t = _Terms()
    if n == 0:
        return t
    t.add((_psi_or_pole(mu + n + 0.5) - _psi_or_pole(mu - n + 0.5)) * legendre_p(n - 0.5, mu, z))
    g = _gamma_or_pole(mu - n + 0.5)
    fn = math.factorial(n)
    for k in range(n):
        coef = recip_gamma(mu + n - 2 * k + 0.5) / (math.factorial(k) * (n - k) * 2.0 ** (k - n + 1))
        if coef == 0:
            continue
        t.add(fn * g * coef * half_power(z, (n - k) / 2.0) * legendre_p(k - 0.5, mu + n - k, z))
    return t.scaled(sign)


def dp_ddegree_at_halfint(n: int, sign: int, mu, z) -> DerivativeResult:
    """d/dnu P_{nu-1/2}^mu(z) at nu = sign * n.

    P_{nu-1/2}^mu is even in nu, so the two signs differ by a sign and
    n = 0 gives exactly zero.
    """
    n = _check_index(n, "n")
    sign = _check_sign(sign)
    mu = complex(mu)
    z = require_cut_plane(z)
    return _with_limit(lambda p: _dp_ddegree_terms(n, sign, p, z), mu, classify_region(z))


def _dq_ddegree_terms(n, sign, mu, z):
    t = _Terms()
    g = _gamma_or_pole(mu - n + 0.5)
    if z.real > 0:
        first = -math.sqrt(0.5 * math.pi) * _expjpi(mu) * g * half_power(z, -0.25) * legendre_q(mu - 0.5, n, f_map(z))
    else:
        # Whipple-equivalent form of the mapped-argument term; it continues
        # analytically across Re z = 0 where f(z) approaches the cut
        g2 = _gamma_or_pole(mu + n + 0.5)
        first = -((-1.0) ** n) * 0.5 * math.pi * _expjpi(mu) * g * g2 * legendre_p(n - 0.5, -mu, z)
    t.add(first)
    fn = math.factorial(n)
    for k in range(n):
        coef = 1.0 / (2.0 ** (k - n + 1) * math.factorial(k) * (n - k))
        t.add(sign * fn * coef * half_power(z, (n - k) / 2.0) * legendre_q(k - 0.5, mu + k - n, z))
    return t


def dq_ddegree_at_halfint(n: int, sign: int, mu, z) -> DerivativeResult:
    """d/dnu Q_{nu-1/2}^mu(z) at nu = sign * n.

    The leading term involves Q_{mu-1/2}^n at f(z) = z / sqrt(z^2 - 1).
    For Re z <= 0 it is replaced by the equal expression
    -(-1)^n (pi/2) e^{i pi mu} Gamma(mu-n+1/2) Gamma(mu+n+1/2) P_{n-1/2}^{-mu}(z),
    which stays away from the cut of Q.

    Examples
    --------
    >>> r = dq_ddegree_at_halfint(0, 1, 0.0, 2.0)
    >>> abs(r.value - (-math.pi / math.sqrt(2) * 3 ** -0.25 * legendre_q(-0.5, 0, 4 / math.sqrt(12)))) < 1e-12
    True
    """
    n = _check_index(n, "n")
    sign = _check_sign(sign)
    mu = complex(mu)
    z = require_cut_plane(z)
    return _with_limit(lambda p: _dq_ddegree_terms(n, sign, p, z), mu, classify_region(z))


# ---------------------------------------------------------------------------
# finite-difference oracle


def _stencil_check(which, wrt, at: LegendreParams, h):
    if which != "Q":
        return
    # Q_nu^mu has poles where nu + mu + 1 is a nonpositive integer; the
    # stencil moves nu + mu + 1 along the real direction by up to h
    s = complex(at.degree) + complex(at.order) + 1.0
    if abs(s.imag) > 1e-14:
        return
    cand = min(0, round(s.real))
    if abs(s.real - cand) <= h * (1.0 + 1e-12):
        raise StencilPoleError(
            f"stencil of half-width {h:g} around {s} reaches the pole {cand} of Q", complex(cand)
        )


def fd_param_derivative(which: str, wrt: str, at: LegendreParams, h=None, target: float = 1e-7,
                        levels: int = 4, max_levels: int = 8) -> DerivativeResult:
    """Central-difference derivative of P or Q in degree or order.

    Richardson extrapolation over step halving, starting from
    ``h = 1e-3 * max(1, |parameter|)``, with at least ``levels`` rows.
    Refinement stops once the estimated error (last extrapolation change
    plus a round-off term) drops below ``target``, relative to
    max(1, |value|).

    Raises
    ------
    StencilPoleError
        If a stencil point would reach a pole of Q.

    Warns
    -----
    RuntimeWarning
        If ``target`` is not reached; the best estimate is still returned.
    """
    if which not in ("P", "Q"):
        raise DomainError("which must be 'P' or 'Q'")
    if wrt not in ("degree", "order"):
        raise DomainError("wrt must be 'degree' or 'order'")
    nu = complex(at.degree)
    mu = complex(at.order)
    z = require_cut_plane(at.argument)
    func = legendre_p if which == "P" else legendre_q
    p0 = nu if wrt == "degree" else mu
    if h is None:
        h = 1e-3 * max(1.0, abs(p0))
    _stencil_check(which, wrt, at, h)

    def evaluate(p):
        return func(p, mu, z) if wrt == "degree" else func(nu, p, z)

    f0 = abs(evaluate(p0))
    rows = []
    best, err = None, math.inf
    step = h
    for level in range(max_levels):
        d = (evaluate(p0 + step) - evaluate(p0 - step)) / (2.0 * step)
        row = [d]
        for j in range(1, level + 1):
            fac = 4.0**j
            row.append((fac * row[j - 1] - rows[-1][j - 1]) / (fac - 1.0))
        if rows:
            change = abs(row[-1] - rows[-1][-1])
            roundoff = 10.0 * _CONSTITUENT_REL * max(f0, 1e-300) / step
            cand_err = change + roundoff
            if cand_err < err:
                best, err = row[-1], cand_err
        rows.append(row)
        if level + 1 >= levels and err < target * max(1.0, abs(best)):
            break
        step *= 0.5
    else:
        warnings.warn(
            f"finite difference reached error {err:.3g} > target {target:g}", RuntimeWarning, stacklevel=2
        )
    return DerivativeResult(best, "finite-difference", err, classify_region(z))
