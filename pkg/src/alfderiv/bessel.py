"""Modified Bessel functions I_nu(t), K_nu(t) for real t > 0 and complex order.

The order is a complex scalar; ``t`` may be a scalar or a numpy array.
Scalar ``t`` gives a Python complex back, array ``t`` a complex array.

Methods
-------
I_nu
    Power series below ``t = max(25, 1.5 |nu|^2)``, Hankel asymptotic
    expansion above.
K_nu
    * ``series``: (pi/2)(I_{-nu} - I_nu) / sin(pi nu) for t <= 2 when nu is
      at least 0.1 away from an integer;
    * ``integer-limit``: Temme's series for t <= 2 near integer order,
      followed by forward recurrence;
    * ``integral``: trapezoid rule on e^t K_nu(t) = int_0^inf
      exp(-t (cosh s - 1)) cosh(nu s) ds for 2 < t below the asymptotic
      threshold;
    * ``asymptotic``: Hankel expansion.

The combination formula is not used for large t because I_{-nu} and I_nu
agree there to about 2t/ln(10) digits.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .gamma import recip_gamma, sinpi

__all__ = [
    "BesselEval",
    "bessel_i",
    "bessel_k",
    "bessel_i_scaled",
    "bessel_k_scaled",
    "evaluate_i",
    "evaluate_k",
    "dk_dorder_at_int",
    "di_dorder_at_int",
    "di_dorder_integral",
    "NU_MIN",
]

_EPS = 1e-17
_SMALL_T = 2.0
_NEAR_INT = 0.1
_TRAP_H = 0.1
#: smallest order accepted by :func:`di_dorder_integral`
NU_MIN = 1e-3


@dataclass(frozen=True)
class BesselEval:
    order: complex
    argument: float
    value: complex
    method: str


def _asymptotic_threshold(nu: complex) -> float:
    return max(25.0, 1.5 * abs(nu) ** 2)


def _prepare(t):
    arr = np.atleast_1d(np.asarray(t, dtype=float))
    if not np.all(arr > 0):
        raise DomainError("Bessel argument t must be strictly positive")
    return arr


def _finish(out, t):
    return complex(out[0]) if np.ndim(t) == 0 else out


# ---------------------------------------------------------------------------
# I_nu


def _i_series_scaled(nu: complex, t: np.ndarray) -> np.ndarray:
    """e^{-t} I_nu(t) by direct summation of the power series."""
    half = 0.5 * t
    logh = np.log(half)
    # 1/Gamma(nu + m + 1) for m <= m0 by backward recurrence from a point
    # where the argument has positive real part; this keeps the exact zeros
    # of 1/Gamma at negative integer orders
    m0 = max(0, math.ceil(-nu.real))
    rg = [0j] * (m0 + 1)
    rg[m0] = recip_gamma(nu + m0 + 1)
    for m in range(m0 - 1, -1, -1):
        rg[m] = rg[m + 1] * (nu + m + 1)
    total = np.zeros(t.shape, dtype=complex)
    for m in range(m0):
        if rg[m] != 0:
            total += rg[m] * np.exp((nu + 2 * m) * logh - t - math.lgamma(m + 1))
    term = rg[m0] * np.exp((nu + 2 * m0) * logh - t - math.lgamma(m0 + 1))
    m = m0
    tmax = float(half.max())
    while True:
        total += term
        m += 1
        term = term * (half * half) / (m * (nu + m))
        if m > tmax and np.all(np.abs(term) <= _EPS * np.abs(total)):
            break
        if m > 100000:
            raise ConvergenceError("I_nu power series did not converge")
    return total


def _hankel_sum(nu: complex, t: np.ndarray, alternating: bool) -> np.ndarray:
    mu4 = 4.0 * nu * nu
    total = np.ones(t.shape, dtype=complex)
    term = np.ones(t.shape, dtype=complex)
    active = np.ones(t.shape, dtype=bool)
    sign = -1.0 if alternating else 1.0
    for k in range(1, 80):
        new = term * sign * (mu4 - (2 * k - 1) ** 2) / (8.0 * k * t)
        grow = np.abs(new) > np.abs(term)
        if k > abs(nu):
            active &= ~grow
        term = np.where(active, new, 0)
        total += term
        if not np.any(active & (np.abs(term) > _EPS * np.abs(total))):
            break
    return total


def _i_asymptotic_scaled(nu: complex, t: np.ndarray) -> np.ndarray:
    return _hankel_sum(nu, t, alternating=True) / np.sqrt(2.0 * math.pi * t)


def _i_scaled(nu: complex, arr: np.ndarray) -> np.ndarray:
    if nu.imag == 0 and nu.real < 0 and nu.real == round(nu.real):
        nu = -nu  # I_{-n} = I_n
    out = np.empty(arr.shape, dtype=complex)
    big = arr > _asymptotic_threshold(nu)
    if np.any(big):
        out[big] = _i_asymptotic_scaled(nu, arr[big])
    if np.any(~big):
        out[~big] = _i_series_scaled(nu, arr[~big])
    return out


def bessel_i_scaled(nu, t):
    """e^{-t} I_nu(t)."""
    nu = complex(nu)
    arr = _prepare(t)
    return _finish(_i_scaled(nu, arr), t)


def bessel_i(nu, t):
    """Modified Bessel function of the first kind.

    Parameters
    ----------
    nu : complex
        Order, any complex number.
    t : float or ndarray
        Positive real argument.

    Returns
    -------
    complex or ndarray
        I_nu(t).  Values beyond the double range come back as ``inf``
        with an ``OverflowWarning``-free numpy overflow.

    Examples
    --------
    >>> round(bessel_i(0, 1.0).real, 7)
    1.2660659
    """
    nu = complex(nu)
    arr = _prepare(t)
    with np.errstate(over="ignore"):
        out = _i_scaled(nu, arr) * np.exp(arr)
    return _finish(out, t)


# ---------------------------------------------------------------------------
# K_nu


@functools.lru_cache(maxsize=None)
def _rgamma1p_coefficients():
    # Taylor coefficients of 1/Gamma(1 + x) about x = 0
    import mpmath

    with mpmath.workdps(40):
        coeffs = mpmath.taylor(lambda x: mpmath.rgamma(1 + x), 0, 30)
    return tuple(float(c) for c in coeffs)


def _rgamma1p(x: complex) -> complex:
    c = _rgamma1p_coefficients()
    acc = 0j
    for a in reversed(c):
        acc = acc * x + a
    return acc


def _gam1_gam2(mu: complex):
    """Temme's gamma_1, gamma_2 and 1/Gamma(1 +- mu) for |mu| <= 1/2."""
    c = _rgamma1p_coefficients()
    # gamma_1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu) = -sum of odd terms
    odd = 0j
    mu2 = mu * mu
    for k in range(len(c) - 1 if (len(c) - 1) % 2 else len(c) - 2, 0, -2):
        odd = odd * mu2 + c[k]
    gam1 = -odd
    gampl = _rgamma1p(mu)
    gammi = _rgamma1p(-mu)
    gam2 = 0.5 * (gammi + gampl)
    return gam1, gam2, gampl, gammi


def _k_temme(nu: complex, t: np.ndarray):
    """K_nu(t), K_{nu+1}(t) at order nu = mu, |mu| <= 1/2, for t <= 2."""
    mu = nu
    x = t
    x2 = 0.5 * x
    pimu = math.pi * mu
    fact = 1.0 if mu == 0 else pimu / sinpi(mu)
    d = -np.log(x2)
    e = mu * d
    small = np.abs(e) < 1e-4
    with np.errstate(invalid="ignore", divide="ignore"):
        fact2 = np.where(small, 1.0 + e * e / 6.0, np.sinh(e) / np.where(small, 1.0, e))
    gam1, gam2, gampl, gammi = _gam1_gam2(mu)
    ff = fact * (gam1 * np.cosh(e) + gam2 * fact2 * d)
    s = ff.copy()
    e_exp = np.exp(e)
    p = 0.5 * e_exp / gampl
    q = 0.5 / (e_exp * gammi)
    c = np.ones(x.shape, dtype=complex)
    d2 = x2 * x2
    s1 = p.copy()
    for i in range(1, 500):
        ff = (i * ff + p + q) / (i * i - mu * mu)
        c = c * d2 / i
        p = p / (i - mu)
        q = q / (i + mu)
        delta = c * ff
        s = s + delta
        delta1 = c * (p - i * ff)
        s1 = s1 + delta1
        if np.all(np.abs(delta) <= _EPS * np.abs(s)) and np.all(np.abs(delta1) <= _EPS * np.abs(s1)):
            break
    else:
        raise ConvergenceError("Temme series for K_nu did not converge")
    return s, s1 * (2.0 / x)


def _k_integer_limit(nu: complex, t: np.ndarray) -> np.ndarray:
    n = round(nu.real)
    mu = nu - n
    k0, k1 = _k_temme(mu, t)
    with np.errstate(over="ignore", invalid="ignore"):
        for j in range(n):
            k0, k1 = k1, k0 + 2.0 * (mu + j + 1) / t * k1
    return k0


def _k_series(nu: complex, t: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        e = np.exp(t)
        diff = _i_series_scaled(-nu, t) - _i_series_scaled(nu, t)
        return 0.5 * math.pi * diff * e / sinpi(nu)


def _k_integral_scaled(nu: complex, t: np.ndarray) -> np.ndarray:
    # the integrand is below e^-45 of its peak once t (cosh s - 1) - |Re nu| s > 45
    tmin = float(t.min())
    a = abs(nu.real)
    smax = 1.0
    while tmin * (math.cosh(smax) - 1.0) - a * smax < 45.0 + a * math.asinh(a / tmin):
        smax += 0.5
    # the peak at s = 0 has width ~ t^(-1/2); the step must resolve it
    h = min(_TRAP_H, 0.4 / math.sqrt(float(t.max())))
    s = np.arange(0.0, smax + h, h)
    w = np.full(s.shape, h)
    w[0] *= 0.5
    ch = np.cosh(nu * s) * w
    expo = np.exp(-np.outer(t, np.cosh(s) - 1.0))
    return expo @ ch


def _k_asymptotic_scaled(nu: complex, t: np.ndarray) -> np.ndarray:
    return _hankel_sum(nu, t, alternating=False) * np.sqrt(0.5 * math.pi / t)


def _near_integer(nu: complex) -> bool:
    return abs(nu - round(nu.real)) < _NEAR_INT


def _k_method(nu: complex, t: float) -> str:
    if t > _asymptotic_threshold(nu):
        return "asymptotic"
    if t > _SMALL_T:
        return "integral"
    return "integer-limit" if _near_integer(nu) else "series"


def _k_scaled(nu: complex, arr: np.ndarray) -> np.ndarray:
    if nu.real < 0:
        nu = -nu
    out = np.empty(arr.shape, dtype=complex)
    big = arr > _asymptotic_threshold(nu)
    small = arr <= _SMALL_T
    mid = ~big & ~small
    if np.any(big):
        out[big] = _k_asymptotic_scaled(nu, arr[big])
    if np.any(mid):
        out[mid] = _k_integral_scaled(nu, arr[mid])
    if np.any(small):
        ts = arr[small]
        if _near_integer(nu):
            raw = _k_integer_limit(nu, ts)
        else:
            raw = _k_series(nu, ts)
        with np.errstate(over="ignore", invalid="ignore"):
            out[small] = raw * np.exp(ts)
    return out


def bessel_k_scaled(nu, t):
    """e^{t} K_nu(t)."""
    nu = complex(nu)
    arr = _prepare(t)
    return _finish(_k_scaled(nu, arr), t)


def bessel_k(nu, t):
    """Modified Bessel function of the second kind, K_nu(t) = K_{-nu}(t).

    >>> round(bessel_k(0, 1.0).real, 7)
    0.4210244
    """
    nu = complex(nu)
    arr = _prepare(t)
    if nu.real < 0:
        nu = -nu
    small = arr <= _SMALL_T
    out = np.empty(arr.shape, dtype=complex)
    if np.any(small):
        ts = arr[small]
        out[small] = _k_integer_limit(nu, ts) if _near_integer(nu) else _k_series(nu, ts)
    if np.any(~small):
        out[~small] = _k_scaled(nu, arr[~small]) * np.exp(-arr[~small])
    return _finish(out, t)


def evaluate_i(nu, t: float) -> BesselEval:
    nu = complex(nu)
    t = float(t)
    method = "asymptotic" if t > _asymptotic_threshold(nu) else "series"
    return BesselEval(nu, t, bessel_i(nu, t), method)


def evaluate_k(nu, t: float) -> BesselEval:
    nu = complex(nu)
    t = float(t)
    key = -nu if nu.real < 0 else nu
    return BesselEval(nu, t, bessel_k(nu, t), _k_method(key, t))


# ---------------------------------------------------------------------------
# order derivatives at integer order


def _check_int(n, name):
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise DomainError(f"{name} must be a nonnegative integer, got {n!r}")
    return int(n)


def _check_sign(sign):
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign!r}")
    return sign


def dk_dorder_at_int(m: int, sign: int, t):
    """d K_mu(t) / d mu at mu = sign * m.

    The derivative is odd in mu, so the two signs differ only in sign, and
    it vanishes at m = 0.
    """
    m = _check_int(m, "m")
    sign = _check_sign(sign)
    arr = _prepare(t)
    acc = np.zeros(arr.shape)
    for k in range(m):
        coef = 2.0 ** (m - 1 - k) / (math.factorial(k) * (m - k))
        acc += coef * arr ** (k - m) * bessel_k(k, arr).real
    out = sign * math.factorial(m) * acc
    return float(out[0]) if np.ndim(t) == 0 else out


def di_dorder_at_int(n: int, sign: int, t):
    """d I_nu(t) / d nu at nu = sign * n.

    >>> abs(di_dorder_at_int(0, 1, 1.0) + bessel_k(0, 1.0).real) < 1e-15
    True
    """
    n = _check_int(n, "n")
    sign = _check_sign(sign)
    arr = _prepare(t)
    acc = np.zeros(arr.shape)
    for k in range(n):
        coef = (-1.0) ** (k - n) / (math.factorial(k) * (n - k))
        acc += coef * arr ** (k - n) / 2.0 ** (k - n + 1) * bessel_i(k, arr).real
    out = (-1.0) ** (n + 1) * bessel_k(n, arr).real + sign * math.factorial(n) * acc
    return float(out[0]) if np.ndim(t) == 0 else out


def di_dorder_integral(nu: float, t: float, tol: float = 1e-12) -> float:
    """d I_nu(t) / d nu as -nu * int_0^t K_0(t - x) I_nu(x) / x dx.

    A finite-interval double-exponential rule handles the x^(nu-1)
    singularity at 0 and the logarithmic one at x = t.

    Raises
    ------
    DomainError
        If ``nu < NU_MIN`` or ``t <= 0``.
    ConvergenceError
        If the quadrature misses ``tol``; ``partial`` holds the result.
    """
    from .quadrature import integrate_finite

    nu = float(nu)
    t = float(t)
    if not nu >= NU_MIN:
        raise DomainError(f"di_dorder_integral needs nu >= {NU_MIN}, got {nu}")
    if not t > 0:
        raise DomainError("Bessel argument t must be strictly positive")

    def integrand(x, comp):
        return (bessel_k(0, comp) * bessel_i(nu, x)).real / x

    res = integrate_finite(integrand, 0.0, t, endpoint_singularity="both", tol=tol)
    return -nu * res.value.real
