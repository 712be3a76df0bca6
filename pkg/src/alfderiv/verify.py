"""Seeded verification sweeps over the identities the library implements.

Each suite draws ``samples`` cases from ``numpy.random.default_rng(seed)``
and compares two independent evaluation paths.  A case whose parameters
land on a pole is counted in ``skipped_poles`` instead of failing.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import derivatives as D
from . import representations as R
from .errors import ConvergenceError, PoleError
from .legendre import LegendreParams, legendre_p, legendre_q, mapped_argument, whipple_p_from_q, whipple_q_from_p
from .whipple_map import f_map, w_map

__all__ = ["VerifyReport", "run_suite", "SUITES", "DEFAULT_TOL"]

log = logging.getLogger(__name__)

DEFAULT_TOL = {"whipple": 1e-9, "integrals": 1e-8, "derivatives": 1e-5, "map": 1e-11}
SUITES = ("whipple", "integrals", "derivatives", "map", "all")


@dataclass
class VerifyReport:
    suite: str
    cases_run: int = 0
    cases_passed: int = 0
    failures: int = 0
    worst_relative_error: float = 0.0
    skipped_poles: int = 0
    elapsed: float = 0.0
    parts: list = field(default_factory=list)

    def record(self, rel_err, tol):
        self.cases_run += 1
        if rel_err <= tol:
            self.cases_passed += 1
        else:
            self.failures += 1
        if math.isfinite(rel_err):
            self.worst_relative_error = max(self.worst_relative_error, rel_err)
        else:
            self.worst_relative_error = math.inf

    def skip(self):
        self.cases_run += 1
        self.skipped_poles += 1

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def to_dict(self, timing=False):
        d = asdict(self)
        d["parts"] = [p.to_dict(timing) for p in self.parts]
        if not d["parts"]:
            del d["parts"]
        if not timing:
            del d["elapsed"]
        return d


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def _cplx(rng, lo, hi, im):
    return complex(rng.uniform(lo, hi), rng.uniform(-im, im))


def _whipple(n, tol, rng):
    rep = VerifyReport("whipple")
    for _ in range(n):
        nu = _cplx(rng, -2, 2, 1)
        mu = _cplx(rng, -2, 2, 1)
        z = complex(rng.uniform(0.05, 4), rng.uniform(-4, 4))
        try:
            fz = mapped_argument(z)
            e1 = _rel(whipple_p_from_q(nu, mu, z), legendre_p(-mu - 0.5, -nu - 0.5, fz))
            e2 = _rel(whipple_q_from_p(nu, mu, z), legendre_q(-mu - 0.5, -nu - 0.5, fz))
        except PoleError:
            rep.skip()
            continue
        rep.record(max(e1, e2), tol)
    return rep


def _random_rep_case(rng, which):
    """Parameters strictly inside the validity region of representation ``which``."""
    if which == "q_via_k":
        mu = _cplx(rng, -2, 2, 1)
        nu = complex(abs(mu.real) - 0.5 + rng.uniform(0.05, 2.5), rng.uniform(-1, 1))
        z = _cplx(rng, -3, 3, 3)
        while abs(z.imag) < 1e-3:
            z = _cplx(rng, -3, 3, 3)
        return nu, mu, z, lambda: legendre_q(nu - 0.5, mu, z)
    if which == "p_via_k":
        nu = _cplx(rng, -2, 2, 1)
        mu = complex(abs(nu.real) - 0.5 + rng.uniform(0.05, 2.5), rng.uniform(-1, 1))
        z = complex(rng.uniform(-0.9, 4), rng.choice([-1, 1]) * rng.uniform(0.01, 3))
        return nu, mu, z, lambda: legendre_p(nu - 0.5, -mu, z)
    if which == "q_via_i":
        nu = _cplx(rng, -2, 2, 1)
        mu = complex(-nu.real - 0.5 + rng.uniform(0.05, 2.5), rng.uniform(-1, 1))
        z = _cplx(rng, 1.05, 4, 3)
        return nu, mu, z, lambda: legendre_q(nu - 0.5, mu, z)
    mu = _cplx(rng, -2, 2, 1)
    nu = complex(-mu.real - 0.5 + rng.uniform(0.05, 2.5), rng.uniform(-1, 1))
    # the same 0.05 margin as the parameters: the exponential decay rate of
    # this integrand is Re f(z) - 1, which vanishes on the boundary curve
    z = _cplx(rng, 1.0, 4, 3)
    while not f_map(z).real > 1.05:
        z = _cplx(rng, 1.0, 4, 3)
    return nu, mu, z, lambda: legendre_p(nu - 0.5, mu, z)


_REPS = {
    "q_via_k": R.q_via_k_integral,
    "p_via_k": R.p_via_k_integral,
    "q_via_i": R.q_via_i_integral,
    "p_via_i": R.p_via_i_integral,
}


def _integrals(n, tol, rng):
    rep = VerifyReport("integrals")
    names = list(_REPS)
    for i in range(n):
        which = names[i % len(names)]
        nu, mu, z, direct = _random_rep_case(rng, which)
        try:
            got = _REPS[which](nu, mu, z).value
            rep.record(_rel(got, direct()), tol)
        except PoleError:
            rep.skip()
        except ConvergenceError:
            rep.record(math.inf, tol)
    return rep


_ZS = (1.2, 2.0, 5.0, 2 + 3j, 0.5 + 2j, -0.3 + 1.5j)
_PARAMS = (0.0, 0.25, 1.0, 7.0 / 3.0)


def derivative_case(kind, idx, sign, param, z):
    """Closed form and finite-difference oracle for one grid point."""
    if kind == "dq_dorder":
        cf = D.dq_dorder_at_int(param, idx, sign, z)
        at, which, wrt = LegendreParams(param - 0.5, sign * idx, z), "Q", "order"
    elif kind == "dp_dorder":
        cf = D.dp_dorder_at_int(param, idx, sign, z)
        at, which, wrt = LegendreParams(param - 0.5, sign * idx, z), "P", "order"
    elif kind == "dp_ddegree":
        cf = D.dp_ddegree_at_halfint(idx, sign, param, z)
        at, which, wrt = LegendreParams(sign * idx - 0.5, param, z), "P", "degree"
    else:
        cf = D.dq_ddegree_at_halfint(idx, sign, param, z)
        at, which, wrt = LegendreParams(sign * idx - 0.5, param, z), "Q", "degree"
    oracle = D.fd_param_derivative(which, wrt, at)
    return cf, oracle


DERIVATIVE_KINDS = ("dq_dorder", "dp_ddegree", "dq_ddegree", "dp_dorder")


def derivative_gap(cf, oracle):
    """Relative gap and the tolerance-adjusting oracle error, relative."""
    scale = max(abs(oracle.value), 1e-300)
    return abs(cf.value - oracle.value) / scale, 3.0 * oracle.error_estimate / scale


def _derivatives(n, tol, rng):
    rep = VerifyReport("derivatives")
    for _ in range(n):
        kind = DERIVATIVE_KINDS[int(rng.integers(4))]
        idx = int(rng.integers(4))
        sign = int(rng.choice([1, -1]))
        param = float(rng.choice(_PARAMS)) if rng.random() < 0.5 else float(rng.uniform(-1, 3))
        z = _ZS[int(rng.integers(len(_ZS)))] if rng.random() < 0.5 else _cplx(rng, -3, 4, 3)
        if abs(complex(z).imag) < 1e-3 and complex(z).real <= 1:
            z = complex(z) + 1j
        try:
            cf, oracle = derivative_case(kind, idx, sign, param, z)
        except PoleError:
            rep.skip()
            continue
        gap, oerr = derivative_gap(cf, oracle)
        rep.record(gap, max(tol, oerr))
    return rep


def _sample_off_segment(rng, n):
    # a mix of wide samples and points within 1e-6 of [-1, 1]
    x = rng.uniform(-5, 5, n)
    y = rng.uniform(-5, 5, n)
    near = rng.random(n) < 0.2
    y[near] = rng.choice([-1.0, 1.0], near.sum()) * rng.uniform(1e-9, 1e-6, near.sum())
    x[near] = rng.uniform(-1.2, 1.2, near.sum())
    return x + 1j * y


def _map(n, tol, rng):
    rep = VerifyReport("map")
    if n == 0:
        return rep
    z = _sample_off_segment(rng, n)
    f = f_map(z)
    fneg = f_map(-z)
    even = np.abs(fneg - f) / np.abs(f)
    for e, re in zip(even, f.real):
        # evenness to 1e-13 and Re f > 0 are exact properties: either holds or fails
        rep.record(0.0 if (e <= 1e-13 and re > 0) else math.inf, tol)
    q1 = rng.uniform(1e-6, 5, (2, n))
    fq = f_map(q1[0] + 1j * q1[1])
    for v in fq:
        rep.record(0.0 if (v.real > 0 and v.imag <= 0) else math.inf, tol)
    s = rng.uniform(-5, 5, n) + 1j * rng.uniform(-math.pi + 1e-3, math.pi - 1e-3, n)
    s[np.abs(s.real) < 1e-6] += 0.1
    ww = w_map(w_map(s))
    for a, b in zip(ww, s):
        rep.record(_rel(a, b), tol)
    return rep


_RUNNERS = {"whipple": _whipple, "integrals": _integrals, "derivatives": _derivatives, "map": _map}


def run_suite(suite: str, samples: int = 100, tol=None, seed: int = 0) -> VerifyReport:
    """Run one suite, or every suite for ``suite="all"``.

    ``tol`` overrides the per-suite default in :data:`DEFAULT_TOL`.
    """
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")
    if samples < 0:
        raise ValueError("samples must be nonnegative")
    log.info("verify suite=%s samples=%d seed=%d", suite, samples, seed)
    start = time.perf_counter()
    if suite == "all":
        total = VerifyReport("all")
        for name in _RUNNERS:
            part = run_suite(name, samples, tol, seed)
            total.parts.append(part)
            total.cases_run += part.cases_run
            total.cases_passed += part.cases_passed
            total.failures += part.failures
            total.skipped_poles += part.skipped_poles
            total.worst_relative_error = max(total.worst_relative_error, part.worst_relative_error)
        total.elapsed = time.perf_counter() - start
        return total
    rng = np.random.default_rng(seed)
    use_tol = DEFAULT_TOL[suite] if tol is None else float(tol)
    rep = _RUNNERS[suite](samples, use_tol, rng)
    rep.elapsed = time.perf_counter() - start
    return rep
