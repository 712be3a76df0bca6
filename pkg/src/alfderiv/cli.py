"""Command-line interface: ``alfderiv eval|deriv|verify|map-curve``.

Complex arguments are written ``a``, ``bi``, ``a+bi`` or ``a-bi`` without
spaces (``j`` works in place of ``i``).  ``0.5+0i`` and ``0.5-0i`` select
the upper and lower side of a cut.  Values that begin with a minus sign
must be attached with ``=``, as in ``--z=-0.3+1.5i``.

Exit codes: 0 success, 1 parse error, 2 domain error, 3 check failure,
4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import re
import sys

import numpy as np

from . import bessel, derivatives, legendre, verify, whipple_map
from .errors import AlfError, ConvergenceError, DomainError

__all__ = ["main", "parse_complex", "EvalRequest"]

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_CHECK, EXIT_IO = 0, 1, 2, 3, 4
CHECK_GAP = 1e-4

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_FULL = re.compile(rf"^(?P<re>[+-]?{_NUM})(?:(?P<sign>[+-])(?P<im>{_NUM})?[ij])?$")
_IMAG = re.compile(rf"^(?P<im>[+-]?{_NUM})?[ij]$|^(?P<sg>[+-])[ij]$")


class ParseError(ValueError):
    pass


def parse_complex(text: str) -> complex:
    """Parse the CLI complex syntax.

    >>> parse_complex("1.5-0.3i")
    (1.5-0.3j)
    >>> import math; math.copysign(1, parse_complex("0.5-0i").imag)
    -1.0
    """
    s = text.strip().replace("−", "-")
    m = _FULL.match(s)
    if m:
        re_part = float(m.group("re"))
        if m.group("sign") is None:
            return complex(re_part, 0.0)
        mag = float(m.group("im")) if m.group("im") is not None else 1.0
        return complex(re_part, mag if m.group("sign") == "+" else -mag)
    m = _IMAG.match(s)
    if m:
        if m.group("sg") is not None:
            return complex(0.0, 1.0 if m.group("sg") == "+" else -1.0)
        im = m.group("im")
        return complex(0.0, 1.0 if im in (None, "+") else float(im))
    raise ParseError(f"cannot parse complex number {text!r}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _complex_arg(text):
    try:
        return parse_complex(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _sign_arg(text):
    if text in ("+", "+1", "1"):
        return 1
    if text in ("-", "-1"):
        return -1
    raise argparse.ArgumentTypeError(f"sign must be + or -, got {text!r}")


# relative accuracy reported as abs_err for direct evaluations
_REL_ACC = {"P": 1e-13, "Q": 1e-13, "besselI": 1e-12, "besselK": 1e-12, "fmap": 4e-16, "wmap": 4e-16}
_REQUIRED = {
    "P": ("deg", "ord", "z"),
    "Q": ("deg", "ord", "z"),
    "besselI": ("ord", "t"),
    "besselK": ("ord", "t"),
    "fmap": ("z",),
    "wmap": ("z",),
}


class EvalRequest:
    """Function name, named complex parameters and output format."""

    def __init__(self, function, parameters, output_format="json"):
        missing = [p for p in _REQUIRED[function] if parameters.get(p) is None]
        if missing:
            raise ParseError(f"--func {function} needs " + ", ".join("--" + p for p in missing))
        self.function = function
        self.parameters = parameters
        self.output_format = output_format

    def evaluate(self):
        p = self.parameters
        fn = self.function
        if fn == "P":
            v = legendre.legendre_p(p["deg"], p["ord"], p["z"])
        elif fn == "Q":
            v = legendre.legendre_q(p["deg"], p["ord"], p["z"])
        elif fn in ("besselI", "besselK"):
            t = p["t"]
            if t.imag != 0:
                raise DomainError("Bessel argument t must be real")
            f = bessel.bessel_i if fn == "besselI" else bessel.bessel_k
            v = f(p["ord"], t.real)
        elif fn == "fmap":
            v = whipple_map.f_map(p["z"])
        else:
            v = whipple_map.w_map(p["z"])
        v = complex(v)
        return v, _REL_ACC[fn] * abs(v)


def _value_dict(v, err):
    return {"re": v.real, "im": v.imag, "abs_err": err}


def _emit(record: dict, fmt: str, out):
    if fmt == "json":
        out.write(json.dumps(record) + "\n")
        return
    flat = {}
    for k, v in record.items():
        if isinstance(v, dict):
            for kk, vv in v.items():
                flat[f"{k}_{kk}"] = vv
        else:
            flat[k] = v
    w = csv.DictWriter(out, fieldnames=list(flat), lineterminator="\n")
    w.writeheader()
    w.writerow(flat)


def cmd_eval(args, out):
    params = {"deg": args.deg, "ord": args.ord, "z": args.z, "t": args.t}
    req = EvalRequest(args.func, params, args.format)
    v, err = req.evaluate()
    _emit(_value_dict(v, err), req.output_format, out)
    return EXIT_OK


def cmd_deriv(args, out):
    if args.index < 0:
        raise ParseError("--index must be nonnegative")
    if args.z is None:
        raise ParseError("--z is required")
    func, wrt, n, s, z = args.func, args.wrt, args.index, args.sign, args.z
    if wrt == "order":
        if args.deg_param is None:
            raise ParseError("--wrt order needs --deg-param (nu in P/Q_{nu-1/2}^mu)")
        nu = args.deg_param
        fn = derivatives.dq_dorder_at_int if func == "Q" else derivatives.dp_dorder_at_int
        res = fn(nu, n, s, z)
        at = legendre.LegendreParams(nu - 0.5, s * n, z)
    else:
        if args.ord_param is None:
            raise ParseError("--wrt degree needs --ord-param (mu)")
        mu = args.ord_param
        fn = derivatives.dq_ddegree_at_halfint if func == "Q" else derivatives.dp_ddegree_at_halfint
        res = fn(n, s, mu, z)
        at = legendre.LegendreParams(s * n - 0.5, mu, z)
    record = _value_dict(res.value, res.error_estimate)
    record["method"] = res.method
    code = EXIT_OK
    if args.check:
        oracle = derivatives.fd_param_derivative(func, wrt, at)
        gap = abs(res.value - oracle.value) / max(abs(oracle.value), 1e-300)
        if res.value == oracle.value:
            gap = 0.0
        record["oracle"] = _value_dict(oracle.value, oracle.error_estimate)
        record["rel_gap"] = gap
        if gap > CHECK_GAP:
            code = EXIT_CHECK
    _emit(record, args.format, out)
    return code


def cmd_verify(args, out):
    tol = args.tol
    report = verify.run_suite(args.suite, args.samples, tol, args.seed)
    if args.timing:
        logging.getLogger("alfderiv").info("elapsed %.3f s", report.elapsed)
    out.write(json.dumps(report.to_dict(timing=args.timing), sort_keys=True) + "\n")
    return EXIT_OK if report.ok else EXIT_CHECK


def map_curve_rows(tmin: float, tmax: float, steps: int):
    """Rows (t, x, y, dist_sq, tag) of the boundary curve plus tagged A, B, C."""
    if not (0 < tmin < tmax) or steps < 2:
        raise DomainError("map-curve needs 0 < tmin < tmax and steps >= 2")
    t = np.geomspace(tmin, tmax, steps)
    x, y, d = whipple_map.boundary_curve_arrays(t)
    rows = [(float(a), float(b), float(c), float(e), "") for a, b, c, e in zip(t, x, y, d)]
    for tag, tv in (("A", whipple_map.T_A), ("B", whipple_map.T_B), ("C", whipple_map.T_C)):
        pt = whipple_map.boundary_curve(tv)
        rows.append((pt.t, pt.x, pt.y, pt.dist_sq, tag))
    return rows


def cmd_map_curve(args, out):
    rows = map_curve_rows(args.tmin, args.tmax, args.steps)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "x", "y", "dist_sq", "tag"])
    for r in rows:
        w.writerow([repr(r[0]), repr(r[1]), repr(r[2]), repr(r[3]), r[4]])
    if args.out in (None, "-"):
        out.write(buf.getvalue())
    else:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(buf.getvalue())
        except OSError as exc:
            sys.stderr.write(f"alfderiv: cannot write {args.out}: {exc}\n")
            return EXIT_IO
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="alfderiv", description="Parameter derivatives of associated Legendre functions.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", help="evaluate P, Q, I, K, f or w")
    e.add_argument("--func", required=True, choices=sorted(_REQUIRED))
    e.add_argument("--deg", type=_complex_arg)
    e.add_argument("--ord", type=_complex_arg)
    e.add_argument("--z", type=_complex_arg)
    e.add_argument("--t", type=_complex_arg)
    e.add_argument("--format", choices=("json", "csv"), default="json")
    e.set_defaults(handler=cmd_eval)

    d = sub.add_parser("deriv", help="closed-form parameter derivative")
    d.add_argument("--func", required=True, choices=("P", "Q"))
    d.add_argument("--wrt", required=True, choices=("degree", "order"))
    d.add_argument("--index", required=True, type=int)
    d.add_argument("--sign", type=_sign_arg, default=1)
    d.add_argument("--deg-param", type=_complex_arg, help="nu, for --wrt order")
    d.add_argument("--ord-param", type=_complex_arg, help="mu, for --wrt degree")
    d.add_argument("--z", type=_complex_arg)
    d.add_argument("--check", action="store_true", help="compare with the finite-difference oracle")
    d.add_argument("--format", choices=("json", "csv"), default="json")
    d.set_defaults(handler=cmd_deriv)

    v = sub.add_parser("verify", help="seeded verification sweep")
    v.add_argument("--suite", choices=verify.SUITES, default="all")
    v.add_argument("--samples", type=int, default=100)
    v.add_argument("--tol", type=float)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--timing", action="store_true", help="include elapsed seconds")
    v.set_defaults(handler=cmd_verify)

    m = sub.add_parser("map-curve", help="CSV of the boundary curve f(1 - i t)")
    m.add_argument("--tmin", type=float, default=1e-3)
    m.add_argument("--tmax", type=float, default=1e3)
    m.add_argument("--steps", type=int, default=200)
    m.add_argument("--out", help="output path, '-' or omitted for stdout")
    m.set_defaults(handler=cmd_map_curve)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose or getattr(args, "timing", False) else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.handler(args, out)
    except ParseError as exc:
        sys.stderr.write(f"alfderiv: {exc}\n")
        return EXIT_PARSE
    except ConvergenceError as exc:
        sys.stderr.write(f"alfderiv: did not converge: {exc}\n")
        return EXIT_DOMAIN
    except (DomainError, AlfError) as exc:
        constraint = getattr(exc, "constraint", None)
        extra = f" [constraint: {constraint}]" if constraint else ""
        sys.stderr.write(f"alfderiv: domain error: {exc}{extra}\n")
        return EXIT_DOMAIN
    except ValueError as exc:
        sys.stderr.write(f"alfderiv: {exc}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
