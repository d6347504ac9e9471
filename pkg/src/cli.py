# src/cli.py
import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional

import numpy as np

from .config import configure_logging, get_settings
from .curve_series import CurveSpec, curve_point, expand_at_infinity
from .division_polys import cantor_psi, kiepert_det
from .exact_arith import poly_to_json
from .runner import exit_code, run_job, run_single_identity
from .schur import sw_poly
from .sigma import evaluator_for, sigma, sigma_deriv
from .theta import compute_periods
from .verifier import IDENTITIES, VerificationJob, reports_frame

logger = logging.getLogger(__name__)


def _curve(args: argparse.Namespace) -> CurveSpec:
    if getattr(args, "symbolic", False):
        return CurveSpec(genus=args.genus, symbolic=True)
    if args.roots:
        return CurveSpec.from_roots(args.roots)
    if args.lambdas:
        return CurveSpec(genus=args.genus, lambdas=args.lambdas)
    return CurveSpec.default(args.genus)


def _complex_list(values: List[str]) -> List[complex]:
    return [complex(v.replace(" ", "")) for v in values]


def _encode(z: complex) -> List[float]:
    return [float(z.real), float(z.imag)]


def cmd_schur(args: argparse.Namespace) -> Dict[str, Any]:
    S = sw_poly(args.genus)
    return {"genus": args.genus, "weight": S.weight, "S": poly_to_json(S.u_poly)}


def cmd_curve(args: argparse.Namespace) -> Dict[str, Any]:
    curve = _curve(args)
    order = args.order or get_settings().order_for(curve.genus)
    return expand_at_infinity(curve, order).to_json()


def cmd_psi(args: argparse.Namespace) -> Dict[str, Any]:
    curve = _curve(args)
    if args.route == "cantor":
        psi = cantor_psi(curve, args.n)
    else:
        psi = kiepert_det(curve, args.n, args.j)
    return {"genus": curve.genus, "n": args.n, "route": args.route, "psi": psi.to_json(), "pole_order": psi.pole_order()}


def cmd_periods(args: argparse.Namespace) -> Dict[str, Any]:
    return compute_periods(_curve(args)).to_json()


def cmd_sigma(args: argparse.Namespace) -> Dict[str, Any]:
    curve = _curve(args)
    ev = evaluator_for(curve)
    u = np.array(_complex_list(args.u))
    if args.t is not None:
        u = np.asarray(curve_point(expand_at_infinity(curve, get_settings().order_for(curve.genus)), complex(args.t)).u)
    value = sigma_deriv(ev, u, args.index) if args.index else sigma(ev, u)
    return {
        "u": [_encode(c) for c in u],
        "indices": args.index or [],
        "value": _encode(value),
        "characteristic": ev.diagnostics.get("characteristic"),
    }


def _load_job(args: argparse.Namespace) -> VerificationJob:
    data: Dict[str, Any] = {}
    if args.config:
        with open(args.config) as fh:
            data = json.load(fh)
    data["identity"] = args.identity
    for key in ("genus", "n", "j", "samples", "seed", "tolerance"):
        value = getattr(args, key, None)
        if value is not None:
            data[key] = value
    return VerificationJob(**data)


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        job = _load_job(args)
    except Exception as e:
        result = {"job": {"identity": args.identity}, "error": f"{args.identity} failed: {e!r}"}
        print(json.dumps(result, indent=2, default=str))
        return exit_code(result)
    result = run_job(job) if job.identity == "all" else run_single_identity(job)
    print(json.dumps(result, indent=2, default=str))
    if result.get("reports"):
        print(reports_frame(result["reports"]).to_string(index=False), file=sys.stderr)
    return exit_code(result)


def _add_curve_arguments(parser: argparse.ArgumentParser, symbolic: bool = False) -> None:
    parser.add_argument("--genus", type=int, default=2)
    parser.add_argument("--lambdas", nargs="+", help="l1..l_{2g+1} as integers or fractions")
    parser.add_argument("--roots", nargs="+", help="real roots of f (odd count)")
    if symbolic:
        parser.add_argument("--symbolic", action="store_true", help="keep the coefficients symbolic")


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="Sigma-function identities: exact and numeric engines.")
    parser.add_argument("--log-level", default=None, help="root logging level (SIGMA_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="command", required=True)

    schur = sub.add_parser("schur", help="Schur-Weierstrass polynomial")
    schur.add_argument("action", choices=["build"])
    schur.add_argument("--genus", type=int, default=2)
    schur.set_defaults(handler=cmd_schur)

    curve = sub.add_parser("curve", help="expansions at infinity")
    curve.add_argument("action", choices=["expand"])
    _add_curve_arguments(curve, symbolic=True)
    curve.add_argument("--order", type=int, default=0)
    curve.set_defaults(handler=cmd_curve)

    psi = sub.add_parser("psi", help="division polynomials")
    psi.add_argument("action", choices=["compute"])
    _add_curve_arguments(psi, symbolic=True)
    psi.add_argument("--n", type=int, required=True)
    psi.add_argument("--j", type=int, default=1)
    psi.add_argument("--route", choices=["kiepert", "cantor"], default="kiepert")
    psi.set_defaults(handler=cmd_psi)

    periods = sub.add_parser("periods", help="period matrices")
    periods.add_argument("action", choices=["compute"])
    _add_curve_arguments(periods)
    periods.set_defaults(handler=cmd_periods)

    sig = sub.add_parser("sigma", help="evaluate sigma or its derivatives")
    sig.add_argument("action", choices=["eval"])
    _add_curve_arguments(sig)
    sig.add_argument("--u", nargs="+", default=[], help="complex coordinates such as 0.1+0.2j")
    sig.add_argument("--t", default=None, help="evaluate at the Abel image of the point with parameter t")
    sig.add_argument("--index", type=int, nargs="*", default=[], help="derivative indices (at most two)")
    sig.set_defaults(handler=cmd_sigma)

    verify = sub.add_parser("verify", help="verify identities and print JSON reports")
    verify.add_argument("identity", choices=list(IDENTITIES) + ["all"])
    verify.add_argument("--config", default=None, help="JSON job file")
    verify.add_argument("--genus", type=int, default=None)
    verify.add_argument("--n", type=int, default=None)
    verify.add_argument("--j", type=int, default=None)
    verify.add_argument("--samples", type=int, default=None)
    verify.add_argument("--seed", type=int, default=None)
    verify.add_argument("--tolerance", type=float, default=None)
    verify.set_defaults(handler=cmd_verify)
    return parser.parse_args(argv)


def main(argv: Optional[List[str]] = None) -> int:
    args = parse_args(argv)
    configure_logging(args.log_level)
    if args.command == "verify":
        return cmd_verify(args)
    try:
        result = args.handler(args)
    except Exception as e:
        print(json.dumps({"command": args.command, "error": f"{args.command} failed: {e!r}"}, indent=2))
        return 2
    print(json.dumps(result, indent=2, default=str))
    return 0
