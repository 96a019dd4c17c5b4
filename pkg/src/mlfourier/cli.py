"""Command-line front end.

Subcommands evaluate the Mittag-Leffler function and Bessel kernels over
grids, run the radial transform, verify asymptotic laws, emit L^p regions,
and check the derivative-transfer identity.  Outputs are CSV
(columns xi,re,im,abs,est_error — the first column is the evaluation point)
or versioned JSON; identical arguments produce byte-identical output unless
a timestamp is requested.  Exit codes: 0 success, 2 validation failure,
3 convergence/accuracy failure, 4 law or fit mismatch.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from typing import Callable, Sequence

import numpy as np

from .errors import (
    AccuracyError,
    ConvergenceError,
    DegenerateFitError,
    DomainError,
    FitError,
    LawMismatchError,
    MLFourierError,
    PoleError,
)
from .special_core import QuadratureConfig
from .mittag_leffler import MLParams, ml_eval
from .bessel import bessel_j_reference, jbar
from .radial_fourier import (
    TailStrategy,
    TransformProblem,
    default_strategy,
    ibp_identity_check,
    ml_transform,
)
from .asymptotics import lp_region, verify_large_xi, verify_small_xi

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_CONVERGENCE = 3
EXIT_MISMATCH = 4

_STRATEGY_NAMES = {
    "expansion": "BesselExpansionAccelerated",
    "direct": "DirectPeriodSum",
}


def _worker_count() -> int:
    raw = os.environ.get("MLF_THREADS", "1")
    try:
        k = int(raw)
    except ValueError:
        raise DomainError(f"MLF_THREADS must be an integer, got {raw!r}")
    if k < 0:
        raise DomainError("MLF_THREADS must be >= 0 (0 = auto)")
    if k == 0:
        return os.cpu_count() or 1
    return k


def _grid_map(func: Callable[[float], tuple], xs: Sequence[float]) -> list:
    """Evaluate func over xs, fanning out across MLF_THREADS workers.

    Results are merged in grid order, so output is independent of the
    worker count.
    """
    workers = min(_worker_count(), max(len(xs), 1))
    if workers <= 1 or len(xs) <= 1:
        return [func(x) for x in xs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, xs))


def _parse_complex(text: str) -> complex:
    cleaned = text.strip().replace("i", "j").replace(" ", "")
    try:
        return complex(cleaned)
    except ValueError:
        raise DomainError(f"cannot parse complex number from {text!r}")


def _geometric_grid(args: argparse.Namespace) -> np.ndarray:
    if args.xi_points < 1:
        raise DomainError("grid needs at least 1 point (--xi-points >= 1)")
    if not (args.xi_min > 0.0):
        raise DomainError("--xi-min must be > 0")
    if args.xi_max < args.xi_min:
        raise DomainError("--xi-max must be >= --xi-min")
    if args.xi_points == 1:
        return np.array([args.xi_min])
    return np.geomspace(args.xi_min, args.xi_max, args.xi_points)


def _quad_config(args: argparse.Namespace) -> QuadratureConfig:
    return QuadratureConfig(abs_tol=args.abs_tol, rel_tol=args.rel_tol)


def _timestamp_line(args: argparse.Namespace) -> str | None:
    if args.no_timestamp:
        return None
    return datetime.now(timezone.utc).isoformat()


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _records_csv(records: list[dict], stamp: str | None) -> str:
    lines = []
    if stamp is not None:
        lines.append(f"# timestamp: {stamp}")
    lines.append("xi,re,im,abs,est_error")
    for rec in records:
        lines.append(
            f"{rec['xi_mag']!r},{rec['value_re']!r},{rec['value_im']!r},"
            f"{rec['abs']!r},{rec['est_error']!r}"
        )
    return "\n".join(lines) + "\n"


def _payload_json(payload: dict, stamp: str | None) -> str:
    body = {"schema": 1, **payload}
    if stamp is not None:
        body["timestamp"] = stamp
    return json.dumps(body, indent=2, sort_keys=True) + "\n"


def _record(xi: float, value: complex, est_error: float) -> dict:
    return {
        "xi_mag": float(xi),
        "value_re": float(value.real),
        "value_im": float(value.imag),
        "abs": float(abs(value)),
        "est_error": float(est_error),
    }


def _emit_records(
    args: argparse.Namespace, params: dict, records: list[dict]
) -> None:
    stamp = _timestamp_line(args)
    if args.format == "csv":
        _emit(args, _records_csv(records, stamp))
    else:
        _emit(args, _payload_json({"params": params, "records": records}, stamp))


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_eval_ml(args: argparse.Namespace) -> int:
    try:
        p = MLParams(args.alpha, args.beta)
    except DomainError as exc:
        # surface the invariant by name: 0 < alpha < 2
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    zs = [_parse_complex(z) for z in (args.z or ["1+0i"])]
    cfg = _quad_config(args)

    records = []
    for z in zs:
        value = ml_eval(p, z, cfg)
        est = max(cfg.abs_tol, cfg.rel_tol * abs(value))
        records.append(_record(abs(z), value, est))
    params = {
        "alpha": args.alpha,
        "beta": args.beta,
        "z": [str(z) for z in zs],
        "abs_tol": args.abs_tol,
        "rel_tol": args.rel_tol,
    }
    _emit_records(args, params, records)
    return EXIT_OK


def _cmd_eval_bessel(args: argparse.Namespace) -> int:
    grid = _geometric_grid(args)
    lam = args.order
    if args.scaled:
        n = args.dim

        def point(r: float) -> dict:
            v = jbar(n, float(r))
            return _record(r, complex(v), 1e-12)

    else:

        def point(r: float) -> dict:
            v = bessel_j_reference(lam, float(r))
            return _record(r, complex(v), 1e-11)

    records = _grid_map(point, [float(x) for x in grid])
    params = {
        "order": args.order,
        "dim": args.dim,
        "scaled": args.scaled,
        "xi_min": args.xi_min,
        "xi_max": args.xi_max,
        "xi_points": args.xi_points,
    }
    _emit_records(args, params, records)
    return EXIT_OK


def _problem_from_args(args: argparse.Namespace) -> TransformProblem:
    return TransformProblem(
        alpha=args.alpha,
        beta=args.beta,
        phi=args.phi,
        sigma=args.sigma,
        n=args.dim,
    )


def _cmd_transform(args: argparse.Namespace) -> int:
    tp = _problem_from_args(args)
    grid = _geometric_grid(args)
    cfg = _quad_config(args)
    kind = _STRATEGY_NAMES[args.strategy]
    order = (
        args.expansion_order
        if args.expansion_order is not None
        else default_strategy(tp.n).M
    )
    strategy = TailStrategy(kind=kind, M=order, accel_order=args.accel_order)

    def point(xi: float) -> dict:
        value = ml_transform(tp, xi, strategy, cfg)
        est = (
            2.0
            * math.pi
            / xi ** tp.n
            * max(cfg.abs_tol, cfg.rel_tol * abs(value))
        )
        return _record(xi, value, est)

    records = _grid_map(point, [float(x) for x in grid])
    params = {
        "alpha": tp.alpha,
        "beta": tp.beta,
        "phi": tp.phi,
        "sigma": tp.sigma,
        "dim": tp.n,
        "strategy": kind,
        "expansion_order": order,
        "accel_order": args.accel_order,
        "xi_min": args.xi_min,
        "xi_max": args.xi_max,
        "xi_points": args.xi_points,
        "abs_tol": args.abs_tol,
        "rel_tol": args.rel_tol,
    }
    _emit_records(args, params, records)
    return EXIT_OK


def _fit_dict(fit) -> dict | None:
    if fit is None:
        return None
    return {
        "slope": fit.slope,
        "intercept": fit.intercept,
        "residual": fit.residual,
        "points": len(fit.grid),
    }


def _fit_grid(args: argparse.Namespace):
    given = (args.xi_min, args.xi_max, args.xi_points)
    if all(v is None for v in given):
        return None
    if any(v is None for v in given):
        raise DomainError(
            "provide --xi-min, --xi-max, and --xi-points together"
        )
    if args.xi_points < 6:
        raise DomainError("slope fits need at least 6 grid points")
    return _geometric_grid(args)


def _cmd_verify_asymptotics(args: argparse.Namespace) -> int:
    tp = _problem_from_args(args)
    cfg = _quad_config(args)
    grid = _fit_grid(args)
    reports = {}
    if args.regime in ("small", "both"):
        rep = verify_small_xi(tp, grid=grid, cfg=cfg)
        reports["small"] = {
            "small_xi_law": rep.small_xi_law,
            "fit": _fit_dict(rep.small_slope_fit),
            "constants_matched": rep.constants_matched,
            "notes": rep.notes,
        }
    if args.regime in ("large", "both"):
        rep = verify_large_xi(tp, grid=grid, cfg=cfg)
        reports["large"] = {
            "fit": _fit_dict(rep.large_slope_fit),
            "constants_matched": rep.constants_matched,
            "notes": rep.notes,
        }
    params = {
        "alpha": tp.alpha,
        "beta": tp.beta,
        "phi": tp.phi,
        "sigma": tp.sigma,
        "dim": tp.n,
        "regime": args.regime,
    }
    _emit(
        args,
        _payload_json(
            {"params": params, "report": reports}, _timestamp_line(args)
        ),
    )
    return EXIT_OK


def _region_dict(region) -> dict | None:
    if region is None:
        return None
    return {
        "lower": region.p_lower,
        "upper": "inf" if math.isinf(region.p_upper) else region.p_upper,
        "lower_open": region.lower_open,
        "upper_open": region.upper_open,
        "source": region.source,
    }


def _cmd_lp_region(args: argparse.Namespace) -> int:
    tp = _problem_from_args(args)
    full, hy = lp_region(tp)
    params = {
        "alpha": tp.alpha,
        "beta": tp.beta,
        "phi": tp.phi,
        "sigma": tp.sigma,
        "dim": tp.n,
    }
    payload = {
        "params": params,
        "theorem3": _region_dict(full),
        "hausdorff_young": _region_dict(hy),
    }
    _emit(args, _payload_json(payload, _timestamp_line(args)))
    return EXIT_OK


def _cmd_ibp_check(args: argparse.Namespace) -> int:
    tp = _problem_from_args(args)
    cfg = _quad_config(args)
    xis = args.xi or [1.0]
    checks = []
    worst = 0.0
    for xi in xis:
        rel = ibp_identity_check(tp, xi, args.ell, args.ibp_order, cfg)
        worst = max(worst, rel)
        checks.append(
            {
                "xi_mag": xi,
                "ell": args.ell,
                "ibp_order": args.ibp_order,
                "relative_difference": rel,
            }
        )
    params = {
        "alpha": tp.alpha,
        "beta": tp.beta,
        "phi": tp.phi,
        "sigma": tp.sigma,
        "dim": tp.n,
        "threshold": args.threshold,
    }
    _emit(
        args,
        _payload_json(
            {"params": params, "checks": checks, "worst": worst},
            _timestamp_line(args),
        ),
    )
    return EXIT_OK if worst <= args.threshold else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_common(sub: argparse.ArgumentParser, problem: bool) -> None:
    if problem:
        sub.add_argument("--alpha", type=float, default=0.8)
        sub.add_argument("--beta", type=float, default=1.0)
        sub.add_argument("--phi", type=float, default=math.pi)
        sub.add_argument("--sigma", type=float, default=1.0)
        sub.add_argument("--dim", type=int, default=1)
    sub.add_argument("--abs-tol", type=float, default=1e-12)
    sub.add_argument("--rel-tol", type=float, default=1e-10)
    sub.add_argument("--format", choices=("csv", "json"), default=None)
    sub.add_argument("--out", type=str, default=None)
    sub.add_argument("--no-timestamp", action="store_true")


def _add_grid(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--xi-min", type=float, default=0.1)
    sub.add_argument("--xi-max", type=float, default=10.0)
    sub.add_argument("--xi-points", type=int, default=9)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mlf",
        description=(
            "Mittag-Leffler radial Fourier transforms: special-function "
            "evaluation, transform grids, asymptotic-law verification, "
            "and L^p regions."
        ),
    )
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("eval-ml", help="evaluate E_{alpha,beta}(z)")
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--beta", type=float, default=1.0)
    s.add_argument("--z", action="append", help="complex point, repeatable")
    _add_common(s, problem=False)
    s.set_defaults(handler=_cmd_eval_ml, default_format="csv")

    s = subs.add_parser(
        "eval-bessel", help="evaluate J_order(r) or the scaled kernel"
    )
    s.add_argument("--order", type=float, default=0.0)
    s.add_argument(
        "--scaled",
        action="store_true",
        help="evaluate the dimension-n scaled kernel instead of J itself",
    )
    s.add_argument("--dim", type=int, default=1)
    _add_grid(s)
    _add_common(s, problem=False)
    s.set_defaults(handler=_cmd_eval_bessel, default_format="csv")

    s = subs.add_parser("transform", help="radial transform over a grid")
    _add_grid(s)
    s.add_argument(
        "--strategy", choices=tuple(_STRATEGY_NAMES), default="expansion"
    )
    s.add_argument("--expansion-order", type=int, default=None)
    s.add_argument("--accel-order", type=int, default=6)
    _add_common(s, problem=True)
    s.set_defaults(handler=_cmd_transform, default_format="csv")

    s = subs.add_parser(
        "verify-asymptotics", help="fit and verify the asymptotic laws"
    )
    s.add_argument(
        "--regime", choices=("small", "large", "both"), default="small"
    )
    s.add_argument("--xi-min", type=float, default=None)
    s.add_argument("--xi-max", type=float, default=None)
    s.add_argument("--xi-points", type=int, default=None)
    _add_common(s, problem=True)
    s.set_defaults(handler=_cmd_verify_asymptotics, default_format="json")

    s = subs.add_parser("lp-region", help="analytic L^p regions")
    _add_common(s, problem=True)
    s.set_defaults(handler=_cmd_lp_region, default_format="json")

    s = subs.add_parser(
        "ibp-check", help="derivative-transfer identity residual"
    )
    s.add_argument("--xi", type=float, action="append")
    s.add_argument("--ell", type=int, default=0)
    s.add_argument("--ibp-order", type=int, default=1)
    s.add_argument("--threshold", type=float, default=1e-5)
    _add_common(s, problem=True)
    s.set_defaults(handler=_cmd_ibp_check, default_format="json")

    return parser


def _normalize_argv(argv: Sequence[str]) -> list[str]:
    """Join option values that begin with a minus sign (e.g. --z -1+0i),
    which argparse would otherwise read as a flag."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--z",) and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_normalize_argv(sys.argv[1:] if argv is None else list(argv)))
    if args.format is None:
        args.format = args.default_format
    try:
        return args.handler(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ConvergenceError, AccuracyError, PoleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (LawMismatchError, FitError, DegenerateFitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except MLFourierError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
