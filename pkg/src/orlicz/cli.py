"""``orlicz`` command-line front end.

Every subcommand prints one JSON report on stdout (or to ``--output``).
Exit codes: 0 ok/holds, 1 verified failure, 2 input error, 3 inconclusive
or non-convergent. Floats are rounded to 12 significant digits so reports
do not depend on the kernel backend; infinite values are written as null.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .config import DEFAULT, ToleranceConfig
from .funcspace import SampleSpec, function_from_json
from .inclusion import (
    InconclusiveError,
    PreconditionError,
    dominates,
    find_min_constant,
    inclusion_verdict,
    product_norm_bound,
)
from .norms import luxemburg_norm, weak_norm
from .young import InverseError, SchemaError, evaluate, generalized_inverse, parse_shorthand, young_from_json

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_INPUT = 2
EXIT_INCONCLUSIVE = 3

CONFIG_ENV = "ORLICZ_CONFIG"
SIG_DIGITS = 12


class InputError(Exception):
    def __init__(self, field: str, message: str):
        super().__init__(message)
        self.field = field
        self.message = message


def canonical(obj: Any) -> Any:
    """Round floats to ``SIG_DIGITS`` and map non-finite floats to None."""
    if isinstance(obj, dict):
        return {k: canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return None
        return float(f"{x:.{SIG_DIGITS}g}")
    return obj


def dumps(report: dict[str, Any]) -> str:
    return json.dumps(canonical(report), indent=2, ensure_ascii=False, allow_nan=False) + "\n"


# ---------------------------------------------------------------------------
# input handling


def _load_text(raw: str, field: str) -> str:
    if raw.startswith("@"):
        try:
            return Path(raw[1:]).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(field, f"cannot read {raw[1:]}: {exc.strerror}") from None
    return raw


def _load_json(raw: str, field: str) -> Any:
    text = _load_text(raw, field)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(field, f"malformed JSON: {exc.msg} at line {exc.lineno} column {exc.colno}") from None


def load_young(raw: str, field: str):
    text = _load_text(raw, field).strip()
    try:
        obj = _load_json(text, field) if text.startswith(("{", "[")) else parse_shorthand(text)
        return young_from_json(obj, field)
    except SchemaError as exc:
        if exc.path == "phi" and not text.startswith(("{", "[")):
            raise InputError(field, exc.message) from None
        raise InputError(exc.path, exc.message) from None


def load_function(raw: str, field: str):
    obj = _load_json(raw, field)
    try:
        return function_from_json(obj, field)
    except SchemaError as exc:
        raise InputError(exc.path, exc.message) from None


def load_config(args: argparse.Namespace) -> ToleranceConfig:
    path = args.config or os.environ.get(CONFIG_ENV)
    data: dict[str, Any] = {}
    if path:
        data = _load_json("@" + path, "config")
        if not isinstance(data, dict):
            raise InputError("config", "expected a JSON object")
    overrides = {
        "rel_tol": args.rel_tol,
        "abs_tol": args.abs_tol,
        "max_bisect_iters": args.max_iter,
        "grid_points": args.grid_points,
        "grid_range": args.grid_range,
    }
    data.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return ToleranceConfig.from_dict(data) if data else DEFAULT
    except (TypeError, ValueError) as exc:
        raise InputError("config", str(exc)) from None


# ---------------------------------------------------------------------------
# subcommands


def cmd_eval(args, cfg):
    phi = load_young(args.phi, "phi")
    try:
        values = [{"t": t, "value": evaluate(phi, t)} for t in args.t]
    except ValueError as exc:
        raise InputError("t", str(exc)) from None
    return EXIT_OK, {"phi": phi.to_json(), "values": values}


def cmd_inverse(args, cfg):
    phi = load_young(args.phi, "phi")
    out = []
    for s in args.s:
        if not (s >= 0 and math.isfinite(s)):
            raise InputError("s", "must be finite and nonnegative")
        try:
            out.append({"s": s, "value": float(generalized_inverse(phi, s, cfg))})
        except InverseError as exc:
            return EXIT_INCONCLUSIVE, {"phi": phi.to_json(), "s": s, "error": str(exc)}
    return EXIT_OK, {"phi": phi.to_json(), "values": out}


def _norm_cmd(norm):
    def run(args, cfg):
        phi = load_young(args.phi, "phi")
        f = load_function(args.f, "f")
        res = norm(f, phi, cfg)
        report = {"phi": phi.to_json(), "f": f.to_json(), **res.to_json()}
        return (EXIT_OK if res.converged else EXIT_INCONCLUSIVE), report
    return run


def cmd_min_constant(args, cfg):
    phi = load_young(args.phi, "phi")
    psi = load_young(args.psi, "psi")
    base = {"phi": phi.to_json(), "psi": psi.to_json()}
    try:
        C = find_min_constant(phi, psi, cfg)
    except InconclusiveError as exc:
        return EXIT_INCONCLUSIVE, {**base, "C": None, "status": "inconclusive", "reason": str(exc)}
    if C is None:
        cert = dominates(phi, psi, args.probe_c, cfg)
        return EXIT_FAILS, {**base, "C": None, "status": "none", "probe": cert.to_json()}
    return EXIT_OK, {**base, "C": C, "status": "ok", "certificate": dominates(phi, psi, C, cfg).to_json()}


def cmd_check_inclusion(args, cfg):
    phi = load_young(args.phi, "phi")
    psi = load_young(args.psi, "psi")
    samples = SampleSpec(n_samples=args.samples, seed=args.seed, include_extremes=True)
    verdict = inclusion_verdict(phi, psi, cfg, samples, args.probe_c)
    code = {"holds": EXIT_OK, "fails": EXIT_FAILS}.get(verdict.status, EXIT_INCONCLUSIVE)
    return code, verdict.to_json()


def cmd_product_bound(args, cfg):
    f = load_function(args.f, "f")
    g = load_function(args.g, "g")
    phis = [load_young(raw, name) for raw, name in ((args.phi1, "phi1"), (args.phi2, "phi2"), (args.phi3, "phi3"))]
    try:
        rep = product_norm_bound(f, g, *phis, cfg)
    except PreconditionError as exc:
        return EXIT_FAILS, {"holds": False, "precondition": str(exc)}
    except (TypeError, ValueError, AttributeError) as exc:
        raise InputError("g", str(exc)) from None
    return (EXIT_OK if rep.holds else EXIT_FAILS), rep.to_json()


def cmd_verify(args, cfg):
    from .verify import resolve_labels, run_suites

    extra = [load_young(raw, f"phi[{i}]") for i, raw in enumerate(args.phi or [])]
    try:
        resolve_labels(args.only)
    except KeyError as exc:
        raise InputError("only", f"unknown suite {exc.args[0]!r}") from None
    report = run_suites(cfg, args.seed, args.only, extra)
    return (EXIT_OK if report["ok"] else EXIT_FAILS), report


# ---------------------------------------------------------------------------
# parser


def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("configuration")
    g.add_argument("--config", help=f"tolerance config JSON (default: ${CONFIG_ENV})")
    g.add_argument("--rel-tol", type=float)
    g.add_argument("--abs-tol", type=float)
    g.add_argument("--max-iter", type=int)
    g.add_argument("--grid-points", type=int)
    g.add_argument("--grid-range", type=float, nargs=2, metavar=("T_MIN", "T_MAX"))
    p.add_argument("--output", "-o", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orlicz", description="Orlicz norms and inclusion checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a Young function")
    p.add_argument("--phi", required=True)
    p.add_argument("--t", type=float, nargs="+", required=True)
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("inverse", help="generalized inverse")
    p.add_argument("--phi", required=True)
    p.add_argument("--s", type=float, nargs="+", required=True)
    p.set_defaults(run=cmd_inverse)

    for name, norm in (("norm", luxemburg_norm), ("weak-norm", weak_norm)):
        p = sub.add_parser(name, help=f"{name.replace('-', ' ')} of a function")
        p.add_argument("--phi", required=True)
        p.add_argument("--f", required=True)
        p.set_defaults(run=_norm_cmd(norm))

    p = sub.add_parser("min-constant", help="smallest C with phi(t) <= psi(Ct)")
    p.add_argument("--phi", required=True)
    p.add_argument("--psi", required=True)
    p.add_argument("--probe-c", type=float, default=10.0)
    p.set_defaults(run=cmd_min_constant)

    p = sub.add_parser("check-inclusion", help="all five equivalent inclusion statements")
    p.add_argument("--phi", required=True)
    p.add_argument("--psi", required=True)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--probe-c", type=float, default=10.0)
    p.set_defaults(run=cmd_check_inclusion)

    p = sub.add_parser("product-bound", help="||fg|| <= 2 ||f|| ||g|| under the inverse-product hypothesis")
    for name in ("f", "g", "phi1", "phi2", "phi3"):
        p.add_argument(f"--{name}", required=True)
    p.set_defaults(run=cmd_product_bound)

    p = sub.add_parser("verify", help="run the invariant suites")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--only", nargs="+", metavar="LABEL")
    p.add_argument("--phi", action="append", help="extra Young function for the axiom and inverse suites")
    p.set_defaults(run=cmd_verify)

    for p in sub.choices.values():
        _common(p)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        cfg = load_config(args)
        code, report = args.run(args, cfg)
    except InputError as exc:
        code, report = EXIT_INPUT, {"error": exc.message, "field": exc.field}
    text = dumps(report)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
