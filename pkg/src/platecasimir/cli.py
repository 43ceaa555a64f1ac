"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 quadrature tolerance not met (or a
failed self-check).
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from .checks import SUITES, run_suite
from .energy import (
    CONSTANTS_PROVENANCE, EnergyCoefficient, casimir_coefficient, mu_from_mass,
    prefactor, series_coefficient, to_physical,
)
from .exceptions import ToleranceNotMet
from .models import CATALOG, get_model
from .quadrature import QuadratureSpec
from .roots import find_roots, residuals

SCAN_HEADER = "mu,e,err,oracle_e,oracle_dev"
ROOTS_HEADER = "index,lo,hi,root,residual"

# JSON output of ``compute`` and ``scan``; values carry 12 significant digits
COMPUTE_SCHEMA = {
    "type": "object",
    "required": ["model", "params", "mu", "e", "err"],
    "properties": {
        "model": {"type": "string", "enum": list(CATALOG)},
        "params": {"type": "object", "additionalProperties": {"type": "number"}},
        "mu": {"type": "number", "minimum": 0},
        "e": {"type": "number"},
        "err": {"type": "number", "minimum": 0},
        "physical": {
            "type": "object",
            "required": ["energy", "unit", "length_m", "area_m2", "hbar_c_ev_m", "constants"],
            "properties": {
                "energy": {"type": "number"},
                "unit": {"enum": ["J", "eV"]},
                "length_m": {"type": "number", "exclusiveMinimum": 0},
                "area_m2": {"type": "number", "exclusiveMinimum": 0},
                "mass_ev": {"type": ["number", "null"]},
                "mu": {"type": ["number", "null"]},
                "hbar_c_ev_m": {"type": "number"},
                "constants": {"type": "string"},
            },
        },
    },
}

SCAN_SCHEMA = {
    "type": "object",
    "required": ["metadata", "rows"],
    "properties": {
        "metadata": {
            "type": "object",
            "required": ["model", "params", "rel_tol", "abs_tol", "constants", "version"],
        },
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["mu", "e", "err", "oracle_e", "oracle_dev"],
                "properties": {
                    "mu": {"type": "number"},
                    "e": {"type": "number"},
                    "err": {"type": "number"},
                    "oracle_e": {"type": ["number", "null"]},
                    "oracle_dev": {"type": ["number", "null"]},
                    "flagged": {"type": "boolean"},
                },
            },
        },
    },
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def fmt(x) -> str:
    """Fixed 12-significant-digit rendering used in every output format."""
    if x is None:
        return ""
    if x == 0:
        return "0"
    return format(float(x), ".12g")


def _num(x):
    return None if x is None else float(fmt(x))


@dataclass
class ScanResult:
    """Rows ``(mu, e, err, oracle_e, oracle_dev)`` sorted by ``mu``."""

    rows: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)
    flagged: list = field(default_factory=list)

    def to_csv(self) -> str:
        lines = [SCAN_HEADER]
        for row in self.rows:
            lines.append(",".join(fmt(v) for v in row))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        rows = [
            dict(zip(SCAN_HEADER.split(","), (_num(v) for v in row)), flagged=bool(flag))
            for row, flag in zip(self.rows, self.flagged)
        ]
        return json.dumps({"metadata": self.metadata, "rows": rows}, indent=2) + "\n"


def read_config(path: str) -> dict:
    """``key = value`` lines; ``#`` starts a comment; dashes in keys become underscores."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def _model_from_args(args):
    params = {}
    if args.model == "robin":
        params = {"beta1": args.beta1, "beta2": args.beta2}
    elif args.beta1 or args.beta2:
        raise UsageError("--beta1/--beta2 only apply to the robin model")
    try:
        return get_model(args.model, **params)
    except KeyError:
        raise UsageError(f"unknown model {args.model!r}; catalog: {', '.join(CATALOG)}") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _spec(args):
    if not args.tol > 0:
        raise UsageError("--tol must be positive")
    return QuadratureSpec(rel_tol=args.tol)


def _check_mu(mu):
    if mu is None or not mu >= 0 or math.isinf(mu):
        raise UsageError("mu must be ≥ 0")


def cmd_compute(args) -> int:
    model = _model_from_args(args)
    spec = _spec(args)
    phys = None
    if args.physical:
        if args.length is None or args.area is None or args.mass is None:
            raise UsageError("--physical needs --length, --area and --mass")
        if args.length <= 0 or args.area <= 0 or args.mass < 0:
            raise UsageError("length and area must be positive, mass non-negative")
        if args.mu is not None:
            raise UsageError("--mu is derived from --mass and --length with --physical")
        mu = mu_from_mass(args.mass, args.length)
    else:
        mu = args.mu
    _check_mu(mu)

    status = 0
    try:
        coeff = casimir_coefficient(model, mu, spec)
    except ToleranceNotMet as exc:
        print(f"warning: {exc}", file=sys.stderr)
        c = prefactor(model)
        coeff = EnergyCoefficient(c * exc.value, abs(c) * exc.error, mu, model.name, model.params)
        status = 2
    if args.physical:
        phys = to_physical(coeff.e, args.length, args.area, args.unit, mass_ev=args.mass)

    if args.format == "json":
        doc = {k: (_num(v) if isinstance(v, float) else v) for k, v in coeff.to_dict().items()}
        if phys is not None:
            doc["physical"] = {k: (_num(v) if isinstance(v, float) else v) for k, v in phys.to_dict().items()}
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    elif args.format == "csv":
        head = ["model", "mu", "e", "err"]
        vals = [model.name, fmt(mu), fmt(coeff.e), fmt(coeff.err)]
        if phys is not None:
            head += [f"energy_{phys.unit}", "length_m", "area_m2", "mass_eV"]
            vals += [fmt(phys.energy), fmt(phys.length), fmt(phys.area), fmt(phys.mass_ev)]
        sys.stdout.write(",".join(head) + "\n" + ",".join(vals) + "\n")
    else:
        extra = "".join(f" {k}={fmt(v)}" for k, v in model.params.items())
        print(f"model={model.name}{extra} mu={fmt(mu)} e={fmt(coeff.e)} err={fmt(coeff.err)}")
        if phys is not None:
            print(f"energy={fmt(phys.energy)} {phys.unit} length={fmt(phys.length)} m "
                  f"area={fmt(phys.area)} m^2 mass={fmt(phys.mass_ev)} eV")
            print(f"constants: {phys.constants}")
    return status


def parse_range(text: str) -> list[float]:
    try:
        lo, hi, step = (float(s) for s in text.split(":"))
    except ValueError:
        raise UsageError(f"--mu-range expects lo:hi:step, got {text!r}") from None
    if not step > 0:
        raise UsageError("--mu-range step must be > 0")
    if hi < lo:
        raise UsageError("--mu-range needs lo <= hi")
    n = math.floor((hi - lo) / step + 1e-9) + 1
    return [float(fmt(lo + i * step)) for i in range(n)]


def _scan_point(model, mu, spec, oracle):
    flagged = False
    try:
        c = casimir_coefficient(model, mu, spec)
        e, err = c.e, c.err
    except ToleranceNotMet as exc:
        e, err, flagged = exc.value, exc.error, True
    oe = od = None
    if oracle:
        oe = series_coefficient(model, mu)
        od = abs(e - oe) / abs(oe) if oe != 0 else abs(e - oe)
    return (mu, e, err, oe, od), flagged


def scan(model, mus, spec, oracle=False, jobs=1) -> ScanResult:
    mus = sorted(mus)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan_point, [model] * len(mus), mus, [spec] * len(mus), [oracle] * len(mus)))
    else:
        results = [_scan_point(model, mu, spec, oracle) for mu in mus]
    meta = {
        "model": model.name, "params": model.params, "rel_tol": spec.rel_tol,
        "abs_tol": spec.abs_tol, "constants": CONSTANTS_PROVENANCE, "version": __version__,
    }
    return ScanResult([r for r, _ in results], meta, [f for _, f in results])


def cmd_scan(args) -> int:
    model = _model_from_args(args)
    spec = _spec(args)
    if args.mu_range is None:
        raise UsageError("--mu-range is required")
    mus = parse_range(args.mu_range)
    if mus[0] < 0:
        raise UsageError("mu must be ≥ 0")
    if args.oracle and model.constant_reflection is None:
        raise UsageError(f"--oracle needs a constant reflection kernel; {model.name!r} has none")
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    result = scan(model, mus, spec, args.oracle, args.jobs)
    sys.stdout.write(result.to_json() if args.format == "json" else result.to_csv())
    if any(result.flagged):
        print("warning: tolerance not met at mu = "
              + ", ".join(fmt(r[0]) for r, f in zip(result.rows, result.flagged) if f), file=sys.stderr)
        return 2
    return 0


def cmd_roots(args) -> int:
    model = _model_from_args(args)
    mu = args.mu if args.mu is not None else 0.0
    _check_mu(mu)
    if not args.cutoff > 0:
        raise UsageError("--cutoff must be positive")
    roots = find_roots(model, args.cutoff, tol=args.root_tol, mu=mu)
    res = residuals(model, roots, mu)
    lines = [ROOTS_HEADER]
    for i, (root, (lo, hi), r) in enumerate(zip(roots.roots, roots.brackets, res), 1):
        lines.append(",".join((str(i), fmt(lo), fmt(hi), fmt(root), fmt(r))))
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def cmd_check(args) -> int:
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose all, {', '.join(SUITES)}")
    results = run_suite(args.suite)
    for r in results:
        print(r.line())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 2


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="platecasimir", description="Casimir energies between flat plates.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    common = _Parser(add_help=False)
    common.add_argument("--config", help="key=value file with defaults; flags override it")
    common.add_argument("--model", default="mit", help=f"one of: {', '.join(CATALOG)}")
    common.add_argument("--beta1", type=float, default=0.0, help="Robin length at the first plate, units of l")
    common.add_argument("--beta2", type=float, default=0.0, help="Robin length at the second plate, units of l")
    common.add_argument("--tol", type=float, default=1e-10, help="relative quadrature tolerance")

    p = sub.add_parser("compute", parents=[common], help="single energy coefficient")
    p.add_argument("--mu", type=float, help="dimensionless mass m*l")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--physical", action="store_true", help="also report E for given l, area and mass")
    p.add_argument("--length", type=float, help="plate separation in m")
    p.add_argument("--area", type=float, help="plate area in m^2")
    p.add_argument("--mass", type=float, help="field mass in eV")
    p.add_argument("--unit", choices=("J", "eV"), default="J")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("scan", parents=[common], help="tabulate e(mu)")
    p.add_argument("--mu-range", help="lo:hi:step")
    p.add_argument("--oracle", action="store_true", help="add the series cross-check (constant-R models)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("roots", parents=[common], help="eigencondition roots as CSV")
    p.add_argument("--mu", type=float)
    p.add_argument("--cutoff", type=float, default=10 * math.pi)
    p.add_argument("--root-tol", type=float, default=1e-12)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("check", help="run self-check suites")
    p.add_argument("--suite", default="all", help=f"all, {', '.join(SUITES)}")
    p.set_defaults(func=cmd_check)
    return parser


def _apply_config(parser, argv):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    values = read_config(known.config)
    choices = parser._subparsers._group_actions[0].choices
    command = next((a for a in argv if a in choices), None)
    if command is None:
        return
    sp = choices[command]
    valid = {a.dest for a in sp._actions} - {"help", "config"}
    unknown = set(values) - valid
    if unknown:
        raise UsageError(f"unknown config keys for {command}: {', '.join(sorted(unknown))}")
    for action in sp._actions:
        if isinstance(action, argparse._StoreTrueAction) and action.dest in values:
            flag = values[action.dest].lower()
            if flag not in ("true", "false", "yes", "no", "1", "0"):
                raise UsageError(f"config key {action.dest} expects true or false")
            values[action.dest] = flag in ("true", "yes", "1")
    # argparse applies ``type`` to string defaults
    sp.set_defaults(**values)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"platecasimir: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"platecasimir: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
