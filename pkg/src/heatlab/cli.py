"""Command-line front end.

Commands:
    curve    compute a heat-content (or heat-loss) curve, write CSV/JSON
    verify   run one theorem's verification suite, write JSON/text report
    cm       compute the Theorem 2 outer-radius threshold c_m
    report   run the whole desk-scale battery

Exit codes: 0 pass/success, 1 verified violation or failed theorem check,
2 inconclusive (confidence interval too wide), 64 usage error, 65 data or
parse error.  All outputs are deterministic for a fixed seed, independent of
HEATLAB_THREADS.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import theorems
from ._backend import backend_name
from .errors import ConfigurationError, GeometryError, HeatlabError, SpecParseError
from .geometry import Arc, Ball, DisjointUnion, Domain, domain_from_dict
from .heat_content import (
    ConstantOne,
    Curve,
    Estimate,
    IndicatorOf,
    InitialDatum,
    RadialPower,
    heat_content_curve,
    heat_loss_curve,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 64
EXIT_DATA = 65


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _fmt17(v: float) -> str:
    """17 significant digits: lossless round-trip of binary64 values."""
    return format(float(v), ".17g")


def write_curve_csv(curve: Curve, fh) -> None:
    fh.write("t,value,std_error,n,method\n")
    for t, p in zip(curve.ts, curve.points):
        fh.write(
            f"{_fmt17(t)},{_fmt17(p.value)},{_fmt17(p.std_error)},{p.n},{p.method}\n"
        )


def read_curve_csv(fh) -> Curve:
    header = fh.readline().strip()
    if header != "t,value,std_error,n,method":
        raise SpecParseError(f"unexpected CSV header {header!r}")
    ts = []
    points = []
    for line in fh:
        line = line.strip()
        if not line:
            continue
        t, v, se, n, method = line.split(",")
        ts.append(float(t))
        points.append(Estimate(float(v), float(se), int(n), method))
    return Curve(tuple(ts), tuple(points))


def curve_json_dict(curve: Curve) -> dict:
    return {
        "label": curve.label,
        "seed": curve.seed,
        "points": [
            {
                "t": t,
                "value": p.value,
                "std_error": p.std_error,
                "n": p.n,
                "method": p.method,
            }
            for t, p in zip(curve.ts, curve.points)
        ],
    }


def parse_t_grid(spec: str, include_zero: bool = False):
    """Grid specs lin:a:b:n (inclusive endpoints) and log:a:b:n (multiplicative)."""
    parts = spec.split(":")
    if len(parts) != 4 or parts[0] not in ("lin", "log"):
        raise _UsageError(f"t grid must be lin:a:b:n or log:a:b:n, got {spec!r}")
    try:
        a, b = float(parts[1]), float(parts[2])
        n = int(parts[3])
    except ValueError as exc:
        raise _UsageError(f"bad t grid {spec!r}: {exc}") from None
    if n < 1 or b <= a:
        raise _UsageError(f"t grid needs n >= 1 and a < b, got {spec!r}")
    if parts[0] == "log":
        if a <= 0:
            raise _UsageError("log grids need a > 0 (prepend t=0 with --include-zero)")
        ts = np.geomspace(a, b, n)
    else:
        if a < 0:
            raise _UsageError("times must be >= 0")
        ts = np.linspace(a, b, n)
    ts = list(map(float, ts))
    if include_zero and ts[0] > 0.0:
        ts = [0.0] + ts
    return ts


def datum_from_dict(d, domain: Domain) -> InitialDatum:
    if d is None:
        return ConstantOne()
    if not isinstance(d, dict) or len(d) != 1:
        raise SpecParseError(f"datum must be a single-key object, got {d!r}")
    key, val = next(iter(d.items()))
    if key == "one":
        if val not in ({}, True, None):
            raise SpecParseError("datum 'one' takes no parameters")
        return ConstantOne()
    if key == "indicator":
        if not isinstance(val, dict) or set(val) != {"part"}:
            raise SpecParseError("datum 'indicator' needs exactly the key 'part'")
        if not isinstance(domain, DisjointUnion):
            raise SpecParseError("indicator datum needs a union domain")
        idx = val["part"]
        if not isinstance(idx, int) or not 0 <= idx < len(domain.parts):
            raise SpecParseError(f"indicator part index {idx!r} out of range")
        return IndicatorOf(domain.parts[idx])
    if key == "radial_power":
        if not isinstance(val, dict) or set(val) != {"alpha"}:
            raise SpecParseError("datum 'radial_power' needs exactly the key 'alpha'")
        return RadialPower(float(val["alpha"]))
    raise SpecParseError(f"unknown datum key {key!r}")


def parse_domain_spec(text: str):
    """Parse the JSON domain/datum spec; rejects unknown keys."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")
    try:
        domain = domain_from_dict(data)
        datum = datum_from_dict(data.get("datum"), domain)
        datum.validate(domain)
    except (GeometryError, ConfigurationError) as exc:
        raise SpecParseError(str(exc)) from exc
    return domain, datum


def _load_domain(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SpecParseError(f"cannot read domain spec {path!r}: {exc}") from exc
    return parse_domain_spec(text)


def _write_json(obj, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def build_parser() -> _Parser:
    p = _Parser(prog="heatlab", description=__doc__)
    p.add_argument("--version", action="store_true", help="print version and exit")
    sub = p.add_subparsers(dest="command")

    c = sub.add_parser("curve", help="compute a heat content/loss curve")
    c.add_argument("--domain", required=True, help="domain spec JSON file")
    c.add_argument("--t", required=True, help="t grid, lin:a:b:n or log:a:b:n")
    c.add_argument("--include-zero", action="store_true", help="prepend t=0")
    c.add_argument(
        "--method",
        default="auto",
        choices=["auto", "exact1d", "box_exact", "radial_quad", "eigensum", "circle_quad", "mc", "mc_semigroup"],
    )
    c.add_argument("--quantity", default="content", choices=["content", "loss"])
    c.add_argument("--samples", type=int, default=1_000_000)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--tol", type=float, default=1e-10)
    c.add_argument("--out", help="CSV output path (default: stdout)")
    c.add_argument("--json", dest="json_out", help="JSON mirror output path")

    v = sub.add_parser("verify", help="run a theorem verification")
    v.add_argument("--theorem", required=True, type=int, choices=[1, 2, 3, 4, 5])
    v.add_argument("--domain", help="domain spec JSON file (theorems 1 and 5)")
    v.add_argument("--t", help="t grid override")
    v.add_argument("--method", default="auto")
    v.add_argument("--samples", type=int, default=1_000_000)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--m", type=int, default=2, help="dimension (theorems 2, 3, 4)")
    v.add_argument("--alpha", type=float, default=2.0, help="datum exponent (theorem 4)")
    v.add_argument("--delta", type=float, default=0.05, help="ball radius (theorem 3)")
    v.add_argument("--c", type=float, help="outer radius override (theorem 2)")
    v.add_argument("--theta", type=float, help="probe time override (theorem 2)")
    v.add_argument("--z", type=float, help="sigma threshold override")
    v.add_argument("--tol", type=float, help="quadrature tolerance override")
    v.add_argument("--out", help="JSON report path")
    v.add_argument("--text", help="text report path (default: stdout)")

    g = sub.add_parser("cm", help="Theorem 2 threshold c_m")
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--out", help="JSON output path (threshold + objective curve)")

    r = sub.add_parser("report", help="run the full desk-scale battery")
    r.add_argument("--samples", type=int, default=1_000_000)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--out", help="combined JSON report path")
    r.add_argument("--text", help="combined text report path (default: stdout)")
    return p


def _cmd_curve(args) -> int:
    domain, datum = _load_domain(args.domain)
    ts = parse_t_grid(args.t, include_zero=args.include_zero)
    if args.samples < 1000:
        raise _UsageError("Monte Carlo needs --samples >= 1000")
    build = heat_loss_curve if args.quantity == "loss" else heat_content_curve
    curve = build(
        domain,
        datum,
        ts,
        args.method,
        samples=args.samples,
        seed=args.seed,
        tol=args.tol,
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            write_curve_csv(curve, fh)
    else:
        write_curve_csv(curve, sys.stdout)
    if args.json_out:
        _write_json(curve_json_dict(curve), args.json_out)
    return EXIT_PASS


def _cmd_verify(args) -> int:
    kw = {}
    if args.theorem in (1, 5) and args.domain:
        domain, datum = _load_domain(args.domain)
        if not isinstance(datum, ConstantOne):
            raise _UsageError("theorem verification uses psi = 1; drop the datum block")
    elif args.theorem == 1:
        raise _UsageError("verify --theorem 1 needs --domain")
    else:
        domain = None
    t_grid = parse_t_grid(args.t) if args.t else None
    if args.theorem == 1:
        if args.tol:
            kw["tol"] = args.tol
        if args.z:
            kw["z"] = args.z
        report = theorems.verify_thm1(
            domain, t_grid, args.method, samples=args.samples, seed=args.seed, **kw
        )
    elif args.theorem == 2:
        if args.z:
            kw["z"] = args.z
        report = theorems.verify_thm2(
            args.m, args.c, args.theta, samples=args.samples, seed=args.seed, **kw
        )
    elif args.theorem == 3:
        if args.tol:
            kw["tol"] = args.tol
        report = theorems.verify_thm3(args.delta, args.m, t_grid=t_grid, **kw)
    elif args.theorem == 4:
        if args.tol:
            kw["tol"] = args.tol
        report = theorems.verify_thm4(args.alpha, args.m, t_grid=t_grid, **kw)
    else:
        if args.tol:
            kw["tol"] = args.tol
        report = theorems.verify_thm5(domain if args.domain else None, t_grid, **kw)
    if args.out:
        _write_json(report.to_json_dict(), args.out)
    if args.text:
        with open(args.text, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(report.to_text())
    if not args.out and not args.text:
        sys.stdout.write(report.to_text())
    return {"pass": EXIT_PASS, "fail": EXIT_FAIL}.get(report.verdict, EXIT_INCONCLUSIVE)


def _cmd_cm(args) -> int:
    thr = theorems.cm_threshold(args.m)
    bound = 16.0 * math.log(8.0 * math.pi)
    print(f"theta* = {_fmt17(thr.theta_star)}")
    print(f"c_{args.m} = {_fmt17(thr.c_m)}")
    ok = thr.c_m**2 >= bound
    print(
        f"c_{args.m}^2 = {_fmt17(thr.c_m ** 2)} >= 16 log(8 pi) = "
        f"{_fmt17(bound)}: {'OK' if ok else 'VIOLATED'}"
    )
    if args.out:
        _write_json(
            {
                "m": args.m,
                "theta_star": thr.theta_star,
                "c_m": thr.c_m,
                "objective_curve": {
                    "theta": [float(x) for x in thr.curve_thetas],
                    "value": [float(x) for x in thr.curve_values],
                },
            },
            args.out,
        )
    return EXIT_PASS if ok else EXIT_FAIL


def _cmd_report(args) -> int:
    reports = theorems.run_all(samples=args.samples, seed=args.seed)
    if args.out:
        _write_json({"reports": [r.to_json_dict() for r in reports]}, args.out)
    text = "\n".join(r.to_text() for r in reports)
    if args.text:
        with open(args.text, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    elif not args.out:
        sys.stdout.write(text)
    verdicts = [r.verdict for r in reports]
    if "fail" in verdicts:
        return EXIT_FAIL
    if "inconclusive" in verdicts:
        return EXIT_INCONCLUSIVE
    return EXIT_PASS


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.version:
            from . import __version__

            print(f"heatlab {__version__} (backend: {backend_name()})")
            return EXIT_PASS
        if not args.command:
            raise _UsageError("a command is required (curve, verify, cm, report)")
        if args.command == "curve":
            return _cmd_curve(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "cm":
            return _cmd_cm(args)
        return _cmd_report(args)
    except _UsageError as exc:
        print(f"heatlab: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SpecParseError as exc:
        print(f"heatlab: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except HeatlabError as exc:
        print(f"heatlab: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
