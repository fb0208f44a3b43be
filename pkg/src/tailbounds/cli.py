"""Command-line surface: bounds, witnesses, verification, sweeps, capability.

Exit codes are part of the public contract:

    0  success
    2  invalid input (intervals, moments, counts, flags)
    3  parameters outside every applicable theorem's range
    4  query shape undefined for the class (or oracle/class mismatch)
    5  malformed data file
    6  verification failure (oracle exceeded a bound, witness check failed)
    7  no attaining distribution exists for the request
"""

import argparse
import csv
import json
import math
import sys

from . import __version__
from .bounds import (
    DistributionClass,
    IntervalSpec,
    bound,
    bound_all_two_sided,
    bound_gauss_two_sided,
    bound_symmetric_two_sided,
)
from .capability import CapabilityInput, capability_table, from_samples, read_csv_column
from .config import Config, load_config
from .errors import (
    DataError,
    InvalidClassQuery,
    InvalidCount,
    InvalidInterval,
    InvalidMoment,
    InvalidParameter,
    NoWitness,
    OracleInconclusive,
    OracleViolation,
    OutOfTheoremRange,
    TailBoundsError,
)
from .extremal import extremal_for
from .mixture import (
    check_khintchine_unimodal,
    check_symmetric,
    mixture_mean,
    mixture_sample,
    mixture_second_moment,
    mixture_tail,
    mixture_variance,
    to_json_obj,
)
from .oracles import (
    GridSpec,
    discrete_atoms_oracle,
    khintchine_grid_oracle,
    monte_carlo_tail,
    symmetric_lp_oracle,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_RANGE = 3
EXIT_CLASS = 4
EXIT_DATA = 5
EXIT_ORACLE = 6
EXIT_NO_WITNESS = 7

_EXIT_CODES = (
    (OutOfTheoremRange, EXIT_RANGE),
    (InvalidClassQuery, EXIT_CLASS),
    (DataError, EXIT_DATA),
    (OracleViolation, EXIT_ORACLE),
    (NoWitness, EXIT_NO_WITNESS),
    (InvalidInterval, EXIT_INPUT),
    (InvalidMoment, EXIT_INPUT),
    (InvalidParameter, EXIT_INPUT),
    (InvalidCount, EXIT_INPUT),
    (OracleInconclusive, EXIT_INPUT),
)

CLASS_TAGS = [c.value for c in DistributionClass]


def _fmt(x, digits):
    """Render a float; None for digits means shortest round-trip form."""
    if x is None:
        return ""
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if digits is None:
        return repr(x)
    return format(x, f".{digits}g")


def _jnum(x, digits):
    """Float for JSON output: inf maps to null, digits trims precision."""
    if x is None:
        return None
    x = float(x)
    if math.isinf(x):
        return None
    if digits is None:
        return x
    return float(format(x, f".{digits}g"))


def _emit_json(obj):
    print(json.dumps(obj))


def _interval_from(args, require_side_flag=False):
    if getattr(args, "one_sided", False) and args.u is not None:
        raise InvalidInterval("--u and --one-sided are mutually exclusive")
    if args.u is not None:
        return IntervalSpec.two_sided(args.u, args.v)
    if require_side_flag and not getattr(args, "one_sided", False):
        raise InvalidInterval("pass --u U for a two-sided query or --one-sided")
    return IntervalSpec.one_sided(args.v)


def _grid_from(cfg: Config) -> GridSpec:
    return GridSpec(mode_steps=cfg.mode_steps, atom_steps=cfg.atom_steps,
                    rounds=cfg.refine_rounds)


def cmd_bound(args, cfg):
    dist_class = DistributionClass.from_tag(args.dist_class)
    interval = _interval_from(args, require_side_flag=True)
    try:
        tb = bound(dist_class, interval)
    except OutOfTheoremRange as exc:
        fallback = bound(DistributionClass.ALL, interval)
        raise OutOfTheoremRange(
            f"{exc} [class-all bound {_fmt(fallback.value, cfg.digits)}: "
            "not sharp for requested class]"
        ) from exc
    if args.json:
        _emit_json({
            "class": dist_class.value,
            "u": _jnum(interval.u, cfg.digits),
            "v": _jnum(interval.v, cfg.digits),
            "value": _jnum(tb.value, cfg.digits),
            "regime": tb.regime,
            "theorem": tb.theorem,
            "conditions_ok": tb.conditions_ok,
        })
    else:
        event = (f"P(Z >= {_fmt(interval.v, cfg.digits)})" if interval.is_one_sided
                 else f"P(Z <= -{_fmt(interval.u, cfg.digits)} or "
                      f"Z >= {_fmt(interval.v, cfg.digits)})")
        print(f"{event} <= {_fmt(tb.value, cfg.digits)}   [{tb.regime}; {tb.theorem}]")
        if tb.note:
            print(f"note: {tb.note}")
    return EXIT_OK


def cmd_capability(args, cfg):
    if args.data is not None:
        if args.mean is not None or args.sd is not None:
            raise InvalidInterval("--data replaces --mean/--sd")
        if not args.column:
            raise InvalidInterval("--data needs --column NAME")
        values = read_csv_column(args.data, args.column)
        inp = from_samples(values, args.lsl, args.usl)
    else:
        if args.mean is None or args.sd is None:
            raise InvalidInterval("pass either --mean and --sd, or --data and --column")
        inp = CapabilityInput(lsl=args.lsl, usl=args.usl, mean=args.mean, sd=args.sd)
    rows = capability_table(inp)
    if args.json:
        _emit_json({
            "lsl": _jnum(inp.lsl, cfg.digits),
            "usl": _jnum(inp.usl, cfg.digits),
            "mean": _jnum(inp.mean, cfg.digits),
            "sd": _jnum(inp.sd, cfg.digits),
            "n": inp.n,
            "u": _jnum(inp.u, cfg.digits),
            "v": _jnum(inp.v, cfg.digits),
            "rows": [
                {
                    "class": r.dist_class.value,
                    "value": _jnum(r.tail.value, cfg.digits) if r.tail else None,
                    "regime": r.tail.regime if r.tail else "out-of-range",
                    "ppm": r.ppm,
                }
                for r in rows
            ],
        })
        return EXIT_OK
    print(f"mean={_fmt(inp.mean, cfg.digits)} sd={_fmt(inp.sd, cfg.digits)} "
          f"u={_fmt(inp.u, cfg.digits)} v={_fmt(inp.v, cfg.digits)}"
          + (f" n={inp.n}" if inp.n else ""))
    print(f"{'class':<14} {'worst-case fraction':<22} {'ppm':>10}")
    for r in rows:
        if r.tail is None:
            print(f"{r.dist_class.value:<14} {'out of range':<22} {'':>10}")
        else:
            print(f"{r.dist_class.value:<14} {_fmt(r.tail.value, cfg.digits):<22} {r.ppm:>10}")
    return EXIT_OK


def _witness_checks(witness, cfg):
    """Feasibility and sharpness checks for a constructed witness."""
    d = witness.distribution
    tol = cfg.feasibility_tol
    checks = []
    if witness.dist_class is DistributionClass.CONCAVE_HALF_LINE:
        m2 = mixture_second_moment(d)
        checks.append(("second_moment_one", abs(m2 - 1.0) <= tol, m2))
        support_lo = min([x for x, _ in d.atoms] + [l for l, _, _ in d.segments])
        checks.append(("support_nonnegative", support_lo >= -tol, support_lo))
    else:
        mean = mixture_mean(d)
        var = mixture_variance(d)
        checks.append(("mean_zero", abs(mean) <= tol, mean))
        checks.append(("variance_one", abs(var - 1.0) <= tol, var))
    if witness.mode is not None:
        ok = check_khintchine_unimodal(d, witness.mode, tol)
        checks.append(("unimodal_at_mode", ok, witness.mode))
    if witness.dist_class in (DistributionClass.SYMMETRIC, DistributionClass.SYMMETRIC_UNIMODAL):
        checks.append(("symmetric", check_symmetric(d, tol), 0.0))
    tail = mixture_tail(d, witness.interval.u, witness.interval.v)
    checks.append(("tail_attains_bound", abs(tail - witness.claimed_value) <= tol, tail))
    return checks


_GRID_CLASSES = (DistributionClass.UNIMODAL, DistributionClass.UNIMODAL_MODE_EQ_MEAN,
                 DistributionClass.SYMMETRIC_UNIMODAL)
_ATOM_CLASSES = (DistributionClass.ALL, DistributionClass.SYMMETRIC)


def cmd_verify(args, cfg):
    dist_class = DistributionClass.from_tag(args.dist_class)
    interval = _interval_from(args)
    tb = bound(dist_class, interval)
    grid = _grid_from(cfg)
    requested = args.oracle
    failures = []
    report_objs = []
    check_objs = []

    witness = extremal_for(dist_class, interval)
    for name, ok, value in _witness_checks(witness, cfg):
        check_objs.append({"check": name, "ok": bool(ok), "value": value})
        if not ok:
            failures.append(f"witness check {name} failed ({value!r})")

    def applicable(name):
        return requested is None or requested == name

    if applicable("lp") and dist_class is DistributionClass.SYMMETRIC \
            and not interval.is_one_sided:
        uu, vv = max(interval.u, interval.v), min(interval.u, interval.v)
        rep = symmetric_lp_oracle(uu, vv)
        report_objs.append(rep)
        if abs(rep.gap) > cfg.formula_tol:
            failures.append(f"lp oracle disagrees with the dispatch by {rep.gap!r}")
    elif requested == "lp":
        raise InvalidClassQuery("oracle lp applies to two-sided symmetric queries only")

    if applicable("grid") and dist_class in _GRID_CLASSES:
        rep = khintchine_grid_oracle(dist_class, interval.u, interval.v, grid)
        report_objs.append(rep)
    elif requested == "grid":
        raise InvalidClassQuery("oracle grid applies to the unimodal classes")

    if applicable("atoms") and dist_class in _ATOM_CLASSES:
        rep = discrete_atoms_oracle(dist_class, interval.u, interval.v, grid)
        report_objs.append(rep)
    elif requested == "atoms":
        raise InvalidClassQuery("oracle atoms applies to classes all/symmetric")

    if applicable("mc"):
        n = args.mc_n or cfg.mc_n
        seed = cfg.mc_seed if args.seed is None else args.seed
        est, se = monte_carlo_tail(witness.distribution, interval.u, interval.v, n, seed)
        ok = abs(est - tb.value) <= 4.0 * se or se == 0.0
        check_objs.append({"check": "monte_carlo_within_4se", "ok": bool(ok),
                           "value": est, "se": se, "n": n, "seed": seed})
        if not ok:
            failures.append(f"monte carlo estimate {est!r} beyond 4 SE of {tb.value!r}")

    for rep in report_objs:
        if rep.best_value > rep.analytic_bound + cfg.oracle_slack:
            failures.append(
                f"{rep.oracle} oracle exceeded the bound: "
                f"{rep.best_value!r} > {rep.analytic_bound!r}"
            )

    if args.json:
        _emit_json({
            "class": dist_class.value,
            "u": _jnum(interval.u, cfg.digits),
            "v": _jnum(interval.v, cfg.digits),
            "analytic": _jnum(tb.value, cfg.digits),
            "regime": tb.regime,
            "checks": check_objs,
            "reports": [
                {
                    "oracle": r.oracle,
                    "best_value": _jnum(r.best_value, cfg.digits),
                    "analytic_bound": _jnum(r.analytic_bound, cfg.digits),
                    "gap": _jnum(r.gap, cfg.digits),
                    "witness_params": [_jnum(p, cfg.digits) for p in r.witness_params],
                }
                for r in report_objs
            ],
            "ok": not failures,
        })
    else:
        print(f"analytic bound {_fmt(tb.value, cfg.digits)}   [{tb.regime}; {tb.theorem}]")
        for c in check_objs:
            state = "ok" if c["ok"] else "FAIL"
            print(f"check {c['check']:<24} {state}  value={_fmt(c.get('value'), cfg.digits)}")
        for r in report_objs:
            print(f"oracle {r.oracle:<6} best={_fmt(r.best_value, cfg.digits)} "
                  f"gap={_fmt(r.gap, cfg.digits)} params={[round(p, 6) for p in r.witness_params]}")
    if failures:
        raise OracleViolation("; ".join(failures))
    return EXIT_OK


def cmd_sweep(args, cfg):
    dist_class = DistributionClass.from_tag(args.dist_class)
    if args.v_steps < 1:
        raise InvalidCount(f"--v-steps must be >= 1, got {args.v_steps}")
    if not (args.v_from > 0 and args.v_to >= args.v_from):
        raise InvalidInterval("need 0 < --v-from <= --v-to")
    mode = args.u_mode
    ratio = None
    if mode.startswith("ratio:"):
        try:
            ratio = float(mode.split(":", 1)[1])
        except ValueError:
            raise InvalidInterval(f"bad --u-mode {args.u_mode!r}: ratio must be a number") from None
        if not ratio > 0:
            raise InvalidInterval(f"ratio must be positive, got {ratio}")
        mode = "ratio"
    elif mode not in ("equal", "inf"):
        raise InvalidInterval(f"unknown --u-mode {args.u_mode!r}")

    if args.v_steps == 1:
        vs = [args.v_from]
    else:
        step = (args.v_to - args.v_from) / (args.v_steps - 1)
        vs = [args.v_from + i * step for i in range(args.v_steps)]

    if args.out:
        try:
            out = open(args.out, "w", newline="", encoding="utf-8")
        except OSError as exc:
            raise DataError(f"cannot write {args.out!r}: {exc}") from exc
    else:
        out = sys.stdout
    try:
        writer = csv.writer(out)
        writer.writerow(["class", "u", "v", "value", "regime"])
        for v in vs:
            u = math.inf if mode == "inf" else (v if mode == "equal" else ratio * v)
            interval = IntervalSpec(u=u, v=v)
            try:
                tb = bound(dist_class, interval)
                writer.writerow([dist_class.value, _fmt(u, cfg.digits), _fmt(v, cfg.digits),
                                 _fmt(tb.value, cfg.digits), tb.regime])
            except OutOfTheoremRange:
                writer.writerow([dist_class.value, _fmt(u, cfg.digits), _fmt(v, cfg.digits),
                                 "", "out-of-range"])
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def _table1_rows(u, v):
    """The three summary columns per class at distances (u, v)."""

    def cell(fn, *a):
        try:
            return fn(*a)
        except (OutOfTheoremRange, InvalidClassQuery):
            return "n/a(range)"

    def corollary_abs_unimodal(w):
        if w >= math.sqrt(8.0 / 3.0):
            tb = bound(DistributionClass.UNIMODAL, IntervalSpec.two_sided(w, w))
            return tb
        return "n/a(range)"

    two = IntervalSpec.two_sided(u, v)
    one = IntervalSpec.one_sided(v)
    b = bound
    C = DistributionClass
    return [
        ("all", b(C.ALL, one), bound_all_two_sided(v, v), cell(b, C.ALL, two)),
        ("symmetric", b(C.SYMMETRIC, one), bound_symmetric_two_sided(v, v),
         cell(b, C.SYMMETRIC, two)),
        ("concave [0,inf)", b(C.CONCAVE_HALF_LINE, one), None, None),
        ("unimodal", b(C.UNIMODAL, one), corollary_abs_unimodal(v), cell(b, C.UNIMODAL, two)),
        ("unimodal, mode=mean", cell(b, C.UNIMODAL_MODE_EQ_MEAN, one),
         bound_gauss_two_sided(v), cell(b, C.UNIMODAL_MODE_EQ_MEAN, two)),
        ("symmetric unimodal", b(C.SYMMETRIC_UNIMODAL, one), bound_gauss_two_sided(v),
         cell(b, C.SYMMETRIC_UNIMODAL, two)),
    ]


def cmd_table1(args, cfg):
    v = args.v
    u = v if args.u is None else args.u
    if not (v > 0 and u > 0):
        raise InvalidInterval("distances must be positive")
    rows = _table1_rows(u, v)

    def render(c):
        if c is None:
            return "-"
        if isinstance(c, str):
            return c
        return _fmt(c.value, cfg.digits)

    if args.json:
        def jcell(c):
            if c is None or isinstance(c, str):
                return None
            return _jnum(c.value, cfg.digits)

        _emit_json({
            "u": _jnum(u, cfg.digits),
            "v": _jnum(v, cfg.digits),
            "rows": [
                {"class": name, "one_sided": jcell(c1), "absolute": jcell(c2),
                 "two_sided": jcell(c3)}
                for name, c1, c2, c3 in rows
            ],
        })
        return EXIT_OK
    print(f"u={_fmt(u, cfg.digits)} v={_fmt(v, cfg.digits)}")
    head = f"{'class':<22} {'P(Z>=v)':<22} {'P(|Z|>=v)':<22} {'P(Z<=-u or Z>=v)':<22}"
    print(head)
    for name, c1, c2, c3 in rows:
        print(f"{name:<22} {render(c1):<22} {render(c2):<22} {render(c3):<22}")
    return EXIT_OK


def cmd_extremal(args, cfg):
    dist_class = DistributionClass.from_tag(args.dist_class)
    interval = _interval_from(args)
    witness = extremal_for(dist_class, interval)
    d = witness.distribution
    if args.emit == "json":
        obj = to_json_obj(d)
        if cfg.digits is not None:
            obj = {
                "atoms": [{"x": _jnum(a["x"], cfg.digits), "mass": _jnum(a["mass"], cfg.digits)}
                          for a in obj["atoms"]],
                "segments": [{"left": _jnum(s["left"], cfg.digits),
                              "right": _jnum(s["right"], cfg.digits),
                              "mass": _jnum(s["mass"], cfg.digits)} for s in obj["segments"]],
            }
        _emit_json(obj)
    elif args.emit == "samples":
        if args.n is None or args.n < 0:
            raise InvalidCount("--emit samples needs --n >= 0")
        seed = cfg.mc_seed if args.seed is None else args.seed
        for x in mixture_sample(d, args.n, seed):
            print(_fmt(x, cfg.digits))
    else:
        print(f"class={dist_class.value} u={_fmt(interval.u, cfg.digits)} "
              f"v={_fmt(interval.v, cfg.digits)} regime={witness.regime}")
        print(f"attains {_fmt(witness.claimed_value, cfg.digits)}"
              + (f" with mode {_fmt(witness.mode, cfg.digits)}" if witness.mode is not None
                 else ""))
        for x, m in d.atoms:
            print(f"atom    x={_fmt(x, cfg.digits):<24} mass={_fmt(m, cfg.digits)}")
        for left, right, m in d.segments:
            print(f"segment [{_fmt(left, cfg.digits)}, {_fmt(right, cfg.digits)}] "
                  f"mass={_fmt(m, cfg.digits)}")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tailbounds",
        description="Sharp tail bounds for standardized random variables, "
                    "their extremal distributions, and verification oracles.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="path to a JSON config file (or set $TAILBOUNDS_CONFIG)")
    parser.add_argument("--digits", type=int, help="significant digits for rendered numbers")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_class(p):
        p.add_argument("--class", dest="dist_class", required=True, choices=CLASS_TAGS)

    def add_interval(p, side_flag=False):
        p.add_argument("--v", type=float, required=True,
                       help="distance above the mean, in SDs")
        p.add_argument("--u", type=float, help="distance below the mean, in SDs")
        if side_flag:
            p.add_argument("--one-sided", action="store_true",
                           help="query P(Z >= v) only (u = inf)")

    p = sub.add_parser("bound", help="evaluate a sharp tail bound")
    add_class(p)
    add_interval(p, side_flag=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("capability", help="worst-case nonconforming fractions per class")
    p.add_argument("--lsl", type=float, required=True)
    p.add_argument("--usl", type=float, required=True)
    p.add_argument("--mean", type=float)
    p.add_argument("--sd", type=float)
    p.add_argument("--data", help="CSV file with a header row")
    p.add_argument("--column", help="column name in --data")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_capability)

    p = sub.add_parser("verify", help="run oracles and witness checks against a bound")
    add_class(p)
    add_interval(p, side_flag=True)
    p.add_argument("--oracle", choices=["lp", "grid", "atoms", "mc"])
    p.add_argument("--mc-n", type=int, dest="mc_n")
    p.add_argument("--seed", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="CSV of bound values over a range of v")
    add_class(p)
    p.add_argument("--v-from", type=float, required=True, dest="v_from")
    p.add_argument("--v-to", type=float, required=True, dest="v_to")
    p.add_argument("--v-steps", type=int, required=True, dest="v_steps")
    p.add_argument("--u-mode", default="equal", dest="u_mode",
                   help="equal | ratio:R | inf (default equal)")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("table1", help="overview of all classes at one interval")
    p.add_argument("--v", type=float, required=True)
    p.add_argument("--u", type=float)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("extremal", help="emit the equality-attaining distribution")
    add_class(p)
    add_interval(p, side_flag=True)
    p.add_argument("--emit", choices=["summary", "json", "samples"], default="summary")
    p.add_argument("--n", type=int, help="sample count for --emit samples")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_extremal)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.digits is not None:
            cfg.digits = args.digits
        return args.func(args, cfg)
    except TailBoundsError as exc:
        for klass, code in _EXIT_CODES:
            if isinstance(exc, klass):
                break
        else:  # pragma: no cover
            code = EXIT_INPUT
        line = getattr(exc, "line", None)
        where = f" (line {line})" if line is not None else ""
        print(f"error: {exc}{where}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
