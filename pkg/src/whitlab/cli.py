"""Command line front end: evaluators, oracles and the verification suites.

Output is JSON (one object per line for suites); --table prints aligned key/value rows.
Exit status: 0 ok, 1 a checked property failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from .errors import WhitlabError
from .exp_sums import airy_bound, airy_eval, cubic_integral, cubic_integral_brute, gauss_1d, gauss_1d_brute
from .padic_core import INF, PadicScalar
from .whittaker import CosetRep, balanced_direct, balanced_eval, rep_derive, support_profile, whittaker_eval

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
PREC = 40


class UsageError(Exception):
    pass


# config file


def read_config(path: str) -> dict:
    """key = value lines; '#' starts a comment; keys use the long flag names."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            k, v = (s.strip() for s in line.split("=", 1))
            out[k.replace("-", "_")] = v
    return out


def workers_from_env() -> int:
    raw = os.environ.get("WHITLAB_WORKERS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"WHITLAB_WORKERS must be an integer, got {raw!r}")


# argument helpers


def _gamma(s: str):
    if s.lower() in ("inf", "infinity", "oo"):
        return INF
    return int(s)


def _scalar(p: int, args, prefix: str = "y") -> PadicScalar:
    raw = getattr(args, prefix, None)
    if raw is not None:
        return PadicScalar.from_rational(p, Fraction(raw), args.precision)
    v = getattr(args, f"v{prefix}", None)
    if v is None:
        raise UsageError(f"give --{prefix} or --v{prefix}")
    u = getattr(args, f"unit_{prefix}", 1)
    if u % p == 0:
        raise UsageError("unit part must be prime to p")
    return PadicScalar(p, v, u, args.precision)


def _spec(args):
    kw = {}
    if args.airy_variant:
        kw["airy_U_variant"] = args.airy_variant
    if args.kind in ("split", "principal"):
        if args.n % 2:
            raise UsageError("split representations have even conductor")
        return rep_derive("split", args.p, b0=args.b0, a_xi=args.n // 2, **kw)
    if args.kind == "unramified":
        if args.n % 2:
            raise UsageError("unramified dihedral representations have even conductor")
        return rep_derive("unramified", args.p, b0=args.b0, a_xi=args.n // 2, **kw)
    if args.n % 2 == 0:
        raise UsageError("ramified dihedral representations have odd conductor")
    return rep_derive("ramified", args.p, b0=args.b0, a_xi=args.n - 1, **kw)


def _add_rep(sp):
    sp.add_argument("--p", type=int, default=5)
    sp.add_argument("--n", type=int, default=8)
    sp.add_argument("--kind", choices=("split", "principal", "unramified", "ramified"), default="split")
    sp.add_argument("--b0", type=int, default=1)
    sp.add_argument("--airy-variant", default=None)


def _add_y(sp, name: str = "y"):
    sp.add_argument(f"--{name}", default=None, help="rational value")
    sp.add_argument(f"--v{name}", type=int, default=None, help="valuation")
    sp.add_argument(f"--unit-{name}", type=int, default=1, help="unit part")


# commands


def cmd_gauss(args):
    p = args.p
    A = PadicScalar.from_int(p, args.A, args.precision)
    if not A.is_unit():
        raise UsageError("A must be a unit")
    B = PadicScalar.from_rational(p, Fraction(args.B), args.precision)
    closed = gauss_1d(A, args.rho, B)
    brute = gauss_1d_brute(A, args.rho, B)
    return {"p": p, "A": args.A, "rho": args.rho, "B": args.B, "closed_form": closed.to_json(),
            "brute_force": brute.to_json(), "match": closed == brute}, closed == brute


def _ab(args):
    p = args.p
    if args.unit_a % p == 0 or (args.unit_b and args.unit_b % p == 0):
        raise UsageError("unit parts must be prime to p")
    a = PadicScalar(p, args.va, args.unit_a, args.precision)
    b = PadicScalar(p, args.vb, args.unit_b, args.precision) if args.unit_b else PadicScalar.zero(p)
    return p, a, b


def cmd_airy(args):
    p, a, b = _ab(args)
    val = airy_eval(a, b)
    out = {"p": p, "va": args.va, "vb": args.vb, "value": val.to_json(), "exact_zero": val.is_zero()}
    ok = True
    if args.va < 0 and not b.is_zero():
        bound = airy_bound(a, b)
        out["bound"] = bound.to_json()
        ok = abs(val.to_complex()) <= float(bound) + args.tolerance
        out["within_bound"] = ok
    return out, ok


def cmd_cubic(args):
    p, a, b = _ab(args)
    closed = cubic_integral(a, b, fallback=True)
    brute = cubic_integral_brute(a, b)
    return {"p": p, "va": args.va, "vb": args.vb, "closed_form": closed.to_json(),
            "brute_force": brute.to_json(), "match": closed == brute}, closed == brute


def _kappa(args) -> CosetRep:
    try:
        return CosetRep(args.family, args.gamma)
    except ValueError as e:
        raise UsageError(str(e))


def cmd_whittaker(args):
    spec = _spec(args)
    kappa = _kappa(args)
    y = _scalar(spec.p, args)
    w = whittaker_eval(spec, y, kappa)
    prof = support_profile(spec, kappa)
    inside = prof.in_support(y)
    ok = (inside or w.is_zero()) and (not inside or w.magnitude() <= prof.cap(y) + args.tolerance)
    out = {"spec": spec.to_json(), "kappa": str(kappa), "y": str(y.to_fraction()), **w.to_json(),
           "table_support": inside, "table_cap": prof.cap(y), "consistent_with_table": ok}
    return out, ok


def cmd_balanced(args):
    spec = _spec(args)
    kappa = _kappa(args)
    t = _scalar(spec.p, args, "t")
    w = balanced_eval(spec, t, kappa)
    d = balanced_direct(spec, t, kappa)
    ok = w.value == d.value
    return {"spec": spec.to_json(), "kappa": str(kappa), "t": str(t.to_fraction()),
            "relations": w.to_json(), "direct": d.to_json(), "match": ok}, ok


def cmd_ip(args):
    from .phase_analysis import TupleM, VanishingCase, WhittakerHandle, ip_bruteforce, v_of_tuple, vanish_threshold

    spec = _spec(args)
    case = VanishingCase.for_spec(spec, args.case, args.param)
    ms = [int(x) for x in args.tuple.split(",")]
    if len(ms) != 4:
        raise UsageError("--tuple needs four comma separated integers")
    m = TupleM(*ms)
    W = WhittakerHandle(spec, case, args.branch)
    r = ip_bruteforce(W, m, args.level)
    vm = v_of_tuple(m, spec.p)
    v0 = vanish_threshold(case)
    pred = vm < v0
    ok = r.is_zero or not pred
    return {"spec": spec.to_json(), "case": case.to_json(), "tuple": ms, "v_m": "inf" if vm == INF else vm,
            "v0": v0, "predicted_zero": pred, "value": r.value.to_json(), "brute_force_zero": r.is_zero,
            "level": r.level, "agree": ok}, ok


def cmd_thresholds(args):
    from .phase_analysis import VanishingCase, vanish_threshold

    case = VanishingCase(args.case, args.param, args.n, args.d)
    return {"case": case.to_json(), "v0": vanish_threshold(case), "proven_range": case.proven}, True


def cmd_volume(args):
    from .coset_geometry import volume_report

    kappa = _kappa(args)
    m = None
    if args.enumerate:
        m = args.m if args.m is not None else (kappa.gamma + 1 if kappa.gamma != INF else None)
        if m is None:
            raise UsageError("cannot enumerate the gamma = inf cell")
    rep = volume_report(args.p, kappa, m)
    return rep, rep.get("match", True)


def _suite_kwargs(args) -> dict:
    kw = {"seed": args.seed}
    if args.suite == "ip-vanishing":
        kw["mmax"] = args.mmax
    return kw


def _run_suite(name: str, kw: dict) -> dict:
    from .suites import SUITES

    return SUITES[name](**kw).to_json()


def _verify_ip_single(args):
    """One representation and case: a JSON line per predicted-zero tuple, then a summary."""
    from .phase_analysis import VanishingCase, verify_ip_vanishing

    spec = _spec(args)
    case = VanishingCase.for_spec(spec, args.case, args.param)
    rows = [r.to_json() for r in verify_ip_vanishing(spec, case, args.mmax, branch=args.branch)]
    bad = [r for r in rows if not r["agree"]]
    summary = {"summary": True, "spec": spec.to_json(), "case": case.to_json(), "branch": args.branch,
               "mmax": args.mmax, "predicted_zero": len(rows),
               "confirmed_zero": sum(r["brute_force_zero"] for r in rows), "vacuous": not rows,
               "passed": not bad, "witnesses": bad[:5]}
    return rows + [summary], not bad


def cmd_verify(args):
    from .suites import SUITES

    if args.suite == "ip-vanishing" and args.case:
        return _verify_ip_single(args)
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    res = _run_suite(args.suite, _suite_kwargs(args))
    return res, res["passed"]


def cmd_all(args):
    from .suites import SUITES

    names = list(SUITES)
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as ex:
            futs = [ex.submit(_run_suite, nm, {"seed": args.seed}) for nm in names]
            results = [f.result() for f in futs]
    else:
        results = [_run_suite(nm, {"seed": args.seed}) for nm in names]
    return results, all(r["passed"] for r in results)


COMMANDS = {
    "gauss": cmd_gauss,
    "airy": cmd_airy,
    "cubic": cmd_cubic,
    "whittaker": cmd_whittaker,
    "balanced": cmd_balanced,
    "ip": cmd_ip,
    "thresholds": cmd_thresholds,
    "volume": cmd_volume,
    "verify": cmd_verify,
    "all": cmd_all,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="key = value file; command line flags win")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--table", action="store_true", help="aligned text instead of JSON")
    common.add_argument("--output", default=None, help="also write the report here")
    common.add_argument("--tolerance", type=float, default=1e-9, help="float tolerance for magnitude checks")
    common.add_argument("--precision", type=int, default=PREC, help="relative p-adic precision of inputs")
    common.add_argument("--timing", action="store_true", help="keep wall-clock seconds in suite reports")

    ap = argparse.ArgumentParser(prog="whitlab", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"whitlab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("gauss", parents=[common], help="one-dimensional Gauss integral, closed form and finite sum")
    sp.add_argument("--p", type=int, default=5)
    sp.add_argument("--A", type=int, default=1)
    sp.add_argument("--rho", type=int, default=1)
    sp.add_argument("--B", default="0")

    for name, helptext in (("airy", "p-adic Airy function and its bound"),
                           ("cubic", "cubic-phase integral, closed form and finite sum")):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("--p", type=int, default=5)
        sp.add_argument("--va", type=int, required=True)
        sp.add_argument("--vb", type=int, required=True)
        sp.add_argument("--unit-a", type=int, default=1)
        sp.add_argument("--unit-b", type=int, default=1, help="0 means b = 0")

    for name, var, helptext in (("whittaker", "y", "W(a(y) kappa)"), ("balanced", "t", "W_b(a(t) kappa), both routes")):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        _add_rep(sp)
        sp.add_argument("--family", choices=("Lower", "Weyl"), default="Lower")
        sp.add_argument("--gamma", type=_gamma, default=0)
        _add_y(sp, var)

    sp = sub.add_parser("ip", parents=[common], help="fourfold integral I_p(m) by finite sum")
    _add_rep(sp)
    sp.add_argument("--case", choices=("lower", "weyl", "S", "U"), default="lower")
    sp.add_argument("--param", "--gamma", dest="param", type=int, default=1)
    sp.add_argument("--tuple", required=True, help="m1,m2,m3,m4")
    sp.add_argument("--branch", choices=("+", "-"), default=None)
    sp.add_argument("--level", type=int, default=None, help="residue level p^M for the finite sum")

    sp = sub.add_parser("thresholds", parents=[common], help="vanishing threshold v_0")
    sp.add_argument("--n", type=int, default=8)
    sp.add_argument("--d", type=int, default=0)
    sp.add_argument("--case", choices=("lower", "weyl", "S", "U"), default="lower")
    sp.add_argument("--param", "--gamma", dest="param", type=int, default=1)

    sp = sub.add_parser("volume", parents=[common], help="Haar volume of a cell, optionally by enumeration")
    sp.add_argument("--p", type=int, default=3)
    sp.add_argument("--family", choices=("Lower", "Weyl"), default="Lower")
    sp.add_argument("--gamma", type=_gamma, default=0)
    sp.add_argument("--enumerate", action="store_true")
    sp.add_argument("--m", type=int, default=None, help="enumerate PGL2(Z/p^m); default gamma + 1")

    sp = sub.add_parser("verify", parents=[common], help="run one verification suite")
    sp.add_argument("suite")
    _add_rep(sp)
    sp.add_argument("--case", choices=("lower", "weyl", "S", "U"), default=None)
    sp.add_argument("--param", "--gamma", dest="param", type=int, default=1)
    sp.add_argument("--branch", choices=("+", "-"), default=None)
    sp.add_argument("--mmax", type=int, default=40)

    sub.add_parser("all", parents=[common], help="every verification suite")
    return ap


def _apply_config(ap: argparse.ArgumentParser, argv: list) -> argparse.Namespace:
    args = ap.parse_args(argv)
    if not args.config:
        return args
    cfg = read_config(args.config)
    sub = next(a for a in ap._actions if isinstance(a, argparse._SubParsersAction))
    sp = sub.choices[args.command]
    known = {a.dest for a in sp._actions}
    unknown = set(cfg) - known
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    sp.set_defaults(**cfg)
    return ap.parse_args(argv)


def _strip_timing(obj):
    if isinstance(obj, list):
        return [_strip_timing(o) for o in obj]
    if isinstance(obj, dict):
        return {k: _strip_timing(v) for k, v in obj.items() if k != "seconds"}
    return obj


def _table(obj, indent: int = 0) -> list:
    lines = []
    pad = " " * indent
    if isinstance(obj, dict):
        w = max((len(str(k)) for k in obj), default=0)
        for k, v in obj.items():
            if isinstance(v, list) and not any(isinstance(x, (dict, list)) for x in v):
                lines.append(f"{pad}{str(k).ljust(w)}  {', '.join(map(str, v))}")
            elif isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_table(v, indent + 2))
            else:
                lines.append(f"{pad}{str(k).ljust(w)}  {v}")
    elif isinstance(obj, list):
        for item in obj:
            lines.extend(_table(item, indent))
            lines.append("")
    else:
        lines.append(f"{pad}{obj}")
    return lines


def render(report, table: bool) -> str:
    if table:
        return "\n".join(_table(report)).rstrip() + "\n"
    items = report if isinstance(report, list) else [report]
    return "".join(json.dumps(r, sort_keys=True, default=str) + "\n" for r in items)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    ap = build_parser()
    try:
        args = _apply_config(ap, argv)
        args.workers = workers_from_env()
        report, ok = COMMANDS[args.command](args)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    except (UsageError, WhitlabError, ValueError, OSError) as e:
        print(f"whitlab: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if not args.timing:
        report = _strip_timing(report)
    text = render(report, args.table)
    sys.stdout.write(text)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
