"""
Command line front end.

    khphi phi --knot pretzel:-2,3,7 [--alpha 1/2] [--svg f.svg] [--csv f.csv]
    khphi kh --knot torus:3,4
    khphi batch --input knots.csv --out-dir results [--jobs 4]
    khphi verify pretzel|torus-conjecture|axioms|invariance|bounds
    khphi complex dump --knot torus:2,3 --out trefoil.json
    khphi complex load trefoil.json

Exit codes: 0 ok, 1 input error, 2 computation assertion, 3 suite failure.
"""

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__, bifiltered
from .frobenius import DEFAULT, FrobeniusError, FrobeniusSystem
from .knot import DiagramError, from_specifier
from .linalg import fmt, frac
from .phi import PiecewiseLinearFunction, m_invariant, phi_curve
from .pipeline import COMPUTATION_ERRORS, breakpoints_of, render, report_dict
from .reference import ReferenceError, torus_phi_conjectured

EXIT_OK, EXIT_INPUT, EXIT_COMPUTE, EXIT_SUITE = 0, 1, 2, 3


class InputError(ValueError):
    pass


def default_jobs():
    try:
        return max(1, int(os.environ.get("KHPHI_JOBS", "1")))
    except ValueError:
        return 1


def _parse_alpha(text):
    try:
        a = frac(text)
    except (ValueError, ZeroDivisionError):
        raise InputError("bad alpha %r" % text)
    if not 0 <= a <= 2:
        raise InputError("alpha must lie in [0, 2]")
    return a


def _diagram(args):
    if getattr(args, "pd", None):
        spec = args.pd
    elif getattr(args, "knot", None):
        spec = args.knot
    else:
        raise InputError("give --knot or --pd")
    d = from_specifier(spec)
    if getattr(args, "basepoint", None) is not None:
        d = d.with_basepoint(args.basepoint)
    return spec, d


def _sys(args):
    return FrobeniusSystem.parse(args.frobenius) if args.frobenius else DEFAULT


# curve exports

def curve_csv(points, samples=200):
    phi = PiecewiseLinearFunction(points)
    rows = ["alpha,value,alpha_decimal,value_decimal"]
    for k in range(samples + 1):
        a = Fraction(2 * k, samples)
        v = phi(a)
        rows.append("%s,%s,%.6f,%.6f" % (fmt(a), fmt(v), float(a), float(v)))
    return "\n".join(rows) + "\n"


def curve_svg(points, title=""):
    w, hgt, pad = 400, 300, 30
    vals = [v for _, v in points] + [Fraction(0)]
    lo, hi = min(vals), max(vals)
    span = (hi - lo) or 1

    def xy(a, v):
        return (pad + float(a) / 2 * (w - 2 * pad),
                hgt - pad - float((v - lo) / span) * (hgt - 2 * pad))

    poly = " ".join("%.3f,%.3f" % xy(a, v) for a, v in points)
    exact = " ".join("%s:%s" % (fmt(a), fmt(v)) for a, v in points)
    x0, y0 = xy(0, 0)
    x1, _ = xy(2, 0)
    return (
        '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d">\n'
        '<title>%s</title>\n'
        '<line x1="%.3f" y1="%.3f" x2="%.3f" y2="%.3f" stroke="#999"/>\n'
        '<polyline fill="none" stroke="black" points="%s" data-exact="%s"/>\n'
        '</svg>\n' % (w, hgt, title, x0, y0, x1, y0, poly, exact))


def _write(path, text):
    with open(path, "w") as fh:
        fh.write(text)


# subcommands

def cmd_phi(args):
    spec, d = _diagram(args)
    alpha = _parse_alpha(args.alpha) if args.alpha else None
    data = report_dict(d, spec, _sys(args), alpha, lee=not args.no_lee,
                       cache_dir=None if args.no_cache else args.cache_dir)
    pts = breakpoints_of(data)
    if args.svg:
        _write(args.svg, curve_svg(pts, spec))
    if args.csv:
        _write(args.csv, curve_csv(pts))
    if args.format == "json":
        text = render(data)
    else:
        text = format_text(data)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def format_text(data):
    lines = ["knot: %s" % data["knot"]]
    lines.append("phi: " + " ".join("(%s, %s)" % (b["alpha"], b["value"])
                                    for b in data["phi"]["breakpoints"]))
    lines.append("s = %s  t = %s  s(Lee) = %s" % (data["s"], data["t"], data["s_lee"]))
    for j in data["jumps"]:
        lines.append("jump at %s: %s" % (j["alpha"], j["jump"]))
    for n, v in data["i_n"].items():
        lines.append("i_%s = %s" % (n, v))
    lines.append("slice genus >= %s  ([0,1]: %s, [1,2]: %s)" % (
        data["slice_lower_bound"], data["slice_bound_0_1"], data["slice_bound_1_2"]))
    lines.append("homology constraint: %s" % ("pass" if data["constraint_check"]["pass"] else "FAIL"))
    if "alpha" in data:
        lines.append("phi(%s) = %s" % (data["alpha"]["alpha"], data["alpha"]["value"]))
    return "\n".join(lines) + "\n"


def cmd_kh(args):
    from .cube import khovanov_homology
    spec, d = _diagram(args)
    kh = khovanov_homology(d)
    print("h\tq\tdelta\trank")
    for (h, q), r in sorted(kh.items()):
        print("%d\t%d\t%d\t%d" % (h, q, q - 2 * h, r))
    return EXIT_OK


def _batch_item(item):
    spec, sys_text, lee, cache_dir = item
    sysobj = FrobeniusSystem.parse(sys_text)
    d = from_specifier(spec)
    return report_dict(d, spec, sysobj, None, lee, cache_dir)


def read_batch_input(path):
    specs = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or not row[0].strip() or row[0].strip().startswith("#"):
                continue
            cell = row[0].strip()
            if cell.lower() in ("knot", "specifier"):
                continue
            # unquoted specifiers such as torus:2,3 arrive split over cells
            specs.append(",".join(c.strip() for c in row).strip(","))
    return specs


def _conjecture_row(spec, data):
    if not spec.startswith("torus:"):
        return "", ""
    p, q = (int(x) for x in spec[6:].split(","))
    pred = torus_phi_conjectured(p, q)
    got = PiecewiseLinearFunction(breakpoints_of(data))
    return " ".join("(%s,%s)" % (fmt(a), fmt(v)) for a, v in pred.points), str(pred == got).lower()


def cmd_batch(args):
    specs = list(args.knots or [])
    if args.input:
        specs += read_batch_input(args.input)
    if not specs:
        raise InputError("no knots given")
    for s in specs:
        from_specifier(s)
    os.makedirs(args.out_dir, exist_ok=True)
    cache = None if args.no_cache else (args.cache_dir or os.path.join(args.out_dir, "cache"))
    sys_text = str(_sys(args))
    items = [(s, sys_text, not args.no_lee, cache) for s in specs]
    jobs = args.jobs or default_jobs()
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_batch_item, items))
    else:
        results = [_batch_item(it) for it in items]
    table = ["knot,breakpoints,s,t,slice_lower_bound,constraint,predicted,match"]
    for i, (spec, data) in enumerate(zip(specs, results)):
        _write(os.path.join(args.out_dir, "knot%03d.json" % i), render(data))
        pts = " ".join("(%s,%s)" % (b["alpha"], b["value"]) for b in data["phi"]["breakpoints"])
        pred, match = _conjecture_row(spec, data)
        table.append('"%s","%s",%s,%s,%s,%s,"%s",%s' % (
            spec, pts, data["s"], data["t"], data["slice_lower_bound"],
            "pass" if data["constraint_check"]["pass"] else "fail", pred, match))
    text = "\n".join(table) + "\n"
    _write(os.path.join(args.out_dir, "results.csv"), text)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args):
    from .suites import run_suite
    results = run_suite(args.suite, long=args.long)
    failed = 0
    for name, ok, detail in results:
        print("%s  %s%s" % ("PASS" if ok else "FAIL", name, ("  " + detail) if detail else ""))
        failed += not ok
    print("%s: %d/%d passed" % (args.suite, len(results) - failed, len(results)))
    return EXIT_SUITE if failed else EXIT_OK


def cmd_complex(args):
    if args.action == "dump":
        from .cube import build_ckhpm, khovanov_model
        from .pipeline import knot_model
        _, d = _diagram(args)
        sysobj = _sys(args)
        if args.stage == "cube":
            c = build_ckhpm(d, sysobj)
        elif args.stage == "kh":
            c = khovanov_model(d, sysobj)
        else:
            c = knot_model(d, sysobj)[1]
        text = bifiltered.dumps(c) + "\n"
        if args.out:
            _write(args.out, text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    if not args.path:
        raise InputError("complex load needs a path")
    try:
        with open(args.path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(str(exc))
    c = bifiltered.loads(text)
    again = bifiltered.loads(bifiltered.dumps(c))
    info = {
        "dim": len(c),
        "bound": list(c.bound),
        "bounded": bifiltered.certify_bounded(c, *c.bound),
        "d_squared_zero": c.d_squared_is_zero(),
        "round_trip": again == c,
        "homology_dimension": bifiltered.homology_dimension(c),
    }
    if info["homology_dimension"] == 1:
        phi = phi_curve(c)
        info["phi"] = phi.to_list()
        if args.alpha:
            a = _parse_alpha(args.alpha)
            info["alpha"] = [fmt(a), fmt(m_invariant(c, a))]
    sys.stdout.write(json.dumps(info, indent=2, sort_keys=True) + "\n")
    return EXIT_OK if info["round_trip"] else EXIT_COMPUTE


def build_parser():
    p = argparse.ArgumentParser(prog="khphi", description=__doc__.split("\n")[1])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def knot_args(sp):
        sp.add_argument("--knot", help="specifier: torus:p,q | pretzel:a,b,c | mirror:<spec> | PD code")
        sp.add_argument("--pd", help="PD code, e.g. 'X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)'")
        sp.add_argument("--basepoint", type=int, help="basepoint edge label")
        sp.add_argument("--frobenius", help="deformation constants a1,a2 (default 0,1)")

    sp = sub.add_parser("phi", help="compute the invariant report for one knot")
    knot_args(sp)
    sp.add_argument("--alpha", help="also evaluate at this rational alpha, e.g. 1/2")
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.add_argument("--svg")
    sp.add_argument("--csv")
    sp.add_argument("--out")
    sp.add_argument("--cache-dir", default=os.environ.get("KHPHI_CACHE"))
    sp.add_argument("--no-cache", action="store_true")
    sp.add_argument("--no-lee", action="store_true", help="skip the independent Lee check of s")
    sp.set_defaults(func=cmd_phi)

    sp = sub.add_parser("kh", help="reduced Khovanov homology table")
    knot_args(sp)
    sp.set_defaults(func=cmd_kh)

    sp = sub.add_parser("batch", help="compute reports for many knots")
    sp.add_argument("knots", nargs="*")
    sp.add_argument("--input", help="CSV file, one specifier per row")
    sp.add_argument("--out-dir", required=True)
    sp.add_argument("--jobs", type=int, default=None, help="default from KHPHI_JOBS")
    sp.add_argument("--cache-dir")
    sp.add_argument("--no-cache", action="store_true")
    sp.add_argument("--no-lee", action="store_true")
    sp.add_argument("--frobenius")
    sp.set_defaults(func=cmd_batch)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite", choices=("pretzel", "torus-conjecture", "axioms", "invariance", "bounds"))
    sp.add_argument("--long", action="store_true", help="include long-running cases such as P(-4,5,7)")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("complex", help="dump or load serialized complexes")
    sp.add_argument("action", choices=("dump", "load"))
    sp.add_argument("path", nargs="?")
    knot_args(sp)
    sp.add_argument("--stage", choices=("cube", "kh", "completed"), default="completed")
    sp.add_argument("--alpha")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_complex)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except COMPUTATION_ERRORS as exc:
        print("computation error: %s" % exc, file=sys.stderr)
        return EXIT_COMPUTE
    except (InputError, DiagramError, FrobeniusError, ReferenceError,
            bifiltered.ComplexError, OSError) as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
