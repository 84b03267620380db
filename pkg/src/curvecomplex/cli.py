"""Command-line front end: one subcommand per computation, JSON or CSV reports.

Every report carries the command, its parsed parameters and the package
version. Errors print a single JSON error object and exit with
2 (bad input or unmet precondition), 3 (depth, budget or stabilisation
limit) or 4 (internal invariant breach).

Negative slopes such as -1/3 can be given directly; they are not taken
for options.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__, boundary, busemann, farey, mcg, propa, surfaces
from .boundary import BoundaryPoint, DepthExceeded, StabilizationError
from .farey import Slope
from .hypgraph import FareyOracle, TreeEnd, TreeOracle, farey_sample_delta
from .sl2 import SL2Matrix

CSV_SCHEMA = 1
THREADS_ENV = "CURVECOMPLEX_THREADS"


class InvariantBreach(RuntimeError):
    """A computed result contradicts a checked invariant."""


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, (DepthExceeded, StabilizationError, propa.BudgetExceeded, busemann.PlateauError,
                        busemann.WindowTooSmall)):
        return 3
    if isinstance(exc, ValueError):
        return 2
    return 4


def _threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        raise UsageError("%s must be an integer" % THREADS_ENV)


def _ordered_map(fn, items):
    """Map over items in order, across processes when the thread variable asks for it."""
    n = _threads()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _parse_range(text: str) -> list[int]:
    """"4:12" (inclusive) or "4,9,16"."""
    if ":" in text:
        lo, hi = text.split(":")
        return list(range(int(lo), int(hi) + 1))
    return [int(t) for t in text.split(",") if t]


def _need_seed(args):
    if args.seed is None:
        raise UsageError("--seed is required for randomized runs")


def _fmt(v):
    if isinstance(v, (Slope, BoundaryPoint, SL2Matrix, TreeEnd, Fraction)):
        return str(v)
    return v


# -- subcommands: each returns (result, rows) ---------------------------------

def cmd_distance(args):
    x, y = Slope.parse(args.x), Slope.parse(args.y)
    d = farey.distance(x, y)
    return {"x": str(x), "y": str(y), "distance": d}, [{"x": str(x), "y": str(y), "distance": d}]


def cmd_geodesics(args):
    x, y = Slope.parse(args.x), Slope.parse(args.y)
    paths = farey.geodesics(x, y, limit=args.limit)
    total = farey.count_geodesics(x, y)
    text = [[str(v) for v in p] for p in paths]
    result = {"x": str(x), "y": str(y), "distance": farey.distance(x, y), "count": total,
              "listed": len(text), "geodesics": text}
    return result, [{"index": i, "path": " ".join(p)} for i, p in enumerate(text)]


def cmd_pivots(args):
    x, y = Slope.parse(args.x), Slope.parse(args.y)
    recs = [{"vertex": str(r.vertex), "weight": r.weight} for r in farey.pivots(x, y)]
    return {"x": str(x), "y": str(y), "pivots": recs}, recs


def cmd_ray(args):
    x, a = Slope.parse(args.x), BoundaryPoint.parse(args.a)
    r = boundary.ray(x, a, args.L)
    verts = [str(v) for v in r.vertices]
    return ({"x": str(x), "a": str(a), "length": args.L, "vertices": verts, "stable_depth": r.stable_depth},
            [{"t": t, "vertex": v} for t, v in enumerate(verts)])


def _tree_word(rng, length):
    w = ""
    for _ in range(length):
        w += rng.choice([c for c in "012" if not w.endswith(c)])
    return w


def _propa_farey_row(job):
    x, a, n, k, D = job
    f = propa.f_witness(FareyOracle(), x, a, k, n, D=D)
    norm = f.norm1()
    return {"x": str(x), "a": str(a), "n": n, "k": k, "norm1": norm, "lower_bound_ok": norm >= n,
            "exact": f.exact, "condition_met": f.condition_met}


def _propa_tree_row(job):
    x, y, end, n = job
    tree = TreeOracle()
    diff = propa.h_difference(tree, x, y, end, n)
    bound = propa.difference_bound(n, tree.distance(x, y), propa.TREE_CONSTANTS)
    return {"x": x, "y": y, "a": str(end), "n": n, "difference": str(diff), "bound": str(bound),
            "within_bound": bool(diff <= bound), "exact": True, "condition_met": n >= propa.n0(propa.TREE_CONSTANTS)}


def cmd_propa_scan(args):
    ns = _parse_range(args.n_range)
    if args.graph == "file":
        raise UsageError("a finite graph has no boundary points, so there is nothing to scan")
    _need_seed(args)
    rng = random.Random(args.seed)
    if args.graph == "farey":
        jobs = []
        for _ in range(args.pairs):
            a = boundary.random_quadratic(rng)
            x = farey.random_slope(rng, 6)
            jobs.extend((x, a, n, args.k, args.D) for n in ns)
        rows = _ordered_map(_propa_farey_row, jobs)
        ok = all(r["lower_bound_ok"] for r in rows)
    else:
        end = TreeEnd.parse(args.end)
        jobs = []
        for _ in range(args.pairs):
            x = _tree_word(rng, rng.randint(0, 5))
            y = TreeOracle().neighbors(x)[rng.randrange(2 if not x else 3)]
            jobs.extend((x, y, end, n) for n in ns)
        rows = _ordered_map(_propa_tree_row, jobs)
        ok = all(r["within_bound"] for r in rows)
    return {"graph": args.graph, "rows": rows, "all_within_bounds": ok}, rows


def cmd_busemann(args):
    a = BoundaryPoint.parse(args.a)
    x, y = Slope.parse(args.x), Slope.parse(args.y)
    va = busemann.alpha(a, x, y, args.horizon, args.window)
    vb = busemann.beta(a, x, y, args.horizon, args.window)
    delta = farey_sample_delta()
    result = {"a": str(a), "x": str(x), "y": str(y), "alpha": va.as_dict(), "beta": vb.as_dict(),
              "difference": vb.value - va.value, "bound": str(8 * delta), "delta_hat": str(delta),
              "within_bound": abs(vb.value - va.value) <= 8 * delta}
    if not va.value <= vb.value <= farey.distance(x, y):
        raise InvariantBreach("alpha <= beta <= d(x,y) fails: %s" % result)
    return result, [{"a": str(a), "x": str(x), "y": str(y), "alpha": va.value, "beta": vb.value,
                     "horizon": va.horizon, "window": va.window}]


def cmd_minset(args):
    a, b, c = (BoundaryPoint.parse(t) for t in (args.a, args.b, args.c))
    r = busemann.min_set(a, b, c, R=args.window, bases=args.bases, window=args.plateau)
    if not r.ms <= r.ms_prime:
        raise InvariantBreach("MS is not inside MS'")
    result = r.as_dict()
    result["properness_M0"] = busemann.properness_constant(r)
    rows = [{"set": "MS", "vertex": v} for v in result["MS"]]
    rows += [{"set": "MS_prime", "vertex": v} for v in result["MS_prime"]]
    return result, rows


def cmd_classify(args):
    m = SL2Matrix.parse(args.M)
    d = mcg.classify(m).as_dict()
    return d, [d]


def cmd_twist_check(args):
    _need_seed(args)
    rng = random.Random(args.seed)
    r = mcg.twist_suite(rng, args.samples, args.pairs)
    if not r["holds"]:
        raise InvariantBreach("twist checks failed: %d inequality, %d commuting"
                              % (len(r["inequality_failures"]), len(r["commuting_failures"])))
    row = {k: (len(v) if isinstance(v, list) else v) for k, v in r.items()}
    return r, [row]


def cmd_decomp_enum(args):
    s = surfaces.SurfaceType(args.g, args.p)
    graphs = surfaces.enumerate_decompositions(s, args.max_edges)
    items = [d.as_dict() for d in graphs]
    rows = [{"index": i, "edges": len(d["edges"]), "n": d["n"], "pieces": " ".join(d["pieces"]),
             "certificate": d["certificate"]} for i, d in enumerate(items)]
    return {"surface": str(s), "count": len(items), "graphs": items}, rows


def cmd_verify_lemmas(args):
    s = surfaces.SurfaceType(args.g, args.p)
    max_lemma = surfaces.verify_max_lemma(s)
    parity = surfaces.verify_parity_lemmas(s)
    ext = surfaces.extension_predicate_checks(s)
    ok = max_lemma["holds"] and parity["holds"] and ext["holds"]
    result = {"surface": str(s), "status": "PASS" if ok else "FAIL", "max_n": max_lemma["enumerated_max"],
              "max_lemma": max_lemma, "parity": parity, "extension": ext}
    if not ok:
        raise InvariantBreach(json.dumps(result, default=str))
    return result, [{"surface": str(s), "status": result["status"], "max_n": result["max_n"],
                     "types": max_lemma["types"], "maximizers": max_lemma["maximizers"]}]


def cmd_invariants(args):
    s = surfaces.SurfaceType(args.g, args.p)
    chi = surfaces.virtual_euler(s)
    k, b = surfaces.l2_betti(s)
    try:
        cost, note = str(surfaces.cost(s)), None
    except ValueError as e:
        cost, note = None, str(e)
    result = {"surface": str(s), "virtual_euler": str(chi), "l2_degree": k, "l2_betti": str(b),
              "l2_euler": str(surfaces.l2_euler(s)), "cost": cost}
    if note:
        result["cost_note"] = note
    if surfaces.l2_euler(s) != chi:
        raise InvariantBreach("l2 Euler characteristic differs from the virtual one for %s" % s)
    row = dict(result)
    if args.decimal:
        row["virtual_euler_decimal"] = "%.12g" % float(chi)
    return result, [row]


COMMANDS = {
    "distance": cmd_distance, "geodesics": cmd_geodesics, "pivots": cmd_pivots, "ray": cmd_ray,
    "propa-scan": cmd_propa_scan, "busemann": cmd_busemann, "minset": cmd_minset, "classify": cmd_classify,
    "twist-check": cmd_twist_check, "decomp-enum": cmd_decomp_enum, "verify-lemmas": cmd_verify_lemmas,
    "invariants": cmd_invariants,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int)
    common.add_argument("--decimal", action="store_true", help="add decimal annotation columns to CSV")
    p = _Parser(prog="curvecomplex", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text):
        return sub.add_parser(name, help=help_text, parents=[common])

    for name in ("distance", "geodesics", "pivots"):
        q = add(name, "Farey %s between two slopes" % name)
        q.add_argument("x")
        q.add_argument("y")
        if name == "geodesics":
            q.add_argument("--limit", type=int, default=100)
    q = add("ray", "geodesic ray segment from a slope towards a boundary point")
    q.add_argument("x")
    q.add_argument("a", help='continued fraction, e.g. "[1;~(1)]"')
    q.add_argument("L", type=int)
    q = add("propa-scan", "property-A witness bounds over seeded samples")
    q.add_argument("--graph", choices=("farey", "tree3", "file"), default="farey")
    q.add_argument("--n-range", default="4:12")
    q.add_argument("--pairs", type=int, default=5)
    q.add_argument("--D", type=int, default=16, help="initial height for truncated Farey balls")
    q.add_argument("--k", type=int, default=0, help="ball radius for Farey witnesses")
    q.add_argument("--end", default="0(12)", help="tree end, prefix(period)")
    q.add_argument("--file", help="edge list for --graph file")
    q = add("busemann", "alpha and beta Busemann values")
    q.add_argument("a")
    q.add_argument("x")
    q.add_argument("y")
    q.add_argument("--horizon", type=int)
    q.add_argument("--window", type=int, default=3)
    q = add("minset", "windowed MIN-set of three boundary points")
    for name in "abc":
        q.add_argument(name)
    q.add_argument("--window", type=int, default=4, help="search radius around the centre")
    q.add_argument("--bases", type=int, default=0, help="base points within this distance of the centre")
    q.add_argument("--plateau", type=int, default=3, help="stability window for the Busemann values")
    q = add("classify", "classify an SL(2,Z) matrix")
    q.add_argument("M", help='"[[a,b],[c,d]]"')
    q = add("twist-check", "seeded Dehn twist checks on the torus")
    q.add_argument("--samples", type=int, default=1000)
    q.add_argument("--pairs", type=int, default=None)
    for name in ("decomp-enum", "verify-lemmas", "invariants"):
        q = add(name, "%s for the surface of genus g with p punctures" % name)
        q.add_argument("g", type=int)
        q.add_argument("p", type=int)
        if name == "decomp-enum":
            q.add_argument("--max-edges", type=int)
    return p


_NEGATIVE = re.compile(r"^-\d+(/\d+)?$")


def _protect_negatives(argv):
    # a leading space keeps argparse from reading "-1/3" as an option; parsers strip it
    return [" " + a if _NEGATIVE.match(a) else a for a in argv]


def _render(report: dict, rows: list, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, default=_fmt, ensure_ascii=False) + "\n"
    buf = io.StringIO()
    buf.write("# curvecomplex %s %s schema %d\n" % (__version__, report["command"], CSV_SCHEMA))
    if rows:
        cols = list(rows[0])
        for r in rows[1:]:
            cols.extend(c for c in r if c not in cols)
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _fmt(v) for k, v in r.items()})
    return buf.getvalue()


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    argv = _protect_negatives(sys.argv[1:] if argv is None else list(argv))
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        _emit(json.dumps({"error": {"type": "UsageError", "message": str(e), "exit_code": 2}}) + "\n", None)
        return 2
    params = {k: v for k, v in vars(args).items() if k not in ("format", "output", "command")}
    params = {k: (v.strip() if isinstance(v, str) else v) for k, v in params.items()}
    try:
        result, rows = COMMANDS[args.command](args)
    except Exception as e:  # every failure becomes one structured error object
        code = _exit_code(e)
        err = {"command": args.command, "parameters": params, "version": __version__,
               "error": {"type": type(e).__name__, "message": str(e), "exit_code": code}}
        _emit(json.dumps(err, indent=2, default=_fmt) + "\n", None)
        return code
    report = {"command": args.command, "parameters": params, "version": __version__, "result": result}
    _emit(_render(report, rows, args.format), args.output)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
