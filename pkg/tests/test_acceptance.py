"""Acceptance criteria 1-11, one PASS/FAIL line each.

Run with pytest (lines are printed even when output is captured) or
directly: python tests/test_acceptance.py
"""

import random
import sys
import time
from fractions import Fraction
from math import gcd
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from curvecomplex import boundary, busemann, farey, mcg, propa, surfaces  # noqa: E402
from curvecomplex.farey import INF, ZERO, Slope, apply_sl2, reduce  # noqa: E402
from curvecomplex.hypgraph import FareyOracle, TreeEnd, TreeOracle, farey_sample_delta  # noqa: E402
from curvecomplex.sl2 import SL2Matrix, random_word  # noqa: E402
from curvecomplex.surd import QuadraticSurd  # noqa: E402

from oracles import WindowFarey  # noqa: E402

SEED = 20240601


def report(n: int, ok: bool, detail: str, capsys=None):
    line = "criterion %2d: %s  %s" % (n, "PASS" if ok else "FAIL", detail)
    if capsys is not None:
        with capsys.disabled():
            print("\n" + line)
    else:
        print(line)
    return ok


def _slopes_unit_interval(qmax):
    return [INF] + [Slope(p, q) for q in range(1, qmax + 1) for p in range(0, q + 1) if gcd(p, q) == 1]


def _random_slope(rng, qmax=20, span=3):
    q = rng.randint(1, qmax)
    while True:
        s = reduce(rng.randint(-span * q, span * q), q)
        if s.denominator == q:
            return s


def criterion_1():
    start = time.time()
    W = WindowFarey(D=40, W=4)
    pts = _slopes_unit_interval(20)
    pairs = [(x, y) for i, x in enumerate(pts) for y in pts[i:]]
    rng = random.Random(SEED)
    pairs += [(_random_slope(rng), _random_slope(rng)) for _ in range(500)]
    bad = 0
    for x, y in pairs:
        if farey.distance(x, y) != W.distance(x.vector(), y.vector()):
            bad += 1
            continue
        got = sorted([v.vector() for v in p] for p in farey.geodesics(x, y))
        if got != sorted(W.geodesics(x.vector(), y.vector())):
            bad += 1
    elapsed = time.time() - start
    return bad == 0 and elapsed < 30, "%d pairs, %d mismatches, %.1fs" % (len(pairs), bad, elapsed)


def _deep_slope(rng):
    return apply_sl2(random_word(rng, rng.randint(4, 24)), Slope(rng.randint(-3, 3), 1))


def criterion_2():
    rng = random.Random(SEED + 2)
    done, violations, worst = 0, 0, 0
    while done < 200:
        x, y = _deep_slope(rng), _deep_slope(rng)
        if not 3 <= farey.distance(x, y) <= 8:
            continue
        verts = farey.geodesic_vertices(x, y)
        for z in verts:
            c = farey.ball_count(verts, z)
            worst = max(worst, c)
            violations += c > 6
        done += 1
    return violations == 0, "200 pairs, max |G cap B(z;1)| = %d, %d violations" % (worst, violations)


def criterion_3():
    rng = random.Random(SEED + 3)
    ok = 0
    for _ in range(100):
        m = random_word(rng, rng.randint(1, 20))
        u, v = apply_sl2(m, ZERO), apply_sl2(m, INF)
        x, y = apply_sl2(m, Slope(-1, 1)), apply_sl2(m, Slope(1, 1))
        paths = farey.geodesics(x, y)
        edges = farey.separating_edges(x, y)
        ok += (len(paths) == 2 and sorted(p[1] for p in paths) == sorted([u, v])
               and edges == (farey.FareyEdge(u, v),) and farey.pivots(x, y) == [])
    return ok == 100, "%d/100 quadrilaterals with exactly two geodesics" % ok


def criterion_4():
    rng = random.Random(SEED + 4)
    fo = FareyOracle()
    pts = []
    while len(pts) < 20:
        a = boundary.random_quadratic(rng)
        if a not in pts:
            pts.append(a)
    bad, total = 0, 0
    for a in pts:
        x = farey.random_slope(rng, 6)
        for n in range(4, 13):
            total += 1
            bad += propa.f_witness(fo, x, a, 0, n).norm1() < n
    return bad == 0, "%d witnesses, %d below n" % (total, bad)


def criterion_5():
    start = time.time()
    tree = TreeOracle()
    rng = random.Random(SEED + 5)
    end = TreeEnd("0", "12")
    ok, pairs = True, 0
    for _ in range(6):
        x = ""
        for _ in range(rng.randint(0, 4)):
            x += rng.choice([c for c in "012" if not x.endswith(c)])
        y = rng.choice(tree.neighbors(x))
        vals = []
        for n in (4, 9, 16, 25):
            d = propa.h_difference(tree, x, y, end, n)
            bound = propa.weight(n) * 2 * (QuadraticSurd.sqrt(n) * 2 + n + 1)
            ok = ok and d <= bound
            vals.append(d)
        # terms lie in different quadratic fields; compare squares of these nonnegative values
        ok = ok and all(a * a > b * b for a, b in zip(vals, vals[1:]))
        pairs += 1
    elapsed = time.time() - start
    return ok and elapsed < 10, "%d adjacent pairs, n in 4,9,16,25, %.1fs" % (pairs, elapsed)


def criterion_6():
    rng = random.Random(SEED + 6)
    tree = TreeOracle()
    end = TreeEnd("", "012")
    bad = 0
    for _ in range(100):
        x = ""
        for _ in range(rng.randint(0, 5)):
            x += rng.choice([c for c in "012" if not x.endswith(c)])
        y = rng.choice(tree.neighbors(x))
        n = rng.randint(2, 12)
        pa = propa.normalize({x: propa.h_witness(tree, x, end, n), y: propa.h_witness(tree, y, end, n)})
        vx, vy = pa.vectors[x], pa.vectors[y]
        P = propa.quantum(vx, vy)
        ax, ay = propa.yu_sets(vx, P), propa.yu_sets(vy, P)
        bad += len(ax.elements ^ ay.elements) != P * pa.l1_distance(x, y)
    return bad == 0, "100 quantized pairs, %d mismatches" % bad


def criterion_7():
    delta = farey_sample_delta()
    rng = random.Random(SEED + 7)
    slopes = [INF, ZERO] + [farey.random_slope(rng, 5) for _ in range(10)]
    configs, skipped, worst_gap, worst_anti, worst_tri = 0, 0, 0, 0, 0
    ok = True
    while configs < 50:
        a = boundary.random_quadratic(rng)
        x, y, z = rng.sample(slopes, 3)
        try:
            va, vb = busemann.alpha(a, x, y), busemann.beta(a, x, y)
            anti, tri = busemann.cocycle_defects(a, x, y, z)
        except busemann.PlateauError:
            skipped += 1
            continue
        gap = abs(va.value - vb.value)
        worst_gap, worst_anti, worst_tri = max(worst_gap, gap), max(worst_anti, anti), max(worst_tri, tri)
        ok = ok and gap <= 8 * delta and anti <= 120 * delta and tri <= 200 * delta
        configs += 1
    tree = TreeOracle()
    ends = [TreeEnd("0", "12"), TreeEnd("1", "20"), TreeEnd("", "012")]
    verts = ["", "0", "01", "2", "21", "210", "1"]
    tree_ok = all(busemann.alpha(e, u, v).value == busemann.beta(e, u, v).value
                  for e in ends for u in verts for v in verts)
    tree_ok = tree_ok and all(busemann.cocycle_defects(e, u, v, "") == (0, 0) for e in ends for u in verts for v in verts[:3])
    detail = ("delta_hat=%s, max |a-b|=%d, max defects=(%d,%d), %d plateau failures skipped, tree equal=%s"
              % (delta, worst_gap, worst_anti, worst_tri, skipped, tree_ok))
    return ok and tree_ok, detail


def _min_set_growing(a, b, c, bases=1):
    for R in (3, 4, 5, 6):
        try:
            return busemann.min_set(a, b, c, R=R, bases=bases)
        except busemann.WindowTooSmall:
            continue
    raise busemann.WindowTooSmall("no radius up to 6 gave a positive margin")


def criterion_8():
    rng = random.Random(SEED + 8)
    triples = []
    while len(triples) < 20:
        t = tuple(boundary.random_quadratic(rng) for _ in range(3))
        if len(set(t)) == 3:
            triples.append(t)
    margins_ok, sub_ok, proper_ok, equi = 0, 0, 0, 0
    for i, (a, b, c) in enumerate(triples):
        r = _min_set_growing(a, b, c)
        margins_ok += r.margin > 0
        sub_ok += r.ms <= r.ms_prime
        # one M0 per triple fitted on the window, then checked on the ring two steps further out
        oracle = FareyOracle()
        M0 = max(oracle.distance(w, y) - v for y in r.values for w, v in r.values[y].items())
        _, wider = busemann.region(a, b, c, r.radius + 2)
        ring = [w for w in wider if w not in r.region]
        proper_ok += all(busemann.minset_eval(a, b, c, y, w) >= oracle.distance(w, y) - M0
                         for y in r.values for w in ring)
        if i < 10:
            m = random_word(rng, rng.randint(2, 8))
            rm = busemann.min_set(a.transform(m), b.transform(m), c.transform(m), R=r.radius, bases=1)
            equi += rm.ms_prime == {apply_sl2(m, v) for v in r.ms_prime}
    ok = margins_ok == 20 and sub_ok == 20 and proper_ok == 20 and equi == 10
    return ok, ("20 triples: margin>0 %d, MS in MS' %d, properness on outer ring %d; equivariant %d/10"
                % (margins_ok, sub_ok, proper_ok, equi))


def criterion_9():
    start = time.time()
    checked, bad = 0, []
    for k in range(0, 9):
        for g in range((k + 4) // 3 + 1):
            p = k + 4 - 3 * g
            if p < 0:
                continue
            s = surfaces.SurfaceType(g, p)
            a = surfaces.verify_max_lemma(s)
            b = surfaces.verify_parity_lemmas(s)
            checked += 1
            if not (a["holds"] and b["holds"]):
                bad.append(str(s))
    elapsed = time.time() - start
    return not bad and elapsed < 120, "%d surfaces with kappa <= 8, failures %s, %.1fs" % (checked, bad, elapsed)


def criterion_10():
    ok = surfaces.virtual_euler((1, 1)) == Fraction(-1, 12)
    ok = ok and surfaces.l2_betti((2, 0)) == (3, Fraction(1, 240))
    ok = ok and surfaces.cost((1, 1)) - 1 == surfaces.l2_betti((1, 1))[1]
    count = 0
    for k in range(-1, 11):
        for g in range((k + 4) // 3 + 1):
            p = k + 4 - 3 * g
            if p < 0 or (p == 0 and g <= 1) or 2 * g - 2 + p <= 0:
                continue
            ok = ok and surfaces.l2_euler((g, p)) == surfaces.virtual_euler((g, p))
            count += 1
    return ok, "chi(1,1)=-1/12, l2(2,0)=(3,1/240), l2 identity on %d surfaces" % count


def _consistent(m: SL2Matrix, c) -> bool:
    tr = abs(m.trace())
    if c.tag == mcg.FINITE:
        return tr < 2 or m.is_scalar()
    if c.tag == mcg.REDUCIBLE:
        return tr == 2 and apply_sl2(m, c.fixed_slope) == c.fixed_slope
    return (tr > 2 and mcg.apply_to_surd(m, c.f_plus) == c.f_plus
            and mcg.apply_to_surd(m, c.f_minus) == c.f_minus)


def criterion_11():
    rng = random.Random(SEED + 11)
    eps2 = Fraction(1, 10 ** 16)
    inconsistent, pa, slow = 0, 0, 0
    for _ in range(1000):
        m = random_word(rng, rng.randint(1, 16))
        c = mcg.classify(m)
        inconsistent += not _consistent(m, c)
        if c.tag == mcg.PSEUDO_ANOSOV:
            pa += 1
            seed = ZERO if c.f_minus != QuadraticSurd(0) else INF
            trace = mcg.iterate_convergence(m, seed, 30)
            slow += not any(d < eps2 for d in trace.distances_squared)
    suite = mcg.twist_suite(rng, 1000, 500)
    ok = inconsistent == 0 and slow == 0 and suite["holds"]
    return ok, ("1000 matrices (%d pseudo-Anosov), %d inconsistent, %d slow; twist failures %d, commuting failures %d"
                % (pa, inconsistent, slow, len(suite["inequality_failures"]), len(suite["commuting_failures"])))


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


def _run(i, capsys=None):
    ok, detail = CRITERIA[i - 1]()
    report(i, ok, detail, capsys)
    assert ok, detail


def test_criterion_01_farey_oracle_equivalence(capsys):
    _run(1, capsys)


def test_criterion_02_local_finiteness(capsys):
    _run(2, capsys)


def test_criterion_03_quadrilaterals(capsys):
    _run(3, capsys)


def test_criterion_04_witness_lower_bound(capsys):
    _run(4, capsys)


def test_criterion_05_tree_witness_decay(capsys):
    _run(5, capsys)


def test_criterion_06_quantized_sets(capsys):
    _run(6, capsys)


def test_criterion_07_busemann_comparison(capsys):
    _run(7, capsys)


def test_criterion_08_min_sets(capsys):
    _run(8, capsys)


def test_criterion_09_decomposition_lemmas(capsys):
    _run(9, capsys)


def test_criterion_10_euler_invariants(capsys):
    _run(10, capsys)


def test_criterion_11_dynamics(capsys):
    _run(11, capsys)


if __name__ == "__main__":
    results = []
    for i, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        results.append(report(i, ok, detail))
    sys.exit(0 if all(results) else 1)
