import random
from fractions import Fraction
from math import floor

import pytest

from curvecomplex.farey import (
    INF, ZERO, EndpointCollision, FareyEdge, PivotRecord, Slope, adjacent, apply_sl2,
    distance, geodesic_vertices, geodesics, intersection_number, is_geodesic,
    neighbors_in_interval, pivots, reduce, separates, separating_edges,
)
from curvecomplex.sl2 import SL2Matrix, random_word

from oracles import WindowFarey, brute_separating_edges, lattice_intersections

S = Slope.parse


def E(a, b):
    return FareyEdge(S(a), S(b))


@pytest.fixture(scope="module")
def window():
    return WindowFarey(40, 4)


def test_reduce():
    assert reduce(2, 4) == S("1/2")
    assert reduce(-3, 0) == INF
    assert reduce(6, -4) == Slope(-3, 2)
    with pytest.raises(ValueError):
        reduce(0, 0)
    with pytest.raises(ValueError):
        Slope(2, 4)


def test_text_round_trip():
    for text in ["1/0", "0/1", "-3/2", "22/7"]:
        assert str(S(text)) == text
    assert S("∞") == INF and S("5") == Slope(5, 1)


def test_intersection_number():
    assert intersection_number(INF, ZERO) == 1
    assert intersection_number(S("3/4"), S("3/4")) == 0
    assert intersection_number(S("2/5"), S("3/7")) == 1


def test_intersection_matches_lattice_oracle():
    rng = random.Random(1)
    for _ in range(200):
        a = reduce(rng.randint(-6, 6), rng.randint(0, 6) or 1)
        b = reduce(rng.randint(-6, 6), rng.randint(0, 6) or 1)
        assert intersection_number(a, b) == lattice_intersections(a.vector(), b.vector())


def test_adjacent():
    assert adjacent(ZERO, INF)
    assert not adjacent(ZERO, S(2))
    assert not adjacent(S("1/2"), S("1/2"))


def test_neighbors_in_interval():
    assert neighbors_in_interval(INF, S("-1/2"), S("3/2")) == [ZERO, S(1)]
    assert neighbors_in_interval(ZERO, S("1/3"), INF) == [S("1/2"), S(1)]
    assert neighbors_in_interval(ZERO, S("2/5"), S("9/20")) == []
    with pytest.raises(ValueError):
        neighbors_in_interval(ZERO, S(1), S(1))
    with pytest.raises(ValueError):
        neighbors_in_interval(ZERO, ZERO, S(1))


def test_neighbors_in_interval_brute_force():
    rng = random.Random(7)
    for _ in range(50):
        v = reduce(rng.randint(-5, 5), rng.randint(1, 5))
        lo, hi = sorted([Fraction(rng.randint(-30, 30), rng.randint(1, 9)) for _ in range(2)])
        if lo == hi or lo <= v.value() <= hi:
            continue
        got = neighbors_in_interval(v, S(lo), S(hi))
        # a neighbour r/s sits at distance 1/(b*s) from v, so s is bounded by the gap
        gap = min(abs(lo - v.value()), abs(hi - v.value()))
        smax = int(1 / (v.denominator * gap)) + 1
        expected = [
            reduce(p, q) for q in range(1, smax + 1)
            for p in range(floor(lo * q), floor(hi * q) + 2)
            if lo < Fraction(p, q) < hi and abs(p * v.denominator - q * v.numerator) == 1
        ]
        assert got == sorted(set(expected))


def test_separates():
    assert separates(E(0, "1/0"), S(-1), S(1))
    assert not separates(E(0, 1), S(2), S(3))
    assert separates(E(0, "1/2"), INF, S("2/5"))
    with pytest.raises(EndpointCollision):
        separates(E(0, 1), S(0), S(3))


def test_separating_edges_examples():
    assert separating_edges(S(-1), S(1)) == (E(0, "1/0"),)
    assert separating_edges(S(0), S(1)) == ()
    assert separating_edges(INF, S("2/5")) == (E(0, 1), E(0, "1/2"), E("1/3", "1/2"))


def test_separating_edges_brute_force():
    pts = [INF, S("2/5"), S("-3/4"), S("5/3"), S(2), S("7/5"), S("-1/2")]
    for x in pts:
        for y in pts:
            if x == y:
                continue
            got = {(e.u.vector(), e.v.vector()) for e in separating_edges(x, y)}
            want = {tuple(sorted(pair, key=lambda t: (t[1] == 0, Fraction(t[0], t[1] or 1))))
                    for pair in brute_separating_edges(x.vector(), y.vector(), 6)}
            assert got == want


def test_separating_edges_order():
    # each edge separates x from the interior side of the next
    x, y = S("-2/7"), S("13/8")
    es = separating_edges(x, y)
    for e, f in zip(es, es[1:]):
        for v in f.endpoints:
            if v not in e:
                assert separates(e, x, v)


def test_distance_examples():
    assert distance(S("3/7"), S("3/7")) == 0
    assert distance(S(-1), S(1)) == 2
    assert distance(INF, S("2/5")) == 3


def test_geodesics_examples():
    assert geodesics(S(-1), S(1)) == [[S(-1), ZERO, S(1)], [S(-1), INF, S(1)]]
    assert geodesics(S("2/3"), S("2/3")) == [[S("2/3")]]
    paths = geodesics(INF, S("2/5"))
    assert [p[1:3] for p in paths] == [[ZERO, S("1/3")], [ZERO, S("1/2")], [S(1), S("1/2")]]
    assert geodesic_vertices(S(-1), S(1)) == {S(-1), ZERO, INF, S(1)}
    assert geodesic_vertices(S(0), S(1)) == {ZERO, S(1)}
    assert geodesic_vertices(INF, S("2/5")) == {INF, ZERO, S(1), S("1/2"), S("1/3"), S("2/5")}


def test_pivots_examples():
    assert pivots(S(-1), S(1)) == []
    assert pivots(INF, S("2/5")) == [PivotRecord(ZERO, 2), PivotRecord(S("1/2"), 2)]
    assert pivots(S(0), S(1)) == []


def test_apply_sl2():
    assert apply_sl2(SL2Matrix.identity(), S("4/9")) == S("4/9")
    assert apply_sl2(SL2Matrix(1, 1, 0, 1), ZERO) == S(1)
    assert apply_sl2(SL2Matrix(0, -1, 1, 0), INF) == ZERO
    with pytest.raises(ValueError):
        SL2Matrix(2, 0, 0, 1)


def _random_slope(rng, qmax=20, span=3):
    q = rng.randint(1, qmax)
    while True:
        p = rng.randint(-span * q, span * q)
        s = reduce(p, q)
        if s.denominator == q:
            return s


def test_metric_axioms():
    rng = random.Random(3)
    pts = [_random_slope(rng, 12) for _ in range(25)] + [INF]
    for x in pts:
        assert distance(x, x) == 0
        for y in pts:
            assert distance(x, y) == distance(y, x)
            assert (distance(x, y) == 0) == (x == y)
            for z in pts[:8]:
                assert distance(x, z) <= distance(x, y) + distance(y, z)


def test_sl2_invariance():
    rng = random.Random(11)
    for _ in range(500):
        m = random_word(rng, rng.randint(1, 12))
        x, y = _random_slope(rng), _random_slope(rng)
        mx, my = apply_sl2(m, x), apply_sl2(m, y)
        assert distance(mx, my) == distance(x, y)
        assert intersection_number(mx, my) == intersection_number(x, y)


def test_crossing_lemma():
    rng = random.Random(5)
    for _ in range(100):
        x, y = _random_slope(rng), _random_slope(rng)
        if x == y:
            continue
        es = separating_edges(x, y)
        ends = {v for e in es for v in e.endpoints}
        for path in geodesics(x, y):
            assert is_geodesic(path)
            for e in es:
                assert e.u in path or e.v in path
            assert set(path[1:-1]) <= ends


def test_matches_bfs_oracle(window):
    rng = random.Random(2024)
    pairs = [(_random_slope(rng, 20, 3), _random_slope(rng, 20, 3)) for _ in range(150)]
    pairs += [(INF, _random_slope(rng, 20, 3)) for _ in range(20)]
    for x, y in pairs:
        assert distance(x, y) == window.distance(x.vector(), y.vector())
        got = [[v.vector() for v in p] for p in geodesics(x, y)]
        want = window.geodesics(x.vector(), y.vector())
        assert sorted(got) == sorted(want)
