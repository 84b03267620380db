"""Exact combinatorics of the Farey graph.

Vertices are reduced slopes p/q (with 1/0 standing for infinity), and two
slopes are adjacent when |ps - qr| = 1. Distances and geodesics are found
on the finite "crossing graph" spanned by x, y and the endpoints of the
Farey edges that separate x from y; every geodesic lives there.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor, gcd
from typing import Iterable

from .sl2 import SL2Matrix


@dataclass(frozen=True, slots=True)
class Slope:
    numerator: int
    denominator: int

    def __post_init__(self):
        p, q = self.numerator, self.denominator
        if q < 0 or gcd(p, q) != 1 or (q == 0 and p != 1):
            raise ValueError("slope %d/%d is not in canonical form; use reduce()" % (p, q))

    @classmethod
    def parse(cls, text) -> "Slope":
        if isinstance(text, Slope):
            return text
        if isinstance(text, int):
            return reduce(text, 1)
        if isinstance(text, Fraction):
            return reduce(text.numerator, text.denominator)
        t = str(text).strip().replace("−", "-")
        if t in ("inf", "oo", "∞", "Infinity", "infinity"):
            return INF
        if "/" in t:
            p, q = t.split("/")
            return reduce(int(p), int(q))
        return reduce(int(t), 1)

    def __str__(self):
        return "%d/%d" % (self.numerator, self.denominator)

    def __repr__(self):
        return "Slope(%s)" % self

    @property
    def is_infinite(self) -> bool:
        return self.denominator == 0

    def value(self) -> Fraction | None:
        """The rational value, or None for 1/0."""
        if self.denominator == 0:
            return None
        return Fraction(self.numerator, self.denominator)

    def sort_key(self):
        """Order by value with 1/0 placed after every finite slope."""
        if self.denominator == 0:
            return (1, Fraction(0))
        return (0, Fraction(self.numerator, self.denominator))

    def __lt__(self, other: "Slope"):
        return self.sort_key() < other.sort_key()

    def vector(self) -> tuple[int, int]:
        return (self.numerator, self.denominator)


def reduce(p: int, q: int) -> Slope:
    """Canonical slope equal to p/q as an extended rational."""
    if p == 0 and q == 0:
        raise ValueError("0/0 is not a slope")
    if q == 0:
        return Slope(1, 0)
    g = gcd(p, q)
    p, q = p // g, q // g
    if q < 0:
        p, q = -p, -q
    return Slope(p, q)


INF = Slope(1, 0)
ZERO = Slope(0, 1)


@dataclass(frozen=True, slots=True)
class FareyEdge:
    """An unordered pair of adjacent slopes, stored in sort order."""

    u: Slope
    v: Slope

    def __post_init__(self):
        if intersection_number(self.u, self.v) != 1:
            raise ValueError("%s and %s are not adjacent" % (self.u, self.v))
        if self.v < self.u:
            a, b = self.v, self.u
            object.__setattr__(self, "u", a)
            object.__setattr__(self, "v", b)

    @property
    def endpoints(self) -> tuple[Slope, Slope]:
        return (self.u, self.v)

    def __contains__(self, s: Slope) -> bool:
        return s == self.u or s == self.v

    def __str__(self):
        return "(%s,%s)" % (self.u, self.v)

    @classmethod
    def parse(cls, text: str) -> "FareyEdge":
        a, b = text.strip().strip("()").split(",")
        return cls(Slope.parse(a), Slope.parse(b))


@dataclass(frozen=True)
class PivotRecord:
    vertex: Slope
    weight: int


def intersection_number(a: Slope, b: Slope) -> int:
    return abs(a.numerator * b.denominator - a.denominator * b.numerator)


def adjacent(a: Slope, b: Slope) -> bool:
    return intersection_number(a, b) == 1


def apply_sl2(m: SL2Matrix, v: Slope) -> Slope:
    p, q = v.numerator, v.denominator
    return reduce(m.a * p + m.b * q, m.c * p + m.d * q)


def apply_sl2_edge(m: SL2Matrix, e: FareyEdge) -> FareyEdge:
    return FareyEdge(apply_sl2(m, e.u), apply_sl2(m, e.v))


def frame_at(x: Slope) -> SL2Matrix:
    """An SL2 element sending 1/0 to x."""
    p, q = x.numerator, x.denominator
    if q == 0:
        return SL2Matrix.identity()
    # solve p*s - q*r = 1
    g, s, t = _egcd(p, q)
    # p*s + q*t = 1  ->  r = -t
    return SL2Matrix(p, -t, q, s)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        k, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def in_arc(t: Slope, lo: Slope, hi: Slope) -> bool:
    """Whether t lies in the open arc running counterclockwise (increasing) from lo to hi."""
    if t == lo or t == hi:
        return False
    if lo.is_infinite:
        return not t.is_infinite and t.value() < hi.value()
    if hi.is_infinite:
        return not t.is_infinite and t.value() > lo.value()
    lv, hv = lo.value(), hi.value()
    if t.is_infinite:
        return lv > hv
    tv = t.value()
    if lv < hv:
        return lv < tv < hv
    return tv > lv or tv < hv


class EndpointCollision(ValueError):
    """A point handed to separates() is an endpoint of the edge."""


def separates(e: FareyEdge, x: Slope, y: Slope) -> bool:
    if x in e or y in e:
        raise EndpointCollision("%s or %s is an endpoint of %s" % (x, y, e))
    return in_arc(x, e.u, e.v) != in_arc(y, e.u, e.v)


def neighbors_in_interval(v: Slope, lo: Slope, hi: Slope) -> list[Slope]:
    """Neighbours of v strictly inside the arc (lo, hi), in counterclockwise order."""
    if lo == hi:
        raise ValueError("degenerate interval")
    if in_arc(v, lo, hi):
        raise ValueError("%s lies inside (%s, %s)" % (v, lo, hi))
    if v == lo or v == hi:
        raise ValueError("%s is an endpoint of the interval: infinitely many neighbours" % v)
    g = frame_at(v)
    gi = g.inverse()
    lo2, hi2 = apply_sl2(gi, lo).value(), apply_sl2(gi, hi).value()
    # v sits at infinity outside the arc, so lo2 < hi2 as rationals
    start = floor(lo2) + 1
    out = []
    n = start
    while n < hi2:
        out.append(apply_sl2(g, Slope(n, 1)))
        n += 1
    return out


@lru_cache(maxsize=200_000)
def separating_edges(x: Slope, y: Slope) -> tuple[FareyEdge, ...]:
    """Farey edges separating x from y, ordered from x towards y."""
    if x == y:
        raise ValueError("separating_edges needs distinct slopes")
    g = frame_at(x)
    yy = apply_sl2(g.inverse(), y)
    r, s = yy.numerator, yy.denominator
    if s == 1:
        return ()
    f = r // s
    # Stern-Brocot descent from (f, f+1) to the triangle with vertex r/s
    a, b, c, d = f, 1, f + 1, 1
    out = []
    while True:
        out.append(FareyEdge(apply_sl2(g, Slope(a, b)), apply_sl2(g, Slope(c, d))))
        m, n = a + c, b + d
        if m == r and n == s:
            break
        if r * n < m * s:
            c, d = m, n
        else:
            a, b = m, n
    return tuple(out)


def _crossing_graph(x: Slope, y: Slope):
    """Adjacency on {x, y} and the endpoints of E(x, y).

    These vertices span an ideal polygon triangulated by the Farey triangles
    between consecutive separating edges; by convexity every Farey edge
    between two of them is a side of one of those triangles.
    """
    adj: dict[Slope, set] = {x: set(), y: set()}

    def link(u, w):
        adj.setdefault(u, set()).add(w)
        adj.setdefault(w, set()).add(u)

    es = separating_edges(x, y)
    if not es:
        link(x, y)
    else:
        triangles = [(x,) + es[0].endpoints]
        for e, f in zip(es, es[1:]):
            triangles.append(tuple({e.u, e.v, f.u, f.v}))
        triangles.append((y,) + es[-1].endpoints)
        for a, b, c in triangles:
            link(a, b)
            link(b, c)
            link(a, c)
    return {v: sorted(ws) for v, ws in adj.items()}


def _bfs(adj, src) -> dict:
    dist = {src: 0}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


@lru_cache(maxsize=100_000)
def _layers(x: Slope, y: Slope):
    """(d, adjacency, dist from x) restricted to geodesic vertices."""
    if x == y:
        return 0, {x: []}, {x: 0}
    adj = _crossing_graph(x, y)
    dx = _bfs(adj, x)
    dy = _bfs(adj, y)
    d = dx[y]
    keep = {v for v in adj if dx.get(v, -1) + dy.get(v, -1) == d}
    sub = {v: [w for w in adj[v] if w in keep and dx[w] == dx[v] + 1] for v in keep}
    return d, sub, {v: dx[v] for v in keep}


def distance(x: Slope, y: Slope) -> int:
    return _layers(x, y)[0]


def geodesic_vertices(x: Slope, y: Slope) -> set[Slope]:
    return set(_layers(x, y)[2])


def geodesic_layers(x: Slope, y: Slope) -> list[set[Slope]]:
    """Geodesic vertices grouped by distance from x: entry t is G(x,y) at distance t."""
    d, _, dx = _layers(x, y)
    out = [set() for _ in range(d + 1)]
    for v, t in dx.items():
        out[t].add(v)
    return out


def geodesics(x: Slope, y: Slope, limit: int | None = None) -> list[list[Slope]]:
    """Every geodesic from x to y, sorted lexicographically by slope value.

    `limit` caps the number of enumerated paths and raises if exceeded.
    """
    d, sub, _ = _layers(x, y)
    paths = []

    def walk(path):
        u = path[-1]
        if u == y:
            paths.append(list(path))
            if limit is not None and len(paths) > limit:
                raise RuntimeError("more than %d geodesics" % limit)
            return
        for w in sub[u]:
            path.append(w)
            walk(path)
            path.pop()

    walk([x])
    paths.sort(key=lambda p: [v.sort_key() for v in p])
    return paths


def count_geodesics(x: Slope, y: Slope) -> int:
    d, sub, dx = _layers(x, y)
    count = {x: 1}
    for v in sorted(dx, key=dx.get):
        for w in sub[v]:
            count[w] = count.get(w, 0) + count[v]
    return count[y]


def pivots(x: Slope, y: Slope) -> list[PivotRecord]:
    if x == y:
        return []
    seen: dict[Slope, int] = {}
    for e in separating_edges(x, y):
        for v in e.endpoints:
            seen[v] = seen.get(v, 0) + 1
    return [PivotRecord(v, w) for v, w in seen.items() if w >= 2]


def ball_count(vertices: Iterable[Slope], z: Slope) -> int:
    """Number of the given vertices within distance one of z."""
    return sum(1 for v in vertices if v == z or adjacent(v, z))


def is_geodesic(path: list[Slope]) -> bool:
    n = len(path)
    return all(distance(path[i], path[j]) == j - i for i in range(n) for j in range(i, n))


def random_slope(rng, bound: int = 30) -> Slope:
    """A slope p/q with |p|, q <= bound drawn from rng (a random.Random)."""
    while True:
        p, q = rng.randint(-bound, bound), rng.randint(0, bound)
        if (p, q) != (0, 0):
            return reduce(p, q)
