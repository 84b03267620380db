"""Property-A witnesses on hyperbolic graphs.

F_a(x,k,n) is the indicator of the vertices met at times n..2n by geodesic
rays towards a that start in the ball B(x;k). H_a(x,n) averages these for
k < sqrt(n) with weight n**(-3/2). On bounded-geometry backends the ball
is enumerated outright. On the Farey graph, k = 0 is exact; for k >= 1
the ball is infinite, and the witness is assembled from a finite set of
ray classes found inside a height-truncated ball (see _farey_classes),
so those results carry a truncation flag.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt, lcm

from . import boundary, farey
from .boundary import BoundaryPoint
from .farey import INF, Slope, apply_sl2, frame_at, reduce
from .hypgraph import FareyOracle, GraphOracle
from .sl2 import SL2Matrix
from .surd import QuadraticSurd


class BudgetExceeded(RuntimeError):
    """Truncated supports did not stabilise within the allowed heights."""


@dataclass(frozen=True)
class Constants:
    """(delta0, delta1, P0, P1) for a backend; trusted ones back asserted bounds."""

    delta0: int
    delta1: int
    P0: int
    P1: int
    trusted: bool


TREE_CONSTANTS = Constants(0, 1, 1, 1, True)
FAREY_CONSTANTS = Constants(2, 6, 6, 6 * (2 * 2 + 5), False)


def constants_for(oracle: GraphOracle) -> Constants:
    return FAREY_CONSTANTS if isinstance(oracle, FareyOracle) else TREE_CONSTANTS


def ceil_sqrt(n: int) -> int:
    r = isqrt(n)
    return r if r * r == n else r + 1


def n0(c: Constants) -> int:
    """Least n with n - 2 sqrt(n) - delta0 - delta1 > 0."""
    d = c.delta0 + c.delta1
    n = 1
    while not (n > d and (n - d) ** 2 > 4 * n):
        n += 1
    return n


def radius_bound(n: int, c: Constants) -> int:
    """R(n) = 2n + ceil(sqrt n) + delta0."""
    return 2 * n + ceil_sqrt(n) + c.delta0


def weight(n: int) -> QuadraticSurd:
    """n**(-3/2) = sqrt(n) / n**2."""
    return QuadraticSurd.sqrt(n) / (n * n)


@dataclass
class WitnessFunction:
    support: dict  # vertex -> weight (int count for F, surd for H)
    x: object
    a: object
    n: int
    k: int | None = None
    exact: bool = True
    truncation: int | None = None
    condition_met: bool = True  # n - 2k - delta0 - delta1 > 0 (or n >= N0 for H)
    counts: dict = field(default_factory=dict)  # vertex -> number of F terms covering it

    def __post_init__(self):
        if not self.counts and self.k is not None:
            self.counts = dict(self.support)

    def norm1(self):
        total = sum(self.support.values())
        return total if self.support else 0

    def __getitem__(self, v):
        return self.support.get(v, 0)

    def transformed(self, m: SL2Matrix) -> "WitnessFunction":
        """(m . phi)(v) = phi(m^{-1} v) on the Farey backend."""
        sup = {apply_sl2(m, v): w for v, w in self.support.items()}
        counts = {apply_sl2(m, v): c for v, c in self.counts.items()}
        return WitnessFunction(sup, apply_sl2(m, self.x), self.a.transform(m), self.n, self.k,
                               self.exact, self.truncation, self.condition_met, counts)


def _check_nk(n: int, k: int):
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")


def _segment_union(spheres, n: int, shift: int = 0) -> set:
    out = set()
    for t in range(n, 2 * n + 1):
        if t - shift >= 0:
            out |= spheres[t - shift]
    return out


def f_witness(oracle: GraphOracle, x, a, k: int, n: int, D: int = 16, step: int = 16, max_height: int = 96):
    """F_a(x,k,n) as a map vertex -> 1."""
    _check_nk(n, k)
    c = constants_for(oracle)
    cond = n - 2 * k - c.delta0 - c.delta1 > 0
    if k == 0:
        sup = _segment_union(oracle.spheres(x, a, 2 * n), n)
        return WitnessFunction({v: 1 for v in sup}, x, a, n, k, True, None, cond)
    if oracle.bounded_geometry:
        sup = set()
        for z in oracle.ball(x, k):
            sup |= _segment_union(oracle.spheres(z, a, 2 * n), n)
        return WitnessFunction({v: 1 for v in sup}, x, a, n, k, True, None, cond)
    if not isinstance(oracle, FareyOracle):
        raise ValueError("k >= 1 needs a bounded-geometry or Farey backend")
    g, a_frame = canonical_frame(x, a)
    height = D
    classes = _farey_classes(a_frame, k, height)
    while True:
        if height + step > max_height:
            raise BudgetExceeded("ray classes from B(%s;%d) did not stabilise by height %d" % (x, k, max_height))
        nxt = _farey_classes(a_frame, k, height + step)
        if nxt == classes:
            break
        height, classes = height + step, nxt
    sup = set()
    for q, shift in classes:
        sup |= _segment_union(boundary.geodesic_spheres(q, a_frame, 2 * n), n, shift)
    sup = {apply_sl2(g, v) for v in sup}
    return WitnessFunction({v: 1 for v in sup}, x, a, n, k, False, height, cond)


def canonical_frame(x: Slope, a: BoundaryPoint) -> tuple[SL2Matrix, BoundaryPoint]:
    """The g with g(1/0) = x and g^{-1}(a) in (0, 1); returns (g, g^{-1} a).

    The frame of (mx, ma) is m g, so anything computed in frame
    coordinates is SL2-equivariant.
    """
    g0 = frame_at(x)
    a0 = a.transform(g0.inverse())
    s = a0.head
    g = g0 @ SL2Matrix(1, s, 0, 1)
    return g, a.transform(g.inverse())


def _deep_edge(a: BoundaryPoint, k: int):
    """First edge of E(1/0, a) at distance >= k+1 from 1/0, with the apex before it."""
    n = 2
    while True:
        edges = boundary._edges_toward(INF, a, n)
        for j in range(1, len(edges)):
            if boundary.edge_distance(INF, edges[j]) >= k + 1:
                e, prev = edges[j], edges[j - 1]
                (apex,) = set(prev.endpoints) - set(e.endpoints)
                return e.u, e.v, apex
        n += 2


def frame_ball(k: int, height: int) -> list[Slope]:
    """Slopes p/q with max(|p|, q) <= height within distance k of 1/0."""
    out = [INF]
    for q in range(1, height + 1):
        for p in range(-height, height + 1):
            s = reduce(p, q)
            if s.denominator == q and s.numerator == p and farey.distance(INF, s) <= k:
                out.append(s)
    return out


@lru_cache(maxsize=4096)
def _farey_classes(a: BoundaryPoint, k: int, height: int) -> frozenset:
    """Ray classes (q, shift) reached from the truncated ball B(1/0;k).

    With (u, v) an edge separating the whole ball from a and r the apex of
    the triangle before it, rays from z are rays from u (or v) delayed by
    d(z, u) when u is strictly nearer, and rays from r delayed by
    d(z, u) - 1 when both are equally near.
    """
    u, v, r = _deep_edge(a, k)
    out = set()
    for z in frame_ball(k, height):
        du, dv = farey.distance(z, u), farey.distance(z, v)
        if du < dv:
            out.add((u, du))
        elif dv < du:
            out.add((v, dv))
        else:
            out.add((r, du - 1))
    return frozenset(out)


def h_witness(oracle: GraphOracle, x, a, n: int, **kw) -> WitnessFunction:
    """H_a(x,n) = n^{-3/2} sum_{k < sqrt n} F_a(x,k,n), weights as exact surds."""
    _check_nk(n, 0)
    c = constants_for(oracle)
    counts: dict = {}
    exact, trunc = True, None
    for k in range(ceil_sqrt(n)):
        f = f_witness(oracle, x, a, k, n, **kw)
        exact = exact and f.exact
        if f.truncation is not None:
            trunc = max(trunc or 0, f.truncation)
        for v in f.support:
            counts[v] = counts.get(v, 0) + 1
    w = weight(n)
    sup = {v: w * cnt for v, cnt in counts.items()}
    return WitnessFunction(sup, x, a, n, None, exact, trunc, n >= n0(c), counts)


def h_difference(oracle: GraphOracle, x, y, a, n: int, **kw):
    """||H_a(x,n) - H_a(y,n)||_1 as an exact surd."""
    hx = h_witness(oracle, x, a, n, **kw)
    hy = h_witness(oracle, y, a, n, **kw)
    if hx.exact != hy.exact:
        raise ValueError("cannot compare an exact witness with a truncated one")
    diff = sum(abs(hx.counts.get(v, 0) - hy.counts.get(v, 0)) for v in set(hx.counts) | set(hy.counts))
    return weight(n) * diff


def difference_bound(n: int, R: int, c: Constants) -> QuadraticSurd:
    """2 n^{-3/2} R (n + 2 sqrt(n) + 2 delta0 + 1) P1."""
    return weight(n) * 2 * R * (QuadraticSurd.sqrt(n) * 2 + n + 2 * c.delta0 + 1) * c.P1


@dataclass
class ProbAssignment:
    vectors: dict  # x -> {vertex: Fraction}
    n: int
    radius: int

    def l1_distance(self, x, y) -> Fraction:
        vx, vy = self.vectors[x], self.vectors[y]
        return sum(abs(vx.get(v, 0) - vy.get(v, 0)) for v in set(vx) | set(vy))


def normalize(witnesses: dict, c: Constants | None = None) -> ProbAssignment:
    """Divide each H-witness by its l1 norm; the n^{-3/2} factor cancels, leaving rationals."""
    c = c or TREE_CONSTANTS
    vectors = {}
    n = None
    for x, h in witnesses.items():
        total = sum(h.counts.values())
        if total == 0:
            raise ValueError("H witness at %s is zero" % (x,))
        vectors[x] = {v: Fraction(cnt, total) for v, cnt in h.counts.items()}
        n = h.n
    return ProbAssignment(vectors, n, radius_bound(n, c))


@dataclass(frozen=True)
class YuSet:
    elements: frozenset
    P: int

    def __len__(self):
        return len(self.elements)


def yu_sets(v: dict, P: int) -> YuSet:
    """{(x, j) : 1 <= j <= P v(x)} for a vector whose entries are multiples of 1/P."""
    if P < 1:
        raise ValueError("P must be positive")
    out = set()
    for x, mass in v.items():
        units = Fraction(mass) * P
        if units.denominator != 1 or units < 0:
            raise ValueError("entry %s at %s is not a multiple of 1/%d" % (mass, x, P))
        out.update((x, j) for j in range(1, int(units) + 1))
    return YuSet(frozenset(out), P)


def quantum(*vectors) -> int:
    """The least P making every entry of the given vectors a multiple of 1/P."""
    P = 1
    for vec in vectors:
        for m in vec.values():
            P = lcm(P, Fraction(m).denominator)
    return P


def yu_ratio(vx: dict, vy: dict) -> Fraction | None:
    """|A(x) symmetric-difference A(y)| / |A(x) intersect A(y)| via the l1 identity; None if disjoint."""
    d = sum(abs(vx.get(v, 0) - vy.get(v, 0)) for v in set(vx) | set(vy))
    return 2 * d / (2 - d) if d < 2 else None
