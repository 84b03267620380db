"""Boundary points of the Farey graph as continued fractions.

An irrational enters either as an eventually periodic continued fraction
(a quadratic irrational, handled exactly through QuadraticSurd) or as a
finite list of terms with a declared depth. Geodesic rays and spheres
towards a boundary point are read off geodesics to deep convergents and
accepted only once successive probes agree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Callable

from . import farey
from .farey import FareyEdge, Slope, adjacent, apply_sl2, distance, reduce, separating_edges
from .sl2 import SL2Matrix
from .surd import QuadraticSurd


class DepthExceeded(ValueError):
    """A convergent beyond the available depth was requested."""


class StabilizationError(RuntimeError):
    """Successive convergent probes never agreed within the budget."""


@dataclass(frozen=True)
class BoundaryPoint:
    head: int
    tail: tuple = ()
    period: tuple | None = None

    def __post_init__(self):
        tail = tuple(int(t) for t in self.tail)
        period = None if self.period is None else tuple(int(t) for t in self.period)
        if any(t < 1 for t in tail) or (period is not None and (not period or any(t < 1 for t in period))):
            raise ValueError("continued fraction terms after the head must be positive")
        if period is not None:
            # primitive period, then absorb the preperiod into it where possible
            k = len(period)
            for d in range(1, k + 1):
                if k % d == 0 and period[:d] * (k // d) == period:
                    period = period[:d]
                    break
            while tail and tail[-1] == period[-1]:
                tail = tail[:-1]
                period = period[-1:] + period[:-1]
        object.__setattr__(self, "tail", tail)
        object.__setattr__(self, "period", period)

    @classmethod
    def from_terms(cls, term: Callable[[int], int], depth: int) -> "BoundaryPoint":
        """A point known only through a term generator, truncated at `depth` terms after the head."""
        return cls(term(0), tuple(term(i) for i in range(1, depth + 1)), None)

    @property
    def periodic(self) -> bool:
        return self.period is not None

    @property
    def depth(self) -> float:
        return float("inf") if self.periodic else len(self.tail)

    def term(self, i: int) -> int:
        if i == 0:
            return self.head
        if i <= len(self.tail):
            return self.tail[i - 1]
        if self.period is None:
            raise DepthExceeded("term %d beyond available depth %d" % (i, len(self.tail)))
        return self.period[(i - 1 - len(self.tail)) % len(self.period)]

    def convergent(self, n: int) -> Slope:
        p, q = self._pq(n)
        return reduce(p, q)

    def _pq(self, n: int) -> tuple[int, int]:
        if n < 0:
            raise ValueError("convergent index must be nonnegative")
        p0, q0, p1, q1 = 0, 1, 1, 0  # (p_{-2}, q_{-2}), (p_{-1}, q_{-1})
        for i in range(n + 1):
            a = self.term(i)
            p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        return p1, q1

    def __str__(self):
        body = ",".join(str(t) for t in self.tail)
        if self.period is not None:
            per = "~(" + ",".join(str(t) for t in self.period) + ")"
            body = body + "," + per if body else per
        return "[%d;%s]" % (self.head, body)

    @classmethod
    def parse(cls, text: str) -> "BoundaryPoint":
        t = text.replace(" ", "").replace("−", "-")
        m = re.fullmatch(r"\[(-?\d+);(.*)\]", t)
        if not m:
            raise ValueError("cannot parse continued fraction %r" % text)
        head = int(m.group(1))
        rest = m.group(2)
        period = None
        if "~" in rest:
            rest, per = rest.split("~")
            period = tuple(int(x) for x in per.strip("()").split(",") if x)
        tail = tuple(int(x) for x in rest.split(",") if x)
        return cls(head, tail, period)

    def to_surd(self) -> QuadraticSurd:
        if self.period is None:
            raise ValueError("only periodic continued fractions are quadratic irrationals")
        # purely periodic part z satisfies z = M(z) for the period block matrix
        p, pp, q, qq = 1, 0, 0, 1
        for b in self.period:
            p, pp, q, qq = b * p + pp, p, b * q + qq, q
        disc = (qq - p) ** 2 + 4 * q * pp
        z = QuadraticSurd(0, 1, disc) + (p - qq)
        z = z / (2 * q)
        P, PP, Q, QQ = 1, 0, 0, 1
        for a in (self.head,) + self.tail:
            P, PP, Q, QQ = a * P + PP, P, a * Q + QQ, Q
        return (z * P + PP) / (z * Q + QQ)

    @classmethod
    def from_surd(cls, x: QuadraticSurd) -> "BoundaryPoint":
        if x.is_rational():
            raise ValueError("%s is rational" % x)
        u, v, w = x.as_integers()
        d = v * v * x.D
        if v > 0:
            P, Q = u, w
        else:
            P, Q = -u, -w
        P, d, Q = P * abs(Q), d * Q * Q, Q * abs(Q)
        r = isqrt(d)
        terms, seen = [], {}
        while True:
            if terms and (P, Q) in seen:
                i = seen[(P, Q)]
                return cls(terms[0], tuple(terms[1:i]), tuple(terms[i:]))
            if terms:
                seen[(P, Q)] = len(terms)
            if Q > 0:
                a = (P + r) // Q
            else:
                a = -((P + r) // -Q) - 1
            terms.append(a)
            P = a * Q - P
            Q = (d - P * P) // Q

    def __float__(self):
        if self.periodic:
            return float(self.to_surd())
        p, q = self._pq(len(self.tail))
        return p / q

    def transform(self, m: SL2Matrix) -> "BoundaryPoint":
        """The image m * a under the Moebius action."""
        x = self.to_surd()
        return BoundaryPoint.from_surd((x * m.a + m.b) / (x * m.c + m.d))


@dataclass(frozen=True)
class RaySegment:
    origin: Slope
    vertices: list
    target: BoundaryPoint
    stable_depth: int


def nested_edges(a: BoundaryPoint, count: int) -> list[FareyEdge]:
    """Edges between consecutive convergents c_{k-1}, c_k for k = 1..count."""
    cs = [a.convergent(n) for n in range(count + 1)]
    return [FareyEdge(cs[k - 1], cs[k]) for k in range(1, count + 1)]


def _probe(y: Slope, a: BoundaryPoint, n: int, T: int):
    """Union of the geodesic layers from y to both ends of the edge (c_n, c_{n+1}).

    Every ray from y to a crosses that edge once it separates y from a,
    so this contains G(y,a)_t for t <= T and shrinks as n grows.
    """
    lo = farey.geodesic_layers(y, a.convergent(n))
    hi = farey.geodesic_layers(y, a.convergent(n + 1))
    return tuple(frozenset(lo[t] | hi[t]) for t in range(T + 1))


def _edges_toward(y: Slope, a: BoundaryPoint, n: int) -> list[FareyEdge]:
    """Edges separating y from both convergents n and n+1: a prefix of E(y, a) once n is deep."""
    e1 = separating_edges(y, a.convergent(n))
    e2 = separating_edges(y, a.convergent(n + 1))
    out = []
    for e, f in zip(e1, e2):
        if e != f:
            break
        out.append(e)
    return out


@lru_cache(maxsize=50_000)
def geodesic_spheres(y: Slope, a: BoundaryPoint, T: int, budget: int = 40) -> tuple[frozenset, ...]:
    """G(y,a)_t for t = 0..T.

    Probes the nested edges (c_N, c_{N+1}) for N, N+1, N+2, starting at the
    first N whose convergents both lie at distance >= T+2 from y; accepts
    when the three probes agree up to t = T and every sphere vertex is an
    endpoint of an edge separating y from the deep convergents. Otherwise
    N moves on by 2.
    """
    if T < 0:
        raise ValueError("T must be nonnegative")
    n = 0
    while True:
        if n > a.depth - 3:
            raise DepthExceeded("no convergent of %s reaches distance %d from %s" % (a, T + 2, y))
        c, c1 = a.convergent(n), a.convergent(n + 1)
        if y not in (c, c1) and min(distance(y, c), distance(y, c1)) >= T + 2:
            break
        n += 1
    start = n
    while n <= start + budget:
        if n + 3 > a.depth:
            raise DepthExceeded("spheres of %s from %s need depth beyond %d" % (a, y, n + 2))
        probes = [_probe(y, a, k, T) for k in (n, n + 1, n + 2)]
        if probes[0] == probes[1] == probes[2]:
            ends = {v for e in _edges_toward(y, a, n) for v in e.endpoints}
            if all(s <= ends for s in probes[0][1:]):
                return probes[0]
        n += 2
    raise StabilizationError("spheres from %s towards %s did not stabilise by depth %d" % (y, a, n))


def geodesic_sphere(y: Slope, a: BoundaryPoint, t: int) -> set[Slope]:
    return set(geodesic_spheres(y, a, t)[t])


def ray(x: Slope, a: BoundaryPoint, length: int) -> RaySegment:
    """A geodesic segment of the given length from x towards a.

    Walks the stabilised spheres, taking the smallest admissible slope at
    each step; any walk through consecutive spheres extends to a ray.
    """
    spheres = geodesic_spheres(x, a, length)
    path = [x]
    for t in range(1, length + 1):
        nxt = sorted(w for w in spheres[t] if adjacent(path[-1], w))
        path.append(nxt[0])
    return RaySegment(x, path, a, length)


def edge_distance(base: Slope, e: FareyEdge) -> int:
    return min(distance(base, e.u), distance(base, e.v))


def gromov_product_bounds(a: BoundaryPoint, b: BoundaryPoint, base: Slope, max_depth: int = 200):
    """Bracket (low, high) for the boundary Gromov product (a|b)_base.

    low comes from the last edge separating base from both points,
    high from the first edge separating one point from base and the other.
    """
    for n in range(2, max_depth):
        if n + 1 > min(a.depth, b.depth):
            break
        ea, eb = _edges_toward(base, a, n), _edges_toward(base, b, n)
        k = 0
        while k < min(len(ea), len(eb)) and ea[k] == eb[k]:
            k += 1
        if k < len(ea) and k < len(eb):
            common = ea[:k]
            low = max([0] + [edge_distance(base, e) - 2 for e in common])
            high = min(edge_distance(base, ea[k]), edge_distance(base, eb[k])) + 1
            return low, high
    raise DepthExceeded("%s and %s are indistinguishable at the available depth" % (a, b))


def random_quadratic(rng, max_term: int = 4) -> BoundaryPoint:
    """A seeded eventually periodic continued fraction (a quadratic irrational)."""
    head = rng.randint(-3, 3)
    tail = tuple(rng.randint(1, max_term) for _ in range(rng.randint(0, 2)))
    period = tuple(rng.randint(1, max_term) for _ in range(rng.randint(1, 3)))
    return BoundaryPoint(head, tail, period)
