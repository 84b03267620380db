"""Gromov products and hyperbolicity constants over pluggable graph backends.

A backend ("oracle") supplies distance(x, y) and geodesics(x, y); backends
with bounded geometry also supply neighbors(v). Backends that know their
boundary supply spheres(y, a, T): the sets G(y,a)_t for t = 0..T of
vertices reached at time t by geodesic rays from y towards the end a.

All constants are exact: Gromov products are half-integers held as
Fractions.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Hashable, Iterable, Sequence

import numpy as np


class GraphOracle:
    """Interface; subclasses override what they support."""

    name = "abstract"
    bounded_geometry = False

    def distance(self, x, y) -> int:
        raise NotImplementedError

    def geodesics(self, x, y) -> list[list]:
        raise NotImplementedError

    def neighbors(self, v) -> list:
        raise NotImplementedError("%s backend is locally infinite" % self.name)

    def spheres(self, y, a, T: int) -> list[set]:
        raise NotImplementedError

    def ball(self, x, r: int) -> set:
        """B(x; r) by breadth-first search (bounded-geometry backends only)."""
        seen = {x: 0}
        queue = deque([x])
        while queue:
            u = queue.popleft()
            if seen[u] == r:
                continue
            for w in self.neighbors(u):
                if w not in seen:
                    seen[w] = seen[u] + 1
                    queue.append(w)
        return set(seen)


class FareyOracle(GraphOracle):
    name = "farey"

    def distance(self, x, y):
        from . import farey
        return farey.distance(x, y)

    def geodesics(self, x, y):
        from . import farey
        return farey.geodesics(x, y)

    def spheres(self, y, a, T):
        from . import boundary
        return boundary.geodesic_spheres(y, a, T)


# -- 3-regular tree ---------------------------------------------------------
#
# The Cayley graph of Z/2 * Z/2 * Z/2: vertices are reduced words over
# "012" (no letter repeated twice in a row), neighbours differ by one
# letter at the end. Ends are eventually periodic infinite reduced words.


@dataclass(frozen=True)
class TreeEnd:
    prefix: str
    period: str

    def __post_init__(self):
        if not self.period:
            raise ValueError("an end needs a nonempty period")
        w = self.prefix + self.period * 3
        if any(a == b for a, b in zip(w, w[1:])) or set(w) - set("012"):
            raise ValueError("end %r(%r) is not a reduced word" % (self.prefix, self.period))

    def word(self, n: int) -> str:
        """First n letters."""
        k = len(self.prefix)
        if n <= k:
            return self.prefix[:n]
        reps = (n - k) // len(self.period) + 1
        return (self.prefix + self.period * reps)[:n]

    def __str__(self):
        return "%s(%s)" % (self.prefix, self.period)

    @classmethod
    def parse(cls, text: str) -> "TreeEnd":
        head, _, rest = text.partition("(")
        return cls(head, rest.rstrip(")"))


def _lcp(u: str, v: str) -> int:
    n = 0
    for a, b in zip(u, v):
        if a != b:
            break
        n += 1
    return n


class TreeOracle(GraphOracle):
    """The 3-regular tree; vertex ids are reduced words, ends are TreeEnd."""

    name = "tree3"
    bounded_geometry = True

    def distance(self, x: str, y: str) -> int:
        k = _lcp(x, y)
        return len(x) + len(y) - 2 * k

    def path(self, x: str, y: str) -> list[str]:
        k = _lcp(x, y)
        up = [x[:i] for i in range(len(x), k - 1, -1)]
        down = [y[:i] for i in range(k + 1, len(y) + 1)]
        return up + down

    def geodesics(self, x, y):
        return [self.path(x, y)]

    def neighbors(self, v: str) -> list[str]:
        out = [v + c for c in "012" if not v.endswith(c)]
        if v:
            out.append(v[:-1])
        return out

    def ray(self, y: str, a: TreeEnd, T: int) -> list[str]:
        """The unique geodesic ray from y towards a, first T+1 vertices."""
        w = a.word(len(y) + T + 1)
        k = _lcp(y, w)
        up = [y[:i] for i in range(len(y), k - 1, -1)]
        down = [w[:i] for i in range(k + 1, k + T + 1)]
        return (up + down)[: T + 1]

    def spheres(self, y, a, T):
        return [{v} for v in self.ray(y, a, T)]


class FiniteGraphOracle(GraphOracle):
    """A finite graph read from an edge list, searched with networkx."""

    name = "file"
    bounded_geometry = True

    def __init__(self, graph):
        import networkx as nx

        self._nx = nx
        self.graph = graph
        self._dist = dict(nx.all_pairs_shortest_path_length(graph))

    @classmethod
    def from_edge_list(cls, text: str) -> "FiniteGraphOracle":
        import networkx as nx

        g = nx.Graph()
        for line in text.splitlines():
            line = line.split("#")[0].strip()
            if not line:
                continue
            u, v = line.split()
            g.add_edge(u, v)
        if not nx.is_connected(g):
            raise ValueError("graph is not connected")
        return cls(g)

    @classmethod
    def from_file(cls, path) -> "FiniteGraphOracle":
        with open(path) as fh:
            return cls.from_edge_list(fh.read())

    def distance(self, x, y):
        return self._dist[x][y]

    def geodesics(self, x, y):
        return sorted(self._nx.all_shortest_paths(self.graph, x, y))

    def neighbors(self, v):
        return sorted(self.graph.neighbors(v))

    @property
    def vertices(self):
        return sorted(self.graph.nodes)


# -- constants ---------------------------------------------------------------


def gromov_product(oracle: GraphOracle, x, y, z) -> Fraction:
    """(x|y)_z."""
    d = oracle.distance
    return Fraction(d(x, z) + d(y, z) - d(x, y), 2)


def distance_matrix(oracle: GraphOracle, vertices: Sequence) -> np.ndarray:
    n = len(vertices)
    D = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            D[i, j] = D[j, i] = oracle.distance(vertices[i], vertices[j])
    return D


def four_point_delta(oracle: GraphOracle, vertices: Iterable) -> Fraction:
    """Least delta with (x|z)_w >= min((x|y)_w, (y|z)_w) - delta on all quadruples.

    Uses the equivalent pair-sum form: for each quadruple the largest of
    d(x,y)+d(z,w), d(x,z)+d(y,w), d(x,w)+d(y,z) exceeds the middle one by
    at most 2*delta.
    """
    verts = list(dict.fromkeys(vertices))
    if len(verts) < 4:
        raise ValueError("need at least four vertices")
    D = distance_matrix(oracle, verts)
    best = 0
    n = len(verts)
    for i in range(n):
        Di = D[i]
        for j in range(i, n):
            Dj = D[j]
            s = np.stack([
                np.broadcast_to(D[i, j] + D, (n, n)),
                Di[:, None] + Dj[None, :],
                Dj[:, None] + Di[None, :],
            ])
            s.sort(axis=0)
            best = max(best, int((s[2] - s[1]).max()))
    return Fraction(best, 2)


def slim_delta(oracle: GraphOracle, triangles: Iterable[tuple], max_choices: int = 10_000) -> Fraction:
    """Least delta' making every sampled geodesic triangle delta'-slim, over all geodesic choices."""
    best = 0
    d = oracle.distance
    for x, y, z in triangles:
        sides = [oracle.geodesics(x, y), oracle.geodesics(y, z), oracle.geodesics(z, x)]
        if len(sides[0]) * len(sides[1]) * len(sides[2]) > max_choices:
            raise RuntimeError("too many geodesic triangles on (%s, %s, %s)" % (x, y, z))
        for choice in product(*sides):
            for k in range(3):
                others = set(choice[(k + 1) % 3]) | set(choice[(k + 2) % 3])
                for v in choice[k]:
                    best = max(best, min(d(v, w) for w in others))
    return Fraction(best)


def central_segment(f: Sequence, r: int) -> list:
    """Drop r vertices from each end of the path f."""
    n = len(f) - 1
    if r < 0 or 2 * r > n:
        raise ValueError("cannot trim %d from each end of a path of length %d" % (r, n))
    return list(f[r: n - r + 1])


def r_close(oracle: GraphOracle, f: Sequence, g: Sequence, r: int) -> bool:
    if len(f) != len(g):
        raise ValueError("paths have different lengths")
    return all(oracle.distance(a, b) <= r for a, b in zip(f, g))


def distance_to_set(oracle: GraphOracle, x, vertices: Iterable) -> int:
    return min(oracle.distance(x, v) for v in vertices)


def fellow_travel_offset(oracle: GraphOracle, f: Sequence, g: Sequence, i0: int, shifts: range):
    """Best (shift l, bound) minimising max_{i >= i0} d(f(i), g(i - l)) over the given shifts."""
    best = None
    for l in shifts:
        idx = [i for i in range(i0, len(f)) if 0 <= i - l < len(g)]
        if not idx:
            continue
        m = max(oracle.distance(f[i], g[i - l]) for i in idx)
        if best is None or m < best[1]:
            best = (l, m)
    return best


@dataclass
class HyperbolicityReport:
    four_point_delta: Fraction
    slim_delta: Fraction
    sample: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "four_point_delta": str(self.four_point_delta),
            "slim_delta": str(self.slim_delta),
            "sample": self.sample,
        }


def farey_sample(max_den: int, lo: int = 0, hi: int = 1) -> list:
    """Slopes p/q in [lo, hi] with q <= max_den, plus 1/0."""
    from math import gcd
    from .farey import INF, Slope

    out = [INF]
    for q in range(1, max_den + 1):
        for p in range(lo * q, hi * q + 1):
            if gcd(p, q) == 1:
                out.append(Slope(p, q))
    return out


def report(oracle: GraphOracle, vertices: Sequence, triangles: Sequence, sample: dict) -> HyperbolicityReport:
    return HyperbolicityReport(four_point_delta(oracle, vertices), slim_delta(oracle, triangles), sample)


@lru_cache(maxsize=None)
def farey_sample_delta(max_den: int = 6) -> Fraction:
    """Four-point delta of the Farey graph over farey_sample(max_den, -1, 2).

    Bounds downstream that are stated in terms of delta use this measured
    value; it is a sample statistic, not a proven global constant.
    """
    return four_point_delta(FareyOracle(), farey_sample(max_den, -1, 2))
