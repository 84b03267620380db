"""Busemann functions towards boundary points and MIN-sets of ideal triangles.

alpha_a(x, y) is the eventual value of d(x, G(y,a)_t) - t and beta_a(x, y)
the eventual value of max{d(x, z) : z in G(y,a)_t} - t. Every vertex of
G(y,a)_{t+1} has a neighbour in G(y,a)_t and vice versa, so both sequences
are non-increasing, and they are bounded below by -d(x, y). They are
therefore eventually constant. A value is reported once the sequence is
constant on [T - 2w, T] for horizon T and window w.

The max-based beta equals the supremum over rays of the per-ray limits:
each per-ray sequence is itself non-increasing, and the rays attaining the
sphere maximum at every time t have a convergent subsequence because the
spheres are finite.

F^y(w) = alpha_a(w, y) + alpha_b(w, y) + alpha_c(w, y) is minimised over
the region X(a, b, c) swept out by geodesics between the three points.
min_set searches that region inside a window around a canonical centre
and certifies interior attainment by a positive margin on the window
boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import boundary, farey
from .boundary import BoundaryPoint, DepthExceeded, StabilizationError
from .farey import INF, ZERO, Slope, adjacent, apply_sl2
from .hypgraph import FareyOracle, GraphOracle, TreeEnd, TreeOracle, farey_sample_delta
from .sl2 import SL2Matrix


class PlateauError(RuntimeError):
    """The Busemann sequence was not constant on the stability window."""


class MembershipError(ValueError):
    """A vertex outside the searched region X(a, b, c)."""


class WindowTooSmall(RuntimeError):
    """The window boundary does not have a positive margin over the minimum."""


MAX_HORIZON = 48


def _oracle_for(a, oracle):
    if oracle is not None:
        return oracle
    return TreeOracle() if isinstance(a, TreeEnd) else FareyOracle()


@dataclass(frozen=True)
class BusemannValue:
    value: int
    mode: str  # "alpha" or "beta"
    horizon: int
    window: int
    sequence: tuple = ()

    def as_dict(self):
        return {"value": self.value, "mode": self.mode, "horizon": self.horizon,
                "window": self.window, "sequence": list(self.sequence)}


def _sequence(oracle, x, spheres, mode: str) -> list[int]:
    pick = min if mode == "alpha" else max
    return [pick(oracle.distance(x, z) for z in s) - t for t, s in enumerate(spheres)]


def _plateau(seq, T: int, w: int) -> bool:
    tail = seq[max(0, T - 2 * w): T + 1]
    return max(tail) == min(tail)


def _eventual(mode, a, x, y, horizon, window, oracle, extend, max_horizon):
    if window < 1:
        raise ValueError("window must be positive")
    oracle = _oracle_for(a, oracle)
    d = oracle.distance(x, y)
    T = horizon if horizon is not None else d + 2 * window
    if T < d + window:
        raise ValueError("horizon %d is below d(x,y) + window = %d" % (T, d + window))
    while True:
        seq = _sequence(oracle, x, oracle.spheres(y, a, T), mode)
        if _plateau(seq, T, window):
            return BusemannValue(seq[T], mode, T, window, tuple(seq))
        if not extend or T + window > max_horizon:
            raise PlateauError("%s_%s(%s,%s) not constant on [%d,%d]" % (mode, a, x, y, max(0, T - 2 * window), T))
        T += window


def alpha(a, x, y, horizon: int | None = None, window: int = 3, oracle: GraphOracle | None = None,
          extend: bool | None = None, max_horizon: int = MAX_HORIZON) -> BusemannValue:
    """alpha_a(x, y) from the nearest sphere vertices.

    With no horizon the search starts at d(x,y) + 2w and grows by w until
    the plateau appears; an explicit horizon is used as given unless
    extend=True.
    """
    extend = horizon is None if extend is None else extend
    return _eventual("alpha", a, x, y, horizon, window, oracle, extend, max_horizon)


def beta(a, x, y, horizon: int | None = None, window: int = 3, oracle: GraphOracle | None = None,
         extend: bool | None = None, max_horizon: int = MAX_HORIZON) -> BusemannValue:
    """beta_a(x, y) from the farthest sphere vertices (the supremum over rays)."""
    extend = horizon is None if extend is None else extend
    return _eventual("beta", a, x, y, horizon, window, oracle, extend, max_horizon)


def ray_walk(a, y, T: int, pick: str = "min", oracle: GraphOracle | None = None) -> list:
    """A ray from y towards a through the spheres, taking the least (or greatest) admissible vertex."""
    oracle = _oracle_for(a, oracle)
    spheres = oracle.spheres(y, a, T)
    chooser = min if pick == "min" else max
    path = [y]
    for t in range(1, T + 1):
        if isinstance(oracle, TreeOracle):
            path.append(next(iter(spheres[t])))
        else:
            path.append(chooser(w for w in spheres[t] if adjacent(path[-1], w)))
    return path


def beta_along_ray(a, x, y, pick: str = "min", horizon: int | None = None, window: int = 3,
                   oracle: GraphOracle | None = None, max_horizon: int = MAX_HORIZON) -> BusemannValue:
    """beta_a(x, h) = eventual value of d(x, h(t)) - t for the walk chosen by pick."""
    oracle = _oracle_for(a, oracle)
    d = oracle.distance(x, y)
    T = horizon if horizon is not None else d + 2 * window
    while True:
        path = ray_walk(a, y, T, pick, oracle)
        seq = [oracle.distance(x, v) - t for t, v in enumerate(path)]
        if _plateau(seq, T, window):
            return BusemannValue(seq[T], "beta-ray", T, window, tuple(seq))
        if T + window > max_horizon:
            raise PlateauError("ray sequence from %s not constant by horizon %d" % (y, T))
        T += window


def cocycle_defects(a, x, y, z, **kw) -> tuple[int, int]:
    """(|beta(x,y) + beta(y,x)|, |beta(x,y) + beta(y,z) - beta(x,z)|)."""
    bxy = beta(a, x, y, **kw).value
    byx = beta(a, y, x, **kw).value
    byz = beta(a, y, z, **kw).value
    bxz = beta(a, x, z, **kw).value
    return abs(bxy + byx), abs(bxy + byz - bxz)


# -- the region X(a, b, c) ---------------------------------------------------

_STEPS = (SL2Matrix(1, -1, 0, 1), SL2Matrix(1, 0, 1, 1), SL2Matrix(1, 1, 0, 1))


def median_triangle(a: BoundaryPoint, b: BoundaryPoint, c: BoundaryPoint, budget: int = 10_000) -> tuple[Slope, ...]:
    """The Farey triangle whose three complementary arcs hold a, b and c one each.

    It is the median of the three ends in the dual tree, so it depends only
    on the triple and m maps the triangle of (a,b,c) to that of (ma,mb,mc).
    """
    if len({a, b, c}) < 3:
        raise ValueError("boundary points must be distinct")
    g = SL2Matrix(1, 0, 0, 1)
    for _ in range(budget):
        ginv = g.inverse()
        arcs = []
        for p in (a, b, c):
            head = p.transform(ginv).head
            arcs.append(0 if head < 0 else 1 if head == 0 else 2)
        if len(set(arcs)) == 3:
            return tuple(sorted(apply_sl2(g, v) for v in (ZERO, Slope(1, 1), INF)))
        g = g @ _STEPS[max(set(arcs), key=arcs.count)]
    raise DepthExceeded("boundary points %s, %s, %s not separated" % (a, b, c))


def _tree_line(a: TreeEnd, b: TreeEnd) -> list[str]:
    """Vertices of the bi-infinite line from a to b, truncated far out."""
    L = 64 + len(a.prefix) + len(b.prefix) + 4 * (len(a.period) + len(b.period))
    wa, wb = a.word(L), b.word(L)
    k = 0
    while k < L and wa[k] == wb[k]:
        k += 1
    if k == L:
        raise ValueError("ends %s and %s coincide" % (a, b))
    return [wa[:i] for i in range(L, k, -1)] + [wa[:k]] + [wb[:i] for i in range(k + 1, L + 1)]


def tree_median(a: TreeEnd, b: TreeEnd, c: TreeEnd) -> str:
    lines = [set(_tree_line(a, b)), set(_tree_line(b, c)), set(_tree_line(c, a))]
    (m,) = lines[0] & lines[1] & lines[2]
    return m


def _dist_to(oracle, center, w) -> int:
    return min(oracle.distance(w, v) for v in center)


def _start_index(p: BoundaryPoint, center, R: int) -> int:
    n = 0
    while True:
        if n + 3 > p.depth:
            raise DepthExceeded("no convergent of %s at distance %d from the centre" % (p, R + 2))
        cs = (p.convergent(n), p.convergent(n + 1))
        if all(c not in center and farey.distance(v, c) >= R + 2 for v in center for c in cs):
            return n
        n += 1


def _farey_side(a: BoundaryPoint, b: BoundaryPoint, center, R: int, budget: int = 20) -> frozenset:
    """Vertices within R of the centre on bi-infinite geodesics from a to b.

    Geodesics between deep convergents of a and of b are probed at three
    consecutive depths; the windowed vertex sets must agree.
    """
    def probe(n, m):
        out = set()
        for A in (a.convergent(n), a.convergent(n + 1)):
            for B in (b.convergent(m), b.convergent(m + 1)):
                out |= {w for w in farey.geodesic_vertices(A, B) if _dist_to(farey_oracle, center, w) <= R}
        return frozenset(out)

    n, m = _start_index(a, center, R), _start_index(b, center, R)
    for _ in range(budget):
        if max(n, m) + 5 > min(a.depth, b.depth):
            raise DepthExceeded("geodesics from %s to %s need more depth" % (a, b))
        probes = [probe(n + k, m + k) for k in range(3)]
        if probes[0] == probes[1] == probes[2]:
            return probes[0]
        n, m = n + 2, m + 2
    raise StabilizationError("geodesics from %s to %s did not stabilise near the centre" % (a, b))


farey_oracle = FareyOracle()


@lru_cache(maxsize=256)
def region(a, b, c, R: int) -> tuple[tuple, frozenset]:
    """(centre, X(a,b,c) within distance R of the centre).

    X is the union over x in G(a,b) of the rays from x towards b, and
    cyclically; the side sets and ray starting points are taken inside the
    window.
    """
    if isinstance(a, TreeEnd):
        tree = TreeOracle()
        center = (tree_median(a, b, c),)
        out = set()
        for p, q in ((a, b), (b, c), (c, a)):
            out |= {v for v in _tree_line(p, q) if tree.distance(v, center[0]) <= R}
        return center, frozenset(out)
    center = median_triangle(a, b, c)
    out = set()
    for p, q in ((a, b), (b, c), (c, a)):
        for x in _farey_side(p, q, center, R):
            for sphere in boundary.geodesic_spheres(x, q, 2 * R):
                out |= {w for w in sphere if _dist_to(farey_oracle, center, w) <= R}
    return center, frozenset(out)


def in_region(a, b, c, w, R: int) -> bool:
    return w in region(a, b, c, R)[1]


def minset_eval(a, b, c, y, w, horizon: int | None = None, window: int = 3, R: int | None = None) -> int:
    """F^y(w) = alpha_a(w,y) + alpha_b(w,y) + alpha_c(w,y); membership is tested when R is given."""
    if len({a, b, c}) < 3:
        raise ValueError("boundary points must be distinct")
    if R is not None and not in_region(a, b, c, w, R):
        raise MembershipError("%s is not in X(a,b,c) within radius %d" % (w, R))
    return sum(alpha(p, w, y, horizon, window, extend=True).value for p in (a, b, c))


def base_change_defect(a, b, c, x, y, z, **kw) -> int:
    """|F^y(x) + F^z(y) - F^z(x)|."""
    return abs(minset_eval(a, b, c, y, x, **kw) + minset_eval(a, b, c, z, y, **kw) - minset_eval(a, b, c, z, x, **kw))


@dataclass
class MinSetResult:
    triple: tuple
    radius: int
    center: tuple
    region: frozenset
    bases: tuple
    minima: dict  # y -> MV^y
    ms: frozenset
    ms_prime: frozenset
    margin: int
    delta_hat: Fraction
    values: dict = field(default_factory=dict)  # y -> {w: F^y(w)}

    @property
    def certified(self) -> bool:
        """True when the margin exceeds 672 delta + 3, so the window provably holds MS."""
        return self.margin > 672 * self.delta_hat + 3

    def as_dict(self):
        key = lambda v: v.sort_key() if isinstance(v, Slope) else (len(v), v)
        return {
            "triple": [str(p) for p in self.triple],
            "window": self.radius,
            "center": [str(v) for v in self.center],
            "bases": [str(v) for v in self.bases],
            "minima": {str(y): mv for y, mv in self.minima.items()},
            "MS": [str(v) for v in sorted(self.ms, key=key)],
            "MS_prime": [str(v) for v in sorted(self.ms_prime, key=key)],
            "margin": self.margin,
            "delta_hat": str(self.delta_hat),
            "approximate": not self.certified,
        }


def min_set(a, b, c, R: int = 4, bases: int = 0, window: int = 3) -> MinSetResult:
    """Windowed MIN-set of (a, b, c).

    The window is X(a,b,c) within R of the centre. Bases are the centre
    vertices plus region vertices within `bases` of the centre. MS is the
    union over bases of the minimisers of F^y on the window, and MS' its
    radius-3 neighbourhood inside the window. The margin is the least F
    value on the window boundary minus the minimum, over all bases.
    """
    if len({a, b, c}) < 3:
        raise ValueError("boundary points must be distinct")
    is_tree = isinstance(a, TreeEnd)
    oracle = TreeOracle() if is_tree else farey_oracle
    center, X = region(a, b, c, R)
    depth = {w: _dist_to(oracle, center, w) for w in X}
    rim = [w for w in X if depth[w] == R]
    if not rim:
        raise WindowTooSmall("no region vertex at distance %d from the centre" % R)
    ys = sorted(set(center) | {w for w in X if depth[w] <= bases}, key=lambda v: (depth.get(v, 0), str(v)))
    minima, values, ms = {}, {}, set()
    margin = None
    for y in ys:
        span = max(oracle.distance(w, y) for w in X)
        T = span + 2 * window
        vals = {w: sum(alpha(p, w, y, T, window, oracle, extend=True).value for p in (a, b, c)) for w in X}
        mv = min(vals.values())
        minima[y], values[y] = mv, vals
        ms |= {w for w, v in vals.items() if v == mv}
        gap = min(vals[w] for w in rim) - mv
        margin = gap if margin is None else min(margin, gap)
    if margin <= 0:
        raise WindowTooSmall("window radius %d has boundary margin %d" % (R, margin))
    ms_prime = frozenset(w for w in X if min(oracle.distance(w, v) for v in ms) <= 3)
    delta_hat = Fraction(0) if is_tree else farey_sample_delta()
    return MinSetResult((a, b, c), R, tuple(center), X, tuple(ys), minima, frozenset(ms), ms_prime,
                        margin, delta_hat, values)


def properness_constant(result: MinSetResult, oracle: GraphOracle | None = None) -> int:
    """Least M0 with F^y(w) >= d(w,y) - M0 over every evaluated (y, w)."""
    oracle = oracle or _oracle_for(result.triple[0], None)
    return max(oracle.distance(w, y) - v for y, vals in result.values.items() for w, v in vals.items())
