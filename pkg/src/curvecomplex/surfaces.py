"""Surface complexity, curve-system decomposition types and Euler invariants.

A curve system on a surface of type (g, p) is recorded at the level of
its decomposition graph: one vertex per complementary piece, labelled by
the piece's genus and its number of original boundary components (legs),
and one edge per curve. Graphs are enumerated exhaustively by cutting
pieces one curve at a time and deduplicated by a canonical certificate.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial

GAMMA_03_ORDER = 6  # the mapping class group of a pair of pants is S_3


@dataclass(frozen=True, order=True)
class SurfaceType:
    g: int
    p: int

    def __post_init__(self):
        if self.g < 0 or self.p < 0:
            raise ValueError("genus and boundary count must be nonnegative")

    @property
    def euler(self) -> int:
        return 2 - 2 * self.g - self.p

    def admissible(self) -> bool:
        """Whether this can be a piece of an essential curve system (chi < 0)."""
        return self.euler < 0

    def __str__(self):
        return "(%d,%d)" % (self.g, self.p)


def _st(s) -> SurfaceType:
    return s if isinstance(s, SurfaceType) else SurfaceType(*s)


def complexity(s) -> int:
    s = _st(s)
    return 3 * s.g + s.p - 4


def n_max(s) -> int:
    """g + floor((g+p-2)/2), the largest number of non-pants pieces."""
    s = _st(s)
    return s.g + (s.g + s.p - 2) // 2


def cut_nonseparating(s) -> SurfaceType:
    s = _st(s)
    if s.g < 1:
        raise ValueError("%s has no nonseparating curve" % s)
    return SurfaceType(s.g - 1, s.p + 2)


def cut_separating(s) -> list[tuple[SurfaceType, SurfaceType]]:
    """Unordered pairs of admissible pieces with g1+g2 = g, p1+p2 = p+2."""
    s = _st(s)
    out = []
    for g1 in range(s.g + 1):
        for p1 in range(1, s.p + 2):
            a, b = SurfaceType(g1, p1), SurfaceType(s.g - g1, s.p + 2 - p1)
            if a <= b and a.admissible() and b.admissible():
                out.append((a, b))
    return out


# -- decomposition graphs ---------------------------------------------------


@dataclass(frozen=True)
class DecompositionGraph:
    """Vertices are (genus, legs); edges are index pairs (i <= j), loops allowed."""

    vertices: tuple
    edges: tuple
    certificate: str = field(default="", compare=False)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return sum((i == v) + (j == v) for i, j in self.edges)

    def pieces(self) -> list[SurfaceType]:
        return [SurfaceType(g, legs + self.degree(v)) for v, (g, legs) in enumerate(self.vertices)]

    def surface(self) -> SurfaceType:
        genus = sum(g for g, _ in self.vertices) + len(self.edges) - len(self.vertices) + 1
        return SurfaceType(genus, sum(legs for _, legs in self.vertices))

    def is_tree(self) -> bool:
        return len(self.edges) == len(self.vertices) - 1

    def is_connected(self) -> bool:
        seen, stack = {0}, [0]
        while stack:
            v = stack.pop()
            for i, j in self.edges:
                for a, b in ((i, j), (j, i)):
                    if a == v and b not in seen:
                        seen.add(b)
                        stack.append(b)
        return len(seen) == len(self.vertices)

    def validate(self, s=None) -> None:
        if not self.is_connected():
            raise ValueError("decomposition graph is disconnected")
        for piece in self.pieces():
            if not piece.admissible():
                raise ValueError("piece %s is not admissible" % piece)
        if s is not None and self.surface() != _st(s):
            raise ValueError("graph describes %s, not %s" % (self.surface(), _st(s)))

    def type_counts(self) -> Counter:
        return Counter((q.g, q.p) for q in self.pieces())

    def bridges(self) -> list[int]:
        """Indices of edges whose removal disconnects the graph (separating curves)."""
        out = []
        for k, (i, j) in enumerate(self.edges):
            if i != j and not _connected_without(self, k, i, j):
                out.append(k)
        return out

    def as_dict(self):
        return {
            "vertices": [list(v) for v in self.vertices],
            "edges": [list(e) for e in self.edges],
            "pieces": [str(q) for q in self.pieces()],
            "n": n_of(self),
            "certificate": self.certificate,
        }


def _connected_without(d: DecompositionGraph, skip: int, src: int, dst: int) -> bool:
    seen, stack = {src}, [src]
    while stack:
        v = stack.pop()
        for k, (i, j) in enumerate(d.edges):
            if k == skip:
                continue
            for a, b in ((i, j), (j, i)):
                if a == v and b not in seen:
                    seen.add(b)
                    stack.append(b)
    return dst in seen


def components_without(d: DecompositionGraph, removed) -> list[SurfaceType]:
    """Surface types of the pieces left after cutting along the given edges only."""
    removed = set(removed)
    n = len(d.vertices)
    parent = list(range(n))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for k, (i, j) in enumerate(d.edges):
        if k not in removed:
            parent[find(i)] = find(j)
    genus, legs, verts, edges = Counter(), Counter(), Counter(), Counter()
    for v, (g, l) in enumerate(d.vertices):
        r = find(v)
        genus[r] += g
        legs[r] += l
        verts[r] += 1
    for k, (i, j) in enumerate(d.edges):
        if k in removed:
            legs[find(i)] += 1
            legs[find(j)] += 1
        else:
            edges[find(i)] += 1
    return sorted(SurfaceType(genus[r] + edges[r] - verts[r] + 1, legs[r]) for r in verts)


def _refine(n, labels, adj, colors):
    """Colour refinement; colours are canonical ranks of isomorphism-invariant signatures."""
    while True:
        sigs = [
            (colors[v], tuple(sorted((colors[w], adj[v][w]) for w in range(n) if w != v and adj[v][w])))
            for v in range(n)
        ]
        ranks = {s: r for r, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == len(set(colors)):
            return new
        colors = new


def _certificate(n, labels, adj, colors) -> tuple:
    colors = _refine(n, labels, adj, colors)
    if len(set(colors)) == n:
        order = sorted(range(n), key=lambda v: colors[v])
        return (
            tuple(labels[v] for v in order),
            tuple(adj[order[i]][order[j]] for i in range(n) for j in range(i, n)),
        )
    # individualise each vertex of the first non-singleton cell in turn
    counts = Counter(colors)
    target = min(c for c in counts if counts[c] > 1)
    best = None
    for v in range(n):
        if colors[v] != target:
            continue
        split = [2 * c + (1 if c == target and w != v else 0) for w, c in enumerate(colors)]
        cert = _certificate(n, labels, adj, split)
        if best is None or cert < best:
            best = cert
    return best


def canonical_form(vertices, edges) -> DecompositionGraph:
    """Relabel so that isomorphic labelled multigraphs become identical."""
    n = len(vertices)
    adj = [[0] * n for _ in range(n)]
    for i, j in edges:
        adj[i][j] += 1
        if i != j:
            adj[j][i] += 1
    labels = [(vertices[v], adj[v][v]) for v in range(n)]
    ranks = {s: r for r, s in enumerate(sorted(set(labels)))}
    labs, mat = _certificate(n, labels, adj, [ranks[s] for s in labels])
    verts = tuple(l[0] for l in labs)
    new_edges = []
    k = 0
    for i in range(n):
        for j in range(i, n):
            new_edges.extend([(i, j)] * mat[k])
            k += 1
    cert = ";".join("%d.%d" % v for v in verts) + "|" + ",".join(map(str, mat))
    return DecompositionGraph(verts, tuple(new_edges), cert)


def _children(d: DecompositionGraph):
    """Graphs obtained by adding one curve inside one piece."""
    pieces = d.pieces()
    for v, (g, legs) in enumerate(d.vertices):
        piece = pieces[v]
        if complexity(piece) < 0:
            continue
        if g >= 1:
            verts = list(d.vertices)
            verts[v] = (g - 1, legs)
            yield list(verts), list(d.edges) + [(v, v)]
        # separating curve: split v into v (side 0) and a new vertex w (side 1)
        w = len(d.vertices)
        ends = [(k, s) for k, e in enumerate(d.edges) for s in (0, 1) if e[s] == v]
        for g1 in range(g + 1):
            for l1 in range(legs + 1):
                for sides in product((0, 1), repeat=len(ends)):
                    deg1 = sum(sides)
                    p0 = l1 + len(ends) - deg1 + 1
                    p1 = legs - l1 + deg1 + 1
                    if 2 - 2 * g1 - p0 >= 0 or 2 - 2 * (g - g1) - p1 >= 0:
                        continue
                    edges = [list(e) for e in d.edges]
                    for (k, s), side in zip(ends, sides):
                        if side:
                            edges[k][s] = w
                    verts = list(d.vertices) + [(g - g1, legs - l1)]
                    verts[v] = (g1, l1)
                    yield verts, [tuple(e) for e in edges] + [(v, w)]


def _norm_edges(edges):
    return [tuple(sorted(e)) for e in edges]


@lru_cache(maxsize=None)
def _enumerate(s: SurfaceType, max_edges: int) -> tuple:
    root = canonical_form(((s.g, s.p),), ())
    found = {root.certificate: root}
    level = [root]
    for _ in range(max_edges):
        nxt = {}
        for d in level:
            for verts, edges in _children(d):
                c = canonical_form(verts, _norm_edges(edges))
                if c.certificate not in found and c.certificate not in nxt:
                    nxt[c.certificate] = c
        found.update(nxt)
        level = list(nxt.values())
        if not level:
            break
    return tuple(sorted(found.values(), key=lambda d: (d.num_edges, d.certificate)))


def enumerate_decompositions(s, max_edges: int | None = None) -> list[DecompositionGraph]:
    """All decomposition types of s with at most max_edges curves (default: pants bound)."""
    s = _st(s)
    if complexity(s) < 0 and s != SurfaceType(0, 3):
        raise ValueError("%s has negative complexity" % s)
    bound = 3 * s.g + s.p - 3
    if max_edges is None or max_edges > bound:
        max_edges = max(bound, 0)
    return list(_enumerate(s, max_edges))


def n_of(d: DecompositionGraph) -> int:
    """Number of pieces that are not pairs of pants."""
    return sum(1 for q in d.pieces() if (q.g, q.p) != (0, 3))


@lru_cache(maxsize=None)
def enumerated_n_max(s: SurfaceType) -> int:
    """max n over the enumeration, with the pair of pants allowed (value 0)."""
    return max(n_of(d) for d in _enumerate(s, max(3 * s.g + s.p - 3, 0)))


def _kappa_law_holds(d: DecompositionGraph) -> bool:
    kappa = complexity(d.surface())
    for k in d.bridges():
        q1, q2 = components_without(d, [k])
        if complexity(q1) + complexity(q2) + 2 != kappa:
            return False
    return True


def verify_max_lemma(s) -> dict:
    s = _st(s)
    graphs = enumerate_decompositions(s)
    ns = [n_of(d) for d in graphs]
    best = max(ns)
    full = [d for d in graphs if d.num_edges == 3 * s.g + s.p - 3]
    pants_ok = all(len(d.vertices) == 2 * s.g + s.p - 2 and n_of(d) == 0 for d in full)
    valid = True
    for d in graphs:
        try:
            d.validate(s)
        except ValueError:
            valid = False
    return {
        "surface": str(s),
        "kappa": complexity(s),
        "n_max": n_max(s),
        "enumerated_max": best,
        "types": len(graphs),
        "maximizers": ns.count(best),
        "pants_decompositions": len(full),
        "pants_count_ok": pants_ok and bool(full),
        "graphs_valid": valid,
        "kappa_law_ok": all(_kappa_law_holds(d) for d in graphs),
        "holds": best == n_max(s) and pants_ok and bool(full) and valid,
    }


ODD_TYPES = ((0, 3), (0, 4), (0, 5), (1, 1), (1, 2))


def odd_cases(s) -> dict:
    """The admissible count tuples (n03, n04, n05, n11, n12) for odd complexity."""
    s = _st(s)
    g, p = s.g, s.p
    cases = {"a": (1, (g + p - 3) // 2, 0, g, 0)}
    if g + p >= 5:
        cases["b"] = (0, (g + p - 5) // 2, 1, g, 0)
    if g >= 1:
        cases["c"] = (0, (g + p - 1) // 2, 0, g - 1, 0)
        cases["d"] = (0, (g + p - 3) // 2, 0, g - 1, 1)
    return cases


def verify_parity_lemmas(s) -> dict:
    """Check the shape of every maximizer against the parity of the complexity."""
    s = _st(s)
    kappa = complexity(s)
    graphs = enumerate_decompositions(s)
    target = n_max(s)
    maxers = [d for d in graphs if n_of(d) == target]
    report = {"surface": str(s), "kappa": kappa, "maximizers": len(maxers)}
    if kappa % 2 == 0:
        want = (0, (s.g + s.p - 2) // 2, s.g)
        bad = [
            d.certificate for d in maxers
            if tuple(d.type_counts()[t] for t in ((0, 3), (0, 4), (1, 1))) != want or not d.is_tree()
        ]
        report.update(parity="even", expected_counts=list(want), violations=bad, holds=not bad and bool(maxers))
        return report
    cases = odd_cases(s)
    seen, bad = set(), []
    for d in maxers:
        counts = d.type_counts()
        tup = tuple(counts[t] for t in ODD_TYPES)
        match = [k for k, v in cases.items() if v == tup]
        if sum(counts.values()) != sum(tup) or not match:
            bad.append(d.certificate)
        seen.update(match)
    missing = sorted(set(cases) - seen)
    report.update(
        parity="odd",
        cases={k: list(v) for k, v in cases.items()},
        realized=sorted(seen),
        missing=missing,
        violations=bad,
        holds=not bad and not missing,
    )
    return report


def _best(*pieces) -> int:
    return sum(enumerated_n_max(q) for q in pieces)


def extension_predicate_checks(s) -> dict:
    """Compare each parity predicate with the best extension found by enumeration.

    The best n(tau) over curve systems containing given curves is the sum of
    the enumerated maxima of the pieces those curves cut out.
    """
    s = _st(s)
    kappa = complexity(s)
    target = n_max(s)
    checks = []

    def record(kind, pieces, predicate, oracle):
        checks.append({
            "kind": kind,
            "pieces": [str(q) for q in pieces],
            "predicate": predicate,
            "oracle": oracle,
            "agree": predicate == oracle,
        })

    if kappa % 2 == 1:
        # one curve: a maximal extension always exists
        if s.g >= 1:
            q = cut_nonseparating(s)
            record("odd-single-nonseparating", [q], True, _best(q) == target)
        for q1, q2 in cut_separating(s):
            record("odd-single-separating", [q1, q2], True, _best(q1, q2) == target)
        # two disjoint separating curves
        for q1, rest in _ordered_cuts(s):
            for q2, q3 in cut_separating(rest):
                pieces = [q1, q2, q3]
                pred = any(complexity(q) % 2 == 0 for q in pieces)
                record("odd-two-separating", pieces, pred, _best(*pieces) == target)
        # a separating curve and a nonseparating curve on one side
        for q1, q2 in _ordered_cuts(s):
            if q1.g >= 1:
                pred = complexity(q1) % 2 == 1
                record("odd-separating-nonseparating", [q1, q2], pred,
                       _best(cut_nonseparating(q1), q2) == target)
    else:
        # a curve disjoint from a maximizer, inside one of its pieces
        seen = set()
        for d in enumerate_decompositions(s):
            if n_of(d) != target:
                continue
            for pieces in _curves_off_system(d):
                key = tuple(pieces)
                if key in seen:
                    continue
                seen.add(key)
                record("even-off-maximizer", pieces, True, _best(*pieces) <= target - 1)
                checks[-1]["best"] = _best(*pieces)
    return {
        "surface": str(s),
        "kappa": kappa,
        "instances": len(checks),
        "disagreements": [c for c in checks if not c["agree"]],
        "checks": checks,
        "holds": all(c["agree"] for c in checks),
    }


def _ordered_cuts(s: SurfaceType):
    for a, b in cut_separating(s):
        yield a, b
        if a != b:
            yield b, a


def _curves_off_system(d: DecompositionGraph):
    """Cut types of M along one curve lying in a (1,1) or (0,4) piece of d."""
    surface = d.surface()
    pieces = d.pieces()
    for v, q in enumerate(pieces):
        if (q.g, q.p) == (1, 1):
            yield [cut_nonseparating(surface)]
        elif (q.g, q.p) == (0, 4):
            # split the four boundary slots of v two and two with a new curve
            g, legs = d.vertices[v]
            ends = [(k, s) for k, e in enumerate(d.edges) for s in (0, 1) if e[s] == v]
            slots = [("leg", i) for i in range(legs)] + [("end", e) for e in ends]
            for other in range(1, 4):
                side = {0, other}
                w = len(d.vertices)
                edges = [list(e) for e in d.edges]
                new_legs = [0, 0]
                for idx, (kind, ref) in enumerate(slots):
                    part = 0 if idx in side else 1
                    if kind == "leg":
                        new_legs[part] += 1
                    elif part:
                        edges[ref[0]][ref[1]] = w
                verts = list(d.vertices) + [(0, new_legs[1])]
                verts[v] = (0, new_legs[0])
                split = DecompositionGraph(tuple(verts), tuple(_norm_edges(edges)) + ((v, w),))
                yield components_without(split, [len(split.edges) - 1])


# -- Bernoulli numbers and Euler invariants ---------------------------------


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple:
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(comb(m + 1, k) * B[k] for k in range(m)) / (m + 1))
    return tuple(B)


def bernoulli(n: int) -> Fraction:
    """B_n with B_1 = -1/2, from sum_{k<=n} C(n+1,k) B_k = 0."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    return _bernoulli_table(n)[n]


def _check_domain(s: SurfaceType):
    if s.p == 0 and s.g <= 1:
        raise ValueError("no formula for closed surfaces of genus %d" % s.g)
    if 2 * s.g - 2 + s.p <= 0:
        raise ValueError("%s has nonnegative Euler characteristic" % s)


def virtual_euler(s) -> Fraction:
    s = _st(s)
    _check_domain(s)
    g, p = s.g, s.p
    B = bernoulli(2 * g)
    if p == 0:
        return B / (4 * g * (g - 1))
    return (-1) ** p * Fraction(factorial(p + 2 * g - 3) * (2 * g - 1), factorial(p) * factorial(2 * g)) * B


def l2_betti(s) -> tuple[int, Fraction]:
    """(k, beta_k): the only nonzero l2-Betti number sits in degree k = 3g-3+p."""
    s = _st(s)
    _check_domain(s)
    g, p = s.g, s.p
    B = abs(bernoulli(2 * g))
    if p == 0:
        return 3 * g - 3, B / (4 * g * (g - 1))
    return 3 * g - 3 + p, Fraction(factorial(p + 2 * g - 3) * abs(2 * g - 1), factorial(p) * factorial(2 * g)) * B


def l2_euler(s) -> Fraction:
    k, beta = l2_betti(s)
    return (-1) ** k * beta


def cost(s) -> Fraction:
    """Cost of the mapping class group where it is known in closed form."""
    s = _st(s)
    if (s.g, s.p) == (0, 3):
        return 1 - Fraction(1, GAMMA_03_ORDER)
    if (s.g, s.p) == (1, 1):
        k, beta = l2_betti(s)
        return 1 + beta  # fixed price: 1 + beta_1 - beta_0 with beta_0 = 0
    if complexity(s) > 0:
        return Fraction(1)
    raise ValueError("no closed-form cost recorded for %s" % s)
