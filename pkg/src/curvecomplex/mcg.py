"""SL(2,Z) acting on slopes: element types, fixed points, Dehn twists.

Classification follows the absolute trace: |tr| < 2 (or +-I) is finite
order, |tr| = 2 is reducible with one fixed slope, |tr| > 2 is
pseudo-Anosov with two irrational fixed points. Everything is exact:
fixed points and dilatations are quadratic surds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .boundary import BoundaryPoint
from .farey import Slope, apply_sl2, intersection_number, random_slope, reduce
from .sl2 import SL2Matrix
from .surd import QuadraticSurd

FINITE = "FiniteOrder"
REDUCIBLE = "Reducible"
PSEUDO_ANOSOV = "PseudoAnosov"


@dataclass
class ElementClass:
    tag: str
    lift: SL2Matrix
    order: int | None = None  # order of the matrix itself
    projective_order: int | None = None  # order of its action on slopes
    fixed_slope: Slope | None = None
    f_plus: QuadraticSurd | None = None
    f_minus: QuadraticSurd | None = None
    dilatation: QuadraticSurd | None = None

    def attracting(self) -> BoundaryPoint:
        return BoundaryPoint.from_surd(self.f_plus)

    def repelling(self) -> BoundaryPoint:
        return BoundaryPoint.from_surd(self.f_minus)

    def as_dict(self):
        out = {"tag": self.tag, "matrix": str(self.lift)}
        if self.tag == FINITE:
            out.update(order=self.order, projective_order=self.projective_order)
        elif self.tag == REDUCIBLE:
            out["fixed_slope"] = str(self.fixed_slope)
        else:
            out.update(
                dilatation=str(self.dilatation),
                f_plus=str(self.f_plus),
                f_minus=str(self.f_minus),
                f_plus_cf=str(self.attracting()),
                f_minus_cf=str(self.repelling()),
            )
        return out


# matrix order and order on slopes, by trace, for elliptic elements
_ELLIPTIC = {0: (4, 2), 1: (6, 3), -1: (3, 3)}


def classify(m: SL2Matrix) -> ElementClass:
    tr = m.trace()
    if m.is_scalar():
        return ElementClass(FINITE, m, order=1 if m.a == 1 else 2, projective_order=1)
    if abs(tr) < 2:
        order, porder = _ELLIPTIC[tr]
        return ElementClass(FINITE, m, order=order, projective_order=porder)
    if abs(tr) == 2:
        return ElementClass(REDUCIBLE, m, fixed_slope=parabolic_fixed_slope(m))
    s = 1 if tr > 0 else -1
    root = QuadraticSurd.sqrt(tr * tr - 4)
    f_plus = (root * s + (m.a - m.d)) / (2 * m.c)
    f_minus = (root * (-s) + (m.a - m.d)) / (2 * m.c)
    lam = (root + abs(tr)) / 2
    return ElementClass(PSEUDO_ANOSOV, m, f_plus=f_plus, f_minus=f_minus, dilatation=lam)


def parabolic_fixed_slope(m: SL2Matrix) -> Slope:
    """The slope spanning the kernel of m - sign(tr) I."""
    s = 1 if m.trace() > 0 else -1
    a, b, c, d = m.a - s, m.b, m.c, m.d - s
    v = (b, -a) if (a, b) != (0, 0) else (d, -c)
    g = gcd(*v)
    return reduce(v[0] // g, v[1] // g)


def apply_to_surd(m: SL2Matrix, x: QuadraticSurd) -> QuadraticSurd:
    return (x * m.a + m.b) / (x * m.c + m.d)


def circle_distance_squared(v: Slope, x: QuadraticSurd) -> QuadraticSurd:
    """sin^2 of the angle between the lines through (p, q) and (x, 1)."""
    p, q = v.numerator, v.denominator
    det = x * (-q) + p
    return det * det / ((x * x + 1) * (p * p + q * q))


@dataclass
class ConvergenceTrace:
    distances_squared: list = field(default_factory=list)
    burn_in: int = 0

    def floats(self):
        return [float(d) ** 0.5 for d in self.distances_squared]


def iterate_convergence(m: SL2Matrix, seed: Slope, steps: int, towards: str = "plus") -> ConvergenceTrace:
    """Circle distances from m^n(seed) to the attracting (or repelling) fixed point.

    Distances are returned squared as exact surds; burn_in is the first
    index from which the sequence is strictly decreasing.
    """
    cls = classify(m)
    if cls.tag != PSEUDO_ANOSOV:
        raise ValueError("%s is not pseudo-Anosov" % m)
    if towards == "minus":
        return iterate_convergence(m.inverse(), seed, steps, "plus")
    target = cls.f_plus
    if seed.denominator != 0 and cls.f_minus == seed.value():
        raise ValueError("seed is the repelling fixed point")
    out = ConvergenceTrace()
    x = seed
    for _ in range(steps + 1):
        out.distances_squared.append(circle_distance_squared(x, target))
        x = apply_sl2(m, x)
    ds = out.distances_squared
    k = len(ds) - 1
    while k > 0 and ds[k - 1] > ds[k]:
        k -= 1
    out.burn_in = k
    return out


def dehn_twist(alpha: Slope, n: int = 1) -> SL2Matrix:
    """The matrix of v -> v + n (v ^ w) w, w the primitive vector of alpha."""
    wx, wy = alpha.numerator, alpha.denominator
    return SL2Matrix(1 + n * wx * wy, -n * wx * wx, n * wy * wy, 1 - n * wx * wy)


def twist_inequality_check(sigma, powers, beta: Slope, gamma: Slope) -> dict:
    """Evaluate both sides of the multi-twist intersection bounds for t = prod t_i^{n_i}."""
    sigma = list(sigma)
    if len(sigma) != len(powers):
        raise ValueError("one power per curve")
    for i in range(len(sigma)):
        for j in range(i + 1, len(sigma)):
            if intersection_number(sigma[i], sigma[j]) != 0 or sigma[i] == sigma[j]:
                raise ValueError("curves %s and %s are not disjoint and distinct" % (sigma[i], sigma[j]))
    t = SL2Matrix.identity()
    for a, n in zip(sigma, powers):
        t = t @ dehn_twist(a, n)
    ig = intersection_number
    middle = ig(apply_sl2(t, gamma), beta)
    lower = sum((abs(n) - 2) * ig(gamma, a) * ig(a, beta) for a, n in zip(sigma, powers)) - ig(gamma, beta)
    upper = sum(abs(n) * ig(gamma, a) * ig(a, beta) for a, n in zip(sigma, powers)) + ig(gamma, beta)
    return {"lower": lower, "middle": middle, "upper": upper, "holds": lower <= middle <= upper}


def twist_nonfix_check(alpha: Slope, beta: Slope, n: int) -> bool:
    """Whether t_alpha^n moves beta; requires beta to meet alpha and n != 0."""
    if intersection_number(alpha, beta) == 0:
        raise ValueError("beta must intersect alpha")
    if n == 0:
        raise ValueError("n must be nonzero")
    return apply_sl2(dehn_twist(alpha, n), beta) != beta


def commuting_check(alpha: Slope, beta: Slope, n: int, m: int) -> dict:
    """Compare [t_alpha^n, t_beta^m] = I with disjointness of alpha and beta."""
    if n == 0 or m == 0:
        raise ValueError("powers must be nonzero")
    ta, tb = dehn_twist(alpha, n), dehn_twist(beta, m)
    commutes = ta @ tb == tb @ ta
    disjoint = intersection_number(alpha, beta) == 0
    return {"commutes": commutes, "disjoint": disjoint, "agree": commutes == disjoint}


def twist_suite(rng, samples: int, pairs: int | None = None, bound: int = 30) -> dict:
    """Seeded torus checks: the twist inequality and non-commuting of twists on distinct slopes.

    On the torus distinct slopes always intersect, so every sampled pair
    must fail to commute.
    """
    failures = []
    for _ in range(samples):
        a, b, c = random_slope(rng, bound), random_slope(rng, bound), random_slope(rng, bound)
        n = rng.randint(-9, 9)
        r = twist_inequality_check([a], [n], b, c)
        if not r["holds"]:
            failures.append({"alpha": str(a), "power": n, "beta": str(b), "gamma": str(c), **r})
    seen, commuting = set(), []
    pairs = samples // 2 if pairs is None else pairs
    while len(seen) < pairs:
        a, b = random_slope(rng, bound), random_slope(rng, bound)
        if a == b or (a, b) in seen:
            continue
        seen.add((a, b))
        r = commuting_check(a, b, rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([-3, -2, -1, 1, 2, 3]))
        if r["commutes"] or not r["agree"]:
            commuting.append({"alpha": str(a), "beta": str(b), **r})
    return {
        "inequality_instances": samples,
        "inequality_failures": failures,
        "commuting_pairs": pairs,
        "commuting_failures": commuting,
        "holds": not failures and not commuting,
    }
