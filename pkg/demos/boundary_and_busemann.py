"""Rays towards quadratic irrationals, Busemann functions, and a MIN-set.

A boundary point is an eventually periodic continued fraction. Its
convergents give nested separating edges, and geodesic spheres towards
it are read off once probes at consecutive depths agree.
"""

from curvecomplex import boundary, busemann
from curvecomplex.boundary import BoundaryPoint
from curvecomplex.farey import INF, ZERO, Slope

golden = BoundaryPoint.parse("[1;~(1)]")
print("convergents:", [str(golden.convergent(n)) for n in range(8)])
print("ray from 0:", [str(v) for v in boundary.ray(ZERO, golden, 6).vertices])
for t, sphere in enumerate(boundary.geodesic_spheres(INF, golden, 5)):
    print("   G(1/0, golden)_%d = %s" % (t, sorted(map(str, sphere))))

x, y = Slope(3, 1), ZERO
a, b = busemann.alpha(golden, x, y), busemann.beta(golden, x, y)
print("\nalpha = %d via %s" % (a.value, list(a.sequence)))
print("beta  = %d via %s" % (b.value, list(b.sequence)))

triple = [BoundaryPoint.parse(t) for t in ("[1;~(1)]", "[1;~(2)]", "[-1;2,~(5)]")]
r = busemann.min_set(*triple, R=4)
print("\ncentre triangle:", [str(v) for v in r.center])
print("MS =", sorted(map(str, r.ms)), " |MS'| =", len(r.ms_prime), " margin =", r.margin)
