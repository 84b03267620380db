"""Curve systems on surfaces up to homeomorphism, and Euler characteristics.

A curve system is recorded by its dual graph: one vertex per
complementary piece labelled (genus, boundary count), one edge per curve.
n(sigma) counts pieces of type (1,1) or (0,4).
"""

from collections import Counter

from curvecomplex import surfaces
from curvecomplex.surfaces import SurfaceType

for g in (2, 3):
    graphs = surfaces.enumerate_decompositions((g, 0))
    print("closed genus %d: %d types, by number of curves %s"
          % (g, len(graphs), dict(sorted(Counter(d.num_edges for d in graphs).items()))))

s = SurfaceType(1, 4)
rep = surfaces.verify_parity_lemmas(s)
print("\n%s: max n = %d, maximiser cases realised %s" % (s, surfaces.n_max(s), rep["realized"]))

for s in [(1, 1), (2, 0), (0, 5), (2, 2)]:
    k, beta = surfaces.l2_betti(s)
    print("chi%s = %s, l2-Betti in degree %d = %s" % (s, surfaces.virtual_euler(s), k, beta))
