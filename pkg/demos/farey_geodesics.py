"""Distances and geodesics in the Farey graph, and why they are computable.

Two slopes are joined when their vectors span the integer lattice. Every
geodesic from x to y must pass through an endpoint of each edge
separating them, so the search never leaves that finite ladder.
"""

from curvecomplex import farey
from curvecomplex.farey import INF, Slope

x, y = INF, Slope.parse("13/31")
edges = farey.separating_edges(x, y)
print("edges separating %s from %s:" % (x, y))
for e in edges:
    print("   ", e)

print("\ndistance", farey.distance(x, y))
for path in farey.geodesics(x, y):
    print("   ", " -> ".join(map(str, path)))

print("\npivots (vertices shared by several separating edges):")
for rec in farey.pivots(x, y):
    print("    %s with weight %d" % (rec.vertex, rec.weight))

# -1 and 1 sit at opposite corners of the quadrilateral 0, 1/0
print("\nquadrilateral:", farey.geodesics(Slope(-1, 1), Slope(1, 1)))
