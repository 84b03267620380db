"""Witness functions for property A on the 3-regular tree and the Farey graph.

F_a(x,k,n) marks the vertices met at times n..2n by rays towards a from
the ball B(x;k). Averaging over k < sqrt(n) gives H_a(x,n), and
neighbouring points get witnesses whose l1 distance tends to zero.
"""

from curvecomplex import propa
from curvecomplex.boundary import BoundaryPoint
from curvecomplex.farey import INF
from curvecomplex.hypgraph import FareyOracle, TreeEnd, TreeOracle

tree, end = TreeOracle(), TreeEnd("0", "12")
print("tree, adjacent points '' and '0':")
for n in (4, 9, 16, 25, 36):
    d = propa.h_difference(tree, "", "0", end, n)
    print("   n=%2d  ||H(x)-H(y)|| = %s ~ %.4f" % (n, d, float(d)))

a = BoundaryPoint.parse("[0;~(1,2)]")
print("\nFarey graph, x = 1/0, a = %s:" % a)
for n in (4, 8, 12):
    f = propa.f_witness(FareyOracle(), INF, a, 0, n)
    print("   n=%2d  ||F(x,0,n)|| = %d (at least n)" % (n, f.norm1()))
f = propa.f_witness(FareyOracle(), INF, a, 1, 9)
print("   k=1 witness: %d vertices, exact=%s, height %s" % (len(f.support), f.exact, f.truncation))
