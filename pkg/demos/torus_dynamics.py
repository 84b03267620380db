"""SL(2,Z) acting on slopes: the trace decides the dynamics.

Pseudo-Anosov elements pull every slope towards an attracting quadratic
irrational, and Dehn twists about distinct torus curves never commute.
"""

import random

from curvecomplex import mcg
from curvecomplex.farey import ZERO, Slope
from curvecomplex.sl2 import SL2Matrix

for text in ("[[0,-1],[1,0]]", "[[1,3],[0,1]]", "[[2,1],[1,1]]"):
    c = mcg.classify(SL2Matrix.parse(text))
    print(text, c.as_dict())

m = SL2Matrix(2, 1, 1, 1)
trace = mcg.iterate_convergence(m, ZERO, 12)
print("\ncircle distance to the attracting point:", ["%.2e" % d for d in trace.floats()])

print("\ntwist about 1/0 applied three times to 2/5:", mcg.dehn_twist(Slope(1, 0), 3))
print("suite:", {k: v for k, v in mcg.twist_suite(random.Random(0), 200).items() if k != "inequality_failures"})
