"""The polar curve of the cubic surface and its critical points.

The surface x1^3 + x2^3 + x3^3 - x1 - x2 - x3 = 1 with phi1 the squared
distance to (1, 0, 0). The polar curve W_2 depends on which linear form
comes second in the map; both orders are computed and compared against the
generator (3x1x3+1)(x1-x3) + 3x3^2 - 1.
"""

import time

from polarroad import Ideal, PolyMap, Ring, VarietySpec, critical_ideal
from polarroad.groebner import ideals_equal
from polarroad.zerodim import count_real_solutions, count_solutions, solution_set

R = Ring(["x1", "x2", "x3"])
x1, x2, x3 = R.gens()
g = x1**3 + x2**3 + x3**3 - x1 - x2 - x3 - 1
phi1 = (x1 - 1) ** 2 + x2**2 + x3**2
D = (3 * x1 * x3 + 1) * (x1 - x3) + 3 * x3**2 - 1
V = VarietySpec(R, [g], 2)

for label, phi in (("(phi1, x1, x2)", PolyMap((phi1, x1, x2))), ("(phi1, x2, x1)", PolyMap((phi1, x2, x1)))):
    W = critical_ideal(V, phi, 2).W_ideal
    same = ideals_equal(W, Ideal(R, [g, D]))
    print(f"map {label}: W_2 = <{', '.join(map(str, W.generators))}>")
    print(f"  equals <g, (3x1x3+1)(x1-x3)+3x3^2-1>: {same}")

t0 = time.perf_counter()
W2 = VarietySpec(R, [g, D], 1)
K = critical_ideal(W2, PolyMap((phi1,)), 1).K_ideal
mult, distinct = count_solutions(K)
real = count_real_solutions(K)
print(f"\ncritical points of phi1 on W_2: {distinct} distinct complex ({mult} with multiplicity), {real} real"
      f"  [{time.perf_counter() - t0:.2f}s]")
for box in solution_set(K).real_boxes:
    pt = [float(c) for c in box.midpoint()]
    print(f"  ({pt[0]:+.6f}, {pt[1]:+.6f}, {pt[2]:+.6f})  phi1 = {float(phi1.evaluate(box.midpoint())):.4f}")
