"""Exact zero-dimensional solving: Groebner bases, Hermite counts, certified boxes.

Two circles meet in four real points; a circle and a far line meet in two
complex conjugate points and no real ones. The counts come from the trace
form, the boxes from a shape representation refined to 2^-30.
"""

from gmpy2 import mpq

from polarroad import Ideal, Ring, groebner_basis, solution_set
from polarroad.zerodim import count_real_solutions, count_solutions

R = Ring(["x", "y"])
x, y = R.gens()

systems = {
    "circle and hyperbola": [x**2 + y**2 - 4, x * y - 1],
    "circle and distant line": [x**2 + y**2 - 1, x - 3],
    "double point": [(x - 1) ** 2, y**2 - 2],
}

for name, gens in systems.items():
    I = Ideal(R, gens)
    G = groebner_basis(I)
    mult, distinct = count_solutions(I)
    print(f"{name}")
    print(f"  reduced basis: {[str(g) for g in G]}")
    print(f"  complex solutions: {mult} with multiplicity, {distinct} distinct; real: {count_real_solutions(I)}")
    for box in solution_set(I, mpq(1, 2**30)).real_boxes:
        mid = ", ".join(f"{float(c):+.9f}" for c in box.midpoint())
        print(f"    ({mid})  width {float(box.width()):.1e}  {box.status}")
