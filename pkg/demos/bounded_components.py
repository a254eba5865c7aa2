"""Bounded sublevel components always contain a critical point.

For the circle and the torus with the first coordinate as height, every
bounded component of {x < u} is located numerically and matched against the
exactly solved critical points of x.
"""

from gmpy2 import mpq

from polarroad import Ring, VarietySpec
from polarroad.connectivity import check_bounded_component_critical

P = Ring(["x", "y"])
x, y = P.gens()
R = Ring(["x", "y", "z"])
a, b, c = R.gens()

cases = [
    ("circle", VarietySpec(P, [x**2 + y**2 - 1], 1), x, [mpq(-1, 2), 0, 2], 3),
    ("torus", VarietySpec(R, [(a**2 + b**2 + c**2 + 3) ** 2 - 16 * (a**2 + b**2)], 2), a, [-2, 0, 2, 4], 6),
]
for name, Z, height, levels, radius in cases:
    for u in levels:
        rep = check_bounded_component_critical(Z, height, u, radius=radius, count=1500)
        wit = {k: (None if v is None else tuple(round(t, 4) for t in v)) for k, v in rep.witnessed.items()}
        print(f"{name:6s} u={str(u):5s} components={rep.components} bounded={rep.bounded} "
              f"witnesses={wit} -> {rep.verdict}")
