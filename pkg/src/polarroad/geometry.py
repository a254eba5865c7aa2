"""Jacobians, minor ideals, singular loci, critical loci and generalized polar varieties."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from gmpy2 import mpq

from . import linalg
from .groebner import Ideal, saturation_by_ideal
from .polyring import Poly, PolyMatrix, QQ, Ring

IDEAL_CAVEAT = (
    "ideal-theoretic caveat: generators are taken as given; "
    "they are assumed to generate the radical ideal of the variety"
)


@dataclass(frozen=True)
class VarietySpec:
    """V(g) in n variables with its claimed dimension d."""

    ring: Ring
    generators: tuple
    dimension: int

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if not 0 <= self.dimension <= self.ring.nvars:
            raise ValueError(f"dimension {self.dimension} outside 0..{self.ring.nvars}")
        if any(not g for g in self.generators):
            raise ValueError("variety generators must be nonzero")

    @property
    def n(self) -> int:
        return self.ring.nvars

    @property
    def codim(self) -> int:
        return self.ring.nvars - self.dimension

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.generators)


@dataclass(frozen=True)
class PolyMap:
    """phi = (phi_1, ..., phi_m); ``prefix(i)`` is phi^(i)."""

    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if self.components:
            R = self.components[0].ring
            if any(c.ring != R for c in self.components):
                raise ValueError("map components must share one ring")
            if len(self.components) > R.nvars:
                raise ValueError("more map components than ring variables")

    @property
    def ring(self) -> Ring:
        return self.components[0].ring

    def prefix(self, i: int) -> tuple:
        if not 0 <= i <= len(self.components):
            raise ValueError(f"prefix length {i} out of range")
        return self.components[:i]

    def __len__(self):
        return len(self.components)

    def __getitem__(self, k):
        return self.components[k]


@dataclass
class CriticalLocus:
    base: VarietySpec
    i: int
    K_ideal: Ideal
    sing_ideal: Ideal
    W_ideal: Ideal
    notes: list = field(default_factory=list)


@dataclass(frozen=True)
class FiberSpec:
    base: VarietySpec
    map: PolyMap
    i: int
    value: tuple

    def __post_init__(self):
        object.__setattr__(self, "value", tuple(QQ(v) for v in self.value))
        if len(self.value) != self.i:
            raise ValueError(f"fiber value has length {len(self.value)}, expected {self.i}")


def jacobian(polys, ring: Ring) -> PolyMatrix:
    polys = list(polys)
    return PolyMatrix(ring, len(polys), ring.nvars, [p.diff(k) for p in polys for k in range(ring.nvars)])


def minors_ideal(M: PolyMatrix, k: int) -> Ideal:
    """Ideal of all k x k minors (duplicates and zeros dropped, order deterministic)."""
    if not 1 <= k <= min(M.rows, M.cols):
        raise ValueError(f"minor size {k} out of range for a {M.rows}x{M.cols} matrix")
    seen = set()
    gens = []
    for m in M.minors(k):
        if m and m not in seen and -m not in seen:
            seen.add(m)
            gens.append(m)
    return Ideal(M.ring, gens)


def _rank_deficiency_ideal(V: VarietySpec, polys, k: int) -> Ideal:
    """I(V) + k-minors of jac(polys); when k exceeds the matrix size the rank condition is void."""
    R = V.ring
    M = jacobian(polys, R)
    if k > min(M.rows, M.cols):
        return V.ideal()
    return Ideal(R, list(V.generators) + list(minors_ideal(M, k).generators))


def singular_ideal(V: VarietySpec) -> Ideal:
    """Generators of V together with the (n-d)-minors of its Jacobian."""
    c = V.codim
    if len(V.generators) < c:
        raise ValueError(f"{len(V.generators)} generators cannot cut out codimension {c}")
    if c == 0:
        # V is the whole space: no rank condition, empty singular locus
        return Ideal(V.ring, [V.ring.one()])
    return _rank_deficiency_ideal(V, V.generators, c)


def critical_ideal(V: VarietySpec, phi: PolyMap, i: int) -> CriticalLocus:
    """K(phi^(i), V) from the (c+i)-minors of jac([g, phi^(i)]) with c = n - d."""
    if not 1 <= i <= V.n:
        raise ValueError(f"prefix i={i} outside 1..{V.n}")
    c = V.codim
    K = _rank_deficiency_ideal(V, list(V.generators) + list(phi.prefix(i)), c + i)
    S = singular_ideal(V)
    notes = []
    if len(V.generators) != c:
        notes.append(IDEAL_CAVEAT)
    if S.is_unit():
        W = K
    else:
        minors = Ideal(V.ring, [m for m in S.generators if m not in V.generators])
        W = saturation_by_ideal(K, minors)
        notes.append("W-ideal obtained by saturating K by the singular-locus minors")
    return CriticalLocus(V, i, K, S, W, notes)


def _linear_rank(forms) -> int:
    if not forms:
        return 0
    n = forms[0].ring.nvars
    rows = []
    for f in forms:
        row = [mpq(0)] * n
        for e, c in f.terms_dict.items():
            if sum(e) == 1:
                row[e.index(1)] = c
        rows.append(row)
    return linalg.rank(rows)


def build_phi(ring: Ring, center, seed: int | None = None, forms: str = "random", max_redraws: int = 100) -> PolyMap:
    """phi_1 = squared distance to ``center``; phi_2..phi_n linear forms.

    ``forms="coordinates"`` uses x1, ..., x_{n-1}; otherwise coefficients in
    {-9..9} are drawn from ``random.Random(seed)`` and re-drawn (at most
    ``max_redraws`` times) until the forms are linearly independent.
    """
    n = ring.nvars
    center = [QQ(a) for a in center]
    if len(center) != n:
        raise ValueError(f"center has {len(center)} coordinates, ring has {n}")
    xs = ring.gens()
    phi1 = sum(((x - a) ** 2 for x, a in zip(xs, center)), ring.zero())
    if forms == "coordinates":
        lin = list(xs[: n - 1])
    else:
        if seed is None:
            raise ValueError("a seed is required for random linear forms")
        rng = random.Random(seed)
        for _ in range(max_redraws):
            lin = [
                sum((x * rng.randint(-9, 9) for x in xs), ring.zero())
                for _ in range(n - 1)
            ]
            if _linear_rank(lin) == n - 1:
                break
        else:
            raise RuntimeError(f"no independent linear forms after {max_redraws} draws")
    return PolyMap((phi1, *lin))


def fiber_ideal(F: FiberSpec) -> Ideal:
    V = F.base
    extra = [F.map[j] - v for j, v in enumerate(F.value)]
    return Ideal(V.ring, list(V.generators) + extra)


def is_squared_distance(p: Poly):
    """Return the center a if p == sum (x_k - a_k)^2 exactly, else None."""
    R = p.ring
    n = R.nvars
    center = []
    quad = sum((x * x for x in R.gens()), R.zero())
    rest = p - quad
    if rest.degree() > 1:
        return None
    for k in range(n):
        e = tuple(1 if j == k else 0 for j in range(n))
        center.append(-rest.terms_dict.get(e, mpq(0)) / 2)
    expected = sum(((x - a) ** 2 for x, a in zip(R.gens(), center)), R.zero())
    return center if expected == p else None
