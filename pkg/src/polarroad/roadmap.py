"""Roadmap candidate W_i u F_i: assumption checks, sample set, image eliminants, bundle.

Statuses are four-valued; "verified" is only ever reported with an exact
argument behind it.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from gmpy2 import mpq

from . import univariate as uv
from .errors import NotZeroDimensionalError, PositiveDimensionalError
from .geometry import (
    CriticalLocus,
    FiberSpec,
    PolyMap,
    VarietySpec,
    critical_ideal,
    fiber_ideal,
    is_squared_distance,
    singular_ideal,
)
from .groebner import (
    Ideal,
    elimination_ideal,
    ideal_intersection,
    is_radical_member,
    krull_dimension,
)
from .polyring import Interval, Poly, QQ, Ring, format_rational
from .zerodim import DEFAULT_WIDTH, QuotientAlgebra, SolutionSet, solution_set

VERIFIED = "verified"
PROBABLE = "verified-probabilistically"
UNVERIFIED = "unverified"
VIOLATED = "violated"

FORMAT_VERSION = 1


@dataclass
class Check:
    status: str
    evidence: str
    witness: object = None

    def to_dict(self):
        d = {"status": self.status, "evidence": self.evidence}
        if self.witness is not None:
            d["witness"] = _jsonable(self.witness)
        return d


@dataclass
class AssumptionReport:
    A: Check
    P: Check
    B1: Check
    B2: Check
    C1: Check
    C2: Check

    def items(self):
        return [("A", self.A), ("P", self.P), ("B1", self.B1), ("B2", self.B2), ("C1", self.C1), ("C2", self.C2)]

    @property
    def any_violated(self) -> bool:
        return any(c.status == VIOLATED for _, c in self.items())

    @property
    def all_hold(self) -> bool:
        return all(c.status in (VERIFIED, PROBABLE) for _, c in self.items())

    def to_dict(self):
        return {k: c.to_dict() for k, c in self.items()}


# ---------------------------------------------------------------------------
# assumption checks


def check_assumption_A(V: VarietySpec) -> Check:
    dim = krull_dimension(V.ideal())
    if dim != V.dimension:
        return Check(VIOLATED, f"Krull dimension of the generators is {dim}, not {V.dimension}", {"dimension": dim})
    S = singular_ideal(V)
    sdim = krull_dimension(S)
    ci = len(V.generators) == V.codim
    if sdim > 0:
        if ci:
            return Check(VIOLATED, f"singular system has dimension {sdim}", {"singular_dimension": sdim})
        return Check(UNVERIFIED, f"singular system of the given generators has dimension {sdim}")
    if sdim == -1:
        sing = "singular system has no solution"
    else:
        sol = solution_set(S)
        sing = (
            f"singular system is zero-dimensional ({sol.distinct_count} points, "
            f"{sol.real_count} real)"
        )
    if ci:
        return Check(VERIFIED, f"complete intersection of dimension {dim}; {sing}")
    return Check(UNVERIFIED, f"dimension {dim} but not a complete intersection; {sing}")


def check_assumption_P(phi: PolyMap) -> Check:
    center = is_squared_distance(phi[0])
    if center is not None:
        c = ", ".join(format_rational(a) for a in center)
        return Check(VERIFIED, f"phi_1 is the squared distance to ({c}): proper and bounded below")
    return Check(UNVERIFIED, "phi_1 is not of the form sum (x_k - a_k)^2; properness is not attempted")


def _rational_points_on_hypersurface(f: Poly, count: int, rng: random.Random) -> list:
    """Rational approximations of real points of V(f) from random rational lines."""
    R = f.ring
    n = R.nvars
    out = []
    L = Ring(["s"], allow_reserved=True)
    s = L.var(0)
    for _ in range(20 * count):
        if len(out) >= count:
            break
        p0 = [mpq(rng.randint(-40, 40), 8) for _ in range(n)]
        d = [mpq(rng.randint(-9, 9)) for _ in range(n)]
        if not any(d):
            continue
        line = [L.const(a) + s * b for a, b in zip(p0, d)]
        u = f.compose(line)
        if u.is_constant():
            continue
        roots = uv.real_roots(u.univariate_coeffs(0))
        if roots:
            r = roots[0]
            iv = r.refine(mpq(1, 2 ** 40))
            out.append([a + iv.mid * b for a, b in zip(p0, d)])
    return out


def check_assumption_B(V: VarietySpec, phi: PolyMap, i: int, samples: int = 3, seed: int = 0,
                       locus: CriticalLocus | None = None) -> tuple[Check, Check]:
    if not 2 <= i <= V.dimension:
        raise ValueError(f"i={i} must satisfy 2 <= i <= d={V.dimension}")
    W = locus or critical_ideal(V, phi, i)
    n = V.n
    dimW = krull_dimension(W.W_ideal)
    if dimW == -1:
        b1 = Check(VERIFIED, "W_i is empty")
    elif dimW != i - 1:
        b1 = Check(VIOLATED, f"dim W_i = {dimW}, expected {i - 1}", {"dimension": dimW})
    else:
        gens = list(W.W_ideal.generators)
        ci = len(gens) == n - (i - 1)
        WV = VarietySpec(V.ring, gens, i - 1)
        SW = singular_ideal(WV)
        if SW.is_unit():
            smooth = True
            detail = "singular system of W_i has no solution"
        else:
            sV = singular_ideal(V)
            smooth = all(is_radical_member(s, SW) for s in sV.generators) if not sV.is_unit() else False
            detail = (
                "singular points of W_i lie in sing(V)" if smooth
                else f"W_i has singular points outside sing(V) (singular system dimension {krull_dimension(SW)})"
            )
        if not smooth:
            b1 = Check(VIOLATED if ci else UNVERIFIED, f"dim W_i = {dimW}; {detail}")
        elif ci:
            b1 = Check(VERIFIED, f"dim W_i = {dimW}, complete intersection (hence equidimensional); {detail}")
        else:
            b1 = Check(PROBABLE, f"dim W_i = {dimW}; {detail}; equidimensionality not proven (not a complete intersection)")

    # (B2): fibers of phi^(i-1) over sampled values
    rng = random.Random(seed)
    values = [[mpq(rng.randint(-60, 60), rng.randint(1, 6)) for _ in range(i - 1)] for _ in range(samples)]
    if len(V.generators) == 1:
        for pt in _rational_points_on_hypersurface(V.generators[0], samples, rng):
            values.append([phi[j].evaluate(pt) for j in range(i - 1)])
    expected = V.dimension - i + 1
    bad = None
    dims = []
    for val in values:
        d = krull_dimension(fiber_ideal(FiberSpec(V, phi, i - 1, val)))
        dims.append(d)
        if d not in (-1, expected):
            bad = (val, d)
            break
    if bad:
        b2 = Check(VIOLATED, f"fiber over {[format_rational(v) for v in bad[0]]} has dimension {bad[1]}",
                   {"value": [format_rational(v) for v in bad[0]], "dimension": bad[1]})
    else:
        b2 = Check(PROBABLE, f"{len(values)} sampled fibers have dimension in {{-1, {expected}}}: {dims}")
    return b1, b2


# ---------------------------------------------------------------------------
# sample set and eliminants


@dataclass
class SampleSet:
    points: list
    source_ideal: Ideal
    solutions: SolutionSet


def sample_system(V: VarietySpec, phi: PolyMap, i: int, locus: CriticalLocus | None = None) -> Ideal:
    """Ideal of W(phi_1, W_i): critical points of phi_1 on the polar variety W_i."""
    W = locus or critical_ideal(V, phi, i)
    if W.W_ideal.is_unit():
        return W.W_ideal
    dimW = krull_dimension(W.W_ideal)
    if dimW != i - 1:
        raise PositiveDimensionalError(f"W_{i} has dimension {dimW}, expected {i - 1}", dimW)
    WV = VarietySpec(V.ring, W.W_ideal.generators, i - 1)
    return critical_ideal(WV, phi, 1).W_ideal


def compute_sample_set(V: VarietySpec, phi: PolyMap, i: int, width=DEFAULT_WIDTH,
                       locus: CriticalLocus | None = None) -> SampleSet:
    S = sample_system(V, phi, i, locus)
    if S.is_unit():
        return SampleSet([], S, SolutionSet(S, 0, 0, 0, []))
    dim = krull_dimension(S)
    if dim > 0:
        raise PositiveDimensionalError(
            f"W(phi_1, W_{i}) has dimension {dim}; general sample-point algorithms are not provided", dim
        )
    sol = solution_set(S, width)
    return SampleSet(list(sol.real_boxes), S, sol)


def check_assumption_C(sample: SampleSet | None, error: Exception | None = None) -> tuple[Check, Check]:
    if sample is None:
        msg = str(error) if error else "no sample set"
        return Check(UNVERIFIED, msg), Check(UNVERIFIED, msg)
    c1 = Check(VERIFIED, f"S_i has {len(sample.points)} points (finite real locus of a zero-dimensional system)")
    if sample.solutions.certified:
        c2 = Check(VERIFIED, "S_i is the whole real locus of W(phi_1, W_i), so it meets every component")
    else:
        c2 = Check(UNVERIFIED, "some sample boxes are uncertified")
    return c1, c2


def image_ring(m: int) -> Ring:
    return Ring([f"y{j + 1}" for j in range(m)], allow_reserved=True)


def image_ideal(K: Ideal, phi: PolyMap, m: int, backend: str = "auto") -> list[Poly]:
    """Generators of the vanishing ideal of phi^(m)(V(K)) in Q[y1..ym]."""
    Y = image_ring(m)
    if m == 0:
        return []
    if K.is_unit():
        return [Y.one()]
    if backend == "auto":
        backend = "minpoly" if m == 1 else "elimination"
    if backend == "minpoly":
        if m != 1:
            raise ValueError("the minimal-polynomial backend handles one image coordinate")
        G = K.groebner()
        if not G.is_zero_dimensional():
            raise NotZeroDimensionalError("image eliminant requires a zero-dimensional K")
        mp = QuotientAlgebra(G).minimal_polynomial(phi[0])
        return [Poly.from_univariate(Y, 0, mp)]
    if backend == "elimination":
        R = K.ring
        big = R.extend(Y.names)
        n = R.nvars
        gens = [g.embed(big) for g in K.generators]
        for j in range(m):
            gens.append(big.var(n + j) - phi[j].embed(big))
        E = elimination_ideal(Ideal(big, gens, K.budget), list(range(n, n + m)))
        return [Poly._raw(Y, {e[n:]: c for e, c in g.terms_dict.items()}).monic() for g in E.generators]
    raise ValueError(f"unknown backend {backend!r}")


def zero_set_contained(A: Ideal, B: Ideal) -> bool:
    """V(A) inside V(B) for zero-dimensional A: every generator of B is nilpotent mod A."""
    G = A.groebner()
    if G.is_unit():
        return True
    Q = QuotientAlgebra(G)
    for b in B.generators:
        mp = Q.minimal_polynomial(b)
        if any(mp[:-1]):
            return False
    return True


# ---------------------------------------------------------------------------
# bundle


@dataclass
class CriticalValue:
    interval: Interval
    eliminant: list  # squarefree univariate polynomial having this root

    def __float__(self):
        return float(self.interval.mid)

    def refine(self, width) -> Interval:
        self.interval = uv.refine_root(self.eliminant, self.interval, width)
        return self.interval


@dataclass
class RoadmapBundle:
    variety: VarietySpec
    map: PolyMap
    i: int
    W: CriticalLocus
    K_ideal: Ideal
    K_points: SolutionSet
    critical_values: list
    image_eliminants: list
    assumptions: AssumptionReport
    K_components: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    has_fibers: bool = True

    @property
    def F_ideal(self) -> Ideal | None:
        """I(V) + <P o phi^(i-1)> for each image eliminant P; None when F_i was dropped."""
        if not self.has_fibers:
            return None
        cached = self.__dict__.get("_F")
        if cached is None:
            cached = fiber_union_ideal(self.variety, self.map, self.i, self.image_eliminants)
            self.__dict__["_F"] = cached
        return cached

    @property
    def certificate(self) -> str:
        if self.assumptions.all_hold:
            return "assumptions-hold"
        return "assumptions-unverified"

    @property
    def fiber_values(self) -> list:
        """All real roots of the image eliminant (i = 2), as refinable roots."""
        if self.i - 1 != 1 or not self.image_eliminants:
            return []
        return uv.real_roots(self.image_eliminants[0].univariate_coeffs(0))

    def without_fibers(self) -> "RoadmapBundle":
        """Copy with F_i dropped (ablation)."""
        import copy

        b = copy.copy(self)
        b.has_fibers = False
        b.notes = list(self.notes) + ["F_i removed"]
        return b

    def to_dict(self) -> dict:
        R = self.variety.ring
        return {
            "format": FORMAT_VERSION,
            "variables": list(R.names),
            "variety": {"generators": [str(g) for g in self.variety.generators], "dimension": self.variety.dimension},
            "map": [str(c) for c in self.map.components],
            "i": self.i,
            "assumptions": self.assumptions.to_dict(),
            "certificate": self.certificate,
            "W_i": {
                "K_ideal": [str(g) for g in self.W.K_ideal.generators],
                "W_ideal": [str(g) for g in self.W.W_ideal.generators],
                "notes": list(self.W.notes),
            },
            "K_i": {
                "components": [[str(g) for g in I.generators] for I in self.K_components],
                "complex_count_with_multiplicity": self.K_points.multiplicity_count,
                "distinct_complex_count": self.K_points.distinct_count,
                "real_count": self.K_points.real_count,
                "real_boxes": [box_to_json(b) for b in self.K_points.real_boxes],
            },
            "critical_values": [interval_to_json(c.interval) for c in self.critical_values],
            "image_eliminants": [str(p) for p in self.image_eliminants],
            "F_i": self._fiber_description(),
            "roadmap": {
                "W_i": [str(g) for g in self.W.W_ideal.generators],
                "F_i": self._fiber_description(),
            },
            "notes": list(self.notes),
        }

    def _fiber_description(self):
        # the expanded P o phi can be very large; store it as a substitution
        if not self.has_fibers:
            return None
        return {
            "variety_generators": [str(g) for g in self.variety.generators],
            "eliminants": [str(p) for p in self.image_eliminants],
            "substitution": {f"y{j + 1}": str(self.map[j]) for j in range(self.i - 1)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def interval_to_json(iv: Interval) -> list:
    return [format_rational(iv.lo), format_rational(iv.hi)]


def box_to_json(b) -> dict:
    return {"coordinates": [interval_to_json(iv) for iv in b.coordinates], "status": b.status}


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Interval):
        return interval_to_json(obj)
    if isinstance(obj, (int, str, float, bool)) or obj is None:
        return obj
    return str(obj)


def _match_critical_values(phi1: Poly, eliminant: Poly, K_ideal: Ideal, sol: SolutionSet, width) -> list:
    """Real roots of the eliminant attained at real points of K, increasing."""
    if not sol.real_boxes:
        return []
    coeffs = uv.squarefree_part(eliminant.univariate_coeffs(0))
    roots = [CriticalValue(iv, coeffs) for iv in uv.isolate_real_roots(coeffs)]
    w = QQ(width)
    for _ in range(12):
        encl = [phi1.evaluate(list(b.coordinates)) for b in sol.real_boxes]
        sep = min((encl_i.width for encl_i in encl), default=mpq(1)) / 4 or mpq(1, 2 ** 60)
        for r in roots:
            r.refine(sep)
        hits = [[k for k, r in enumerate(roots) if r.interval.overlaps(e)] for e in encl]
        if all(len(h) == 1 for h in hits):
            used = sorted({h[0] for h in hits})
            return [roots[k] for k in used]
        w = w / 1024
        sol = solution_set(K_ideal, w)
    raise RuntimeError("could not separate critical values from the K_i solution boxes")


def assemble_roadmap(V: VarietySpec, phi: PolyMap, i: int, width=DEFAULT_WIDTH, seed: int = 0,
                     samples: int = 3, check_fibers: bool = True) -> RoadmapBundle:
    """Build W_i, K_i, the image eliminants, F_i and the assumption report."""
    if not 2 <= i <= V.dimension:
        raise ValueError(f"i={i} must satisfy 2 <= i <= d={V.dimension}")
    R = V.ring
    A = check_assumption_A(V)
    P = check_assumption_P(phi)
    W = critical_ideal(V, phi, i)
    if check_fibers:
        B1, B2 = check_assumption_B(V, phi, i, samples=samples, seed=seed, locus=W)
    else:
        B1, B2 = check_assumption_B(V, phi, i, samples=0, seed=seed, locus=W)
    notes = list(W.notes)
    try:
        sample = compute_sample_set(V, phi, i, width, locus=W)
        C1, C2 = check_assumption_C(sample)
    except PositiveDimensionalError as exc:
        sample = None
        C1, C2 = check_assumption_C(None, exc)
    report = AssumptionReport(A, P, B1, B2, C1, C2)

    # K_i = W(phi_1, V) u S_i u sing(V), each as a zero-dimensional system
    comps = []
    crit_V = critical_ideal(V, phi, 1).W_ideal
    if not crit_V.is_unit():
        if krull_dimension(crit_V) > 0:
            raise PositiveDimensionalError("W(phi_1, V) is not finite", krull_dimension(crit_V))
        comps.append(crit_V)
    if sample is None:
        raise PositiveDimensionalError("K_i cannot be formed without a finite sample set", C1.witness)
    if not sample.source_ideal.is_unit():
        comps.append(sample.source_ideal)
    sing = singular_ideal(V)
    if not sing.is_unit():
        comps.append(sing)

    K = None
    for C in comps:
        if K is None:
            K = C
        elif zero_set_contained(C, K):
            notes.append("component of K_i already contained in the union")
        elif zero_set_contained(K, C):
            K = C
        else:
            K = ideal_intersection(K, C)
    if K is None:
        K = Ideal(R, [R.one()])
    K_points = solution_set(K, width)
    elims = image_ideal(K, phi, i - 1)
    crit_values = []
    if i - 1 == 1 and elims and not elims[0].is_constant():
        crit_values = _match_critical_values(phi[0], elims[0], K, K_points, width)
    return RoadmapBundle(
        variety=V, map=phi, i=i, W=W, K_ideal=K, K_points=K_points, critical_values=crit_values,
        image_eliminants=elims, assumptions=report, K_components=comps, notes=notes,
    )


def _compose_horner(P: Poly, values) -> Poly:
    if len(values) == 1:
        t = values[0]
        acc = t.ring.zero()
        for c in reversed(P.univariate_coeffs(0)):
            acc = acc * t + c
        return acc
    return P.compose(list(values))


def fiber_union_ideal(V: VarietySpec, phi: PolyMap, i: int, eliminants) -> Ideal:
    R = V.ring
    if not eliminants or any(e.is_constant() and e for e in eliminants):
        return Ideal(R, [R.one()])
    return Ideal(R, list(V.generators) + [_compose_horner(P, phi.prefix(i - 1)) for P in eliminants])
