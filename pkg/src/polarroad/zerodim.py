"""Zero-dimensional systems: counting, Hermite trace forms and certified real solutions."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from gmpy2 import mpq

from . import linalg
from . import univariate as uv
from .errors import NotZeroDimensionalError
from .groebner import GroebnerBasis, Ideal, normal_form, quotient_basis
from .polyring import Interval, Poly, QQ, grevlex, monomial_mul

DEFAULT_WIDTH = mpq(1, 2 ** 20)

CERTIFIED = "certified-unique"
CANDIDATE = "candidate"


class QuotientAlgebra:
    """The finite-dimensional algebra Q[x]/I with its standard-monomial basis."""

    def __init__(self, G: GroebnerBasis):
        if not G.is_zero_dimensional():
            raise NotZeroDimensionalError("ideal is not zero-dimensional")
        self.G = G
        self.ring = G.ring
        self.basis = quotient_basis(G)
        self.index = {m: k for k, m in enumerate(self.basis)}
        self.dim = len(self.basis)
        self._mono: dict = {}
        self._mult: dict[int, list] = {}

    def _reduce_to_vector(self, p: Poly) -> list:
        r = normal_form(p, self.G)
        v = [mpq(0)] * self.dim
        for e, c in r.terms_dict.items():
            v[self.index[e]] = c
        return v

    def multiplication_matrix(self, var: int) -> list:
        """Matrix of multiplication by x_var; column j holds the coordinates of x_var * b_j."""
        M = self._mult.get(var)
        if M is None:
            n = self.ring.nvars
            unit = tuple(1 if k == var else 0 for k in range(n))
            cols = []
            for b in self.basis:
                m = monomial_mul(b, unit)
                if m in self.index:
                    v = [mpq(0)] * self.dim
                    v[self.index[m]] = mpq(1)
                else:
                    v = self._reduce_to_vector(Poly._raw(self.ring, {m: mpq(1)}))
                cols.append(v)
            M = [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]
            self._mult[var] = M
        return M

    def monomial_vector(self, m: tuple) -> list:
        v = self._mono.get(m)
        if v is not None:
            return v
        if m in self.index:
            v = [mpq(0)] * self.dim
            v[self.index[m]] = mpq(1)
        else:
            k = max(range(len(m)), key=lambda i: m[i])
            prev = m[:k] + (m[k] - 1,) + m[k + 1:]
            v = linalg.matvec(self.multiplication_matrix(k), self.monomial_vector(prev))
        self._mono[m] = v
        return v

    def vector(self, p: Poly) -> list:
        out = [mpq(0)] * self.dim
        for e, c in p.terms_dict.items():
            for k, x in enumerate(self.monomial_vector(e)):
                if x:
                    out[k] += c * x
        return out

    def multiply_vector(self, p: Poly, v: list) -> list:
        """Coordinates of p * (element with coordinates v)."""
        out = [mpq(0)] * self.dim
        for e, c in p.terms_dict.items():
            w = v
            for k, x in enumerate(e):
                for _ in range(x):
                    w = linalg.matvec(self.multiplication_matrix(k), w)
            for k, x in enumerate(w):
                if x:
                    out[k] += c * x
        return out

    def krylov(self, p: Poly, count: int) -> list:
        """Coordinate vectors of p^0 .. p^(count-1)."""
        v = [mpq(0)] * self.dim
        v[self.index[(0,) * self.ring.nvars]] = mpq(1)
        vecs = [v]
        for _ in range(count - 1):
            vecs.append(self.multiply_vector(p, vecs[-1]))
        return vecs

    def minimal_polynomial(self, p: Poly) -> list:
        """Monic minimal polynomial of the class of p, ascending coefficients."""
        vecs = [self.krylov(p, 1)[0]]
        for d in range(1, self.dim + 1):
            nxt = self.multiply_vector(p, vecs[-1])
            # does nxt lie in the span of vecs?
            M = [[vecs[j][i] for j in range(d)] + [nxt[i]] for i in range(self.dim)]
            ns = linalg.nullspace(M)
            if ns:
                c = ns[0]
                lead = c[-1]
                return [x / lead for x in c]
            vecs.append(nxt)
        raise AssertionError("minimal polynomial degree exceeds quotient dimension")


@dataclass(frozen=True)
class TraceForm:
    basis: tuple
    matrix: tuple  # rows of mpq

    @property
    def size(self) -> int:
        return len(self.basis)

    def rank_signature(self, method: str = "congruence") -> tuple[int, int]:
        if self.size == 0:
            return 0, 0
        if method == "congruence":
            return linalg.symmetric_signature(self.matrix)
        if method == "charpoly":
            return linalg.charpoly_signature(self.matrix)
        raise ValueError(f"unknown signature method {method!r}")


def hermite_form(A: QuotientAlgebra) -> TraceForm:
    """Trace form Tr(b_i * b_j) on the quotient basis."""
    D = A.dim
    prods = {}
    for i, bi in enumerate(A.basis):
        for j in range(i, D):
            prods[(i, j)] = A.monomial_vector(monomial_mul(bi, A.basis[j]))
    # Tr(M_{b_j}) = sum_i coords(b_i b_j)[i]
    traces = [sum((prods[(min(i, j), max(i, j))][i] for i in range(D)), mpq(0)) for j in range(D)]
    H = [[mpq(0)] * D for _ in range(D)]
    for (i, j), v in prods.items():
        t = sum((a * b for a, b in zip(v, traces) if a and b), mpq(0))
        H[i][j] = H[j][i] = t
    return TraceForm(tuple(A.basis), tuple(tuple(r) for r in H))


def _algebra(I: Ideal) -> QuotientAlgebra:
    G = I.groebner(grevlex)
    if G.is_unit():
        return None
    if not G.is_zero_dimensional():
        raise NotZeroDimensionalError(f"{I} is not zero-dimensional")
    return QuotientAlgebra(G)


def multiplication_matrix(G: GroebnerBasis, var: int) -> list:
    return QuotientAlgebra(G).multiplication_matrix(var)


def count_solutions(I: Ideal) -> tuple[int, int]:
    """(count with multiplicity, distinct count) of complex solutions."""
    A = _algebra(I)
    if A is None:
        return 0, 0
    rk, _ = hermite_form(A).rank_signature()
    return A.dim, rk


def count_real_solutions(I: Ideal, method: str = "congruence") -> int:
    A = _algebra(I)
    if A is None:
        return 0
    return hermite_form(A).rank_signature(method)[1]


def isolate_univariate_roots(p: Poly) -> list[Interval]:
    if not p:
        raise ValueError("zero polynomial")
    return uv.isolate_real_roots(p.univariate_coeffs())


# ---------------------------------------------------------------------------
# real solving


@dataclass(frozen=True)
class SolutionBox:
    coordinates: tuple
    status: str = CERTIFIED

    def midpoint(self) -> tuple:
        return tuple(iv.mid for iv in self.coordinates)

    def as_floats(self) -> tuple:
        return tuple(float(iv.mid) for iv in self.coordinates)

    def width(self):
        return max(iv.width for iv in self.coordinates)

    def disjoint_from(self, other: "SolutionBox") -> bool:
        return any(not a.overlaps(b) for a, b in zip(self.coordinates, other.coordinates))

    def satisfies(self, polys) -> bool:
        return all(p.evaluate(list(self.coordinates)).contains(0) for p in polys)


@dataclass
class SolutionSet:
    ideal: Ideal
    multiplicity_count: int
    distinct_count: int
    real_count: int
    real_boxes: list = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return all(b.status == CERTIFIED for b in self.real_boxes) and len(self.real_boxes) == self.real_count


def _radical_algebra(I: Ideal, A: QuotientAlgebra, distinct: int):
    if A.dim == distinct:
        return I, A
    n = I.ring.nvars
    extra = []
    for k in range(n):
        mp = A.minimal_polynomial(I.ring.var(k))
        sq = uv.squarefree_part(mp)
        extra.append(Poly.from_univariate(I.ring, k, sq))
    J = Ideal(I.ring, list(I.generators) + extra, I.budget)
    return J, QuotientAlgebra(J.groebner(grevlex))


def _separating_forms(n: int, tries: int):
    for k in range(n):
        yield [1 if i == k else 0 for i in range(n)]
    rng = random.Random(20240601)
    for _ in range(tries):
        yield [1] + [rng.randint(-9, 9) for _ in range(n - 1)]


def _shape_representation(A: QuotientAlgebra, tries: int = 30):
    """Find a separating linear form l and polynomials q_k with x_k = q_k(l) mod I.

    Requires a radical ideal. Returns (coeffs of l, minimal polynomial of l, [q_k]) or None.
    """
    R = A.ring
    D = A.dim
    for coeffs in _separating_forms(R.nvars, tries):
        ell = sum((R.var(k) * c for k, c in enumerate(coeffs) if c), R.zero())
        vecs = A.krylov(ell, D + 1)
        V = [[vecs[j][i] for j in range(D)] for i in range(D)]
        rhs = [vecs[D]] + [A.vector(R.var(k)) for k in range(R.nvars)]
        sol = linalg.solve(V, rhs)
        if sol is None:
            continue
        minpoly = [-c for c in sol[0]] + [mpq(1)]
        return coeffs, minpoly, sol[1:]
    return None


def _coordinate_box(root: uv.RealRoot, qs, width) -> tuple:
    while True:
        iv = root.interval
        coords = tuple(
            uv.interval_horner(q, iv) if iv.width else Interval(uv.evaluate(q, iv.lo)) for q in qs
        )
        if all(c.width <= width for c in coords):
            return coords
        root.bisect()


def _krawczyk(polys, box: tuple):
    """True when the Krawczyk operator maps the box strictly inside itself (unique root)."""
    n = len(box)
    if len(polys) != n:
        return False
    R = polys[0].ring
    mid = [iv.mid for iv in box]
    Jm = [[p.diff(k).evaluate(mid) for k in range(n)] for p in polys]
    Y = linalg.inverse(Jm)
    if Y is None:
        return False
    fm = [p.evaluate(mid) for p in polys]
    JX = [[p.diff(k).evaluate(list(box)) for k in range(n)] for p in polys]
    dx = [iv - m for iv, m in zip(box, mid)]
    out = []
    for i in range(n):
        acc = Interval(mid[i] - sum(Y[i][j] * fm[j] for j in range(n)))
        for k in range(n):
            # (I - Y J(X))_{ik}
            s = Interval(1 if i == k else 0)
            for j in range(n):
                if Y[i][j]:
                    s = s - JX[j][k] * Y[i][j]
            acc = acc + s * dx[k]
        out.append(acc)
    return all(b.lo < k.lo and k.hi < b.hi for k, b in zip(out, box))


def _fallback_boxes(I: Ideal, A: QuotientAlgebra, width, expected: int) -> list:
    R = I.ring
    per_coord = []
    for k in range(R.nvars):
        mp = A.minimal_polynomial(R.var(k))
        per_coord.append(uv.real_roots(mp))
    for _ in range(60):
        cands = [()]
        for roots in per_coord:
            cands = [c + (r.interval,) for c in cands for r in roots]
        cands = [c for c in cands if SolutionBox(c).satisfies(I.generators)]
        if len(cands) == expected and all(max(iv.width for iv in c) <= width for c in cands):
            break
        for roots in per_coord:
            for r in roots:
                r.bisect()
    boxes = []
    for c in cands:
        status = CERTIFIED if _krawczyk(list(I.generators), c) and len(cands) == expected else CANDIDATE
        boxes.append(SolutionBox(c, status))
    return boxes


def solve_real(I: Ideal, width=DEFAULT_WIDTH) -> list[SolutionBox]:
    """Boxes of width <= ``width`` around every real solution, sorted lexicographically."""
    return solution_set(I, width).real_boxes


def solution_set(I: Ideal, width=DEFAULT_WIDTH) -> SolutionSet:
    width = QQ(width)
    A = _algebra(I)
    if A is None:
        return SolutionSet(I, 0, 0, 0, [])
    H = hermite_form(A)
    distinct, real = H.rank_signature()
    if real == 0:
        return SolutionSet(I, A.dim, distinct, 0, [])
    J, B = _radical_algebra(I, A, distinct)
    shape = _shape_representation(B)
    if shape is None:
        boxes = _fallback_boxes(J, B, width, real)
    else:
        _, minpoly, qs = shape
        roots = uv.real_roots(minpoly)
        boxes = [_coordinate_box(r, qs, width) for r in roots]
        # refine until pairwise disjoint
        while True:
            clash = {
                i for i in range(len(boxes)) for j in range(len(boxes))
                if i != j and not SolutionBox(boxes[i]).disjoint_from(SolutionBox(boxes[j]))
            }
            if not clash:
                break
            for i in clash:
                roots[i].bisect()
                boxes[i] = _coordinate_box(roots[i], qs, width)
        boxes = [SolutionBox(b, CERTIFIED) for b in boxes]
        if len(boxes) != real:
            boxes = [SolutionBox(b.coordinates, CANDIDATE) for b in boxes]
    boxes.sort(key=lambda b: tuple(iv.lo for iv in b.coordinates))
    return SolutionSet(I, A.dim, distinct, real, boxes)
