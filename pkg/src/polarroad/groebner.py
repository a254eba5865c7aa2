"""Buchberger's algorithm and the ideal operations built on it.

The engine works on plain ``{exponent: mpq}`` dicts kept monic, with the
normal selection strategy and the Gebauer-Moeller criteria for discarding
pairs. Everything public is expressed through :class:`Ideal` and
:class:`GroebnerBasis`.
"""

from __future__ import annotations

import heapq
import threading
from dataclasses import dataclass, field
from itertools import combinations

from gmpy2 import mpq

from .errors import NotZeroDimensionalError, ResourceLimitError, RingMismatchError
from .polyring import (
    MonomialOrder,
    Poly,
    Ring,
    block_order,
    grevlex,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)


@dataclass(frozen=True)
class Budget:
    """Hard limits for a Groebner computation; exceeding one raises ResourceLimitError."""

    max_pairs: int = 200_000
    max_terms: int = 200_000


DEFAULT_BUDGET = Budget()
_default_budget = [DEFAULT_BUDGET]


def set_default_budget(budget: Budget) -> Budget:
    """Budget used by ideals created without an explicit one; returns the previous value."""
    prev = _default_budget[0]
    _default_budget[0] = budget
    return prev


def get_default_budget() -> Budget:
    return _default_budget[0]


class _KeyCache(dict):
    __slots__ = ("fn",)

    def __init__(self, fn):
        super().__init__()
        self.fn = fn

    def __missing__(self, e):
        k = self.fn(e)
        self[e] = k
        return k


class _Engine:
    def __init__(self, order: MonomialOrder, budget: Budget):
        self.order = order
        self.budget = budget
        self.key = _KeyCache(order.key)

    def lm(self, f: dict):
        return max(f, key=self.key.__getitem__)

    def monic(self, f: dict) -> dict:
        c = f[self.lm(f)]
        if c == 1:
            return f
        inv = 1 / c
        return {e: v * inv for e, v in f.items()}

    def reduce(self, f: dict, basis: list[dict], lms: list) -> dict:
        """Full reduction of ``f`` modulo monic ``basis`` (leading monomials ``lms``)."""
        f = dict(f)
        key = self.key
        heap = [(_neg(key[e]), e) for e in f]
        heapq.heapify(heap)
        rem = {}
        max_terms = self.budget.max_terms
        while heap:
            _, m = heapq.heappop(heap)
            c = f.pop(m, None)
            if c is None:
                continue
            while heap and heap[0][1] == m:
                heapq.heappop(heap)
            for g, lg in zip(basis, lms):
                if monomial_divides(lg, m):
                    q = monomial_div(m, lg)
                    for e, v in g.items():
                        if e == lg:
                            continue
                        e2 = monomial_mul(e, q)
                        old = f.get(e2)
                        if old is None:
                            f[e2] = -c * v
                            heapq.heappush(heap, (_neg(key[e2]), e2))
                        else:
                            w = old - c * v
                            if w:
                                f[e2] = w
                            else:
                                del f[e2]
                    if len(f) > max_terms:
                        raise ResourceLimitError(
                            f"intermediate polynomial exceeded {max_terms} terms"
                        )
                    break
            else:
                rem[m] = c
        return rem

    def spoly(self, f: dict, g: dict, lf, lg) -> dict:
        lcm = monomial_lcm(lf, lg)
        qf = monomial_div(lcm, lf)
        qg = monomial_div(lcm, lg)
        out = {monomial_mul(e, qf): v for e, v in f.items() if e != lf}
        for e, v in g.items():
            if e == lg:
                continue
            e2 = monomial_mul(e, qg)
            w = out.get(e2, 0) - v
            if w:
                out[e2] = w
            else:
                out.pop(e2, None)
        return out

    def buchberger(self, polys: list[dict]) -> list[dict]:
        polys = [self.monic(p) for p in polys if p]
        if not polys:
            return []
        # start from an interreduced generating set to keep pairs few
        polys.sort(key=lambda p: self.key[self.lm(p)])
        f: list[dict] = []
        lms: list = []
        G: list[int] = []
        B: list[tuple[int, int]] = []
        key = self.key

        def add(h):
            f.append(h)
            lms.append(self.lm(h))
            return len(f) - 1

        for p in polys:
            cur = [f[i] for i in G]
            cur_lm = [lms[i] for i in G]
            h = self.reduce(p, cur, cur_lm)
            if h:
                ih = add(self.monic(h))
                G, B = self._update(G, B, ih, lms)
        pairs_done = 0
        while B:
            # normal strategy: smallest lcm first
            best = min(range(len(B)), key=lambda t: key[monomial_lcm(lms[B[t][0]], lms[B[t][1]])])
            i, j = B.pop(best)
            pairs_done += 1
            if pairs_done > self.budget.max_pairs:
                raise ResourceLimitError(f"Groebner pair budget {self.budget.max_pairs} exceeded")
            s = self.spoly(f[i], f[j], lms[i], lms[j])
            if not s:
                continue
            h = self.reduce(s, [f[k] for k in G], [lms[k] for k in G])
            if h:
                ih = add(self.monic(h))
                if not any(lms[ih]):
                    return [{lms[ih]: mpq(1)}]
                G, B = self._update(G, B, ih, lms)
        return self._reduce_basis([f[k] for k in G])

    @staticmethod
    def _update(G, B, ih, lms):
        mh = lms[ih]
        C = list(G)
        D = []
        while C:
            ig = C.pop()
            mg = lms[ig]
            lcm_hg = monomial_lcm(mh, mg)
            if monomial_mul(mh, mg) == lcm_hg:
                D.append(ig)
                continue
            redundant = any(monomial_divides(monomial_lcm(mh, lms[x]), lcm_hg) for x in C) or any(
                monomial_divides(monomial_lcm(mh, lms[x]), lcm_hg) for x in D
            )
            if not redundant:
                D.append(ig)
        E = [(ih, ig) for ig in D if monomial_mul(mh, lms[ig]) != monomial_lcm(mh, lms[ig])]
        B_new = []
        for a, b in B:
            lab = monomial_lcm(lms[a], lms[b])
            if (
                not monomial_divides(mh, lab)
                or monomial_lcm(lms[a], mh) == lab
                or monomial_lcm(lms[b], mh) == lab
            ):
                B_new.append((a, b))
        B_new.extend(E)
        G_new = [ig for ig in G if not monomial_divides(mh, lms[ig])]
        G_new.append(ih)
        return G_new, B_new

    def _reduce_basis(self, G: list[dict]) -> list[dict]:
        lms = [self.lm(g) for g in G]
        keep = []
        for a, (g, lg) in enumerate(zip(G, lms)):
            if any(b != a and monomial_divides(lms[b], lg) and (lms[b] != lg or b < a) for b in range(len(G))):
                continue
            keep.append(a)
        G = [G[a] for a in keep]
        lms = [lms[a] for a in keep]
        out = []
        for a in range(len(G)):
            others = [G[b] for b in range(len(G)) if b != a]
            other_lms = [lms[b] for b in range(len(G)) if b != a]
            tail = {e: v for e, v in G[a].items() if e != lms[a]}
            red = self.reduce(tail, others, other_lms)
            red[lms[a]] = mpq(1)
            out.append(red)
        out.sort(key=lambda g: self.key[self.lm(g)])
        return out


def _neg(k):
    return tuple(-x for x in k)


# ---------------------------------------------------------------------------
# public types


class GroebnerBasis:
    """Reduced Groebner basis: monic elements sorted by increasing leading monomial."""

    def __init__(self, ring: Ring, order: MonomialOrder, elements: list[Poly]):
        self.ring = ring
        self.order = order
        self.elements = tuple(elements)
        self.leading_monomials = tuple(g.leading_monomial(order) for g in self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return (
            isinstance(other, GroebnerBasis)
            and self.order == other.order
            and set(self.elements) == set(other.elements)
        )

    def __hash__(self):
        return hash((self.order, frozenset(self.elements)))

    def __repr__(self):
        return f"GroebnerBasis({self.order.name}, [{', '.join(map(str, self.elements))}])"

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def is_zero_dimensional(self) -> bool:
        if self.is_unit():
            return False
        n = self.ring.nvars
        pure = set()
        for m in self.leading_monomials:
            nz = [k for k, x in enumerate(m) if x]
            if len(nz) == 1:
                pure.add(nz[0])
        return len(pure) == n


class Ideal:
    """Ideal of Q[x] given by generators. Bases are cached per monomial order (write-once)."""

    def __init__(self, ring: Ring, generators=(), budget: Budget | None = None):
        gens = []
        for g in generators:
            if not isinstance(g, Poly):
                g = ring.parse(g) if isinstance(g, str) else ring.const(g)
            if g.ring != ring:
                raise RingMismatchError(f"generator {g} lives in {g.ring}, not {ring}")
            if g:
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self.budget = budget or get_default_budget()
        self._cache: dict[MonomialOrder, GroebnerBasis] = {}
        self._lock = threading.Lock()

    @property
    def is_zero_ideal(self) -> bool:
        return not self.generators

    def __repr__(self):
        return f"Ideal<{', '.join(map(str, self.generators)) or '0'}>"

    def __add__(self, other):
        if isinstance(other, Ideal):
            other = other.generators
        return Ideal(self.ring, self.generators + tuple(other), self.budget)

    def groebner(self, order: MonomialOrder = grevlex) -> GroebnerBasis:
        gb = self._cache.get(order)
        if gb is None:
            gb = groebner_basis(self, order)
            with self._lock:
                gb = self._cache.setdefault(order, gb)
        return gb

    def contains(self, p: Poly) -> bool:
        return ideal_membership(p, self)

    def dimension(self) -> int:
        return krull_dimension(self)

    def is_unit(self) -> bool:
        return self.groebner().is_unit()


def groebner_basis(I: Ideal, order: MonomialOrder = grevlex, budget: Budget | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of ``I`` for ``order``."""
    budget = budget or I.budget
    eng = _Engine(order, budget)
    raw = eng.buchberger([dict(g.terms_dict) for g in I.generators])
    return GroebnerBasis(I.ring, order, [Poly._raw(I.ring, g) for g in raw])


def normal_form(p: Poly, G: GroebnerBasis) -> Poly:
    if p.ring != G.ring:
        raise RingMismatchError(f"{p.ring} vs {G.ring}")
    if not p or not G.elements:
        return p
    eng = _Engine(G.order, get_default_budget())
    r = eng.reduce(p.terms_dict, [g.terms_dict for g in G.elements], list(G.leading_monomials))
    return Poly._raw(p.ring, r)


def ideal_membership(p: Poly, I: Ideal) -> bool:
    if p.ring != I.ring:
        raise RingMismatchError(f"{p.ring} vs {I.ring}")
    if not p:
        return True
    if I.is_zero_ideal:
        return False
    return not normal_form(p, I.groebner())


def ideals_equal(I: Ideal, J: Ideal) -> bool:
    """Equality by mutual generator membership."""
    return all(ideal_membership(g, J) for g in I.generators) and all(
        ideal_membership(g, I) for g in J.generators
    )


def _restrict(I: Ideal, polys, ring: Ring | None):
    if ring is None:
        return Ideal(I.ring, polys, I.budget)
    return Ideal(ring, [p.embed(ring) for p in polys], I.budget)


def elimination_ideal(I: Ideal, keep, ring: Ring | None = None) -> Ideal:
    """Generators of I intersected with Q[keep] (keep: variable names or indices).

    With ``ring`` given, the result is moved into that ring (it must contain the
    kept variables by name).
    """
    keep_idx = sorted(I.ring.index(v) if isinstance(v, str) else v for v in keep)
    elim = [k for k in range(I.ring.nvars) if k not in keep_idx]
    if not elim:
        G = I.groebner()
        return _restrict(I, G.elements, ring)
    order = block_order(elim, keep_idx)
    G = I.groebner(order) if not I.is_zero_ideal else GroebnerBasis(I.ring, order, [])
    kept = [g for g in G.elements if not any(g.degree_in(k) > 0 for k in elim)]
    return _restrict(I, kept, ring)


def saturation(I: Ideal, h: Poly) -> Ideal:
    """I : h^infinity via t*h - 1 and elimination of t."""
    if not h:
        raise ValueError("cannot saturate by the zero polynomial")
    if h.is_constant():
        return Ideal(I.ring, I.groebner().elements if not I.is_zero_ideal else (), I.budget)
    R2 = I.ring.extend(["t"])
    t = R2.var(R2.nvars - 1)
    gens = [g.embed(R2) for g in I.generators] + [t * h.embed(R2) - 1]
    J = Ideal(R2, gens, I.budget)
    E = elimination_ideal(J, list(range(I.ring.nvars)))
    back = list(range(I.ring.nvars))
    return Ideal(I.ring, [Poly._raw(I.ring, {e[:-1]: c for e, c in g.terms_dict.items()}) for g in E.generators], I.budget)


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    """I intersected with J via t*I + (1-t)*J and elimination of t."""
    if I.is_zero_ideal or J.is_zero_ideal:
        return Ideal(I.ring, (), I.budget)
    R2 = I.ring.extend(["t"])
    t = R2.var(R2.nvars - 1)
    gens = [t * g.embed(R2) for g in I.generators] + [(1 - t) * g.embed(R2) for g in J.generators]
    E = elimination_ideal(Ideal(R2, gens, I.budget), list(range(I.ring.nvars)))
    return Ideal(I.ring, [Poly._raw(I.ring, {e[:-1]: c for e, c in g.terms_dict.items()}) for g in E.generators], I.budget)


def saturation_by_ideal(I: Ideal, J: Ideal) -> Ideal:
    """I : J^infinity as the intersection of the saturations by each generator of J."""
    result = None
    for h in J.generators:
        S = saturation(I, h)
        result = S if result is None else ideal_intersection(result, S)
    if result is None:
        return I
    return result


def quotient_basis(G: GroebnerBasis) -> list[tuple]:
    """Standard monomials (outside the leading-term ideal), sorted increasingly."""
    if G.is_unit():
        return []
    if not G.is_zero_dimensional():
        raise NotZeroDimensionalError("quotient is not finite-dimensional")
    n = G.ring.nvars
    lms = G.leading_monomials
    out = []
    seen = {(0,) * n}
    stack = [(0,) * n]
    while stack:
        m = stack.pop()
        if any(monomial_divides(l, m) for l in lms):
            continue
        out.append(m)
        for k in range(n):
            m2 = m[:k] + (m[k] + 1,) + m[k + 1:]
            if m2 not in seen:
                seen.add(m2)
                stack.append(m2)
    out.sort(key=G.order.key)
    return out


def krull_dimension(I: Ideal) -> int:
    """Largest set of variables independent modulo the leading-term ideal; -1 for <1>."""
    n = I.ring.nvars
    if I.is_zero_ideal:
        return n
    G = I.groebner(grevlex)
    if G.is_unit():
        return -1
    supports = [frozenset(k for k, x in enumerate(m) if x) for m in G.leading_monomials]
    for size in range(n, -1, -1):
        for S in combinations(range(n), size):
            s = set(S)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def is_radical_member(p: Poly, I: Ideal) -> bool:
    """Rabinowitsch test: p vanishes on V(I) over C."""
    R2 = I.ring.extend(["t"])
    t = R2.var(R2.nvars - 1)
    J = Ideal(R2, [g.embed(R2) for g in I.generators] + [1 - t * p.embed(R2)], I.budget)
    return J.is_unit()
