"""Exact sparse multivariate polynomials over the rationals.

Coefficients are ``gmpy2.mpq`` values (always reduced, positive denominator).
A :class:`Poly` is an immutable map from exponent tuples to nonzero
coefficients, tied to a :class:`Ring` that fixes the variable names.
"""

from __future__ import annotations

import operator
import re
from fractions import Fraction
from functools import reduce
from itertools import combinations, permutations
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpq, mpz

from .errors import ParseError, RingMismatchError

Rational = type(mpq(0))
Monomial = tuple  # tuple[int, ...], one exponent per ring variable

ZERO_DEGREE = -1
MAX_EXPONENT = 10_000

_RESERVED = re.compile(r"^(y\d+|t)$")


def QQ(value) -> Rational:
    """Convert ints, strings like ``"3/4"``, Fractions or mpq to an ``mpq``."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        return mpq(value.strip())
    if isinstance(value, float):
        return mpq(value)
    return mpq(value)


def format_rational(c) -> str:
    c = QQ(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------------------
# monomial orders


class MonomialOrder:
    """A monomial order given by a sort key; larger key = larger monomial."""

    def __init__(self, name: str, key, blocks=None):
        self.name = name
        self.key = key
        self.blocks = blocks

    def __repr__(self):
        return f"MonomialOrder({self.name})"

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.name == other.name

    def __hash__(self):
        return hash(self.name)


def _lex_key(e):
    return e


def _grevlex_key(e):
    return (sum(e),) + tuple(-x for x in reversed(e))


lex = MonomialOrder("lex", _lex_key)
grevlex = MonomialOrder("grevlex", _grevlex_key)


def block_order(eliminated: Sequence[int], kept: Sequence[int]) -> MonomialOrder:
    """Elimination order: any monomial in ``eliminated`` beats every ``kept``-only one.

    Each block is ordered by graded reverse lexicographic order.
    """
    elim = tuple(eliminated)
    keep = tuple(kept)

    def key(e):
        a = [e[i] for i in elim]
        b = [e[i] for i in keep]
        return (sum(a),) + tuple(-x for x in reversed(a)) + (sum(b),) + tuple(-x for x in reversed(b))

    return MonomialOrder(f"block({list(elim)}|{list(keep)})", key, blocks=(elim, keep))


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(operator.add, a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(operator.sub, a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(max, a, b))


# ---------------------------------------------------------------------------
# rings and polynomials


class Ring:
    """Polynomial ring Q[names]. Rings compare equal when their names agree."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str], *, allow_reserved: bool = False):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for nm in names:
            if not re.match(r"^[A-Za-z_][A-Za-z0-9_]*$", nm):
                raise ValueError(f"invalid variable name {nm!r}")
            if not allow_reserved and _RESERVED.match(nm):
                raise ValueError(f"variable name {nm!r} is reserved (y1..ym, t)")
        self.names = names
        self._index = {nm: k for k, nm in enumerate(names)}

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self._index[name]

    def __contains__(self, name):
        return name in self._index

    def __eq__(self, other):
        return isinstance(other, Ring) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"Ring({', '.join(self.names)})"

    def zero(self) -> "Poly":
        return Poly(self)

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        return Poly(self, {(0,) * self.nvars: c})

    def var(self, k) -> "Poly":
        if isinstance(k, str):
            k = self.index(k)
        e = [0] * self.nvars
        e[k] = 1
        return Poly._raw(self, {tuple(e): mpq(1)})

    def gens(self) -> tuple["Poly", ...]:
        return tuple(self.var(k) for k in range(self.nvars))

    def extend(self, names: Iterable[str]) -> "Ring":
        """Return a ring with extra variables appended (reserved names allowed)."""
        return Ring(self.names + tuple(names), allow_reserved=True)

    def parse(self, src: str) -> "Poly":
        return parse_poly(src, self)


def ring(*names: str, allow_reserved: bool = False):
    """``R, x, y = ring("x", "y")``."""
    R = Ring(names, allow_reserved=allow_reserved)
    return (R,) + R.gens()


class Poly:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: Ring, terms: dict | None = None):
        self.ring = ring
        clean = {}
        if terms:
            n = ring.nvars
            for e, c in terms.items():
                e = tuple(int(x) for x in e)
                if len(e) != n or any(x < 0 for x in e):
                    raise ValueError(f"bad exponent {e} for {ring}")
                c = QQ(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
            clean = {e: c for e, c in clean.items() if c}
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: Ring, terms: dict) -> "Poly":
        p = object.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._hash = None
        return p

    # -- basic protocol
    @property
    def terms_dict(self) -> dict:
        return self._terms

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_value(self) -> Rational:
        return self._terms.get((0,) * self.ring.nvars, mpq(0))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Rational, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Rational, Fraction, str)):
            return self.ring.const(other)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    # -- arithmetic
    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational, Fraction)):
            c = QQ(other)
            if not c:
                return Poly._raw(self.ring, {})
            return Poly._raw(self.ring, {e: v * c for e, v in self._terms.items()})
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out: dict = {}
        get = out.get
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(map(operator.add, e1, e2))
                out[e] = get(e, 0) + c1 * c2
        return Poly._raw(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Rational, Fraction)):
            c = QQ(other)
            if not c:
                raise ZeroDivisionError("division of a polynomial by zero")
            return self * (1 / c)
        if isinstance(other, Poly) and other.is_constant() and other:
            return self / other.constant_value()
        return NotImplemented

    def scale_monomial(self, m: Monomial, c=1) -> "Poly":
        c = QQ(c)
        return Poly._raw(self.ring, {monomial_mul(e, m): v * c for e, v in self._terms.items()})

    # -- degrees and terms
    def degree(self) -> int:
        """Total degree; ``ZERO_DEGREE`` (-1) for the zero polynomial."""
        if not self._terms:
            return ZERO_DEGREE
        return max(sum(e) for e in self._terms)

    def degree_in(self, var: int) -> int:
        if not self._terms:
            return ZERO_DEGREE
        return max(e[var] for e in self._terms)

    def variables(self) -> set[int]:
        return {k for e in self._terms for k, x in enumerate(e) if x}

    def terms(self, order: MonomialOrder = grevlex) -> list[tuple[Monomial, Rational]]:
        return sorted(self._terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_monomial(self, order: MonomialOrder = grevlex) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=order.key)

    def leading_coeff(self, order: MonomialOrder = grevlex) -> Rational:
        return self._terms[self.leading_monomial(order)]

    def monic(self, order: MonomialOrder = grevlex) -> "Poly":
        if not self._terms:
            return self
        return self * (1 / self.leading_coeff(order))

    def content_free(self) -> "Poly":
        """Scale to integer coefficients with gcd 1 and positive leading coefficient (grevlex)."""
        if not self._terms:
            return self
        den = reduce(gmpy2.lcm, (c.denominator for c in self._terms.values()), mpz(1))
        nums = [c * den for c in self._terms.values()]
        g = reduce(gmpy2.gcd, (mpz(x.numerator) for x in nums), mpz(0))
        s = den / g
        if self.leading_coeff() < 0:
            s = -s
        return self * s

    # -- calculus and evaluation
    def diff(self, var: int) -> "Poly":
        if isinstance(var, str):
            var = self.ring.index(var)
        if not 0 <= var < self.ring.nvars:
            raise IndexError(f"variable index {var} out of range")
        out = {}
        for e, c in self._terms.items():
            k = e[var]
            if k:
                e2 = list(e)
                e2[var] = k - 1
                out[tuple(e2)] = c * k
        return Poly._raw(self.ring, out)

    def evaluate(self, point: Sequence):
        """Exact value at a rational point, or an enclosure on an Interval box."""
        if len(point) != self.ring.nvars:
            raise ValueError(f"point has {len(point)} coordinates, ring has {self.ring.nvars}")
        if any(isinstance(v, Interval) for v in point):
            box = [v if isinstance(v, Interval) else Interval(v, v) for v in point]
            return _interval_eval(self, box)
        pt = [QQ(v) for v in point]
        total = mpq(0)
        powers: list[dict] = [{0: mpq(1)} for _ in pt]
        for e, c in self._terms.items():
            t = c
            for k, x in enumerate(e):
                if x:
                    pk = powers[k]
                    if x not in pk:
                        pk[x] = pt[k] ** x
                    t = t * pk[x]
            total += t
        return total

    def eval_float(self, points):
        """Vectorised float evaluation at an ``(m, n)`` numpy array of points."""
        import numpy as np

        pts = np.atleast_2d(np.asarray(points, dtype=float))
        out = np.zeros(pts.shape[0])
        for e, c in self._terms.items():
            t = np.full(pts.shape[0], float(c))
            for k, x in enumerate(e):
                if x:
                    t = t * pts[:, k] ** x
            out += t
        return out

    def compose(self, values: Sequence["Poly"]) -> "Poly":
        """Substitute ``values[k]`` (polys over a common ring) for variable k."""
        if len(values) != self.ring.nvars:
            raise ValueError("need one substitution per variable")
        target = values[0].ring if values else self.ring
        result = target.zero()
        cache: list[dict] = [{0: target.one()} for _ in values]
        for e, c in self._terms.items():
            t = target.const(c)
            for k, x in enumerate(e):
                if x:
                    ck = cache[k]
                    if x not in ck:
                        ck[x] = values[k] ** x
                    t = t * ck[x]
            result = result + t
        return result

    def embed(self, target: Ring, mapping: Sequence[int] | None = None) -> "Poly":
        """Move to ``target``; variable k goes to ``mapping[k]`` (default: same name)."""
        if mapping is None:
            mapping = [target.index(nm) for nm in self.ring.names]
        out = {}
        for e, c in self._terms.items():
            e2 = [0] * target.nvars
            for k, x in enumerate(e):
                if x:
                    e2[mapping[k]] += x
            out[tuple(e2)] = c
        return Poly._raw(target, out)

    def univariate_coeffs(self, var: int | None = None) -> list[Rational]:
        """Ascending coefficient list, for a polynomial in at most one variable."""
        used = self.variables()
        if var is None:
            if len(used) > 1:
                raise ValueError(f"{self} is not univariate")
            var = next(iter(used)) if used else 0
        elif used - {var}:
            raise ValueError(f"{self} involves variables other than {self.ring.names[var]}")
        deg = max(self.degree_in(var), 0)
        out = [mpq(0)] * (deg + 1)
        for e, c in self._terms.items():
            out[e[var]] = c
        return out

    @classmethod
    def from_univariate(cls, ring: Ring, var: int, coeffs: Sequence) -> "Poly":
        out = {}
        for k, c in enumerate(coeffs):
            if c:
                e = [0] * ring.nvars
                e[var] = k
                out[tuple(e)] = QQ(c)
        return cls._raw(ring, out)

    def exquo(self, other: "Poly") -> "Poly":
        """Exact division; raises ``ValueError`` when ``other`` does not divide ``self``."""
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        lm_o = other.leading_monomial()
        lc_o = other._terms[lm_o]
        rem = dict(self._terms)
        quo = {}
        while rem:
            lm = max(rem, key=grevlex.key)
            if not monomial_divides(lm_o, lm):
                raise ValueError("inexact polynomial division")
            q = monomial_div(lm, lm_o)
            c = rem[lm] / lc_o
            quo[q] = c
            for e, v in other._terms.items():
                e2 = monomial_mul(e, q)
                w = rem.get(e2, 0) - c * v
                if w:
                    rem[e2] = w
                else:
                    rem.pop(e2, None)
        return Poly._raw(self.ring, quo)

    # -- printing
    def __str__(self):
        return poly_to_str(self)

    def __repr__(self):
        return f"Poly({poly_to_str(self)!r})"


def poly_to_str(p: Poly) -> str:
    if not p._terms:
        return "0"
    parts = []
    for e, c in p.terms(grevlex):
        mono = "*".join(
            nm if x == 1 else f"{nm}^{x}" for nm, x in zip(p.ring.names, e) if x
        )
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = format_rational(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_rational(a)}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


# ---------------------------------------------------------------------------
# intervals


class Interval:
    """Closed interval with rational endpoints. Arithmetic is exact, hence sound."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = QQ(lo)
        hi = lo if hi is None else QQ(hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    @property
    def width(self) -> Rational:
        return self.hi - self.lo

    @property
    def mid(self) -> Rational:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        x = QQ(x)
        return self.lo <= x <= self.hi

    __contains__ = contains

    def overlaps(self, other: "Interval") -> bool:
        return not (self.hi < other.lo or other.hi < self.lo)

    def _wrap(self, other):
        return other if isinstance(other, Interval) else Interval(other)

    def __add__(self, other):
        other = self._wrap(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        other = self._wrap(other)
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        other = self._wrap(other)
        ps = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k == 0:
            return Interval(1)
        if k % 2 == 1 or self.lo >= 0:
            a, b = self.lo ** k, self.hi ** k
            return Interval(min(a, b), max(a, b))
        if self.hi <= 0:
            return Interval(self.hi ** k, self.lo ** k)
        return Interval(0, max(self.lo ** k, self.hi ** k))

    def __eq__(self, other):
        return isinstance(other, Interval) and self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __repr__(self):
        return f"Interval({format_rational(self.lo)}, {format_rational(self.hi)})"

    def round_out(self, bits: int = 128) -> "Interval":
        """Enlarge to dyadic endpoints with ``bits`` fractional bits (keeps sizes small)."""
        s = mpz(1) << bits
        lo = mpq(gmpy2.f_div(self.lo.numerator * s, self.lo.denominator), s)
        hi = mpq(gmpy2.c_div(self.hi.numerator * s, self.hi.denominator), s)
        return Interval(lo, hi)


def _interval_eval(p: Poly, box: Sequence[Interval]) -> Interval:
    total = Interval(0)
    powers: list[dict] = [{} for _ in box]
    for e, c in p._terms.items():
        t = Interval(c)
        for k, x in enumerate(e):
            if x:
                pk = powers[k]
                if x not in pk:
                    pk[x] = box[k] ** x
                t = t * pk[x]
        total = total + t
    return total


# ---------------------------------------------------------------------------
# matrices


class PolyMatrix:
    """Dense row-major matrix of polynomials over one ring."""

    def __init__(self, ring: Ring, rows: int, cols: int, entries: Sequence[Poly]):
        entries = list(entries)
        if len(entries) != rows * cols:
            raise ValueError(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}")
        for p in entries:
            if p.ring != ring:
                raise RingMismatchError("matrix entries must share one ring")
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, ring: Ring, rows: Sequence[Sequence]) -> "PolyMatrix":
        rows = [[p if isinstance(p, Poly) else ring.const(p) for p in r] for r in rows]
        ncols = len(rows[0]) if rows else ring.nvars
        return cls(ring, len(rows), ncols, [p for r in rows for p in r])

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "PolyMatrix":
        return cls.from_rows(ring, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij) -> Poly:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i) -> list[Poly]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> list[list[Poly]]:
        return [self.row(i) for i in range(self.rows)]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.ring, len(rows), len(cols), [self[i, j] for i in rows for j in cols])

    def stack(self, other: "PolyMatrix") -> "PolyMatrix":
        if other.cols != self.cols:
            raise ValueError("column count mismatch")
        return PolyMatrix(self.ring, self.rows + other.rows, self.cols, self.entries + other.entries)

    def determinant(self, method: str = "auto") -> Poly:
        """Exact determinant: cofactor expansion below 4x4, fraction-free Bareiss otherwise."""
        if self.rows != self.cols:
            raise ValueError(f"determinant of non-square {self.rows}x{self.cols} matrix")
        if method == "auto":
            method = "cofactor" if self.rows < 4 else "bareiss"
        rows = self.tolist()
        if method == "cofactor":
            return _cofactor_det(self.ring, rows)
        if method == "bareiss":
            return _bareiss_det(self.ring, rows)
        raise ValueError(f"unknown determinant method {method!r}")

    def minors(self, k: int):
        """Yield all k x k minors (row subsets outer, column subsets inner)."""
        if not 1 <= k <= min(self.rows, self.cols):
            raise ValueError(f"minor size {k} out of range for {self.rows}x{self.cols}")
        for rs in combinations(range(self.rows), k):
            for cs in combinations(range(self.cols), k):
                yield self.submatrix(rs, cs).determinant()

    def __repr__(self):
        return f"PolyMatrix({[[str(p) for p in r] for r in self.tolist()]})"


def _cofactor_det(R: Ring, rows: list[list[Poly]]) -> Poly:
    n = len(rows)
    if n == 0:
        return R.one()
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = R.zero()
    for j in range(n):
        a = rows[0][j]
        if not a:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * _cofactor_det(R, minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def _bareiss_det(R: Ring, rows: list[list[Poly]]) -> Poly:
    M = [list(r) for r in rows]
    n = len(M)
    if n == 0:
        return R.one()
    sign = 1
    prev = R.one()
    for k in range(n - 1):
        if not M[k][k]:
            for r in range(k + 1, n):
                if M[r][k]:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return R.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[k][k] * M[i][j] - M[i][k] * M[k][j]
                M[i][j] = num.exquo(prev) if not prev.is_constant() else num / prev.constant_value()
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return det if sign > 0 else -det


def laplace_determinant(R: Ring, rows) -> Poly:
    """Leibniz-formula determinant; slow, used as an independent cross-check."""
    n = len(rows)
    total = R.zero()
    for perm in permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        t = R.one()
        for i in range(n):
            t = t * rows[i][perm[i]]
            if not t:
                break
        total = total + t if inv % 2 == 0 else total - t
    return total


# ---------------------------------------------------------------------------
# parser

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


class _Parser:
    def __init__(self, src: str, ring: Ring):
        self.src = src
        self.ring = ring
        self.tokens = self._tokenize(src)
        self.pos = 0

    def _loc(self, offset: int) -> tuple[int, int]:
        line = self.src.count("\n", 0, offset) + 1
        col = offset - (self.src.rfind("\n", 0, offset) + 1) + 1
        return line, col

    def _error(self, msg: str, offset: int):
        line, col = self._loc(offset)
        return ParseError(f"{msg} at line {line}, column {col}", line, col)

    def _tokenize(self, src: str):
        out = []
        i = 0
        n = len(src)
        while i < n:
            if src[i].isspace():
                i += 1
                continue
            m = _TOKEN.match(src, i)
            if not m or m.end() == i:
                raise self._error(f"unexpected character {src[i]!r}", i)
            start = m.start(m.lastindex)
            if m.group(1):
                out.append(("int", m.group(1), start))
            elif m.group(2):
                out.append(("name", m.group(2), start))
            else:
                op = m.group(3)
                out.append(("op", "^" if op == "**" else op, start))
            i = m.end()
        out.append(("end", "", n))
        return out

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value or tok[0] not in ("op",):
            raise self._error(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok[2])
        return tok

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            raise self._error("empty expression", 0)
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise self._error(f"unexpected token {tok[1]!r}", tok[2])
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            _, op, at = self.take()
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or not q:
                    raise self._error("division only by a nonzero constant", at)
                p = p / q.constant_value()
        tok = self.peek()
        if tok[0] in ("int", "name") or tok[1] == "(":
            raise self._error("implicit multiplication is not allowed", tok[2])
        return p

    def unary(self) -> Poly:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            p = self.unary()
            return -p if tok[1] == "-" else p
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                raise self._error("exponent must be a non-negative integer literal", tok[2])
            k = int(tok[1])
            if k > MAX_EXPONENT:
                raise self._error(f"exponent {k} exceeds limit {MAX_EXPONENT}", tok[2])
            if self.peek()[0] == "op" and self.peek()[1] == "^":
                raise self._error("chained exponents are ambiguous; use parentheses", self.peek()[2])
            return base ** k
        return base

    def atom(self) -> Poly:
        tok = self.take()
        kind, val, at = tok
        if kind == "int":
            return self.ring.const(int(val))
        if kind == "name":
            if val not in self.ring:
                raise self._error(f"undeclared variable {val!r}", at)
            return self.ring.var(val)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect(")")
            return p
        raise self._error(f"unexpected {val or 'end of input'!r}", at)


def parse_poly(src: str, ring: Ring) -> Poly:
    """Parse ``src`` (integers, variables, ``+ - * / ^``, parentheses) into a Poly."""
    return _Parser(src, ring).parse()
