"""Univariate polynomials over Q as ascending coefficient lists; real root isolation.

Roots are isolated with Descartes' rule of signs and bisection (the
Vincent-Collins-Akritas scheme) on integer polynomials.
"""

from __future__ import annotations

from functools import reduce

import gmpy2
from gmpy2 import mpq, mpz

from .polyring import Interval, QQ


def trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def degree(p) -> int:
    return len(trim(p)) - 1


def evaluate(p, x):
    acc = mpq(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p):
    return [c * k for k, c in enumerate(p)][1:]


def divmod_poly(a, b):
    a = [QQ(c) for c in trim(a)]
    b = [QQ(c) for c in trim(b)]
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [mpq(0)] * max(len(a) - len(b) + 1, 1)
    lb = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lb
        k = len(a) - len(b)
        q[k] = c
        for i, bc in enumerate(b):
            a[k + i] -= c * bc
        a = trim(a)
    return trim(q), a


def monic(p):
    p = trim(p)
    if not p:
        return p
    lc = p[-1]
    return [QQ(c) / lc for c in p]


def gcd(a, b):
    a, b = monic(a), monic(b)
    while b:
        _, r = divmod_poly(a, b)
        a, b = b, monic(r)
    return a


def squarefree_part(p):
    p = trim(p)
    if len(p) <= 2:
        return monic(p)
    g = gcd(p, derivative(p))
    q, _ = divmod_poly(p, g)
    return monic(q)


def primitive_int(p) -> list:
    """Scale to coprime integers (mpz)."""
    p = [QQ(c) for c in trim(p)]
    if not p:
        return []
    den = reduce(gmpy2.lcm, (c.denominator for c in p), mpz(1))
    ints = [mpz(c * den) for c in p]
    g = reduce(gmpy2.gcd, ints, mpz(0))
    return [c // g for c in ints]


def sign_variations(seq) -> int:
    last = 0
    count = 0
    for c in seq:
        if c:
            s = 1 if c > 0 else -1
            if last and s != last:
                count += 1
            last = s
    return count


def taylor_shift_1(p):
    """Coefficients of p(x + 1)."""
    a = list(p)
    n = len(a)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            a[j] += a[j + 1]
    return a


def _root_bound(p) -> mpz:
    # Cauchy bound rounded up to a power of two
    lc = abs(p[-1])
    m = max((abs(c) for c in p[:-1]), default=0)
    b = 1 + m / lc
    k = 0
    while (mpz(1) << k) <= b:
        k += 1
    return mpz(1) << k


def _isolate_unit(q, a, b, out):
    """Roots of q in (0, 1) correspond to roots of the original polynomial in (a, b)."""
    n = len(q) - 1
    v = sign_variations(taylor_shift_1(list(reversed(q))))
    if v == 0:
        return
    if v == 1:
        out.append(Interval(a, b))
        return
    m = (a + b) / 2
    # qL(x) = 2^n q(x/2) ; qR(x) = qL(x + 1)
    qL = [c << (n - k) for k, c in enumerate(q)]
    qR = taylor_shift_1(qL)
    _isolate_unit(qL, a, m, out)
    if qR[0] == 0:
        out.append(Interval(m, m))
        qR = qR[1:]
    _isolate_unit(qR, m, b, out)


def _scale_shift(p, a, w):
    """Integer polynomial proportional to p(a + w x) for rational a, w."""
    # p(a + w x) via Horner on polynomials in x
    res = [mpq(0)]
    lin = [QQ(a), QQ(w)]
    for c in reversed(p):
        # res = res * (a + w x) + c
        new = [mpq(0)] * (len(res) + 1)
        for k, r in enumerate(res):
            new[k] += r * lin[0]
            new[k + 1] += r * lin[1]
        new[0] += c
        res = new
    return primitive_int(res)


def isolate_real_roots(p) -> list[Interval]:
    """Disjoint isolating intervals, increasing, one per distinct real root of p."""
    p = trim([QQ(c) for c in p])
    if not p:
        raise ValueError("zero polynomial has no isolated roots")
    if len(p) == 1:
        return []
    q = full = primitive_int(squarefree_part(p))
    out: list[Interval] = []
    if q[0] == 0:
        out.append(Interval(0, 0))
        q = q[1:]
    if len(q) > 1:
        B = _root_bound(q)
        pos: list[Interval] = []
        _isolate_unit(_scale_shift(q, 0, B), mpq(0), mpq(B), pos)
        neg: list[Interval] = []
        qn = [c if k % 2 == 0 else -c for k, c in enumerate(q)]
        _isolate_unit(_scale_shift(qn, 0, B), mpq(0), mpq(B), neg)
        out.extend(Interval(-iv.hi, -iv.lo) for iv in neg)
        out.extend(pos)
    out.sort(key=lambda iv: iv.lo)
    return [_clear_endpoints(full, iv) for iv in out]


def _clear_endpoints(q, iv: Interval) -> Interval:
    """Shrink an open isolating interval until neither endpoint is a root."""
    while iv.lo != iv.hi and (evaluate(q, iv.lo) == 0 or evaluate(q, iv.hi) == 0):
        iv = refine_root(q, iv, iv.width / 2)
    return iv


def refine_root(p, iv: Interval, width) -> Interval:
    """Bisect an isolating interval of a squarefree polynomial down to ``width``."""
    width = QQ(width)
    a, b = iv.lo, iv.hi
    if a == b:
        return iv
    # the interval is open: an endpoint may be a neighbouring root, in which
    # case p has the sign of p'(a) just right of a and of -p'(b) just left of b
    sa = _sign(evaluate(p, a)) or _sign(evaluate(derivative(p), a))
    sb = _sign(evaluate(p, b)) or -_sign(evaluate(derivative(p), b))
    if sa == sb:
        raise ValueError("interval does not bracket a sign change")
    while b - a > width:
        m = (a + b) / 2
        sm = _sign(evaluate(p, m))
        if sm == 0:
            return Interval(m, m)
        if sm == sa:
            a = m
        else:
            b = m
    return Interval(a, b)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


class RealRoot:
    """A real root of a squarefree polynomial held as a refinable isolating interval."""

    def __init__(self, poly, interval: Interval):
        self.poly = poly
        self.interval = interval

    def refine(self, width) -> Interval:
        self.interval = refine_root(self.poly, self.interval, width)
        return self.interval

    def bisect(self) -> Interval:
        return self.refine(self.interval.width / 2)

    def __float__(self):
        return float(self.interval.mid)

    def __repr__(self):
        return f"RealRoot(~{float(self):.12g})"


def real_roots(p) -> list[RealRoot]:
    sq = squarefree_part(p)
    return [RealRoot(sq, iv) for iv in isolate_real_roots(sq)]


def interval_horner(p, iv: Interval) -> Interval:
    acc = Interval(0)
    for c in reversed(p):
        acc = acc * iv + c
    return acc
