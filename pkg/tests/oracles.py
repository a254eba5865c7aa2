"""Independent reference implementations used only by the tests.

Nothing here imports the package's algorithms; inputs are plain Python
Fractions or sympy objects so a shared bug cannot hide.
"""

from fractions import Fraction

import sympy


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _rem(a, b):
    a = [Fraction(c) for c in _trim(a)]
    b = [Fraction(c) for c in _trim(b)]
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        k = len(a) - len(b)
        for i, bc in enumerate(b):
            a[k + i] -= c * bc
        a = _trim(a)
    return a


def _eval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def sturm_sequence(p):
    p = [Fraction(c) for c in _trim(p)]
    dp = [c * k for k, c in enumerate(p)][1:]
    seq = [p, dp]
    while True:
        r = _rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return seq


def _variations(vals):
    signs = [v > 0 for v in vals if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(p, lo=None, hi=None):
    """Number of distinct real roots of p in (lo, hi]; whole line when bounds are None."""
    seq = sturm_sequence(p)

    def at(x):
        return _variations([_eval(q, x) for q in seq])

    def at_inf(sign):
        vals = []
        for q in seq:
            d = len(q) - 1
            vals.append(q[-1] * (sign ** d))
        return _variations(vals)

    a = at_inf(-1) if lo is None else at(Fraction(lo))
    b = at_inf(1) if hi is None else at(Fraction(hi))
    return a - b


def to_sympy(p, symbols):
    """Package Poly -> sympy expression."""
    expr = 0
    for e, c in p.terms_dict.items():
        term = sympy.Rational(int(c.numerator), int(c.denominator))
        for s, k in zip(symbols, e):
            term *= s ** k
        expr += term
    return expr


def sympy_reduced_groebner(polys, symbols, order="grevlex"):
    G = sympy.groebner(polys, *symbols, order=order)
    out = set()
    for g in G.exprs:
        P = sympy.Poly(g, *symbols)
        lc = P.coeffs(order=order)[0]
        out.add(sympy.expand(g / lc))
    return out


def sympy_det(rows, symbols):
    M = sympy.Matrix([[to_sympy(e, symbols) for e in row] for row in rows])
    return sympy.expand(M.det(method="berkowitz"))
