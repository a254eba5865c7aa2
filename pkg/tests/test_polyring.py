from fractions import Fraction

import pytest
import sympy
from gmpy2 import mpq

from polarroad.errors import ParseError, RingMismatchError
from polarroad.polyring import (
    Interval,
    PolyMatrix,
    Ring,
    block_order,
    grevlex,
    laplace_determinant,
    lex,
    parse_poly,
)

from oracles import sympy_det, to_sympy


def test_parse_cubic(R3):
    x1, x2, x3 = R3.gens()
    g = parse_poly("x1^3+x2^3+x3^3-x1-x2-x3-1", R3)
    assert g == x1**3 + x2**3 + x3**3 - x1 - x2 - x3 - 1
    assert len(g) == 7


def test_parse_zero_and_expansion(R3):
    x1, x2, x3 = R3.gens()
    assert R3.parse("0").is_zero()
    assert R3.parse("(x1-1)^2+x2^2+x3^2") == x1**2 - 2 * x1 + 1 + x2**2 + x3**2


def test_parse_accepts_double_star_and_rational_constants(R3):
    x1 = R3.var(0)
    assert R3.parse("x1**2 / 4 + 3/2") == x1**2 * mpq(1, 4) + mpq(3, 2)


@pytest.mark.parametrize(
    "src, line, column",
    [
        ("x1 x2", 1, 4),
        ("2x1", 1, 2),
        ("x4 + 1", 1, 1),
        ("x1 +", 1, 5),
        ("x1/x2", 1, 3),
        ("x1/0", 1, 3),
        ("x1^2^3", 1, 5),
        ("x1 +\n x2 + $", 2, 7),
    ],
)
def test_parse_errors_carry_position(R3, src, line, column):
    with pytest.raises(ParseError) as info:
        R3.parse(src)
    assert (info.value.line, info.value.column) == (line, column)


def test_exponent_overflow_rejected(R3):
    with pytest.raises(ParseError, match="exceeds"):
        R3.parse("x1^100000")


def test_reserved_names_rejected():
    with pytest.raises(ValueError):
        Ring(["x", "y1"])
    with pytest.raises(ValueError):
        Ring(["t", "x"])
    assert Ring(["y1"], allow_reserved=True).nvars == 1


def test_arithmetic_identities(R3):
    x1, x2, _ = R3.gens()
    assert (x1 + 1) * (x1 - 1) == x1**2 - 1
    assert (x1 - 1) ** 2 == x1**2 - 2 * x1 + 1
    p = 3 * x1 * x2 - x2 + 7
    assert (p + (-p)).is_zero()
    assert p - p == 0


def test_ring_mismatch(R3):
    other = Ring(["a", "b"])
    with pytest.raises(RingMismatchError):
        R3.var(0) + other.var(0)


def test_derivatives(cubic):
    R = cubic["ring"]
    x1, _, _ = R.gens()
    assert cubic["g"].diff(0) == 3 * x1**2 - 1
    assert R.const(5).diff(2).is_zero()
    assert cubic["phi1"].diff(0) == 2 * x1 - 2


def test_evaluate_rational_and_interval(R3, cubic):
    x1, x2, x3 = R3.gens()
    assert (x1**2 + x2**2 + x3**2 - 1).evaluate([1, 0, 0]) == 0
    assert cubic["g"].evaluate([1, 1, 1]) == -1
    enc = (x1**2).evaluate([Interval(-1, 2), Interval(0), Interval(0)])
    assert enc.contains(0) and enc.contains(4)
    with pytest.raises(ValueError):
        x1.evaluate([1, 2])


def test_interval_enclosure_is_sound(R3):
    x1, x2, _ = R3.gens()
    p = x1**3 - 2 * x1 * x2 + x2**2 - mpq(1, 3)
    box = [Interval(mpq(-1, 2), mpq(3, 4)), Interval(mpq(1, 5), 1), Interval(0)]
    enc = p.evaluate(box)
    for a in range(6):
        for b in range(6):
            pt = [box[0].lo + box[0].width * a / 5, box[1].lo + box[1].width * b / 5, 0]
            assert enc.contains(p.evaluate(pt))


def test_canonical_string_roundtrip(R3, cubic):
    for p in [cubic["g"], cubic["phi1"], cubic["D"], R3.parse("-1/2*x1*x3^2 + 5")]:
        assert R3.parse(str(p)) == p


def test_monomial_orders():
    assert lex.key((1, 0)) > lex.key((0, 5))
    assert grevlex.key((0, 3)) > grevlex.key((2, 0))
    # total degree ties: grevlex prefers a smaller last exponent
    assert grevlex.key((1, 1, 0)) > grevlex.key((1, 0, 1))
    blk = block_order([0], [1, 2])
    assert blk.key((1, 0, 0)) > blk.key((0, 5, 5))


def test_determinant_examples(R3):
    x1, x2, x3 = R3.gens()
    M = PolyMatrix.from_rows(R3, [[2 * x1, 2 * x2, 2 * x3], [1, 0, 0], [0, 1, 0]])
    assert M.determinant() == 2 * x3
    assert PolyMatrix.identity(R3, 4).determinant() == 1
    with pytest.raises(ValueError):
        PolyMatrix.from_rows(R3, [[x1, x2]]).determinant()


def test_polar_determinant_against_printed_generator(cubic):
    R = cubic["ring"]
    g, phi1, D = cubic["g"], cubic["phi1"], cubic["D"]
    grad = lambda p: [p.diff(k) for k in range(3)]
    rows = [grad(g), grad(phi1), [0, 1, 0]]
    det = PolyMatrix.from_rows(R, rows).determinant()
    assert det == -2 * D
    # independent oracle
    s = sympy.symbols("x1 x2 x3")
    assert sympy.expand(to_sympy(det, s) - sympy_det(PolyMatrix.from_rows(R, rows).tolist(), s)) == 0


def test_determinant_methods_agree_with_leibniz(R3):
    x1, x2, x3 = R3.gens()
    rows = [[x1 + 1, x2, 0, 3], [x3, x1 * x2, 1, x1], [2, x3 - x1, x2, 0], [x1, 1, x3, x2**2]]
    M = PolyMatrix.from_rows(R3, rows)
    ref = laplace_determinant(R3, M.tolist())
    assert M.determinant("bareiss") == ref
    assert M.determinant("cofactor") == ref


def test_minors_enumeration(R3):
    x1, x2, x3 = R3.gens()
    M = PolyMatrix.from_rows(R3, [[2 * x1, 2 * x2, 2 * x3], [1, 0, 0]])
    minors = set(M.minors(2))
    assert minors <= {-2 * x2, -2 * x3, 2 * x2, 2 * x3, R3.zero()}
    assert len(list(M.minors(2))) == 3


def test_interval_arithmetic():
    a = Interval(-1, 2)
    assert a**2 == Interval(0, 4)
    assert (a * a).contains(-2)
    assert (a + 1) == Interval(0, 3)
    assert Interval(Fraction(1, 3)).width == 0
    r = Interval(mpq(1, 3), mpq(2, 3)).round_out(8)
    assert r.lo <= mpq(1, 3) and r.hi >= mpq(2, 3)
