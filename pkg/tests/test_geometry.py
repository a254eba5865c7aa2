import pytest
from gmpy2 import mpq

from polarroad.geometry import (
    IDEAL_CAVEAT,
    FiberSpec,
    PolyMap,
    VarietySpec,
    build_phi,
    critical_ideal,
    fiber_ideal,
    is_squared_distance,
    jacobian,
    minors_ideal,
    singular_ideal,
)
from polarroad.groebner import Ideal, ideal_membership, ideals_equal, krull_dimension
from polarroad.polyring import PolyMatrix, Ring
from polarroad.zerodim import count_solutions, solution_set


@pytest.fixture(scope="module")
def sphere(R3):
    x1, x2, x3 = R3.gens()
    return VarietySpec(R3, [x1**2 + x2**2 + x3**2 - 1], 2)


def test_jacobian_examples(R3, sphere, cubic):
    x1, x2, x3 = R3.gens()
    assert jacobian(sphere.generators, R3).tolist() == [[2 * x1, 2 * x2, 2 * x3]]
    assert jacobian([cubic["g"]], R3).tolist() == [[3 * x1**2 - 1, 3 * x2**2 - 1, 3 * x3**2 - 1]]
    J = jacobian([], R3)
    assert (J.rows, J.cols) == (0, 3)


def test_minors_ideal(R3):
    x1, x2, x3 = R3.gens()
    M = PolyMatrix.from_rows(R3, [[2 * x1, 2 * x2, 2 * x3], [1, 0, 0]])
    assert ideals_equal(minors_ideal(M, 2), Ideal(R3, [x2, x3]))
    sq = PolyMatrix.from_rows(R3, [[x1, x2], [x3, 1]])
    assert minors_ideal(sq, 2).generators in ((x1 - x2 * x3,), (x2 * x3 - x1,))
    for m in minors_ideal(M, 2).generators:
        assert ideal_membership(m, minors_ideal(M, 1))
    with pytest.raises(ValueError):
        minors_ideal(M, 3)


def test_singular_loci(R3, sphere, cubic):
    assert singular_ideal(sphere).is_unit()
    assert count_solutions(Ideal(R3, [R3.one()])) == (0, 0)
    assert singular_ideal(cubic["V"]).is_unit()
    R2 = Ring(["x1", "x2"])
    a, b = R2.gens()
    nodal = VarietySpec(R2, [b**2 - a**2 * (a + 1)], 1)
    S = singular_ideal(nodal)
    sol = solution_set(S)
    assert sol.distinct_count == 1
    assert all(iv.contains(0) for iv in sol.real_boxes[0].coordinates)
    with pytest.raises(ValueError):
        singular_ideal(VarietySpec(R3, [R3.var(0)], 1))


def test_sphere_first_coordinate_critical_points(R3, sphere):
    x1, x2, x3 = R3.gens()
    C = critical_ideal(sphere, PolyMap((x1, x2, x3)), 1)
    assert ideals_equal(C.K_ideal, Ideal(R3, [x1**2 + x2**2 + x3**2 - 1, x2, x3]))
    sol = solution_set(C.K_ideal)
    assert sol.real_count == 2
    for bx in sol.real_boxes:
        X1, X2, X3 = bx.coordinates
        assert X2.contains(0) and X3.contains(0)
        assert (X1 * X1).contains(1)


def test_cubic_polar_curve_interpretations(cubic):
    R = cubic["ring"]
    x1, x2, x3 = R.gens()
    printed = Ideal(R, [cubic["g"], cubic["D"]])
    listed = critical_ideal(cubic["V"], cubic["phi_listed"], 2)
    swapped = critical_ideal(cubic["V"], cubic["phi_printed"], 2)
    assert ideals_equal(swapped.K_ideal, printed)
    assert not ideals_equal(listed.K_ideal, printed)
    # the listed order gives the determinant with the e1 row
    assert ideals_equal(listed.K_ideal, Ideal(R, [cubic["g"], (x2 - x3) * (3 * x2 * x3 + 1)]))
    assert len(swapped.K_ideal.generators) == 2
    assert swapped.W_ideal is swapped.K_ideal


def test_cylinder_critical_circle(R3):
    x1, x2, x3 = R3.gens()
    cyl = VarietySpec(R3, [x1**2 + x2**2 - 4], 2)
    C = critical_ideal(cyl, PolyMap((x1**2 + x2**2 + x3**2,)), 1)
    assert ideal_membership(x3, C.W_ideal) or ideal_membership(x3**2, C.W_ideal)
    assert krull_dimension(C.W_ideal) == 1


def test_critical_nesting(cubic):
    phi = cubic["phi_printed"]
    V = cubic["V"]
    K1 = critical_ideal(V, phi, 1).K_ideal
    K2 = critical_ideal(V, phi, 2).K_ideal
    for g in K2.generators:
        assert ideal_membership(g, K1)


def test_build_phi(R3):
    x1, x2, x3 = R3.gens()
    phi = build_phi(R3, [1, 0, 0], forms="coordinates")
    assert phi.components == ((x1 - 1) ** 2 + x2**2 + x3**2, x1, x2)
    assert build_phi(R3, [0, 0, 0], seed=3)[0] == x1**2 + x2**2 + x3**2
    a = build_phi(R3, [1, 2, 3], seed=42)
    b = build_phi(R3, [1, 2, 3], seed=42)
    assert a == b
    assert all(c.degree() == 1 for c in a.components[1:])
    with pytest.raises(ValueError):
        build_phi(R3, [1, 2, 3])


def test_is_squared_distance(R3):
    x1, x2, x3 = R3.gens()
    assert is_squared_distance((x1 - 1) ** 2 + x2**2 + (x3 + mpq(1, 2)) ** 2) == [1, 0, mpq(-1, 2)]
    assert is_squared_distance(x1) is None
    assert is_squared_distance(-(x1**2 + x2**2 + x3**2)) is None
    assert is_squared_distance(x1**2 + x2**2 + x3**2 + 1) is None


def test_fiber_ideals(R3, sphere, cubic):
    x1 = R3.var(0)
    F = fiber_ideal(FiberSpec(cubic["V"], cubic["phi_printed"], 1, [4]))
    assert F.generators == (cubic["g"], cubic["phi1"] - 4)
    assert krull_dimension(F) == 1
    G = fiber_ideal(FiberSpec(sphere, PolyMap((x1,)), 1, [2]))
    assert G.generators[-1] == x1 - 2
    assert krull_dimension(G) == 1
    H = fiber_ideal(FiberSpec(sphere, PolyMap((x1,)), 0, []))
    assert H.generators == sphere.generators
    with pytest.raises(ValueError):
        FiberSpec(sphere, PolyMap((x1,)), 1, [1, 2])


def test_redundant_generators_record_caveat(R3):
    x1, x2, x3 = R3.gens()
    s = x1**2 + x2**2 + x3**2 - 1
    V = VarietySpec(R3, [s, 2 * s], 2)
    C = critical_ideal(V, PolyMap((x1,)), 1)
    assert IDEAL_CAVEAT in C.notes
    assert solution_set(C.K_ideal).real_count == 2
