import pytest
from hypothesis import settings

from polarroad.geometry import PolyMap, VarietySpec
from polarroad.polyring import Ring

settings.register_profile("default", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("default")


@pytest.fixture(scope="session")
def R3():
    return Ring(["x1", "x2", "x3"])


@pytest.fixture(scope="session")
def cubic(R3):
    """The cubic surface x1^3 + x2^3 + x3^3 - x1 - x2 - x3 = 1 with its distance map."""
    x1, x2, x3 = R3.gens()
    g = x1**3 + x2**3 + x3**3 - x1 - x2 - x3 - 1
    phi1 = (x1 - 1) ** 2 + x2**2 + x3**2
    return {
        "ring": R3,
        "g": g,
        "V": VarietySpec(R3, [g], 2),
        "phi1": phi1,
        # the listed forms (x1, x2) and the order whose polar curve matches the printed generator
        "phi_listed": PolyMap((phi1, x1, x2)),
        "phi_printed": PolyMap((phi1, x2, x1)),
        "D": (3 * x1 * x3 + 1) * (x1 - x3) + 3 * x3**2 - 1,
    }


@pytest.fixture(scope="session")
def cubic_bundle(cubic):
    from polarroad.roadmap import assemble_roadmap

    return assemble_roadmap(cubic["V"], cubic["phi_printed"], 2)
