"""Exact polar-variety roadmaps for real algebraic sets, with numerical connectivity checks."""

__version__ = "0.1.0"

from .errors import (
    NotZeroDimensionalError,
    ParseError,
    PolarRoadError,
    PositiveDimensionalError,
    ResourceLimitError,
    RingMismatchError,
    UnsupportedShapeError,
)
from .polyring import Interval, Poly, PolyMatrix, Ring, grevlex, lex, block_order, parse_poly, ring
from .groebner import (
    Budget,
    GroebnerBasis,
    Ideal,
    elimination_ideal,
    groebner_basis,
    ideal_intersection,
    ideal_membership,
    is_radical_member,
    krull_dimension,
    normal_form,
    saturation,
    saturation_by_ideal,
)
from .zerodim import (
    count_real_solutions,
    count_solutions,
    hermite_form,
    multiplication_matrix,
    solution_set,
    solve_real,
)
from .geometry import (
    FiberSpec,
    PolyMap,
    VarietySpec,
    build_phi,
    critical_ideal,
    fiber_ideal,
    jacobian,
    minors_ideal,
    singular_ideal,
)
from .roadmap import (
    assemble_roadmap,
    check_assumption_A,
    check_assumption_B,
    check_assumption_C,
    check_assumption_P,
    compute_sample_set,
    image_ideal,
)
from .connectivity import (
    check_bounded_component_critical,
    epsilon_components,
    sample_real_points,
    slice_trace_curve,
    verify_rm,
)
