"""spiralinv: G2 Hermite spiral arcs as 4th-order rational curves.

Spiral (monotone-curvature) arcs matching prescribed endpoint positions,
tangents and curvatures are built by applying a Moebius transformation
fixing the chord endpoints to a specially solved parabolic Bezier arc.
"""

from .elements import (
    BIARC_TOL,
    ChordFrame,
    CurvatureElement,
    DegenerateChord,
    InvariantPair,
    NormalizedProblem,
    SolvabilityClass,
    SolvabilityTag,
    classify,
    invariants_of,
    map_back,
    normalize_to_chord,
    to_chord,
    wrap_pi,
)
from .parabola import (
    DomainError,
    NotApplicable,
    ParabolicArc,
    QuarticSolution,
    boundary_angles,
    boundary_curvatures,
    eval_parabola,
    hyperbola_residual,
    hyperbola_rho,
    is_spiral_control,
    parabola_curvature,
    q_max,
    q_of_control_point,
    q_of_xi,
    solve_control_points,
)
from .moebius import (
    InconsistentRatio,
    InvariantMismatch,
    MoebiusParams,
    PoleError,
    apply_moebius,
    eval_rational,
    expand_rational_coeffs,
    params_from_pairs,
    rational_bezier_form,
    rational_derivatives,
    transform_circle,
)
from .solver import (
    Diagnostics,
    InvalidGeometry,
    RationalSpiralArc,
    SolveOutcome,
    problem_of_arc,
    solve_chain,
    solve_g2_hermite,
    subdivide_concentric,
)
from .analysis import (
    CurvatureProfile,
    Lense,
    LenseArc,
    assert_monotone,
    contains_in_lense,
    curvature_profile,
    curvature_samples,
    find_inflection,
    lense_of,
)
from .clothoid import (
    ClothoidApproximation,
    ClothoidPoint,
    approximate_clothoid,
    approximate_from_breakpoints,
    clothoid_element,
    clothoid_point,
    clothoid_positions,
    greedy_breakpoints,
    refine_midpoints,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
