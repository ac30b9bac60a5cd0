import math

import numpy as np
import pytest

from conftest import chord_elements, random_solvable_problems
from spiralinv import (
    ChordFrame,
    CurvatureElement,
    CurvatureProfile,
    MoebiusParams,
    NormalizedProblem,
    ParabolicArc,
    RationalSpiralArc,
    assert_monotone,
    boundary_curvatures,
    contains_in_lense,
    curvature_profile,
    curvature_samples,
    expand_rational_coeffs,
    find_inflection,
    lense_of,
    solve_g2_hermite,
    transform_circle,
)
from spiralinv.quadrature import adaptive_quadrature_rel


def identity_curve(p, q):
    """A parabolic arc wrapped as a solution curve with the identity transform."""
    arc = ParabolicArc(p, q)
    params = MoebiusParams.identity()
    return RationalSpiralArc(
        frame=ChordFrame(1.0, 0.0, (0.0, 0.0)),
        arc=arc,
        params=params,
        coeffs=expand_rational_coeffs(arc, params),
        solution_index=1,
    )


def uturn_outcome():
    return solve_g2_hermite(
        CurvatureElement(-1, 0, math.radians(-180), 2.5),
        CurvatureElement(1, 0, math.radians(120), 0.5),
    )


class TestProfile:
    def test_identity_spiral_arc_endpoints(self):
        curve = identity_curve(-0.88447, -0.30325)
        prof = curvature_profile(curve, 64)
        a, b = boundary_curvatures(curve.arc)
        assert prof.k[0] == pytest.approx(8.873814578472226, abs=1e-10)
        assert prof.k[0] == pytest.approx(a, abs=1e-12)
        assert prof.k[-1] == pytest.approx(b, abs=1e-12)
        assert prof.monotone_direction == -1
        assert prof.s[0] == 0.0
        assert np.all(np.diff(prof.s) > 0)

    def test_interior_against_finite_differences(self):
        curve = uturn_outcome().solutions[1]
        h = 1e-5
        for t in (0.2, 0.5, 0.8):
            pts = [np.array(curve.point(t + d)) for d in (-h, 0.0, h)]
            xd, yd = (pts[2] - pts[0]) / (2 * h)
            xdd, ydd = (pts[2] - 2 * pts[1] + pts[0]) / h**2
            k_fd = (ydd * xd - xdd * yd) / (xd * xd + yd * yd) ** 1.5
            assert float(curve.curvature(t)) == pytest.approx(k_fd, rel=1e-5)

    def test_endpoints_match_transformed_circles(self):
        out = uturn_outcome()
        for sol in out.solutions:
            src = sol.arc
            alpha = math.atan2(src.q, 1 + src.p)
            a, _ = boundary_curvatures(src)
            image = transform_circle(CurvatureElement(-1.0, 0.0, alpha, a), sol.params)
            prof = curvature_profile(sol, 16)
            assert prof.k[0] == pytest.approx(image.k / sol.frame.c, rel=1e-9)

    def test_arclength_stable_under_refinement(self):
        curve = uturn_outcome().solutions[0]
        s1 = curvature_profile(curve, 200).s[-1]
        s2 = curvature_profile(curve, 400).s[-1]
        assert abs(s2 - s1) <= 1e-9 * s1

    def test_arclength_additivity(self):
        curve = uturn_outcome().solutions[1]
        prof = curvature_profile(curve, 101)
        i, j = 20, 77
        direct = adaptive_quadrature_rel(
            lambda u: np.asarray(curve.speed(u)), prof.t[i], prof.t[j], rel_tol=1e-12
        )
        assert prof.s[j] - prof.s[i] == pytest.approx(direct, rel=1e-10)

    def test_sample_count_validated(self):
        with pytest.raises(ValueError):
            curvature_samples(uturn_outcome().solutions[0], 1)


class TestMonotone:
    def test_strictly_increasing(self):
        prof = CurvatureProfile(np.linspace(0, 1, 5), np.linspace(0, 2, 5), np.array([0.0, 1.0, 2.0, 3.0, 4.0]), None)
        assert assert_monotone(prof, 0.0)

    def test_interior_extremum_rejected(self):
        prof = CurvatureProfile(np.linspace(0, 1, 5), np.linspace(0, 2, 5), np.array([0.0, 1.0, 2.0, 1.5, 3.0]), None)
        assert not assert_monotone(prof, 1e-6)

    def test_edge_slack_allowed(self):
        k = np.array([1.0, 1.0 - 1e-15, 2.0, 3.0, 3.0 + 1e-15])
        prof = CurvatureProfile(np.linspace(0, 1, 5), np.linspace(0, 2, 5), k, None)
        assert assert_monotone(prof, 1e-12)
        assert not assert_monotone(prof, 1e-16)

    def test_solved_curves_monotone(self):
        for problem in random_solvable_problems(50, seed=51):
            out = solve_g2_hermite(*chord_elements(problem))
            for sol in out.solutions:
                _, k = curvature_samples(sol, 500)
                prof = CurvatureProfile(np.linspace(0, 1, 500), np.zeros(500), k, None)
                assert assert_monotone(prof, 1e-12 * float(np.max(np.abs(k))))


class TestInflection:
    def test_inflectional_solutions(self):
        out = solve_g2_hermite(
            CurvatureElement(-1, 0, math.radians(-40), 3.0),
            CurvatureElement(1, 0, math.radians(-40), -2.0),
        )
        for sol in out.solutions:
            t_star = find_inflection(sol)
            assert t_star is not None and 0.0 < t_star < 1.0
            assert abs(float(sol.curvature(t_star))) <= 1e-10

    def test_same_sign_absent(self):
        out = uturn_outcome()
        assert find_inflection(out.solutions[0]) is None
        assert find_inflection(out.solutions[1]) is None

    def test_zero_start_curvature(self):
        out = solve_g2_hermite(
            CurvatureElement(-1, 0, 2.0, 0.0), CurvatureElement(1, 0, -2.3, -1.0)
        )
        assert out.is_solvable
        for sol in out.solutions:
            assert find_inflection(sol) == 0.0


class TestLense:
    def test_degenerate_chord_lense(self):
        lense = lense_of(NormalizedProblem(0.0, 0.0, 0.0, 0.0))
        assert lense.arc_start.is_line and lense.arc_end.is_line
        on_chord = np.column_stack((np.linspace(-1, 1, 11), np.zeros(11)))
        assert lense.contains_points(on_chord)
        assert not lense.contains_points(np.array([[0.0, 1e-6]]))

    def test_tolerance_boundary(self):
        lense = lense_of(NormalizedProblem(0.0, 0.0, 0.0, 0.0))
        assert lense.contains_points(np.array([[0.0, 0.5e-9]]))
        assert not lense.contains_points(np.array([[0.0, 2e-9]]))

    def test_unit_circle_lense(self):
        # both boundary tangents vertical: the lense is the unit disk
        lense = lense_of(NormalizedProblem(math.pi / 2, math.pi / 2, -0.2, 0.2))
        assert lense.sigma == pytest.approx(math.pi, abs=1e-15)
        rng = np.random.default_rng(52)
        pts = rng.uniform(-0.999, 0.999, size=(200, 2))
        inside = pts[np.hypot(pts[:, 0], pts[:, 1]) < 0.999]
        assert lense.contains_points(inside)
        assert not lense.contains_points(np.array([[1.2, 0.4]]))
        assert not lense.contains_points(np.array([[0.0, -1.0001]]))

    def test_uturn_solutions_inside(self):
        out = uturn_outcome()
        lense = lense_of(out.diagnostics.problem)
        assert lense.sigma == pytest.approx(math.radians(-60), abs=1e-12)
        for sol in out.solutions:
            assert contains_in_lense(sol, lense)

    def test_arc_points_on_support(self):
        problem = NormalizedProblem(math.radians(45), math.radians(-15), -1.98, -0.10)
        lense = lense_of(problem)
        for arc in (lense.arc_start, lense.arc_end):
            pts = arc.points(33)
            assert pts[0] == pytest.approx((-1.0, 0.0), abs=1e-12)
            assert pts[-1] == pytest.approx((1.0, 0.0), abs=1e-12)
            assert np.max(arc.distance(pts)) <= 1e-12
            # boundary arc points are members of the lense
            assert lense.contains_points(pts)

    def test_random_solutions_inside(self):
        for problem in random_solvable_problems(100, seed=53):
            out = solve_g2_hermite(*chord_elements(problem))
            lense = lense_of(problem)
            for sol in out.solutions:
                assert contains_in_lense(sol, lense)
