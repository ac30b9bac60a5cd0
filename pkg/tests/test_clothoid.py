import math

import numpy as np
import pytest

from spiralinv import (
    approximate_from_breakpoints,
    clothoid_element,
    clothoid_point,
    clothoid_positions,
    greedy_breakpoints,
    refine_midpoints,
    solve_chain,
)

FROZEN_S1 = (0.9752876882003445, 0.16371404737570028)  # quadrature + series oracle


def scipy_clothoid(s):
    """Independent special-function oracle for the unit-flatness clothoid."""
    from scipy.special import fresnel

    sv, cv = fresnel(s / math.sqrt(math.pi))
    return math.sqrt(math.pi) * cv, math.sqrt(math.pi) * sv


class TestElement:
    def test_origin(self):
        e = clothoid_element(0.0)
        assert (e.x, e.y, e.tau, e.k) == (0.0, 0.0, 0.0, 0.0)

    def test_unit_arclength_value(self):
        e = clothoid_element(1.0)
        assert (e.x, e.y) == pytest.approx(FROZEN_S1, abs=1e-12)
        assert (e.x, e.y) == pytest.approx(scipy_clothoid(1.0), abs=1e-12)
        assert e.tau == 0.5
        assert e.k == 1.0
        # leading Taylor terms; alternating series, error below the next term
        x_taylor = 1.0 - 1.0 / 40.0 + 1.0 / 3456.0
        y_taylor = 1.0 / 6.0 - 1.0 / 336.0 + 1.0 / 42240.0
        assert e.x == pytest.approx(x_taylor, abs=1.0 / 599040.0)
        assert e.y == pytest.approx(y_taylor, abs=1.0 / 9676800.0)

    def test_against_special_function_oracle(self):
        for s in (-2.5, -0.7, 0.3, 1.7, 3.1, 5.9):
            pt = clothoid_point(s)
            assert (pt.x, pt.y) == pytest.approx(scipy_clothoid(s), abs=1e-11)

    def test_antisymmetry(self):
        for s in (0.4, 1.3, 2.6):
            plus = clothoid_element(s)
            minus = clothoid_element(-s)
            assert (minus.x, minus.y) == pytest.approx((-plus.x, -plus.y), abs=1e-12)
            assert minus.k == -plus.k
            assert minus.tau == plus.tau

    def test_positions_vectorized(self):
        svals = np.linspace(0.3, 2.7, 17)
        pts = clothoid_positions(svals)
        for s, (x, y) in zip(svals, pts):
            ref = clothoid_point(float(s))
            assert (x, y) == pytest.approx((ref.x, ref.y), abs=1e-11)


class TestGreedy:
    def test_benchmark_range_span_count(self):
        bps = greedy_breakpoints(0.0, 6.0, margin=0.99)
        assert 2 <= len(bps) - 1 <= 10
        assert bps[0] == 0.0 and bps[-1] == 6.0
        assert all(b1 > b0 for b0, b1 in zip(bps[:-1], bps[1:]))

    def test_all_spans_solvable_and_interpolating(self):
        approx = approximate_from_breakpoints(
            greedy_breakpoints(0.0, 3.5, margin=0.99), samples_per_span=128
        )
        assert set(approx.classifications) == {"Solvable"}
        for (s0, s1), outcome in zip(
            zip(approx.breakpoints[:-1], approx.breakpoints[1:]), approx.outcomes
        ):
            for sol in outcome.solutions:
                # breakpoint curvatures reproduce k = s
                assert float(sol.curvature(0.0)) == pytest.approx(s0, abs=1e-9 * max(1.0, s0))
                assert float(sol.curvature(1.0)) == pytest.approx(s1, abs=1e-9 * max(1.0, s1))
                # and the full G2 data matches the clothoid at both ends
                for t, s in ((0.0, s0), (1.0, s1)):
                    ref = clothoid_point(s)
                    x, y = sol.point(t)
                    assert math.hypot(x - ref.x, y - ref.y) <= 1e-9
                    assert float(sol.tangent_angle(t)) == pytest.approx(
                        math.atan2(math.sin(ref.tau), math.cos(ref.tau)), abs=1e-9
                    )

    def test_margin_validation(self):
        with pytest.raises(ValueError):
            greedy_breakpoints(0.0, 1.0, margin=0.0)
        with pytest.raises(ValueError):
            greedy_breakpoints(2.0, 1.0)

    def test_piecewise_monotone_increasing(self):
        approx = approximate_from_breakpoints(
            greedy_breakpoints(0.0, 3.0, margin=0.99), samples_per_span=256
        )
        for outcome in approx.outcomes:
            for sol in outcome.solutions:
                k = sol.curvature(np.linspace(0.0, 1.0, 256))
                assert np.all(np.diff(k) > 0)


class TestDeviation:
    def test_margin_halving_reduces_deviation(self):
        coarse = approximate_from_breakpoints(
            greedy_breakpoints(0.0, 3.0, margin=0.99), samples_per_span=256
        )
        dense = approximate_from_breakpoints(
            greedy_breakpoints(0.0, 3.0, margin=0.495), samples_per_span=256
        )
        assert len(dense.breakpoints) > len(coarse.breakpoints)
        assert dense.max_deviation < coarse.max_deviation

    def test_midpoint_refinement_monotone(self):
        bps = greedy_breakpoints(0.0, 3.0, margin=0.99)
        levels = [bps]
        for _ in range(2):
            levels.append(refine_midpoints(levels[-1]))
        devs = [
            approximate_from_breakpoints(level, samples_per_span=256).max_deviation
            for level in levels
        ]
        assert devs[1] < devs[0]
        assert devs[2] < devs[1]

    def test_curvature_table_matches_line(self):
        approx = approximate_from_breakpoints(
            greedy_breakpoints(0.0, 2.5, margin=0.9), samples_per_span=64
        )
        table = approx.curvature_table
        assert table.shape[1] == 4
        # the reference column is exactly k = s
        assert np.array_equal(table[:, 0], table[:, 1])
        # approximating curvatures track it closely away from nothing special
        assert np.max(np.abs(table[:, 2] - table[:, 1])) < 0.2


class TestChainOverClothoid:
    def test_chain_of_sampled_elements(self):
        bps = greedy_breakpoints(0.0, 6.0, margin=0.99)
        elements = [clothoid_element(s) for s in bps]
        outcomes = solve_chain(elements)
        assert len(outcomes) == len(bps) - 1
        assert all(o.is_solvable for o in outcomes)
        # interior nodes share curvature: the chain is curvature-continuous
        for left, right in zip(outcomes[:-1], outcomes[1:]):
            assert abs(
                float(left.solutions[0].curvature(1.0)) - float(right.solutions[0].curvature(0.0))
            ) <= 1e-9 * max(1.0, bps[-1])
