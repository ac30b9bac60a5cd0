"""Cornu-spiral benchmark: sample G2 data from a clothoid, solve, measure.

Convention: unit flatness, k(s) = s and tau(s) = s^2/2 (any scaling is
absorbed by the solver's similarity equivariance).  Positions come from
adaptive quadrature of (cos(u^2/2), sin(u^2/2)).

The approximation pipeline mirrors the long-arc subdivision experiment:
greedy forward subdivision extends every span as far as the solvability
classifier allows (binary search, shrunk by a margin factor), each span is
solved, and the two solutions are compared against the clothoid by matching
arc-length fractions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .elements import CurvatureElement, normalize_to_chord, classify
from .quadrature import adaptive_quadrature, cumulative_quadrature
from .solver import SolveOutcome, solve_g2_hermite

_QUAD_TOL = 1e-12


@dataclass(frozen=True)
class ClothoidPoint:
    s: float
    x: float
    y: float
    tau: float
    k: float


def _cos_integrand(u):
    return np.cos(0.5 * u * u)


def _sin_integrand(u):
    return np.sin(0.5 * u * u)


def clothoid_point(s: float) -> ClothoidPoint:
    x = adaptive_quadrature(_cos_integrand, 0.0, s, abs_tol=_QUAD_TOL)
    y = adaptive_quadrature(_sin_integrand, 0.0, s, abs_tol=_QUAD_TOL)
    return ClothoidPoint(s=s, x=x, y=y, tau=0.5 * s * s, k=s)


def clothoid_element(s: float) -> CurvatureElement:
    """The clothoid's curvature element at arc length s."""
    pt = clothoid_point(s)
    return CurvatureElement(pt.x, pt.y, pt.tau, pt.k)


def clothoid_positions(svals: Sequence[float]) -> np.ndarray:
    """Positions at an increasing grid of arc lengths, integrated cumulatively."""
    svals = np.asarray(svals, dtype=float)
    if svals.size == 0:
        return np.empty((0, 2))
    base = clothoid_point(float(svals[0]))
    if svals.size == 1:
        return np.array([[base.x, base.y]])
    xs = base.x + cumulative_quadrature(_cos_integrand, svals, rel_tol=1e-12)
    ys = base.y + cumulative_quadrature(_sin_integrand, svals, rel_tol=1e-12)
    return np.column_stack((xs, ys))


@dataclass(frozen=True)
class SpanDeviation:
    s0: float
    s1: float
    per_solution: Tuple[float, ...]      # max Euclidean deviation, arc-length matched

    @property
    def max_deviation(self) -> float:
        return max(self.per_solution)


@dataclass(frozen=True)
class ClothoidApproximation:
    breakpoints: List[float]
    outcomes: List[SolveOutcome]
    deviations: List[SpanDeviation]
    curvature_table: np.ndarray          # rows (s, k_clothoid, k_solution1, k_solution2)

    @property
    def max_deviation(self) -> float:
        return max(d.max_deviation for d in self.deviations)

    @property
    def classifications(self) -> List[str]:
        return [o.classification.tag.value for o in self.outcomes]


class _ElementCache:
    def __init__(self):
        self._store = {}

    def __call__(self, s: float) -> CurvatureElement:
        key = float(s)
        if key not in self._store:
            self._store[key] = clothoid_element(key)
        return self._store[key]


def _span_solvable(el, s0: float, s1: float) -> bool:
    _, problem = normalize_to_chord(el(s0), el(s1))
    return classify(problem).is_solvable


_SCAN_STEP = 0.0625


def greedy_breakpoints(s_start: float, s_end: float, margin: float = 0.99,
                       elements: Optional[_ElementCache] = None) -> List[float]:
    """Forward subdivision: each span reaches margin * (largest solvable length).

    "Largest" means up to the *first* classification failure: solvability of
    the endpoint data is not monotone in span length (a span winding past a
    full turn can re-enter an admissible configuration whose short solution
    no longer resembles the clothoid piece), so the span end is found by a
    forward scan followed by bisection inside the first failing bracket.
    """
    if not (s_start < s_end):
        raise ValueError("need s_start < s_end")
    if not (0.0 < margin <= 1.0):
        raise ValueError("margin must be in (0, 1]")
    el = elements or _ElementCache()
    bps = [float(s_start)]
    while bps[-1] < s_end:
        s0 = bps[-1]
        # scan forward to bracket the first failure
        lo = 0.0
        fail = None
        x = s0 + _SCAN_STEP
        while x < s_end - 1e-15:
            if _span_solvable(el, s0, x):
                lo = x - s0
                x += _SCAN_STEP
            else:
                fail = x - s0
                break
        if fail is None:
            if _span_solvable(el, s0, s_end):
                bps.append(float(s_end))
                break
            fail = s_end - s0
        if lo == 0.0:
            probe = fail
            for _ in range(60):
                probe *= 0.5
                if _span_solvable(el, s0, s0 + probe):
                    lo = probe
                    break
            if lo == 0.0:
                raise ArithmeticError(f"no solvable span found forward of s = {s0}")
        hi = fail
        for _ in range(50):
            mid = 0.5 * (lo + hi)
            if _span_solvable(el, s0, s0 + mid):
                lo = mid
            else:
                hi = mid
        step = margin * lo
        # defensive: the margin point must itself be solvable
        while not _span_solvable(el, s0, s0 + step):
            step *= 0.5
            if step < 1e-9:
                raise ArithmeticError(f"span collapse at s = {s0}")
        bps.append(s0 + step)
    return bps


def refine_midpoints(breakpoints: Sequence[float]) -> List[float]:
    """Insert the arc-length midpoint into every span."""
    out: List[float] = []
    for a, b in zip(breakpoints[:-1], breakpoints[1:]):
        out.extend((float(a), 0.5 * (float(a) + float(b))))
    out.append(float(breakpoints[-1]))
    return out


def approximate_from_breakpoints(breakpoints: Sequence[float], samples_per_span: int = 1000,
                                 elements: Optional[_ElementCache] = None) -> ClothoidApproximation:
    """Solve every span of a fixed subdivision and measure deviations."""
    el = elements or _ElementCache()
    bps = [float(s) for s in breakpoints]
    outcomes = [solve_g2_hermite(el(a), el(b)) for a, b in zip(bps[:-1], bps[1:])]
    deviations = []
    table_rows = []
    for (s0, s1), outcome in zip(zip(bps[:-1], bps[1:]), outcomes):
        devs = []
        s_grid = np.linspace(s0, s1, samples_per_span)
        ref = clothoid_positions(s_grid)
        k_cols = []
        for sol in outcome.solutions:
            ts = np.linspace(0.0, 1.0, samples_per_span)
            s_along = cumulative_quadrature(lambda u: np.asarray(sol.speed(u)), ts, rel_tol=1e-10)
            frac = s_along / s_along[-1]
            # positions at arc-length-matched clothoid parameters
            s_match = s0 + frac * (s1 - s0)
            x, y = sol.point(ts)
            ref_match_x = np.interp(s_match, s_grid, ref[:, 0])
            ref_match_y = np.interp(s_match, s_grid, ref[:, 1])
            devs.append(float(np.max(np.hypot(x - ref_match_x, y - ref_match_y))))
            # curvature resampled onto the common arc-length grid
            k_samples = np.asarray(sol.curvature(ts), dtype=float)
            k_cols.append(np.interp((s_grid - s0) / (s1 - s0), frac, k_samples))
        if not devs:  # unsolvable span: poison the report so callers notice
            devs = [math.inf]
        deviations.append(SpanDeviation(s0=s0, s1=s1, per_solution=tuple(devs)))
        if len(k_cols) == 2:
            rows = np.column_stack((s_grid, s_grid, k_cols[0], k_cols[1]))
            table_rows.append(rows)
    table = np.vstack(table_rows) if table_rows else np.empty((0, 4))
    return ClothoidApproximation(bps, outcomes, deviations, table)


def approximate_clothoid(s_start: float, s_end: float, margin: float = 0.99,
                         samples_per_span: int = 1000) -> ClothoidApproximation:
    """Greedy subdivision of [s_start, s_end] followed by per-span solves."""
    el = _ElementCache()
    bps = greedy_breakpoints(s_start, s_end, margin=margin, elements=el)
    return approximate_from_breakpoints(bps, samples_per_span=samples_per_span, elements=el)
