"""End-to-end G2 Hermite spiral solver.

The pipeline: normalize the problem onto the chord [-1, 1], classify
solvability, solve for the two spiral parabolic source arcs with the same
invariants, compute the Moebius transform carrying each source's boundary
circles onto the problem's, and map the composite rational curve back to the
original frame.  Both solutions are always returned; no fairness-based
selection is made (a curvature-rate hint is reported in the diagnostics but
never used to drop a solution).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .elements import (
    ChordFrame,
    CurvatureElement,
    InvariantPair,
    NormalizedProblem,
    SolvabilityClass,
    SolvabilityTag,
    classify,
    map_back,
    normalize_to_chord,
    wrap_pi,
)
from .moebius import MoebiusParams, expand_rational_coeffs, params_from_pairs, rational_derivatives
from .parabola import ParabolicArc, boundary_angles, boundary_curvatures, solve_control_points


class InvalidGeometry(ValueError):
    """Inputs violate the geometric preconditions of the operation."""


class ConstructionError(ArithmeticError):
    """A solved curve failed its own interpolation checks (internal bug guard)."""


def problem_of_arc(arc: ParabolicArc) -> NormalizedProblem:
    """Boundary data of a parabolic arc as a normalized problem."""
    alpha, beta = boundary_angles(arc)
    a, b = boundary_curvatures(arc)
    return NormalizedProblem(alpha, beta, a, b)


@dataclass(frozen=True)
class RationalSpiralArc:
    """One solution curve: parabola composed with Moebius map and chord frame.

    Evaluation parameters run over [0, 1]; all evaluators accept scalars or
    ndarrays.  ``coeffs`` caches the expanded degree-4 rational coefficients
    of the normalized curve (x_num, y_num, den), monomial ascending.
    """

    frame: ChordFrame
    arc: ParabolicArc
    params: MoebiusParams
    coeffs: tuple
    solution_index: int

    def _derivs(self, t):
        return rational_derivatives(self.arc, self.params, t)

    def point_normalized(self, t):
        w, _, _ = self._derivs(t)
        return (w.real, w.imag)

    def point(self, t):
        """Curve point in original coordinates."""
        w, _, _ = self._derivs(t)
        cm = math.cos(self.frame.mu)
        sm = math.sin(self.frame.mu)
        x, y = w.real, w.imag
        return (
            self.frame.origin[0] + self.frame.c * (x * cm - y * sm),
            self.frame.origin[1] + self.frame.c * (x * sm + y * cm),
        )

    def tangent_angle(self, t):
        """Tangent direction in original coordinates, wrapped to (-pi, pi]."""
        _, w1, _ = self._derivs(t)
        raw = np.arctan2(w1.imag, w1.real) + self.frame.mu
        return np.arctan2(np.sin(raw), np.cos(raw))

    def curvature(self, t):
        """Signed curvature in original coordinates."""
        _, w1, w2 = self._derivs(t)
        return (w1.conjugate() * w2).imag / np.abs(w1) ** 3 / self.frame.c

    def speed(self, t):
        """|dP/dt| in original coordinates."""
        _, w1, _ = self._derivs(t)
        return self.frame.c * np.abs(w1)

    def element_at(self, t: float) -> CurvatureElement:
        x, y = self.point(t)
        return CurvatureElement(float(x), float(y), float(self.tangent_angle(t)), float(self.curvature(t)))


@dataclass(frozen=True)
class Diagnostics:
    invariants: InvariantPair
    q_max: Optional[float]
    quartic_residual: Optional[float]
    curvature_rate_max: Optional[Tuple[float, float]]  # fairness hint per solution
    problem: Optional[NormalizedProblem] = None


@dataclass(frozen=True)
class SolveOutcome:
    classification: SolvabilityClass
    solutions: Tuple[RationalSpiralArc, ...]
    diagnostics: Diagnostics
    frame: Optional[ChordFrame] = None

    @property
    def is_solvable(self) -> bool:
        return self.classification.is_solvable


_VERIFY_POS = 1e-8
_VERIFY_ANG = 1e-8
_VERIFY_CURV = 1e-6


def _verify_endpoints(sol: RationalSpiralArc, start: CurvatureElement, end: CurvatureElement):
    scale = max(sol.frame.c, abs(sol.frame.origin[0]), abs(sol.frame.origin[1]), 1.0)
    for t, ref in ((0.0, start), (1.0, end)):
        x, y = sol.point(t)
        if math.hypot(x - ref.x, y - ref.y) > _VERIFY_POS * scale:
            raise ConstructionError(f"endpoint position drift at t={t}")
        if abs(wrap_pi(float(sol.tangent_angle(t)) - ref.tau)) > _VERIFY_ANG:
            raise ConstructionError(f"endpoint tangent drift at t={t}")
        if abs(float(sol.curvature(t)) - ref.k) > _VERIFY_CURV * max(1.0, abs(ref.k)):
            raise ConstructionError(f"endpoint curvature drift at t={t}")


def _curvature_rate_hint(sol: RationalSpiralArc, n: int = 65) -> float:
    ts = np.linspace(0.0, 1.0, n)
    k = sol.curvature(ts)
    sp = sol.speed(ts)
    ds = np.diff(ts) * 0.5 * (sp[1:] + sp[:-1])
    return float(np.max(np.abs(np.diff(k) / ds)))


def solve_g2_hermite(start: CurvatureElement, end: CurvatureElement) -> SolveOutcome:
    """Solve the G2 Hermite problem posed by two curvature elements.

    Total over classification: infeasible problems are reported through the
    outcome's classification with empty solutions, not raised.  Raises
    DegenerateChord for coincident endpoints.
    """
    frame, problem = normalize_to_chord(start, end)
    cls = classify(problem)
    if not cls.is_solvable:
        diag = Diagnostics(cls.invariants, cls.q_max, None, None, problem)
        return SolveOutcome(cls, (), diag, frame)

    arc1, arc2, quartic = solve_control_points(cls.invariants.q, cls.invariants.sigma)

    solutions: List[RationalSpiralArc] = []
    for index, arc in ((1, arc1), (2, arc2)):
        params = params_from_pairs(problem_of_arc(arc), problem)
        coeffs = expand_rational_coeffs(arc, params)
        sol = RationalSpiralArc(frame, arc, params, coeffs, index)
        _verify_endpoints(sol, start, end)
        solutions.append(sol)

    diag = Diagnostics(
        invariants=cls.invariants,
        q_max=cls.q_max,
        quartic_residual=quartic.residual(),
        curvature_rate_max=tuple(_curvature_rate_hint(s) for s in solutions),
        problem=problem,
    )
    return SolveOutcome(cls, tuple(solutions), diag, frame)


def solve_chain(elements: Sequence[CurvatureElement]) -> List[SolveOutcome]:
    """Solve each consecutive pair of elements independently.

    Shared interior elements make the chain's curvature continuous at the
    nodes whenever the spans are solvable; no global fairness is enforced.
    """
    if len(elements) < 2:
        raise ValueError("need at least two elements")
    return [solve_g2_hermite(a, b) for a, b in zip(elements[:-1], elements[1:])]


def _implied_center(e: CurvatureElement):
    if e.k == 0.0:
        return None
    r = 1.0 / e.k
    return (e.x - r * math.sin(e.tau), e.y + r * math.cos(e.tau))


def subdivide_concentric(
    start: CurvatureElement,
    end: CurvatureElement,
    center: Tuple[float, float],
    max_windings: int = 2,
) -> List[Tuple[CurvatureElement, CurvatureElement]]:
    """Split a concentric-circles problem at the geometric-mean circle.

    The intermediate element M sits at the polar halfway angle (in the
    direction of motion) on the circle of radius sqrt(R_A * R_B), with the
    tangent along that circle, so curvature is continuous at M and the two
    sub-problems are similar.  The polar travel is ambiguous modulo full
    turns; the smallest winding whose two halves classify Solvable is
    chosen (falling back to the bare angle difference if none does within
    ``max_windings``).
    """
    if start.k == 0.0 or end.k == 0.0 or (start.k > 0) != (end.k > 0):
        raise InvalidGeometry("endpoints must lie on circles of matching orientation")
    r_a = 1.0 / abs(start.k)
    r_b = 1.0 / abs(end.k)
    tol = 1e-9
    for e, r in ((start, r_a), (end, r_b)):
        implied = _implied_center(e)
        if math.hypot(implied[0] - center[0], implied[1] - center[1]) > tol * max(1.0, r):
            raise InvalidGeometry(f"element {e!r} not on a circle about {center!r}")

    orientation = 1.0 if start.k > 0 else -1.0
    phi_a = math.atan2(start.y - center[1], start.x - center[0])
    phi_b = math.atan2(end.y - center[1], end.x - center[0])
    base = (phi_b - phi_a) * orientation % math.tau
    if base == 0.0:
        base = math.tau

    r_m = math.sqrt(r_a * r_b)
    k_m = orientation / r_m

    def midpoint_for(travel: float) -> CurvatureElement:
        phi_m = phi_a + orientation * 0.5 * travel
        tau_m = wrap_pi(phi_m + orientation * 0.5 * math.pi)
        return CurvatureElement(
            center[0] + r_m * math.cos(phi_m),
            center[1] + r_m * math.sin(phi_m),
            tau_m,
            k_m,
        )

    chosen = midpoint_for(base)
    for winding in range(max_windings + 1):
        mid = midpoint_for(base + winding * math.tau)
        solvable = True
        for pair in ((start, mid), (mid, end)):
            _, sub = normalize_to_chord(*pair)
            if not classify(sub).is_solvable:
                solvable = False
                break
        if solvable:
            chosen = mid
            break
    return [(start, chosen), (chosen, end)]
