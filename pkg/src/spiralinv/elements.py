"""Curvature elements, chord normalization and inversive solvability invariants.

A curvature element is a point together with a tangent direction and a
signed curvature -- equivalently an oriented circle of curvature (a straight
line when the curvature vanishes).  Two elements pose a G2 Hermite problem:
find a spiral arc (monotone signed curvature) interpolating position,
tangent and curvature at both ends.

This module maps such problems onto the normalized chord [-1, 1], computes
the inversive invariant Q of the boundary circle pair together with the
lense width sigma = alpha + beta, and classifies solvability for the
rational-spiral construction:

* Q > 0: no spiral at all can match the data.
* Q = 0: the unique matching spiral is a biarc (not built here).
* Q < 0 but sign(sigma) != sign(b - a): no *short* spiral exists.
* |sigma| >= pi/2 or Q above the parabolic bound q_max(sigma): data is
  valid but out of reach of the parabola-inversion method.
* otherwise: Solvable, two rational solutions exist.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from .parabola import q_max

HALF_PI = 0.5 * math.pi

#: |Q| below this classifies as BiarcOnly: Q is smooth in the inputs and the
#: quartic only degenerates for Q -> 0- beyond the applicability bound, so a
#: tight band suffices.
BIARC_TOL = 1e-9

#: chords shorter than this (relative to the endpoint magnitudes) are rejected
DEGENERATE_REL = 1e-12


class DegenerateChord(ValueError):
    """Endpoints coincide (or nearly so); no chord frame exists."""


def wrap_pi(angle: float) -> float:
    """Reduce an angle to the half-open interval (-pi, pi]."""
    a = math.remainder(angle, math.tau)
    if a <= -math.pi:
        a += math.tau
    return a


@dataclass(frozen=True)
class CurvatureElement:
    """Point (x, y), tangent angle tau in radians, signed curvature k (1/length).

    k = 0 encodes a straight line as the circle of curvature.  Positive k
    turns left (counterclockwise).
    """

    x: float
    y: float
    tau: float
    k: float

    def __post_init__(self):
        for name in ("x", "y", "tau", "k"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"non-finite {name}: {v!r}")

    @property
    def point(self) -> Tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class ChordFrame:
    """Similarity mapping the problem chord onto the segment [-1, 1].

    c is the half chord length (> 0), mu the chord direction angle, origin
    the chord midpoint in original coordinates.
    """

    c: float
    mu: float
    origin: Tuple[float, float]

    def __post_init__(self):
        if not (self.c > 0 and math.isfinite(self.c)):
            raise ValueError(f"half-chord must be positive, got {self.c!r}")


@dataclass(frozen=True)
class NormalizedProblem:
    """Boundary data on the chord [-1, 1): angles alpha, beta and curvatures a, b.

    a = k_A*c and b = k_B*c are the similarity-invariant normalized
    curvatures.  Construction canonicalizes the angles: both are wrapped to
    (-pi, pi], and for decreasing curvature (a > b) a value of +pi is
    replaced by -pi, which keeps the tangent function continuous for short
    spirals.
    """

    alpha: float
    beta: float
    a: float
    b: float

    def __post_init__(self):
        for name in ("alpha", "beta", "a", "b"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"non-finite {name}")
        alpha = wrap_pi(self.alpha)
        beta = wrap_pi(self.beta)
        if self.a > self.b:
            if alpha == math.pi:
                alpha = -math.pi
            if beta == math.pi:
                beta = -math.pi
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @property
    def sigma(self) -> float:
        return self.alpha + self.beta

    def mirrored(self) -> "NormalizedProblem":
        """The problem reflected across the chord (angles and curvatures negate)."""
        return NormalizedProblem(-self.alpha, -self.beta, -self.a, -self.b)


@dataclass(frozen=True)
class InvariantPair:
    """Inversive invariant q of the boundary circle pair and lense width sigma."""

    q: float
    sigma: float


class SolvabilityTag(str, Enum):
    NO_SPIRAL = "NoSpiral"
    BIARC_ONLY = "BiarcOnly"
    NO_SHORT_SPIRAL = "NoShortSpiral"
    METHOD_NOT_APPLICABLE = "MethodNotApplicable"
    SOLVABLE = "Solvable"


@dataclass(frozen=True)
class SolvabilityClass:
    tag: SolvabilityTag
    invariants: InvariantPair
    q_max: Optional[float]  # None when sigma is 0 or |sigma| >= pi/2

    @property
    def is_solvable(self) -> bool:
        return self.tag is SolvabilityTag.SOLVABLE


def normalize_to_chord(start: CurvatureElement, end: CurvatureElement):
    """Map a G2 Hermite problem onto the chord [-1, 1].

    Returns (frame, problem) where the implied endpoints of ``problem`` are
    (-1, 0) and (1, 0).  Raises DegenerateChord when the endpoints (nearly)
    coincide.
    """
    dx = end.x - start.x
    dy = end.y - start.y
    dist = math.hypot(dx, dy)
    scale = max(1.0, math.hypot(start.x, start.y), math.hypot(end.x, end.y))
    if dist <= DEGENERATE_REL * scale:
        raise DegenerateChord(f"|MN| = {dist:.3e} below degeneracy threshold")
    c = 0.5 * dist
    mu = math.atan2(dy, dx)
    origin = (0.5 * (start.x + end.x), 0.5 * (start.y + end.y))
    problem = NormalizedProblem(start.tau - mu, end.tau - mu, start.k * c, end.k * c)
    return ChordFrame(c, mu, origin), problem


def map_back(frame: ChordFrame, point) -> Tuple[float, float]:
    """Inverse of the chord transform: rotate by mu, scale by c, translate."""
    x, y = point
    cm = math.cos(frame.mu)
    sm = math.sin(frame.mu)
    return (
        frame.origin[0] + frame.c * (x * cm - y * sm),
        frame.origin[1] + frame.c * (x * sm + y * cm),
    )


def to_chord(frame: ChordFrame, point) -> Tuple[float, float]:
    """Forward chord transform for positions (the inverse of :func:`map_back`)."""
    x = point[0] - frame.origin[0]
    y = point[1] - frame.origin[1]
    cm = math.cos(frame.mu)
    sm = math.sin(frame.mu)
    return ((x * cm + y * sm) / frame.c, (-x * sm + y * cm) / frame.c)


def invariants_of(problem: NormalizedProblem) -> InvariantPair:
    """Q = (a + sin alpha)(b - sin beta) + sin^2(sigma/2), sigma = alpha + beta."""
    sigma = problem.alpha + problem.beta
    q = (problem.a + math.sin(problem.alpha)) * (problem.b - math.sin(problem.beta)) \
        + math.sin(0.5 * sigma) ** 2
    return InvariantPair(q=q, sigma=sigma)


def classify(problem: NormalizedProblem) -> SolvabilityClass:
    """Total solvability classification of a normalized problem.

    Checks run in fixed order: the existence test on Q, the short-spiral
    sign condition, then the applicability bounds of the parabola-inversion
    method (|sigma| < pi/2 and Q <= q_max(sigma); equality is accepted, the
    source vertex then sits exactly at an endpoint).
    """
    inv = invariants_of(problem)
    a, b = problem.a, problem.b
    sigma = inv.sigma

    qmax_value = None
    if 0.0 < abs(sigma) < HALF_PI:
        qmax_value = q_max(sigma)

    if inv.q > BIARC_TOL:
        tag = SolvabilityTag.NO_SPIRAL
    elif abs(inv.q) <= BIARC_TOL:
        tag = SolvabilityTag.BIARC_ONLY
    elif a == b or sigma == 0.0 or (sigma > 0.0) != (b > a):
        tag = SolvabilityTag.NO_SHORT_SPIRAL
    elif qmax_value is None or inv.q > qmax_value:
        tag = SolvabilityTag.METHOD_NOT_APPLICABLE
    else:
        tag = SolvabilityTag.SOLVABLE
        # hyperbola-branch inequalities; guaranteed by Q < 0 plus the sign
        # condition, kept as a cheap consistency assertion
        u = a + math.sin(problem.alpha)
        v = b - math.sin(problem.beta)
        if a < b:
            assert u < 0.0 < v, f"branch inequality violated: {u}, {v}"
        else:
            assert v < 0.0 < u, f"branch inequality violated: {u}, {v}"

    return SolvabilityClass(tag=tag, invariants=inv, q_max=qmax_value)
