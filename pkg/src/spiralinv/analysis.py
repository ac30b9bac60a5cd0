"""Differential-geometric measurements on solved curves.

Curvature and tangents come from exact first/second parametric derivatives
of the composite curve (finite differences lose too many digits near the
endpoints); arc length comes from deterministic adaptive quadrature of the
speed.  The lense of a problem -- the region between the two circular arcs
through the chord endpoints sharing the boundary tangents -- is represented
by its two support arcs plus the inscribed-angle band that makes membership
testing robust for any lense width.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .elements import NormalizedProblem, wrap_pi
from .quadrature import cumulative_quadrature
from .solver import RationalSpiralArc


@dataclass(frozen=True)
class CurvatureProfile:
    """Samples (t, s, k): parameter, arc length from t=0, signed curvature.

    monotone_direction is +1/-1 when the sampled curvature is monotone
    (sign of k_last - k_first) and None otherwise.
    """

    t: np.ndarray
    s: np.ndarray
    k: np.ndarray
    monotone_direction: Optional[int]

    @property
    def samples(self):
        return list(zip(self.t.tolist(), self.s.tolist(), self.k.tolist()))


def curvature_samples(curve: RationalSpiralArc, n: int):
    """(t, k) arrays at n uniform parameters; no arc length computed."""
    if n < 2:
        raise ValueError("need at least two samples")
    ts = np.linspace(0.0, 1.0, n)
    return ts, np.asarray(curve.curvature(ts), dtype=float)


def curvature_profile(curve: RationalSpiralArc, n: int, rel_tol: float = 1e-10) -> CurvatureProfile:
    """Curvature profile over arc length at n uniform parameters."""
    ts, k = curvature_samples(curve, n)
    s = cumulative_quadrature(lambda u: np.asarray(curve.speed(u)), ts, rel_tol=rel_tol)
    direction: Optional[int] = None
    slack = 1e-12 * float(np.max(np.abs(k))) if k.size else 0.0
    profile = CurvatureProfile(ts, s, k, None)
    if assert_monotone(profile, slack):
        direction = 1 if k[-1] >= k[0] else -1
        profile = CurvatureProfile(ts, s, k, direction)
    return profile


def assert_monotone(profile: CurvatureProfile, slack: float) -> bool:
    """True iff consecutive curvature differences share one sign.

    |dk| <= slack is tolerated only at the two outermost samples, which
    admits the vertex-at-endpoint boundary case.
    """
    dk = np.diff(profile.k)
    if dk.size == 0:
        return True
    direction = 1.0 if profile.k[-1] >= profile.k[0] else -1.0
    signed = dk * direction
    interior = signed[1:-1] if dk.size > 2 else signed[:0]
    if interior.size and np.min(interior) <= 0.0:
        return False
    for edge in (signed[0], signed[-1]):
        if edge <= 0.0 and abs(edge) > slack:
            return False
    return True


def find_inflection(curve: RationalSpiralArc, tol: float = 1e-12) -> Optional[float]:
    """Parameter of the unique curvature zero, if the curve has one.

    Present exactly when the boundary curvatures have opposite signs (then
    monotonicity makes the zero unique; located by bisection), or when a
    boundary curvature is itself zero (a zero prescribed exactly reproduces
    only up to roundoff, hence the relative zero band).
    """
    k0 = float(curve.curvature(0.0))
    k1 = float(curve.curvature(1.0))
    zero_band = 1e-13 * max(abs(k0), abs(k1), 1.0)
    if abs(k0) <= zero_band:
        return 0.0
    if abs(k1) <= zero_band:
        return 1.0
    if (k0 > 0.0) == (k1 > 0.0):
        return None
    lo, hi = 0.0, 1.0
    f_lo = k0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = float(curve.curvature(mid))
        if f_mid == 0.0:
            return mid
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


#: below this curvature the support is handled as a straight line: the
#: sagitta over the chord is |k0|/2 < 5e-10, inside the membership tolerance
_LINE_TOL = 1e-9


@dataclass(frozen=True)
class LenseArc:
    """Circular arc from (-1, 0) to (1, 0) leaving A with tangent tau_a.

    Its signed curvature is k0 = -sin(tau_a) and the total turning is
    -2*tau_a.  Vanishing curvature degenerates to the chord segment
    (tau_a = 0) or to the chord complement through infinity (|tau_a| = pi);
    sin(pi) carries float noise, so near-zero curvatures take the line path
    too.
    """

    tau_a: float

    @property
    def k0(self) -> float:
        k = -math.sin(self.tau_a)
        return 0.0 if abs(k) < _LINE_TOL else k

    @property
    def is_line(self) -> bool:
        return self.k0 == 0.0

    @property
    def through_infinity(self) -> bool:
        return self.is_line and abs(self.tau_a) > 0.5 * math.pi

    @property
    def center(self) -> Tuple[float, float]:
        if self.is_line:
            raise ValueError("degenerate arc has no center")
        return (0.0, -math.cos(self.tau_a) / math.sin(self.tau_a))

    @property
    def radius(self) -> float:
        return 1.0 / abs(self.k0)

    def points(self, n: int) -> np.ndarray:
        """n sample points from A to B (finite arcs only)."""
        f = np.linspace(0.0, 1.0, n)
        if self.is_line:
            if self.through_infinity:
                raise ValueError("cannot sample the arc through infinity")
            return np.column_stack((-1.0 + 2.0 * f, np.zeros_like(f)))
        cx, cy = self.center
        start = math.atan2(-cy, -1.0 - cx)
        ang = start + f * (-2.0 * self.tau_a)
        return np.column_stack((cx + self.radius * np.cos(ang), cy + self.radius * np.sin(ang)))

    def distance(self, pts: np.ndarray) -> np.ndarray:
        """Euclidean distance from each point to the arc (not its support)."""
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        x, y = pts[:, 0], pts[:, 1]
        d_a = np.hypot(x + 1.0, y)
        d_b = np.hypot(x - 1.0, y)
        if self.is_line:
            if self.through_infinity:
                # two rays: x <= -1 and x >= 1 on the chord line
                d_left = np.where(x <= -1.0, np.abs(y), d_a)
                d_right = np.where(x >= 1.0, np.abs(y), d_b)
                return np.minimum(d_left, d_right)
            # chord segment
            inside = np.abs(x) <= 1.0
            return np.where(inside, np.abs(y), np.minimum(d_a, d_b))
        cx, cy = self.center
        ang = np.arctan2(y - cy, x - cx)
        start = math.atan2(-cy, -1.0 - cx)
        turning = -2.0 * self.tau_a
        rel = np.mod((ang - start) * np.sign(turning), math.tau)
        on_arc = rel <= abs(turning)
        d_support = np.abs(np.hypot(x - cx, y - cy) - self.radius)
        return np.where(on_arc, d_support, np.minimum(d_a, d_b))


@dataclass(frozen=True)
class Lense:
    """The lense of a normalized problem: support arcs plus inscribed-angle band.

    Points inside see the chord under an inscribed angle between the levels
    of the two boundary arcs; psi(P) = arg((B-P)/(A-P)) with A = (-1,0),
    B = (1,0), and the arcs sit on the levels pi - alpha and pi + beta.
    """

    arc_start: LenseArc  # shares tangent alpha at (-1, 0)
    arc_end: LenseArc    # shares tangent beta at (+1, 0)
    sigma: float
    psi_start: float
    psi_end: float

    def contains_points(self, pts, tol: float = 1e-9) -> bool:
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        z = pts[:, 0] + 1j * pts[:, 1]
        psi = np.angle((1.0 - z) * np.conj(-1.0 - z))
        if self.sigma == 0.0:
            ok = np.zeros(len(pts), dtype=bool)
        else:
            s = 1.0 if self.sigma > 0 else -1.0
            d1 = _wrap_array(psi - self.psi_start) * s
            d2 = _wrap_array(self.psi_end - psi) * s
            if abs(self.sigma) < math.pi:
                ok = (d1 >= 0.0) & (d2 >= 0.0)
            else:
                ok = ((d1 >= 0.0) & (d1 <= math.pi)) | ((d2 >= 0.0) & (d2 <= math.pi))
        if np.all(ok):
            return True
        rest = pts[~ok]
        d = np.minimum(self.arc_start.distance(rest), self.arc_end.distance(rest))
        return bool(np.all(d <= tol))


def _wrap_array(a):
    return np.mod(a + math.pi, math.tau) - math.pi


def lense_of(problem: NormalizedProblem) -> Lense:
    """The two circular arcs bounding every short spiral of the problem."""
    return Lense(
        arc_start=LenseArc(problem.alpha),
        arc_end=LenseArc(-problem.beta),
        sigma=problem.sigma,
        psi_start=wrap_pi(math.pi - problem.alpha),
        psi_end=wrap_pi(math.pi + problem.beta),
    )


def contains_in_lense(curve: RationalSpiralArc, lense: Lense, n: int = 1000, tol: float = 1e-9) -> bool:
    """True iff n samples of the normalized curve lie in the lense within tol."""
    ts = np.linspace(0.0, 1.0, n)
    x, y = curve.point_normalized(ts)
    return lense.contains_points(np.column_stack((x, y)), tol=tol)
