"""The Moebius transformation w = (z + z0)/(1 + z0 z) fixing the points +-1.

The transform is stored canonically as (r0, lambda0) with
z0 = (r0 e^{i lambda0} - 1)/(r0 e^{i lambda0} + 1): the pair stays finite
even when z0 runs off to infinity (r0 = 1, lambda0 = pi, where the map
degenerates to w = 1/z).  Writing R = r0 e^{i lambda0}, the transform is

    w = [R (z + 1) + (z - 1)] / [R (z + 1) - (z - 1)],

which is the numerically robust form used for evaluation and derivatives.

Given two circle pairs anchored at (-+1, 0) with equal invariants
(Q, sigma), the parameters mapping one pair onto the other are closed form:
lambda0 = alpha* - alpha = beta - beta*, r0 = (a + sin alpha)/(a* + sin alpha*)
= (b* - sin beta*)/(b - sin beta) > 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .elements import CurvatureElement, NormalizedProblem, invariants_of, wrap_pi
from .parabola import ParabolicArc, point_complex

#: z0 is reported as infinite when |r0 e^{i lambda0} + 1| falls below this
Z0_INF_TOL = 1e-12

#: matching tolerance for the invariant preconditions
INVARIANT_TOL = 1e-9


class InvariantMismatch(ValueError):
    """The two circle pairs do not share (Q, sigma); no such transform exists."""


class InconsistentRatio(ValueError):
    """The two closed-form expressions for r0 disagree beyond tolerance."""


class PoleError(ZeroDivisionError):
    """Evaluation at (numerically) the pole of the transform."""


@dataclass(frozen=True)
class MoebiusParams:
    """Canonical (r0, lambda0) form of the transform constant."""

    r0: float
    lambda0: float

    def __post_init__(self):
        if not (self.r0 > 0.0 and math.isfinite(self.r0) and math.isfinite(self.lambda0)):
            raise ValueError(f"invalid Moebius parameters ({self.r0!r}, {self.lambda0!r})")

    @property
    def rotation(self) -> complex:
        """R = r0 e^{i lambda0}."""
        return self.r0 * cmath.exp(1j * self.lambda0)

    @property
    def z0(self) -> Optional[complex]:
        """The transform constant, or None when it is the point at infinity."""
        R = self.rotation
        den = R + 1.0
        if abs(den) < Z0_INF_TOL:
            return None
        return (R - 1.0) / den

    @classmethod
    def identity(cls) -> "MoebiusParams":
        return cls(1.0, 0.0)

    @classmethod
    def from_z0(cls, z0) -> "MoebiusParams":
        z0 = complex(z0)
        if abs(z0 - 1.0) < 1e-15 or abs(z0 + 1.0) < 1e-15:
            raise ValueError("transform constant must differ from the fixed points +-1")
        R = (1.0 + z0) / (1.0 - z0)
        return cls(abs(R), cmath.phase(R))


def params_from_pairs(src: NormalizedProblem, dst: NormalizedProblem) -> MoebiusParams:
    """Parameters of the transform mapping the src circle pair onto dst.

    Both pairs are anchored at (-1, 0) and (1, 0); their invariants must
    agree within tolerance, otherwise no transform of this family exists.
    The two available expressions for r0 are cross-checked against each
    other.
    """
    inv_s = invariants_of(src)
    inv_d = invariants_of(dst)
    if abs(inv_s.q - inv_d.q) > INVARIANT_TOL * max(1.0, abs(inv_d.q)):
        raise InvariantMismatch(f"Q mismatch: {inv_s.q!r} vs {inv_d.q!r}")
    if abs(wrap_pi(inv_s.sigma - inv_d.sigma)) > INVARIANT_TOL:
        raise InvariantMismatch(f"sigma mismatch: {inv_s.sigma!r} vs {inv_d.sigma!r}")

    lambda0 = dst.alpha - src.alpha
    if abs(wrap_pi(lambda0 - (src.beta - dst.beta))) > INVARIANT_TOL:
        raise InvariantMismatch("the two rotation expressions disagree")

    num1 = src.a + math.sin(src.alpha)
    den1 = dst.a + math.sin(dst.alpha)
    num2 = dst.b - math.sin(dst.beta)
    den2 = src.b - math.sin(src.beta)
    candidates = []
    if den1 != 0.0:
        candidates.append((abs(den1), num1 / den1))
    if den2 != 0.0:
        candidates.append((abs(den2), num2 / den2))
    if not candidates:
        raise InconsistentRatio("both scale ratios are degenerate")
    if len(candidates) == 2:
        ra, rb = candidates[0][1], candidates[1][1]
        if abs(ra - rb) > 1e-9 * max(abs(ra), abs(rb), 1e-30):
            raise InconsistentRatio(f"scale ratios disagree: {ra!r} vs {rb!r}")
    r0 = max(candidates)[1]
    if not r0 > 0.0:
        raise InconsistentRatio(f"nonpositive scale ratio {r0!r}")
    return MoebiusParams(r0, lambda0)


def apply_moebius(z, params: MoebiusParams) -> Tuple[float, float]:
    """Image of the point z = (x, y); fixes +1 and -1."""
    zc = complex(z[0], z[1])
    z0 = params.z0
    if z0 is None:
        if abs(zc) < 1e-14:
            raise PoleError("z = 0 is the pole of the inversion 1/z")
        w = 1.0 / zc
    else:
        den = 1.0 + z0 * zc
        if abs(den) < 1e-14 * (1.0 + abs(z0) * abs(zc)):
            raise PoleError(f"point {z!r} at the pole of the transform")
        w = (zc + z0) / den
    return (w.real, w.imag)


def transform_circle(element: CurvatureElement, params: MoebiusParams) -> CurvatureElement:
    """Image of a circle of curvature anchored at (-1, 0) or (1, 0).

    The anchors are fixed points, so only tangent and curvature change:
    at (-1,0): alpha* = alpha + lambda0, a* = (a + sin alpha)/r0 - sin alpha*;
    at (+1,0): beta*  = beta  - lambda0, b* = r0 (b - sin beta) + sin beta*.
    """
    tol = 1e-9
    if abs(element.x + 1.0) <= tol and abs(element.y) <= tol:
        tau = wrap_pi(element.tau + params.lambda0)
        k = (element.k + math.sin(element.tau)) / params.r0 - math.sin(tau)
        return CurvatureElement(-1.0, 0.0, tau, k)
    if abs(element.x - 1.0) <= tol and abs(element.y) <= tol:
        tau = wrap_pi(element.tau - params.lambda0)
        k = params.r0 * (element.k - math.sin(element.tau)) + math.sin(tau)
        return CurvatureElement(1.0, 0.0, tau, k)
    raise ValueError(f"element not anchored at a chord endpoint: {element!r}")


def rational_derivatives(arc: ParabolicArc, params: MoebiusParams, t):
    """(w, w', w'') of the composite curve w(t) = W(z(t)) at t (scalar or array).

    Uses the pole-free form w = (u + v)/(u - v), u = R(z+1), v = z-1:
    w'  = 4 R z' / (u - v)^2,
    w'' = 4 R (z'' (u - v) - 2 (R - 1) z'^2) / (u - v)^3.
    """
    R = params.rotation
    zp = complex(arc.p, arc.q)
    c1 = 2.0 * (1.0 + zp)
    c2 = -2.0 * zp
    z = -1.0 + t * (c1 + t * c2)
    z1 = c1 + 2.0 * t * c2
    dv = R * (z + 1.0) - (z - 1.0)
    w = (R * (z + 1.0) + (z - 1.0)) / dv
    w1 = 4.0 * R * z1 / (dv * dv)
    w2 = 4.0 * R * (2.0 * c2 * dv - 2.0 * (R - 1.0) * z1 * z1) / (dv * dv * dv)
    return w, w1, w2


def eval_rational(arc: ParabolicArc, params: MoebiusParams, t):
    """Point of the transformed arc at t; equals apply_moebius(eval_parabola(t)).

    Valid also when z0 is infinite.  The denominator is positive along any
    valid arc (the pole lies off it); this is asserted.
    """
    R = params.rotation
    z = point_complex(arc, t)
    dv = R * (z + 1.0) - (z - 1.0)
    assert np.all(np.abs(dv) > 0.0), "transform pole on the arc"
    w = (R * (z + 1.0) + (z - 1.0)) / dv
    return (w.real, w.imag)


def _conv(a, b):
    out = [0j] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def expand_rational_coeffs(arc: ParabolicArc, params: MoebiusParams):
    """Monomial coefficients (ascending, degree 4) of the rational curve.

    Returns (x_num, y_num, den) with X(t) = x_num(t)/den(t),
    Y(t) = y_num(t)/den(t); den(0) is normalized to 1 (exact: the raw value
    is 4) and den > 0 on [0, 1].
    """
    R = params.rotation
    zp = complex(arc.p, arc.q)
    c1 = 2.0 * (1.0 + zp)
    c2 = -2.0 * zp
    num_poly = (-2.0 + 0j, (R + 1.0) * c1, (R + 1.0) * c2)   # u + v
    den_poly = (2.0 + 0j, (R - 1.0) * c1, (R - 1.0) * c2)    # u - v
    den_conj = tuple(c.conjugate() for c in den_poly)
    n = _conv(num_poly, den_conj)
    d = _conv(den_poly, den_conj)
    x_num = tuple(c.real / 4.0 for c in n)
    y_num = tuple(c.imag / 4.0 for c in n)
    den = tuple(c.real / 4.0 for c in d)
    return x_num, y_num, den


def rational_bezier_form(coeffs):
    """Convert monomial (x_num, y_num, den) to rational-Bezier control data.

    Returns (points, weights): five control points and weights such that the
    weighted degree-4 Bezier reproduces the curve.
    """
    x_num, y_num, den = coeffs
    binom4 = (1.0, 4.0, 6.0, 4.0, 1.0)
    binom = ((1.0,), (1.0, 1.0), (1.0, 2.0, 1.0), (1.0, 3.0, 3.0, 1.0), (1.0, 4.0, 6.0, 4.0, 1.0))

    def to_bernstein(mono):
        out = []
        for j in range(5):
            s = 0.0
            for i in range(j + 1):
                s += binom[j][i] / binom4[i] * mono[i]
            out.append(s)
        return out

    bx = to_bernstein(x_num)
    by = to_bernstein(y_num)
    weights = to_bernstein(den)
    points = []
    for j in range(5):
        w = weights[j]
        if w == 0.0:
            raise ArithmeticError("vanishing rational-Bezier weight")
        points.append((bx[j] / w, by[j] / w))
    return points, weights
