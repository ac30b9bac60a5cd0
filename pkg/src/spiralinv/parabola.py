"""Spiral arcs of a parabola: the source-curve family of the construction.

A quadratic Bezier arc from (-1, 0) to (1, 0) with control point (p, q) is a
spiral exactly when the control point lies inside one of the two unit
circles through the chord endpoints centered at (+-1/2, 0) (and off the
x-axis).  For a fixed lense width sigma the admissible control points lie on
an equilateral hyperbola through the chord endpoints; along that hyperbola
the inversive invariant Q is monotone in the polar angle xi, which makes the
problem "find a spiral parabolic arc with prescribed (Q, sigma)" a closed
form: a depressed quartic in tan(xi) whose one admissible root is written
with cancellation-free radicals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

try:
    from math import cbrt as _cbrt
except ImportError:  # pragma: no cover - Python < 3.11
    def _cbrt(x):
        return math.copysign(abs(x) ** (1.0 / 3.0), x)

HALF_PI = 0.5 * math.pi


class DomainError(ValueError):
    """Argument outside the mathematical domain of the map."""


class NotApplicable(ValueError):
    """No spiral parabolic arc exists for the requested invariants."""


@dataclass(frozen=True)
class ParabolicArc:
    """Quadratic Bezier from (-1,0) to (1,0) with control point (p, q), q != 0.

    h1 = |AP| and h2 = |PB| are the control-polygon leg lengths; they carry
    the boundary angles and curvatures of the arc.
    """

    p: float
    q: float
    h1: float = 0.0
    h2: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.p) and math.isfinite(self.q)):
            raise ValueError("non-finite control point")
        if self.q == 0.0:
            raise ValueError("control point on the chord line degenerates the arc")
        object.__setattr__(self, "h1", math.hypot(1.0 + self.p, self.q))
        object.__setattr__(self, "h2", math.hypot(1.0 - self.p, self.q))

    def mirrored(self) -> "ParabolicArc":
        return ParabolicArc(self.p, -self.q)


def eval_parabola(arc: ParabolicArc, t):
    """Point of the arc at parameter t (scalar or ndarray)."""
    omt = 1.0 - t
    x = -(omt * omt) + 2.0 * arc.p * omt * t + t * t
    y = 2.0 * arc.q * t * omt
    return (x, y)


def point_complex(arc: ParabolicArc, t):
    """The arc as a complex-valued quadratic polynomial in t."""
    zp = complex(arc.p, arc.q)
    c1 = 2.0 * (1.0 + zp)
    c2 = -2.0 * zp
    return -1.0 + t * (c1 + t * c2)


def boundary_angles(arc: ParabolicArc) -> Tuple[float, float]:
    """Tangent angles (alpha, beta) at t = 0 and t = 1.

    cos alpha = (1+p)/h1, sin alpha = q/h1; cos beta = (1-p)/h2,
    sin beta = -q/h2.
    """
    return (math.atan2(arc.q, 1.0 + arc.p), math.atan2(-arc.q, 1.0 - arc.p))


def boundary_curvatures(arc: ParabolicArc) -> Tuple[float, float]:
    """Signed curvatures (a, b) = (-q/h1^3, -q/h2^3) at the endpoints."""
    return (-arc.q / arc.h1 ** 3, -arc.q / arc.h2 ** 3)


def parabola_curvature(arc: ParabolicArc, t):
    """Signed curvature k(t) = -8q / g(t)^3 with g the parametric speed."""
    xd = 2.0 * (1.0 + arc.p) * (1.0 - t) + 2.0 * (1.0 - arc.p) * t
    yd = 2.0 * arc.q * (1.0 - 2.0 * t)
    g2 = xd * xd + yd * yd
    return -8.0 * arc.q / (g2 * g2 ** 0.5)


def is_spiral_control(p: float, q: float) -> bool:
    """True iff (p, q) yields a spiral arc: F1*F2 <= 0 with q != 0.

    F1 = p^2 + p + q^2 and F2 = p^2 - p + q^2 vanish on the two limiting
    circles; a sign change means the parabola's vertex stays off the open
    arc.
    """
    if q == 0.0:
        return False
    f1 = p * p + p + q * q
    f2 = p * p - p + q * q
    return f1 * f2 <= 0.0


def spirality_product(p: float, q: float) -> float:
    """F1(p,q) * F2(p,q); non-positive on spiral control points."""
    return (p * p + p + q * q) * (p * p - p + q * q)


def hyperbola_rho(xi: float, sigma0: float) -> float:
    """Polar radius of the constant-sigma hyperbola at polar angle xi.

    rho = sqrt(sin sigma0 / sin(sigma0 - 2 xi)); defined only where the
    radicand is positive (the admissible xi intervals for the sign of
    sigma0).
    """
    den = math.sin(sigma0 - 2.0 * xi)
    if den == 0.0:
        raise DomainError("polar angle on the hyperbola asymptote")
    rad = math.sin(sigma0) / den
    if rad <= 0.0:
        raise DomainError(f"polar angle {xi!r} outside the hyperbola branch")
    # the admissible branch also requires sign(x*y) = -sign(sigma)
    if math.sin(2.0 * xi) * (1.0 if sigma0 > 0.0 else -1.0) >= 0.0:
        raise DomainError(f"polar angle {xi!r} on the wrong quadrant pair")
    return math.sqrt(rad)


def hyperbola_residual(x: float, y: float, sigma0: float) -> float:
    """Implicit equation of the constant-sigma locus, zero on the hyperbola."""
    return math.sin(sigma0) * (1.0 - x * x + y * y) + 2.0 * x * y * math.cos(sigma0)


def q_of_xi(xi: float, sigma0: float) -> float:
    """Invariant Q of the spiral parabola whose control point sits at polar
    angle xi on the sigma0-hyperbola.

    Q(xi; sigma0) = f2(sigma0) - sin^3(sigma0) * f1(xi) with
    f1(xi) = (tan^4 xi + 6 tan^2 xi - 3)/(8 tan xi); monotone in xi on each
    admissible interval.
    """
    t = math.tan(xi)
    # |tan| beyond 1e15 means xi is within one ulp-scale of the cos pole
    if t == 0.0 or not math.isfinite(t) or abs(t) > 1e15:
        raise DomainError("pole of the hyperbola parametrization")
    t2 = t * t
    f1 = (t2 * t2 + 6.0 * t2 - 3.0) / (8.0 * t)
    cs = math.cos(sigma0)
    f2 = cs * cs * cs - 1.5 * cs + 0.5
    return f2 - math.sin(sigma0) ** 3 * f1


def q_max(sigma0: float) -> float:
    """Least upper bound of Q over spiral parabolic arcs with lense width sigma0.

    q_max = -w^6 (w^2 + 2) / ((1 - w^2)(w^2 + 1)^3) with w = cbrt(tan(sigma0/2));
    negative throughout 0 < |sigma0| < pi/2 and even in sigma0.
    """
    if not (0.0 < abs(sigma0) < HALF_PI):
        raise DomainError(f"lense width {sigma0!r} outside (0, pi/2) in magnitude")
    w = _cbrt(math.tan(0.5 * sigma0))
    w2 = w * w
    return -(w2 ** 3) * (w2 + 2.0) / ((1.0 - w2) * (w2 + 1.0) ** 3)


def q_of_control_point(p: float, q: float) -> float:
    """Invariant Q expressed directly in the control point."""
    h1sq = (1.0 + p) * (1.0 + p) + q * q
    h2sq = (1.0 - p) * (1.0 - p) + q * q
    h12 = math.sqrt(h1sq * h2sq)
    rsq = p * p + q * q
    return 0.5 + (rsq - 1.0) / (2.0 * h12) - q * q * (2.0 * rsq + 1.0) / h12 ** 3


@dataclass(frozen=True)
class QuarticSolution:
    """Intermediates of the closed-form quartic solve for the control point.

    theta0 = tan(xi0) is the admissible root of
    theta^4 + 6 theta^2 + 8 q1 theta - 3 = 0; its sign is opposite to
    sigma0.  r12 = r2^2 - r1^2 > 0.
    """

    q1: float
    m: float
    n: float
    r1: float
    r2: float
    r12: float
    theta0: float
    xi0: float

    def residual(self) -> float:
        t = self.theta0
        return ((t * t + 6.0) * t + 8.0 * self.q1) * t - 3.0


def solve_control_points(q0: float, sigma0: float):
    """Both spiral parabolic arcs with invariants (q0, sigma0).

    Requires 0 < |sigma0| < pi/2 and q0 <= q_max(sigma0) (equality allowed:
    the vertex then sits exactly at an endpoint).  Returns
    (arc1, arc2, quartic) with arc2 the point reflection of arc1 through the
    origin.
    """
    if not (0.0 < abs(sigma0) < HALF_PI):
        raise NotApplicable(f"lense width {sigma0!r} outside method range")
    bound = q_max(sigma0)
    if not (q0 <= bound + 1e-12):
        raise NotApplicable(f"invariant {q0!r} above applicability bound {bound!r}")

    sin_s = math.sin(sigma0)
    q1 = math.cos(sigma0) / sin_s + (q0 - math.sin(0.5 * sigma0) ** 2) / sin_s ** 3
    if abs(q1) > 1e150:
        raise NotApplicable("reduced invariant overflows the radical forms")

    m = _cbrt(1.0 + q1 * q1)
    n = math.sqrt(m * m + m + 1.0)
    # |q1|/n re-expresses sqrt(m - 1) without subtractive cancellation
    r1 = abs(q1) / n if m - 1.0 < 1e-6 else math.sqrt(m - 1.0)
    r2 = m * math.sqrt(3.0) / math.sqrt(2.0 * n + m + 2.0)
    r12 = 3.0 / (2.0 * n + 2.0 * m + 1.0)

    sgn_sigma = 1.0 if sigma0 > 0.0 else -1.0
    if sigma0 * q1 < 0.0:
        theta0 = -(r12 / (r1 + r2)) * sgn_sigma
    else:
        theta0 = -(r1 + r2) * sgn_sigma

    quartic = QuarticSolution(q1=q1, m=m, n=n, r1=r1, r2=r2, r12=r12,
                              theta0=theta0, xi0=math.atan(theta0))
    resid = quartic.residual()
    scale = theta0 ** 4 + 6.0 * theta0 ** 2 + 8.0 * abs(q1 * theta0) + 3.0
    if abs(resid) > 1e-9 * max(1.0, scale):
        raise ArithmeticError(f"quartic residual {resid!r} out of bounds")

    rho = hyperbola_rho(quartic.xi0, sigma0)
    p = rho * math.cos(quartic.xi0)
    q = rho * math.sin(quartic.xi0)
    arc1 = ParabolicArc(p, q)
    arc2 = ParabolicArc(-p, -q)
    # slack admits the vertex-at-endpoint boundary case q0 == q_max
    if spirality_product(p, q) > 1e-9:
        raise ArithmeticError(f"control point ({p}, {q}) left the spiral region")
    return arc1, arc2, quartic
