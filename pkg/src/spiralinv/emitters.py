"""SVG and CSV emitters for solved curves and curvature data.

SVG output is a visual artifact only (the JSON document carries the exact
coefficients), sampled at a fixed density with fixed float formatting so
identical inputs give identical bytes.  Paths use only M/L commands.
"""

from __future__ import annotations

import io
import xml.etree.ElementTree as ET
from typing import Sequence

import numpy as np

from .analysis import Lense, lense_of
from .elements import map_back
from .formatting import fmt_float
from .solver import SolveOutcome

CURVE_SAMPLES = 256
_COLORS = ("#c0392b", "#2471a3")


def _fmt6(x: float) -> str:
    v = float(x)
    if v == 0.0:
        v = 0.0
    return format(v, ".6g")


def _path_d(points) -> str:
    parts = [f"M {_fmt6(points[0][0])} {_fmt6(points[0][1])}"]
    parts.extend(f"L {_fmt6(x)} {_fmt6(y)}" for x, y in points[1:])
    return " ".join(parts)


class _Scene:
    """Collects polylines in model coordinates, then maps them into a viewport."""

    def __init__(self):
        self.items = []

    def add(self, points, stroke, width=1.5, dashed=False):
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if len(pts) >= 2:
            self.items.append((pts, stroke, width, dashed))

    def to_svg(self, size=640) -> str:
        allpts = np.vstack([p for p, *_ in self.items])
        lo = allpts.min(axis=0)
        hi = allpts.max(axis=0)
        span = np.maximum(hi - lo, 1e-9)
        pad = 0.06 * float(span.max())
        lo -= pad
        hi += pad
        span = hi - lo
        scale = size / float(span.max())
        width = span[0] * scale
        height = span[1] * scale

        def mapped(pts):
            x = (pts[:, 0] - lo[0]) * scale
            y = height - (pts[:, 1] - lo[1]) * scale  # flip: SVG y grows downward
            return np.column_stack((x, y))

        root = ET.Element("svg", {
            "xmlns": "http://www.w3.org/2000/svg",
            "version": "1.1",
            "width": _fmt6(width),
            "height": _fmt6(height),
            "viewBox": f"0 0 {_fmt6(width)} {_fmt6(height)}",
        })
        for pts, stroke, w, dashed in self.items:
            attrs = {
                "d": _path_d(mapped(pts)),
                "fill": "none",
                "stroke": stroke,
                "stroke-width": _fmt6(w),
            }
            if dashed:
                attrs["stroke-dasharray"] = "6 4"
            ET.SubElement(root, "path", attrs)
        buf = io.BytesIO()
        ET.ElementTree(root).write(buf, encoding="utf-8", xml_declaration=True)
        return buf.getvalue().decode("utf-8") + "\n"


def _lense_polylines(lense: Lense, frame, reach: float):
    out = []
    for arc in (lense.arc_start, lense.arc_end):
        if arc.through_infinity:
            xs = np.linspace(-reach, -1.0, 64)
            left = np.column_stack((xs, np.zeros_like(xs)))
            xs = np.linspace(1.0, reach, 64)
            right = np.column_stack((xs, np.zeros_like(xs)))
            segs = [left, right]
        else:
            segs = [arc.points(128)]
        for seg in segs:
            out.append(np.array([map_back(frame, p) for p in seg]))
    return out


def solution_svg(outcome: SolveOutcome, samples: int = CURVE_SAMPLES) -> str:
    """SVG of a solved problem: chord, control polygons, both curves, lense."""
    if not outcome.solutions:
        raise ValueError("outcome has no solutions to draw")
    frame = outcome.frame
    scene = _Scene()
    a = map_back(frame, (-1.0, 0.0))
    b = map_back(frame, (1.0, 0.0))
    scene.add([a, b], stroke="#888888", width=1.0)

    ts = np.linspace(0.0, 1.0, samples)
    curve_pts = []
    for sol, color in zip(outcome.solutions, _COLORS):
        ctrl = map_back(frame, (sol.arc.p, sol.arc.q))
        scene.add([a, ctrl, b], stroke="#bbbbbb", width=0.75)
        x, y = sol.point(ts)
        pts = np.column_stack((x, y))
        curve_pts.append(pts)
        scene.add(pts, stroke=color, width=1.75)

    # reach (in chord units) for drawing the infinite lense arcs, if any
    reach = 1.0
    for sol in outcome.solutions:
        nx, ny = sol.point_normalized(ts)
        reach = max(reach, float(np.max(np.hypot(nx, ny))) + 2.0)
    lense = lense_of(outcome.diagnostics.problem)
    for poly in _lense_polylines(lense, frame, reach):
        scene.add(poly, stroke="#27ae60", width=1.0, dashed=True)
    return scene.to_svg()


def clothoid_svg(reference: np.ndarray, approximations: Sequence[np.ndarray]) -> str:
    """SVG overlay of the clothoid (dashed) and approximating curves."""
    scene = _Scene()
    scene.add(reference, stroke="#444444", width=1.0, dashed=True)
    for i, pts in enumerate(approximations):
        scene.add(pts, stroke=_COLORS[i % len(_COLORS)], width=1.5)
    return scene.to_svg()


def profile_csv(rows, header) -> str:
    """CSV text with canonical float formatting; one row per sample."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt_float(v) if isinstance(v, float) else str(v) for v in row))
    return "\n".join(lines) + "\n"


def solution_csv(outcome: SolveOutcome, profiles) -> str:
    """Curvature-profile CSV for a solved outcome: solution, t, s, k."""
    rows = []
    for sol, profile in zip(outcome.solutions, profiles):
        for t, s, k in zip(profile.t, profile.s, profile.k):
            rows.append((sol.solution_index, float(t), float(s), float(k)))
    return profile_csv(rows, header=("solution", "t", "s", "k"))


def clothoid_csv(table: np.ndarray) -> str:
    """Curvature comparison CSV: s, k_clothoid, k_solution1, k_solution2."""
    rows = [tuple(float(v) for v in row) for row in table]
    return profile_csv(rows, header=("s", "k_clothoid", "k_solution1", "k_solution2"))
