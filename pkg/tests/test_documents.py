import json
import math
import re
import xml.etree.ElementTree as ET

import numpy as np
import pytest
from pydantic import ValidationError

from spiralinv.emitters import clothoid_csv, solution_csv, solution_svg
from spiralinv.formatting import fmt_float
from spiralinv import CurvatureElement, curvature_profile, map_back, solve_g2_hermite
from spiralinv.elements import ChordFrame
from spiralinv.service import schemas
from spiralinv.service.handlers import document_json, solve_problem

UTURN_DOC = {
    "start": {"x": -1, "y": 0, "tau": -180, "k": 2.5},
    "end": {"x": 1, "y": 0, "tau": 120, "k": 0.5},
    "options": {"angle_unit": "deg", "samples": 64},
}

_NUM = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_PATH_RE = re.compile(rf"^M {_NUM} {_NUM}(?: L {_NUM} {_NUM})+$")
_SVG_NS = "{http://www.w3.org/2000/svg}"


def assert_valid_svg(text):
    root = ET.fromstring(text)
    assert root.tag == f"{_SVG_NS}svg"
    paths = root.findall(f".//{_SVG_NS}path")
    assert paths
    for p in paths:
        assert _PATH_RE.match(p.get("d")), p.get("d")[:80]


class TestFloatFormat:
    def test_round_trip(self):
        for v in (0.1, -2.5e-17, math.pi, 1.0296486086, 0.0, -0.0, 1e300):
            assert float(fmt_float(v)) == (0.0 if v == 0 else v)

    def test_negative_zero_normalized(self):
        assert fmt_float(-0.0) == "0"

    def test_seventeen_digits(self):
        assert fmt_float(0.1) == "0.10000000000000001"


class TestProblemDocument:
    def test_strict_parsing(self):
        schemas.ProblemDocument.model_validate(UTURN_DOC)
        bad = dict(UTURN_DOC)
        bad["surprise"] = 1
        with pytest.raises(ValidationError):
            schemas.ProblemDocument.model_validate(bad)
        missing_unit = json.loads(json.dumps(UTURN_DOC))
        del missing_unit["options"]["angle_unit"]
        with pytest.raises(ValidationError):
            schemas.ProblemDocument.model_validate(missing_unit)

    def test_angle_unit_changes_only_parsing(self):
        doc_deg = schemas.ProblemDocument.model_validate(UTURN_DOC)
        doc_rad = schemas.ProblemDocument.model_validate(
            {
                "start": {"x": -1, "y": 0, "tau": math.radians(-180), "k": 2.5},
                "end": {"x": 1, "y": 0, "tau": math.radians(120), "k": 0.5},
                "options": {"angle_unit": "rad", "samples": 64},
            }
        )
        assert document_json(solve_problem(doc_deg)) == document_json(solve_problem(doc_rad))


class TestSolutionDocument:
    def test_deterministic_bytes(self):
        doc = schemas.ProblemDocument.model_validate(UTURN_DOC)
        assert document_json(solve_problem(doc)) == document_json(solve_problem(doc))

    def test_round_trip_reproduces_polyline(self):
        doc = schemas.ProblemDocument.model_validate(UTURN_DOC)
        text = document_json(solve_problem(doc))
        parsed = schemas.SolutionDocument.model_validate(json.loads(text))
        frame = ChordFrame(parsed.frame.c, parsed.frame.mu, tuple(parsed.frame.origin))
        ts = np.linspace(0.0, 1.0, doc.options.samples)
        for sol in parsed.solutions:
            den = np.polyval(sol.coefficients.den[::-1], ts)
            x = np.polyval(sol.coefficients.x_num[::-1], ts) / den
            y = np.polyval(sol.coefficients.y_num[::-1], ts) / den
            rebuilt = np.array([map_back(frame, (xi, yi)) for xi, yi in zip(x, y)])
            stored = np.asarray(sol.polyline, dtype=float)
            assert np.max(np.abs(rebuilt - stored)) <= 1e-9

    def test_unsolvable_document(self):
        doc = schemas.ProblemDocument.model_validate(
            {
                "start": {"x": -1, "y": 0, "tau": 0.5, "k": 2.0},
                "end": {"x": 1, "y": 0, "tau": 0.4, "k": 1.0},
                "options": {"angle_unit": "rad"},
            }
        )
        result = solve_problem(doc)
        assert result.classification == "NoSpiral"
        assert result.solutions == []
        assert result.diagnostics.quartic_residual is None

    def test_output_selection(self):
        payload = json.loads(json.dumps(UTURN_DOC))
        payload["options"]["outputs"] = ["polyline"]
        result = solve_problem(schemas.ProblemDocument.model_validate(payload))
        assert result.solutions[0].polyline is not None
        assert result.solutions[0].curvature_profile is None


class TestEmitters:
    def outcome(self):
        return solve_g2_hermite(
            CurvatureElement(-1, 0, math.radians(-180), 2.5),
            CurvatureElement(1, 0, math.radians(120), 0.5),
        )

    def test_svg_valid_and_deterministic(self):
        out = self.outcome()
        text = solution_svg(out, samples=128)
        assert_valid_svg(text)
        assert text == solution_svg(out, samples=128)
        # chord + 2 control polygons + 2 curves + 2 lense arcs (one split in two)
        root = ET.fromstring(text)
        assert len(root.findall(f"{_SVG_NS}path")) >= 6

    def test_infinite_lense_arc_drawn(self):
        # alpha = -pi: one lense support is the chord complement through infinity
        assert_valid_svg(solution_svg(self.outcome(), samples=64))

    def test_solution_csv(self):
        out = self.outcome()
        profiles = [curvature_profile(s, 16) for s in out.solutions]
        text = solution_csv(out, profiles)
        lines = text.strip().split("\n")
        assert lines[0] == "solution,t,s,k"
        assert len(lines) == 1 + 2 * 16
        row = lines[1].split(",")
        assert row[0] == "1"
        assert float(row[1]) == 0.0
        assert float(row[3]) == pytest.approx(2.5, rel=1e-9)

    def test_clothoid_csv(self):
        table = np.array([[0.0, 0.0, 0.1, -0.1], [1.0, 1.0, 0.9, 1.1]])
        text = clothoid_csv(table)
        lines = text.strip().split("\n")
        assert lines[0] == "s,k_clothoid,k_solution1,k_solution2"
        assert len(lines) == 3
