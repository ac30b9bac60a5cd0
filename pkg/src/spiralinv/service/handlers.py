"""Document handlers shared by the HTTP endpoints and the CLI.

All geometry happens in the core package; these functions only convert
between documents and core types.  Angles convert from the document's unit
to radians on parse; every emitted angle is radians.
"""

from __future__ import annotations

import json
import math
from typing import Tuple

import numpy as np

from ..analysis import curvature_profile
from ..clothoid import approximate_clothoid
from ..elements import CurvatureElement
from ..solver import SolveOutcome, solve_g2_hermite
from . import schemas

_EXIT_CODES = {
    "Solvable": 0,
    "NoSpiral": 2,
    "BiarcOnly": 3,
    "NoShortSpiral": 4,
    "MethodNotApplicable": 5,
}
PARSE_ERROR_EXIT = 64


def exit_code_for(classification: str) -> int:
    return _EXIT_CODES[classification]


def elements_from_document(doc: schemas.ProblemDocument) -> Tuple[CurvatureElement, CurvatureElement]:
    to_rad = math.radians if doc.options.angle_unit == "deg" else float
    return (
        CurvatureElement(doc.start.x, doc.start.y, to_rad(doc.start.tau), doc.start.k),
        CurvatureElement(doc.end.x, doc.end.y, to_rad(doc.end.tau), doc.end.k),
    )


def _diagnostics_model(outcome: SolveOutcome) -> schemas.DiagnosticsModel:
    d = outcome.diagnostics
    return schemas.DiagnosticsModel(
        q=d.invariants.q,
        sigma=d.invariants.sigma,
        q_max=d.q_max,
        quartic_residual=d.quartic_residual,
        curvature_rate_max=d.curvature_rate_max,
    )


def check_problem(doc: schemas.ProblemDocument) -> schemas.CheckReport:
    start, end = elements_from_document(doc)
    outcome = solve_g2_hermite(start, end)
    tag = outcome.classification.tag.value
    return schemas.CheckReport(
        classification=tag,
        diagnostics=_diagnostics_model(outcome),
        exit_code=exit_code_for(tag),
    )


def solve_problem(doc: schemas.ProblemDocument) -> schemas.SolutionDocument:
    start, end = elements_from_document(doc)
    outcome = solve_g2_hermite(start, end)
    return solution_document(outcome, doc.options)


def solution_document(outcome: SolveOutcome, options: schemas.ProblemOptions) -> schemas.SolutionDocument:
    frame = outcome.frame
    problem = outcome.diagnostics.problem
    solutions = []
    ts = np.linspace(0.0, 1.0, options.samples)
    for sol in outcome.solutions:
        z0 = sol.params.z0
        moebius = schemas.MoebiusModel(
            r0=sol.params.r0,
            lambda0=sol.params.lambda0,
            z0="infinite" if z0 is None else (z0.real, z0.imag),
        )
        x_num, y_num, den = sol.coeffs
        polyline = None
        if "polyline" in options.outputs:
            xs, ys = sol.point(ts)
            polyline = [(float(x), float(y)) for x, y in zip(xs, ys)]
        profile_rows = None
        if "profile" in options.outputs:
            prof = curvature_profile(sol, options.samples)
            profile_rows = [
                (float(t), float(s), float(k)) for t, s, k in zip(prof.t, prof.s, prof.k)
            ]
        solutions.append(
            schemas.SolutionModel(
                index=sol.solution_index,
                control_point=(sol.arc.p, sol.arc.q),
                moebius=moebius,
                coefficients=schemas.CoefficientsModel(x_num=x_num, y_num=y_num, den=den),
                polyline=polyline,
                curvature_profile=profile_rows,
            )
        )
    return schemas.SolutionDocument(
        classification=outcome.classification.tag.value,
        diagnostics=_diagnostics_model(outcome),
        frame=schemas.FrameModel(c=frame.c, mu=frame.mu, origin=frame.origin),
        problem=schemas.NormalizedProblemModel(
            alpha=problem.alpha, beta=problem.beta, a=problem.a, b=problem.b
        ),
        solutions=solutions,
    )


def run_clothoid(req: schemas.ClothoidRequest):
    """Returns (report, approximation); the approximation carries plot data."""
    if not req.s_from < req.s_to:
        raise ValueError("need s_from < s_to")
    approx = approximate_clothoid(
        req.s_from, req.s_to, margin=req.margin, samples_per_span=req.samples_per_span
    )
    spans = [
        schemas.ClothoidSpanModel(
            s0=d.s0, s1=d.s1, classification=tag, deviation=d.per_solution
        )
        for d, tag in zip(approx.deviations, approx.classifications)
    ]
    table = None
    if req.include_table:
        table = [tuple(float(v) for v in row) for row in approx.curvature_table]
    report = schemas.ClothoidReport(
        breakpoints=list(approx.breakpoints),
        spans=spans,
        max_deviation=approx.max_deviation,
        curvature_table=table,
    )
    return report, approx


def document_json(model) -> str:
    """Canonical JSON text for any document model (byte-stable)."""
    return json.dumps(model.model_dump(mode="json"), indent=2) + "\n"
