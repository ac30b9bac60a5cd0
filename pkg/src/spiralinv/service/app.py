"""HTTP facade over the solver.

Stateless JSON-in/JSON-out endpoints; infeasible problems are ordinary
results (the classification is the answer), only malformed documents and
invalid geometry are errors.
"""

from __future__ import annotations

import logging
import os

from fastapi import FastAPI, HTTPException

from ..elements import DegenerateChord
from . import schemas
from .handlers import check_problem, run_clothoid, solve_problem

logger = logging.getLogger("spiralinv.service")


def create_app() -> FastAPI:
    level = os.environ.get("SPIRALINV_LOG", "warning").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))

    app = FastAPI(
        title="spiralinv",
        description="G2 Hermite spiral arcs as 4th-order rational curves",
        version="0.1.0",
    )

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/check", response_model=schemas.CheckReport)
    def check(doc: schemas.ProblemDocument):
        try:
            report = check_problem(doc)
        except DegenerateChord as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        logger.info("check: %s", report.classification)
        return report

    @app.post("/solve", response_model=schemas.SolutionDocument, response_model_exclude_none=False)
    def solve(doc: schemas.ProblemDocument):
        try:
            result = solve_problem(doc)
        except DegenerateChord as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        logger.info("solve: %s (%d solutions)", result.classification, len(result.solutions))
        return result

    @app.post("/clothoid", response_model=schemas.ClothoidReport)
    def clothoid(req: schemas.ClothoidRequest):
        try:
            report, _ = run_clothoid(req)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        logger.info("clothoid: %d spans", len(report.spans))
        return report

    return app


app = create_app()
