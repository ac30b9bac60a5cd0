"""Service boundary: pydantic document schemas, handlers, FastAPI app."""

from .schemas import (
    CheckReport,
    ClothoidReport,
    ClothoidRequest,
    DiagnosticsModel,
    ElementModel,
    ProblemDocument,
    ProblemOptions,
    SolutionDocument,
    SolutionModel,
)
from .handlers import check_problem, run_clothoid, solve_problem, exit_code_for, document_json

__all__ = [
    "CheckReport",
    "ClothoidReport",
    "ClothoidRequest",
    "DiagnosticsModel",
    "ElementModel",
    "ProblemDocument",
    "ProblemOptions",
    "SolutionDocument",
    "SolutionModel",
    "check_problem",
    "run_clothoid",
    "solve_problem",
    "exit_code_for",
    "document_json",
]
