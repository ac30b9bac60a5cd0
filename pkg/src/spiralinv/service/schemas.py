"""Request/response document models.

Documents parse strictly (unknown fields rejected, angle unit explicit) and
serialize deterministically: every float is written as a decimal string with
17 significant digits (round-trippable for IEEE doubles), fields keep
declaration order.  All output angles are radians regardless of the input
unit.
"""

from __future__ import annotations

from typing import List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, PlainSerializer
from typing_extensions import Annotated

from ..formatting import fmt_float

F17 = Annotated[float, PlainSerializer(fmt_float, return_type=str, when_used="json")]

Point = Tuple[F17, F17]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ElementModel(_Strict):
    """A curvature element; tau is in the document's angle unit."""

    x: F17
    y: F17
    tau: F17
    k: F17


class ProblemOptions(_Strict):
    angle_unit: Literal["deg", "rad"]
    samples: int = Field(default=256, ge=2, le=100_000)
    outputs: Tuple[Literal["polyline", "profile"], ...] = ("polyline", "profile")


class ProblemDocument(_Strict):
    start: ElementModel
    end: ElementModel
    options: ProblemOptions


class DiagnosticsModel(_Strict):
    q: F17
    sigma: F17
    q_max: Optional[F17] = None
    quartic_residual: Optional[F17] = None
    curvature_rate_max: Optional[Tuple[F17, ...]] = None


class FrameModel(_Strict):
    c: F17
    mu: F17
    origin: Point


class NormalizedProblemModel(_Strict):
    alpha: F17
    beta: F17
    a: F17
    b: F17


class MoebiusModel(_Strict):
    r0: F17
    lambda0: F17
    z0: Union[Point, Literal["infinite"]]


class CoefficientsModel(_Strict):
    """Monomial coefficients (ascending, degree 4) of the normalized curve."""

    x_num: Tuple[F17, F17, F17, F17, F17]
    y_num: Tuple[F17, F17, F17, F17, F17]
    den: Tuple[F17, F17, F17, F17, F17]


class SolutionModel(_Strict):
    index: int
    control_point: Point
    moebius: MoebiusModel
    coefficients: CoefficientsModel
    polyline: Optional[List[Point]] = None
    curvature_profile: Optional[List[Tuple[F17, F17, F17]]] = None  # (t, s, k)


class SolutionDocument(_Strict):
    format: Literal["spiralinv-solution/1"] = "spiralinv-solution/1"
    classification: Literal[
        "NoSpiral", "BiarcOnly", "NoShortSpiral", "MethodNotApplicable", "Solvable"
    ]
    diagnostics: DiagnosticsModel
    frame: FrameModel
    problem: NormalizedProblemModel
    solutions: List[SolutionModel]


class CheckReport(_Strict):
    format: Literal["spiralinv-check/1"] = "spiralinv-check/1"
    classification: Literal[
        "NoSpiral", "BiarcOnly", "NoShortSpiral", "MethodNotApplicable", "Solvable"
    ]
    diagnostics: DiagnosticsModel
    exit_code: int


class ClothoidRequest(_Strict):
    s_from: F17
    s_to: F17
    margin: float = Field(default=0.99, gt=0.0, le=1.0)
    samples_per_span: int = Field(default=1000, ge=16, le=100_000)
    include_table: bool = False


class ClothoidSpanModel(_Strict):
    s0: F17
    s1: F17
    classification: str
    deviation: Tuple[F17, ...]


class ClothoidReport(_Strict):
    format: Literal["spiralinv-clothoid/1"] = "spiralinv-clothoid/1"
    breakpoints: List[F17]
    spans: List[ClothoidSpanModel]
    max_deviation: F17
    curvature_table: Optional[List[Tuple[F17, F17, F17, F17]]] = None
