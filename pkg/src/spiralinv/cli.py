"""Command-line client over the service handlers.

Subcommands: ``check``, ``solve``, ``clothoid`` and ``serve``.  The CLI is a
thin layer: documents are validated by the same pydantic schemas the HTTP
service uses, and all geometry lives in the core package.

Exit codes: 0 solvable/ok, 2 NoSpiral, 3 BiarcOnly, 4 NoShortSpiral,
5 MethodNotApplicable, 64 parse/validation error.  Set SPIRALINV_LOG to
debug/info/warning/error for log verbosity.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np
from pydantic import ValidationError

from .analysis import curvature_profile
from .clothoid import clothoid_positions
from .elements import DegenerateChord
from .emitters import clothoid_csv, clothoid_svg, solution_csv, solution_svg
from .formatting import fmt_float
from .service import schemas
from .service.handlers import (
    PARSE_ERROR_EXIT,
    check_problem,
    document_json,
    elements_from_document,
    exit_code_for,
    run_clothoid,
    solution_document,
)
from .solver import solve_g2_hermite

logger = logging.getLogger("spiralinv.cli")


def _load_problem(path: str) -> schemas.ProblemDocument:
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SystemExit(_parse_error(f"cannot read problem document: {exc}"))
    try:
        return schemas.ProblemDocument.model_validate(raw)
    except ValidationError as exc:
        raise SystemExit(_parse_error(f"invalid problem document:\n{exc}"))


def _parse_error(message: str) -> int:
    print(message, file=sys.stderr)
    return PARSE_ERROR_EXIT


def _cmd_check(args) -> int:
    doc = _load_problem(args.problem)
    try:
        report = check_problem(doc)
    except DegenerateChord as exc:
        return _parse_error(f"degenerate problem: {exc}")
    d = report.diagnostics
    print(f"classification: {report.classification}")
    print(f"Q      = {fmt_float(d.q)}")
    print(f"sigma  = {fmt_float(d.sigma)} rad")
    print(f"q_max  = {fmt_float(d.q_max) if d.q_max is not None else 'n/a'}")
    return report.exit_code


def _cmd_solve(args) -> int:
    doc = _load_problem(args.problem)
    start, end = elements_from_document(doc)
    try:
        outcome = solve_g2_hermite(start, end)
    except DegenerateChord as exc:
        return _parse_error(f"degenerate problem: {exc}")
    result = solution_document(outcome, doc.options)
    Path(args.out).write_text(document_json(result))
    logger.info("wrote %s", args.out)
    code = exit_code_for(result.classification)
    if code != 0:
        print(f"not solvable: {result.classification}", file=sys.stderr)
        return code
    if args.svg:
        Path(args.svg).write_text(solution_svg(outcome, samples=doc.options.samples))
    if args.csv:
        profiles = [curvature_profile(s, doc.options.samples) for s in outcome.solutions]
        Path(args.csv).write_text(solution_csv(outcome, profiles))
    return 0


def _cmd_clothoid(args) -> int:
    try:
        req = schemas.ClothoidRequest(
            s_from=args.s_from, s_to=args.s_to, margin=args.margin, include_table=True
        )
    except ValidationError as exc:
        return _parse_error(f"invalid clothoid request:\n{exc}")
    try:
        report, approx = run_clothoid(req)
    except ValueError as exc:
        return _parse_error(f"invalid clothoid request: {exc}")
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    trimmed = report.model_copy(update={"curvature_table": None})
    (outdir / "clothoid_report.json").write_text(document_json(trimmed))
    (outdir / "clothoid_curvature.csv").write_text(clothoid_csv(approx.curvature_table))
    reference = clothoid_positions(np.linspace(req.s_from, req.s_to, 512))
    curves = []
    for outcome in approx.outcomes:
        ts = np.linspace(0.0, 1.0, 128)
        for sol in outcome.solutions:
            x, y = sol.point(ts)
            curves.append(np.column_stack((x, y)))
    (outdir / "clothoid.svg").write_text(clothoid_svg(reference, curves))
    print(f"spans: {len(report.spans)}  max deviation: {fmt_float(report.max_deviation)}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("spiralinv.service.app:app", host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spiralinv",
        description="G2 Hermite spiral arcs as 4th-order rational curves",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="classify solvability of a problem document")
    p_check.add_argument("problem", help="problem JSON file")
    p_check.set_defaults(func=_cmd_check)

    p_solve = sub.add_parser("solve", help="solve a problem document")
    p_solve.add_argument("problem", help="problem JSON file")
    p_solve.add_argument("--out", required=True, help="solution JSON output path")
    p_solve.add_argument("--svg", help="optional SVG plot path")
    p_solve.add_argument("--csv", help="optional curvature CSV path")
    p_solve.set_defaults(func=_cmd_solve)

    p_clot = sub.add_parser("clothoid", help="run the clothoid approximation benchmark")
    p_clot.add_argument("--from", dest="s_from", type=float, required=True, help="start arc length")
    p_clot.add_argument("--to", dest="s_to", type=float, required=True, help="end arc length")
    p_clot.add_argument("--margin", type=float, default=0.99, help="greedy span margin in (0, 1]")
    p_clot.add_argument("--out", required=True, help="output directory")
    p_clot.set_defaults(func=_cmd_clothoid)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    level = os.environ.get("SPIRALINV_LOG", "warning").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help, 2 for usage errors; 2 collides with
        # the NoSpiral classification code, so usage errors map to 64
        return 0 if exc.code in (0, None) else PARSE_ERROR_EXIT
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else PARSE_ERROR_EXIT


if __name__ == "__main__":
    sys.exit(main())
