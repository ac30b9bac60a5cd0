"""Shared fixtures: seeded random problem generation and the acceptance suite.

Random Solvable problems are built constructively (pick sigma, split the
invariant product across the two curvature factors) and then rejection-
checked through the classifier, so every case is honestly classified.
"""

import math

import numpy as np
import pytest

from spiralinv import (
    CurvatureElement,
    NormalizedProblem,
    classify,
    q_max,
    wrap_pi,
)

ACCEPTANCE_SEED = 20250809
ACCEPTANCE_COUNT = 10_000


def random_solvable_problems(n, seed=0):
    """n normalized problems that classify Solvable, deterministically seeded."""
    rng = np.random.default_rng(seed)
    problems = []
    while len(problems) < n:
        sigma = rng.uniform(0.08, 1.45) * (1.0 if rng.random() < 0.5 else -1.0)
        split = rng.uniform(-1.2, 1.2)
        alpha = 0.5 * sigma + split
        beta = 0.5 * sigma - split
        bound = q_max(sigma)
        q0 = bound * (1.0 + rng.exponential(1.5))
        if q0 < bound * 31.0:  # cap the tail so the quartic stays well-scaled
            continue
        product = q0 - math.sin(0.5 * sigma) ** 2  # (a + sin a)(b - sin b) < 0
        g = rng.uniform(-1.25, 1.25)
        u = math.sqrt(-product) * math.exp(g)
        v = math.sqrt(-product) * math.exp(-g)
        if sigma > 0:
            a = -math.sin(alpha) - u
            b = math.sin(beta) + v
        else:
            a = -math.sin(alpha) + u
            b = math.sin(beta) - v
        problem = NormalizedProblem(alpha, beta, a, b)
        if classify(problem).is_solvable:
            problems.append(problem)
    return problems


def chord_elements(problem):
    """The problem as curvature elements on the normalized chord."""
    return (
        CurvatureElement(-1.0, 0.0, problem.alpha, problem.a),
        CurvatureElement(1.0, 0.0, problem.beta, problem.b),
    )


def random_similarity(rng):
    """A random rotation + positive scaling + translation acting on elements."""
    scale = math.exp(rng.uniform(-2.0, 3.0))
    rot = rng.uniform(-math.pi, math.pi)
    tx, ty = rng.normal(0.0, 50.0, 2)
    cm, sm = math.cos(rot), math.sin(rot)

    def apply(e: CurvatureElement) -> CurvatureElement:
        x = scale * (cm * e.x - sm * e.y) + tx
        y = scale * (sm * e.x + cm * e.y) + ty
        return CurvatureElement(x, y, wrap_pi(e.tau + rot), e.k / scale)

    apply.scale = scale
    apply.rot = rot
    apply.shift = (tx, ty)
    return apply


@pytest.fixture(scope="session")
def acceptance_suite():
    """(problem, start, end) triples: 10^4 Solvable problems under random frames."""
    problems = random_solvable_problems(ACCEPTANCE_COUNT, seed=ACCEPTANCE_SEED)
    rng = np.random.default_rng(ACCEPTANCE_SEED + 1)
    cases = []
    for p in problems:
        transform = random_similarity(rng)
        start, end = (transform(e) for e in chord_elements(p))
        cases.append((p, start, end))
    return cases
