"""Derivative-free search for extremal critical-point configurations.

Every degree-d polynomial with a non-critical point is affinely equivalent to
a monic one with P(0) = 0 evaluated at z = 0, and such a polynomial is
determined by its d-1 critical points. The search therefore optimizes over
the 2(d-1) real coordinates of the critical points, maximizing S (lower
bounds for the sup of S), minimizing T (upper bounds for the inf of T), or
maximizing the strong-form excess min|Q - 1/2| - (1/2 - 1/d), whose positive
values are counterexamples to the strong inequality (possible for d >= 5).

Configurations are canonicalized before evaluation (largest modulus scaled to
1, first maximal point rotated to the positive real axis); that map is an
affine conjugation, so the objective is unchanged and the search space loses
its flat scale/rotation directions from the report, if not from the walk.

The optimizer is multistart Nelder-Mead: starts are drawn from an annulus by
independent seeded streams, each start runs a bounded simplex descent plus
one restart from its incumbent at a quarter of the initial scale, and results
merge deterministically (ties to the lowest start index).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .poly import ComplexPolynomial, from_critical_points
from .rng import SplitMix64, derive_seed

OBJECTIVES = ("max-S", "min-T", "max-Tischler-excess")

#: Returned for degenerate configurations, signed against the objective.
PENALTY = 1e9

_MAX_DEGREE_SEARCH = 64


@dataclass(frozen=True)
class SearchConfig:
    """Search problem and budget."""

    degree: int
    objective: str
    starts: int = 64
    seed: int = 0
    max_evals: int = 20000
    simplex_scale: float = 0.25
    min_zeta_norm: float = 1e-4

    def __post_init__(self) -> None:
        if not 2 <= self.degree <= _MAX_DEGREE_SEARCH:
            raise ValueError(f"degree must be in [2, {_MAX_DEGREE_SEARCH}]")
        if self.objective not in OBJECTIVES:
            raise ValueError(
                f"objective must be one of {OBJECTIVES}, got {self.objective!r}"
            )
        if self.starts < 1:
            raise ValueError("starts must be >= 1")
        if self.max_evals < 1:
            raise ValueError("max_evals must be >= 1")
        if self.simplex_scale <= 0:
            raise ValueError("simplex_scale must be positive")
        if self.min_zeta_norm <= 0:
            raise ValueError("min_zeta_norm must be positive")


@dataclass(frozen=True)
class SearchResult:
    """Best configuration found and the trail leading to it.

    ``history`` records (global evaluation index, incumbent value) at each
    improvement; the incumbent sequence never worsens. ``best_zetas`` is in
    canonical normalization.
    """

    best_value: float
    best_zetas: tuple[complex, ...]
    best_polynomial: ComplexPolynomial
    evaluations: int
    per_start_bests: tuple[float, ...]
    history: tuple[tuple[int, float], ...]


def _is_maximizing(objective: str) -> bool:
    return objective in ("max-S", "max-Tischler-excess")


def penalty_value(objective: str) -> float:
    return -PENALTY if _is_maximizing(objective) else PENALTY


def canonicalize(zetas: tuple[complex, ...]) -> tuple[complex, ...]:
    """Scale/rotate so the first point of maximal modulus becomes exactly 1.

    Dividing every point by the selected one is an affine conjugation of the
    underlying polynomial, so all mean-value quotients are preserved. Order
    is kept; modulus ties resolve to the lowest index.
    """
    if not zetas:
        raise ValueError("cannot canonicalize an empty configuration")
    moduli = [abs(z) for z in zetas]
    scale = max(moduli)
    if scale == 0.0:
        raise ValueError("cannot canonicalize the zero configuration")
    pivot_index = moduli.index(scale)
    pivot = zetas[pivot_index]
    out = [z / pivot for z in zetas]
    out[pivot_index] = 1.0 + 0j
    return tuple(out)


def objective_eval(
    zetas: tuple[complex, ...],
    objective: str,
    min_zeta_norm: float = 1e-4,
) -> float:
    """Objective value of one critical-point configuration at z = 0.

    The polynomial is the monic antiderivative vanishing at 0, so its
    critical points are exactly ``zetas`` and P'(0) is the signed critical
    product; the quotients come out in closed form with no root solve.
    Configurations with any |zeta| < min_zeta_norm get the penalty value
    (P'(0) would degenerate), never an exception.
    """
    if objective not in OBJECTIVES:
        raise ValueError(f"objective must be one of {OBJECTIVES}, got {objective!r}")
    if not zetas:
        raise ValueError("empty configuration")
    degree = len(zetas) + 1
    if any(abs(z) < min_zeta_norm for z in zetas):
        return penalty_value(objective)
    P = from_critical_points(zetas, degree)
    dp0 = P.coeffs[1]
    qs = [P.evaluate(z) / (z * dp0) for z in zetas]
    if any(not cmath.isfinite(q) for q in qs):
        return penalty_value(objective)
    if objective == "max-S":
        return min(abs(q) for q in qs)
    if objective == "min-T":
        return max(abs(q) for q in qs)
    return min(abs(q - 0.5) for q in qs) - (0.5 - 1.0 / degree)


def _pack(zetas: tuple[complex, ...]) -> np.ndarray:
    flat = np.empty(2 * len(zetas))
    for i, z in enumerate(zetas):
        flat[2 * i] = z.real
        flat[2 * i + 1] = z.imag
    return flat


def _unpack(x: np.ndarray) -> tuple[complex, ...]:
    return tuple(complex(x[2 * i], x[2 * i + 1]) for i in range(len(x) // 2))


def run_search(cfg: SearchConfig) -> SearchResult:
    """Multistart Nelder-Mead over critical-point space; deterministic in cfg."""
    maximizing = _is_maximizing(cfg.objective)
    sign = -1.0 if maximizing else 1.0
    n = 2 * (cfg.degree - 1)

    evaluations = 0
    incumbent: float | None = None
    incumbent_x: np.ndarray | None = None
    start_best: float | None = None
    history: list[tuple[int, float]] = []
    per_start_bests: list[float] = []

    def improves(value: float, current: float | None) -> bool:
        if current is None:
            return True
        return value > current if maximizing else value < current

    def evaluate(x: np.ndarray) -> float:
        nonlocal evaluations, incumbent, incumbent_x, start_best
        evaluations += 1
        zetas = _unpack(x)
        try:
            value = objective_eval(
                canonicalize(zetas), cfg.objective, cfg.min_zeta_norm
            )
        except ValueError:
            value = penalty_value(cfg.objective)
        if abs(value) < PENALTY:
            if improves(value, start_best):
                start_best = value
            if improves(value, incumbent):
                incumbent = value
                incumbent_x = np.array(x, dtype=float)
                history.append((evaluations, value))
        return sign * value

    for start in range(cfg.starts):
        stream = SplitMix64(derive_seed(cfg.seed, start))
        zetas0 = tuple(
            stream.annulus_point(cfg.min_zeta_norm, 1.0)
            for _ in range(cfg.degree - 1)
        )
        x0 = _pack(zetas0)
        start_best = None

        budget = cfg.max_evals
        scale = cfg.simplex_scale
        best_x = x0
        for _phase in range(2):
            if budget < n + 2:
                break
            simplex = np.tile(best_x, (n + 1, 1))
            for i in range(n):
                simplex[i + 1, i] += scale
            used_before = evaluations
            res = minimize(
                evaluate,
                best_x,
                method="Nelder-Mead",
                options={
                    "initial_simplex": simplex,
                    "maxfev": budget,
                    "xatol": 1e-10,
                    "fatol": 1e-12,
                },
            )
            budget -= evaluations - used_before
            best_x = res.x
            scale *= 0.25

        per_start_bests.append(
            start_best if start_best is not None else penalty_value(cfg.objective)
        )

    if incumbent is None or incumbent_x is None:
        raise RuntimeError("search produced no valid evaluation")

    best_zetas = canonicalize(_unpack(incumbent_x))
    best_polynomial = from_critical_points(best_zetas, cfg.degree)
    return SearchResult(
        best_value=incumbent,
        best_zetas=best_zetas,
        best_polynomial=best_polynomial,
        evaluations=evaluations,
        per_start_bests=tuple(per_start_bests),
        history=tuple(history),
    )
