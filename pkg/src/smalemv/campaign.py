"""Random-polynomial verification campaigns.

Samples polynomials from a seeded coefficient distribution, analyzes each one,
and aggregates how the proven bounds fared: Smale's S <= 4, the dual
T >= 1/(d*4^d), the strong-form count (informational for d >= 5, expected
zero for d <= 4), plus the normal-form proof-chain residuals and the
containment of 0 and the critical points in the sublevel set. Violation
counters use the documented slacks, so a nonzero count signals an
implementation bug, not a discovered counterexample.

Samples that cannot be analyzed (root solver did not converge, evaluation
point critically degenerate, degenerate leading coefficient) are counted and
skipped; campaigns never abort on a bad draw. Everything is deterministic in
(seed, config): each degree gets its own derived stream, and samples run in
index order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .levelset import containment_check, max_critical_value
from .meanvalue import EPS_CRIT, analyze
from .poly import MAX_DEGREE, ComplexPolynomial, normalize_for_theorem
from .roots import (
    DEFAULT_SOLVER_CONFIG,
    SolverConfig,
    SolverNotConvergedError,
    critical_points,
)
from .rng import SplitMix64, derive_seed

DISTRIBUTIONS = ("unit-gaussian-complex", "unit-disk-uniform")
POINT_POLICIES = ("origin-after-normalization", "random-non-critical")

#: Slack constants for the violation counters.
SMALE_SLACK = 1e-8
DUAL_SLACK = 1e-12
TISCHLER_SLACK = 1e-8


@dataclass(frozen=True)
class CampaignConfig:
    degrees: tuple[int, ...]
    samples_per_degree: int
    coefficient_distribution: str = "unit-gaussian-complex"
    seed: int = 0
    point_policy: str = "origin-after-normalization"

    def __post_init__(self) -> None:
        degrees = tuple(int(d) for d in self.degrees)
        if not degrees:
            raise ValueError("degrees must not be empty")
        if any(not 2 <= d <= MAX_DEGREE for d in degrees):
            raise ValueError(f"degrees must lie in [2, {MAX_DEGREE}]")
        object.__setattr__(self, "degrees", degrees)
        if self.samples_per_degree < 1:
            raise ValueError("samples_per_degree must be >= 1")
        if self.coefficient_distribution not in DISTRIBUTIONS:
            raise ValueError(f"unknown distribution {self.coefficient_distribution!r}")
        if self.point_policy not in POINT_POLICIES:
            raise ValueError(f"unknown point policy {self.point_policy!r}")


@dataclass
class DegreeSummary:
    """Aggregates for one degree.

    ``max_c1_residual`` / ``min_koebe_ratio`` / ``containment_failures`` are
    filled only under the origin-after-normalization policy, where the
    normal-form proof quantities exist.
    """

    degree: int
    count: int = 0
    violations_smale: int = 0
    violations_dual: int = 0
    min_dual_margin: float = math.inf
    max_s: float = -math.inf
    min_t: float = math.inf
    tischler_violations: int = 0
    skipped_nonconverged: int = 0
    max_c1_residual: float = 0.0
    min_koebe_ratio: float = math.inf
    containment_failures: int = 0


@dataclass
class CampaignSummary:
    config: CampaignConfig
    per_degree: tuple[DegreeSummary, ...] = field(default_factory=tuple)

    @property
    def total_bound_violations(self) -> int:
        return sum(d.violations_smale + d.violations_dual for d in self.per_degree)


SampleSink = Callable[[dict], None]


def _draw_polynomial(
    stream: SplitMix64, degree: int, distribution: str
) -> ComplexPolynomial:
    draw = (
        stream.gaussian_complex
        if distribution == "unit-gaussian-complex"
        else stream.disk_point
    )
    while True:
        coeffs = [draw() for _ in range(degree + 1)]
        scale = max(abs(c) for c in coeffs)
        # A relatively tiny leading coefficient is a degenerate degree draw.
        if scale > 0 and abs(coeffs[-1]) > 1e-12 * scale:
            return ComplexPolynomial(tuple(coeffs))


def _pick_noncritical_point(
    stream: SplitMix64, P: ComplexPolynomial
) -> complex | None:
    dp = P.derivative()
    floor = EPS_CRIT * (1.0 + P.coefficient_scale)
    for _ in range(100):
        z = stream.gaussian_complex()
        if abs(dp.evaluate(z)) >= floor:
            return z
    return None


def run_campaign(
    cfg: CampaignConfig,
    solver: SolverConfig = DEFAULT_SOLVER_CONFIG,
    sample_sink: SampleSink | None = None,
) -> CampaignSummary:
    """Run the campaign; optionally stream one row dict per analyzed sample."""
    summaries = []
    normalized_policy = cfg.point_policy == "origin-after-normalization"
    for degree in cfg.degrees:
        summary = DegreeSummary(degree=degree)
        stream = SplitMix64(derive_seed(cfg.seed, degree))
        for index in range(cfg.samples_per_degree):
            try:
                raw = _draw_polynomial(stream, degree, cfg.coefficient_distribution)
                if normalized_policy:
                    P, _maps = normalize_for_theorem(raw, 0j)
                    z = 0j
                else:
                    P = raw
                    picked = _pick_noncritical_point(stream, P)
                    if picked is None:
                        summary.skipped_nonconverged += 1
                        continue
                    z = picked
                crit = critical_points(P, solver)
                report = analyze(P, z, crit)
            except (
                SolverNotConvergedError,
                ValueError,  # covers ZCriticalError and degenerate constructions
                ZeroDivisionError,
                OverflowError,
            ):
                summary.skipped_nonconverged += 1
                continue

            summary.count += 1
            if report.s_value > 4.0 + SMALE_SLACK:
                summary.violations_smale += 1
            if report.t_value < report.dual_bound - DUAL_SLACK:
                summary.violations_dual += 1
            if report.tischler_value > report.tischler_bound + TISCHLER_SLACK:
                summary.tischler_violations += 1
            summary.min_dual_margin = min(summary.min_dual_margin, report.dual_margin)
            summary.max_s = max(summary.max_s, report.s_value)
            summary.min_t = min(summary.min_t, report.t_value)

            containment_ok = None
            if report.proof is not None:
                summary.max_c1_residual = max(
                    summary.max_c1_residual, report.proof.c1_residual
                )
                summary.min_koebe_ratio = min(
                    summary.min_koebe_ratio, report.proof.min_ratio
                )
                containment = containment_check(P, crit, max_critical_value(P, crit))
                containment_ok = containment.all_ok
                if not containment.all_ok:
                    summary.containment_failures += 1

            if sample_sink is not None:
                row = {
                    "degree": degree,
                    "sample": index,
                    "s": report.s_value,
                    "t": report.t_value,
                    "tischler": report.tischler_value,
                    "smale_margin": report.smale_margin,
                    "dual_margin": report.dual_margin,
                    "c1_residual": (
                        report.proof.c1_residual if report.proof else None
                    ),
                    "min_ratio": (report.proof.min_ratio if report.proof else None),
                    "containment_ok": containment_ok,
                }
                sample_sink(row)
        summaries.append(summary)
    return CampaignSummary(config=cfg, per_degree=tuple(summaries))
