"""Mean-value quotients of a polynomial and the bounds they obey.

For a critical point zeta of P and a non-critical z, the quotient

    Q(P, z, zeta) = (P(z) - P(zeta)) / ((z - zeta) * P'(z))

is invariant under affine conjugation of P and simultaneous affine motion of
z and zeta. Over the distinct critical points, S(P, z) = min|Q| and
T(P, z) = max|Q| are the two extremal statistics: Smale's theorem gives
S <= 4, the dual theorem gives T >= 1/(d*4^d), and the strong-form quantity
min|Q - 1/2| is compared against 1/2 - 1/d (valid for d <= 4 only).

``analyze`` packages all of that into a report. When the input is in exact
normal form (monic, P(0) = 0, z = 0) the report also carries the proof-chain
quantities: R = max|P(zeta_j)|^(1/d), the Koebe ratios R/|zeta_j| (each at
least 1/4), and the residual of the critical-product identity for P'(0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .poly import ComplexPolynomial
from .roots import RootSet, SolverNotConvergedError, c1_residual

#: |P'(z)| below this times (1 + max|c_k|) makes the quotient meaningless.
EPS_CRIT = 1e-12

_EPS_COINCIDENT = 1e-15


class ZCriticalError(ValueError):
    """The evaluation point is (numerically) a critical point of P."""


class CoincidentPointsError(ValueError):
    """z and zeta coincide to working precision."""


@dataclass(frozen=True)
class QValue:
    """Quotient at one critical point."""

    zeta: complex
    q: complex
    abs_q: float


@dataclass(frozen=True)
class ProofQuantities:
    """Normal-form quantities behind the dual bound.

    ``R`` is max_j |P(zeta_j)|^(1/d); ``ratios`` are R/|zeta_j| per distinct
    critical point (the Koebe one-quarter argument forces each >= 1/4);
    ``c1_residual`` measures P'(0) against d*(-1)^(d-1)*prod(zeta_j).
    """

    R: float
    ratios: tuple[float, ...]
    min_ratio: float
    c1_residual: float


@dataclass(frozen=True)
class MeanValueReport:
    """S, T, and companions for one (P, z) pair.

    ``q_values`` are listed over the distinct critical points in (re, im)
    lexicographic order; ``s_argmin``/``t_argmax`` index into that list with
    ties broken by the lowest index. ``proof`` is present only when P was in
    exact normal form and z = 0.
    """

    degree: int
    q_values: tuple[QValue, ...]
    s_value: float
    s_argmin: int
    t_value: float
    t_argmax: int
    tischler_value: float
    smale_margin: float
    dual_bound: float
    dual_margin: float
    tischler_bound: float
    proof: ProofQuantities | None


def dual_lower_bound(degree: int) -> float:
    """The proven floor 1/(d*4^d) for T(P, z)."""
    return 1.0 / (degree * 4.0**degree)


def q_value(P: ComplexPolynomial, z: complex, zeta: complex) -> complex:
    """Q(P, z, zeta); rejects critical z and coincident points."""
    z = complex(z)
    zeta = complex(zeta)
    dpz = P.derivative().evaluate(z)
    if abs(dpz) < EPS_CRIT * (1.0 + P.coefficient_scale):
        raise ZCriticalError(f"|P'({z})| = {abs(dpz):.3e} is below the critical threshold")
    sep = z - zeta
    if abs(sep) < _EPS_COINCIDENT * (1.0 + max(abs(z), abs(zeta))):
        raise CoincidentPointsError(f"z = {z} and zeta = {zeta} coincide")
    return (P.evaluate(z) - P.evaluate(zeta)) / (sep * dpz)


def _root_magnitude(value: float, degree: int) -> float:
    # exp(log|.|/d) avoids pow-of-tiny underflow; 0 stays 0.
    if value == 0.0:
        return 0.0
    return math.exp(math.log(value) / degree)


def analyze(P: ComplexPolynomial, z: complex, crit: RootSet) -> MeanValueReport:
    """Full mean-value report for P at z given its solved critical points.

    S and T range over the distinct critical points (multiplicity does not
    repeat a quotient); the critical-product identity uses the multiset.
    ``crit`` must be converged, else a fresh solve is demanded.
    """
    if not crit.converged:
        raise SolverNotConvergedError(
            "critical points did not converge; re-solve before analysis"
        )
    degree = P.degree
    if degree < 2:
        raise ValueError("mean-value analysis requires degree >= 2")
    if crit.total_multiplicity != degree - 1:
        raise ValueError(
            f"expected critical multiplicities summing to {degree - 1}, "
            f"got {crit.total_multiplicity}"
        )
    z = complex(z)

    points = sorted(crit.locations, key=lambda w: (w.real, w.imag))
    q_values = []
    for zeta in points:
        q = q_value(P, z, zeta)
        q_values.append(QValue(zeta, q, abs(q)))

    s_argmin = 0
    t_argmax = 0
    for i, qv in enumerate(q_values):
        if qv.abs_q < q_values[s_argmin].abs_q:
            s_argmin = i
        if qv.abs_q > q_values[t_argmax].abs_q:
            t_argmax = i
    s_value = q_values[s_argmin].abs_q
    t_value = q_values[t_argmax].abs_q
    tisch = min(abs(qv.q - 0.5) for qv in q_values)

    proof = None
    if P.is_normal_form() and z == 0:
        crit_values = [abs(P.evaluate(zeta)) for zeta in points]
        R = max(_root_magnitude(v, degree) for v in crit_values)
        ratios = tuple(R / abs(zeta) for zeta in points)
        proof = ProofQuantities(
            R=R,
            ratios=ratios,
            min_ratio=min(ratios),
            c1_residual=c1_residual(P, crit),
        )

    bound = dual_lower_bound(degree)
    return MeanValueReport(
        degree=degree,
        q_values=tuple(q_values),
        s_value=s_value,
        s_argmin=s_argmin,
        t_value=t_value,
        t_argmax=t_argmax,
        tischler_value=tisch,
        smale_margin=4.0 - s_value,
        dual_bound=bound,
        dual_margin=t_value - bound,
        tischler_bound=0.5 - 1.0 / degree,
        proof=proof,
    )


def tischler_value(report: MeanValueReport) -> float:
    """min over critical points of |Q - 1/2|, recomputed from the report."""
    return min(abs(qv.q - 0.5) for qv in report.q_values)
