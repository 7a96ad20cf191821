"""Polynomial root finding by Aberth-Ehrlich simultaneous iteration.

All roots are iterated at once from deterministic starting points on a circle
(0.9 times the Cauchy bound, rotated by a fixed offset so symmetric root
configurations never coincide with the initial guesses). Each estimate stops
once its correction is negligible or the residual reaches the backward-error
floor of Horner evaluation; afterwards every root gets a short monotone Newton
polish.

Multiple roots need special care. A root of multiplicity m is determined by
floating point only to about eps**(1/m), so the polished estimates of one
m-fold root scatter on a small circle around it. They are regrouped by
single-linkage clustering with a per-root radius that tracks the scatter (the
Newton step at such a point has length ~scatter/m, so degree*step covers the
cluster, while converged simple roots keep a tiny radius). Each cluster is
replaced by its centroid, whose multiplicity is the cluster size, and then
refined by Newton on the (m-1)-th derivative: at a true m-fold root that
derivative has a simple zero, so the refinement restores machine accuracy.

Non-convergence is reported through the ``converged`` flag, never raised;
search and campaign callers skip flagged results instead of aborting.
"""

from __future__ import annotations

import cmath
import math
import sys
from dataclasses import dataclass

from .poly import ComplexPolynomial

_EPS = sys.float_info.epsilon
# Residuals at or below a few eps times sum(|c_k| |z|^k) mean z is a root to
# working precision; iterating further only stirs rounding noise.
_STOP_FACTOR = 4.0 * _EPS
# Fixed symmetry-breaking rotation of the initial circle, 0.12*pi rad.
_START_ROTATION = 0.12 * math.pi
_TWO_PI = 2.0 * math.pi
_TINY = 1e-300


class SolverNotConvergedError(RuntimeError):
    """Raised by consumers that require a converged root set."""


@dataclass(frozen=True)
class SolverConfig:
    """Tunables of the simultaneous-iteration solver.

    ``residual_tol`` is relative to the coefficient scale at the root;
    ``cluster_radius_multiplier`` scales the base clustering radius
    ``multiplier * (1 + max|zeta|)``.
    """

    max_iterations: int = 200
    residual_tol: float = 1e-12
    cluster_radius_multiplier: float = 1e-6
    newton_polish_steps: int = 3

    def __post_init__(self) -> None:
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.residual_tol <= 0 or self.cluster_radius_multiplier <= 0:
            raise ValueError("tolerances must be positive")


DEFAULT_SOLVER_CONFIG = SolverConfig()


@dataclass(frozen=True)
class RootEstimate:
    """One (possibly multiple) root: centroid location and diagnostics.

    ``residual`` is |P(location)| relative to sum(|c_k| |location|^k);
    ``cluster_radius`` is the largest distance from a cluster member to the
    centroid (0 for simple roots).
    """

    location: complex
    multiplicity: int
    residual: float
    cluster_radius: float


@dataclass(frozen=True)
class RootSet:
    """All roots of one polynomial, multiplicities summing to its degree."""

    roots: tuple[RootEstimate, ...]
    degree: int
    converged: bool
    iterations: int

    @property
    def locations(self) -> tuple[complex, ...]:
        """Distinct root locations, in (re, im) lexicographic order."""
        return tuple(r.location for r in self.roots)

    @property
    def total_multiplicity(self) -> int:
        return sum(r.multiplicity for r in self.roots)


def _eval_with_derivative(
    coeffs: tuple[complex, ...], z: complex
) -> tuple[complex, complex, float]:
    """Horner value, derivative, and the bound sum(|c_k| |z|^k)."""
    p = coeffs[-1]
    dp = 0j
    bound = abs(coeffs[-1])
    az = abs(z)
    for k in range(len(coeffs) - 2, -1, -1):
        dp = dp * z + p
        p = p * z + coeffs[k]
        bound = bound * az + abs(coeffs[k])
    return p, dp, bound


def _relative_residual(coeffs: tuple[complex, ...], z: complex) -> float:
    p, _, bound = _eval_with_derivative(coeffs, z)
    return abs(p) / max(bound, _TINY)


def _derivative_coeffs(coeffs: tuple[complex, ...]) -> tuple[complex, ...]:
    return tuple(k * c for k, c in enumerate(coeffs) if k >= 1)


def _refine_multiple_root(
    coeffs: tuple[complex, ...], centroid: complex, multiplicity: int, spread: float
) -> complex:
    """Newton on the (m-1)-th derivative, guarded to stay near the cluster."""
    dcoeffs = coeffs
    for _ in range(multiplicity - 1):
        dcoeffs = _derivative_coeffs(dcoeffs)
    w = centroid
    for _ in range(60):
        p, dp, bound = _eval_with_derivative(dcoeffs, w)
        if dp == 0 or abs(p) <= _STOP_FACTOR * bound:
            break
        step = p / dp
        w -= step
        if abs(step) <= _EPS * (1.0 + abs(w)):
            break
    # A wrong multiplicity guess can send Newton to an unrelated point.
    if cmath.isfinite(w) and abs(w - centroid) <= 4.0 * spread + 1e-6 * (1.0 + abs(centroid)):
        return w
    return centroid


def _cluster(
    estimates: list[complex],
    coeffs: tuple[complex, ...],
    cfg: SolverConfig,
) -> list[tuple[complex, int, float]]:
    """Single-linkage clusters -> (centroid, multiplicity, spread) triples."""
    n = len(estimates)
    zmax = max(abs(z) for z in estimates)
    base = cfg.cluster_radius_multiplier * (1.0 + zmax)
    cap = 0.2 * (1.0 + zmax)
    degree = len(coeffs) - 1
    radii = []
    for z in estimates:
        p, dp, bound = _eval_with_derivative(coeffs, z)
        # |p| at a multiple-root estimate sits at the rounding-noise floor and
        # may cancel to almost zero; flooring the numerator at that noise keeps
        # the step estimate (and hence the radius) honest.
        step = (abs(p) + _STOP_FACTOR * bound) / abs(dp) if dp != 0 else cap
        radii.append(min(cap, max(0.5 * base, degree * step)))

    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(estimates[i] - estimates[j]) <= radii[i] + radii[j]:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri

    groups: dict[int, list[complex]] = {}
    for i, z in enumerate(estimates):
        groups.setdefault(find(i), []).append(z)

    clusters = []
    for members in groups.values():
        m = len(members)
        centroid = sum(members) / m
        spread = max(abs(z - centroid) for z in members)
        if m >= 2:
            centroid = _refine_multiple_root(coeffs, centroid, m, spread)
        clusters.append((centroid, m, spread))
    return clusters


def all_roots(
    P: ComplexPolynomial, cfg: SolverConfig = DEFAULT_SOLVER_CONFIG
) -> RootSet:
    """All roots of P, counted with multiplicity.

    Returns a flagged result on non-convergence (best estimates, residuals)
    rather than raising; degree 0 is rejected.
    """
    degree = P.degree
    if degree < 1:
        raise ValueError("root finding requires degree >= 1")
    coeffs = P.coeffs
    if degree == 1:
        loc = -coeffs[0] / coeffs[1]
        est = RootEstimate(loc, 1, _relative_residual(coeffs, loc), 0.0)
        return RootSet((est,), 1, True, 0)

    lead = abs(coeffs[-1])
    cauchy = 1.0 + max(abs(c) for c in coeffs[:-1]) / lead
    radius = 0.9 * cauchy
    z = [
        radius * cmath.exp(1j * (_TWO_PI * k / degree + _START_ROTATION))
        for k in range(degree)
    ]
    frozen = [False] * degree

    iterations = 0
    for it in range(cfg.max_iterations):
        iterations = it + 1
        for i in range(degree):
            if frozen[i]:
                continue
            p, dp, bound = _eval_with_derivative(coeffs, z[i])
            if abs(p) <= _STOP_FACTOR * bound:
                frozen[i] = True
                continue
            if dp == 0:
                # Sitting on a stationary point; nudge off it.
                z[i] += (1e-6 + 1e-6j) * (1.0 + abs(z[i]))
                continue
            newton = p / dp
            repulsion = 0j
            for j in range(degree):
                if j != i:
                    diff = z[i] - z[j]
                    if diff != 0:
                        repulsion += 1.0 / diff
            denom = 1.0 - newton * repulsion
            step = newton if denom == 0 else newton / denom
            z[i] -= step
            if abs(step) <= cfg.residual_tol * (1.0 + abs(z[i])):
                frozen[i] = True
        if all(frozen):
            break
    converged = all(frozen)

    # Newton polish, accepted only while it reduces |P|.
    for i in range(degree):
        zi = z[i]
        p, dp, bound = _eval_with_derivative(coeffs, zi)
        best = abs(p)
        for _ in range(cfg.newton_polish_steps):
            if dp == 0 or best <= _STOP_FACTOR * bound:
                break
            cand = zi - p / dp
            p2, dp2, bound2 = _eval_with_derivative(coeffs, cand)
            if abs(p2) < best:
                zi, p, dp, bound, best = cand, p2, dp2, bound2, abs(p2)
            else:
                break
        z[i] = zi

    clusters = _cluster(z, coeffs, cfg)
    estimates = []
    for centroid, mult, spread in clusters:
        estimates.append(
            RootEstimate(centroid, mult, _relative_residual(coeffs, centroid), spread)
        )
    estimates.sort(key=lambda r: (r.location.real, r.location.imag))
    if converged:
        converged = all(r.residual <= cfg.residual_tol for r in estimates)
    return RootSet(tuple(estimates), degree, converged, iterations)


def critical_points(
    P: ComplexPolynomial, cfg: SolverConfig = DEFAULT_SOLVER_CONFIG
) -> RootSet:
    """Roots of P', i.e. the critical points of P; needs degree >= 2."""
    if P.degree < 2:
        raise ValueError("critical points require degree >= 2")
    return all_roots(P.derivative(), cfg)


def c1_residual(P_monic: ComplexPolynomial, crit: RootSet) -> float:
    """Relative residual of the identity P'(0) = d (-1)^(d-1) prod(zeta_j).

    The product runs over the critical points counted with multiplicity. A
    small value is a health check tying the solved critical points back to
    the coefficients; the caller supplies a monic P with crit solved from it.
    """
    degree = P_monic.degree
    dp0 = P_monic.coeffs[1] if degree >= 1 else 0j
    prod = 1.0 + 0j
    prod_abs = 1.0
    for r in crit.roots:
        prod *= r.location**r.multiplicity
        prod_abs *= abs(r.location) ** r.multiplicity
    sign = 1.0 if (degree - 1) % 2 == 0 else -1.0
    target = degree * sign * prod
    scale = max(abs(dp0), degree * prod_abs, _TINY)
    return abs(dp0 - target) / scale


def vieta_residuals(P: ComplexPolynomial, roots: RootSet) -> tuple[float, float]:
    """Relative errors of the Vieta product and sum identities.

    Product: prod(loc^mult) vs (-1)^d c_0/c_d. Sum: sum(mult*loc) vs
    -c_{d-1}/c_d. Useful as an independent solver health diagnostic.
    """
    degree = P.degree
    c = P.coeffs
    prod = 1.0 + 0j
    total = 0j
    for r in roots.roots:
        prod *= r.location**r.multiplicity
        total += r.multiplicity * r.location
    want_prod = ((-1) ** degree) * c[0] / c[-1]
    want_sum = -c[-2] / c[-1]
    prod_err = abs(prod - want_prod) / max(abs(want_prod), abs(prod), 1.0)
    sum_err = abs(total - want_sum) / max(abs(want_sum), abs(total), 1.0)
    return prod_err, sum_err
