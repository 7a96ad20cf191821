import math

import pytest

from smalemv.meanvalue import (
    CoincidentPointsError,
    ZCriticalError,
    analyze,
    dual_lower_bound,
    q_value,
    tischler_value,
)
from smalemv.poly import (
    AffineMaps,
    ComplexPolynomial,
    affine_conjugate,
    from_critical_points,
    normalize_for_theorem,
    p0,
    pstar,
)
from smalemv.roots import RootEstimate, RootSet, SolverNotConvergedError, critical_points
from smalemv.rng import SplitMix64

from _helpers import random_polynomial


class TestQValue:
    def test_p0_closed_form(self):
        # P(1) = 1 - d and P'(0) = -d give Q = (d-1)/d at every degree.
        for d in range(2, 10):
            q = q_value(p0(d), 0j, 1.0 + 0j)
            assert abs(q - (d - 1) / d) < 1e-14

    def test_pstar_closed_form(self):
        for d in range(2, 10):
            q = q_value(pstar(d), 0j, -1.0 + 0j)
            assert abs(q - 1.0 / d) < 1e-14

    def test_simple_quadratic(self):
        q = q_value(ComplexPolynomial((0.0, -2.0, 1.0)), 0j, 1.0 + 0j)
        assert q == 0.5

    def test_critical_z_rejected(self):
        with pytest.raises(ZCriticalError):
            q_value(ComplexPolynomial((0.0, 0.0, 1.0)), 0j, 1.0 + 0j)

    def test_coincident_points_rejected(self):
        with pytest.raises(CoincidentPointsError):
            q_value(ComplexPolynomial((0.0, -2.0, 1.0)), 0.5 + 0j, 0.5 + 0j)


def analyzed(P, z=0j):
    return analyze(P, z, critical_points(P))


class TestAnalyze:
    def test_pstar_five(self):
        report = analyzed(pstar(5))
        assert report.s_value == pytest.approx(0.2, abs=1e-12)
        assert report.t_value == pytest.approx(0.2, abs=1e-12)
        assert report.tischler_value == pytest.approx(0.3, abs=1e-12)
        assert report.dual_bound == 1.0 / 5120.0
        assert report.dual_margin == pytest.approx(0.2 - 1 / 5120, abs=1e-12)
        assert report.dual_margin > 0

    def test_symmetric_cubic(self):
        report = analyzed(ComplexPolynomial((0.0, -3.0, 0.0, 1.0)))
        assert len(report.q_values) == 2
        for qv in report.q_values:
            assert abs(qv.q - 2 / 3) < 1e-12
        assert report.s_value == pytest.approx(2 / 3, abs=1e-12)
        assert report.t_value == pytest.approx(2 / 3, abs=1e-12)
        assert report.smale_margin == pytest.approx(10 / 3, abs=1e-12)

    def test_degenerate_point_raises(self):
        P = ComplexPolynomial((0.0, 0.0, 1.0))
        with pytest.raises(ZCriticalError):
            analyzed(P)

    def test_non_converged_crit_rejected(self):
        P = p0(3)
        fake = RootSet(
            roots=(
                RootEstimate(1 + 0j, 1, 0.0, 0.0),
                RootEstimate(-1 + 0j, 1, 0.0, 0.0),
            ),
            degree=2,
            converged=False,
            iterations=200,
        )
        with pytest.raises(SolverNotConvergedError):
            analyze(P, 0j, fake)

    def test_q_values_sorted_and_ties_take_lowest_index(self):
        report = analyzed(p0(5))
        points = [qv.zeta for qv in report.q_values]
        assert points == sorted(points, key=lambda w: (w.real, w.imag))
        # all |Q| equal: ties must resolve to index 0
        assert report.s_argmin == 0
        assert report.t_argmax == 0

    def test_s_not_above_t(self):
        stream = SplitMix64(12)
        for _ in range(50):
            P = random_polynomial(stream, 2 + stream.next_u64() % 7)
            try:
                report = analyzed(P, stream.gaussian_complex())
            except (ZCriticalError, SolverNotConvergedError):
                continue
            assert report.s_value <= report.t_value

    def test_proof_absent_off_normal_form(self):
        report = analyzed(ComplexPolynomial((1.0, -3.0, 0.0, 1.0)))
        assert report.proof is None
        normal, _ = normalize_for_theorem(ComplexPolynomial((1.0, -3.0, 0.0, 1.0)), 0j)
        assert analyzed(normal).proof is not None


class TestTischler:
    def test_degree_two_equality(self):
        report = analyzed(ComplexPolynomial((0.0, -2.0, 1.0)))
        assert report.tischler_value == pytest.approx(0.0, abs=1e-14)
        assert report.tischler_bound == 0.0

    def test_pstar_meets_bound_for_all_degrees(self):
        # |1/d - 1/2| equals 1/2 - 1/d for every d >= 2.
        for d in range(2, 9):
            report = analyzed(pstar(d))
            assert report.tischler_value == pytest.approx(
                report.tischler_bound, abs=1e-12
            )

    def test_p0_five_meets_bound(self):
        report = analyzed(p0(5))
        assert report.tischler_value == pytest.approx(0.3, abs=1e-12)
        assert report.tischler_bound == pytest.approx(0.3, abs=1e-15)

    def test_recompute_matches_field(self):
        report = analyzed(p0(7))
        assert tischler_value(report) == report.tischler_value


class TestBoundsOnRandomInstances:
    def test_smale_and_dual_bounds(self):
        stream = SplitMix64(99)
        analyzed_count = 0
        for _ in range(200):
            d = 2 + stream.next_u64() % 7
            P = random_polynomial(stream, d)
            try:
                report = analyzed(P, stream.gaussian_complex())
            except (ZCriticalError, SolverNotConvergedError):
                continue
            analyzed_count += 1
            assert report.s_value <= 4.0 + 1e-8
            assert report.t_value >= dual_lower_bound(d) - 1e-12
        assert analyzed_count > 150


class TestProofChain:
    def test_normal_form_quantities(self):
        stream = SplitMix64(246)
        for _ in range(100):
            d = 2 + stream.next_u64() % 7
            raw = random_polynomial(stream, d)
            P, _ = normalize_for_theorem(raw, 0j)
            try:
                crit = critical_points(P)
                report = analyze(P, 0j, crit)
            except (ZCriticalError, SolverNotConvergedError):
                continue
            proof = report.proof
            assert proof is not None
            # Koebe one-quarter consequence and critical-product identity
            assert proof.min_ratio >= 0.25 - 1e-6
            assert proof.c1_residual <= 1e-6
            # R recomputed from the critical values
            max_val = max(abs(P.evaluate(z)) for z in crit.locations)
            assert proof.R == pytest.approx(
                math.exp(math.log(max_val) / d) if max_val else 0.0, rel=1e-12
            )
            # Final display of the dual-bound proof:
            # T >= R^d / (|zeta_k| * d * prod |zeta_j|) with zeta_k the
            # critical point of largest critical value.
            zeta_k = max(crit.locations, key=lambda z: abs(P.evaluate(z)))
            prod_abs = math.prod(
                abs(r.location) ** r.multiplicity for r in crit.roots
            )
            rhs = max_val / (abs(zeta_k) * d * prod_abs)
            assert report.t_value >= rhs * (1 - 1e-9)

    def test_pstar_proof_values(self):
        report = analyzed(pstar(5))
        proof = report.proof
        assert proof is not None
        assert proof.R == pytest.approx(1.0, rel=1e-12)
        assert proof.ratios == pytest.approx((1.0,), rel=1e-9)
        assert proof.c1_residual <= 1e-12


class TestAffineInvariance:
    def test_q_values_match_under_conjugation(self):
        stream = SplitMix64(1717)
        checked = 0
        for _ in range(100):
            d = 2 + stream.next_u64() % 7
            P = random_polynomial(stream, d)
            maps = AffineMaps(
                stream.annulus_point(0.5, 2.0),
                0.5 * stream.gaussian_complex(),
                stream.annulus_point(0.5, 2.0),
                0.5 * stream.gaussian_complex(),
            )
            Pc = affine_conjugate(P, maps)
            crit = critical_points(P)
            crit_c = critical_points(Pc)
            if not (crit.converged and crit_c.converged):
                continue
            # a well-conditioned non-critical point
            z = None
            dP = P.derivative()
            for _ in range(50):
                cand = stream.gaussian_complex()
                if abs(dP.evaluate(cand)) >= 1e-3 * (1 + P.coefficient_scale):
                    z = cand
                    break
            if z is None:
                continue
            a, b = maps.domain_scale, maps.domain_shift
            z_tilde = (z - b) / a
            for zeta in crit.locations:
                zeta_tilde_expected = (zeta - b) / a
                zeta_tilde = min(
                    crit_c.locations, key=lambda w: abs(w - zeta_tilde_expected)
                )
                q_orig = q_value(P, z, zeta)
                q_conj = q_value(Pc, z_tilde, zeta_tilde)
                assert abs(q_orig - q_conj) <= 1e-9 * max(1.0, abs(q_orig))
                checked += 1
        assert checked > 100

    def test_s_t_invariant_under_canonical_normalization(self):
        P = ComplexPolynomial((0.3 + 1j, -3.0, 0.5j, 1.0))
        z0 = 0.25 + 0.1j
        normal, _maps = normalize_for_theorem(P, z0)
        direct = analyze(P, z0, critical_points(P))
        normalized = analyze(normal, 0j, critical_points(normal))
        assert direct.s_value == pytest.approx(normalized.s_value, rel=1e-9)
        assert direct.t_value == pytest.approx(normalized.t_value, rel=1e-9)
        assert direct.tischler_value == pytest.approx(
            normalized.tischler_value, rel=1e-9
        )
