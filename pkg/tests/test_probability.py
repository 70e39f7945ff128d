"""Observables: probabilities, the six-term assembly, and deviations."""

import numpy as np
import pytest

from tempus.clock import ideal_rate
from tempus.geometry import Scenario, classical_ratio, elapsed_inertial_time
from tempus.probability import (
    _reduced_kernel,
    alice_probability,
    bob_probability,
    bob_term,
    inertial_deviation,
    inertial_probability,
    segment_intervals,
    twin_ratio,
)
from tempus.quadrature import QuadratureSpec, iterated_integrate
from tempus.validate import check_inertial_oracle

SPEC = QuadratureSpec()

# deviation-from-ideal oracle values, frozen from an independent
# arbitrary-precision adaptive quadrature of the mode integral (30 digits)
ALPHA_ORACLE = {
    (3.0, 0.1): 0.02798987802253642,
    (10.0, 0.1): 0.008630260059896719,
    (10.0, 0.3): 0.05230508755540814,
    (100.0, 0.1): 0.0008653496404516311,
}

# traveling-twin probability at aT=2, T=10, sigma=0.1, gap=2, frozen from an
# independent dense Gauss-Legendre tensor evaluation (200 x 200 x 128 per term)
PB_GL_ORACLE = 3.0328938684741726


class TestInertialProbability:
    def test_deviation_against_oracle_values(self):
        for (T, sigma), want in ALPHA_ORACLE.items():
            got = inertial_deviation(T, 2.0, sigma, SPEC)
            assert got == pytest.approx(want, rel=1e-4)

    def test_long_time_rate(self):
        # T = 1000 sigma: within 0.3% of the closed-form rate
        p = inertial_probability(100.0, 2.0, 0.1, SPEC)
        rate = ideal_rate(2.0, 0.1)
        assert abs(p.value.real / 100.0 - rate) / rate < 0.003

    def test_quadratic_short_time_scaling(self):
        # P(T) ~ T^2 * integral(w e^{-s^2 w^2})/(4 pi^2) = T^2/(8 pi^2 s^2)
        sigma = 0.1
        p = inertial_probability(1e-3, 2.0, sigma, SPEC)
        want = 1e-6 / (8 * np.pi**2 * sigma**2)
        assert p.value.real == pytest.approx(want, rel=1e-3)

    def test_deviation_decreasing_to_zero(self):
        alphas = [inertial_deviation(T, 2.0, 0.1, SPEC) for T in (5.0, 10.0, 20.0, 40.0)]
        assert all(a > b for a, b in zip(alphas, alphas[1:]))

    def test_clock_time_reconstruction(self):
        # reading the elapsed time back through the long-time rate
        from tempus.clock import clock_time_from_probability
        p = inertial_probability(100.0, 2.0, 0.1, SPEC)
        t_read = clock_time_from_probability(p.value.real, ideal_rate(2.0, 0.1))
        assert abs(t_read - 100.0) / 100.0 < 0.003


class TestAliceProbability:
    def test_inertial_limit(self):
        scn = Scenario(a=0.0, T=4.0, omega=2.0, sigma=0.1)
        pa = alice_probability(scn, SPEC)
        pi = inertial_probability(4.0, 2.0, 0.1, SPEC)
        assert pa.value.real == pytest.approx(pi.value.real, rel=1e-12)

    def test_dense_grid_oracle(self):
        # aT=2, T=10, sigma=0.1, gap=2: trapezoid on 2^21+1 points
        scn = Scenario(a=0.2, T=10.0, omega=2.0, sigma=0.1)
        t_a = elapsed_inertial_time(scn.a, scn.T)
        w = np.linspace(0.0, 160.0, 2**21 + 1)
        y = (t_a / (2 * np.pi)) ** 2 * np.exp(-(scn.sigma * w) ** 2) * w \
            * np.sinc((w - scn.omega) * t_a / 2 / np.pi) ** 2
        dense = np.trapezoid(y, w)
        got = alice_probability(scn, SPEC)
        assert got.value.real == pytest.approx(dense, rel=1e-3)
        assert got.value.real > 0

    def test_sigma_monotonicity(self):
        scn_small = Scenario(a=0.5, T=4.0, omega=2.0, sigma=0.1)
        scn_large = Scenario(a=0.5, T=4.0, omega=2.0, sigma=0.2)
        assert alice_probability(scn_large, SPEC).value.real < \
            alice_probability(scn_small, SPEC).value.real


class TestBobTerm:
    def test_diagonal_imaginary_within_error(self):
        scn = Scenario(a=0.5, T=4.0, omega=2.0, sigma=0.15)
        for k in (1, 2, 3):
            r = bob_term((k, k), scn, SPEC)
            assert abs(r.value.imag) <= 10 * r.error_estimate + 1e-14 * abs(r.value)

    def test_swapped_roles_conjugate(self):
        # integrating the role-swapped kernel over the mirrored box must
        # give the complex conjugate (two-point conjugate symmetry)
        scn = Scenario(a=1.0, T=2.0, omega=1.0, sigma=0.2)
        p12 = bob_term((1, 2), scn, SPEC)
        kern = _reduced_kernel((1, 2), scn)
        box_i, box_j = segment_intervals((1, 2), scn.T)
        swapped = iterated_integrate(
            lambda tau, taup, mu: np.conj(kern(taup, tau, mu)),
            [box_j, box_i, (-1.0, 1.0)],
            SPEC.rel_tol_4d, SPEC.abs_tol, SPEC.max_subdivisions_4d,
        )
        tol = 10 * (p12.error_estimate + swapped.error_estimate)
        assert abs(swapped.value - np.conj(p12.value)) <= tol

    def test_reduced_equals_generic_4d(self):
        scn = Scenario(a=1.0, T=2.0, omega=1.0, sigma=0.2)
        for label in ((1, 1), (1, 2)):
            fast = bob_term(label, scn, SPEC)
            grid = bob_term(label, scn, SPEC, method="quad4d")
            assert abs(fast.value - grid.value) / abs(fast.value) < 1e-6

    def test_rejects_unknown_method(self):
        scn = Scenario(a=1.0, T=1.0, omega=1.0, sigma=0.2)
        with pytest.raises(ValueError):
            bob_term((1, 1), scn, SPEC, method="monte-carlo")


class TestBobProbability:
    def test_near_inertial_oracle(self):
        scn = Scenario(a=1e-3 / 4.0, T=4.0, omega=2.0, sigma=0.1)
        pb = bob_probability(scn, SPEC)
        pi = inertial_probability(4.0, 2.0, 0.1, SPEC)
        assert abs(pb.value.real - pi.value.real) / pi.value.real < 1e-3
        assert pb.converged
        assert pb.value.real > 0

    def test_displayed_boxes_fail_the_oracle(self):
        # the as-displayed (2,2)/(2,3) ranges break the nine-pair tiling:
        # the mislabeled "diagonal" term is no longer Hermitian, so the
        # reality guard rejects the assembly outright
        scn = Scenario(a=1e-3 / 4.0, T=4.0, omega=2.0, sigma=0.1)
        with pytest.raises(ArithmeticError, match="imaginary"):
            bob_probability(scn, SPEC, variant="displayed")

    def test_validate_check_discriminates_variants(self):
        ok, _ = check_inertial_oracle()
        bad, _ = check_inertial_oracle(variant="displayed")
        assert ok and not bad

    def test_frozen_gl_oracle(self):
        scn = Scenario(a=0.2, T=10.0, omega=2.0, sigma=0.1)
        pb = bob_probability(scn, SPEC)
        assert pb.value.real == pytest.approx(PB_GL_ORACLE, rel=1e-9)


class TestTwinRatio:
    def test_inertial_twins_agree(self):
        scn = Scenario(a=1e-4 / 4.0, T=4.0, omega=2.0, sigma=0.1)
        r = twin_ratio(scn, SPEC)
        assert r.ratio == pytest.approx(1.0, abs=1e-3)
        assert r.classical_ratio == pytest.approx(1.0, abs=1e-8)

    def test_result_fields(self):
        scn = Scenario(a=1.0, T=2.0, omega=2.0, sigma=0.2)
        r = twin_ratio(scn, SPEC)
        assert set(r.terms) == {(1, 1), (2, 2), (3, 3), (1, 2), (1, 3), (2, 3)}
        assert r.p_alice > 0 and r.p_bob > 0
        assert r.ratio == pytest.approx(r.p_bob / r.p_alice, rel=1e-15)
        assert r.converged

    def test_chart_horizon_warning_surfaces(self):
        scn = Scenario(a=2.0, T=2.0, omega=2.0, sigma=0.3)  # sigma*a = 0.6
        r = twin_ratio(scn, SPEC)
        assert any("sigma*a" in w for w in r.warnings)

    def test_size_ordering_at_fixed_trajectory(self):
        # larger clocks deviate more from the classical ratio
        devs = []
        for sigma in (0.1, 0.3):
            scn = Scenario(a=1.0, T=2.0, omega=2.0, sigma=sigma)
            r = twin_ratio(scn, SPEC)
            devs.append(abs(r.ratio - r.classical_ratio))
        assert devs[1] > devs[0]


class TestSegmentIntervals:
    def test_paired_boxes(self):
        (a1, b1), (a2, b2) = segment_intervals((2, 3), 4.0)
        assert (a1, b1) == (1.0, 3.0)
        assert (a2, b2) == (3.0, 4.0)

    def test_displayed_overrides(self):
        (a1, b1), (a2, b2) = segment_intervals((2, 2), 4.0, variant="displayed")
        assert (a1, b1) == (0.0, 1.0)   # as printed: first segment
        assert (a2, b2) == (3.0, 4.0)   # as printed: third segment

    def test_unknown_variant(self):
        with pytest.raises(ValueError):
            segment_intervals((1, 1), 4.0, variant="bogus")
