"""Kinematics: worldline, comoving charts, elapsed-time relations."""

import math

import numpy as np
import pytest

from tempus.geometry import (
    Event,
    PiecewiseTrajectory,
    Scenario,
    bob_fermi_to_inertial,
    bob_position,
    classical_ratio,
    elapsed_inertial_time,
    fermi_chart_samples,
    max_relative_velocity,
    segment_center_event,
    segment_center_velocity,
    segment_fermi_event,
    segment_index,
)

# high-precision closed-form anchors (mpmath, 30 digits)
FOUR_SINH_1 = 4.700804774575206
RATIO_AT_2 = 0.9595173756674719   # 0.5 / sinh(0.5)
RATIO_AT_4 = 0.8509181282393216   # 1 / sinh(1)
TANH_HALF = 0.4621171572600098
TANH_ONE = 0.7615941559557649


def scenario(a=1.0, T=4.0):
    return Scenario(a=a, T=T, omega=2.0, sigma=0.1)


class TestScenario:
    def test_rejects_nonpositive_fields(self):
        with pytest.raises(ValueError, match="T"):
            Scenario(a=1.0, T=0.0, omega=2.0, sigma=0.1)
        with pytest.raises(ValueError, match="sigma"):
            Scenario(a=1.0, T=1.0, omega=2.0, sigma=0.0)
        with pytest.raises(ValueError, match="a"):
            Scenario(a=-1.0, T=1.0, omega=2.0, sigma=0.1)
        with pytest.raises(ValueError, match="omega"):
            Scenario(a=1.0, T=1.0, omega=-2.0, sigma=0.1)

    def test_aT_derived(self):
        assert scenario(a=0.5, T=4.0).aT == 2.0

    def test_chart_warning_threshold(self):
        assert scenario(a=1.0, T=4.0).warnings() == []
        assert "sigma*a" in Scenario(a=4.0, T=1.0, omega=2.0, sigma=0.2).warnings()[0]


class TestBobPosition:
    def test_starts_at_origin(self):
        for a, T in [(0.0, 1.0), (1.0, 4.0), (2.5, 0.8)]:
            p = bob_position(0.0, scenario(a=a, T=T))
            assert p == Event(0.0, 0.0, 0.0, 0.0)

    def test_endpoint_anchor(self):
        # a=1, T=4: t(T) = 4 sinh(1), x(T) = 0
        p = bob_position(4.0, scenario(a=1.0, T=4.0))
        assert p.t == pytest.approx(FOUR_SINH_1, rel=1e-14)
        assert abs(p.x) < 1e-14 * p.t

    def test_junction_continuity_both_branches(self):
        scn = scenario(a=1.3, T=3.7)
        for tau, (lo, hi) in [(scn.T / 4, (1, 2)), (3 * scn.T / 4, (2, 3))]:
            t1, x1 = segment_center_event(lo, tau, scn.a, scn.T)
            t2, x2 = segment_center_event(hi, tau, scn.a, scn.T)
            scale = max(abs(float(t1)), 1.0)
            assert abs(float(t2 - t1)) / scale < 1e-12
            assert abs(float(x2 - x1)) / scale < 1e-12

    def test_out_of_range_tau(self):
        scn = scenario()
        with pytest.raises(ValueError, match="tau"):
            bob_position(-0.1, scn)
        with pytest.raises(ValueError, match="tau"):
            bob_position(scn.T + 0.1, scn)

    def test_inertial_limit(self):
        p = bob_position(0.7, Scenario(a=0.0, T=1.0, omega=2.0, sigma=0.1))
        assert p.t == 0.7 and p.x == 0.0

    def test_tiny_aT_matches_series(self):
        # aT = 1e-7: x(tau) = a tau^2/2 + O(a^3), t(tau) = tau + O(a^2)
        scn = scenario(a=1e-7, T=1.0)
        p = bob_position(0.2, scn)
        assert p.t == pytest.approx(0.2, rel=1e-12)
        assert p.x == pytest.approx(1e-7 * 0.2**2 / 2, rel=1e-9)


class TestFermiChart:
    def test_center_identity(self):
        scn = scenario(a=0.8, T=5.0)
        for tau in [0.0, 1.0, 2.5, 4.0, 5.0]:
            p = bob_position(tau, scn)
            q = bob_fermi_to_inertial(tau, (0.0, 0.0, 0.0), scn)
            assert (q.t, q.x) == (p.t, p.x)

    def test_initial_rest_surface(self):
        scn = scenario(a=1.0, T=4.0)
        q = bob_fermi_to_inertial(0.0, (0.37, 0.0, 0.0), scn)
        assert q.t == 0.0
        assert q.x == pytest.approx(0.37, rel=1e-15)

    def test_transverse_passthrough(self):
        q = bob_fermi_to_inertial(1.0, (0.1, -0.2, 0.3), scenario())
        assert (q.y, q.z) == (-0.2, 0.3)

    def test_junction_continuity_at_fixed_X(self):
        scn = scenario(a=1.1, T=4.4)
        for tau, (lo, hi) in [(scn.T / 4, (1, 2)), (3 * scn.T / 4, (2, 3))]:
            for X in (-0.3, 0.2, 0.45):
                t1, x1 = segment_fermi_event(lo, tau, X, scn.a, scn.T)
                t2, x2 = segment_fermi_event(hi, tau, X, scn.a, scn.T)
                scale = max(abs(float(t1)), 1.0)
                assert abs(float(t2 - t1)) / scale < 1e-12
                assert abs(float(x2 - x1)) / scale < 1e-12

    def test_chart_samples_shape_and_origin(self):
        scn = scenario(a=1.0, T=4.0)
        table = fermi_chart_samples(scn, [0.0], [0.0])
        assert table.shape == (1, 4)
        assert np.allclose(table[0], [0.0, 0.0, 0.0, 0.0])

    def test_constant_tau_rows_are_straight(self):
        # each rest surface maps to a straight line in the (t, x) plane
        scn = scenario(a=1.5, T=4.0)
        xs = np.linspace(-0.3, 0.3, 7)
        table = fermi_chart_samples(scn, [0.9, 2.2, 3.7], xs)
        for tau in (0.9, 2.2, 3.7):
            rows = table[table[:, 0] == tau]
            t, x = rows[:, 2], rows[:, 3]
            # collinearity: second differences of t against x vanish
            slope = np.diff(t) / np.diff(x)
            assert np.allclose(slope, slope[0], rtol=1e-10, atol=1e-12)


class TestElapsedTime:
    def test_inertial_limit(self):
        assert elapsed_inertial_time(0.0, 1.0) == 1.0

    def test_anchor(self):
        assert elapsed_inertial_time(1.0, 4.0) == pytest.approx(FOUR_SINH_1, rel=1e-14)

    def test_roundtrip_inverse(self):
        for a, T in [(0.3, 2.0), (1.0, 4.0), (2.0, 1.5)]:
            t_a = elapsed_inertial_time(a, T)
            back = (4.0 / a) * math.asinh(a * t_a / 4.0)
            assert back == pytest.approx(T, rel=1e-12)

    def test_closure_with_trajectory(self):
        scn = scenario(a=0.7, T=6.0)
        end = bob_position(scn.T, scn)
        assert end.t == pytest.approx(elapsed_inertial_time(scn.a, scn.T), rel=1e-12)
        assert abs(end.x) <= 1e-12 * end.t


class TestClassicalRatio:
    def test_values(self):
        assert classical_ratio(0.0) == 1.0
        assert classical_ratio(2.0) == pytest.approx(RATIO_AT_2, rel=1e-14)
        assert classical_ratio(4.0) == pytest.approx(RATIO_AT_4, rel=1e-14)

    def test_strictly_decreasing_and_bounded(self):
        grid = np.linspace(1e-4, 20.0, 500)
        vals = np.array([classical_ratio(x) for x in grid])
        assert np.all(np.diff(vals) < 0)
        assert np.all((vals > 0) & (vals <= 1))


class TestMaxVelocity:
    def test_values(self):
        assert max_relative_velocity(0.0) == 0.0
        assert max_relative_velocity(2.0) == pytest.approx(TANH_HALF, rel=1e-14)
        assert max_relative_velocity(4.0) == pytest.approx(TANH_ONE, rel=1e-14)
        # reported rounded speeds
        assert round(max_relative_velocity(2.0), 2) == 0.46
        assert round(max_relative_velocity(4.0), 2) == 0.76


class TestInvariants:
    def test_continuity_100_random(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            a = rng.uniform(0.05, 3.0)
            T = rng.uniform(0.5, 8.0)
            scale = max(elapsed_inertial_time(a, T), 1.0)
            for tau, (lo, hi) in [(T / 4, (1, 2)), (3 * T / 4, (2, 3))]:
                t1, x1 = segment_center_event(lo, tau, a, T)
                t2, x2 = segment_center_event(hi, tau, a, T)
                assert abs(float(t2 - t1)) / scale < 1e-12
                assert abs(float(x2 - x1)) / scale < 1e-12
                u1 = segment_center_velocity(lo, tau, a, T)
                u2 = segment_center_velocity(hi, tau, a, T)
                uscale = max(abs(float(u1[0])), 1.0)
                assert abs(float(u2[0] - u1[0])) / uscale < 1e-12
                assert abs(float(u2[1] - u1[1])) / uscale < 1e-12

    def test_four_velocity_normalization_1000_random(self):
        rng = np.random.default_rng(8)
        for _ in range(10):
            aT = rng.uniform(0.0, 6.0)
            T = rng.uniform(0.5, 8.0)
            a = aT / T
            for tau in rng.uniform(0.0, T, size=100):
                seg = segment_index(tau, T)
                ut, ux = segment_center_velocity(seg, tau, a, T)
                assert abs(float(ut) ** 2 - float(ux) ** 2 - 1.0) < 1e-10

    def test_trajectory_class_segments(self):
        traj = PiecewiseTrajectory.from_scenario(scenario(a=1.0, T=4.0))
        assert traj.intervals == ((0.0, 1.0), (1.0, 3.0), (3.0, 4.0))
        assert [(s.index, s.tau_lo, s.tau_hi) for s in traj.segments] == [
            (1, 0.0, 1.0), (2, 1.0, 3.0), (3, 3.0, 4.0),
        ]
        # segment records carry working maps
        mid = traj.segments[1]
        t, x = mid.position(2.0)
        p = traj.position(2.0)
        assert (float(t), float(x)) == (p.t, p.x)
        t0, x0 = mid.fermi(2.0, 0.0)
        assert (float(t0), float(x0)) == (p.t, p.x)
        assert segment_index(1.0, 4.0) == 2   # junction belongs to the later segment
        assert segment_index(3.0, 4.0) == 3
        assert segment_index(4.0, 4.0) == 3
