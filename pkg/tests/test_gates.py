import numpy as np
import pytest

from eprgates.gates import (
    ClusterNoiseModel,
    GateConfig,
    GateKind,
    angle_for_squeezing_db,
    build_cascade_plan,
    build_fourier_plan,
    build_squeeze_plan,
    cluster_excess_variance,
    excess_ratio_epr_vs_cluster,
    make_epr,
    r_from_db,
    run_gate,
)
from eprgates.gaussian import (
    QuadratureObservable,
    add_classical_noise,
    make_coherent,
    make_vacuum,
)

F = np.array([[0.0, -1.0], [1.0, 0.0]])
R_4DB = r_from_db(-4.0)
THETA_12DB = np.arctan(10**-0.6)


def corr_variances(res):
    c = res.state.cov
    return (c[0, 0] + c[2, 2] + 2 * c[0, 2], c[1, 1] + c[3, 3] - 2 * c[1, 3])


def p_modulated(db=20.0):
    return add_classical_noise(make_vacuum(1), 0, 0.0, 0.25 * (10 ** (db / 10) - 1))


class TestEpr:
    def test_unsqueezed_is_two_vacua(self):
        res = make_epr(0.0)
        assert np.allclose(res.state.cov, 0.25 * np.eye(4), atol=1e-16)
        assert corr_variances(res) == pytest.approx((0.5, 0.5), abs=1e-15)

    def test_minus_4db(self):
        vx, vp = corr_variances(make_epr(R_4DB))
        assert vx == pytest.approx(0.5 * 10**-0.4, abs=1e-12)
        assert vp == pytest.approx(0.1990535852767486, abs=1e-12)

    @pytest.mark.parametrize("r", [0.0, 0.23, 0.46, 1.0, 2.5, 4.0])
    def test_correlation_invariant(self, r):
        vx, vp = corr_variances(make_epr(r))
        assert abs(vx - np.exp(-2 * r) / 2) < 1e-10
        assert abs(vp - np.exp(-2 * r) / 2) < 1e-10

    def test_correlation_at_r8(self):
        vx, vp = corr_variances(make_epr(8.0))
        assert vx == pytest.approx(np.exp(-16) / 2, rel=1e-2)
        assert vp == pytest.approx(np.exp(-16) / 2, rel=1e-2)

    @pytest.mark.parametrize("r", [0.1, 0.46, 1.3])
    def test_reduced_states_thermal(self, r):
        # each submode sees cosh(2r)/4 on both quadratures
        res = make_epr(r)
        for mode in (0, 1):
            red = res.state.reduced(mode)
            assert np.allclose(red.cov, np.cosh(2 * r) / 4 * np.eye(2), atol=1e-12)
        c = res.state.cov
        assert c[0, 2] < 0 < c[1, 3]

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            make_epr(-0.1)


class TestAngles:
    @pytest.mark.parametrize(
        "db,deg", [(-4, 32.25), (-8, 21.70), (-12, 14.10)]
    )
    def test_operating_point_table(self, db, deg):
        assert np.degrees(angle_for_squeezing_db(db)) == pytest.approx(deg, abs=0.01)

    def test_zero_db(self):
        assert angle_for_squeezing_db(0.0) == pytest.approx(np.pi / 4, abs=1e-15)

    @pytest.mark.parametrize("a", [-12.0, -3.0, 5.0])
    def test_phase_and_amplitude_relations(self, a):
        assert np.tan(angle_for_squeezing_db(a, "phase")) ** 2 == pytest.approx(10 ** (a / 10))
        assert 1 / np.tan(angle_for_squeezing_db(a, "amplitude")) ** 2 == pytest.approx(10 ** (a / 10))

    @pytest.mark.parametrize("a", [-700.0, 700.0])
    def test_degenerate_rejected(self, a):
        with pytest.raises(ValueError):
            angle_for_squeezing_db(a)

    def test_bad_quadrature(self):
        with pytest.raises(ValueError):
            angle_for_squeezing_db(-4, "x")


class TestPlans:
    def test_squeeze_gain_45(self):
        assert np.allclose(build_squeeze_plan(np.pi / 4).gain, [[1, 1], [1, -1]], atol=1e-15)

    def test_squeeze_gain_1410(self):
        plan = build_squeeze_plan(np.radians(14.10))
        assert plan.gain[0, 0] == pytest.approx(2.9025, abs=5e-4)
        assert plan.angles == pytest.approx((np.radians(14.10), -np.radians(14.10)))

    @pytest.mark.parametrize("theta", [0.0, np.pi / 2, -0.1, 1e-13])
    def test_degenerate_angle(self, theta):
        with pytest.raises(ValueError):
            build_squeeze_plan(theta)
        with pytest.raises(ValueError):
            build_cascade_plan(theta)

    def test_fourier_gain_exact(self):
        plan = build_fourier_plan()
        assert np.array_equal(plan.gain, [[0, np.sqrt(2)], [np.sqrt(2), 0]])
        assert plan.angles == (0.0, -np.pi / 2)

    @pytest.mark.parametrize("kind", [GateKind.SQUEEZE, GateKind.CASCADE])
    def test_homodyne_outcomes_match_closed_form(self, kind):
        # outcome rows over (x_in, p_in, x1, p1, x2, p2) written out from the
        # pi/2-coupled and zero-phase-coupled detector expressions
        th = 0.37
        cfg = GateConfig(kind, make_epr(0.0), th)
        u = cfg.coupling().matrix
        plan = cfg.plan()
        rows = [
            QuadratureObservable.homodyne(m, a, 3).coefficients @ u
            for m, a in zip(plan.measured_modes, plan.angles)
        ]
        c1, s1, c2, s2 = np.cos(th), np.sin(th), np.cos(-th), np.sin(-th)
        if kind is GateKind.SQUEEZE:
            d1 = np.array([c1, s1, s1, -c1, 0, 0]) / np.sqrt(2)
            d2 = np.array([c2, s2, -s2, c2, 0, 0]) / np.sqrt(2)
        else:
            d1 = np.array([c1, s1, -c1, -s1, 0, 0]) / np.sqrt(2)
            d2 = np.array([c2, s2, c2, s2, 0, 0]) / np.sqrt(2)
        assert np.allclose(rows[0], d1, atol=1e-15)
        assert np.allclose(rows[1], d2, atol=1e-15)

    def test_fourier_outcomes(self):
        cfg = GateConfig(GateKind.FOURIER, make_epr(0.0))
        u = cfg.coupling().matrix
        rows = [
            QuadratureObservable.homodyne(m, a, 3).coefficients @ u
            for m, a in zip(cfg.plan().measured_modes, cfg.plan().angles)
        ]
        assert np.allclose(rows[0], np.array([1, 0, 0, -1, 0, 0]) / np.sqrt(2), atol=1e-15)
        assert np.allclose(rows[1], np.array([0, -1, 1, 0, 0, 0]) / np.sqrt(2), atol=1e-15)


class TestRunGate:
    def test_identity_gate_near_ideal(self):
        cfg = GateConfig(GateKind.SQUEEZE, make_epr(4.0), np.pi / 4)
        out = run_gate(cfg, make_vacuum(1)).output
        assert np.allclose(out.cov, (0.25 + np.exp(-8) / 2) * np.eye(2), atol=1e-12)

    def test_minus_12db_residual(self):
        cfg = GateConfig(GateKind.SQUEEZE, make_epr(R_4DB), THETA_12DB)
        var_p = run_gate(cfg, make_vacuum(1)).output.cov[1, 1]
        assert var_p == pytest.approx(0.21482751888875343, rel=1e-9)
        assert 10 * np.log10(var_p / 0.25) == pytest.approx(-0.66, abs=0.01)

    def test_minus_12db_modulated(self):
        cfg = GateConfig(GateKind.SQUEEZE, make_epr(R_4DB), THETA_12DB)
        cov = run_gate(cfg, p_modulated()).output.cov
        assert 10 * np.log10(cov[0, 0] / 0.25) == pytest.approx(12.212876157807715, abs=1e-9)
        assert 10 * np.log10(cov[1, 1] / 0.25) == pytest.approx(8.516122331582416, abs=1e-9)

    @pytest.mark.parametrize("kind,theta", [
        (GateKind.SQUEEZE, 0.25), (GateKind.SQUEEZE, 1.1),
        (GateKind.FOURIER, None), (GateKind.CASCADE, 0.6),
    ])
    @pytest.mark.parametrize("r", [0.0, R_4DB, 8.0])
    def test_transform_extraction(self, kind, theta, r):
        cfg = GateConfig(kind, make_epr(r), theta)
        expected = cfg.ideal_transform()
        for mean in ([0, 0], [1, 0], [0, 1], [1, 1]):
            rep = run_gate(cfg, make_coherent(*mean))
            assert np.allclose(rep.output.mean, rep.transform @ mean, atol=1e-9)
            assert np.allclose(rep.transform, expected, atol=1e-9)
        assert np.linalg.det(rep.transform) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("kind,theta", [
        (GateKind.SQUEEZE, 0.4), (GateKind.FOURIER, None), (GateKind.CASCADE, 0.9),
    ])
    def test_excess_input_independent(self, kind, theta):
        cfg = GateConfig(kind, make_epr(R_4DB), theta)
        inputs = [make_vacuum(1), make_coherent(2, -1), p_modulated(), add_classical_noise(make_coherent(1, 1), 0, 3, 0.2)]
        reports = [run_gate(cfg, s) for s in inputs]
        for rep, inp in zip(reports, inputs):
            assert np.allclose(rep.excess_cov, reports[0].excess_cov, atol=1e-10)
            assert np.allclose(rep.excess_cov, 0.5 * 10**-0.4 * np.eye(2), atol=1e-12)
            lhs = rep.transform @ inp.cov @ rep.transform.T + rep.excess_cov
            assert np.allclose(rep.output.cov, lhs, atol=1e-9)

    @pytest.mark.parametrize("deg", np.linspace(5, 85, 17))
    def test_squeezing_law_near_ideal(self, deg):
        th = np.radians(deg)
        cfg = GateConfig(GateKind.SQUEEZE, make_epr(8.0), th)
        inp = p_modulated()
        rep = run_gate(cfg, inp)
        assert rep.output.cov[1, 1] / inp.cov[1, 1] == pytest.approx(np.tan(th) ** 2, rel=1e-6)
        vac = run_gate(cfg, make_vacuum(1))
        squeezed = vac.output.cov[1, 1] - vac.excess_cov[1, 1]
        assert squeezed == pytest.approx(0.25 * np.tan(th) ** 2, abs=1e-9)

    def test_fourier_mean_map(self):
        cfg = GateConfig(GateKind.FOURIER, make_epr(8.0))
        out = run_gate(cfg, make_coherent(2.0, 3.0)).output
        assert np.allclose(out.mean, [-3.0, 2.0], atol=1e-9)

    def test_fourier_twice(self):
        cfg = GateConfig(GateKind.FOURIER, make_epr(8.0))
        out = run_gate(cfg, run_gate(cfg, make_coherent(2.0, 3.0)).output).output
        assert np.allclose(out.mean, [-2.0, -3.0], atol=1e-9)

    def test_cascade_45(self):
        rep = run_gate(GateConfig(GateKind.CASCADE, make_epr(R_4DB), np.pi / 4), make_vacuum(1))
        assert np.allclose(rep.transform, F, atol=1e-12)

    @pytest.mark.parametrize("deg", [5, 14.1, 33, 45, 60, 85])
    def test_cascade_is_fourier_after_squeeze(self, deg):
        th = np.radians(deg)
        res = make_epr(R_4DB)
        cas = run_gate(GateConfig(GateKind.CASCADE, res, th), make_vacuum(1))
        sq = run_gate(GateConfig(GateKind.SQUEEZE, res, th), make_vacuum(1))
        assert np.max(np.abs(cas.transform - F @ sq.transform)) < 1e-9
        assert np.allclose(cas.excess_cov, sq.excess_cov, atol=1e-12)

    def test_multimode_input_rejected(self):
        cfg = GateConfig(GateKind.FOURIER, make_epr(1.0))
        with pytest.raises(ValueError):
            run_gate(cfg, make_vacuum(2))

    def test_config_validation(self):
        res = make_epr(1.0)
        with pytest.raises(ValueError):
            GateConfig(GateKind.SQUEEZE, res)
        with pytest.raises(ValueError):
            GateConfig(GateKind.FOURIER, res, 0.3)
        with pytest.raises(ValueError):
            GateConfig(GateKind.CASCADE, res, np.pi / 2)


class TestClusterModel:
    @pytest.mark.parametrize("a", [-14.0, -4.0, 0.0, 1.0])
    def test_phase_branch_r0(self, a):
        assert cluster_excess_variance(ClusterNoiseModel(0.0), a) == pytest.approx((0.75, 0.75))

    @pytest.mark.parametrize("r_c", [0.0, 0.3, 1.0])
    def test_continuity(self, r_c):
        a = 10 * np.log10(1.5)
        m = ClusterNoiseModel(r_c)
        below = cluster_excess_variance(m, a - 1e-12)
        above = cluster_excess_variance(m, a + 1e-12)
        assert below == pytest.approx(above, abs=1e-9)

    @pytest.mark.parametrize("v", [1.6, 2.0, 4.0, 10.0])
    @pytest.mark.parametrize("r_c", [0.0, 0.61])
    def test_amplitude_branch_closed_form(self, v, r_c):
        # summed squared coefficients, simplified by hand:
        # var_x = e^{-2rc} (20 + (12V - 9)/V^2)/32, var_p = e^{-2rc} (2V + 3)/8
        e = np.exp(-2 * r_c)
        var_x, var_p = cluster_excess_variance(ClusterNoiseModel(r_c), 10 * np.log10(v))
        assert var_x == pytest.approx(e * (20 + (12 * v - 9) / v**2) / 32, rel=1e-12)
        assert var_p == pytest.approx(e * (2 * v + 3) / 8, rel=1e-12)

    def test_v2_values(self):
        var = cluster_excess_variance(ClusterNoiseModel(0.0), 10 * np.log10(2.0))
        assert var == pytest.approx((0.7421875, 0.875), rel=1e-12)

    @pytest.mark.parametrize("r", [0.0, 0.2, 0.4605, 1.0])
    def test_two_thirds(self, r):
        assert abs(excess_ratio_epr_vs_cluster(r) - 2 / 3) < 1e-12

    @pytest.mark.parametrize("a", [-14.0, -4.0, 0.0, 3.0, 12.0])
    def test_epr_below_cluster(self, a):
        r = R_4DB
        epr = 0.5 * np.exp(-2 * r)
        var_x, var_p = cluster_excess_variance(ClusterNoiseModel(r), a)
        assert epr < var_x and epr < var_p

    def test_negative_rc_rejected(self):
        with pytest.raises(ValueError):
            ClusterNoiseModel(-1.0)


def test_resource_db_conversion():
    assert np.exp(-2 * r_from_db(-4.0)) == pytest.approx(10**-0.4, rel=1e-14)
    with pytest.raises(ValueError):
        r_from_db(1.0)
