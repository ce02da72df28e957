"""Nonlinearity and potential hypotheses: constructors, validators, config."""

import numpy as np
import pytest

from fracnls import (
    ConfigurationError,
    HypothesisError,
    Potential,
    custom_nonlinearity,
    growth_bound_check,
    make_grid,
    make_problem,
    power_nonlinearity,
    problem_from_config,
    validate_nonlinearity,
    validate_potential,
)

from conftest import WELL_EXPR


class TestNonlinearityConstruction:
    def test_cubic_defaults(self):
        nl = power_nonlinearity(3.0)
        assert nl.theta == 4.0
        assert nl.p0 == 3.5
        xi = np.array([-1.0, 0.0, 2.0])
        assert np.allclose(nl.f(xi), [0.0, 0.0, 8.0])
        assert np.allclose(nl.F(xi), [0.0, 0.0, 4.0])
        assert np.allclose(nl.fprime(xi), [0.0, 0.0, 12.0])

    def test_p_at_most_one_rejected_naming_f1(self):
        with pytest.raises(HypothesisError, match="f1"):
            power_nonlinearity(1.0)
        with pytest.raises(HypothesisError, match="f1"):
            power_nonlinearity(0.5)

    def test_theta_must_exceed_two(self):
        with pytest.raises(ConfigurationError, match="theta"):
            custom_nonlinearity(lambda s: s**2, theta=2.0, p0=3.0)

    def test_growth_window_p0_vs_theta(self):
        with pytest.raises(ConfigurationError, match="p0"):
            custom_nonlinearity(lambda s: s**3, theta=4.0, p0=2.5)

    def test_custom_primitive_by_quadrature(self):
        nl = custom_nonlinearity(lambda s: s**3, theta=4.0, p0=3.5)
        xi = np.linspace(0.0, 3.0, 7)
        assert np.allclose(nl.F(xi), xi**4 / 4.0, rtol=1e-13)


class TestValidateNonlinearity:
    def test_cubic_passes_all_four(self):
        report = validate_nonlinearity(power_nonlinearity(3.0))
        assert report.passed
        names = [c.name for c in report.checks]
        for tag in ("f0", "f1", "f2", "f3"):
            assert any(tag in n for n in names)

    def test_linear_fails_f1(self):
        # f(s) = s has constant ratio f/s: hypothesis (f1) must fail by name
        nl = custom_nonlinearity(lambda s: s, theta=2.5, p0=2.0)
        report = validate_nonlinearity(nl)
        assert not report.passed
        assert any("f1" in c.name for c in report.failures())
        with pytest.raises(HypothesisError, match="f1"):
            report.raise_on_failure()

    def test_square_with_theta_four_fails_f2(self):
        # theta F = (4/3) xi^3 exceeds xi f = xi^3, violating (f2)
        nl = custom_nonlinearity(lambda s: s**2, theta=4.0, p0=3.5)
        report = validate_nonlinearity(nl)
        assert not report.passed
        assert any("f2" in c.name for c in report.failures())

    def test_supercritical_tail_fails_f3(self):
        # f/xi^p0 with p0 = 2.5 grows for f = s^3: (f3) must fail
        nl = custom_nonlinearity(lambda s: s**3, theta=3.0, p0=2.5)
        report = validate_nonlinearity(nl)
        assert any("f3" in c.name for c in report.failures())


class TestGrowthBound:
    def test_cubic_constant_is_one(self):
        # f = xi^3 <= eps xi + C xi^3 forces C -> 1 as the tail dominates
        nl = power_nonlinearity(3.0)
        C = growth_bound_check(nl, epsilon=0.1, p0=3.0)
        assert C == pytest.approx(1.0, abs=1e-6)

    def test_smaller_epsilon_larger_constant(self):
        nl = power_nonlinearity(3.0)
        c_loose = growth_bound_check(nl, epsilon=0.5, p0=3.0)
        c_tight = growth_bound_check(nl, epsilon=0.01, p0=3.0)
        assert c_tight >= c_loose


class TestPotential:
    def test_constant(self):
        g = make_grid(10.0, 64)
        V = Potential.constant(2.0)
        assert np.allclose(V.on(g), 2.0)
        assert V.V_inf == 2.0 and V.radial_increasing

    def test_expr_well(self):
        g = make_grid(10.0, 128)
        V = Potential.from_expr(WELL_EXPR, V0=1.0, V_inf=2.0,
                                radial_increasing=True, below_Vinf=True)
        vals = V.on(g)
        assert vals[g.N // 2] == pytest.approx(1.0)
        assert np.all(vals < 2.0)

    def test_nonpositive_floor_rejected(self):
        with pytest.raises(HypothesisError, match="V1"):
            Potential.from_expr("t*0", V0=0.0, V_inf=0.0)

    def test_table_length_checked(self):
        g = make_grid(10.0, 64)
        V = Potential.from_table(np.ones(32), V0=1.0, V_inf=1.0)
        with pytest.raises(ConfigurationError, match="table"):
            V.on(g)

    def test_shifted_expr(self):
        g = make_grid(10.0, 64)
        V = Potential.from_expr(WELL_EXPR, V0=1.0, V_inf=2.0)
        W = V.shifted(0.25)
        assert np.allclose(W.on(g), V.on(g) + 0.25)
        assert W.V_inf == 2.25 and W.V0 == 1.25

    def test_shift_cannot_sink_floor(self):
        V = Potential.constant(1.0)
        with pytest.raises(ConfigurationError):
            V.shifted(-1.0)

    def test_config_round_trip(self):
        V = Potential.from_expr(WELL_EXPR, V0=1.0, V_inf=2.0,
                                radial_increasing=True, below_Vinf=True)
        d = V.config_dict()
        assert d["expr"] == WELL_EXPR
        assert d["flags"]["below_Vinf"] is True

    def test_callable_not_serializable(self):
        V = Potential.from_callable(lambda t: 1.0 + t * 0, V0=1.0, V_inf=1.0)
        with pytest.raises(ConfigurationError):
            V.config_dict()


class TestValidatePotential:
    def test_well_passes(self):
        g = make_grid(20.0, 512)
        V = Potential.from_expr(WELL_EXPR, V0=1.0, V_inf=2.0,
                                radial_increasing=True, below_Vinf=True)
        report = validate_potential(V, g)
        assert report.passed, report.failures()

    def test_floor_violation_names_v1(self):
        g = make_grid(20.0, 512)
        V = Potential.from_expr("1.0 - 0.9*exp(-t**2)", V0=1.0, V_inf=1.0)
        report = validate_potential(V, g)
        assert any("V1" in c.name for c in report.failures())

    def test_wrong_limit_names_edge_check(self):
        # claimed limit 3 but the tails sit near 2: the asymptotic proxy fails
        g = make_grid(20.0, 512)
        V = Potential.from_expr(WELL_EXPR, V0=1.0, V_inf=3.0)
        report = validate_potential(V, g)
        assert not report.passed

    def test_asymmetric_fails_v5(self):
        g = make_grid(20.0, 512)
        V = Potential.from_expr("2.0 - 1.0/(1.0 + (t - 3.0)**2)", V0=1.0, V_inf=2.0,
                                radial_increasing=True)
        report = validate_potential(V, g)
        assert any("V5" in c.name for c in report.failures())

    def test_above_limit_fails_v4_when_flagged(self):
        g = make_grid(20.0, 512)
        V = Potential.from_expr("2.0 + 1.0/(1.0 + t**2)", V0=2.0, V_inf=2.0,
                                below_Vinf=True)
        report = validate_potential(V, g)
        assert any("V4" in c.name for c in report.failures())


class TestMakeProblem:
    def test_happy_path_validates(self, grid512, cubic, well_potential):
        prob = make_problem(grid512, 0.75, cubic, well_potential)
        assert prob.V_values.shape == (grid512.N,)
        assert prob.alpha == 0.75

    def test_invalid_hypothesis_raises(self, grid512, well_potential):
        nl = custom_nonlinearity(lambda s: s**2, theta=4.0, p0=3.5)
        with pytest.raises(HypothesisError, match="f2"):
            make_problem(grid512, 0.75, nl, well_potential)

    def test_validation_can_be_skipped(self, grid512, well_potential):
        nl = custom_nonlinearity(lambda s: s**2, theta=4.0, p0=3.5)
        prob = make_problem(grid512, 0.75, nl, well_potential, validate=False)
        assert prob.nonlinearity is nl

    def test_alpha_range_enforced(self, grid512, cubic, well_potential):
        with pytest.raises(ConfigurationError):
            make_problem(grid512, 0.5, cubic, well_potential)


class TestProblemFromConfig:
    BASE = {
        "alpha": 0.75,
        "L": 20.0,
        "N": 256,
        "nonlinearity": {"kind": "power", "p": 3.0},
        "potential": {"expr": WELL_EXPR, "V0": 1.0, "Vinf": 2.0,
                      "flags": {"radial_increasing": True, "below_Vinf": True}},
    }

    def test_happy_path(self):
        prob = problem_from_config(dict(self.BASE))
        assert prob.grid.N == 256
        assert prob.potential.below_Vinf

    def test_missing_key(self):
        cfg = dict(self.BASE)
        del cfg["alpha"]
        with pytest.raises(ConfigurationError, match="alpha"):
            problem_from_config(cfg)

    def test_constant_fallthrough(self):
        cfg = dict(self.BASE)
        cfg["potential"] = {"V0": 1.5, "Vinf": 1.5}
        prob = problem_from_config(cfg)
        assert np.allclose(prob.V_values, 1.5)

    def test_shape_required_when_levels_differ(self):
        cfg = dict(self.BASE)
        cfg["potential"] = {"V0": 1.0, "Vinf": 2.0}
        with pytest.raises(ConfigurationError):
            problem_from_config(cfg)

    def test_p_one_names_f1(self):
        cfg = dict(self.BASE)
        cfg["nonlinearity"] = {"kind": "power", "p": 1.0}
        with pytest.raises(HypothesisError, match="f1"):
            problem_from_config(cfg)
