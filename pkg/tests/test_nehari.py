"""Fibering map, manifold projection, levels, and level comparisons.

The cubic closed form sigma_u = sqrt(||u||_X^2 / integral u_+^4) is the
independent oracle for the generic bracketing projector; the two never share
a code path.
"""

import numpy as np
import pytest

from fracnls import (
    AdmissibilityError,
    Field,
    GaussianBump,
    Potential,
    ProjectionError,
    SolverConfig,
    compare_levels,
    continuity_sweep,
    default_start,
    evaluate_I,
    level_c,
    level_c_infinity,
    make_grid,
    make_problem,
    nehari_project,
    norm_X,
    power_nonlinearity,
)

from conftest import positive_field

FAST = SolverConfig(max_iters=4000, grad_tol=1e-6)


def sigma_closed_form(u, prob):
    q = norm_X(u, prob.alpha, prob.potential) ** 2
    s = prob.grid.dx * np.sum(np.maximum(u.values, 0.0) ** 4)
    return np.sqrt(q / s)


def mismatch(u, prob, sigma):
    q = norm_X(u, prob.alpha, prob.potential) ** 2
    f = prob.nonlinearity.f(sigma * u.values)
    return q - prob.grid.dx * np.sum(f * u.values) / sigma


class TestProjection:
    def test_matches_cubic_closed_form(self, prob512):
        rng = np.random.default_rng(60)
        for _ in range(30):
            u = positive_field(prob512.grid, rng)
            rep = nehari_project(u, prob512)
            assert rep.sigma_u == pytest.approx(sigma_closed_form(u, prob512), rel=1e-10)

    def test_certified_manifold_residual(self, prob512):
        rng = np.random.default_rng(61)
        for _ in range(10):
            u = positive_field(prob512.grid, rng)
            rep = nehari_project(u, prob512)
            v = Field(prob512.grid, rep.sigma_u * u.values)
            scale = norm_X(v, prob512.alpha, prob512.potential) ** 2
            assert abs(rep.nehari_residual) <= 1e-10 * scale

    def test_ray_invariance(self, prob512):
        rng = np.random.default_rng(62)
        u = positive_field(prob512.grid, rng)
        base = nehari_project(u, prob512)
        for lam in (0.5, 2.0, 10.0):
            v = Field(prob512.grid, lam * u.values)
            rep = nehari_project(v, prob512)
            assert rep.sigma_u * lam == pytest.approx(base.sigma_u, rel=1e-8)
            assert rep.psi_max == pytest.approx(base.psi_max, rel=1e-8)

    def test_fibering_maximum(self, prob512):
        rng = np.random.default_rng(63)
        u = positive_field(prob512.grid, rng)
        rep = nehari_project(u, prob512)
        sigmas = np.logspace(-3, 3, 200)
        for s in sigmas:
            val = evaluate_I(Field(prob512.grid, s * u.values), prob512).total
            assert val <= rep.psi_max + 1e-9 * abs(rep.psi_max)

    def test_single_sign_change_of_mismatch(self, prob512):
        rng = np.random.default_rng(64)
        u = positive_field(prob512.grid, rng)
        sigmas = np.logspace(-3, 3, 200)
        signs = np.sign([mismatch(u, prob512, s) for s in sigmas])
        changes = np.sum(signs[:-1] != signs[1:])
        assert changes == 1

    def test_bracket_contains_root(self, prob512):
        rng = np.random.default_rng(65)
        u = positive_field(prob512.grid, rng)
        rep = nehari_project(u, prob512)
        lo, hi = rep.bracket
        assert lo <= rep.sigma_u <= hi

    def test_nonpositive_start_rejected(self, prob512):
        u = Field(prob512.grid, -np.ones(prob512.grid.N))
        with pytest.raises(ProjectionError):
            nehari_project(u, prob512)

    def test_already_on_manifold_is_fixed_point(self, prob512):
        rng = np.random.default_rng(66)
        u = positive_field(prob512.grid, rng)
        rep = nehari_project(u, prob512)
        v = Field(prob512.grid, rep.sigma_u * u.values)
        rep2 = nehari_project(v, prob512)
        assert rep2.sigma_u == pytest.approx(1.0, rel=1e-9)


class TestLevels:
    def test_level_c_picks_best_start(self, prob512):
        starts = [
            default_start(prob512.grid),
            Field(prob512.grid, np.exp(-((prob512.grid.x - 3.0) ** 2))),
        ]
        est = level_c(prob512, starts, cfg=FAST)
        assert est.converged
        assert est.method == "nehari_min"
        assert est.c == pytest.approx(evaluate_I(est.minimizer, prob512).total, rel=1e-12)

    def test_level_c_skips_inadmissible_starts(self, prob512):
        starts = [
            Field(prob512.grid, -np.ones(prob512.grid.N)),
            default_start(prob512.grid),
        ]
        est = level_c(prob512, starts, cfg=FAST)
        assert est.converged

    def test_all_inadmissible_raises(self, prob512):
        starts = [Field(prob512.grid, -np.ones(prob512.grid.N))]
        with pytest.raises(AdmissibilityError):
            level_c(prob512, starts, cfg=FAST)

    def test_refinement_drift_reported(self, cubic, flat_potential):
        g = make_grid(20.0, 256)
        prob = make_problem(g, 0.75, cubic, flat_potential)
        est = level_c(prob, [default_start(g)], cfg=FAST, refine=True)
        assert np.isfinite(est.refinement_drift)
        assert est.refinement_drift <= 1e-6

    def test_level_c_infinity_uses_constant(self, prob_well):
        est = level_c_infinity(prob_well, [default_start(prob_well.grid)], cfg=FAST)
        flat = make_problem(prob_well.grid, 0.75, prob_well.nonlinearity,
                            Potential.constant(2.0))
        direct = level_c(flat, [default_start(prob_well.grid)], cfg=FAST)
        assert est.c == pytest.approx(direct.c, rel=1e-9)


class TestCompareLevels:
    def test_ordering_under_domination(self, prob512):
        V_low = Potential.constant(1.0)
        V_high = Potential.constant(1.5)
        cmp = compare_levels(V_high, V_low, prob512, cfg=FAST)
        assert cmp.ordered
        assert cmp.c_a > cmp.c_b
        assert cmp.margin == pytest.approx(cmp.c_a - cmp.c_b, rel=1e-12)

    def test_precondition_enforced(self, prob512):
        V_low = Potential.constant(1.0)
        V_high = Potential.constant(1.5)
        with pytest.raises(AdmissibilityError):
            compare_levels(V_low, V_high, prob512, cfg=FAST)


class TestContinuitySweep:
    def test_table_structure_and_monotonicity(self, prob512, flat_potential):
        eps = [0.4, 0.2, 0.1, 0.05]
        table = continuity_sweep(flat_potential, eps, prob512, cfg=FAST)
        assert [r.eps for r in table.rows] == [0.0] + sorted(eps)
        base = table.rows[0]
        assert base.c == pytest.approx(table.c_base, rel=1e-12)
        cs = [r.c for r in table.rows]
        assert all(b > a for a, b in zip(cs, cs[1:]))
        assert table.monotone
        assert table.moduli_decreasing
