"""Ground states by manifold-constrained preconditioned descent.

Each iterate lives on the constraint manifold.  One step:

  1. form the L2 gradient g of the energy at u;
  2. precondition in frequency space, d = ifft( fft(g) / (|w|^(2 alpha) + kappa) )
     with kappa = max V, a positive-definite approximation of the energy
     Hessian's linear part;
  3. backtrack along u - t*d, reprojecting every trial onto the manifold,
     until the projected energy satisfies the sufficient-decrease test
     against <g, d>_L2.  On the manifold the ray reprojection does not
     change the first-order decrease rate (the fibering derivative vanishes
     at the projected point), so the plain gradient pairing is the right
     slope.

Non-convergence (iteration budget exhausted or a fully collapsed line
search) is a reported state, never an exception: comparison sweeps must be
able to aggregate partial results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence, Union

import numpy as np

from .energy import EnergyBreakdown, evaluate_I, gradient_I, weak_residual_norm
from .exceptions import AdmissibilityError, ConfigurationError, ProjectionError
from .grid import Field, Grid
from .nehari import LEVEL_TOL, level_c, level_c_infinity, nehari_project
from .problem import CheckResult, Problem
from .rearrange import rearrange as _rearrange
from .spaces import l2_norm

__all__ = [
    "Backtracking",
    "FixedStep",
    "GaussianBump",
    "SolverConfig",
    "GroundStateReport",
    "GapVerdict",
    "SymmetryReport",
    "default_start",
    "random_starts",
    "ground_state",
    "check_nonnegativity",
    "compare_c_to_c_infinity",
    "symmetry_diagnostic",
]


@dataclass(frozen=True)
class Backtracking:
    """Armijo line search; the accepted step seeds the next trial step."""

    beta: float = 0.5
    c1: float = 1e-4
    tau0: float = 1.0
    tau_max: float = 1e3
    t_min: float = 1e-16


@dataclass(frozen=True)
class FixedStep:
    """Constant step size; no monotonicity guarantee, kept for
    reproducibility studies."""

    tau: float = 0.5

    def __post_init__(self) -> None:
        if self.tau <= 0.0:
            raise ConfigurationError(f"step size must be positive, got {self.tau}")


@dataclass(frozen=True)
class GaussianBump:
    center: float = 0.0
    width: float = 1.0
    amplitude: float = 1.0


StepRule = Union[Backtracking, FixedStep]
Start = Union[GaussianBump, Field]


@dataclass(frozen=True)
class SolverConfig:
    max_iters: int = 5000
    grad_tol: float = 1e-6
    step_rule: StepRule = dc_field(default_factory=Backtracking)
    seed: int = 0
    start: Start = dc_field(default_factory=GaussianBump)

    def __post_init__(self) -> None:
        if self.grad_tol <= 0.0:
            raise ConfigurationError(f"grad_tol must be positive, got {self.grad_tol}")
        if self.max_iters < 1:
            raise ConfigurationError(f"max_iters must be at least 1, got {self.max_iters}")


@dataclass(frozen=True)
class GroundStateReport:
    u: Field
    c: float
    residual: float
    nonneg_violation: float
    symmetry_defect: float
    c_infinity: float
    iterations: int
    converged: bool
    energy: EnergyBreakdown


def default_start(grid: Grid) -> Field:
    return _bump_field(grid, GaussianBump())


def _bump_field(grid: Grid, b: GaussianBump) -> Field:
    vals = b.amplitude * np.exp(-((grid.x - b.center) ** 2) / (2.0 * b.width**2))
    return Field(grid, vals)


def random_starts(grid: Grid, count: int, seed: int = 0) -> list:
    """Seeded admissible starts: bumps with randomized center, width, height."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        b = GaussianBump(
            center=float(rng.uniform(-grid.L / 4.0, grid.L / 4.0)),
            width=float(rng.uniform(0.5, 2.0)),
            amplitude=float(rng.uniform(0.5, 2.0)),
        )
        out.append(_bump_field(grid, b))
    return out


def _as_start_field(grid: Grid, start: Start) -> Field:
    if isinstance(start, Field):
        if start.grid.N != grid.N or start.grid.L != grid.L:
            raise AdmissibilityError("start field lives on a different grid")
        return start
    return _bump_field(grid, start)


def nonneg_violation(u: Field) -> float:
    neg = np.minimum(u.values, 0.0)
    denom = l2_norm(u)
    if denom == 0.0:
        return 0.0
    return float(np.sqrt(u.grid.dx * np.sum(neg**2))) / denom


def _diagnostics(u: Field, prob: Problem) -> tuple:
    star = _rearrange(u).u_star
    denom = l2_norm(u)
    defect = 0.0 if denom == 0.0 else l2_norm(Field(u.grid, u.values - star.values)) / denom
    return nonneg_violation(u), float(defect)


def ground_state(prob: Problem, cfg: Optional[SolverConfig] = None) -> GroundStateReport:
    """Minimize the energy over the constraint manifold.

    The start must have a nonzero positive part; anything else has no ray
    projection and is rejected.  The returned iterate always lies on the
    manifold, so the reported c equals the energy of the returned field by
    construction.
    """
    cfg = cfg if cfg is not None else SolverConfig()
    u0 = _as_start_field(prob.grid, cfg.start)
    if not np.any(u0.values > 0.0):
        raise AdmissibilityError("inadmissible start: no positive part")

    rule = cfg.step_rule
    grid = prob.grid
    sym = np.abs(grid.w) ** (2.0 * prob.alpha)
    kappa = float(np.max(prob.V_values))
    precond = 1.0 / (sym + kappa)

    rep = nehari_project(u0, prob)
    u = Field(grid, rep.sigma_u * u0.values)
    E = rep.psi_max

    tau = rule.tau0 if isinstance(rule, Backtracking) else rule.tau
    iterations = 0
    converged = False

    for it in range(cfg.max_iters + 1):
        g = gradient_I(u, prob)
        res = weak_residual_norm(u, prob)
        if res <= cfg.grad_tol:
            converged = True
            break
        if it == cfg.max_iters:
            break

        d = np.real(np.fft.ifft(precond * np.fft.fft(g.values)))
        slope = grid.dx * float(np.sum(g.values * d))

        if isinstance(rule, Backtracking):
            t = tau
            accepted = False
            while t >= rule.t_min:
                trial_vals = u.values - t * d
                if np.any(trial_vals > 0.0):
                    trial = Field(grid, trial_vals)
                    try:
                        trep = nehari_project(trial, prob)
                    except ProjectionError:
                        t *= rule.beta
                        continue
                    if trep.psi_max <= E - rule.c1 * t * slope:
                        u = Field(grid, trep.sigma_u * trial_vals)
                        E = trep.psi_max
                        tau = min(2.0 * t, rule.tau_max)
                        accepted = True
                        break
                t *= rule.beta
            if not accepted:
                break  # line search collapsed; report non-convergence
        else:
            trial_vals = u.values - tau * d
            if not np.any(trial_vals > 0.0):
                break
            try:
                trep = nehari_project(Field(grid, trial_vals), prob)
            except ProjectionError:
                break
            u = Field(grid, trep.sigma_u * trial_vals)
            E = trep.psi_max
        iterations += 1

    res = weak_residual_norm(u, prob)
    energy = evaluate_I(u, prob)
    nneg, defect = _diagnostics(u, prob)
    return GroundStateReport(
        u=u,
        c=energy.total,
        residual=res,
        nonneg_violation=nneg,
        symmetry_defect=defect,
        c_infinity=math.nan,
        iterations=iterations,
        converged=converged,
        energy=energy,
    )


def check_nonnegativity(report_or_field, tol: float = 1e-6) -> CheckResult:
    """Almost-everywhere nonnegativity of a computed state, as the relative
    L2 mass of the negative part."""
    if isinstance(report_or_field, GroundStateReport):
        mag = report_or_field.nonneg_violation
    else:
        mag = nonneg_violation(report_or_field)
    return CheckResult(
        name="nonnegativity",
        passed=mag <= tol,
        detail=f"relative negative-part mass {mag:.3e} against tolerance {tol:.1e}",
        margin=tol - mag,
    )


@dataclass(frozen=True)
class GapVerdict:
    """c against the level of the limiting problem; a strict gap is the
    computable signature that the level is attained."""

    c: float
    c_infinity: float
    gap: float
    attained_signature: bool
    tol: float


def compare_c_to_c_infinity(
    prob: Problem,
    cfg: Optional[SolverConfig] = None,
    starts: Optional[Sequence[Field]] = None,
    tol: float = LEVEL_TOL,
) -> GapVerdict:
    """Solve both problems and compare levels.

    Precondition: V never exceeds V_inf on the grid (the degenerate case
    V identically V_inf is allowed and yields a zero gap to tolerance).
    """
    over = float(np.max(prob.V_values - prob.potential.V_inf))
    if over > 1e-12 * max(1.0, abs(prob.potential.V_inf)):
        raise AdmissibilityError(
            f"V exceeds V_inf by {over:.3e} somewhere; the gap comparison needs V <= V_inf"
        )
    if starts is None:
        starts = [default_start(prob.grid)]
    est = level_c(prob, starts, cfg=cfg)
    est_inf = level_c_infinity(prob, starts, cfg=cfg)
    gap = est_inf.c - est.c
    return GapVerdict(
        c=est.c,
        c_infinity=est_inf.c,
        gap=gap,
        attained_signature=bool(gap > tol),
        tol=tol,
    )


@dataclass(frozen=True)
class SymmetryReport:
    defect: float
    energy: float
    energy_rearranged: float
    rearrangement_nonincreasing: bool


def symmetry_diagnostic(report: GroundStateReport, prob: Problem) -> SymmetryReport:
    """Distance of a computed state from its symmetric decreasing shape.

    Requires the radial_increasing flag: without it the minimizer has no
    reason to be symmetric.  Also records that rearrangement did not raise
    the energy, the mechanism forcing symmetry of the minimizer.
    """
    if not prob.potential.radial_increasing:
        raise AdmissibilityError("symmetry diagnostic needs a radial increasing potential")
    u = report.u
    star = _rearrange(u).u_star
    denom = l2_norm(u)
    defect = 0.0 if denom == 0.0 else l2_norm(Field(u.grid, u.values - star.values)) / denom
    E_u = evaluate_I(u, prob).total
    E_star = evaluate_I(star, prob).total
    ok = E_star <= E_u + 1e-10 * (1.0 + abs(E_u))
    return SymmetryReport(
        defect=float(defect),
        energy=E_u,
        energy_rearranged=E_star,
        rearrangement_nonincreasing=bool(ok),
    )
