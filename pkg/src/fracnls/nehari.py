"""Ray projection onto the constraint manifold and the ground-state level.

Along the ray sigma -> sigma*u the energy psi(sigma) = I(sigma*u) rises,
peaks once, and falls; the peak sigma_u is the unique solution of

    ||u||_X^2 = integral f(sigma*u) u / sigma,

and sigma_u * u lies on the manifold { v != 0 : I'(v)v = 0 }.  The level

    c = inf { I(v) : v on the manifold }

is computed by descent over ray directions (module ``solver``), never by
explicit path optimization: the mountain-pass level and the manifold
infimum coincide, and paths are never represented as data.

Root finding inside ``nehari_project`` brackets the mismatch

    m(sigma) = ||u||_X^2 - integral f(sigma*u) u / sigma

by doubling and halving away from sigma = 1 and then applies a bracketed
hybrid (inverse-quadratic with bisection fallback) to machine precision;
strict monotonicity of m under the f-hypotheses guarantees a single root.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from .energy import evaluate_I
from .exceptions import AdmissibilityError, ProjectionError
from .grid import Field, make_grid, refine_field
from .problem import Potential, Problem
from .spaces import inner_product_X

__all__ = [
    "FiberingReport",
    "LevelEstimate",
    "LevelComparison",
    "ContinuityRow",
    "ContinuityTable",
    "nehari_project",
    "level_c",
    "level_c_infinity",
    "compare_levels",
    "continuity_sweep",
]

LEVEL_TOL = 1e-6  # absolute comparison tolerance on c, set by multistart scatter

_MAX_BRACKET_STEPS = 200


@dataclass(frozen=True)
class FiberingReport:
    """Projection of one ray onto the manifold."""

    sigma_u: float
    psi_max: float
    bracket: tuple
    iterations: int
    nehari_residual: float


@dataclass(frozen=True)
class LevelEstimate:
    """Best level found over the supplied starts; c is positive for every
    validated problem."""

    c: float
    minimizer: Field
    method: str = "nehari_min"
    refinement_drift: float = float("nan")
    iterations: int = 0
    converged: bool = True


def _mismatch(u_vals: np.ndarray, Q: float, prob: Problem, dx: float):
    nl = prob.nonlinearity

    def m(sigma: float) -> float:
        return Q - dx * float(np.sum(nl.f(sigma * u_vals) * u_vals)) / sigma

    return m


def nehari_project(u: Field, prob: Problem) -> FiberingReport:
    """Unique sigma_u > 0 with sigma_u * u on the manifold.

    Rejects rays without positive part: f vanishes on xi <= 0, so psi is a
    pure upward parabola there and never crosses.
    """
    vals = u.values
    if not np.any(vals > 0.0):
        raise ProjectionError("ray has no positive part, the fibering map has no maximizer")
    Q = inner_product_X(u, u, prob.alpha, prob.V_values)
    if Q <= 0.0:
        raise AdmissibilityError("zero field cannot be projected")
    dx = u.grid.dx
    m = _mismatch(vals, Q, prob, dx)

    lo = hi = 1.0
    m1 = m(1.0)
    steps = 0
    if m1 == 0.0:
        sigma = 1.0
        bracket = (1.0, 1.0)
        nfev = 0
    else:
        if m1 > 0.0:
            # root lies above: double until the mismatch turns negative
            while m(hi) > 0.0:
                hi *= 2.0
                steps += 1
                if steps > _MAX_BRACKET_STEPS:
                    raise ProjectionError(
                        f"mismatch stayed positive up to sigma={hi:.3e}; "
                        "nonlinearity may be subcritical on this ray"
                    )
            lo = hi / 2.0
        else:
            while m(lo) < 0.0:
                lo /= 2.0
                steps += 1
                if steps > _MAX_BRACKET_STEPS:
                    raise ProjectionError(
                        f"mismatch stayed negative down to sigma={lo:.3e}; "
                        "f(xi)/xi may not vanish at 0+ on this ray"
                    )
            hi = lo * 2.0
        bracket = (lo, hi)
        sigma, info = brentq(m, lo, hi, xtol=1e-300, rtol=4.0 * np.finfo(float).eps,
                             maxiter=200, full_output=True)
        nfev = int(info.iterations)

    # certify: residual of the projected point in manifold units
    v = Field(u.grid, sigma * vals)
    psi_max = evaluate_I(v, prob).total
    Qv = sigma * sigma * Q
    Sv = dx * float(np.sum(prob.nonlinearity.f(v.values) * v.values))
    residual = Qv - Sv
    return FiberingReport(
        sigma_u=float(sigma),
        psi_max=float(psi_max),
        bracket=bracket,
        iterations=steps + nfev,
        nehari_residual=float(residual),
    )


def level_c(
    prob: Problem,
    starts: Sequence[Field],
    cfg=None,
    refine: bool = False,
) -> LevelEstimate:
    """Minimize I over the manifold from each start; keep the best level.

    With ``refine=True`` the winning minimizer is interpolated onto a grid
    with twice the points and re-solved; the relative change of c is
    recorded as ``refinement_drift``.
    """
    from .solver import SolverConfig, ground_state

    if not starts:
        raise AdmissibilityError("at least one start is required")
    cfg = cfg if cfg is not None else SolverConfig()
    runs = []
    for s in starts:
        try:
            runs.append(ground_state(prob, replace(cfg, start=s)))
        except (AdmissibilityError, ProjectionError):
            continue
    if not runs:
        raise AdmissibilityError("no admissible start among the supplied fields")
    converged = [r for r in runs if r.converged]
    best = min(converged or runs, key=lambda r: r.c)

    drift = float("nan")
    if refine:
        fine_grid = make_grid(prob.grid.L, 2 * prob.grid.N)
        fine_prob = prob.on_grid(fine_grid)
        fine_start = refine_field(best.u, 2)
        fine = ground_state(fine_prob, replace(cfg, start=fine_start))
        drift = abs(fine.c - best.c) / abs(best.c)

    return LevelEstimate(
        c=best.c,
        minimizer=best.u,
        method="nehari_min",
        refinement_drift=drift,
        iterations=best.iterations,
        converged=best.converged,
    )


def level_c_infinity(
    prob: Problem,
    starts: Sequence[Field],
    cfg=None,
    refine: bool = False,
) -> LevelEstimate:
    """The level of the limiting problem: V frozen at the constant V_inf."""
    flat = Potential.constant(prob.potential.V_inf)
    return level_c(prob.with_potential(flat), starts, cfg=cfg, refine=refine)


@dataclass(frozen=True)
class LevelComparison:
    c_a: float
    c_b: float
    margin: float
    ordered: bool


def compare_levels(
    V_a: Potential,
    V_b: Potential,
    prob: Problem,
    starts: Optional[Sequence[Field]] = None,
    cfg=None,
    tol: float = LEVEL_TOL,
) -> LevelComparison:
    """Levels under two pointwise-ordered potentials; the larger potential
    cannot have the smaller level."""
    a_vals = V_a.on(prob.grid)
    b_vals = V_b.on(prob.grid)
    if np.min(a_vals - b_vals) < -1e-12:
        raise AdmissibilityError("V_a must dominate V_b pointwise for the comparison")
    if starts is None:
        from .solver import default_start

        starts = [default_start(prob.grid)]
    c_a = level_c(prob.with_potential(V_a), starts, cfg=cfg).c
    c_b = level_c(prob.with_potential(V_b), starts, cfg=cfg).c
    return LevelComparison(c_a=c_a, c_b=c_b, margin=c_a - c_b, ordered=c_a >= c_b - tol)


@dataclass(frozen=True)
class ContinuityRow:
    eps: float
    c: float
    iterations: int
    refinement_drift: float


@dataclass(frozen=True)
class ContinuityTable:
    rows: tuple
    c_base: float
    monotone: bool
    moduli_decreasing: bool


def continuity_sweep(
    V: Potential,
    epsilons: Sequence[float],
    prob: Problem,
    starts: Optional[Sequence[Field]] = None,
    cfg=None,
    refine: bool = False,
    tol: float = LEVEL_TOL,
) -> ContinuityTable:
    """Levels of the shifted potentials V + eps.

    The unshifted level always appears as the eps = 0 row and the table is
    sorted by eps.  Beside the rows the table records whether c is monotone
    in eps and whether |c(eps) - c(0)| shrinks as eps does; both verdicts are
    reported, not raised, so sweeps aggregate partial behavior.
    """
    if starts is None:
        from .solver import default_start

        starts = [default_start(prob.grid)]
    base = level_c(prob.with_potential(V), starts, cfg=cfg, refine=refine)
    rows = []
    for eps in sorted({0.0, *(float(e) for e in epsilons)}):
        if eps == 0.0:
            est = base
        else:
            est = level_c(prob.with_potential(V.shifted(eps)), starts, cfg=cfg, refine=refine)
        rows.append(ContinuityRow(eps=eps, c=est.c, iterations=est.iterations,
                                  refinement_drift=est.refinement_drift))

    cs = [r.c for r in rows]
    monotone = all(b >= a - tol for a, b in zip(cs, cs[1:]))
    moduli = [abs(r.c - base.c) for r in rows if r.eps > 0.0]
    moduli_decreasing = all(b >= a for a, b in zip(moduli, moduli[1:]))
    return ContinuityTable(rows=tuple(rows), c_base=base.c, monotone=monotone,
                           moduli_decreasing=moduli_decreasing)
