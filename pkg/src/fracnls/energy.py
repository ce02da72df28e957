"""The energy functional, its limiting version, and the weak-form residual.

    I(u) = 1/2 * ( |u|_alpha^2 + integral V u^2 ) - integral F(u)

``evaluate_I_infinity`` replaces V by the constant V_inf.  The gradient is
represented as the plain field

    g = composed_operator(u, alpha) + V*u - f(u),

whose L2 pairing with any grid test function equals the directional
derivative of I; g = 0 identifies a weak solution on the discrete space.
The convergence criterion ``weak_residual_norm`` is the L2 norm of g scaled
by the X-norm of u; a true dual norm is not needed for a stopping rule and
is documented as such.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import AdmissibilityError
from .grid import Field
from .problem import Problem
from .spaces import norm_X, seminorm_alpha

__all__ = [
    "EnergyBreakdown",
    "evaluate_I",
    "evaluate_I_infinity",
    "gradient_I",
    "weak_residual_norm",
]


@dataclass(frozen=True)
class EnergyBreakdown:
    """I(u) split into its three parts; ``total = kinetic + potential_term - nonlinear``."""

    kinetic: float
    potential_term: float
    nonlinear: float

    @property
    def total(self) -> float:
        return self.kinetic + self.potential_term - self.nonlinear


def _breakdown(u: Field, prob: Problem, V_vals: np.ndarray) -> EnergyBreakdown:
    g = u.grid
    kinetic = 0.5 * seminorm_alpha(u, prob.alpha) ** 2
    potential_term = 0.5 * g.dx * float(np.sum(V_vals * u.values**2))
    nonlinear = g.dx * float(np.sum(prob.nonlinearity.F(u.values)))
    return EnergyBreakdown(kinetic=kinetic, potential_term=potential_term, nonlinear=nonlinear)


def evaluate_I(u: Field, prob: Problem) -> EnergyBreakdown:
    """Energy with the spatial potential; kinetic part frequency side,
    potential and nonlinear parts by grid quadrature."""
    return _breakdown(u, prob, prob.V_values)


def evaluate_I_infinity(u: Field, prob: Problem) -> EnergyBreakdown:
    """Energy of the limiting problem, V replaced by the constant V_inf."""
    V_inf = np.broadcast_to(prob.potential.V_inf, (u.grid.N,))
    return _breakdown(u, prob, V_inf)


def gradient_I(u: Field, prob: Problem) -> Field:
    """L2 representative of the derivative of I at u."""
    sym = np.abs(u.grid.w) ** (2.0 * prob.alpha)
    lin = np.real(np.fft.ifft(sym * np.fft.fft(u.values)))
    vals = lin + prob.V_values * u.values - prob.nonlinearity.f(u.values)
    return Field(u.grid, vals)


def weak_residual_norm(u: Field, prob: Problem) -> float:
    """Stopping-rule residual ``||gradient||_L2 / ||u||_X``; rejects u = 0."""
    nx = norm_X(u, prob.alpha, prob.V_values)
    if nx == 0.0:
        raise AdmissibilityError("residual of the zero field is undefined")
    g = gradient_I(u, prob)
    l2 = float(np.sqrt(u.grid.dx * np.sum(g.values**2)))
    return l2 / nx
