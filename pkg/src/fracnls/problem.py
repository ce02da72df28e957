"""Nonlinearity and potential data with sampled hypothesis validators.

The nonlinearity is the pair ``(f, F)`` together with the superquadraticity
exponent ``theta`` and the growth exponent ``p0``.  The structural
hypotheses, checked on samples rather than proved:

  (f0)  f(xi) = 0 for xi <= 0 and f(xi) >= 0 for xi >= 0.
  (f1)  xi -> f(xi)/xi is strictly increasing on xi > 0 and -> 0 at 0+.
  (f2)  0 < theta*F(xi) <= xi*f(xi) for xi > 0 (F vanishes on xi <= 0 by
        (f0), so the lower bound is enforced on the positive axis only).
  (f3)  f(xi)/xi^p0 -> 0 as xi -> infinity.

The potential carries a floor ``V0``, an asymptotic constant ``V_inf``, and
two structural flags:

  (V1)  V(t) >= V0 > 0 everywhere.
  (V2)/(V3)  liminf of V at infinity equals V_inf; proxied by the minimum of
        V over the outer fraction of the grid staying within ``edge_tol`` of
        V_inf.
  (V4)  if flagged below_Vinf: V <= V_inf with strict inequality somewhere.
  (V5)  if flagged radial_increasing: V even and nondecreasing in |t|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Callable, Optional, Sequence

import numpy as np

from .exceptions import ConfigurationError, HypothesisError
from .grid import Grid, make_grid

__all__ = [
    "Nonlinearity",
    "Potential",
    "Problem",
    "CheckResult",
    "ValidationReport",
    "power_nonlinearity",
    "custom_nonlinearity",
    "validate_nonlinearity",
    "growth_bound_check",
    "validate_potential",
    "make_problem",
    "problem_from_config",
]

# nodes for F(xi) = xi * integral_0^1 f(xi*s) ds on the custom path
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(64)
_GL_S = 0.5 * (_GL_NODES + 1.0)
_GL_W = 0.5 * _GL_WEIGHTS


@dataclass(frozen=True)
class Nonlinearity:
    """The pair ``(f, F)`` with exponents ``(theta, p0)``.

    ``kind`` is ``"power"`` (``f(xi) = max(xi, 0)^p`` with closed-form
    primitive) or ``"custom"`` (callable ``f`` with derivative, primitive by
    Gauss-Legendre quadrature of ``F(xi) = xi * integral_0^1 f(xi s) ds``).
    """

    kind: str
    theta: float
    p0: float
    p: Optional[float] = None
    f_callable: Optional[Callable[[np.ndarray], np.ndarray]] = None
    fprime_callable: Optional[Callable[[np.ndarray], np.ndarray]] = None

    def __post_init__(self) -> None:
        if self.kind not in ("power", "custom"):
            raise ConfigurationError(f"unknown nonlinearity kind {self.kind!r}")
        if self.theta <= 2.0:
            raise ConfigurationError(f"theta must exceed 2, got {self.theta}")
        if self.p0 + 1.0 <= self.theta:
            raise ConfigurationError(
                f"growth exponent must satisfy p0 + 1 > theta, got p0={self.p0}, theta={self.theta}"
            )
        if self.kind == "power":
            if self.p is None or self.p <= 1.0:
                raise ConfigurationError(f"power kind needs p > 1, got {self.p}")
        else:
            if self.f_callable is None:
                raise ConfigurationError("custom kind needs a callable f")

    def f(self, xi: np.ndarray) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        pos = np.maximum(xi, 0.0)
        if self.kind == "power":
            return pos**self.p
        return np.where(xi > 0.0, self.f_callable(pos), 0.0)

    def fprime(self, xi: np.ndarray) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        pos = np.maximum(xi, 0.0)
        if self.kind == "power":
            return self.p * pos ** (self.p - 1.0)
        if self.fprime_callable is None:
            raise ConfigurationError("custom nonlinearity was built without a derivative")
        return np.where(xi > 0.0, self.fprime_callable(pos), 0.0)

    def F(self, xi: np.ndarray) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        pos = np.maximum(xi, 0.0)
        if self.kind == "power":
            return pos ** (self.p + 1.0) / (self.p + 1.0)
        # F(xi) = xi * sum_j w_j f(xi * s_j); exact for polynomial f up to
        # degree 127, plenty for a primitive used inside an energy
        prod = pos[..., None] * _GL_S
        vals = self.f_callable(prod) * _GL_W
        return np.where(xi > 0.0, pos * vals.sum(axis=-1), 0.0)


def power_nonlinearity(p: float, p0: Optional[float] = None) -> Nonlinearity:
    """Power nonlinearity ``f(xi) = max(xi, 0)^p`` with ``theta = p + 1``.

    Any ``p0 > p`` is admissible; the default ``p + 1/2`` keeps the growth
    check nondegenerate.
    """
    p = float(p)
    if p <= 1.0:
        raise HypothesisError(
            f"f1: xi -> xi^p / xi = xi^(p-1) is not strictly increasing for p = {p}; need p > 1"
        )
    if p0 is None:
        p0 = p + 0.5
    return Nonlinearity(kind="power", theta=p + 1.0, p0=float(p0), p=p)


def custom_nonlinearity(
    f: Callable[[np.ndarray], np.ndarray],
    theta: float,
    p0: float,
    fprime: Optional[Callable[[np.ndarray], np.ndarray]] = None,
) -> Nonlinearity:
    return Nonlinearity(
        kind="custom", theta=float(theta), p0=float(p0), f_callable=f, fprime_callable=fprime
    )


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a single named property check."""

    name: str
    passed: bool
    detail: str = ""
    margin: float = math.nan


@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    checks: tuple

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def raise_on_failure(self) -> None:
        bad = self.failures()
        if bad:
            msg = "; ".join(f"{c.name}: {c.detail}" for c in bad)
            raise HypothesisError(msg)


def _sample_xi(sample_count: int) -> np.ndarray:
    if sample_count < 100:
        raise ConfigurationError(f"sample_count must be >= 100, got {sample_count}")
    return np.logspace(-6.0, 3.0, int(sample_count))


def validate_nonlinearity(nl: Nonlinearity, sample_count: int = 400) -> ValidationReport:
    """Check (f0)-(f3) on a log-spaced sample of ``xi in [1e-6, 1e3]``.

    Sampled validation, not proof: each check reports the first violating
    sample point when it fails.
    """
    xi = _sample_xi(sample_count)
    checks = []

    neg = nl.f(-xi)
    pos = nl.f(xi)
    bad = np.flatnonzero(neg != 0.0)
    if bad.size:
        checks.append(CheckResult("f0", False, f"f({-xi[bad[0]]:.3e}) = {neg[bad[0]]:.3e} != 0"))
    else:
        bad = np.flatnonzero(pos < 0.0)
        if bad.size:
            checks.append(CheckResult("f0", False, f"f({xi[bad[0]]:.3e}) < 0"))
        else:
            checks.append(CheckResult("f0", True, "f vanishes on xi <= 0 and is nonnegative on xi >= 0"))

    ratio = pos / xi
    diffs = np.diff(ratio)
    if np.any(diffs <= 0.0):
        i = int(np.flatnonzero(diffs <= 0.0)[0])
        checks.append(
            CheckResult(
                "f1",
                False,
                f"f(xi)/xi not strictly increasing between xi={xi[i]:.3e} and xi={xi[i+1]:.3e}",
            )
        )
    else:
        # strict increase toward 0+ forces the sampled ratio to whatever
        # infimum it has; flag a plateau at the small end as a failed limit
        checks.append(
            CheckResult("f1", True, f"f(xi)/xi strictly increasing; value at xi=1e-6 is {ratio[0]:.3e}",
                        margin=float(np.min(diffs)))
        )

    Fv = nl.F(xi)
    lower_bad = np.flatnonzero(nl.theta * Fv <= 0.0)
    upper = xi * pos - nl.theta * Fv
    upper_bad = np.flatnonzero(upper < -1e-10 * np.maximum(xi * pos, 1e-300))
    if lower_bad.size:
        checks.append(CheckResult("f2", False, f"theta*F({xi[lower_bad[0]]:.3e}) <= 0"))
    elif upper_bad.size:
        i = int(upper_bad[0])
        checks.append(
            CheckResult("f2", False, f"theta*F(xi) > xi*f(xi) at xi={xi[i]:.3e} (excess {-upper[i]:.3e})")
        )
    else:
        checks.append(CheckResult("f2", True, "0 < theta*F(xi) <= xi*f(xi) on the sample",
                                  margin=float(np.min(upper / np.maximum(xi * pos, 1e-300)))))

    tail = xi[xi >= 1.0]
    s = nl.f(tail) / tail**nl.p0
    sd = np.diff(s)
    if np.any(sd >= 0.0):
        i = int(np.flatnonzero(sd >= 0.0)[0])
        checks.append(
            CheckResult("f3", False, f"f(xi)/xi^p0 not decreasing on the tail at xi={tail[i]:.3e}")
        )
    else:
        checks.append(CheckResult("f3", True, f"f/xi^p0 decreasing on the tail, last value {s[-1]:.3e}"))

    return ValidationReport(all(c.passed for c in checks), tuple(checks))


def growth_bound_check(
    nl: Nonlinearity, epsilon: float, p0: Optional[float] = None, sample_count: int = 400
) -> float:
    """Smallest sampled constant with ``f(xi) <= epsilon*xi + C * xi^p0``.

    Also verifies the integrated version ``F(xi) <= (epsilon/2) xi^2 +
    (C/(p0+1)) xi^(p0+1)`` on the same sample.  ``p0`` defaults to the
    nonlinearity's own growth exponent; it may be overridden by any exponent
    for which the ratio stays bounded (for the power family, any p0 >= p).
    """
    if epsilon <= 0.0:
        raise ConfigurationError(f"epsilon must be positive, got {epsilon}")
    q = nl.p0 if p0 is None else float(p0)
    xi = _sample_xi(sample_count)
    excess = nl.f(xi) - epsilon * xi
    ratio = excess / xi**q
    C = float(max(np.max(ratio), 0.0))
    if not np.isfinite(C):
        raise HypothesisError(f"f(xi) - epsilon*xi grows faster than xi^{q} on the sample")
    bound_F = 0.5 * epsilon * xi**2 + (C / (q + 1.0)) * xi ** (q + 1.0)
    slack = 1e-10 * np.maximum(bound_F, 1e-300)
    viol = np.flatnonzero(nl.F(xi) > bound_F + slack)
    if viol.size:
        i = int(viol[0])
        raise HypothesisError(
            f"integrated growth bound fails at xi={xi[i]:.3e}: F={nl.F(xi[i : i + 1])[0]:.6e} > {bound_F[i]:.6e}"
        )
    return C


class Potential:
    """Potential ``V`` with floor ``V0``, asymptotic constant ``V_inf``, flags.

    The evaluator is one of an expression string in the variable ``t`` (a
    restricted numpy namespace), a table of grid values, or a callable.
    Expression and table forms survive pickling, which the parallel sweep
    path relies on.
    """

    _EXPR_NAMES = {
        "abs": np.abs,
        "exp": np.exp,
        "log": np.log,
        "sqrt": np.sqrt,
        "sin": np.sin,
        "cos": np.cos,
        "tan": np.tan,
        "tanh": np.tanh,
        "cosh": np.cosh,
        "sinh": np.sinh,
        "minimum": np.minimum,
        "maximum": np.maximum,
        "where": np.where,
        "pi": np.pi,
        "e": np.e,
    }

    def __init__(
        self,
        V0: float,
        V_inf: float,
        expr: Optional[str] = None,
        table: Optional[Sequence[float]] = None,
        func: Optional[Callable[[np.ndarray], np.ndarray]] = None,
        radial_increasing: bool = False,
        below_Vinf: bool = False,
    ) -> None:
        given = sum(x is not None for x in (expr, table, func))
        if given != 1:
            raise ConfigurationError("exactly one of expr, table, func must be given")
        self.V0 = float(V0)
        self.V_inf = float(V_inf)
        self.expr = expr
        self.table = None if table is None else np.asarray(table, dtype=float)
        self.func = func
        self.radial_increasing = bool(radial_increasing)
        self.below_Vinf = bool(below_Vinf)
        if self.V0 <= 0.0:
            raise HypothesisError(f"V1: the floor V0 must be positive, got {self.V0}")

    @classmethod
    def constant(cls, value: float, **flags) -> "Potential":
        flags.setdefault("radial_increasing", True)
        return cls(V0=value, V_inf=value, expr=repr(float(value)), **flags)

    @classmethod
    def from_expr(cls, expr: str, V0: float, V_inf: float, **flags) -> "Potential":
        return cls(V0=V0, V_inf=V_inf, expr=expr, **flags)

    @classmethod
    def from_table(cls, values: Sequence[float], V0: float, V_inf: float, **flags) -> "Potential":
        return cls(V0=V0, V_inf=V_inf, table=values, **flags)

    @classmethod
    def from_callable(cls, func: Callable, V0: float, V_inf: float, **flags) -> "Potential":
        return cls(V0=V0, V_inf=V_inf, func=func, **flags)

    def on(self, grid: Grid) -> np.ndarray:
        """Evaluate on the grid points, always returning a length-N array."""
        if self.expr is not None:
            names = dict(self._EXPR_NAMES)
            names["t"] = grid.x
            vals = eval(self.expr, {"__builtins__": {}}, names)  # noqa: S307 restricted names
        elif self.table is not None:
            if self.table.shape != (grid.N,):
                raise ConfigurationError(
                    f"potential table has length {self.table.shape[0]}, grid has N={grid.N}"
                )
            vals = self.table
        else:
            vals = self.func(grid.x)
        out = np.broadcast_to(np.asarray(vals, dtype=float), (grid.N,)).copy()
        if not np.all(np.isfinite(out)):
            raise ConfigurationError("potential evaluates to non-finite values on the grid")
        return out

    def shifted(self, eps: float) -> "Potential":
        """The potential ``V + eps`` with floor and limit shifted alike."""
        eps = float(eps)
        if self.V0 + eps <= 0.0:
            raise ConfigurationError(f"shift {eps} drives the floor nonpositive")
        kw = dict(
            V0=self.V0 + eps,
            V_inf=self.V_inf + eps,
            radial_increasing=self.radial_increasing,
            below_Vinf=self.below_Vinf,
        )
        if self.expr is not None:
            return Potential(expr=f"({self.expr}) + ({eps!r})", **kw)
        if self.table is not None:
            return Potential(table=self.table + eps, **kw)
        f = self.func
        return Potential(func=lambda t, _f=f, _e=eps: _f(t) + _e, **kw)

    def config_dict(self) -> dict:
        """Serializable form; callables are rejected."""
        if self.func is not None:
            raise ConfigurationError("callable potentials cannot be serialized to config")
        d = {"V0": self.V0, "Vinf": self.V_inf}
        if self.expr is not None:
            d["expr"] = self.expr
        else:
            d["table"] = [float(v) for v in self.table]
        d["flags"] = {
            "radial_increasing": self.radial_increasing,
            "below_Vinf": self.below_Vinf,
        }
        return d


def validate_potential(
    V: Potential, grid: Grid, edge_fraction: float = 0.1, edge_tol: float = 0.05
) -> ValidationReport:
    """Check (V1)-(V5) on the grid.

    The liminf condition is proxied by the outer ``edge_fraction`` of the
    window: the minimum of V there must sit within ``edge_tol`` of V_inf.
    The proxy tolerance is config, not physics; slowly decaying tails need a
    looser value.
    """
    vals = V.on(grid)
    checks = []

    m = float(np.min(vals))
    checks.append(
        CheckResult("V1", m >= V.V0 - 1e-12 * max(abs(V.V0), 1.0),
                    f"min V = {m:.6g} against floor V0 = {V.V0:.6g}", margin=m - V.V0)
    )

    n_edge = max(int(edge_fraction * grid.N / 2), 1)
    edge = np.concatenate([vals[:n_edge], vals[-n_edge:]])
    edge_min = float(np.min(edge))
    checks.append(
        CheckResult(
            "V2/V3",
            edge_min >= V.V_inf - edge_tol,
            f"outer-{edge_fraction:.0%} min V = {edge_min:.6g} against V_inf = {V.V_inf:.6g} (tol {edge_tol})",
            margin=edge_min - (V.V_inf - edge_tol),
        )
    )

    if V.below_Vinf:
        over = float(np.max(vals - V.V_inf))
        strict = float(np.min(vals - V.V_inf))
        ok = over <= 1e-12 * max(abs(V.V_inf), 1.0) and strict < 0.0
        checks.append(
            CheckResult("V4", ok, f"V - V_inf in [{strict:.3e}, {over:.3e}], needs <= 0 with somewhere < 0")
        )

    if V.radial_increasing:
        # x_j pairs with x_{N-j} = -x_j for j >= 1; x_0 = -L is unpaired
        even_defect = float(np.max(np.abs(vals[1:] - vals[:0:-1])))
        half = vals[grid.N // 2 :]  # 0 <= t < L
        mono_defect = float(np.max(np.maximum(-np.diff(half), 0.0)))
        ok = even_defect <= 1e-10 and mono_defect <= 1e-12
        checks.append(
            CheckResult(
                "V5", ok, f"evenness defect {even_defect:.3e}, monotonicity defect {mono_defect:.3e}"
            )
        )

    return ValidationReport(all(c.passed for c in checks), tuple(checks))


@dataclass(frozen=True)
class Problem:
    """Grid, order, nonlinearity, and potential bundled with cached V values."""

    grid: Grid
    alpha: float
    nonlinearity: Nonlinearity
    potential: Potential
    V_values: np.ndarray = dc_field(repr=False, default=None)

    def __post_init__(self) -> None:
        if not (0.5 < self.alpha <= 1.0):
            raise ConfigurationError(f"alpha must lie in (1/2, 1], got {self.alpha}")
        vals = self.potential.on(self.grid) if self.V_values is None else np.asarray(self.V_values)
        vals = vals.copy()
        vals.flags.writeable = False
        object.__setattr__(self, "V_values", vals)

    def with_potential(self, V: Potential) -> "Problem":
        return Problem(self.grid, self.alpha, self.nonlinearity, V)

    def on_grid(self, grid: Grid) -> "Problem":
        return Problem(grid, self.alpha, self.nonlinearity, self.potential)


def make_problem(
    grid: Grid,
    alpha: float,
    nonlinearity: Nonlinearity,
    potential: Potential,
    validate: bool = True,
    edge_tol: float = 0.05,
) -> Problem:
    """Bundle the pieces, by default running both hypothesis validators."""
    prob = Problem(grid, float(alpha), nonlinearity, potential)
    if validate:
        validate_nonlinearity(nonlinearity).raise_on_failure()
        validate_potential(potential, grid, edge_tol=edge_tol).raise_on_failure()
    return prob


def problem_from_config(cfg: dict, validate: bool = True) -> Problem:
    """Build a problem from the structured config mapping.

    Recognized keys: ``alpha``, ``L``, ``N``, ``nonlinearity {kind, p, p0}``,
    ``potential {expr | table, V0, Vinf, flags}``, and optional
    ``edge_tol`` for the asymptotic proxy.  Unknown top-level keys are left
    for the caller (solver and sweep settings live beside the problem).
    """
    try:
        grid = make_grid(float(cfg["L"]), int(cfg["N"]))
        alpha = float(cfg["alpha"])
        nl_cfg = cfg["nonlinearity"]
        pot_cfg = cfg["potential"]
    except KeyError as e:
        raise ConfigurationError(f"config is missing required key {e.args[0]!r}") from None
    if nl_cfg.get("kind", "power") != "power":
        raise ConfigurationError("config files support the power nonlinearity only")
    nl = power_nonlinearity(float(nl_cfg["p"]), nl_cfg.get("p0"))
    flags = pot_cfg.get("flags", {})
    kw = dict(
        V0=float(pot_cfg["V0"]),
        V_inf=float(pot_cfg["Vinf"]),
        radial_increasing=bool(flags.get("radial_increasing", False)),
        below_Vinf=bool(flags.get("below_Vinf", False)),
    )
    if "expr" in pot_cfg:
        pot = Potential(expr=str(pot_cfg["expr"]), **kw)
    elif "table" in pot_cfg:
        pot = Potential(table=pot_cfg["table"], **kw)
    elif kw["V0"] == kw["V_inf"]:
        # no shape given: the constant potential at the common value
        pot = Potential(expr=repr(kw["V0"]), **kw)
        if "flags" not in pot_cfg:
            pot = Potential(expr=repr(kw["V0"]), V0=kw["V0"], V_inf=kw["V_inf"],
                            radial_increasing=True, below_Vinf=False)
    else:
        raise ConfigurationError("potential config needs 'expr' or 'table' when V0 != Vinf")
    return make_problem(grid, alpha, nl, pot, validate=validate,
                        edge_tol=float(cfg.get("edge_tol", 0.05)))
