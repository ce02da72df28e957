"""Command line driver: solve, sweep, verify, rearrange.

Exit codes: 0 success, 1 configuration or validation error, 2 numerical
non-convergence.  Scalar reports go to JSON with a fixed key order, tables
and profiles to CSV with floats printed at 17 significant digits, so a rerun
with the same config, seed, and version is byte identical.  Timestamps live
only in the run manifest, which sits beside the data outputs on purpose.
"""

from __future__ import annotations

import argparse
import copy
import csv
import hashlib
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .exceptions import AdmissibilityError, ConfigurationError, HypothesisError, ProjectionError
from .grid import Field, embed_field, make_grid, refine_field
from .problem import Problem, problem_from_config
from .rearrange import polya_szego_check, rearrange
from .solver import (
    Backtracking,
    FixedStep,
    GaussianBump,
    GroundStateReport,
    SolverConfig,
    default_start,
    ground_state,
)
from .verify import SUITES, run_suite

_USER_ERRORS = (
    ConfigurationError,
    HypothesisError,
    AdmissibilityError,
    OSError,
    json.JSONDecodeError,
    KeyError,
    ValueError,
)


# ---------------------------------------------------------------- formatting


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        return format(v, ".17g")
    return str(v)


def _jsonable(v):
    if isinstance(v, float) and math.isnan(v):
        return None
    if isinstance(v, (np.floating, np.integer)):
        return _jsonable(v.item())
    return v


def _write_json(path: Path, obj: dict) -> None:
    path.write_text(json.dumps(obj, indent=2) + "\n")


def _write_csv(path: Path, header: list, rows: list) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


@dataclass
class RunManifest:
    config_digest: str
    seed: int
    tool_version: str
    started: str
    finished: str = ""
    outputs: list = dc_field(default_factory=list)

    def write(self, out_dir: Path) -> None:
        self.finished = _now()
        _write_json(
            out_dir / "manifest.json",
            {
                "config_digest": self.config_digest,
                "seed": self.seed,
                "tool_version": self.tool_version,
                "started": self.started,
                "finished": self.finished,
                "outputs": self.outputs,
            },
        )


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _digest(raw: bytes) -> str:
    return hashlib.sha256(raw).hexdigest()


# ------------------------------------------------------------- config plumbing


def _load_config(path: str) -> tuple:
    raw = Path(path).read_bytes()
    return json.loads(raw), _digest(raw)


def _solver_config(cfg: dict, seed_override=None) -> SolverConfig:
    s = cfg.get("solver", {})
    rule_cfg = s.get("step_rule", {"kind": "backtracking"})
    kind = rule_cfg.get("kind", "backtracking")
    if kind == "backtracking":
        rule = Backtracking(
            beta=float(rule_cfg.get("beta", 0.5)), c1=float(rule_cfg.get("c1", 1e-4))
        )
    elif kind == "fixed":
        rule = FixedStep(tau=float(rule_cfg.get("tau", 0.5)))
    else:
        raise ConfigurationError(f"unknown step rule {kind!r}")
    start_cfg = s.get("start", {"kind": "gaussian_bump"})
    if start_cfg.get("kind", "gaussian_bump") != "gaussian_bump":
        raise ConfigurationError("config files support the gaussian_bump start only")
    start = GaussianBump(
        center=float(start_cfg.get("center", 0.0)),
        width=float(start_cfg.get("width", 1.0)),
        amplitude=float(start_cfg.get("amplitude", 1.0)),
    )
    seed = int(s.get("seed", 0)) if seed_override is None else int(seed_override)
    return SolverConfig(
        max_iters=int(s.get("max_iters", 5000)),
        grad_tol=float(s.get("grad_tol", 1e-6)),
        step_rule=rule,
        seed=seed,
        start=start,
    )


# ------------------------------------------------------------------ solving


def _c_infinity(prob: Problem, cfg: SolverConfig) -> float:
    """Level of the limiting problem; reuse c when V is already constant."""
    if float(np.max(np.abs(prob.V_values - prob.potential.V_inf))) <= 1e-14:
        return math.nan  # caller substitutes c itself
    if not prob.potential.below_Vinf:
        return math.nan
    from .nehari import level_c_infinity

    est = level_c_infinity(prob, [default_start(prob.grid)], cfg=cfg)
    return est.c


def _run_point(prob: Problem, scfg: SolverConfig, refine: bool) -> tuple:
    """Solve; with refine, re-solve at 2N (same window) and at the doubled
    window with matched spacing, recording both relative drifts of c."""
    report = ground_state(prob, scfg)
    drift = math.nan
    trunc = math.nan
    if refine and report.c != 0.0:
        fine_grid = make_grid(prob.grid.L, 2 * prob.grid.N)
        fine = ground_state(
            prob.on_grid(fine_grid),
            _with_start(scfg, refine_field(report.u, 2)),
        )
        drift = abs(fine.c - report.c) / abs(report.c)
        try:
            wide_grid = make_grid(2.0 * prob.grid.L, 2 * prob.grid.N)
            wide = ground_state(
                prob.on_grid(wide_grid),
                _with_start(scfg, embed_field(report.u, wide_grid)),
            )
            trunc = abs(wide.c - report.c) / abs(report.c)
        except ConfigurationError:
            # table potentials carry no values beyond the original window
            trunc = math.nan
    return report, drift, trunc


def _with_start(cfg: SolverConfig, start: Field) -> SolverConfig:
    return SolverConfig(
        max_iters=cfg.max_iters,
        grad_tol=cfg.grad_tol,
        step_rule=cfg.step_rule,
        seed=cfg.seed,
        start=start,
    )


def _report_json(
    prob: Problem, cfg: dict, report: GroundStateReport, drift: float, trunc: float
) -> dict:
    c_inf = _c_infinity_value(prob, report)
    return {
        "alpha": prob.alpha,
        "L": prob.grid.L,
        "N": prob.grid.N,
        "p": prob.nonlinearity.p,
        "p0": prob.nonlinearity.p0,
        "c": _jsonable(report.c),
        "c_infinity": _jsonable(c_inf),
        "residual": _jsonable(report.residual),
        "iterations": report.iterations,
        "converged": report.converged,
        "nonneg_violation": _jsonable(report.nonneg_violation),
        "symmetry_defect": _jsonable(report.symmetry_defect),
        "energy": {
            "kinetic": _jsonable(report.energy.kinetic),
            "potential_term": _jsonable(report.energy.potential_term),
            "nonlinear": _jsonable(report.energy.nonlinear),
            "total": _jsonable(report.energy.total),
        },
        "refinement_drift": _jsonable(drift),
        "truncation_err": _jsonable(trunc),
    }


def _c_infinity_value(prob: Problem, report: GroundStateReport) -> float:
    if float(np.max(np.abs(prob.V_values - prob.potential.V_inf))) <= 1e-14:
        return report.c
    return report.c_infinity


def cmd_ground_state(args) -> int:
    cfg, digest = _load_config(args.config)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = RunManifest(config_digest=digest, seed=args.seed or 0,
                           tool_version=__version__, started=_now())

    prob = problem_from_config(cfg)
    scfg = _solver_config(cfg, args.seed)
    report, drift, trunc = _run_point(prob, scfg, args.refine)
    c_inf = _c_infinity(prob, scfg)
    if not math.isnan(c_inf):
        report = _replace_c_inf(report, c_inf)

    tag = str(cfg.get("tag", "ground_state"))
    base = f"{tag}_{prob.alpha:g}_{prob.grid.N}"
    star = rearrange(report.u).u_star
    json_path = out_dir / f"{base}.json"
    csv_path = out_dir / f"{base}.csv"
    _write_json(json_path, _report_json(prob, cfg, report, drift, trunc))
    _write_csv(
        csv_path,
        ["x", "u", "u_star"],
        list(zip(prob.grid.x, report.u.values, star.values)),
    )
    manifest.outputs = [json_path.name, csv_path.name]
    manifest.write(out_dir)

    msg = "converged" if report.converged else "did not converge"
    print(f"{msg}: c = {report.c:.12g}, residual = {report.residual:.3e}, "
          f"iterations = {report.iterations}")
    return 0 if report.converged else 2


def _replace_c_inf(report: GroundStateReport, c_inf: float) -> GroundStateReport:
    return GroundStateReport(
        u=report.u,
        c=report.c,
        residual=report.residual,
        nonneg_violation=report.nonneg_violation,
        symmetry_defect=report.symmetry_defect,
        c_infinity=c_inf,
        iterations=report.iterations,
        converged=report.converged,
        energy=report.energy,
    )


# -------------------------------------------------------------------- sweep

_SWEEP_PARAMETERS = ("epsilon", "alpha", "p", "L", "N")


def _sweep_point(task) -> dict:
    base_cfg, parameter, value, refine, seed = task
    row = {
        "parameter": parameter,
        "value": value,
        "c": math.nan,
        "c_inf": math.nan,
        "residual": math.nan,
        "symmetry_defect": math.nan,
        "iterations": 0,
        "converged": False,
        "refinement_drift": math.nan,
        "truncation_err": math.nan,
        "status": "ok",
    }
    try:
        cfg = copy.deepcopy(base_cfg)
        eps = 0.0
        if parameter == "epsilon":
            eps = float(value)
        elif parameter == "alpha":
            cfg["alpha"] = float(value)
        elif parameter == "p":
            cfg["nonlinearity"]["p"] = float(value)
            cfg["nonlinearity"].pop("p0", None)
        elif parameter == "L":
            cfg["L"] = float(value)
        elif parameter == "N":
            cfg["N"] = int(value)
        else:
            raise ConfigurationError(
                f"unknown sweep parameter {parameter!r}; choose from {_SWEEP_PARAMETERS}"
            )
        prob = problem_from_config(cfg)
        if eps != 0.0:
            prob = prob.with_potential(prob.potential.shifted(eps))
        scfg = _solver_config(cfg, seed)
        report, drift, trunc = _run_point(prob, scfg, refine)
        c_inf = _c_infinity(prob, scfg)
        row.update(
            c=report.c,
            c_inf=report.c if math.isnan(c_inf) and _flat(prob) else c_inf,
            residual=report.residual,
            symmetry_defect=report.symmetry_defect,
            iterations=report.iterations,
            converged=report.converged,
            refinement_drift=drift,
            truncation_err=trunc,
            status="ok" if report.converged else "nonconverged",
        )
    except Exception as e:  # partial failures are marked, the sweep continues
        row["status"] = f"error:{type(e).__name__}"
    return row


def _flat(prob: Problem) -> bool:
    return float(np.max(np.abs(prob.V_values - prob.potential.V_inf))) <= 1e-14


def cmd_sweep(args) -> int:
    cfg, digest = _load_config(args.config)
    sweep = cfg.get("sweep")
    if not sweep or not sweep.get("values"):
        raise ConfigurationError("sweep config needs a 'sweep' section with nonempty 'values'")
    parameter = sweep.get("parameter", "epsilon")
    if parameter not in _SWEEP_PARAMETERS:
        raise ConfigurationError(
            f"unknown sweep parameter {parameter!r}; choose from {_SWEEP_PARAMETERS}"
        )
    values = list(sweep["values"])

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = RunManifest(config_digest=digest, seed=args.seed or 0,
                           tool_version=__version__, started=_now())

    base_cfg = {k: v for k, v in cfg.items() if k != "sweep"}
    tasks = [(base_cfg, parameter, v, args.refine, args.seed) for v in values]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_sweep_point, tasks))  # pool.map keeps input order
    else:
        rows = [_sweep_point(t) for t in tasks]

    header = ["parameter", "value", "c", "c_inf", "residual", "symmetry_defect",
              "iterations", "converged", "refinement_drift", "truncation_err", "status"]
    tag = str(cfg.get("tag", "sweep"))
    csv_path = out_dir / f"{tag}_sweep_{parameter}.csv"
    _write_csv(csv_path, header, [[r[k] for k in header] for r in rows])
    manifest.outputs = [csv_path.name]
    manifest.write(out_dir)

    bad = [r for r in rows if r["status"] != "ok"]
    print(f"sweep over {parameter}: {len(rows)} points, {len(rows) - len(bad)} ok")
    for r in bad:
        print(f"  value {r['value']}: {r['status']}", file=sys.stderr)
    return 0 if not bad else 2


# -------------------------------------------------------------------- verify


def cmd_verify(args) -> int:
    names = [args.suite] if args.suite else sorted(SUITES)
    for name in names:
        if name not in SUITES:
            print(f"unknown suite {name!r}; choose from {sorted(SUITES)}", file=sys.stderr)
            return 1
    all_ok = True
    for name in names:
        checks = run_suite(name, seed=args.seed or 0)
        print(f"suite {name}:")
        for c in checks:
            mark = "PASS" if c.passed else "FAIL"
            print(f"  {mark} {c.name}: {c.detail}")
            all_ok = all_ok and c.passed
    print("all checks passed" if all_ok else "some checks failed")
    return 0 if all_ok else 1


# ----------------------------------------------------------------- rearrange


def cmd_rearrange(args) -> int:
    in_path = Path(args.input)
    raw = np.loadtxt(in_path, delimiter=",", skiprows=1, ndmin=2)
    if raw.shape[1] < 2:
        raise ConfigurationError("input CSV needs columns x, u")
    x, u_vals = raw[:, 0], raw[:, 1]
    N = x.shape[0]
    dx = float(x[1] - x[0]) if N > 1 else 0.0
    if N < 8 or N % 2 or dx <= 0.0 or np.max(np.abs(np.diff(x) - dx)) > 1e-9 * dx:
        raise ConfigurationError("input samples must form a uniform grid with even length >= 8")
    L = 0.5 * (x[-1] + dx - x[0])
    grid = make_grid(L, N)
    if np.max(np.abs(grid.x - x)) > 1e-9 * L:
        raise ConfigurationError("input samples must cover the window [-L, L) starting at -L")

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = RunManifest(config_digest=_digest(in_path.read_bytes()), seed=args.seed or 0,
                           tool_version=__version__, started=_now())

    u = Field(grid, u_vals)
    rep = rearrange(u)
    stem = in_path.stem
    csv_path = out_dir / f"{stem}_rearranged.csv"
    json_path = out_dir / f"{stem}_rearranged.json"
    _write_csv(csv_path, ["x", "u", "u_star"],
               list(zip(grid.x, u.values, rep.u_star.values)))
    payload = {"L": L, "N": N, "lp_drift": {str(q): _jsonable(v) for q, v in rep.lp_drift.items()}}
    if args.alpha is not None:
        ps = polya_szego_check(u, args.alpha)
        payload["polya_szego"] = {
            "alpha": args.alpha,
            "lhs": _jsonable(ps.lhs),
            "rhs": _jsonable(ps.rhs),
            "margin": _jsonable(ps.margin),
            "satisfied": ps.satisfied,
        }
    _write_json(json_path, payload)
    manifest.outputs = [csv_path.name, json_path.name]
    manifest.write(out_dir)
    print(f"rearranged {in_path.name}: N = {N}, L = {L:g}")
    return 0


# --------------------------------------------------------------------- main


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracnls",
        description="Ground states of the 1D fractional NLS by constrained pseudospectral descent",
    )
    sub = parser.add_subparsers(dest="command")

    gs = sub.add_parser("ground-state", help="solve one problem from a config file")
    gs.add_argument("--config", required=False)
    gs.add_argument("--out", default=".")
    gs.add_argument("--seed", type=int, default=None)
    gs.add_argument("--refine", action="store_true",
                    help="re-run at 2N and at the doubled window, record drifts")

    sw = sub.add_parser("sweep", help="solve across a list of parameter values")
    sw.add_argument("--config", required=False)
    sw.add_argument("--out", default=".")
    sw.add_argument("--seed", type=int, default=None)
    sw.add_argument("--jobs", type=int, default=1)
    sw.add_argument("--refine", action="store_true")

    vf = sub.add_parser("verify", help="run a named property suite")
    vf.add_argument("--suite", default=None)
    vf.add_argument("--seed", type=int, default=None)

    ra = sub.add_parser("rearrange", help="file-to-file symmetric decreasing rearrangement")
    ra.add_argument("--in", dest="input", required=False)
    ra.add_argument("--out", default=".")
    ra.add_argument("--seed", type=int, default=None)
    ra.add_argument("--alpha", type=float, default=None)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 1
    try:
        if args.command == "ground-state":
            if not args.config:
                raise ConfigurationError("ground-state needs --config PATH")
            return cmd_ground_state(args)
        if args.command == "sweep":
            if not args.config:
                raise ConfigurationError("sweep needs --config PATH")
            return cmd_sweep(args)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "rearrange":
            if not args.input:
                raise ConfigurationError("rearrange needs --in PATH")
            return cmd_rearrange(args)
        parser.print_usage(sys.stderr)
        return 1
    except ProjectionError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except _USER_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
