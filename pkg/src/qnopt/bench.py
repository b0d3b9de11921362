"""Benchmark grid runner and Dolan-More performance profiles.

A suite run produces one row per (problem, dim, solver) cell; failures
are recorded rather than dropped.  Profiles compare solvers by the ratio
of each one's cost on a problem to the best cost any solver achieved on
that problem, and plot the cumulative distribution of those ratios.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from .errors import EmptyGrid, IoError, NoSolvedProblems, ParseError, UnknownSolver
from .problems import make_problem
from .solvers import VARIANTS, SolverConfig, Status, solve

RESULTS_HEADER = ("problem", "dim", "solver", "status", "ni", "nfg", "cpu",
                  "f_final", "gnorm_final")
METRICS = ("ni", "nfg", "cpu")

_SOLVED = Status.CONVERGED_GRADNORM.value


@dataclass(frozen=True)
class ResultRow:
    problem: str
    dim: int
    solver: str
    status: str
    ni: int
    nfg: int
    cpu: float
    f_final: float
    gnorm_final: float


@dataclass(frozen=True)
class ResultsTable:
    rows: "tuple[ResultRow, ...]"

    def __post_init__(self):
        keys = [(r.problem, r.dim, r.solver) for r in self.rows]
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate (problem, dim, solver) rows")

    def to_csv(self, path) -> None:
        try:
            with open(path, "w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(RESULTS_HEADER)
                for r in self.rows:
                    w.writerow([r.problem, r.dim, r.solver, r.status, r.ni, r.nfg,
                                repr(r.cpu), repr(r.f_final), repr(r.gnorm_final)])
        except OSError as e:
            raise IoError(f"cannot write {path}: {e}") from e

    @classmethod
    def from_csv(cls, path) -> "ResultsTable":
        rows = []
        try:
            with open(path, newline="") as fh:
                rd = csv.reader(fh)
                header = next(rd, None)
                if header is None or tuple(h.strip() for h in header) != RESULTS_HEADER:
                    raise ParseError(f"{path}: expected header {','.join(RESULTS_HEADER)}")
                for lineno, row in enumerate(rd, start=2):
                    if not row:
                        continue
                    if len(row) != len(RESULTS_HEADER):
                        raise ParseError(f"{path}:{lineno}: expected {len(RESULTS_HEADER)} fields")
                    try:
                        rows.append(ResultRow(
                            problem=row[0], dim=int(row[1]), solver=row[2], status=row[3],
                            ni=int(row[4]), nfg=int(row[5]), cpu=float(row[6]),
                            f_final=float(row[7]), gnorm_final=float(row[8])))
                    except ValueError as e:
                        raise ParseError(f"{path}:{lineno}: {e}") from None
        except OSError as e:
            raise IoError(f"cannot read {path}: {e}") from e
        return cls(rows=tuple(rows))


def _run_cell(args):
    name, dim, variant, cfg = args
    p = make_problem(name, dim)
    rep = solve(p, p.start, replace(cfg, variant=variant))
    return ResultRow(problem=name, dim=dim, solver=variant, status=rep.status.value,
                     ni=rep.iterations, nfg=rep.nfg, cpu=rep.cpu_seconds,
                     f_final=rep.f_final, gnorm_final=rep.gnorm_final)


def run_suite(problems, solvers, dims, cfg: SolverConfig, seed: int = 0, *,
              jobs: int = 1) -> ResultsTable:
    """Run every (problem, dim, solver) cell and collect the results.

    Rows come back in canonical (problem, dim, solver) order whatever the
    execution order; with jobs > 1 cells run in separate processes.  seed
    is accepted for interface stability; catalogue cells are fully
    deterministic and do not consume it.
    """
    problems, solvers, dims = list(problems), list(solvers), list(dims)
    if not problems or not solvers or not dims:
        raise EmptyGrid("problems, solvers and dims must all be nonempty")
    for s in solvers:
        if s not in VARIANTS:
            raise UnknownSolver(f"unknown solver {s!r}; expected one of {VARIANTS}")
    cells = sorted((name, int(dim), s, cfg)
                   for name in problems for dim in dims for s in solvers)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            rows = list(ex.map(_run_cell, cells))
    else:
        rows = [_run_cell(cell) for cell in cells]
    rows.sort(key=lambda r: (r.problem, r.dim, r.solver))
    return ResultsTable(rows=tuple(rows))


@dataclass(frozen=True)
class ProfileCurves:
    solvers: "tuple[str, ...]"
    taus: np.ndarray
    rho: "dict[str, np.ndarray]"


def _metric_value(r: ResultRow, metric: str) -> float:
    v = getattr(r, metric)
    if metric == "cpu":
        return max(float(v), 1e-9)
    # count metrics: floor of 1 keeps an immediate-convergence 0 from
    # producing a 0/0 ratio
    return max(float(v), 1.0)


def performance_profile(t: ResultsTable, metric: str) -> ProfileCurves:
    """Cumulative distribution of per-problem cost ratios, per solver.

    A failed cell gets ratio +inf; problems no solver solved are dropped
    from the denominator.  Curves are sampled at tau = 1 and at every
    distinct finite ratio.
    """
    if metric not in METRICS:
        raise ValueError(f"metric must be one of {METRICS}, got {metric!r}")
    if not t.rows:
        raise ValueError("results table is empty")
    solvers = tuple(sorted({r.solver for r in t.rows}))
    values: "dict[tuple[str, int], dict[str, float]]" = {}
    for r in t.rows:
        cell = values.setdefault((r.problem, r.dim), {})
        cell[r.solver] = _metric_value(r, metric) if r.status == _SOLVED else math.inf

    ratios: "dict[str, list[float]]" = {s: [] for s in solvers}
    n_counted = 0
    for cell in values.values():
        best = min(cell.get(s, math.inf) for s in solvers)
        if not math.isfinite(best):
            continue  # unsolved by everyone: excluded from |P|
        n_counted += 1
        for s in solvers:
            v = cell.get(s, math.inf)
            ratios[s].append(v / best if math.isfinite(v) else math.inf)
    if n_counted == 0:
        raise NoSolvedProblems("no problem was solved by any solver")

    finite = sorted({r for rs in ratios.values() for r in rs if math.isfinite(r)} | {1.0})
    taus = np.asarray(finite)
    rho = {s: np.array([sum(r <= tau for r in ratios[s]) / n_counted for tau in taus])
           for s in solvers}
    return ProfileCurves(solvers=solvers, taus=taus, rho=rho)


_PALETTE = ("#1b6ca8", "#d1495b", "#3a7d44", "#8d5a97", "#c97b2d", "#4a4e69")

_W, _H = 640, 480
_ML, _MR, _MT, _MB = 60, 20, 20, 45


def _sx(tau, tau_lo, tau_hi):
    span = tau_hi - tau_lo
    return _ML + (tau - tau_lo) / span * (_W - _ML - _MR)


def _sy(rho):
    return _H - _MB - rho * (_H - _MT - _MB)


def emit_profile_svg(c: ProfileCurves, path) -> None:
    """Write a step plot of the curves plus a sibling CSV of the samples.

    The SVG is self-contained: axes, tick labels, one polyline per solver
    and a legend.  The CSV lands next to the SVG with suffix .csv and
    columns tau,solver,rho.
    """
    path = Path(path)
    taus = [float(t) for t in c.taus]
    tau_lo, tau_hi = 1.0, max(taus[-1], 1.0)
    if tau_hi == tau_lo:
        tau_hi = tau_lo + 1.0

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{_W}" height="{_H}" fill="white"/>',
        f'<line x1="{_ML}" y1="{_sy(0)}" x2="{_W - _MR}" y2="{_sy(0)}" stroke="black"/>',
        f'<line x1="{_ML}" y1="{_sy(0)}" x2="{_ML}" y2="{_sy(1)}" stroke="black"/>',
    ]
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        y = _sy(frac)
        parts.append(f'<line x1="{_ML - 4}" y1="{y}" x2="{_ML}" y2="{y}" stroke="black"/>')
        parts.append(f'<text x="{_ML - 8}" y="{y + 4}" text-anchor="end">{frac:g}</text>')
    for i in range(5):
        tau = tau_lo + (tau_hi - tau_lo) * i / 4
        x = _sx(tau, tau_lo, tau_hi)
        y0 = _sy(0)
        parts.append(f'<line x1="{x}" y1="{y0}" x2="{x}" y2="{y0 + 4}" stroke="black"/>')
        parts.append(f'<text x="{x}" y="{y0 + 18}" text-anchor="middle">{tau:.3g}</text>')
    parts.append(f'<text x="{(_ML + _W - _MR) / 2}" y="{_H - 8}" text-anchor="middle">tau</text>')
    parts.append(f'<text x="14" y="{(_sy(0) + _sy(1)) / 2}" text-anchor="middle" '
                 f'transform="rotate(-90 14 {(_sy(0) + _sy(1)) / 2})">rho</text>')

    for idx, s in enumerate(c.solvers):
        color = _PALETTE[idx % len(_PALETTE)]
        rho = [float(v) for v in c.rho[s]]
        pts = [(taus[0], rho[0])]
        for j in range(1, len(taus)):
            pts.append((taus[j], rho[j - 1]))
            pts.append((taus[j], rho[j]))
        pts.append((tau_hi, rho[-1]))
        coords = " ".join(f"{_sx(t, tau_lo, tau_hi):.2f},{_sy(v):.2f}" for t, v in pts)
        parts.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="2"/>')
        ly = _MT + 16 + 18 * idx
        lx = _W - _MR - 150
        parts.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 24}" y2="{ly - 4}" '
                     f'stroke="{color}" stroke-width="2"/>')
        parts.append(f'<text x="{lx + 30}" y="{ly}">{escape(s)}</text>')
    parts.append("</svg>")

    try:
        path.write_text("\n".join(parts) + "\n")
        with open(path.with_suffix(".csv"), "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["tau", "solver", "rho"])
            for s in c.solvers:
                for tau, rho in zip(taus, c.rho[s]):
                    w.writerow([repr(float(tau)), s, repr(float(rho))])
    except OSError as e:
        raise IoError(f"cannot write profile to {path}: {e}") from e
