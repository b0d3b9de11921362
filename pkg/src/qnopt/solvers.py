"""Iteration drivers for the four solver variants.

All variants share the same skeleton: test the gradient norm, form a
descent direction from the current curvature model, take a weak-Wolfe
step, then refresh the model from the accepted pair.  They differ in the
model and in how the pair is built:

* ``dmbfgs3``  - diagonal model, function-value curvature correction.
* ``dnrtr``    - diagonal model, correction forced to zero.
* ``mbfgs3``   - dense rank-two model, same correction.
* ``wdmbfgs3`` - diagonal model as dmbfgs3, but each iteration first
  extrapolates through the previous step (heavy-ball style) and runs the
  line search from the extrapolated point.

Every accepted step re-asserts both Wolfe inequalities, and wdmbfgs3
additionally asserts its extrapolation-coefficient bound; the asserts are
active in ordinary (non ``-O``) builds.  Solvers never raise for run-level
failures: line-search dead ends and NaN/Inf/domain breakdowns are reported
through the returned status.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NotDescent, QnoptError, SearchFailed
from .linesearch import LineSearchParams, wwp_line_search
from .problems import EvalCounter, Problem, evaluate
from .updates import (
    DiagonalHessian,
    diagonal_update,
    mbfgs3_full_update,
    modified_y,
    safeguarded_direction,
    y3_scalar,
)

VARIANTS = ("dmbfgs3", "wdmbfgs3", "mbfgs3", "dnrtr")
PAIR_MODES = ("step", "extrapolated")

#: relative step size under which the curvature update is skipped
EPS_STEP_REL = 1e-14


class Status(enum.Enum):
    CONVERGED_GRADNORM = "ConvergedGradNorm"
    MAX_ITERATIONS = "MaxIterations"
    LINE_SEARCH_FAILURE = "LineSearchFailure"
    NUMERICAL_BREAKDOWN = "NumericalBreakdown"


@dataclass(frozen=True)
class SolverConfig:
    variant: str = "dmbfgs3"
    eps_g: float = 1e-6
    eps_b: float = 1e-6
    max_iter: int = 5000
    ls: LineSearchParams = field(default_factory=LineSearchParams)
    tau_cap: float = 0.9
    pair_mode: str = "step"
    b_init: float = 1.0
    clamp_stored: bool = False

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if self.pair_mode not in PAIR_MODES:
            raise ValueError(f"pair_mode must be one of {PAIR_MODES}, got {self.pair_mode!r}")
        if self.eps_g <= 0 or self.eps_b <= 0 or self.b_init <= 0:
            raise ValueError("eps_g, eps_b and b_init must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be positive")
        if not (0.0 <= self.tau_cap < 1.0):
            raise ValueError(f"tau_cap must lie in [0, 1), got {self.tau_cap}")


@dataclass(eq=False)
class SolverReport:
    """Outcome of one run.

    ``iterations`` counts accepted steps; ``nfg`` counts objective plus
    gradient evaluations; ``y3_trace`` holds |y3| for every computed
    update pair and ``f_trace`` the objective at the start point and at
    each accepted iterate.
    """

    status: Status
    iterations: int
    nfg: int
    cpu_seconds: float
    f_final: float
    gnorm_final: float
    x_final: np.ndarray
    y3_trace: "list[float]"
    f_trace: "list[float]"


def inertial_coefficient(k: int, x_k: np.ndarray, x_prev: np.ndarray, tau_cap: float) -> float:
    """Extrapolation coefficient min{1 / (k^2 ||x_k - x_prev||^2), tau_cap}.

    When the last step was zero the cap itself is returned (the
    extrapolation term vanishes anyway, and this avoids dividing by zero).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    delta = np.asarray(x_k, dtype=float) - np.asarray(x_prev, dtype=float)
    nd2 = float(delta @ delta)
    if nd2 == 0.0:
        return tau_cap
    return min(1.0 / (k * k * nd2), tau_cap)


def _finite(f: float, g: np.ndarray) -> bool:
    return bool(np.isfinite(f)) and bool(np.all(np.isfinite(g)))


def solve(p: Problem, x0: np.ndarray, cfg: SolverConfig) -> SolverReport:
    """Minimize problem p from x0 with the configured variant."""
    x0 = np.asarray(x0, dtype=float)
    if x0.shape != (p.dim,):
        raise DimensionMismatch(f"x0 must have length {p.dim}, got shape {x0.shape}")
    if cfg.variant == "wdmbfgs3":
        return _solve_inertial(p, x0, cfg)
    return _solve_basic(p, x0, cfg)


def _report(status, iterations, c, t0, f, gnorm, x, y3_trace, f_trace):
    return SolverReport(
        status=status,
        iterations=iterations,
        nfg=c.nfg,
        cpu_seconds=time.perf_counter() - t0,
        f_final=f,
        gnorm_final=gnorm,
        x_final=x,
        y3_trace=y3_trace,
        f_trace=f_trace,
    )


def _solve_basic(p: Problem, x0: np.ndarray, cfg: SolverConfig) -> SolverReport:
    c = EvalCounter()
    t0 = time.perf_counter()
    x = x0.copy()
    y3_trace: "list[float]" = []
    dense = cfg.variant == "mbfgs3"

    try:
        f, g = evaluate(p, x, c)
    except QnoptError:
        return _report(Status.NUMERICAL_BREAKDOWN, 0, c, t0, np.nan, np.nan, x, y3_trace, [])
    f_trace = [f]
    if not _finite(f, g):
        return _report(Status.NUMERICAL_BREAKDOWN, 0, c, t0, f, np.nan, x, y3_trace, f_trace)

    if dense:
        B = np.eye(p.dim)
    else:
        B = DiagonalHessian(b=np.full(p.dim, cfg.b_init), eps_b=cfg.eps_b)

    for it in range(cfg.max_iter):
        gnorm = float(np.linalg.norm(g))
        if gnorm <= cfg.eps_g:
            return _report(Status.CONVERGED_GRADNORM, it, c, t0, f, gnorm, x, y3_trace, f_trace)

        if dense:
            try:
                d = np.linalg.solve(B, -g)
            except np.linalg.LinAlgError:
                return _report(Status.NUMERICAL_BREAKDOWN, it, c, t0, f, gnorm, x, y3_trace, f_trace)
        else:
            d = safeguarded_direction(B, g)
        gd0 = float(g @ d)
        if not gd0 < 0.0:
            return _report(Status.NUMERICAL_BREAKDOWN, it, c, t0, f, gnorm, x, y3_trace, f_trace)

        try:
            step = wwp_line_search(p, c, x, d, f, gd0, cfg.ls)
        except SearchFailed:
            return _report(Status.LINE_SEARCH_FAILURE, it, c, t0, f, gnorm, x, y3_trace, f_trace)
        except (NotDescent, QnoptError):
            return _report(Status.NUMERICAL_BREAKDOWN, it, c, t0, f, gnorm, x, y3_trace, f_trace)
        assert step.f_new <= f + cfg.ls.rho * step.alpha * gd0
        assert float(step.g_new @ d) >= cfg.ls.sigma * gd0
        if not _finite(step.f_new, step.g_new):
            return _report(Status.NUMERICAL_BREAKDOWN, it, c, t0, f, gnorm, x, y3_trace, f_trace)

        s = step.x_new - x
        if float(np.linalg.norm(s)) >= EPS_STEP_REL * max(1.0, float(np.linalg.norm(x))):
            y3 = 0.0 if cfg.variant == "dnrtr" else y3_scalar(f, step.f_new, g, step.g_new, s)
            ystar = modified_y(step.g_new - g, y3, s)
            if dense:
                B = mbfgs3_full_update(B, s, ystar)
            else:
                B = diagonal_update(B, s, ystar, cfg.clamp_stored)
            y3_trace.append(abs(y3))

        x, f, g = step.x_new, step.f_new, step.g_new
        f_trace.append(f)

    gnorm = float(np.linalg.norm(g))
    status = Status.CONVERGED_GRADNORM if gnorm <= cfg.eps_g else Status.MAX_ITERATIONS
    return _report(status, cfg.max_iter, c, t0, f, gnorm, x, y3_trace, f_trace)


def _solve_inertial(p: Problem, x0: np.ndarray, cfg: SolverConfig) -> SolverReport:
    c = EvalCounter()
    t0 = time.perf_counter()
    x = x0.copy()
    x_prev = x0.copy()
    y3_trace: "list[float]" = []

    try:
        f_x, g_x = evaluate(p, x, c)
    except QnoptError:
        return _report(Status.NUMERICAL_BREAKDOWN, 0, c, t0, np.nan, np.nan, x, y3_trace, [])
    f_trace = [f_x]
    if not _finite(f_x, g_x):
        return _report(Status.NUMERICAL_BREAKDOWN, 0, c, t0, f_x, np.nan, x, y3_trace, f_trace)

    B = DiagonalHessian(b=np.full(p.dim, cfg.b_init), eps_b=cfg.eps_b)
    prev_pk = prev_fp = prev_gp = None

    for it in range(cfg.max_iter):
        k = it + 1
        tau = inertial_coefficient(k, x, x_prev, cfg.tau_cap)
        delta = x - x_prev
        nd2 = float(delta @ delta)
        assert tau <= cfg.tau_cap
        assert nd2 == 0.0 or tau <= 1.0 / (k * k * nd2)

        pk = x + tau * delta
        if np.array_equal(pk, x):
            f_p, g_p = f_x, g_x
        else:
            try:
                f_p, g_p = evaluate(p, pk, c)
            except QnoptError:
                gn = float(np.linalg.norm(g_x))
                return _report(Status.NUMERICAL_BREAKDOWN, it, c, t0, f_x, gn, x, y3_trace, f_trace)
            if not _finite(f_p, g_p):
                gn = float(np.linalg.norm(g_x))
                return _report(Status.NUMERICAL_BREAKDOWN, it, c, t0, f_x, gn, x, y3_trace, f_trace)

        gnorm = float(np.linalg.norm(g_p))
        if gnorm <= cfg.eps_g:
            return _report(Status.CONVERGED_GRADNORM, it, c, t0, f_p, gnorm, pk, y3_trace, f_trace)

        d = safeguarded_direction(B, g_p)
        gd0 = float(g_p @ d)
        if not gd0 < 0.0:
            return _report(Status.NUMERICAL_BREAKDOWN, it, c, t0, f_p, gnorm, pk, y3_trace, f_trace)

        try:
            step = wwp_line_search(p, c, pk, d, f_p, gd0, cfg.ls)
        except SearchFailed:
            return _report(Status.LINE_SEARCH_FAILURE, it, c, t0, f_x, float(np.linalg.norm(g_x)), x, y3_trace, f_trace)
        except (NotDescent, QnoptError):
            return _report(Status.NUMERICAL_BREAKDOWN, it, c, t0, f_x, float(np.linalg.norm(g_x)), x, y3_trace, f_trace)
        assert step.f_new <= f_p + cfg.ls.rho * step.alpha * gd0
        assert float(step.g_new @ d) >= cfg.ls.sigma * gd0
        if not _finite(step.f_new, step.g_new):
            return _report(Status.NUMERICAL_BREAKDOWN, it, c, t0, f_x, float(np.linalg.norm(g_x)), x, y3_trace, f_trace)

        # Build the curvature pair: either across the actual step taken
        # (from the extrapolated point) or across consecutive
        # extrapolated points, per configuration.
        if cfg.pair_mode == "step":
            s = step.x_new - pk
            pair = (f_p, step.f_new, g_p, step.g_new)
        elif prev_pk is not None:
            s = pk - prev_pk
            pair = (prev_fp, f_p, prev_gp, g_p)
        else:
            s = None
            pair = None
        if s is not None and float(np.linalg.norm(s)) >= EPS_STEP_REL * max(1.0, float(np.linalg.norm(x))):
            y3 = y3_scalar(pair[0], pair[1], pair[2], pair[3], s)
            ystar = modified_y(pair[3] - pair[2], y3, s)
            B = diagonal_update(B, s, ystar, cfg.clamp_stored)
            y3_trace.append(abs(y3))

        prev_pk, prev_fp, prev_gp = pk, f_p, g_p
        x_prev = x
        x, f_x, g_x = step.x_new, step.f_new, step.g_new
        f_trace.append(f_x)

    gnorm = float(np.linalg.norm(g_x))
    status = Status.CONVERGED_GRADNORM if gnorm <= cfg.eps_g else Status.MAX_ITERATIONS
    return _report(status, cfg.max_iter, c, t0, f_x, gnorm, x, y3_trace, f_trace)
