"""Weak Wolfe step-size search.

A step alpha along a descent direction d is accepted when it satisfies both

    sufficient decrease:  f(x + alpha d) <= f(x) + rho * alpha * g(x)'d
    curvature:            g(x + alpha d)'d >= sigma * g(x)'d

with 0 < rho < sigma < 1.  The search brackets by doubling while the
decrease condition holds but the curvature condition fails, then bisects
once a high endpoint violating sufficient decrease exists.  No
interpolation is used, so identical inputs always retrace identical
trial sequences.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NotDescent, SearchFailed
from .problems import EvalCounter, Problem, evaluate


@dataclass(frozen=True)
class LineSearchParams:
    rho: float = 0.0001
    sigma: float = 0.8
    alpha_init: float = 1.0
    max_trials: int = 60
    alpha_max: float = 1e6

    def __post_init__(self):
        if not (0.0 < self.rho < self.sigma < 1.0):
            raise ValueError(f"need 0 < rho < sigma < 1, got rho={self.rho}, sigma={self.sigma}")
        if self.alpha_init <= 0 or self.alpha_max <= 0:
            raise ValueError("alpha_init and alpha_max must be positive")
        if self.max_trials < 1:
            raise ValueError("max_trials must be positive")


@dataclass(frozen=True, eq=False)
class StepResult:
    """Accepted step: both Wolfe inequalities hold at alpha."""

    alpha: float
    x_new: np.ndarray
    f_new: float
    g_new: np.ndarray
    trials: int


def wwp_line_search(
    p: Problem,
    c: EvalCounter,
    x: np.ndarray,
    d: np.ndarray,
    f0: float,
    gd0: float,
    params: LineSearchParams,
) -> StepResult:
    """Find alpha satisfying both weak Wolfe conditions along d.

    Parameters
    ----------
    x, d : current point and descent direction.
    f0, gd0 : f(x) and g(x)'d, both already available to the caller.
    params : search constants; gd0 must be negative.

    Raises
    ------
    NotDescent
        if gd0 >= 0.
    SearchFailed
        if no acceptable alpha is found within ``max_trials`` evaluations
        or the expansion exceeds ``alpha_max``.  Callers treat this as a
        terminal solver event rather than retrying.
    """
    if gd0 >= 0.0:
        raise NotDescent(f"g'd = {gd0} is not negative")

    lo = 0.0  # largest known alpha satisfying sufficient decrease
    hi = np.inf  # smallest known alpha violating it (inf until bracketed)
    alpha = params.alpha_init
    for trial in range(1, params.max_trials + 1):
        x_new = x + alpha * d
        try:
            f_new, g_new = evaluate(p, x_new, c)
        except DomainError:
            # Trial left the objective's domain: reject it like an
            # infinite value so the bracket shrinks back inside.
            f_new, g_new = np.inf, None
        # A non-finite f_new fails this comparison, shrinking the bracket.
        if f_new <= f0 + params.rho * alpha * gd0:
            if float(g_new @ d) >= params.sigma * gd0:
                return StepResult(alpha=alpha, x_new=x_new, f_new=f_new, g_new=g_new, trials=trial)
            lo = alpha
        else:
            hi = alpha
        assert hi > lo
        if np.isinf(hi):
            alpha = 2.0 * alpha
            if alpha > params.alpha_max:
                raise SearchFailed(f"expansion exceeded alpha_max={params.alpha_max}")
        else:
            alpha = 0.5 * (lo + hi)
            if alpha <= lo or alpha >= hi:
                # Bracket collapsed to adjacent floats without acceptance.
                raise SearchFailed(f"bracket [{lo}, {hi}] exhausted at trial {trial}")
    raise SearchFailed(f"no acceptable step within {params.max_trials} trials")
