"""Curvature-model updates shared by the solver variants.

The diagonal variants keep a positive-oriented diagonal approximation
b = (b_1, ..., b_n) of the Hessian and refresh it from the most recent
step s and gradient difference y.  The gradient difference is first
augmented with a scalar correction built from function values,

    y3 = (2 (f_prev - f_curr) + (g_curr + g_prev)'s) / ||s||^2
    y* = y + y3 * s,

which vanishes identically on quadratics and injects third-order
information otherwise.  The diagonal refresh is the least-change rule

    b_i  <-  b_i + ((s'y* + s's - s'Bs) / sum_j s_j^4) * s_i^2 - 1,

whose defining property is the weak secant identity s'B_new s = s'y*.
Note the trailing "-1": it shrinks every entry each update, including
components the step did not touch, so stored entries can drift to or
below zero.  They are deliberately left unclamped; the positive floor
eps_b is applied only when forming a search direction.

The dense variant keeps a full matrix and applies the rank-two
update B - Bss'B/(s'Bs) + y*y*'/(s'y*), which enforces the full
secant identity B_new s = y*.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, ZeroStep

#: curvature threshold below which the dense rank-two update is skipped
EPS_CURV = 1e-12


@dataclass(frozen=True, eq=False)
class DiagonalHessian:
    """Diagonal curvature model: entries b plus the direction floor eps_b."""

    b: np.ndarray
    eps_b: float = 1e-6


def y3_scalar(f_prev, f_curr, g_prev, g_curr, s) -> float:
    """Scalar correction (2 (f_prev - f_curr) + (g_curr + g_prev)'s) / ||s||^2.

    Zero (to roundoff) whenever f is quadratic between the two points.
    """
    s = np.asarray(s, dtype=float)
    ss = float(s @ s)
    if ss == 0.0:
        raise ZeroStep("y3_scalar needs a nonzero step")
    num = 2.0 * (f_prev - f_curr) + float((np.asarray(g_curr) + np.asarray(g_prev)) @ s)
    return num / ss


def modified_y(y: np.ndarray, y3: float, s: np.ndarray) -> np.ndarray:
    """Augmented gradient difference y + y3 * s."""
    y = np.asarray(y, dtype=float)
    s = np.asarray(s, dtype=float)
    if y.shape != s.shape:
        raise DimensionMismatch(f"y shape {y.shape} != s shape {s.shape}")
    return y + y3 * s


def diagonal_update(
    h: DiagonalHessian, s: np.ndarray, y_star: np.ndarray, clamp_stored: bool = False
) -> DiagonalHessian:
    """Least-change diagonal refresh satisfying s'B_new s = s'y*.

    ``clamp_stored=True`` additionally floors the stored entries at
    eps_b; by default entries are stored as computed and only the
    direction applies the floor.
    """
    s = np.asarray(s, dtype=float)
    y_star = np.asarray(y_star, dtype=float)
    if s.shape != h.b.shape or y_star.shape != h.b.shape:
        raise DimensionMismatch("s, y_star and b must share a shape")
    s2 = s * s
    tr_a2 = float(s2 @ s2)
    if tr_a2 == 0.0:
        raise ZeroStep("diagonal_update needs a nonzero step")
    num = float(s @ y_star) + float(s @ s) - float(s2 @ h.b)
    b_new = h.b + (num / tr_a2) * s2 - 1.0
    if clamp_stored:
        b_new = np.maximum(b_new, h.eps_b)
    return DiagonalHessian(b=b_new, eps_b=h.eps_b)


def safeguarded_direction(h: DiagonalHessian, g: np.ndarray) -> np.ndarray:
    """Componentwise -g_i / b_i where b_i >= eps_b, falling back to -g_i.

    The fallback keeps g'd < 0 for any stored diagonal, however far an
    entry has drifted.
    """
    g = np.asarray(g, dtype=float)
    if g.shape != h.b.shape:
        raise DimensionMismatch(f"g shape {g.shape} != b shape {h.b.shape}")
    d = -g.copy()
    ok = h.b >= h.eps_b
    d[ok] = -g[ok] / h.b[ok]
    return d


def mbfgs3_full_update(B: np.ndarray, s: np.ndarray, y_star: np.ndarray) -> np.ndarray:
    """Dense rank-two update enforcing B_new s = y*.

    Skipped (B returned unchanged) unless s'y* > EPS_CURV * ||s|| ||y*||,
    which preserves positive definiteness.
    """
    B = np.asarray(B, dtype=float)
    s = np.asarray(s, dtype=float)
    y_star = np.asarray(y_star, dtype=float)
    n = s.size
    if B.shape != (n, n) or y_star.shape != s.shape:
        raise DimensionMismatch("B must be n x n with s, y_star of length n")
    sy = float(s @ y_star)
    if sy <= EPS_CURV * float(np.linalg.norm(s)) * float(np.linalg.norm(y_star)):
        return B
    Bs = B @ s
    sBs = float(s @ Bs)
    if sBs <= 0.0:
        return B
    B_new = B - np.outer(Bs, Bs) / sBs
    B_new += np.outer(y_star, y_star) / sy
    return B_new
