"""Collection of smooth unconstrained test problems.

Each problem exposes a joint (f, gradient) evaluation behind a uniform
interface so solvers and experiments can treat every objective the same
way.  All problems are parameterized by the dimension n; block-structured
ones (the "extended" family) additionally require n to be a multiple of
their block size.  Starting points are the standard ones used in the
unconstrained-optimization benchmarking literature.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import (
    DimensionMismatch,
    IncompatibleDimension,
    NonFiniteValue,
    UnknownProblem,
)

FGFunc = Callable[[np.ndarray], "tuple[float, np.ndarray]"]


@dataclass(frozen=True, eq=False)
class Problem:
    """Named objective with analytic gradient and a standard start point."""

    name: str
    dim: int
    start: np.ndarray
    fg: FGFunc


@dataclass
class EvalCounter:
    """Counts objective (nf) and gradient (ng) evaluations for one run."""

    nf: int = 0
    ng: int = 0

    @property
    def nfg(self) -> int:
        return self.nf + self.ng


def evaluate(p: Problem, x: np.ndarray, c: EvalCounter) -> "tuple[float, np.ndarray]":
    """Evaluate f and its gradient at x, bumping both counters.

    f and g are always computed together in one pass; overflow in the
    objective (e.g. exp at a wild line-search trial point) propagates as
    inf rather than raising.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (p.dim,):
        raise DimensionMismatch(
            f"{p.name}: expected vector of length {p.dim}, got shape {x.shape}"
        )
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        f, g = p.fg(x)
    c.nf += 1
    c.ng += 1
    return float(f), g


def fd_gradient(p: Problem, x: np.ndarray, h: float = 1e-6) -> np.ndarray:
    """Central-difference gradient (f(x+h e_i) - f(x-h e_i)) / (2h).

    Independent of the analytic gradient path: only objective values are
    used.  Raises NonFiniteValue if f is NaN/Inf at any probe point.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    x = np.asarray(x, dtype=float)
    if x.shape != (p.dim,):
        raise DimensionMismatch(
            f"{p.name}: expected vector of length {p.dim}, got shape {x.shape}"
        )
    g = np.empty(p.dim)
    for i in range(p.dim):
        e = np.zeros(p.dim)
        e[i] = h
        fp = p.fg(x + e)[0]
        fm = p.fg(x - e)[0]
        if not (np.isfinite(fp) and np.isfinite(fm)):
            raise NonFiniteValue(f"{p.name}: f not finite near x (component {i})")
        g[i] = (fp - fm) / (2.0 * h)
    return g


# ---------------------------------------------------------------------------
# Catalogue objectives.  Index vectors (1-based coefficients i, sqrt(i), ...)
# are rebuilt per call; they are O(n) like the evaluation itself.
# ---------------------------------------------------------------------------


def _ext_rosenbrock(x):
    """sum over pairs: 100 (v - u^2)^2 + (1 - u)^2"""
    u, v = x[0::2], x[1::2]
    t = v - u * u
    f = np.sum(100.0 * t * t + (1.0 - u) ** 2)
    g = np.empty_like(x)
    g[0::2] = -400.0 * u * t - 2.0 * (1.0 - u)
    g[1::2] = 200.0 * t
    return f, g


def _ext_white_holst(x):
    """sum over pairs: 100 (v - u^3)^2 + (1 - u)^2"""
    u, v = x[0::2], x[1::2]
    t = v - u**3
    f = np.sum(100.0 * t * t + (1.0 - u) ** 2)
    g = np.empty_like(x)
    g[0::2] = -600.0 * u * u * t - 2.0 * (1.0 - u)
    g[1::2] = 200.0 * t
    return f, g


def _perturbed_quadratic(x):
    """sum i x_i^2 + (sum x_i)^2 / 100"""
    i = np.arange(1, x.size + 1, dtype=float)
    s = np.sum(x)
    f = np.sum(i * x * x) + s * s / 100.0
    g = 2.0 * i * x + (2.0 / 100.0) * s
    return f, g


def _raydan1(x):
    """sum (i/10) (exp(x_i) - x_i)"""
    i = np.arange(1, x.size + 1, dtype=float)
    e = np.exp(x)
    f = np.sum((i / 10.0) * (e - x))
    g = (i / 10.0) * (e - 1.0)
    return f, g


def _raydan2(x):
    """sum exp(x_i) - x_i"""
    e = np.exp(x)
    return np.sum(e - x), e - 1.0


def _diagonal1(x):
    """sum exp(x_i) - i x_i"""
    i = np.arange(1, x.size + 1, dtype=float)
    e = np.exp(x)
    return np.sum(e - i * x), e - i


def _diagonal2(x):
    """sum exp(x_i) - x_i / i"""
    i = np.arange(1, x.size + 1, dtype=float)
    e = np.exp(x)
    return np.sum(e - x / i), e - 1.0 / i


def _diagonal3(x):
    """sum exp(x_i) - i sin(x_i)"""
    i = np.arange(1, x.size + 1, dtype=float)
    e = np.exp(x)
    return np.sum(e - i * np.sin(x)), e - i * np.cos(x)


def _hager(x):
    """sum exp(x_i) - sqrt(i) x_i"""
    r = np.sqrt(np.arange(1, x.size + 1, dtype=float))
    e = np.exp(x)
    return np.sum(e - r * x), e - r


def _gen_tridiag1(x):
    """sum_{i<n} (x_i + x_{i+1} - 3)^2 + (x_i - x_{i+1} + 1)^4"""
    a = x[:-1] + x[1:] - 3.0
    b = x[:-1] - x[1:] + 1.0
    f = np.sum(a * a + b**4)
    g = np.zeros_like(x)
    g[:-1] += 2.0 * a + 4.0 * b**3
    g[1:] += 2.0 * a - 4.0 * b**3
    return f, g


def _ext_tridiag1(x):
    """sum over pairs: (u + v - 3)^2 + (u - v + 1)^4"""
    u, v = x[0::2], x[1::2]
    a = u + v - 3.0
    b = u - v + 1.0
    f = np.sum(a * a + b**4)
    g = np.empty_like(x)
    g[0::2] = 2.0 * a + 4.0 * b**3
    g[1::2] = 2.0 * a - 4.0 * b**3
    return f, g


def _ext_himmelblau(x):
    """sum over pairs: (u^2 + v - 11)^2 + (u + v^2 - 7)^2"""
    u, v = x[0::2], x[1::2]
    a = u * u + v - 11.0
    b = u + v * v - 7.0
    f = np.sum(a * a + b * b)
    g = np.empty_like(x)
    g[0::2] = 4.0 * u * a + 2.0 * b
    g[1::2] = 2.0 * a + 4.0 * v * b
    return f, g


def _ext_penalty(x):
    """sum_{i<n} (x_i - 1)^2 + (sum x_j^2 - 0.25)^2"""
    q = np.sum(x * x) - 0.25
    f = np.sum((x[:-1] - 1.0) ** 2) + q * q
    g = 4.0 * q * x
    g[:-1] += 2.0 * (x[:-1] - 1.0)
    return f, g


def _qf1(x):
    """(1/2) sum i x_i^2 - x_n"""
    i = np.arange(1, x.size + 1, dtype=float)
    f = 0.5 * np.sum(i * x * x) - x[-1]
    g = i * x
    g[-1] -= 1.0
    return f, g


def _fletchcr(x):
    """sum_{i<n} 100 (x_{i+1} - x_i + 1 - x_i^2)^2"""
    t = x[1:] - x[:-1] + 1.0 - x[:-1] ** 2
    f = np.sum(100.0 * t * t)
    g = np.zeros_like(x)
    g[:-1] += 200.0 * t * (-1.0 - 2.0 * x[:-1])
    g[1:] += 200.0 * t
    return f, g


def _nondia(x):
    """(x_1 - 1)^2 + 100 sum_{i>=2} (x_1 - x_i^2)^2"""
    t = x[0] - x[1:] ** 2
    f = (x[0] - 1.0) ** 2 + np.sum(100.0 * t * t)
    g = np.empty_like(x)
    g[0] = 2.0 * (x[0] - 1.0) + 200.0 * np.sum(t)
    g[1:] = -400.0 * x[1:] * t
    return f, g


@dataclass(frozen=True)
class _Spec:
    fg: FGFunc
    start: Callable[[int], np.ndarray]
    block: int = 1
    min_dim: int = 1


_CATALOGUE: "dict[str, _Spec]" = {
    "ext_rosenbrock": _Spec(_ext_rosenbrock, lambda n: np.tile([-1.2, 1.0], n // 2), block=2, min_dim=2),
    "ext_white_holst": _Spec(_ext_white_holst, lambda n: np.tile([-1.2, 1.0], n // 2), block=2, min_dim=2),
    "perturbed_quadratic": _Spec(_perturbed_quadratic, lambda n: np.full(n, 0.5)),
    "raydan1": _Spec(_raydan1, lambda n: np.ones(n)),
    "raydan2": _Spec(_raydan2, lambda n: np.ones(n)),
    "diagonal1": _Spec(_diagonal1, lambda n: np.full(n, 1.0 / n)),
    "diagonal2": _Spec(_diagonal2, lambda n: 1.0 / np.arange(1, n + 1)),
    "diagonal3": _Spec(_diagonal3, lambda n: np.ones(n)),
    "hager": _Spec(_hager, lambda n: np.ones(n)),
    "gen_tridiag1": _Spec(_gen_tridiag1, lambda n: np.full(n, 2.0), min_dim=2),
    "ext_tridiag1": _Spec(_ext_tridiag1, lambda n: np.full(n, 2.0), block=2, min_dim=2),
    "ext_himmelblau": _Spec(_ext_himmelblau, lambda n: np.ones(n), block=2, min_dim=2),
    "ext_penalty": _Spec(_ext_penalty, lambda n: np.arange(1, n + 1, dtype=float), min_dim=2),
    "qf1": _Spec(_qf1, lambda n: np.ones(n)),
    "fletchcr": _Spec(_fletchcr, lambda n: np.zeros(n), min_dim=2),
    "nondia": _Spec(_nondia, lambda n: np.full(n, -1.0), min_dim=2),
}


def catalogue() -> "list[str]":
    """Sorted identifiers of all registered problems."""
    return sorted(_CATALOGUE)


def make_problem(name: str, n: int) -> Problem:
    """Instantiate a catalogue problem at dimension n with its standard start."""
    try:
        spec = _CATALOGUE[name]
    except KeyError:
        raise UnknownProblem(f"unknown problem {name!r}; see catalogue()") from None
    if n < spec.min_dim:
        raise IncompatibleDimension(f"{name} needs n >= {spec.min_dim}, got {n}")
    if n % spec.block != 0:
        raise IncompatibleDimension(f"{name} needs n divisible by {spec.block}, got {n}")
    return Problem(name=name, dim=n, start=spec.start(n), fg=spec.fg)
