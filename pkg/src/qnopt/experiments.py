"""Two applied test settings: sparse signal recovery and flood routing.

Signal recovery minimizes a smoothed l1-regularized least-squares
objective over a random +-1 sensing matrix.  Flood routing fits the
three-parameter nonlinear Muskingum storage model to an observed
inflow/outflow record by least squares.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidDimensions, ParseError, TooShort, ZeroReference
from .problems import Problem

CS_EPS_SMOOTH = 1e-4
CS_LAMBDA_SCALE = 0.01


@dataclass(frozen=True)
class CsInstance:
    """One random recovery instance: y = A @ x_true with k-sparse x_true."""

    A: np.ndarray
    x_true: np.ndarray
    y: np.ndarray
    m: int
    n: int
    k: int
    seed: int


def cs_instance(n: int, m: int, k: int, seed: int) -> CsInstance:
    """Draw a +-1 sensing matrix and a k-sparse Gaussian signal."""
    if not (0 < m <= n) or not (0 <= k <= n):
        raise InvalidDimensions(f"need 0 < m <= n and 0 <= k <= n, got n={n} m={m} k={k}")
    rng = np.random.default_rng(seed)
    A = rng.integers(0, 2, size=(m, n)).astype(float) * 2.0 - 1.0
    x_true = np.zeros(n)
    support = rng.choice(n, size=k, replace=False)
    x_true[support] = rng.standard_normal(k)
    y = A @ x_true
    return CsInstance(A=A, x_true=x_true, y=y, m=m, n=n, k=k, seed=seed)


def cs_objective(inst: CsInstance, lam: "float | None" = None,
                 eps_smooth: float = CS_EPS_SMOOTH) -> Problem:
    """Smoothed recovery objective 0.5||Ax-y||^2 + lam * sum sqrt(x_i^2 + eps^2).

    lam defaults to 0.01 * ||A^T y||_inf.  The start point is the origin.
    """
    if lam is None:
        lam = CS_LAMBDA_SCALE * float(np.max(np.abs(inst.A.T @ inst.y)))
    if lam <= 0:
        raise ValueError(f"lam must be positive, got {lam}")
    if eps_smooth <= 0:
        raise ValueError(f"eps_smooth must be positive, got {eps_smooth}")
    A, y = inst.A, inst.y

    def fg(x):
        r = A @ x - y
        root = np.sqrt(x * x + eps_smooth * eps_smooth)
        f = 0.5 * float(r @ r) + lam * float(np.sum(root))
        g = A.T @ r + lam * (x / root)
        return f, g

    return Problem(name=f"cs_recovery[m={inst.m},k={inst.k},seed={inst.seed}]",
                   dim=inst.n, start=np.zeros(inst.n), fg=fg)


def rel_err(x_star: np.ndarray, x_ref: np.ndarray) -> float:
    """Recovery error 100 * ||x_star - x_ref|| / ||x_ref|| (percent)."""
    x_star = np.asarray(x_star, dtype=float)
    x_ref = np.asarray(x_ref, dtype=float)
    denom = float(np.linalg.norm(x_ref))
    if denom == 0.0:
        raise ZeroReference("reference signal has zero norm")
    return 100.0 * float(np.linalg.norm(x_star - x_ref)) / denom


@dataclass(frozen=True)
class MuskingumData:
    """Observed inflow/outflow series on a uniform time grid (hours)."""

    inflow: np.ndarray
    outflow: np.ndarray
    dt: float

    def __post_init__(self):
        if self.inflow.shape != self.outflow.shape or self.inflow.ndim != 1:
            raise InvalidDimensions("inflow and outflow must be 1-d arrays of equal length")
        if self.inflow.size < 2:
            raise TooShort("need at least two observations")
        if self.dt <= 0:
            raise ValueError(f"dt must be positive, got {self.dt}")


def load_flood_csv(path, dt: float = 12.0) -> MuskingumData:
    """Read a two-column inflow,outflow CSV; a single header row is allowed."""
    inflow, outflow = [], []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) < 2:
                raise ParseError(f"{path}:{lineno}: expected two columns, got {len(row)}")
            try:
                vals = (float(row[0]), float(row[1]))
            except ValueError:
                if lineno == 1:
                    continue  # header row
                raise ParseError(f"{path}:{lineno}: non-numeric value in {row[:2]}") from None
            inflow.append(vals[0])
            outflow.append(vals[1])
    if len(inflow) < 2:
        raise TooShort(f"{path}: need at least two data rows, got {len(inflow)}")
    return MuskingumData(inflow=np.asarray(inflow), outflow=np.asarray(outflow), dt=dt)


def muskingum_problem(data: MuskingumData) -> Problem:
    """Least-squares fit of the nonlinear storage model.

    The decision variables are x1 (storage constant), x2 (weighting) and
    x3 (exponent); the residual at each interval balances the change in
    storage x1*(x2*I + (1-x2)*Q)^x3 against the net flow.  Non-integer x3
    with a nonpositive storage argument has no real power, which raises
    DomainError at evaluation time.
    """
    I = data.inflow
    Q = data.outflow
    dt = data.dt
    c1 = 1.0 - dt / 6.0
    T = I.size

    def fg(x):
        x1, x2, x3 = float(x[0]), float(x[1]), float(x[2])
        base = x2 * I + (1.0 - x2) * Q
        bad = np.flatnonzero(base <= 0.0)
        if bad.size and x3 != np.floor(x3):
            raise DomainError(
                f"storage argument {base[bad[0]]:.6g} <= 0 at index {int(bad[0])} "
                f"with non-integer exponent {x3}")
        w = np.power(base, x3)
        # d/dbase base**x3; at base <= 0 (integer x3) the log term is
        # undefined, so the x3-derivative goes generically non-finite.
        with np.errstate(divide="ignore", invalid="ignore"):
            wp = x3 * np.power(base, x3 - 1.0)
            logb = np.log(base)
        term = c1 * x1 * w
        r = (term[1:] - term[:-1]
             - (dt / 2.0) * (I[:-1] - Q[:-1])
             + (dt / 2.0) * (1.0 - dt / 3.0) * (I[1:] - Q[1:]))
        f = float(r @ r)

        dterm_dx1 = c1 * w
        dterm_dx2 = c1 * x1 * wp * (I - Q)
        dterm_dx3 = c1 * x1 * w * logb
        g1 = 2.0 * float(r @ (dterm_dx1[1:] - dterm_dx1[:-1]))
        g2 = 2.0 * float(r @ (dterm_dx2[1:] - dterm_dx2[:-1]))
        g3 = 2.0 * float(r @ (dterm_dx3[1:] - dterm_dx3[:-1]))
        return f, np.array([g1, g2, g3])

    return Problem(name=f"muskingum[T={T}]", dim=3,
                   start=np.array([0.0, 1.0, 1.0]), fg=fg)
