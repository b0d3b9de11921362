"""Fitting the three-parameter flood routing model.

Loads the bundled synthetic inflow/outflow series, builds the routing
least-squares objective, and fits (x1, x2, x3) from the standard start
point (0, 1, 1) with the dense-update solver.
"""
from importlib import resources

import numpy as np

from qnopt import SolverConfig, load_flood_csv, muskingum_problem, solve


def main():
    ref = resources.files("qnopt").joinpath("data/flood_synthetic.csv")
    with resources.as_file(ref) as path:
        data = load_flood_csv(path)
    print(f"loaded {data.inflow.size} observations, dt = {data.dt} h")
    print(f"peak inflow {data.inflow.max():.1f}, peak outflow {data.outflow.max():.1f}")

    p = muskingum_problem(data)
    f0, _ = p.fg(p.start)
    start = ", ".join(f"{v:g}" for v in p.start)
    print(f"f at start ({start}): {f0:.4g}")

    rep = solve(p, p.start, SolverConfig(variant="mbfgs3"))
    x1, x2, x3 = rep.x_final
    print(f"{rep.status.value} after {rep.iterations} iterations "
          f"({rep.nfg} evaluations)")
    print(f"fitted parameters: x1 = {x1:.4f}, x2 = {x2:.4f}, x3 = {x3:.4f}")
    print(f"residual sum of squares: {rep.f_final:.4f}")

    # with dt = 12 the leading coefficient (1 - dt/6) is negative, so a
    # negative storage constant keeps the storage term positive
    print(f"effective storage factor (1 - dt/6) * x1 = {(1 - data.dt / 6) * x1:.4f}")

    # objective decreased monotonically apart from float-resolution ties
    d = np.diff(rep.f_trace)
    print(f"objective decreased on {(d < 0).sum()} of {d.size} steps "
          f"(f: {rep.f_trace[0]:.4g} -> {rep.f_trace[-1]:.4g})")


if __name__ == "__main__":
    main()
