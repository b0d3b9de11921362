"""Sparse signal recovery with the smoothed l1 objective.

Draws a +-1 sensing matrix and a sparse signal, minimizes
0.5 ||Ax - y||^2 + lambda * sum sqrt(x_i^2 + eps^2) from the origin,
and reports the percentage reconstruction error.
"""
import numpy as np

from qnopt import SolverConfig, cs_instance, cs_objective, rel_err, solve


def main():
    n, m, k = 1024, 256, 16
    print(f"recovering a {k}-sparse signal in R^{n} from {m} measurements")
    errs = []
    for seed in range(5):
        inst = cs_instance(n, m, k, seed)
        p = cs_objective(inst)
        rep = solve(p, p.start, SolverConfig(variant="wdmbfgs3"))
        err = rel_err(rep.x_final, inst.x_true)
        errs.append(err)
        print(f"  seed {seed}: {rep.status.value:<18} ni={rep.iterations:<5} "
              f"RelErr = {err:6.2f}%")
    print(f"median RelErr over {len(errs)} seeds: {np.median(errs):.2f}%")

    # support identification on the last instance: the recovered vector
    # concentrates its mass on the true support
    true_support = set(np.flatnonzero(inst.x_true))
    top = set(np.argsort(-np.abs(rep.x_final))[:k])
    print(f"recovered top-{k} entries overlap true support: "
          f"{len(true_support & top)}/{k}")


if __name__ == "__main__":
    main()
