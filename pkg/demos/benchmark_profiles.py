"""Desk-scale benchmark and performance profile.

Runs the whole catalogue at a small dimension for two solvers, writes
the results CSV, and emits the iteration-count profile as an SVG plus
its sibling CSV of curve samples.  The full-scale equivalent is
`qnopt bench --dims 900,1500,2100` followed by `qnopt profile`.
"""
import pathlib

from qnopt import (
    SolverConfig,
    catalogue,
    emit_profile_svg,
    performance_profile,
    run_suite,
)

OUT = pathlib.Path("demo_out")


def main():
    OUT.mkdir(exist_ok=True)
    cfg = SolverConfig(max_iter=1000)
    table = run_suite(catalogue(), ["dmbfgs3", "wdmbfgs3"], [100], cfg)
    csv_path = OUT / "results.csv"
    table.to_csv(csv_path)
    print(f"wrote {csv_path} ({len(table.rows)} rows)")

    solved = [r for r in table.rows if r.status == "ConvergedGradNorm"]
    print(f"solved {len(solved)} of {len(table.rows)} cells")
    for r in table.rows:
        mark = "+" if r.status == "ConvergedGradNorm" else "-"
        print(f"  {mark} {r.problem:<22} {r.solver:<9} {r.status:<18} ni={r.ni}")

    curves = performance_profile(table, "ni")
    svg_path = OUT / "profile_ni.svg"
    emit_profile_svg(curves, svg_path)
    print(f"wrote {svg_path} and {svg_path.with_suffix('.csv')}")
    for s in curves.solvers:
        print(f"  {s}: rho(1) = {curves.rho[s][0]:.2f}, "
              f"rho(max tau) = {curves.rho[s][-1]:.2f}")


if __name__ == "__main__":
    main()
