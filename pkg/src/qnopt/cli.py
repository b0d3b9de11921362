"""Command-line front end.

Subcommands: ``problems`` (list the catalogue), ``solve`` (one run),
``bench`` (problem x solver x dim grid to CSV), ``profile`` (performance
profile SVG+CSV from a results CSV), ``cs`` (sparse recovery experiment),
``muskingum`` (flood-routing fit).

Settings resolve as flag > config file > built-in default.  The config
file is TOML with keys matching SolverConfig field names plus ``out_dir``;
the effective configuration is echoed to stderr.  Each solver run prints
a one-line JSON summary to stdout.  Exit status: 0 on success, 1 when a
run ends in a non-converged status, 2 on usage or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from importlib import resources
from pathlib import Path

from .bench import ResultsTable, emit_profile_svg, performance_profile, run_suite
from .errors import IoError, ParseError, QnoptError, UnknownSolver
from .experiments import (
    cs_instance,
    cs_objective,
    load_flood_csv,
    muskingum_problem,
    rel_err,
)
from .problems import catalogue, make_problem
from .solvers import PAIR_MODES, VARIANTS, SolverConfig, Status, solve

_CFG_KEYS = ("variant", "eps_g", "eps_b", "max_iter", "tau_cap", "pair_mode",
             "b_init", "clamp_stored", "out_dir")


def _load_config_file(path):
    if path is None:
        return {}
    try:
        import tomllib
    except ModuleNotFoundError:
        import tomli as tomllib
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as e:
        raise IoError(f"cannot read config {path}: {e}") from e
    except tomllib.TOMLDecodeError as e:
        raise ParseError(f"{path}: {e}") from None
    unknown = sorted(set(data) - set(_CFG_KEYS))
    if unknown:
        raise ParseError(f"{path}: unknown config keys {unknown}")
    return data


def _check_solver(name: str) -> str:
    if name not in VARIANTS:
        raise UnknownSolver(f"unknown solver {name!r}; expected one of {VARIANTS}")
    return name


def _solver_config(args, file_cfg) -> SolverConfig:
    kw = {k: v for k, v in file_cfg.items() if k != "out_dir"}
    for flag, key in (("solver", "variant"), ("tau_cap", "tau_cap"),
                      ("pair_mode", "pair_mode")):
        v = getattr(args, flag, None)
        if v is not None:
            kw[key] = v
    if "variant" in kw:
        _check_solver(kw["variant"])
    return SolverConfig(**kw)


def _out_dir(file_cfg) -> Path:
    return Path(file_cfg.get("out_dir", os.environ.get("QNOPT_OUT_DIR", ".")))


def _resolve_out(name, args_out, file_cfg) -> Path:
    p = Path(args_out) if args_out else Path(name)
    if not p.is_absolute():
        p = _out_dir(file_cfg) / p
    try:
        p.parent.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise IoError(f"cannot create output directory {p.parent}: {e}") from e
    return p


def _echo_config(cfg: SolverConfig, file_cfg) -> None:
    eff = {"variant": cfg.variant, "eps_g": cfg.eps_g, "eps_b": cfg.eps_b,
           "max_iter": cfg.max_iter, "rho": cfg.ls.rho, "sigma": cfg.ls.sigma,
           "tau_cap": cfg.tau_cap, "pair_mode": cfg.pair_mode, "b_init": cfg.b_init,
           "clamp_stored": cfg.clamp_stored, "out_dir": str(_out_dir(file_cfg))}
    print(f"effective config: {json.dumps(eff)}", file=sys.stderr)


def _jnum(v):
    v = float(v)
    return v if math.isfinite(v) else None


def _summary(**fields) -> None:
    print(json.dumps(fields))


def _exit_code(status: Status) -> int:
    return 0 if status is Status.CONVERGED_GRADNORM else 1


def _cmd_problems(args) -> int:
    for name in catalogue():
        print(name)
    return 0


def _cmd_solve(args) -> int:
    file_cfg = _load_config_file(args.config)
    cfg = _solver_config(args, file_cfg)
    _echo_config(cfg, file_cfg)
    p = make_problem(args.problem, args.n)
    rep = solve(p, p.start, cfg)
    _summary(problem=p.name, dim=p.dim, solver=cfg.variant, status=rep.status.value,
             ni=rep.iterations, nfg=rep.nfg, f_final=_jnum(rep.f_final),
             gnorm_final=_jnum(rep.gnorm_final))
    return _exit_code(rep.status)


def _cmd_bench(args) -> int:
    file_cfg = _load_config_file(args.config)
    cfg = _solver_config(args, file_cfg)
    _echo_config(cfg, file_cfg)
    solvers = [_check_solver(s.strip()) for s in args.solvers.split(",") if s.strip()]
    dims = [int(d) for d in args.dims.split(",") if d.strip()]
    table = run_suite(catalogue(), solvers, dims, cfg, args.seed, jobs=args.jobs)
    out = _resolve_out("results.csv", getattr(args, "out", None), file_cfg)
    table.to_csv(out)
    print(f"wrote {out}", file=sys.stderr)
    for r in table.rows:
        _summary(problem=r.problem, dim=r.dim, solver=r.solver, status=r.status,
                 ni=r.ni, nfg=r.nfg, gnorm_final=_jnum(r.gnorm_final))
    solved = sum(r.status == Status.CONVERGED_GRADNORM.value for r in table.rows)
    return 0 if solved > 0 else 1


def _cmd_profile(args) -> int:
    file_cfg = _load_config_file(args.config)
    table = ResultsTable.from_csv(getattr(args, "infile"))
    curves = performance_profile(table, args.metric)
    stem = getattr(args, "out", None) or "profile"
    if stem.endswith(".svg"):
        stem = stem[: -len(".svg")]
    svg = _resolve_out(stem + ".svg", stem + ".svg", file_cfg)
    emit_profile_svg(curves, svg)
    print(f"wrote {svg} and {svg.with_suffix('.csv')}", file=sys.stderr)
    return 0


def _cmd_cs(args) -> int:
    file_cfg = _load_config_file(args.config)
    cfg = _solver_config(args, file_cfg)
    _echo_config(cfg, file_cfg)
    n = args.n
    m = args.m if args.m is not None else n // 4
    k = args.k if args.k is not None else max(1, m // 8)
    inst = cs_instance(n, m, k, args.seed)
    p = cs_objective(inst, lam=args.lam)
    rep = solve(p, p.start, cfg)
    err = rel_err(rep.x_final, inst.x_true)
    if getattr(args, "out", None):
        out = _resolve_out("cs_recovery.csv", args.out, file_cfg)
        with open(out, "w", newline="") as fh:
            fh.write("x_true,x_star\n")
            for xt, xs in zip(inst.x_true, rep.x_final):
                fh.write(f"{float(xt)!r},{float(xs)!r}\n")
        print(f"wrote {out}", file=sys.stderr)
    _summary(n=n, m=m, k=k, seed=args.seed, solver=cfg.variant,
             status=rep.status.value, ni=rep.iterations, nfg=rep.nfg,
             f_final=_jnum(rep.f_final), gnorm_final=_jnum(rep.gnorm_final),
             rel_err=_jnum(err))
    return _exit_code(rep.status)


def _cmd_muskingum(args) -> int:
    file_cfg = _load_config_file(args.config)
    cfg = _solver_config(args, file_cfg)
    _echo_config(cfg, file_cfg)
    if args.data is not None:
        data = load_flood_csv(args.data, dt=args.dt)
    else:
        ref = resources.files("qnopt").joinpath("data/flood_synthetic.csv")
        with resources.as_file(ref) as path:
            data = load_flood_csv(path, dt=args.dt)
    p = muskingum_problem(data)
    rep = solve(p, p.start, cfg)
    x = rep.x_final
    _summary(solver=cfg.variant, status=rep.status.value, ni=rep.iterations,
             nfg=rep.nfg, f_final=_jnum(rep.f_final),
             gnorm_final=_jnum(rep.gnorm_final),
             x1=_jnum(x[0]), x2=_jnum(x[1]), x3=_jnum(x[2]))
    return _exit_code(rep.status)


def _add_common(sp) -> None:
    sp.add_argument("--config", default=None, help="TOML config file")
    sp.add_argument("--solver", default=None, metavar="{" + "|".join(VARIANTS) + "}",
                    help="solver variant")
    sp.add_argument("--tau-cap", dest="tau_cap", type=float, default=None,
                    help="extrapolation coefficient cap (wdmbfgs3)")
    sp.add_argument("--pair-mode", dest="pair_mode", choices=PAIR_MODES, default=None,
                    help="curvature pair construction (wdmbfgs3)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qnopt",
                                 description="diagonal quasi-Newton solvers and benchmarks")
    sub = ap.add_subparsers(dest="cmd")

    sp = sub.add_parser("problems", help="list the problem catalogue")
    sp.set_defaults(run=_cmd_problems)

    sp = sub.add_parser("solve", help="run one solver on one problem")
    sp.add_argument("--problem", required=True)
    sp.add_argument("--n", type=int, required=True, help="problem dimension")
    _add_common(sp)
    sp.set_defaults(run=_cmd_solve)

    sp = sub.add_parser("bench", help="run the benchmark grid and write a results CSV")
    sp.add_argument("--dims", default="900,1500,2100", help="comma-separated dimensions")
    sp.add_argument("--solvers", default=",".join(VARIANTS), help="comma-separated solvers")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--jobs", type=int, default=1, help="parallel grid cells")
    sp.add_argument("--out", default=None, help="results CSV path")
    _add_common(sp)
    sp.set_defaults(run=_cmd_bench)

    sp = sub.add_parser("profile", help="performance profile from a results CSV")
    sp.add_argument("--in", dest="infile", required=True, help="results CSV")
    sp.add_argument("--metric", choices=("ni", "nfg", "cpu"), default="ni")
    sp.add_argument("--out", default=None, help="output stem (.svg/.csv appended)")
    sp.add_argument("--config", default=None, help="TOML config file")
    sp.set_defaults(run=_cmd_profile)

    sp = sub.add_parser("cs", help="sparse signal recovery experiment")
    sp.add_argument("--n", type=int, default=4096, help="signal dimension")
    sp.add_argument("--m", type=int, default=None, help="measurements (default n/4)")
    sp.add_argument("--k", type=int, default=None, help="nonzeros (default m/8)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--lambda", dest="lam", type=float, default=None,
                    help="l1 weight (default 0.01*||A^T y||_inf)")
    sp.add_argument("--out", default=None, help="optional x_true/x_star dump CSV")
    _add_common(sp)
    sp.set_defaults(run=_cmd_cs)

    sp = sub.add_parser("muskingum", help="flood-routing parameter fit")
    sp.add_argument("--data", default=None, help="inflow,outflow CSV (default: bundled)")
    sp.add_argument("--dt", type=float, default=12.0, help="time step, hours")
    _add_common(sp)
    sp.set_defaults(run=_cmd_muskingum)
    return ap


def dispatch(argv) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    if getattr(args, "run", None) is None:
        ap.print_usage(sys.stderr)
        return 2
    try:
        return args.run(args)
    except (QnoptError, ValueError) as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
