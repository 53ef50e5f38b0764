"""Command line interface: run, converge, stability, catalog."""

from __future__ import annotations

import argparse
import sys

from .driver import RunConfig, converge, run, stability_sweep_csv
from .errors import (BlowupError, ConfigurationError, OracleError,
                     PositivityError, SolverError)
from .problems import catalog
from .stability import max_stable_cfl

_ERROR_CATEGORY = (
    (ConfigurationError, "config", 2),
    (PositivityError, "positivity", 3),
    (BlowupError, "blowup", 4),
    (OracleError, "oracle", 5),
    (OSError, "io", 6),
)


def _parse_mesh(text):
    if text is None:
        return None
    parts = text.lower().replace("x", ",").split(",")
    return tuple(int(p) for p in parts if p)


def _read_config_file(path) -> dict:
    options = {}
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigurationError(f"bad config line {line!r} in {path}")
            key, value = (s.strip() for s in line.split("=", 1))
            options[key.replace("-", "_")] = value
    return options


_CONFIG_KEYS = ("problem", "integrator", "mesh", "cfl", "t_final", "weno_mode",
                "weno_p", "weno_eps", "out")


def _merge_run_config(args) -> RunConfig:
    options = _read_config_file(args.config) if args.config else {}
    for key in options:
        if key not in _CONFIG_KEYS:
            raise ConfigurationError(f"unknown config key {key!r}")

    def pick(name, cast=str):
        value = getattr(args, name, None)
        if value is not None:
            return value
        if name in options:
            return cast(options[name])
        return None

    problem = pick("problem")
    if problem is None:
        raise ConfigurationError("a problem id is required (--problem or config)")
    mesh = getattr(args, "mesh", None)
    mesh = _parse_mesh(mesh) if mesh is not None else (
        _parse_mesh(options["mesh"]) if "mesh" in options else None)
    return RunConfig(
        problem=problem,
        integrator=pick("integrator") or "pif-taylor",
        mesh=mesh,
        cfl=pick("cfl", float),
        t_final=pick("t_final", float),
        weno_mode=pick("weno_mode") or "nonlinear",
        weno_p=pick("weno_p", float) or 2.0,
        weno_eps=pick("weno_eps", float) or 1.0e-6,
        outdir=pick("out"),
    )


def _add_run_flags(p):
    p.add_argument("--problem", help="problem id from the catalog")
    p.add_argument("--integrator", choices=("pif-taylor", "pif-rk4", "ssp-rk3"))
    p.add_argument("--mesh", help="mx or MXxMY, e.g. 400 or 240x80")
    p.add_argument("--cfl", type=float)
    p.add_argument("--t-final", dest="t_final", type=float)
    p.add_argument("--weno-mode", dest="weno_mode", choices=("nonlinear", "linear"))
    p.add_argument("--out", help="output directory for CSV/metrics files")
    p.add_argument("--config", help="key=value config file; flags override it")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pifweno",
        description="Conservative finite-difference WENO solver driven by "
                    "time-averaged fluxes")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one configured simulation")
    _add_run_flags(p_run)

    p_conv = sub.add_parser("converge", help="mesh-refinement error study")
    _add_run_flags(p_conv)
    p_conv.add_argument("--meshes", required=True,
                        help="comma-separated mesh sizes, e.g. 10,20,40,80")

    p_stab = sub.add_parser("stability", help="amplification-factor sweep")
    p_stab.add_argument("--which", choices=("taylor", "rk4"), default="taylor")
    p_stab.add_argument("--nu-min", type=float, default=0.1)
    p_stab.add_argument("--nu-max", type=float, default=1.2)
    p_stab.add_argument("--nu-count", type=int, default=12)
    p_stab.add_argument("--theta-samples", type=int, default=256)
    p_stab.add_argument("--boundary", action="store_true",
                        help="also print the bisected stability boundary")
    p_stab.add_argument("--out", help="output directory")

    sub.add_parser("catalog", help="list the benchmark problems")
    return parser


def _cmd_run(args) -> int:
    config = _merge_run_config(args)
    result = run(config)
    state = result.state
    mesh = (f"{state.grid.mx}x{state.grid.my}" if state.is_2d
            else str(state.grid.mx))
    print(f"{config.problem} [{config.integrator}] mesh={mesh} "
          f"steps={result.metrics['steps']} t={state.t:.6g} "
          f"mass_drift_max={result.metrics['mass_drift_max']:.3e} "
          f"wall={result.metrics['wall_time_s']:.2f}s")
    return 0


def _cmd_converge(args) -> int:
    config = _merge_run_config(args)
    meshes = [int(s) for s in args.meshes.split(",")]
    table = converge(config.problem, config.integrator, meshes,
                     cfl=config.cfl, t_final=config.t_final, outdir=config.outdir)
    print(f"{'mesh':>8} {'error':>14} {'order':>7}")
    for m, err, order in table:
        order_s = "---" if order != order else f"{order:7.3f}"
        print(f"{m:8d} {err:14.6e} {order_s:>7}")
    return 0


def _cmd_stability(args) -> int:
    import numpy as np

    nus = np.linspace(args.nu_min, args.nu_max, args.nu_count)
    if args.out:
        path = stability_sweep_csv(
            f"{args.out}/stability_{args.which}.csv", nus,
            theta_samples=args.theta_samples, which=args.which)
        print(f"wrote {path}")
    if args.boundary or not args.out:
        if args.which == "taylor":
            print(f"taylor stability boundary: nu = {max_stable_cfl():.4f}")
        else:
            print("boundary bisection is implemented for the taylor scheme")
    return 0


def _cmd_catalog(_args) -> int:
    for pid, spec in catalog().items():
        mesh = "x".join(str(m) for m in spec.default_mesh)
        print(f"{pid:16s} model={spec.model.name:8s} mesh={mesh:8s} "
              f"cfl={spec.default_cfl} t_final={spec.t_final:.4g}")
    return 0


_COMMANDS = {
    "run": _cmd_run,
    "converge": _cmd_converge,
    "stability": _cmd_stability,
    "catalog": _cmd_catalog,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (SolverError, OSError) as exc:
        for cls, category, code in _ERROR_CATEGORY:
            if isinstance(exc, cls):
                print(f"ERROR {category}: {exc}", file=sys.stderr)
                return code
        print(f"ERROR internal: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
