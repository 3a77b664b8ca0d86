"""Command-line front end: ``lz-dyson {evolve,sweep,dyson,series,verify}``.

Every table is written as CSV (LF line endings, ``.`` decimal point) preceded
by a single comment line ``# lz-dyson <subcommand> <key=value ...>`` listing
the resolved parameters.  Exit codes: 0 success, 1 verification failure,
2 usage or validation error.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import dyson, propagator, verify
from .core import ParameterError, TimeGrid, check_gamma
from .special import RegularizedTheta

PROG = "lz-dyson"
DEFAULT_SWEEP = (0.1, 0.5, 1.0, 2.0)


class UsageError(Exception):
    pass


def _gamma_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def _only_list(text: str) -> list[str]:
    return [v.strip() for v in text.split(",") if v.strip()]


# name -> (type, default, help); defaults are applied after merging the config file
OPTIONS = {
    "gamma": (_gamma_list, None, "adiabaticity gamma (sweep: comma-separated list)"),
    "gamma-min": (float, None, "sweep: smallest gamma of a linear range"),
    "gamma-max": (float, None, "sweep: largest gamma of a linear range"),
    "gamma-count": (int, 5, "sweep: number of points in the range"),
    "tau-max": (float, propagator.DEFAULT_TAU_MAX, "half-width of the sweep window"),
    "step": (float, propagator.DEFAULT_STEP, "time step"),
    "method": (str, "expmid", "integrator: expmid or rk4"),
    "picture": (str, "lab", "integration picture: lab or interaction"),
    "averaging-periods": (int, propagator.DEFAULT_AVERAGING_PERIODS, "endpoint periods averaged"),
    "order": (int, None, "dyson: order n (repeatable via commas); series: highest order"),
    "window": (float, dyson.DEFAULT_WINDOW, "dyson: truncation window T"),
    "grid": (int, dyson.DEFAULT_GRID_POINTS, "dyson: grid points"),
    "averaging-windows": (int, dyson.DEFAULT_AVERAGING_WINDOWS, "dyson: T values averaged"),
    "epsilon": (float, 1e-3, "step-function regularization"),
    "omega": (float, 1e4, "frequency truncation half-width"),
    "jobs": (int, 1, "sweep: worker processes"),
    "only": (_only_list, None, "verify: comma-separated check groups"),
}

# parameters that shape each subcommand's output, in header order
RELEVANT = {
    "evolve": ["gamma", "tau-max", "step", "method", "picture"],
    "sweep": ["gamma", "tau-max", "step", "method", "averaging-periods"],
    "dyson": ["order", "window", "grid", "averaging-windows"],
    "series": ["gamma", "order"],
    "verify": ["only", "gamma", "tau-max", "step", "epsilon", "omega", "window", "grid"],
}
SUBCOMMAND_OPTIONS = {
    "evolve": RELEVANT["evolve"],
    "sweep": RELEVANT["sweep"] + ["gamma-min", "gamma-max", "gamma-count", "jobs"],
    "dyson": RELEVANT["dyson"],
    "series": RELEVANT["series"],
    "verify": RELEVANT["verify"],
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=PROG, description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, keys in SUBCOMMAND_OPTIONS.items():
        p = sub.add_parser(name)
        for key in keys:
            typ, default, help_ = OPTIONS[key]
            p.add_argument(f"--{key}", type=typ, default=None, help=f"{help_} (default {default})")
        p.add_argument("--output", type=Path, default=None, help="output path (default stdout)")
        p.add_argument("--config", type=Path, default=None, help="file of key=value lines")
    return parser


def read_config(path: Path, command: str) -> dict:
    allowed = SUBCOMMAND_OPTIONS[command]
    values = {}
    try:
        text = path.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}")
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("_", "-")
        if key not in allowed:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r} for {command}")
        try:
            values[key] = OPTIONS[key][0](value)
        except (ValueError, argparse.ArgumentTypeError) as exc:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {exc}")
    return values


def resolve(args: argparse.Namespace) -> dict:
    """Merge flags over config file over built-in defaults."""
    keys = SUBCOMMAND_OPTIONS[args.command]
    from_file = read_config(args.config, args.command) if args.config else {}
    cfg = {}
    for key in keys:
        flag = getattr(args, key.replace("-", "_"))
        cfg[key] = flag if flag is not None else from_file.get(key, OPTIONS[key][1])
    return cfg


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(x)
    return f"{float(x):.15e}"


def _canonical(command: str, cfg: dict) -> str:
    parts = []
    for key in RELEVANT[command]:
        v = cfg.get(key)
        if v is None:
            continue
        if isinstance(v, list):
            v = ",".join(repr(x) if isinstance(x, float) else str(x) for x in v)
        elif isinstance(v, float):
            v = repr(v)
        parts.append(f"{key}={v}")
    return f"# {PROG} {command} {' '.join(parts)}".rstrip()


def _csv_text(command: str, cfg: dict, header: list[str], rows) -> str:
    buf = io.StringIO()
    buf.write(_canonical(command, cfg) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _single_gamma(cfg: dict, default: float) -> float:
    gammas = cfg["gamma"]
    if gammas is None:
        gammas = [default]
    if len(gammas) != 1:
        raise UsageError("expected a single --gamma value")
    return check_gamma(gammas[0])


def _validate_common(cfg: dict):
    if "method" in cfg and cfg["method"] not in ("expmid", "rk4"):
        raise UsageError(f"--method must be expmid or rk4, got {cfg['method']!r}")
    if "picture" in cfg and cfg["picture"] not in ("lab", "interaction"):
        raise UsageError(f"--picture must be lab or interaction, got {cfg['picture']!r}")
    if "tau-max" in cfg and not (cfg["tau-max"] > 0 and math.isfinite(cfg["tau-max"])):
        raise ParameterError("--tau-max must be > 0")
    if "step" in cfg and not (cfg["step"] > 0 and math.isfinite(cfg["step"])):
        raise ParameterError("--step must be > 0")


def cmd_evolve(cfg: dict) -> str:
    gamma = _single_gamma(cfg, 0.5)
    cfg["gamma"] = [gamma]
    grid = TimeGrid.symmetric(cfg["tau-max"], cfg["step"])
    traj = propagator.evolve(gamma, grid, method=cfg["method"], picture=cfg["picture"])
    if traj.step_warning:
        print(f"{PROG}: warning: step exceeds one radian of phase per step", file=sys.stderr)
    rows = zip(traj.tau, traj.a.real, traj.a.imag, traj.b.real, traj.b.imag, traj.norm)
    return _csv_text("evolve", cfg, ["tau", "re_a", "im_a", "re_b", "im_b", "norm"], rows)


def sweep_gammas(cfg: dict) -> list[float]:
    lo, hi = cfg["gamma-min"], cfg["gamma-max"]
    if lo is not None or hi is not None:
        if lo is None or hi is None:
            raise UsageError("--gamma-min and --gamma-max must be given together")
        if lo > hi:
            raise UsageError(f"empty gamma range: min {lo} > max {hi}")
        count = cfg["gamma-count"]
        if count < 1:
            raise UsageError("--gamma-count must be >= 1")
        gammas = np.linspace(lo, hi, count).tolist() if count > 1 else [lo]
    else:
        gammas = list(cfg["gamma"]) if cfg["gamma"] is not None else list(DEFAULT_SWEEP)
    if not gammas:
        raise UsageError("empty gamma list")
    return sorted(check_gamma(g) for g in gammas)


def _sweep_point(args):
    gamma, tau_max, step, method, periods = args
    r = propagator.survival_probability(gamma, tau_max, step, method, periods)
    return (gamma, r.p_numeric, r.p_analytic, r.abs_error)


def cmd_sweep(cfg: dict) -> str:
    gammas = sweep_gammas(cfg)
    cfg["gamma"] = gammas
    if cfg["averaging-periods"] < 1:
        raise ParameterError("--averaging-periods must be >= 1")
    if cfg["jobs"] < 1:
        raise UsageError("--jobs must be >= 1")
    tasks = [
        (g, cfg["tau-max"], cfg["step"], cfg["method"], cfg["averaging-periods"]) for g in gammas
    ]
    if cfg["jobs"] > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg["jobs"]) as pool:
            rows = list(pool.map(_sweep_point, tasks))
    else:
        rows = [_sweep_point(t) for t in tasks]
    return _csv_text("sweep", cfg, ["gamma", "p_numeric", "p_analytic", "abs_error"], rows)


def _orders(cfg: dict, default) -> list[int]:
    order = cfg["order"]
    return list(default) if order is None else [order]


def cmd_dyson(cfg: dict) -> str:
    orders = _orders(cfg, (1, 2))
    for n in orders:
        if n not in (1, 2):
            raise UsageError(f"unsupported order n={n} (1 or 2)")
    rows = []
    for n in orders:
        term = dyson.dyson_term(
            n,
            window=cfg["window"],
            grid_points=cfg["grid"],
            averaging_windows=cfg["averaging-windows"],
        )
        rows.append((n, term.numeric.real, term.numeric.imag, term.analytic, term.abs_error))
    header = ["n", "re_numeric", "im_numeric", "analytic", "abs_error"]
    return _csv_text("dyson", cfg, header, rows)


def cmd_series(cfg: dict) -> str:
    gamma = _single_gamma(cfg, 0.5)
    cfg["gamma"] = [gamma]
    orders = cfg["order"] if cfg["order"] is not None else 25
    cfg["order"] = orders
    s = dyson.series_sum(gamma, orders)
    rows = ((k, v, s.limit, abs(v - s.limit)) for k, v in enumerate(s.partial_sums))
    return _csv_text("series", cfg, ["k", "partial_sum", "limit", "abs_error"], rows)


def cmd_verify(cfg: dict) -> tuple[str, bool]:
    gamma = _single_gamma(cfg, 0.5)
    settings = verify.Settings(
        step=cfg["step"],
        tau_max=cfg["tau-max"],
        gamma=gamma,
        epsilon=cfg["epsilon"],
        omega=cfg["omega"],
        window=cfg["window"],
        grid=cfg["grid"],
    )
    RegularizedTheta(settings.epsilon, settings.omega)  # validate before running
    only = cfg["only"]
    if only:
        unknown = set(only) - set(verify.GROUPS)
        if unknown:
            raise UsageError(f"unknown check group(s): {', '.join(sorted(unknown))}")
    results = verify.run_checks(settings, only)
    failed = sum(not r.passed for r in results)
    lines = [r.line() for r in results]
    lines.append(f"{len(results) - failed}/{len(results)} checks passed")
    return "\n".join(lines) + "\n", failed == 0


COMMANDS = {
    "evolve": cmd_evolve,
    "sweep": cmd_sweep,
    "dyson": cmd_dyson,
    "series": cmd_series,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on bad flags
    try:
        cfg = resolve(args)
        _validate_common(cfg)
        if args.command == "verify":
            text, ok = cmd_verify(cfg)
            status = 0 if ok else 1
        else:
            text = COMMANDS[args.command](cfg)
            status = 0
    except (UsageError, ParameterError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 2
    if args.output is None:
        sys.stdout.write(text)
    else:
        args.output.write_bytes(text.encode("ascii"))
    return status


if __name__ == "__main__":
    sys.exit(main())
