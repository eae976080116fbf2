"""Benchmark command line: runs, sweeps, and sampler/test diagnostics.

Subcommands
-----------
run             optimize one function, writing result.json and trace.csv
sweep           repeat runs varying one parameter, writing sweep.csv
test-adaptive   Monte-Carlo calibration of the doubling membership test
sample-uniform  walk an analytic body and dump retained points as CSV
print-config    show the fully resolved configuration for given inputs

Configuration values come from defaults, then an optional flat
``key = value`` config file (``--config``), then explicit flags; the
``EPIWALK_OUT_DIR`` environment variable sets the default output
directory.  Exit codes: 0 success, 1 invalid input or error, 2 budget
truncation.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import defaults
from .adaptive import AdaptiveConfig, decide, default_confidence, error_bound
from .ballwalk import ExactMembership, WalkConfig, warm_start
from .geometry import reference_body
from .optimizer import OptimizeConfig, RunResult, optimize
from .oracle import NoiseModel, NoisyOracle, TestFunction, get_function
from .rounding import default_sample_count

TRACE_COLUMNS = ["epoch", "C_t", "cut_level", "survivors", "theta_hat",
                 "give_ups", "queries_cum", "subopt_if_known", "wall_ms"]
SWEEP_COLUMNS = ["value", "total_queries", "final_subopt", "epochs"]

# Override keys accepted in config files and --set, with validators.
_OVERRIDES = {
    "step_radius": ("positive real", lambda v: float(v) > 0, float),
    "steps_per_sample": ("nonnegative integer", lambda v: int(v) >= 0, int),
    "n_t": ("integer >= 4", lambda v: int(v) >= 4, int),
    "C": ("positive real", lambda v: float(v) > 0, float),
    "ell": ("nonnegative real", lambda v: float(v) >= 0, float),
    "delta_band": ("positive real", lambda v: float(v) > 0, float),
    "alpha": ("positive real", lambda v: float(v) > 0, float),
}


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending field."""


def _parse_config_file(path: str) -> dict:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


def _coerce_overrides(pairs: dict) -> dict:
    out = {}
    for key, value in pairs.items():
        if key not in _OVERRIDES:
            raise ConfigError(
                f"unknown override key {key!r}; valid keys: "
                + ", ".join(sorted(_OVERRIDES)))
        wants, check, conv = _OVERRIDES[key]
        try:
            ok = check(value)
        except (TypeError, ValueError):
            ok = False
        if not ok:
            raise ConfigError(f"override {key!r} must be a {wants}, "
                              f"got {value!r}")
        out[key] = conv(value)
    return out


def _build_run_inputs(args) -> tuple[TestFunction, NoiseModel, float, OptimizeConfig]:
    file_values = _parse_config_file(args.config) if args.config else {}

    def pick(flag_value, key, conv, default):
        if flag_value is not None:
            return flag_value
        if key in file_values:
            return conv(file_values[key])
        return default

    func_name = pick(args.func, "func", str, "quadratic")
    dim = pick(args.dim, "dim", int, 2)
    sigma = pick(args.sigma, "sigma", float, 0.0)
    eps = pick(args.eps, "eps", float, 0.01)
    seed = pick(args.seed, "seed", int, 0)
    budget = pick(args.budget, "query_budget", int, 100_000_000)
    noise_kind = pick(args.noise, "noise_kind", str,
                      "gaussian" if sigma > 0 else "none")

    if dim < 1:
        raise ConfigError(f"dim must be a positive integer, got {dim}")
    if sigma < 0:
        raise ConfigError(f"sigma must be nonnegative, got {sigma}")
    if not 0 < eps < 1:
        raise ConfigError(f"eps must lie in (0, 1), got {eps}")
    if seed < 0:
        raise ConfigError(f"seed must be nonnegative, got {seed}")
    if budget < 1:
        raise ConfigError(f"query_budget must be positive, got {budget}")

    overrides = {k: v for k, v in file_values.items() if k in _OVERRIDES}
    for pair in args.set or []:
        if "=" not in pair:
            raise ConfigError(f"--set expects KEY=VALUE, got {pair!r}")
        key, _, value = pair.partition("=")
        overrides[key.strip()] = value.strip()
    # Reject unknown keys from the config file too.
    unknown = set(file_values) - set(_OVERRIDES) - {
        "func", "dim", "sigma", "eps", "seed", "query_budget", "noise_kind"}
    if unknown:
        raise ConfigError(f"unknown config key {sorted(unknown)[0]!r}")
    overrides = _coerce_overrides(overrides)

    try:
        func = get_function(func_name, dim)
    except KeyError as exc:
        raise ConfigError(f"func: {exc.args[0]}") from None
    try:
        noise = NoiseModel(kind=noise_kind,
                           sigma=sigma if noise_kind != "none" else 0.0)
    except ValueError as exc:
        raise ConfigError(f"noise_kind: {exc}") from None

    cfg = OptimizeConfig(
        seed=seed, query_budget=budget,
        step_radius=overrides.get("step_radius"),
        steps_per_sample=overrides.get("steps_per_sample"),
        n_t=overrides.get("n_t"),
        confidence=overrides.get("C"),
        ell=overrides.get("ell", defaults.DEFAULT_ELL),
        delta_band=overrides.get("delta_band"),
        alpha=overrides.get("alpha"),
        workers=args.workers,
    )
    return func, noise, eps, cfg


def _result_payload(result: RunResult) -> dict:
    def clean(x):
        if isinstance(x, float) and math.isnan(x):
            return None
        return x

    trace = [{
        "epoch": s.epoch, "C_t": s.ceiling_before, "cut_level": s.cut_level,
        "survivors": s.survivors_after_cut, "theta_hat": clean(s.theta_hat),
        "give_ups": s.give_ups, "queries_cum": s.queries_cum,
        "subopt_if_known": clean(s.subopt_if_known),
        "rewarmed": s.rewarmed,
    } for s in result.trace]
    return {
        "x_hat": [float(v) for v in result.x_hat],
        "f_hat": result.f_hat,
        "total_queries": result.total_queries,
        "epochs_run": result.epochs_run,
        "converged": result.converged,
        "budget_truncated": result.budget_truncated,
        "subopt_if_known": clean(result.subopt_if_known),
        "seed": result.seed,
        "per_phase": result.per_phase,
        "config_echo": {k: clean(v) for k, v in result.config_echo.items()},
        "trace": trace,
    }


def _write_outputs(result: RunResult, out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    payload = _result_payload(result)
    (out_dir / "result.json").write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n")
    with (out_dir / "trace.csv").open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(TRACE_COLUMNS)
        for s in result.trace:
            writer.writerow([s.epoch, s.ceiling_before, s.cut_level,
                             s.survivors_after_cut, s.theta_hat, s.give_ups,
                             s.queries_cum, s.subopt_if_known, s.wall_ms])


def _out_dir(args) -> Path:
    if args.out_dir:
        return Path(args.out_dir)
    return Path(os.environ.get("EPIWALK_OUT_DIR", "."))


def cmd_run(args) -> int:
    func, noise, eps, cfg = _build_run_inputs(args)
    result = optimize(func, noise, eps, cfg)
    _write_outputs(result, _out_dir(args))
    print(f"run: f_hat={result.f_hat:.6g} total_queries={result.total_queries}"
          f" epochs={result.epochs_run} converged={result.converged}"
          f" truncated={result.budget_truncated}")
    return 2 if result.budget_truncated else 0


def cmd_sweep(args) -> int:
    if args.vary not in ("eps", "sigma", "dim", "seed"):
        raise ConfigError(f"vary must be one of eps, sigma, dim, seed; "
                          f"got {args.vary!r}")
    raw = [v for v in (args.values or "").split(",") if v.strip()]
    if not raw:
        raise ConfigError("values: empty list")
    conv = int if args.vary in ("dim", "seed") else float
    try:
        values = [conv(v) for v in raw]
    except ValueError:
        raise ConfigError(f"values: could not parse {raw!r} as {conv.__name__}")

    out_dir = _out_dir(args)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    worst = 0
    base_seed = args.seed if args.seed is not None else 0
    for index, value in enumerate(values):
        row_args = argparse.Namespace(**vars(args))
        setattr(row_args, args.vary, value)
        if args.vary != "seed":
            # Derived per-row seed, stable under reordering of values.
            row_args.seed = int(np.random.SeedSequence(
                (base_seed, index)).generate_state(1)[0])
        try:
            func, noise, eps, cfg = _build_run_inputs(row_args)
            result = optimize(func, noise, eps, cfg)
            subopt = result.subopt_if_known
            rows.append([value, result.total_queries,
                         subopt if not math.isnan(subopt) else "",
                         result.epochs_run])
            worst = max(worst, 2 if result.budget_truncated else 0)
            print(f"sweep {args.vary}={value}: queries={result.total_queries}"
                  f" subopt={subopt:.6g} epochs={result.epochs_run}")
        except (ConfigError, ValueError, RuntimeError) as exc:
            print(f"sweep {args.vary}={value}: failed: {exc}", file=sys.stderr)
            rows.append([value, "", "", ""])
            worst = 1
    with (out_dir / "sweep.csv").open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SWEEP_COLUMNS)
        writer.writerows(rows)
    return worst


def cmd_test_adaptive(args) -> int:
    if args.delta <= 0:
        raise ConfigError(f"delta must be positive, got {args.delta}")
    if args.trials < 1:
        raise ConfigError(f"trials must be positive, got {args.trials}")
    band = args.band if args.band is not None else args.delta
    cfg = AdaptiveConfig.create(sigma=args.sigma, give_up_band=band,
                                confidence=args.confidence)
    flat = TestFunction(name="flat", dim=1,
                        evaluate=lambda x: 0.0, known_min=0.0,
                        known_argmin=np.zeros(1), halfwidth=0.5, cube_max=0.0)
    oracle = NoisyOracle(flat, NoiseModel("gaussian", args.sigma), args.seed)
    rng = np.random.default_rng(args.seed)
    errors = 0
    cost = 0
    for trial in range(args.trials):
        sign = 1.0 if rng.random() < 0.5 else -1.0
        p = np.array([0.0, sign * args.delta])
        decision = decide(p, cfg, oracle.channel((1, trial)))
        cost += decision.queries_spent
        if decision.verdict.inside != (sign > 0):
            errors += 1
    rate = errors / args.trials
    bound = error_bound(args.delta, cfg)
    mean_cost = cost / args.trials
    cost_cap = 8.0 * cfg.confidence**2 * args.sigma**2 / args.delta**2
    print(f"delta={args.delta} confidence={cfg.confidence} "
          f"sigma={args.sigma} trials={args.trials}")
    print(f"empirical_error={rate:.6f} predicted_bound={bound:.6f}")
    print(f"mean_cost={mean_cost:.2f} cost_cap={cost_cap:.2f} "
          f"max_m={cfg.max_m}")
    return 0


def cmd_sample_uniform(args) -> int:
    try:
        ref = reference_body(args.body)
    except KeyError as exc:
        raise ConfigError(f"body: {exc.args[0]}") from None
    n = ref.body.dim
    wcfg = WalkConfig(
        step_radius=args.radius or defaults.default_step_radius(n),
        steps_per_sample=(args.steps if args.steps is not None
                          else defaults.default_steps_per_sample(n)),
        rng_seed=args.seed)
    membership = ExactMembership(ref.body)
    out = warm_start(ref.body, wcfg, membership, args.samples)
    header = [f"x{i}" for i in range(n)] + ["y"]
    lines = [",".join(header)]
    for p in out.points:
        lines.append(",".join(repr(float(v)) for v in p))
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.samples} samples to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_print_config(args) -> int:
    func_name = args.func or "quadratic"
    dim = args.dim if args.dim is not None else 2
    sigma = args.sigma if args.sigma is not None else 0.0
    eps = args.eps if args.eps is not None else 0.01
    confidence = default_confidence(dim, defaults.DEFAULT_ELL)
    lines = [
        f"func = {func_name}",
        f"dim = {dim}",
        f"sigma = {sigma}",
        f"eps = {eps}",
        f"seed = {args.seed if args.seed is not None else 0}",
        f"query_budget = {args.budget if args.budget is not None else 100000000}",
        f"noise_kind = {'gaussian' if sigma > 0 else 'none'}",
        f"step_radius = {defaults.default_step_radius(dim)}",
        f"steps_per_sample = {defaults.default_steps_per_sample(dim)}",
        f"n_t = {defaults.default_optimizer_samples(dim)}",
        f"C = {confidence}",
        f"ell = {defaults.DEFAULT_ELL}",
        f"delta_band = {defaults.default_give_up_band(eps, dim)}",
        f"alpha = {defaults.DEFAULT_ALPHA}",
        f"# rounding sample recommendation: {default_sample_count(dim)}",
        f"# epoch cap: {defaults.default_epoch_cap(dim, eps)}",
    ]
    print("\n".join(lines))
    return 0


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--func", type=str, default=None)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--budget", type=int, default=None,
                   help="query budget (exit 2 when exceeded)")
    p.add_argument("--noise", type=str, default=None,
                   choices=("gaussian", "uniform", "none"))
    p.add_argument("--config", type=str, default=None,
                   help="flat key = value config file")
    p.add_argument("--set", action="append", metavar="KEY=VALUE",
                   help="parameter override (repeatable)")
    p.add_argument("--workers", type=int, default=1,
                   help="threads for walk chains (same results any value)")
    p.add_argument("--out-dir", type=str, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="epiwalk",
        description="Epigraph ball-walk optimizer benchmark harness")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="single optimization run")
    _add_run_flags(p_run)
    p_run.set_defaults(handler=cmd_run)

    p_sweep = sub.add_parser("sweep", help="vary one parameter across runs")
    _add_run_flags(p_sweep)
    p_sweep.add_argument("--vary", type=str, required=True)
    p_sweep.add_argument("--values", type=str, required=True,
                         help="comma-separated list")
    p_sweep.set_defaults(handler=cmd_sweep)

    p_ta = sub.add_parser("test-adaptive",
                          help="calibrate the doubling membership test")
    p_ta.add_argument("--delta", type=float, required=True)
    p_ta.add_argument("--confidence", type=float, required=True)
    p_ta.add_argument("--sigma", type=float, default=1.0)
    p_ta.add_argument("--trials", type=int, default=10000)
    p_ta.add_argument("--band", type=float, default=None)
    p_ta.add_argument("--seed", type=int, default=0)
    p_ta.set_defaults(handler=cmd_test_adaptive)

    p_su = sub.add_parser("sample-uniform",
                          help="walk an analytic body, dump samples as CSV")
    p_su.add_argument("--body", type=str, required=True)
    p_su.add_argument("--samples", type=int, required=True)
    p_su.add_argument("--steps", type=int, default=None)
    p_su.add_argument("--radius", type=float, default=None)
    p_su.add_argument("--seed", type=int, default=0)
    p_su.add_argument("--out", type=str, default=None)
    p_su.set_defaults(handler=cmd_sample_uniform)

    p_pc = sub.add_parser("print-config", help="show resolved defaults")
    for flag, typ in (("--func", str), ("--dim", int), ("--sigma", float),
                      ("--eps", float), ("--seed", int), ("--budget", int)):
        p_pc.add_argument(flag, type=typ, default=None)
    p_pc.set_defaults(handler=cmd_print_config)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
