"""Command line front end.

Three subcommands:

* ``verify``      run the randomized verification suites and report them.
* ``gain``        one Monte Carlo gain experiment, emitted as CSV.
* ``delta-sweep`` paired experiments over a (L, N) grid, emitted as CSV.

Configuration can come from a TOML file (``--config``); any flag given on
the command line overrides the file.  Unknown keys or sections in the
file are rejected.  The ``MULTIRIS_WORKERS`` environment variable selects
the number of worker processes; results are bit-identical for any value,
so it only affects wall time.  Exit codes: 0 success, 1 a verification or
numeric invariant failed, 2 usage or configuration error.

CSV output carries '#' comment headers (version, effective seed, run
parameters, never a timestamp), one header row, and data rows with
integer columns plain and float columns in scientific notation with 17
significant digits, enough to round-trip doubles exactly.
"""
from __future__ import annotations

import argparse
import os
import sys
import time

try:
    import tomllib
except ModuleNotFoundError:  # pragma: no cover - python < 3.11
    import tomli as tomllib

from . import __version__
from .montecarlo import ExperimentSpec, run_gain_experiment, sweep
from .network import SystemTopology
from .numerics import IllConditionedError
from .verify import MUTATIONS, run_verification

SWEEP_COLUMNS = (
    "L,N_I,trials,mean_physics,se_physics,theory_physics,"
    "gain_conventional,delta_empirical,delta_theory"
)
GAIN_COLUMNS = "model,trials,mean_gain,std_error,theory_gain,relative_deviation"

_ALLOWED_CONFIG = {
    "topology": {"L", "N_I", "Z0"},
    "experiment": {"model", "trials", "seed", "path_gains"},
    "sweep": {"L_list", "N_I_list"},
    "verify": {"seed", "instances", "mutate"},
    "output": {"path"},
}

_MASK64 = (1 << 64) - 1


class UsageError(Exception):
    """Bad flags or configuration; maps to exit code 2."""


def _fmt(value: float) -> str:
    # 1 leading digit + 16 decimals = 17 significant digits, lowercase e
    return format(float(value), ".16e")


def _load_config(path: str) -> dict:
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise UsageError(f"invalid TOML in {path}: {exc}") from exc
    for section, content in data.items():
        if section not in _ALLOWED_CONFIG:
            raise UsageError(
                f"unknown config section [{section}]; "
                f"allowed: {sorted(_ALLOWED_CONFIG)}"
            )
        if not isinstance(content, dict):
            raise UsageError(f"config section [{section}] must be a table")
        for key in content:
            if key not in _ALLOWED_CONFIG[section]:
                raise UsageError(
                    f"unknown config key '{key}' in [{section}]; "
                    f"allowed: {sorted(_ALLOWED_CONFIG[section])}"
                )
    return data


def _pick(args_value, config: dict, section: str, key: str, default=None):
    """Flag wins over config file wins over default."""
    if args_value is not None:
        return args_value
    return config.get(section, {}).get(key, default)


def _require(value, what: str):
    if value is None:
        raise UsageError(f"{what} is required (flag or config file)")
    return value


def _parse_int_list(text) -> list:
    if isinstance(text, str):
        items = [part.strip() for part in text.split(",") if part.strip()]
        try:
            return [int(part) for part in items]
        except ValueError as exc:
            raise UsageError(f"expected a comma-separated integer list, got {text!r}") from exc
    return [int(v) for v in text]


def _parse_float_list(text) -> list:
    if isinstance(text, str):
        items = [part.strip() for part in text.split(",") if part.strip()]
        try:
            return [float(part) for part in items]
        except ValueError as exc:
            raise UsageError(f"expected a comma-separated float list, got {text!r}") from exc
    return [float(v) for v in text]


def _workers_from_env():
    raw = os.environ.get("MULTIRIS_WORKERS")
    if raw is None:
        return None
    try:
        workers = int(raw)
    except ValueError as exc:
        raise UsageError(f"MULTIRIS_WORKERS must be an integer, got {raw!r}") from exc
    if workers < 1:
        raise UsageError(f"MULTIRIS_WORKERS must be >= 1, got {workers}")
    return workers


def _emit(text: str, out_path):
    if out_path is None:
        sys.stdout.write(text)
        return
    try:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write output file: {exc}") from exc


def _time_seed() -> int:
    return time.time_ns() & _MASK64


def cmd_verify(args) -> int:
    config = _load_config(args.config) if args.config else {}
    seed = int(_pick(args.seed, config, "verify", "seed", 0))
    instances = int(_pick(args.instances, config, "verify", "instances", 100))
    mutate = _pick(args.mutate, config, "verify", "mutate")
    if instances < 1:
        raise UsageError(f"--instances must be >= 1, got {instances}")
    if mutate is not None and mutate not in MUTATIONS:
        raise UsageError(
            f"unknown mutation {mutate!r}; available: {sorted(MUTATIONS)}"
        )
    reports = run_verification(seed=seed, instances=instances, mutate=mutate)
    for report in reports:
        print(report.line())
    failed = [report.name for report in reports if not report.passed]
    if failed:
        print("verification FAILED: " + ", ".join(failed))
        return 1
    print("all verification suites passed")
    return 0


def _experiment_from(args, config, need_seed: bool):
    num_ris = _require(_pick(args.L, config, "topology", "L"), "--L")
    elements = _require(_pick(args.NI, config, "topology", "N_I"), "--NI")
    z0 = float(_pick(args.Z0, config, "topology", "Z0", 50.0))
    trials = _require(_pick(args.trials, config, "experiment", "trials"), "--trials")
    gains_raw = _pick(args.path_gains, config, "experiment", "path_gains")
    path_gains = None if gains_raw is None else _parse_float_list(gains_raw)
    if path_gains is not None and len(path_gains) == 1:
        path_gains = path_gains[0]
    seed = _pick(args.seed, config, "experiment", "seed")
    if seed is None:
        if need_seed:
            raise UsageError(
                "delta-sweep requires an explicit seed (--seed or [experiment].seed)"
            )
        seed = _time_seed()
    try:
        topology = SystemTopology(int(num_ris), int(elements), z0)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return topology, int(trials), int(seed), path_gains


def cmd_gain(args) -> int:
    config = _load_config(args.config) if args.config else {}
    topology, trials, seed, path_gains = _experiment_from(args, config, need_seed=False)
    model = _require(_pick(args.model, config, "experiment", "model"), "--model")
    out_path = _pick(args.out, config, "output", "path")
    workers = _workers_from_env()
    try:
        spec = ExperimentSpec(
            topology=topology,
            model=model,
            trials=trials,
            master_seed=seed,
            path_gains=path_gains,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    stats = run_gain_experiment(spec, workers=workers)
    gains_text = "default" if path_gains is None else repr(path_gains)
    lines = [
        "# multiris gain",
        f"# version={__version__}",
        f"# L={topology.num_ris} N_I={topology.elements_per_ris} "
        f"Z0={topology.z0:g} model={model} trials={trials} path_gains={gains_text}",
        f"# master_seed={seed}",
        GAIN_COLUMNS,
    ]
    for name in ("physics", "conventional"):
        if name not in stats:
            continue
        arm = stats[name]
        lines.append(
            f"{name},{arm.trials},{_fmt(arm.mean_gain)},{_fmt(arm.std_error)},"
            f"{_fmt(arm.theory_gain)},{_fmt(arm.relative_deviation)}"
        )
    _emit("\n".join(lines) + "\n", out_path)
    return 0


def cmd_delta_sweep(args) -> int:
    config = _load_config(args.config) if args.config else {}
    ris_counts = _parse_int_list(
        _require(_pick(args.L_list, config, "sweep", "L_list"), "--L-list")
    )
    element_counts = _parse_int_list(
        _require(_pick(args.NI_list, config, "sweep", "N_I_list"), "--NI-list")
    )
    trials = int(_require(_pick(args.trials, config, "experiment", "trials"), "--trials"))
    seed = _pick(args.seed, config, "experiment", "seed")
    if seed is None:
        raise UsageError(
            "delta-sweep requires an explicit seed (--seed or [experiment].seed)"
        )
    gains_raw = _pick(args.path_gains, config, "experiment", "path_gains")
    path_gains = None if gains_raw is None else _parse_float_list(gains_raw)
    if path_gains is not None and len(path_gains) == 1:
        path_gains = path_gains[0]
    out_path = _pick(args.out, config, "output", "path")
    workers = _workers_from_env()
    try:
        rows = sweep(
            ris_counts,
            element_counts,
            trials,
            int(seed),
            path_gains=path_gains,
            workers=workers,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    lines = [
        "# multiris delta-sweep",
        f"# version={__version__}",
        f"# master_seed={int(seed)}",
        f"# trials={trials}",
        "# pairing=paired-per-trial-scenarios",
        SWEEP_COLUMNS,
    ]
    for row in rows:
        lines.append(
            f"{row.L},{row.N_I},{row.trials},{_fmt(row.mean_physics)},"
            f"{_fmt(row.se_physics)},{_fmt(row.theory_physics)},"
            f"{_fmt(row.gain_conventional)},{_fmt(row.delta_empirical)},"
            f"{_fmt(row.delta_theory)}"
        )
    _emit("\n".join(lines) + "\n", out_path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multiris",
        description="Channel models, phase optimization, and scaling-law "
        "experiments for cascades of reconfigurable surfaces.",
    )
    parser.add_argument("--version", action="version", version=f"multiris {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser(
        "verify", help="run the randomized verification suites"
    )
    p_verify.add_argument("--config", help="TOML configuration file")
    p_verify.add_argument("--seed", type=int, help="suite seed (default 0)")
    p_verify.add_argument(
        "--instances", type=int, help="instances per suite (default 100)"
    )
    p_verify.add_argument(
        "--mutate",
        choices=sorted(MUTATIONS),
        help="implant a named defect to demonstrate failure detection",
    )
    p_verify.set_defaults(func=cmd_verify)

    p_gain = sub.add_parser("gain", help="Monte Carlo gain experiment, CSV output")
    p_gain.add_argument("--config", help="TOML configuration file")
    p_gain.add_argument("--L", type=int, help="number of surfaces")
    p_gain.add_argument("--NI", type=int, help="elements per surface")
    p_gain.add_argument("--Z0", type=float, help="reference impedance (default 50)")
    p_gain.add_argument(
        "--model", choices=("physics", "conventional", "both"), help="channel model"
    )
    p_gain.add_argument("--trials", type=int, help="number of scenarios")
    p_gain.add_argument(
        "--seed", type=int, help="master seed (default: derived from the clock)"
    )
    p_gain.add_argument(
        "--path-gains",
        dest="path_gains",
        help="comma-separated per-link gains (or one scalar for all links)",
    )
    p_gain.add_argument("--out", help="output CSV path (default: stdout)")
    p_gain.set_defaults(func=cmd_gain)

    p_sweep = sub.add_parser(
        "delta-sweep", help="paired experiments over a (L, N) grid, CSV output"
    )
    p_sweep.add_argument("--config", help="TOML configuration file")
    p_sweep.add_argument(
        "--L-list", dest="L_list", help="comma-separated surface counts"
    )
    p_sweep.add_argument(
        "--NI-list", dest="NI_list", help="comma-separated element counts"
    )
    p_sweep.add_argument("--trials", type=int, help="trials per grid cell")
    p_sweep.add_argument("--seed", type=int, help="master seed (required)")
    p_sweep.add_argument(
        "--path-gains",
        dest="path_gains",
        help="comma-separated per-link gains (or one scalar for all links)",
    )
    p_sweep.add_argument("--out", help="output CSV path (default: stdout)")
    p_sweep.set_defaults(func=cmd_delta_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except IllConditionedError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
