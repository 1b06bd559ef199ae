"""Command-line front end.

Four subcommands:

* ``transform``: apply a configured coordinate map to an events CSV and
  emit original plus transformed coordinates with interval values.
* ``interfere``: sweep the interferometer phase and emit the fringe table.
* ``nogo``: brute-force contrast between classical mixtures and the
  amplitude rule over a weight/phase grid.
* ``check``: run the registered invariant checks and report pass/fail
  lines with a machine-readable JSON report; exit code 0 only if all pass.

All numeric output is printed with 17 significant digits and every run is
a pure function of its flags (fixed seed, no timestamps), so identical
invocations produce byte-identical files.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass

import numpy as np

from .checks import (
    CheckContext,
    NoMatchingChecksError,
    run_checks,
)
from .constants import (
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    REL_TOL_ALGEBRA,
    REL_TOL_SAMPLED,
)
from .interference import (
    ConfigError,
    ExperimentConfig,
    no_go_search,
    phase_sweep,
    uniform_phase_grid,
    visibility,
)
from .kinematics import KinematicsError, event_interval
from .schemas import (
    SchemaError,
    dump_json,
    experiment_config_from_dict,
    format_float,
    frame_map_from_dict,
    load_json,
    parse_events_csv,
)

_CONVENTION_NOTE = ("symmetric splitters: transmission sqrt(T), reflection "
                    "i*sqrt(1-T); upper arm transmitted at splitter 1 and "
                    "carries the phase; D0 bright at phi=0")


@dataclass(frozen=True)
class RunManifest:
    """Everything a command run depends on; equal manifests, equal bytes."""

    command: str
    config_path: str | None = None
    events_path: str | None = None
    out_path: str | None = None
    seed: int = DEFAULT_SEED
    trials: int = DEFAULT_TRIALS
    resolution: int = 101
    suite: str = "all"
    phis: tuple[float, ...] | None = None
    tol_algebra: float = REL_TOL_ALGEBRA
    tol_sampled: float = REL_TOL_SAMPLED


def _parse_seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}")
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _parse_positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError("value must be positive")
    return value


def _parse_tolerance(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not (math.isfinite(value) and value > 0.0):
        raise argparse.ArgumentTypeError("tolerance must be positive and finite")
    return value


def _parse_phis(text: str) -> tuple[float, ...]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            f"phase grid must look like start:stop:steps, got {text!r}")
    try:
        start, stop = float(parts[0]), float(parts[1])
        steps = int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"phase grid must be number:number:integer, got {text!r}")
    if not (math.isfinite(start) and math.isfinite(stop)):
        raise argparse.ArgumentTypeError("phase endpoints must be finite")
    if steps < 1:
        raise argparse.ArgumentTypeError("phase grid needs at least one step")
    if steps == 1:
        return (start,)
    return tuple(float(v) for v in np.linspace(start, stop, steps))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fringelab",
        description=("verification bench for extended 1+1 boosts, the "
                     "Mach-Zehnder benchmark, and the planar amplitude "
                     "calculus"))
    sub = parser.add_subparsers(dest="command", required=True)

    p_transform = sub.add_parser(
        "transform", help="apply a coordinate map to an events CSV")
    p_transform.add_argument("--events", required=True,
                             help="input events CSV with header t,x")
    p_transform.add_argument("--config", required=True,
                             help="map spec JSON (branch, V, eta, ...)")
    p_transform.add_argument("--out", help="output CSV path (default stdout)")

    p_interfere = sub.add_parser(
        "interfere", help="phase-sweep the interferometer and emit a fringe table")
    p_interfere.add_argument("--config",
                             help="experiment JSON (default: ideal 50/50 bench)")
    p_interfere.add_argument("--phis", type=_parse_phis,
                             help="sweep grid start:stop:steps "
                                  "(default 0:2pi:65, endpoints included)")
    p_interfere.add_argument("--out", help="output CSV path (default stdout)")

    p_nogo = sub.add_parser(
        "nogo", help="grid-search classical mixtures for any phase sensitivity")
    p_nogo.add_argument("--resolution", type=_parse_positive, default=101,
                        help="path-weight grid resolution (default 101)")
    p_nogo.add_argument("--phis", type=_parse_phis,
                        help="phase grid start:stop:steps "
                             "(default: 32 evenly spaced phases over one period)")
    p_nogo.add_argument("--out", help="write the JSON report here")

    p_check = sub.add_parser(
        "check", help="run registered invariant checks and report pass/fail")
    p_check.add_argument("--suite", default="all",
                         help="substring selector on check id or label "
                              "(default: all)")
    p_check.add_argument("--seed", type=_parse_seed, default=DEFAULT_SEED,
                         help=f"u64 seed for randomized trials "
                              f"(default {DEFAULT_SEED})")
    p_check.add_argument("--trials", type=_parse_positive,
                         default=DEFAULT_TRIALS,
                         help=f"randomized trials per check "
                              f"(default {DEFAULT_TRIALS})")
    p_check.add_argument("--resolution", type=_parse_positive, default=101,
                         help="weight grid resolution for the no-go check "
                              "(default 101)")
    p_check.add_argument("--tol-algebra", type=_parse_tolerance,
                         default=REL_TOL_ALGEBRA,
                         help="relative tolerance for closed-form identities")
    p_check.add_argument("--tol-sampled", type=_parse_tolerance,
                         default=REL_TOL_SAMPLED,
                         help="relative tolerance for sampled geometry")
    p_check.add_argument("--out", help="write the JSON report here "
                                       "(default: print it after the text)")
    return parser


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_transform(manifest: RunManifest) -> int:
    with open(manifest.events_path, "r", encoding="utf-8") as fh:
        events = parse_events_csv(fh.read())
    with open(manifest.config_path, "r", encoding="utf-8") as fh:
        m = frame_map_from_dict(load_json(fh.read()))
    if m.spatial_dim != 1:
        raise SchemaError("transform expects a 1+1 map for t,x events")
    lines = ["# map: " + m.branch.value
             + (f" V={format_float(m.V)}" if m.V is not None else "")
             + (f" eta={m.eta:+d}" if m.eta is not None else "")
             + f" c={format_float(m.c)}",
             "t,x,t_out,x_out,interval_in,interval_out"]
    for p in events:
        q = m.apply(p)
        lines.append(",".join(format_float(v) for v in (
            p.t, p.x[0], q.t, q.x[0],
            event_interval(p, m.c), event_interval(q, m.c))))
    _write_text(manifest.out_path, "\n".join(lines) + "\n")
    return 0


def _load_experiment(path: str | None) -> ExperimentConfig:
    if path is None:
        return ExperimentConfig()
    with open(path, "r", encoding="utf-8") as fh:
        return experiment_config_from_dict(load_json(fh.read()))


def _format_conditional(value: float | None) -> str:
    return "nan" if value is None else format_float(value)


def cmd_interfere(manifest: RunManifest) -> int:
    config = _load_experiment(manifest.config_path)
    phis = manifest.phis
    if phis is None:
        phis = tuple(float(v) for v in np.linspace(0.0, 2.0 * math.pi, 65))
    sweep = phase_sweep(config, phis)
    vis = visibility(sweep)
    lines = [f"# {_CONVENTION_NOTE}",
             f"# visibility = {format_float(vis)}",
             "phi,p_d0,p_d1,p_absorbed,p_d0_given_detected,p_d1_given_detected"]
    for phi, d in sweep:
        lines.append(",".join([
            format_float(phi), format_float(d.p_d0), format_float(d.p_d1),
            format_float(d.p_absorbed),
            _format_conditional(d.p_d0_given_detected),
            _format_conditional(d.p_d1_given_detected)]))
    _write_text(manifest.out_path, "\n".join(lines) + "\n")
    if manifest.out_path is not None:
        print(f"visibility = {format_float(vis)}")
    return 0


def cmd_nogo(manifest: RunManifest) -> int:
    phis = manifest.phis if manifest.phis is not None else uniform_phase_grid(32)
    report = no_go_search(phis, manifest.resolution)
    print(f"classical configurations enumerated: {report.classical_config_count}")
    print(f"phases: {report.phase_count}, weight resolution: {report.resolution}")
    print(f"max classical variation: "
          f"{format_float(report.max_classical_variation)}")
    print(f"amplitude visibility: {format_float(report.amplitude_visibility)}")
    print(f"no-go contrast: {'PASS' if report.passed else 'FAIL'}")
    if manifest.out_path is not None:
        _write_text(manifest.out_path, dump_json(report.as_dict()))
    return 0 if report.passed else 1


def cmd_check(manifest: RunManifest) -> int:
    ctx = CheckContext(seed=manifest.seed, trials=manifest.trials,
                       resolution=manifest.resolution,
                       tol_algebra=manifest.tol_algebra,
                       tol_sampled=manifest.tol_sampled)
    results = run_checks(ctx, manifest.suite)
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        print(f"{mark}  {r.id}  [{r.paper_ref}]  {r.detail}")
    passed = sum(1 for r in results if r.passed)
    print(f"{passed}/{len(results)} checks passed "
          f"(suite: {manifest.suite}, seed: {manifest.seed})")
    report = {"suite": manifest.suite,
              "checks": [r.as_dict() for r in results]}
    text = dump_json(report)
    if manifest.out_path is not None:
        _write_text(manifest.out_path, text)
    else:
        sys.stdout.write(text)
    return 0 if passed == len(results) else 1


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    manifest = RunManifest(
        command=args.command,
        config_path=getattr(args, "config", None),
        events_path=getattr(args, "events", None),
        out_path=getattr(args, "out", None),
        seed=getattr(args, "seed", DEFAULT_SEED),
        trials=getattr(args, "trials", DEFAULT_TRIALS),
        resolution=getattr(args, "resolution", 101),
        suite=getattr(args, "suite", "all"),
        phis=getattr(args, "phis", None),
        tol_algebra=getattr(args, "tol_algebra", REL_TOL_ALGEBRA),
        tol_sampled=getattr(args, "tol_sampled", REL_TOL_SAMPLED),
    )
    commands = {"transform": cmd_transform, "interfere": cmd_interfere,
                "nogo": cmd_nogo, "check": cmd_check}
    try:
        return commands[manifest.command](manifest)
    except (SchemaError, ConfigError, KinematicsError,
            NoMatchingChecksError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
