"""Command-line front end: estimate means, export circuits, dump checkpoints.

Exit codes: 0 success, 2 input error, 3 capacity error.  With ``--json`` every
report field is emitted as a flat snake_case object; two invocations with the
same inputs and seed produce identical output except for ``wall_time_s``.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from .datasets import load_dataset, load_experiment
from .encoding import Dataset, rescale
from .errors import CapacityError
from .mean_circuit import (
    STAGES,
    build_mean_circuit,
    classical_mean,
    estimate_mean,
    exact_estimate,
    exact_signed_mean,
    expected_checkpoint,
    resolve_sign,
)
from .qasm import export_qasm
from .statevector import apply_circuit_with_snapshots, new_ground_state

DEFAULT_SHOTS = 8192


def _add_dataset_args(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", metavar="PATH", help="CSV or JSON file of raw values")
    source.add_argument(
        "--experiment", type=int, choices=(1, 2), help="run a built-in experiment dataset"
    )
    parser.add_argument(
        "--format", choices=("csv", "json"), help="input file format (default: by extension)"
    )


def _load(args: argparse.Namespace) -> Dataset:
    if args.experiment is not None:
        raw = load_experiment(args.experiment)
    else:
        raw = load_dataset(args.input, args.format)
    return rescale(raw)


def _print_report(report: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report, indent=2))
        return
    for key, value in report.items():
        print(f"{key}: {value}")


def cmd_estimate(args: argparse.Namespace) -> int:
    if not args.exact and args.shots < 1:
        raise ValueError("--shots must be >= 1 in sampled mode")
    dataset = _load(args)
    started = time.perf_counter()
    if args.exact:
        est = exact_estimate(dataset)
        signed = exact_signed_mean(dataset) if args.sign else None
    else:
        est = estimate_mean(dataset, args.shots, args.seed)
        # The sign-resolution rerun uses its own derived seed.
        signed = resolve_sign(dataset, args.shots, args.seed + 1) if args.sign else None
    wall_time = time.perf_counter() - started

    report = {
        "n": dataset.size,
        "n_index": dataset.n_index,
        "scale": dataset.scale,
        "pad_count": dataset.pad_count,
        "p1": est.p1,
        "magnitude": est.magnitude,
        "signed_mean": signed,
        "classical_mean": est.classical_mean,
        "epsilon": est.epsilon,
        "shots": est.shots,
        "seed": args.seed,
        "wall_time_s": wall_time,
    }
    if dataset.pad_count:
        original = dataset.f[: dataset.size - dataset.pad_count]
        report["classical_mean_original"] = float(np.mean(original))
    report["mean_raw_units"] = (est.magnitude if signed is None else signed) * dataset.scale

    if args.qasm_out:
        _write_qasm(dataset, args.qasm_out)
    _print_report(report, args.json)
    return 0


def _write_qasm(dataset: Dataset, path: str) -> int:
    document = export_qasm(build_mean_circuit(dataset))
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(document.text)
    return document.gate_count


def cmd_export(args: argparse.Namespace) -> int:
    dataset = _load(args)
    count = _write_qasm(dataset, args.qasm_out)
    if args.json:
        print(json.dumps({"path": args.qasm_out, "gate_count": count}, indent=2))
    else:
        print(f"wrote {args.qasm_out} ({count} gates)")
    return 0


def cmd_checkpoints(args: argparse.Namespace) -> int:
    dataset = _load(args)
    circuit = build_mean_circuit(dataset)
    state = new_ground_state(circuit.layout)
    _, snapshots = apply_circuit_with_snapshots(state, circuit)
    deviations = {}
    for stage in STAGES:
        expected = expected_checkpoint(dataset, stage)
        deviations[stage] = float(np.max(np.abs(snapshots[stage].amps - expected.amps)))
    if args.json:
        print(json.dumps(deviations, indent=2))
    else:
        for stage, dev in deviations.items():
            print(f"{stage}: max deviation {dev:.3e}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmeansim",
        description="Estimate the mean of a dataset with a simulated quantum circuit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    estimate = sub.add_parser("estimate", help="run the mean-estimation pipeline")
    _add_dataset_args(estimate)
    estimate.add_argument("--shots", type=int, default=DEFAULT_SHOTS, help="shot count")
    estimate.add_argument("--seed", type=int, default=0, help="sampling seed")
    estimate.add_argument("--exact", action="store_true", help="report the ideal distribution")
    estimate.add_argument("--sign", action="store_true", help="resolve the sign of the mean")
    estimate.add_argument("--qasm-out", metavar="PATH", help="also write the circuit as QASM")
    estimate.add_argument("--json", action="store_true", help="machine-readable output")
    estimate.set_defaults(func=cmd_estimate)

    export = sub.add_parser("export", help="write the circuit as OpenQASM 2.0")
    _add_dataset_args(export)
    export.add_argument("--qasm-out", metavar="PATH", required=True, help="output file")
    export.add_argument("--json", action="store_true", help="machine-readable output")
    export.set_defaults(func=cmd_export)

    checkpoints = sub.add_parser(
        "checkpoints", help="compare simulated stage states against the analytic forms"
    )
    _add_dataset_args(checkpoints)
    checkpoints.add_argument("--json", action="store_true", help="machine-readable output")
    checkpoints.set_defaults(func=cmd_checkpoints)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
