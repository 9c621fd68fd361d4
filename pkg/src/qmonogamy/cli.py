"""Command-line interface.

Subcommands: ``measure`` a state file, ``fuzz`` a Haar ensemble, ``hunt``
for extremal discriminants, and tabulate reference ``family`` values.
The exit status is nonzero exactly when some checker reports a violation.
``QML_SEED`` provides the seed when ``--seed`` is omitted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import harness
from .inequalities import DEFAULT_TOLERANCE


def _default_seed() -> int:
    env = os.environ.get("QML_SEED", "").strip()
    return int(env) if env else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmonogamy",
        description="entanglement monogamy measures and inequality verification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    measure = sub.add_parser("measure", help="measure one state file")
    measure.add_argument("--state", required=True, help="JSON state file")
    measure.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE)
    measure.add_argument("--out", default=None)
    measure.add_argument("--format", choices=("json", "csv"), default="json")

    fuzz = sub.add_parser("fuzz", help="Haar-fuzz all checkers")
    fuzz.add_argument("--qubits", type=int, required=True)
    fuzz.add_argument("--samples", type=int, default=1000)
    fuzz.add_argument("--seed", type=int, default=None)
    fuzz.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE)
    fuzz.add_argument("--out", default=None)
    fuzz.add_argument("--format", choices=("json", "csv"), default="json")

    hunt = sub.add_parser("hunt", help="search for extremal discriminants")
    hunt.add_argument("--qubits", type=int, required=True)
    hunt.add_argument("--restarts", type=int, default=20)
    hunt.add_argument("--iters", type=int, default=2000)
    hunt.add_argument("--mode", choices=("min", "max"), default="min")
    hunt.add_argument("--seed", type=int, default=None)
    hunt.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE)
    hunt.add_argument("--start", default=None, help="start family (GHZ, W, product)")
    hunt.add_argument("--out", default=None)

    family = sub.add_parser("family", help="tabulate GHZ/W/product values")
    family.add_argument("--max-qubits", type=int, required=True)
    family.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE)
    family.add_argument("--out", default=None)
    family.add_argument("--format", choices=("json", "csv"), default="json")

    return parser


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {out_path}")
    else:
        print(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    seed = getattr(args, "seed", None)
    if seed is None:
        seed = _default_seed()

    if args.command == "measure":
        try:
            doc = harness.measure_from_file(args.state, tolerance=args.tol)
        except (ValueError, OSError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        text = harness.measure_csv(doc) if args.format == "csv" else json.dumps(
            doc, indent=2, sort_keys=True
        )
        _emit(text, args.out)
        violated = sum(1 for c in doc["checks"] if c["verdict"] == "violated")
        return 1 if violated else 0

    if args.command == "fuzz":
        config = harness.RunConfig(
            command="fuzz",
            n_qubits=args.qubits,
            samples=args.samples,
            seed=seed,
            tolerance=args.tol,
            output_path=args.out,
            output_format=args.format,
        )
        summary = harness.fuzz_campaign(config)
        text = summary.to_csv() if args.format == "csv" else summary.to_json()
        _emit(text, args.out)
        print(
            f"fuzz n={args.qubits} samples={args.samples}: "
            f"{summary.total_violations} violations "
            f"({summary.wall_time_s:.2f}s)",
            file=sys.stderr,
        )
        return 1 if summary.total_violations else 0

    if args.command == "hunt":
        config = harness.RunConfig(
            command="hunt",
            n_qubits=args.qubits,
            seed=seed,
            tolerance=args.tol,
            restarts=args.restarts,
            iterations=args.iters,
            mode=args.mode,
            start_family=args.start,
        )
        try:
            summary = harness.hunt_campaign(config)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        _emit(summary.to_json(), args.out)
        print(
            f"hunt {args.mode} n={args.qubits}: best {summary.best_value:.9f} "
            f"(floor {summary.floor}, ceiling {summary.ceiling}, "
            f"{summary.wall_time_s:.2f}s)",
            file=sys.stderr,
        )
        return 0

    if args.command == "family":
        doc = harness.family_table(args.max_qubits, tolerance=args.tol)
        text = harness.family_csv(doc) if args.format == "csv" else json.dumps(
            doc, indent=2, sort_keys=True
        )
        _emit(text, args.out)
        violated = any(
            v == "violated" for row in doc["rows"] for v in row["verdicts"].values()
        )
        return 1 if violated else 0

    return 2


if __name__ == "__main__":
    raise SystemExit(main())
