"""Command-line entry points.

``synthlab run <config.json>`` executes one experiment: exit 0 when every
assertion in the report passes, 1 on assertion failure (the report names
the failing invariant), 2 on config parse errors.

``synthlab generate <spec.json> -o cloud.csv`` materializes a generator
spec to a point cloud CSV.

``synthlab suite <dir>`` runs every ``*.json`` config in the directory
(sorted by name) and prints a TSV summary; ``SYNTHLAB_THREADS`` caps the
worker pool.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import traceback
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .errors import SynthlabError
from .experiments import load_config, run_experiment
from .generators import GeneratorSpec, generate
from .pointcloud import save_cloud_csv

EXIT_PASS = 0
EXIT_ASSERTION = 1
EXIT_PARSE = 2


def _cmd_run(args) -> int:
    try:
        config = load_config(args.config)
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        result = run_experiment(config, base_dir=Path(args.config).parent)
    except SynthlabError as exc:
        print(f"experiment failed: {exc}", file=sys.stderr)
        return EXIT_ASSERTION
    print(f"{config.kind}: {'PASS' if result.passed else 'FAIL'}: {result.detail}")
    print(f"report: {result.json_path}")
    print(f"data: {result.csv_path}")
    return EXIT_PASS if result.passed else EXIT_ASSERTION


def _cmd_generate(args) -> int:
    try:
        text = Path(args.spec).read_text()
        spec = GeneratorSpec.from_dict(json.loads(text))
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"spec error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        cloud = generate(spec)
    except SynthlabError as exc:
        print(f"generation failed: {exc}", file=sys.stderr)
        return EXIT_ASSERTION
    save_cloud_csv(cloud, args.output)
    print(f"{cloud.count} points ({spec.kind}, {spec.geometry}) -> {args.output}")
    return EXIT_PASS


def _suite_worker(path: Path):
    try:
        config = load_config(path)
    except ValueError as exc:
        return path.name, "-", "ERROR", f"config error: {exc}"
    try:
        result = run_experiment(config, base_dir=path.parent)
    except SynthlabError as exc:
        return path.name, config.kind, "ERROR", str(exc)
    except Exception as exc:  # surfaced in the summary, not swallowed
        return path.name, config.kind, "ERROR", f"{type(exc).__name__}: {exc}"
    return path.name, config.kind, "PASS" if result.passed else "FAIL", result.detail


def _cmd_suite(args) -> int:
    root = Path(args.directory)
    if not root.is_dir():
        print(f"not a directory: {root}", file=sys.stderr)
        return EXIT_PARSE
    threads_env = os.environ.get("SYNTHLAB_THREADS", "1")
    try:
        threads = int(threads_env)
        if threads < 1:
            raise ValueError
    except ValueError:
        print(f"SYNTHLAB_THREADS must be a positive integer, got {threads_env!r}", file=sys.stderr)
        return EXIT_PARSE
    configs = sorted(root.glob("*.json"))
    if not configs:
        print(f"no configs in {root}", file=sys.stderr)
        return EXIT_PARSE
    if threads == 1:
        outcomes = [_suite_worker(p) for p in configs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(_suite_worker, configs))
    outcomes.sort(key=lambda row: row[0])
    print("config\tkind\tstatus\tdetail")
    ok = True
    for name, kind, status, detail in outcomes:
        print(f"{name}\t{kind}\t{status}\t{detail}")
        ok = ok and status == "PASS"
    return EXIT_PASS if ok else EXIT_ASSERTION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="synthlab",
        description="Numerical laboratory for synthesis-type estimates",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one experiment config")
    p_run.add_argument("config", help="path to a JSON experiment config")
    p_run.set_defaults(func=_cmd_run)

    p_gen = sub.add_parser("generate", help="materialize a generator spec to CSV")
    p_gen.add_argument("spec", help="path to a JSON generator spec")
    p_gen.add_argument("-o", "--output", required=True, help="output CSV path")
    p_gen.set_defaults(func=_cmd_generate)

    p_suite = sub.add_parser("suite", help="run all configs in a directory")
    p_suite.add_argument("directory", help="directory of JSON configs")
    p_suite.set_defaults(func=_cmd_suite)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Exception:
        traceback.print_exc()
        return EXIT_ASSERTION


if __name__ == "__main__":
    sys.exit(main())
