"""Command-line entry point.

Exit status for ``scan``: 0 when no external-to-sink flow was found, 2 when
one was, 1 on scanner errors. A tool that traps or times out still counts as
a completed scan. ``baseline`` exits 2 when any signature is found.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from toolscan import bench, fixtures
from toolscan.baseline import DEFAULT_MIN_LEN, match_signatures, scan_binary_strings
from toolscan.pipeline import scan
from toolscan.report import ScanReport, serialize_report
from toolscan.sandbox import (
    DEFAULT_STDERR_BUDGET,
    DEFAULT_STDOUT_BUDGET,
    DEFAULT_TIMEOUT_MS,
    SandboxConfig,
)
from toolscan.sources import DEFAULT_FILE_CAP

EXIT_CLEAN = 0
EXIT_ERROR = 1
EXIT_FLAGGED = 2

log = logging.getLogger("toolscan")


def _env_pair(text: str) -> tuple[str, str]:
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected KEY=VALUE, got {text!r}")
    return key, value


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toolscan", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", help="run a module in the sandbox and report source-to-sink flows")
    p.add_argument("module", type=Path, help="a .wasm file, or a directory of them for batch mode")
    p.add_argument("--env", action="append", type=_env_pair, default=[], metavar="KEY=VALUE")
    p.add_argument("--arg", action="append", default=[], dest="args", help="guest argument")
    p.add_argument("--mount", type=Path, help="host directory exposed to the guest as /data")
    p.add_argument("--out", type=Path, help="report file (batch mode: output directory)")
    p.add_argument("--stdout-budget", type=_positive, default=DEFAULT_STDOUT_BUDGET)
    p.add_argument("--stderr-budget", type=_positive, default=DEFAULT_STDERR_BUDGET)
    p.add_argument("--timeout-ms", type=_positive, default=DEFAULT_TIMEOUT_MS)
    p.add_argument("--file-cap", type=_positive, default=DEFAULT_FILE_CAP)
    p.add_argument("--jobs", type=_positive, default=1, help="parallel scans in batch mode")
    p.add_argument("--mask-duration", action="store_true", help="write duration_ms as 0")

    p = sub.add_parser("baseline", help="static string-signature scan of a module binary")
    p.add_argument("module", type=Path)
    p.add_argument("--signature", action="append", default=[], required=True)
    p.add_argument("--min-len", type=int, default=DEFAULT_MIN_LEN)

    p = sub.add_parser("bench", help="run the tool-return micro-benchmark")
    p.add_argument("--module", type=Path, help="microbench module (default: bundled fixture)")

    p = sub.add_parser("build-fixtures", help="compile the fixture corpus with clang")
    p.add_argument("--out", type=Path, help="output directory (default: package cache)")
    return parser


def _config(args: argparse.Namespace, module: Path) -> SandboxConfig:
    return SandboxConfig(
        module_path=module,
        env=tuple(args.env),
        mount=args.mount,
        stdout_budget_bytes=args.stdout_budget,
        stderr_budget_bytes=args.stderr_budget,
        wall_timeout_ms=args.timeout_ms,
        args=tuple(args.args),
    )


def _verdict(report: ScanReport) -> int:
    return EXIT_FLAGGED if report.summary.external_to_sink else EXIT_CLEAN


def cmd_scan(args: argparse.Namespace) -> int:
    if args.module.is_dir():
        return _scan_batch(args)
    if not args.module.is_file():
        print(f"toolscan: module not found: {args.module}", file=sys.stderr)
        return EXIT_ERROR
    report = scan(_config(args, args.module), args.file_cap)
    text = serialize_report(report, mask_duration=args.mask_duration)
    if args.out:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return _verdict(report)


def _scan_batch(args: argparse.Namespace) -> int:
    if args.out is None:
        print("toolscan: batch mode needs --out DIR", file=sys.stderr)
        return EXIT_ERROR
    modules = sorted(args.module.glob("*.wasm"))
    args.out.mkdir(parents=True, exist_ok=True)

    def one(module: Path) -> int:
        try:
            report = scan(_config(args, module), args.file_cap)
        except Exception:
            log.exception("scan of %s failed", module)
            return EXIT_ERROR
        target = args.out / f"{module.stem}.json"
        target.write_text(serialize_report(report, mask_duration=args.mask_duration), encoding="utf-8")
        print(f"{module.name}: {report.summary.flow_count} flow(s) -> {target}", file=sys.stderr)
        return _verdict(report)

    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        statuses = list(pool.map(one, modules))
    if EXIT_ERROR in statuses:
        return EXIT_ERROR
    return EXIT_FLAGGED if EXIT_FLAGGED in statuses else EXIT_CLEAN


def cmd_baseline(args: argparse.Namespace) -> int:
    if not args.module.is_file():
        print(f"toolscan: module not found: {args.module}", file=sys.stderr)
        return EXIT_ERROR
    strings = scan_binary_strings(args.module.read_bytes(), args.min_len)
    results = match_signatures(strings, args.signature)
    print(json.dumps([r.to_dict() for r in results], indent=2))
    return EXIT_FLAGGED if any(r.found for r in results) else EXIT_CLEAN


def cmd_bench(args: argparse.Namespace) -> int:
    try:
        rows = bench.run_bench(args.module)
    except FileNotFoundError as exc:
        print(f"toolscan: {exc}", file=sys.stderr)
        return EXIT_ERROR
    print(bench.format_table(rows))
    return EXIT_CLEAN if all(row.passed for row in rows) else EXIT_FLAGGED


def cmd_build_fixtures(args: argparse.Namespace) -> int:
    if not fixtures.compiler_available():
        print("toolscan: clang and wasm-ld are required to build fixtures", file=sys.stderr)
        return EXIT_ERROR
    for path in fixtures.build_all(args.out):
        print(path)
    return EXIT_CLEAN


COMMANDS = {
    "scan": cmd_scan,
    "baseline": cmd_baseline,
    "bench": cmd_bench,
    "build-fixtures": cmd_build_fixtures,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return COMMANDS[args.command](args)
    except (OSError, ValueError) as exc:
        print(f"toolscan: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
