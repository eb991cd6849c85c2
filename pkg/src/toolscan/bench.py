"""Tool-return micro-benchmark: how substring linking fares under transformations."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path

from toolscan.fixtures import SECRET_TOKEN, fixture_path
from toolscan.pipeline import scan
from toolscan.report import ScanReport
from toolscan.sandbox import SandboxConfig

COLLISION_TOKEN = "data"
TOKEN_SOURCE_ID = "env:TOKEN"


class Outcome(str, enum.Enum):
    FLOW = "Flow"
    NO_FLOW = "NoFlow"


@dataclass(frozen=True)
class BenchExpectation:
    mode: str
    expected_flow: Outcome
    note: str


EXPECTATIONS = (
    BenchExpectation("plain", Outcome.FLOW, "token appears verbatim in a tool-return leaf"),
    BenchExpectation("split", Outcome.FLOW, "partial leakage: token halves in two leaves"),
    BenchExpectation("base64", Outcome.NO_FLOW, "false negative: encoded token"),
    BenchExpectation("truncate", Outcome.NO_FLOW, "false negative: 3-character prefix only"),
    BenchExpectation("meta_path", Outcome.NO_FLOW, "token under $.status, filtered as metadata"),
    BenchExpectation("short_collision", Outcome.FLOW, "false positive: 4-char token in benign text"),
    BenchExpectation("long_noise", Outcome.NO_FLOW, "long unrelated leaf"),
    BenchExpectation("no_env", Outcome.NO_FLOW, "TOKEN not provided"),
)


@dataclass(frozen=True)
class BenchRow:
    mode: str
    expected: Outcome
    observed: Outcome
    report: ScanReport

    @property
    def passed(self) -> bool:
        return self.expected is self.observed


def bench_env(mode: str) -> tuple[tuple[str, str], ...]:
    if mode == "no_env":
        return (("MODE", mode),)
    token = COLLISION_TOKEN if mode == "short_collision" else SECRET_TOKEN
    return (("MODE", mode), ("TOKEN", token))


def observe(report: ScanReport) -> Outcome:
    """Flow when the TOKEN source reaches any sink."""
    if any(f.source_id == TOKEN_SOURCE_ID for f in report.flows):
        return Outcome.FLOW
    return Outcome.NO_FLOW


def run_bench(module: Path | None = None) -> list[BenchRow]:
    module = Path(module) if module is not None else fixture_path("microbench")
    rows = []
    for exp in EXPECTATIONS:
        report = scan(SandboxConfig(module, env=bench_env(exp.mode)))
        rows.append(BenchRow(exp.mode, exp.expected_flow, observe(report), report))
    return rows


def format_table(rows: list[BenchRow]) -> str:
    lines = [f"{'mode':<16} {'expected':<9} {'observed':<9} result"]
    for row in rows:
        verdict = "pass" if row.passed else "FAIL"
        lines.append(f"{row.mode:<16} {row.expected.value:<9} {row.observed.value:<9} {verdict}")
    return "\n".join(lines)
