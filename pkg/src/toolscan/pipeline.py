"""The full scan: execute, collect, extract, link, report."""

from __future__ import annotations

from toolscan.evidence import scan_evidence
from toolscan.flows import detect_flows
from toolscan.report import ScanReport, assemble_report
from toolscan.sandbox import SandboxConfig, execute
from toolscan.sinks import extract_sinks
from toolscan.sources import (
    DEFAULT_FILE_CAP,
    collect_env_sources,
    collect_file_sources,
    extract_fetch_intents,
)


def scan(config: SandboxConfig, file_cap: int = DEFAULT_FILE_CAP) -> ScanReport:
    record = execute(config)
    sources = collect_env_sources(config.env)
    if config.mount is not None:
        files, _ = collect_file_sources(config.mount, file_cap)
        sources += files
    sources += extract_fetch_intents(record)
    sinks = extract_sinks(record.stdout)
    flows = detect_flows(sources, sinks)
    return assemble_report(record, sources, sinks, flows, scan_evidence(record))
