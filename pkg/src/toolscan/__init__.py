"""Sandboxed dynamic scanner for WebAssembly/WASI agent tools.

Runs a tool module under least-privilege WASI capabilities, extracts
LLM-facing sinks from what it prints, and links external inputs (env
values, mounted files, fetch intents) to those sinks with substring
evidence.
"""

from toolscan.evidence import EvidenceItem, EvidenceKind, Stream, scan_evidence
from toolscan.flows import (
    Confidence,
    FlowMatch,
    Snippet,
    SnippetOrigin,
    classify_confidence,
    detect_flows,
    generate_snippets,
)
from toolscan.pipeline import scan
from toolscan.report import (
    IntegrityError,
    ScanReport,
    Summary,
    assemble_report,
    report_from_dict,
    serialize_report,
)
from toolscan.sandbox import ExecRecord, SandboxConfig, Termination, execute
from toolscan.sinks import Sink, SinkKind, extract_json_string_leaves, extract_sinks
from toolscan.sources import (
    Source,
    SourceKind,
    collect_env_sources,
    collect_file_sources,
    extract_fetch_intents,
)

__all__ = [
    "Confidence",
    "EvidenceItem",
    "EvidenceKind",
    "ExecRecord",
    "FlowMatch",
    "IntegrityError",
    "SandboxConfig",
    "ScanReport",
    "Sink",
    "SinkKind",
    "Snippet",
    "SnippetOrigin",
    "Source",
    "SourceKind",
    "Stream",
    "Summary",
    "Termination",
    "assemble_report",
    "classify_confidence",
    "collect_env_sources",
    "collect_file_sources",
    "detect_flows",
    "execute",
    "extract_fetch_intents",
    "extract_json_string_leaves",
    "extract_sinks",
    "generate_snippets",
    "report_from_dict",
    "scan",
    "scan_evidence",
    "serialize_report",
]
