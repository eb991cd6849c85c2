"""Per-run report assembly and its JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from toolscan.evidence import EvidenceItem
from toolscan.flows import FlowMatch
from toolscan.sandbox import ExecRecord
from toolscan.sinks import Sink
from toolscan.sources import Source

SCHEMA_VERSION = "1"


class IntegrityError(RuntimeError):
    """A flow points at a source or sink that is not part of the report."""


@dataclass(frozen=True)
class Summary:
    source_count: int
    sink_count: int
    flow_count: int
    external_to_sink: bool

    def to_dict(self) -> dict:
        return {
            "source_count": self.source_count,
            "sink_count": self.sink_count,
            "flow_count": self.flow_count,
            "external_to_sink": self.external_to_sink,
        }


@dataclass(frozen=True)
class ScanReport:
    exec: ExecRecord
    sources: tuple[Source, ...] = ()
    sinks: tuple[Sink, ...] = ()
    flows: tuple[FlowMatch, ...] = ()
    evidence: tuple[EvidenceItem, ...] = ()
    summary: Summary = field(default_factory=lambda: Summary(0, 0, 0, False))

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "exec": self.exec.to_dict(),
            "sources": [s.to_dict() for s in self.sources],
            "sinks": [s.to_dict() for s in self.sinks],
            "flows": [f.to_dict() for f in self.flows],
            "evidence": [e.to_dict() for e in self.evidence],
            "summary": self.summary.to_dict(),
        }


def assemble_report(
    exec_record: ExecRecord,
    sources: Sequence[Source],
    sinks: Sequence[Sink],
    flows: Sequence[FlowMatch],
    evidence: Sequence[EvidenceItem],
) -> ScanReport:
    source_ids = {s.id for s in sources}
    sink_ids = {s.id for s in sinks}
    if len(source_ids) != len(sources):
        raise IntegrityError("duplicate source id")
    if len(sink_ids) != len(sinks):
        raise IntegrityError("duplicate sink id")
    for flow in flows:
        if flow.source_id not in source_ids:
            raise IntegrityError(f"flow references unknown source {flow.source_id!r}")
        if flow.sink_id not in sink_ids:
            raise IntegrityError(f"flow references unknown sink {flow.sink_id!r}")
    summary = Summary(
        source_count=len(sources),
        sink_count=len(sinks),
        flow_count=len(flows),
        external_to_sink=len(flows) > 0,
    )
    return ScanReport(exec_record, tuple(sources), tuple(sinks), tuple(flows), tuple(evidence), summary)


def serialize_report(report: ScanReport, *, mask_duration: bool = False) -> str:
    """Stable JSON text: fixed key order, two-space indent, trailing newline.

    ``mask_duration`` zeroes ``exec.duration_ms``, the only wall-clock field,
    for golden-file comparison.
    """
    data = report.to_dict()
    if mask_duration:
        data["exec"]["duration_ms"] = 0
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def report_from_dict(data: dict) -> ScanReport:
    if data.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {data.get('schema_version')!r}")
    s = data["summary"]
    return ScanReport(
        exec=ExecRecord.from_dict(data["exec"]),
        sources=tuple(Source.from_dict(d) for d in data["sources"]),
        sinks=tuple(Sink.from_dict(d) for d in data["sinks"]),
        flows=tuple(FlowMatch.from_dict(d) for d in data["flows"]),
        evidence=tuple(EvidenceItem.from_dict(d) for d in data["evidence"]),
        summary=Summary(s["source_count"], s["sink_count"], s["flow_count"], s["external_to_sink"]),
    )


def parse_report(text: str) -> ScanReport:
    return report_from_dict(json.loads(text))
