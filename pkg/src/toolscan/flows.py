"""Source-to-sink linking by substring evidence."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from toolscan.sinks import Sink, SinkKind
from toolscan.sources import Source

MIN_SNIPPET_LENGTH = 4
PREFIX_LENGTHS = (8, 16)
MID_WINDOW_THRESHOLD = 48
MID_WINDOW_LENGTH = 24


class SnippetOrigin(str, enum.Enum):
    FULL = "Full"
    PREFIX = "Prefix"
    MID_WINDOW = "MidWindow"


class Confidence(str, enum.Enum):
    HIGH = "High"
    LOW = "Low"


@dataclass(frozen=True)
class Snippet:
    text: str
    origin: SnippetOrigin


@dataclass(frozen=True)
class FlowMatch:
    source_id: str
    sink_id: str
    sink_kind: SinkKind
    matched_snippet: str
    confidence: Confidence

    def to_dict(self) -> dict:
        return {
            "source_id": self.source_id,
            "sink_id": self.sink_id,
            "sink_type": self.sink_kind.value,
            "matched_snippet": self.matched_snippet,
            "confidence": self.confidence.value,
        }

    @classmethod
    def from_dict(cls, data: dict) -> FlowMatch:
        return cls(
            data["source_id"],
            data["sink_id"],
            SinkKind(data["sink_type"]),
            data["matched_snippet"],
            Confidence(data["confidence"]),
        )


def generate_snippets(source_value: str) -> list[Snippet]:
    """Candidate evidence strings for one source, strongest first.

    The whole trimmed value when it has at least 4 characters, the 8- and
    16-character prefixes when the value is longer than those, and a
    24-character window around the middle for values over 48 characters.
    Lengths count characters, not bytes.
    """
    s = source_value.strip()
    n = len(s)
    candidates: list[Snippet] = []
    if n >= MIN_SNIPPET_LENGTH:
        candidates.append(Snippet(s, SnippetOrigin.FULL))
    for length in PREFIX_LENGTHS:
        if n > length:
            candidates.append(Snippet(s[:length], SnippetOrigin.PREFIX))
    if n > MID_WINDOW_THRESHOLD:
        start = (n - MID_WINDOW_LENGTH) // 2
        candidates.append(Snippet(s[start : start + MID_WINDOW_LENGTH], SnippetOrigin.MID_WINDOW))

    snippets: list[Snippet] = []
    seen: set[str] = set()
    for snippet in candidates:
        if snippet.text and snippet.text not in seen:
            seen.add(snippet.text)
            snippets.append(snippet)
    return snippets


def classify_confidence(snippet: Snippet, source_value: str) -> Confidence:
    """High for the full value or the mid-string window, Low for prefixes."""
    if snippet.origin is SnippetOrigin.PREFIX and snippet.text != source_value.strip():
        return Confidence.LOW
    return Confidence.HIGH


def detect_flows(sources: Sequence[Source], sinks: Sequence[Sink]) -> list[FlowMatch]:
    """At most one FlowMatch per (source, sink): the first snippet that hits."""
    flows = []
    for source in sources:
        snippets = [s for s in generate_snippets(source.value) if len(s.text) >= MIN_SNIPPET_LENGTH]
        if not snippets:
            continue
        for sink in sinks:
            for snippet in snippets:
                if snippet.text in sink.text:
                    flows.append(
                        FlowMatch(
                            source_id=source.id,
                            sink_id=sink.id,
                            sink_kind=sink.kind,
                            matched_snippet=snippet.text,
                            confidence=classify_confidence(snippet, source.value),
                        )
                    )
                    break
    return flows
