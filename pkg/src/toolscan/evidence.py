"""Intent markers and sandbox-policy messages found in guest output."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from toolscan._text import split_lines
from toolscan.sandbox import ExecRecord
from toolscan.sources import match_fetch_marker

#: Message family WASI runtimes and libcs use when no preopen covers a path.
PREOPEN_DENIAL_PATTERNS = ["failed to find a preopened file descriptor"]
#: Matched case-insensitively.
POLICY_VIOLATION_PATTERNS = ["permission denied", "not permitted"]


class EvidenceKind(str, enum.Enum):
    FETCH_INTENT = "FetchIntent"
    PREOPEN_DENIED = "PreopenDenied"
    POLICY_VIOLATION = "PolicyViolation"


class Stream(str, enum.Enum):
    STDOUT = "Stdout"
    STDERR = "Stderr"


@dataclass(frozen=True)
class EvidenceItem:
    kind: EvidenceKind
    stream: Stream
    line_number: int
    excerpt: str

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "stream": self.stream.value,
            "line_number": self.line_number,
            "excerpt": self.excerpt,
        }

    @classmethod
    def from_dict(cls, data: dict) -> EvidenceItem:
        return cls(EvidenceKind(data["kind"]), Stream(data["stream"]), int(data["line_number"]), data["excerpt"])


def classify_line(line: str) -> EvidenceKind | None:
    if match_fetch_marker(line) is not None:
        return EvidenceKind.FETCH_INTENT
    if any(p in line for p in PREOPEN_DENIAL_PATTERNS):
        return EvidenceKind.PREOPEN_DENIED
    lowered = line.lower()
    if any(p in lowered for p in POLICY_VIOLATION_PATTERNS):
        return EvidenceKind.POLICY_VIOLATION
    return None


def scan_evidence(exec_record: ExecRecord) -> list[EvidenceItem]:
    items = []
    for stream, text in ((Stream.STDOUT, exec_record.stdout), (Stream.STDERR, exec_record.stderr)):
        for line_number, raw in enumerate(split_lines(text), start=1):
            line = raw.strip()
            if not line:
                continue
            kind = classify_line(line)
            if kind is not None:
                items.append(EvidenceItem(kind, stream, line_number, line))
    return items
