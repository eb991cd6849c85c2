"""Sink extraction from a tool's standard output.

Each stdout line is trimmed and tried against three rules in order; the
first rule that fires owns the line:

1. the line contains ``PROMPT:`` -> the whole line is a ``StdoutPrompt`` sink;
2. the line is a JSON object with a string ``prompt`` or an array
   ``messages`` -> one ``JsonPrompt`` sink;
3. the line is any other JSON object or array -> every string leaf long
   enough and not under a metadata key becomes a ``ToolReturn`` sink.

Extraction is strictly line oriented: pretty-printed JSON spread over
several lines is not reassembled.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Any

from toolscan._text import split_lines

PROMPT_MARKER = "PROMPT:"
MIN_TOOL_RETURN_LENGTH = 8
METADATA_KEYS = frozenset({"status", "id", "type", "version"})


class SinkKind(str, enum.Enum):
    STDOUT_PROMPT = "StdoutPrompt"
    JSON_PROMPT = "JsonPrompt"
    TOOL_RETURN = "ToolReturn"


@dataclass(frozen=True)
class Sink:
    id: str
    kind: SinkKind
    text: str
    line_number: int
    json_path: str | None = None

    def __post_init__(self) -> None:
        if not self.text:
            raise ValueError("sink text must be non-empty")
        if (self.kind is SinkKind.TOOL_RETURN) != (self.json_path is not None):
            raise ValueError("json_path is required for ToolReturn sinks and only for them")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind.value,
            "text": self.text,
            "line_number": self.line_number,
            "json_path": self.json_path,
        }

    @classmethod
    def from_dict(cls, data: dict) -> Sink:
        return cls(
            data["id"], SinkKind(data["kind"]), data["text"], int(data["line_number"]), data["json_path"]
        )


def _key_segment(key: str) -> str:
    if key.isidentifier():
        return f".{key}"
    return "[" + json.dumps(key) + "]"


def extract_json_string_leaves(value: Any, path: str = "$") -> list[tuple[str, str]]:
    """All string leaves of a parsed JSON value with their JSONPaths.

    Depth first, object keys in document order, array items by index.
    Keys that are not plain identifiers use bracket notation
    (``$["a b"]``) so every returned path stays unambiguous.
    """
    if isinstance(value, str):
        return [(path, value)]
    leaves: list[tuple[str, str]] = []
    if isinstance(value, dict):
        for key, item in value.items():
            leaves.extend(extract_json_string_leaves(item, path + _key_segment(key)))
    elif isinstance(value, list):
        for index, item in enumerate(value):
            leaves.extend(extract_json_string_leaves(item, f"{path}[{index}]"))
    return leaves


def _last_key(json_path: str) -> str | None:
    """Final object key of a path built by extract_json_string_leaves."""
    if json_path.endswith('"]'):
        start = json_path.rfind('["')
        return json.loads(json_path[start + 1 : -1])
    if json_path.endswith("]"):
        return None
    return json_path.rsplit(".", 1)[-1]


def _parse_json(line: str) -> Any:
    if not line or line[0] not in "{[":
        return None
    try:
        return json.loads(line)
    except (ValueError, RecursionError):
        return None


def _prompt_payload(doc: dict) -> str | None:
    prompt = doc.get("prompt")
    if isinstance(prompt, str):
        return prompt
    messages = doc.get("messages")
    if isinstance(messages, list):
        parts = [
            m["content"] for m in messages if isinstance(m, dict) and isinstance(m.get("content"), str)
        ]
        return "\n".join(parts)
    return None


def extract_sinks(stdout: str) -> list[Sink]:
    sinks: list[Sink] = []
    for line_number, raw in enumerate(split_lines(stdout), start=1):
        line = raw.strip()
        found: list[tuple[SinkKind, str, str | None]] = []
        if PROMPT_MARKER in line:
            found.append((SinkKind.STDOUT_PROMPT, line, None))
        else:
            doc = _parse_json(line)
            payload = _prompt_payload(doc) if isinstance(doc, dict) else None
            if payload is not None:
                # a messages array with no usable content still claims the line
                if payload:
                    found.append((SinkKind.JSON_PROMPT, payload, None))
            elif isinstance(doc, (dict, list)):
                for path, text in extract_json_string_leaves(doc):
                    if len(text) >= MIN_TOOL_RETURN_LENGTH and _last_key(path) not in METADATA_KEYS:
                        found.append((SinkKind.TOOL_RETURN, text, path))
        for ordinal, (kind, text, path) in enumerate(found):
            sinks.append(Sink(f"sink:{line_number}:{ordinal}", kind, text, line_number, path))
    return sinks
