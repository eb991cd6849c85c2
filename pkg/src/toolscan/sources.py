"""External-input candidates for one run."""

from __future__ import annotations

import enum
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from toolscan._text import split_lines
from toolscan.sandbox import ExecRecord

log = logging.getLogger(__name__)

DEFAULT_FILE_CAP = 65_536
#: Longest first, so ``HTTP_FETCH:`` is never read as ``HTTP:``.
FETCH_MARKERS = ("HTTP_FETCH:", "FETCH:", "HTTP:")


class SourceKind(str, enum.Enum):
    ENV = "Env"
    FILE = "File"
    FETCH_INTENT = "FetchIntent"


@dataclass(frozen=True)
class Source:
    id: str
    kind: SourceKind
    value: str
    cap_applied: bool = False

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind.value,
            "value": self.value,
            "cap_applied": self.cap_applied,
        }

    @classmethod
    def from_dict(cls, data: dict) -> Source:
        return cls(data["id"], SourceKind(data["kind"]), data["value"], bool(data["cap_applied"]))


def collect_env_sources(env: Iterable[tuple[str, str]]) -> list[Source]:
    return [Source(f"env:{key}", SourceKind.ENV, value) for key, value in env]


def collect_file_sources(
    mount_dir: str | os.PathLike, per_file_cap: int = DEFAULT_FILE_CAP
) -> tuple[list[Source], list[str]]:
    """Read every regular file under ``mount_dir`` as a capped text source.

    Returns ``(sources, warnings)``. Symlinks and special files are skipped;
    unreadable files produce a warning instead of failing the scan. Sources
    are ordered by their POSIX-style relative path.
    """
    root = Path(mount_dir)
    if not root.is_dir():
        raise NotADirectoryError(f"mount directory not found: {root}")
    if per_file_cap <= 0:
        raise ValueError("per_file_cap must be positive")

    found: list[tuple[str, Path]] = []
    warnings: list[str] = []

    def on_error(exc: OSError) -> None:
        warnings.append(f"cannot list {exc.filename}: {exc.strerror}")

    for dirpath, dirnames, filenames in os.walk(root, onerror=on_error, followlinks=False):
        dirnames.sort()
        for name in filenames:
            path = Path(dirpath) / name
            if path.is_symlink() or not path.is_file():
                continue
            found.append((path.relative_to(root).as_posix(), path))

    sources = []
    for rel, path in sorted(found):
        try:
            with open(path, "rb") as fh:
                raw = fh.read(per_file_cap + 1)
        except OSError as exc:
            warnings.append(f"cannot read {rel}: {exc.strerror}")
            continue
        capped = len(raw) > per_file_cap
        raw = raw[:per_file_cap]
        # decoding replaces bad bytes; re-cap so the text never outgrows the byte cap
        text = raw.decode("utf-8", errors="replace")
        while len(text.encode("utf-8")) > per_file_cap:
            text = text[:-1]
        sources.append(Source(f"file:{rel}", SourceKind.FILE, text, capped))
    for warning in warnings:
        log.warning(warning)
    return sources, warnings


def match_fetch_marker(line: str) -> str | None:
    """Return the URL text after a fetch marker on a trimmed line, if any."""
    for marker in FETCH_MARKERS:
        if line.startswith(marker):
            return line[len(marker):].strip()
    return None


def extract_fetch_intents(exec_record: ExecRecord) -> list[Source]:
    """Fetch intents announced on stdout, then stderr. Nothing is fetched."""
    sources = []
    for stream in (exec_record.stdout, exec_record.stderr):
        for line in split_lines(stream):
            url = match_fetch_marker(line.strip())
            if url:
                sources.append(Source(f"intent:{len(sources)}", SourceKind.FETCH_INTENT, url))
    return sources
