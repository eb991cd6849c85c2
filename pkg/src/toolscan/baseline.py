"""Static string-signature baseline over raw module bytes.

Deliberately naive: printable-ASCII runs and substring search, with no
notion of sections, data segments or code. Anything assembled at runtime
or read from outside the binary is invisible to it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

DEFAULT_MIN_LEN = 4


@dataclass(frozen=True)
class SignatureResult:
    signature: str
    found: bool
    offsets: tuple[int, ...] = field(default=())

    def to_dict(self) -> dict:
        return {"signature": self.signature, "found": self.found, "offsets": list(self.offsets)}


def scan_binary_strings(module_bytes: bytes, min_len: int = DEFAULT_MIN_LEN) -> list[tuple[int, str]]:
    """Maximal runs of bytes in 0x20..0x7E at least ``min_len`` long, with offsets."""
    if min_len < 4:
        raise ValueError("min_len must be at least 4")
    pattern = re.compile(rb"[\x20-\x7e]{%d,}" % min_len)
    return [(m.start(), m.group().decode("ascii")) for m in pattern.finditer(module_bytes)]


def match_signatures(
    strings: Iterable[tuple[int, str]], signatures: Sequence[str]
) -> list[SignatureResult]:
    strings = list(strings)
    results = []
    for signature in signatures:
        offsets = tuple(offset for offset, text in strings if signature in text)
        results.append(SignatureResult(signature, bool(offsets), offsets))
    return results
