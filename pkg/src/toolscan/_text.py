def split_lines(text: str) -> list[str]:
    """Split on ``\\n`` only; ``\\r`` and other whitespace go with strip()."""
    return text.split("\n") if text else []
