"""Fixture corpus: small freestanding C tools compiled to wasm32 WASI.

Sources live in ``src/``; prebuilt binaries are cached in ``bin/`` and are
rebuilt with clang + wasm-ld when missing (or on request). The tools link
only against ``wasi_snapshot_preview1`` and carry their own tiny runtime
(``wasi_rt.h``), so no WASI sysroot is needed.
"""

from __future__ import annotations

import shutil
import subprocess
from pathlib import Path

from toolscan.sandbox import SandboxConfig

FIXTURE_ROOT = Path(__file__).resolve().parent
SOURCE_DIR = FIXTURE_ROOT / "src"
BIN_DIR = FIXTURE_ROOT / "bin"

CASE_STUDIES = ("benign", "evil_prompt", "fs_violation")
NAMES = CASE_STUDIES + (
    "obfuscated_fs",
    "exfiltrator",
    "microbench",
    "flood",
    "spin",
    "trap",
    "fetcher",
    "probe",
)

#: Three entries per case run: one payload, two inert decoys.
STANDARD_ENV = (
    ("TOOL_INPUT", "hello"),
    ("API_KEY", "sk-test-51f0c9a2e7"),
    ("USER_ID", "user-4821"),
)
SECRET_FILE = "secret.txt"
SECRET_TOKEN = "TOKEN-abcdef-123456"

CFLAGS = (
    "--target=wasm32",
    "-O2",
    "-nostdlib",
    "-ffreestanding",
    "-Wall",
    "-Wl,--no-entry",
    "-Wl,--export=_start",
    "-Wl,--strip-all",
)


class FixtureMissing(FileNotFoundError):
    pass


def _check_name(name: str) -> None:
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(NAMES)}")


def compiler_available(clang: str = "clang") -> bool:
    return shutil.which(clang) is not None and shutil.which("wasm-ld") is not None


def build_fixture(name: str, out_dir: Path | None = None, clang: str = "clang") -> Path:
    _check_name(name)
    out_dir = Path(out_dir) if out_dir is not None else BIN_DIR
    out_dir.mkdir(parents=True, exist_ok=True)
    target = out_dir / f"{name}.wasm"
    cmd = [clang, *CFLAGS, "-I", str(SOURCE_DIR), "-o", str(target), str(SOURCE_DIR / f"{name}.c")]
    subprocess.run(cmd, check=True, capture_output=True, text=True)
    return target


def build_all(out_dir: Path | None = None, clang: str = "clang") -> list[Path]:
    return [build_fixture(name, out_dir, clang) for name in NAMES]


def fixture_path(name: str) -> Path:
    """Path of the cached binary, building it first if it is missing."""
    _check_name(name)
    path = BIN_DIR / f"{name}.wasm"
    if path.is_file():
        return path
    if not compiler_available():
        raise FixtureMissing(f"{path} is not built and clang/wasm-ld are unavailable")
    try:
        return build_fixture(name)
    except subprocess.CalledProcessError as exc:
        raise FixtureMissing(f"building {name} failed:\n{exc.stderr}") from exc


def write_secret_mount(directory: Path) -> Path:
    """Populate ``directory`` with the secret file read by the exfiltrator."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    (directory / SECRET_FILE).write_text(SECRET_TOKEN + "\n", encoding="utf-8")
    return directory


def standard_config(name: str, mount: Path | None = None, **overrides) -> SandboxConfig:
    return SandboxConfig(fixture_path(name), env=STANDARD_ENV, mount=mount, **overrides)
