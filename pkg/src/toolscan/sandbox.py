"""Least-privilege execution of a single WASI module.

The guest gets exactly what the config grants: the listed environment
entries, the listed arguments and, optionally, one host directory preopened
at ``/data``. Nothing from the scanner's own environment is forwarded and no
socket capability exists. Standard output and error are wired to named pipes
drained by host threads, which keep at most ``*_budget_bytes`` of each stream
and discard the rest so a chatty guest can neither block nor exhaust memory.

Wall time is enforced with wasmtime epoch interruption, which is cooperative:
a guest parked inside a blocking host call is only interrupted once it returns
to wasm code.
"""

from __future__ import annotations

import codecs
import enum
import logging
import os
import tempfile
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path

import wasmtime

log = logging.getLogger(__name__)

DEFAULT_STDOUT_BUDGET = 1_048_576
DEFAULT_STDERR_BUDGET = 262_144
DEFAULT_TIMEOUT_MS = 10_000
#: Documented allowance on top of ``wall_timeout_ms`` for a timed-out run.
SCHEDULING_SLACK_MS = 500
GUEST_MOUNT = "/data"
#: exit_code reported for every termination other than Exited.
EXIT_SENTINEL = -1

_READ_CHUNK = 65_536


class Termination(str, enum.Enum):
    EXITED = "Exited"
    TRAPPED = "Trapped"
    TIMED_OUT = "TimedOut"
    LOAD_FAILED = "LoadFailed"


@dataclass(frozen=True)
class SandboxConfig:
    module_path: Path
    env: tuple[tuple[str, str], ...] = ()
    mount: Path | None = None
    stdout_budget_bytes: int = DEFAULT_STDOUT_BUDGET
    stderr_budget_bytes: int = DEFAULT_STDERR_BUDGET
    wall_timeout_ms: int = DEFAULT_TIMEOUT_MS
    args: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "module_path", Path(self.module_path))
        if self.mount is not None:
            object.__setattr__(self, "mount", Path(self.mount))
        object.__setattr__(self, "env", tuple((str(k), str(v)) for k, v in self.env))
        object.__setattr__(self, "args", tuple(str(a) for a in self.args))
        for name in ("stdout_budget_bytes", "stderr_budget_bytes", "wall_timeout_ms"):
            value = getattr(self, name)
            if not isinstance(value, int) or value <= 0:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
        keys = [key for key, _ in self.env]
        for key in keys:
            if not key or "=" in key:
                raise ValueError(f"invalid environment key {key!r}")
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate environment key")


@dataclass(frozen=True)
class ExecRecord:
    stdout: str
    stderr: str
    exit_code: int
    duration_ms: int
    stdout_truncated: bool
    stderr_truncated: bool
    termination: Termination

    def to_dict(self) -> dict:
        return {
            "stdout": self.stdout,
            "stderr": self.stderr,
            "exit_code": self.exit_code,
            "duration_ms": self.duration_ms,
            "stdout_truncated": self.stdout_truncated,
            "stderr_truncated": self.stderr_truncated,
            "termination": self.termination.value,
        }

    @classmethod
    def from_dict(cls, data: dict) -> ExecRecord:
        return cls(
            stdout=data["stdout"],
            stderr=data["stderr"],
            exit_code=int(data["exit_code"]),
            duration_ms=int(data["duration_ms"]),
            stdout_truncated=bool(data["stdout_truncated"]),
            stderr_truncated=bool(data["stderr_truncated"]),
            termination=Termination(data["termination"]),
        )


def _decode(raw: bytes, truncated: bool) -> str:
    # a cut in the middle of a multibyte sequence is dropped, not replaced
    decoder = codecs.getincrementaldecoder("utf-8")(errors="replace")
    return decoder.decode(raw, final=not truncated)


@dataclass
class _StreamCapture:
    """Drains one named pipe on a background thread, keeping ``budget`` bytes."""

    path: str
    budget: int
    data: bytearray = field(default_factory=bytearray)
    seen: int = 0
    _thread: threading.Thread | None = None

    def start(self) -> None:
        os.mkfifo(self.path, 0o600)
        self._thread = threading.Thread(target=self._drain, daemon=True)
        self._thread.start()

    def _drain(self) -> None:
        with open(self.path, "rb", buffering=0) as pipe:
            while chunk := pipe.read(_READ_CHUNK):
                room = self.budget - len(self.data)
                if room > 0:
                    self.data.extend(chunk[:room])
                self.seen += len(chunk)

    def finish(self, timeout: float = 5.0) -> None:
        if self._thread is None:
            return
        # unblocks a reader still waiting for a writer that never opened
        try:
            fd = os.open(self.path, os.O_WRONLY | os.O_NONBLOCK)
        except OSError:
            pass
        else:
            os.close(fd)
        self._thread.join(timeout)
        if self._thread.is_alive():
            log.warning("stream reader for %s did not finish", self.path)

    @property
    def truncated(self) -> bool:
        return self.seen > self.budget

    def text(self) -> str:
        return _decode(bytes(self.data), self.truncated)


def _load_failed(started: float) -> ExecRecord:
    return ExecRecord(
        stdout="",
        stderr="",
        exit_code=EXIT_SENTINEL,
        duration_ms=int((time.monotonic() - started) * 1000),
        stdout_truncated=False,
        stderr_truncated=False,
        termination=Termination.LOAD_FAILED,
    )


def execute(config: SandboxConfig) -> ExecRecord:
    """Run ``config.module_path`` once and return its bounded execution record.

    Guest failures never raise: invalid modules and link errors come back as
    ``LoadFailed``, traps as ``Trapped`` and deadline hits as ``TimedOut``,
    with whatever output was captured before the stop. A missing module file
    or mount directory is a caller error and raises ``FileNotFoundError``.
    """
    module_path = config.module_path
    if not module_path.is_file():
        raise FileNotFoundError(f"module not found: {module_path}")
    if config.mount is not None and not config.mount.is_dir():
        raise FileNotFoundError(f"mount directory not found: {config.mount}")

    started = time.monotonic()
    engine_config = wasmtime.Config()
    engine_config.epoch_interruption = True
    # one engine per run: epoch ticks are engine-wide
    engine = wasmtime.Engine(engine_config)
    try:
        module = wasmtime.Module(engine, module_path.read_bytes())
    except wasmtime.WasmtimeError as exc:
        log.info("module %s failed to compile: %s", module_path, exc)
        return _load_failed(started)

    wasi = wasmtime.WasiConfig()
    wasi.argv = [module_path.name, *config.args]
    wasi.env = [list(pair) for pair in config.env]
    if config.mount is not None:
        wasi.preopen_dir(str(config.mount), GUEST_MOUNT, True)

    with tempfile.TemporaryDirectory(prefix="toolscan-") as pipes:
        out = _StreamCapture(os.path.join(pipes, "stdout"), config.stdout_budget_bytes)
        err = _StreamCapture(os.path.join(pipes, "stderr"), config.stderr_budget_bytes)
        out.start()
        err.start()
        store = None
        try:
            wasi.stdout_file = out.path
            wasi.stderr_file = err.path
            store = wasmtime.Store(engine)
            store.set_wasi(wasi)
            termination, exit_code, started = _run(engine, store, module, config)
        finally:
            if store is not None:
                store.close()
            else:
                wasi.close()
            out.finish()
            err.finish()

    duration_ms = int((time.monotonic() - started) * 1000)
    if termination is Termination.LOAD_FAILED:
        return _load_failed(started)
    return ExecRecord(
        stdout=out.text(),
        stderr=err.text(),
        exit_code=exit_code,
        duration_ms=duration_ms,
        stdout_truncated=out.truncated,
        stderr_truncated=err.truncated,
        termination=termination,
    )


def _run(
    engine: wasmtime.Engine,
    store: wasmtime.Store,
    module: wasmtime.Module,
    config: SandboxConfig,
) -> tuple[Termination, int, float]:
    linker = wasmtime.Linker(engine)
    linker.define_wasi()

    deadline_hit = threading.Event()

    def interrupt() -> None:
        deadline_hit.set()
        engine.increment_epoch()

    store.set_epoch_deadline(1)
    timer = threading.Timer(config.wall_timeout_ms / 1000, interrupt)
    timer.daemon = True
    started = time.monotonic()
    timer.start()
    try:
        try:
            instance = linker.instantiate(store, module)
        except wasmtime.Trap:
            if deadline_hit.is_set():
                return Termination.TIMED_OUT, EXIT_SENTINEL, started
            return Termination.TRAPPED, EXIT_SENTINEL, started
        except wasmtime.WasmtimeError as exc:
            log.info("module %s failed to link: %s", config.module_path, exc)
            return Termination.LOAD_FAILED, EXIT_SENTINEL, started
        entry = instance.exports(store).get("_start")
        if not isinstance(entry, wasmtime.Func):
            log.info("module %s has no _start export", config.module_path)
            return Termination.LOAD_FAILED, EXIT_SENTINEL, started
        try:
            entry(store)
        except wasmtime.ExitTrap as exc:
            return Termination.EXITED, exc.code, started
        except (wasmtime.Trap, wasmtime.WasmtimeError):
            if deadline_hit.is_set():
                return Termination.TIMED_OUT, EXIT_SENTINEL, started
            return Termination.TRAPPED, EXIT_SENTINEL, started
        return Termination.EXITED, 0, started
    finally:
        timer.cancel()
