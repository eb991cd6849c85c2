import os
import time

import pytest
import wasmtime
from hypothesis import given, settings, strategies as st

from toolscan.sandbox import (
    EXIT_SENTINEL,
    SCHEDULING_SLACK_MS,
    ExecRecord,
    SandboxConfig,
    Termination,
    execute,
)


def run(fixture_bin, name, **kw):
    return execute(SandboxConfig(fixture_bin(name), **kw))


def test_benign_exits_cleanly_with_prompt_line(fixture_bin):
    rec = run(fixture_bin, "benign", env=[("TOOL_INPUT", "hello")])
    assert rec.termination is Termination.EXITED
    assert rec.exit_code == 0
    prompt_lines = [l for l in rec.stdout.splitlines() if "PROMPT:" in l]
    assert prompt_lines == ["PROMPT: summarize the data hello"]
    assert rec.stdout.splitlines()[0] == "base prompt: summarize the data"
    assert not rec.stdout_truncated and not rec.stderr_truncated


def test_random_bytes_fail_to_load(tmp_path):
    bogus = tmp_path / "bogus.wasm"
    bogus.write_bytes(os.urandom(4))
    rec = execute(SandboxConfig(bogus))
    assert rec.termination is Termination.LOAD_FAILED
    assert rec.exit_code == EXIT_SENTINEL
    assert rec.stdout == "" and rec.stderr == ""


def test_unknown_import_fails_to_link(tmp_path):
    wasm = wasmtime.wat2wasm(
        '(module (import "env" "mystery" (func)) (func (export "_start") call 0))'
    )
    path = tmp_path / "link.wasm"
    path.write_bytes(wasm)
    assert execute(SandboxConfig(path)).termination is Termination.LOAD_FAILED


def test_missing_start_export_is_load_failure(tmp_path):
    path = tmp_path / "nostart.wasm"
    path.write_bytes(wasmtime.wat2wasm("(module (func (export \"main\")))"))
    assert execute(SandboxConfig(path)).termination is Termination.LOAD_FAILED


def test_missing_module_raises(tmp_path):
    with pytest.raises(FileNotFoundError):
        execute(SandboxConfig(tmp_path / "absent.wasm"))


def test_trap_keeps_output(fixture_bin):
    rec = run(fixture_bin, "trap")
    assert rec.termination is Termination.TRAPPED
    assert rec.exit_code == EXIT_SENTINEL
    assert rec.stdout == "PROMPT: before the trap\n"
    assert rec.stderr == "about to trap\n"


def test_proc_exit_code_is_reported(fixture_bin):
    rec = run(fixture_bin, "fetcher", env=[("EXIT_CODE", "3")])
    assert rec.termination is Termination.EXITED
    assert rec.exit_code == 3


def test_timeout_keeps_output_and_respects_deadline(fixture_bin):
    start = time.monotonic()
    rec = run(fixture_bin, "spin", wall_timeout_ms=300)
    elapsed_ms = (time.monotonic() - start) * 1000
    assert rec.termination is Termination.TIMED_OUT
    assert rec.exit_code == EXIT_SENTINEL
    assert rec.stdout == "spinning\n"
    assert rec.duration_ms <= 300 + SCHEDULING_SLACK_MS
    assert elapsed_ms < 300 + SCHEDULING_SLACK_MS + 1000


def test_flood_is_truncated_to_budget(fixture_bin):
    rec = run(fixture_bin, "flood", env=[("FLOOD_BYTES", "1025")], stdout_budget_bytes=1024)
    assert len(rec.stdout.encode()) == 1024
    assert rec.stdout_truncated


def test_exact_budget_is_not_truncated(fixture_bin):
    rec = run(fixture_bin, "flood", env=[("FLOOD_BYTES", "1024")], stdout_budget_bytes=1024)
    assert len(rec.stdout) == 1024
    assert not rec.stdout_truncated


def test_stderr_has_its_own_budget(fixture_bin):
    rec = run(
        fixture_bin,
        "flood",
        env=[("FLOOD_BYTES", "5000"), ("FLOOD_STREAM", "stderr")],
        stdout_budget_bytes=16,
        stderr_budget_bytes=100,
    )
    assert rec.stdout == ""
    assert len(rec.stderr) == 100 and rec.stderr_truncated
    assert not rec.stdout_truncated


def test_large_flood_does_not_block(fixture_bin):
    rec = run(fixture_bin, "flood", env=[("FLOOD_BYTES", str(8 << 20))], stdout_budget_bytes=4096)
    assert rec.termination is Termination.EXITED
    assert len(rec.stdout) == 4096 and rec.stdout_truncated


def test_preopen_confinement_without_mount(fixture_bin):
    rec = run(fixture_bin, "fs_violation")
    first = rec.stdout.splitlines()[0]
    assert "/etc/passwd" in first
    assert "failed to find a preopened file descriptor" in first


def test_writes_allowed_inside_mount_only(fixture_bin, tmp_path):
    escape = "/tmp/escape.txt"
    existed = os.path.exists(escape)
    rec = run(fixture_bin, "probe", mount=tmp_path)
    assert "write /data/probe.txt: ok" in rec.stdout
    assert (tmp_path / "probe.txt").read_text() == "probe\n"
    assert "write /tmp/escape.txt: failed to find a preopened file descriptor" in rec.stdout
    assert os.path.exists(escape) == existed


def test_only_configured_env_and_args_reach_guest(fixture_bin, monkeypatch):
    monkeypatch.setenv("HOST_ONLY_SECRET", "do-not-forward")
    rec = run(fixture_bin, "probe", env=[("A", "1")], args=["x", "y z"])
    lines = rec.stdout.splitlines()
    assert lines[:4] == ["arg: probe.wasm", "arg: x", "arg: y z", "env: A=1"]
    assert "do-not-forward" not in rec.stdout


def test_record_is_deterministic(fixture_bin):
    env = [("TOOL_INPUT", "hello"), ("API_KEY", "k")]
    a = run(fixture_bin, "evil_prompt", env=env)
    b = run(fixture_bin, "evil_prompt", env=env)
    key = lambda r: (r.stdout, r.stderr, r.exit_code, r.termination)
    assert key(a) == key(b)


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 6000), st.integers(1, 6000))
def test_truncation_is_prefix_monotone(fixture_bin, b1, b2):
    small, large = sorted((b1, b2))
    env = [("FLOOD_BYTES", "5000")]
    lo = run(fixture_bin, "flood", env=env, stdout_budget_bytes=small)
    hi = run(fixture_bin, "flood", env=env, stdout_budget_bytes=large)
    assert hi.stdout.startswith(lo.stdout)
    assert lo.stdout_truncated == (5000 > small)


def test_truncation_never_splits_multibyte_characters():
    from toolscan.sandbox import _decode

    raw = "héllo".encode()[:2]  # cuts the two-byte é
    assert _decode(raw, truncated=True) == "h"
    assert _decode(b"\xff", truncated=False) == "�"


@pytest.mark.parametrize(
    "field, value",
    [("stdout_budget_bytes", 0), ("stderr_budget_bytes", -1), ("wall_timeout_ms", 0)],
)
def test_config_rejects_non_positive_limits(field, value):
    with pytest.raises(ValueError):
        SandboxConfig("x.wasm", **{field: value})


def test_config_rejects_duplicate_env_keys():
    with pytest.raises(ValueError):
        SandboxConfig("x.wasm", env=[("A", "1"), ("A", "2")])


def test_exec_record_round_trips():
    rec = ExecRecord("o", "e", 0, 12, False, True, Termination.TIMED_OUT)
    assert ExecRecord.from_dict(rec.to_dict()) == rec


def test_parallel_executions_are_independent(fixture_bin):
    from concurrent.futures import ThreadPoolExecutor

    def one(i):
        return run(fixture_bin, "benign", env=[("TOOL_INPUT", f"value-{i}")])

    with ThreadPoolExecutor(4) as pool:
        records = list(pool.map(one, range(8)))
    for i, rec in enumerate(records):
        assert rec.stdout.endswith(f"PROMPT: summarize the data value-{i}\n")
