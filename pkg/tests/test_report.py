import json
import os

import pytest
from hypothesis import given, strategies as st

from conftest import GOLDEN_DIR
from toolscan.evidence import scan_evidence
from toolscan.flows import detect_flows
from toolscan.report import (
    SCHEMA_VERSION,
    IntegrityError,
    ScanReport,
    Summary,
    assemble_report,
    parse_report,
    serialize_report,
)
from toolscan.sandbox import ExecRecord, Termination
from toolscan.sinks import extract_sinks
from toolscan.sources import collect_env_sources, extract_fetch_intents

EMPTY_EXEC = ExecRecord("", "", 0, 0, False, False, Termination.EXITED)
GOLDEN_CASES = ("benign", "evil_prompt", "fs_violation", "exfiltrator")


def test_empty_report():
    report = assemble_report(EMPTY_EXEC, [], [], [], [])
    assert report.summary == Summary(0, 0, 0, False)
    data = json.loads(serialize_report(report))
    assert data["schema_version"] == SCHEMA_VERSION == "1"
    assert [data[k] for k in ("sources", "sinks", "flows", "evidence")] == [[], [], [], []]


def test_key_order():
    data = json.loads(serialize_report(assemble_report(EMPTY_EXEC, [], [], [], [])))
    assert list(data) == ["schema_version", "exec", "sources", "sinks", "flows", "evidence", "summary"]


def test_benign_summary(case_reports):
    assert case_reports["benign"].summary == Summary(3, 1, 1, True)


def test_fs_violation_summary(case_reports):
    assert case_reports["fs_violation"].summary == Summary(3, 0, 0, False)


def test_flow_object_fields(case_reports):
    flow = json.loads(serialize_report(case_reports["benign"]))["flows"][0]
    assert flow == {
        "source_id": "env:TOOL_INPUT",
        "sink_id": "sink:2:0",
        "sink_type": "StdoutPrompt",
        "matched_snippet": "hello",
        "confidence": "High",
    }


def test_unknown_ids_raise(case_reports):
    r = case_reports["benign"]
    with pytest.raises(IntegrityError):
        assemble_report(r.exec, r.sources[1:], r.sinks, r.flows, [])
    with pytest.raises(IntegrityError):
        assemble_report(r.exec, r.sources, [], r.flows, [])


def test_round_trip(case_reports):
    for report in case_reports.values():
        assert parse_report(serialize_report(report)) == report


def test_masking_only_touches_duration(case_reports):
    report = case_reports["benign"]
    masked = json.loads(serialize_report(report, mask_duration=True))
    plain = json.loads(serialize_report(report))
    assert masked["exec"].pop("duration_ms") == 0
    plain["exec"].pop("duration_ms")
    assert masked == plain


def test_unknown_schema_version_rejected():
    data = json.loads(serialize_report(assemble_report(EMPTY_EXEC, [], [], [], [])))
    data["schema_version"] = "2"
    with pytest.raises(ValueError):
        parse_report(json.dumps(data))


@pytest.mark.parametrize("name", GOLDEN_CASES)
def test_golden(case_reports, name):
    text = serialize_report(case_reports[name], mask_duration=True)
    golden = GOLDEN_DIR / f"{name}.json"
    if os.environ.get("UPDATE_GOLDEN"):
        golden.write_text(text, encoding="utf-8")
    assert text == golden.read_text(encoding="utf-8")


line = st.one_of(
    st.builds(lambda w: f"PROMPT: {w}", st.text("abc ", max_size=12)),
    st.builds(lambda w: json.dumps({"result": w, "status": "ok"}), st.text("abcd ", max_size=20)),
    st.builds(lambda w: json.dumps({"messages": [{"content": w}]}), st.text("abc", max_size=10)),
    st.builds(lambda u: f"HTTP_FETCH: {u}", st.text("abcd", max_size=12)),
    st.text("abcd ", max_size=15),
)


@given(
    st.lists(line, max_size=8),
    st.lists(st.tuples(st.text("XYZ", min_size=1, max_size=3), st.text("abcd ", max_size=12)), max_size=4),
)
def test_summary_consistent_for_random_pipelines(lines, env):
    env = list(dict(env).items())
    record = ExecRecord("\n".join(lines), "", 0, 0, False, False, Termination.EXITED)
    sources = collect_env_sources(env) + extract_fetch_intents(record)
    sinks = extract_sinks(record.stdout)
    flows = detect_flows(sources, sinks)
    report = assemble_report(record, sources, sinks, flows, scan_evidence(record))
    s = report.summary
    assert (s.source_count, s.sink_count, s.flow_count) == (len(sources), len(sinks), len(flows))
    assert s.external_to_sink == (s.flow_count > 0)
    assert parse_report(serialize_report(report)) == report
    assert isinstance(report, ScanReport)
