import json

import pytest

from parlab.errors import DomainError
from parlab.scenarios import (
    SCENARIOS,
    RunReport,
    load_suite,
    run_scenario,
    run_suite,
    write_report,
)


def test_registry_covers_expected_ids():
    expected = {
        "uniqueness",
        "parity-reduction",
        "trial-equivalence",
        "wj-chain",
        "wj-chain-k1",
        "adder-sweep",
        "fe-oracle",
        "xor-mpss",
        "cegis-sweep",
        "witness-requirement",
        "toy-lemma53",
        "bound-audit",
    }
    assert set(SCENARIOS) == expected


def test_unknown_scenario_rejected():
    with pytest.raises(DomainError):
        run_scenario("nope")


def test_wj_chain_scenarios():
    assert run_scenario("wj-chain", {"random_orders": 3}).verdict == "pass"
    rep = run_scenario("wj-chain-k1")
    assert rep.verdict == "recorded"
    assert rep.metrics["all_strict"] is False


def test_report_body_excludes_wall_clock():
    rep = run_scenario("bound-audit")
    body = rep.body()
    assert "wall_clock" not in body
    assert rep.to_json()["wall_clock"] == rep.wall_clock
    assert rep.schema == 1


def test_replay_is_byte_identical():
    a = run_scenario("bound-audit")
    b = run_scenario("bound-audit")
    assert a.body_bytes() == b.body_bytes()
    assert a.body_hash() == b.body_hash()


def test_worker_count_never_changes_verdicts():
    a = run_scenario("uniqueness", {"n_min": 3, "n_max": 5}, workers=1)
    b = run_scenario("uniqueness", {"n_min": 3, "n_max": 5}, workers=8)
    assert a.body_bytes() == b.body_bytes()


def test_write_report_append_only(tmp_path):
    rep = run_scenario("bound-audit")
    p1 = write_report(rep, tmp_path)
    stamp = p1.stat().st_mtime_ns
    p2 = write_report(rep, tmp_path)
    assert p1 == p2
    assert p2.stat().st_mtime_ns == stamp
    on_disk = json.loads(p1.read_text())
    assert on_disk["schema"] == 1
    assert on_disk["body_hash"] == rep.body_hash()


def test_suite_runner(tmp_path):
    cfg = tmp_path / "suite.json"
    cfg.write_text(json.dumps({
        "schema": 1,
        "scenarios": [
            {"id": "bound-audit"},
            {"id": "wj-chain-k1"},
        ],
    }))
    summary, reports = run_suite(cfg, out_dir=tmp_path / "reports")
    assert summary["total"] == 2
    assert summary["failed"] == []
    assert len(list((tmp_path / "reports").glob("*.json"))) == 2


def test_suite_rejects_unknown_id(tmp_path):
    cfg = tmp_path / "suite.json"
    cfg.write_text(json.dumps({"schema": 1, "scenarios": [{"id": "bogus"}]}))
    with pytest.raises(DomainError):
        load_suite(cfg)


def test_empty_suite_is_trivially_green(tmp_path):
    cfg = tmp_path / "suite.json"
    cfg.write_text(json.dumps({"schema": 1, "scenarios": []}))
    summary, reports = run_suite(cfg)
    assert summary["total"] == 0
    assert reports == []


def test_default_suite_config_parses():
    from pathlib import Path

    cfg = Path(__file__).resolve().parent.parent / "scenarios" / "default.json"
    entries = load_suite(cfg)
    assert {e["id"] for e in entries} == set(SCENARIOS)
