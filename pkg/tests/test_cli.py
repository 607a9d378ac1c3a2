import json

from click.testing import CliRunner

from parlab.bits import TruthTable
from parlab.cli import main

runner = CliRunner()


def run_json(args):
    result = runner.invoke(main, args)
    assert result.output, result.exception
    return json.loads(result.output), result.exit_code


def test_pv_enum():
    obj, code = run_json(["pv", "enum", "--n", "4"])
    assert code == 0
    assert obj["count"] == 7


def test_par_and_gpar_eval():
    obj, code = run_json(["par", "eval", "--k", "2", "--n", "6", "--bits", "110101101001"])
    assert (obj["value"], code) == (1, 0)
    obj, code = run_json(["gpar", "eval", "--bits", "110101101000"])
    assert (obj["value"], code) == (0, 0)


def test_unique_build_and_verify():
    obj, code = run_json(["unique", "build", "--pv", "+--"])
    assert code == 0 and obj["unique"]
    obj, code = run_json(
        ["unique", "verify", "--omega", ",".join(map(str, obj["omega"])), "--pv", "+--"]
    )
    assert code == 0 and obj["unique"]
    obj, code = run_json(["unique", "verify", "--omega", "3,1,1,2,1", "--pv", "++---"])
    assert code == 1 and not obj["unique"]


def test_chain_report():
    obj, code = run_json(["chain", "--k", "3", "--n", "3"])
    assert code == 0
    assert obj["w_sizes"] == [36, 64, 85]
    assert obj["all_strict"]


def test_trial_command():
    obj, code = run_json(["trial", "--k", "2", "--n", "3", "--bits", "011011"])
    assert (obj["value"], code) == (1, 0)


def test_circuit_commands(tmp_path):
    path = tmp_path / "xor.json"
    obj, code = run_json(["circuit", "build", "--kind", "xor", "--out", str(path)])
    assert code == 0 and obj["gates"] == 3
    obj, code = run_json(["circuit", "eval", "--file", str(path), "--bits", "01"])
    assert (obj["value"], code) == (1, 0)
    obj, code = run_json(["circuit", "count", "--file", str(path)])
    assert obj["gates"] == 3 and obj["nodes_with_negations"] == 5


def test_fe_solve_and_pss(tmp_path):
    samples = tmp_path / "s.json"
    samples.write_text(json.dumps({
        "arity": 2,
        "points": [{"x": "00", "v": 0}, {"x": "01", "v": 1},
                   {"x": "10", "v": 1}, {"x": "11", "v": 0}],
    }))
    obj, code = run_json(["fe", "solve", "--samples", str(samples)])
    assert code == 0 and obj["min_d"] == 3 and obj["status"] == "exact"

    fn = tmp_path / "f.json"
    fn.write_text(json.dumps(TruthTable.from_bits([0, 1, 1, 0]).to_json()))
    pts = tmp_path / "pts.json"
    pts.write_text(json.dumps({"arity": 2, "points": [0, 1, 2, 3]}))
    obj, code = run_json(["pss", "check", "--samples", str(pts), "--fn", str(fn)])
    assert code == 0 and obj["is_pss"]

    obj, code = run_json(["pss", "min", "--fn", str(fn)])
    assert code == 0 and obj["size"] == 4


def test_indeterminate_exit_code(tmp_path):
    fn = tmp_path / "f.json"
    parity3 = sum(1 << v for v in range(8) if bin(v).count("1") % 2)
    fn.write_text(json.dumps(TruthTable(3, parity3).to_json()))
    pts = tmp_path / "pts.json"
    pts.write_text(json.dumps({"arity": 3, "points": list(range(8))}))
    obj, code = run_json(
        ["pss", "check", "--samples", str(pts), "--fn", str(fn), "--gate-cap", "2"]
    )
    assert code == 2 and obj["status"] == "indeterminate"


def test_audit_command():
    obj, code = run_json(["audit", "--n", "3", "--pv-length", "3"])
    assert code == 0
    assert obj["lemma56_lower"] == 4 and obj["eta_lower"] == 2


def test_verify_scenario_and_report_show(tmp_path):
    obj, code = run_json([
        "verify", "--scenario", "bound-audit", "--report-dir", str(tmp_path)
    ])
    assert code == 0 and obj["verdict"] == "pass"
    files = list(tmp_path.glob("bound-audit-*.json"))
    assert len(files) == 1
    obj, code = run_json(["report", "show", str(files[0])])
    assert code == 0 and obj["scenario"] == "bound-audit"


def test_verify_suite(tmp_path):
    cfg = tmp_path / "suite.json"
    cfg.write_text(json.dumps({
        "schema": 1,
        "scenarios": [{"id": "bound-audit"}, {"id": "wj-chain-k1"}],
    }))
    obj, code = run_json(["verify", "--suite", str(cfg)])
    assert code == 0 and obj["failed"] == []


def test_verify_requires_one_mode():
    result = runner.invoke(main, ["verify"])
    assert result.exit_code != 0
