"""Command-line interface.

Every command prints a single JSON document to standard output.  Exit
codes: 0 for definitive pass/ok results, 1 for asserted failures, 2 for
indeterminate (cap-limited) verdicts.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .bits import BitArray, NumberSet, SamplingSet, TruthTable
from .circuit import (
    build_adder,
    build_ge,
    build_phi_circuit,
    build_subtractor,
    build_zero_test,
    circuit_from_file,
    eval_circuit,
    node_count,
    xor_circuit,
)
from .errors import ParlabError
from .fepss import (
    bound_audit,
    fe_solve,
    mpss_search,
    pss_check,
    pss_from_circuit,
)
from .paramfn import ParameterList, phi_partition, trial
from .partition import (
    PartitionVector,
    enumerate_pv,
    gpar,
    par_bits,
    signed_sum,
    unique_omega,
    verify_uniqueness,
    witness_chain,
)
from .scenarios import SCENARIOS, run_scenario, run_suite, write_report

PASS, FAIL, INDETERMINATE = 0, 1, 2


def _emit(obj, code=PASS):
    click.echo(json.dumps(obj, indent=2, sort_keys=True))
    sys.exit(code)


@click.group()
def main():
    """Partition-function laboratory: partition vectors, parametric
    boolean functions, circuits and exact fitting."""


# -- partition vectors -------------------------------------------------------


@main.group()
def pv():
    """Partition vector operations."""


@pv.command("enum")
@click.option("--n", type=int, required=True)
def pv_enum(n):
    vectors = list(enumerate_pv(n))
    _emit({"n": n, "count": len(vectors), "vectors": [p.to_json() for p in vectors]})


@main.group()
def par():
    """Fixed-width partition function."""


@par.command("eval")
@click.option("--k", type=int, required=True)
@click.option("--n", type=int, required=True)
@click.option("--bits", type=str, required=True)
def par_eval(k, n, bits):
    x = BitArray.from_string(bits)
    _emit({"k": k, "n": n, "bits": bits, "value": par_bits(x, k, n)})


@main.group("gpar")
def gpar_group():
    """General-length partition function."""


@gpar_group.command("eval")
@click.option("--bits", type=str, required=True)
def gpar_eval(bits):
    x = BitArray.from_string(bits)
    _emit({"bits": bits, "length": len(x), "value": gpar(x)})


@main.group()
def unique():
    """Uniquely partitioned number sets."""


@unique.command("build")
@click.option("--pv", "pv_str", type=str, required=True)
def unique_build(pv_str):
    p = PartitionVector.from_string(pv_str)
    omega = unique_omega(p)
    _emit(
        {
            "pv": pv_str,
            "omega": list(omega.values),
            "signed_sum": signed_sum(p, omega),
            "unique": verify_uniqueness(omega, p),
        }
    )


@unique.command("verify")
@click.option("--omega", type=str, required=True, help="comma-separated values")
@click.option("--pv", "pv_str", type=str, required=True)
def unique_verify(omega, pv_str):
    values = tuple(int(v) for v in omega.split(","))
    p = PartitionVector.from_string(pv_str)
    ns = NumberSet(values, max(values))
    ok = verify_uniqueness(ns, p)
    _emit(
        {
            "omega": list(values),
            "pv": pv_str,
            "signed_sum": signed_sum(p, ns),
            "unique": ok,
        },
        PASS if ok else FAIL,
    )


@main.command("chain")
@click.option("--k", type=int, required=True)
@click.option("--n", type=int, required=True)
def chain(k, n):
    _emit(witness_chain(k, n).report())


# -- parametric functions ----------------------------------------------------


@main.command("trial")
@click.option("--phi", "phi_name", type=click.Choice(["partition"]), default="partition")
@click.option("--k", type=int, required=True)
@click.option("--n", type=int, required=True)
@click.option("--params", type=str, default="pv-all", show_default=True,
              help='"pv-all" or a path to a parameter-list JSON file')
@click.option("--bits", type=str, required=True)
def trial_cmd(phi_name, k, n, params, bits):
    phi = phi_partition(k, n)
    if params == "pv-all":
        plist = ParameterList.from_vectors(enumerate_pv(n))
    else:
        plist = ParameterList.from_json(json.loads(Path(params).read_text()))
    x = BitArray.from_string(bits)
    _emit({"k": k, "n": n, "bits": bits, "value": trial(phi, plist, x)})


# -- circuits ----------------------------------------------------------------


@main.group()
def circuit():
    """Circuit construction and evaluation."""


@circuit.command("build")
@click.option("--kind", type=click.Choice(["adder", "subtractor", "ge", "zero-test", "phi", "xor"]), required=True)
@click.option("--k", type=int, default=None)
@click.option("--l", "length", type=int, default=None)
@click.option("--n", type=int, default=None)
@click.option("--pv", "pv_str", type=str, default=None)
@click.option("--out", type=str, default=None, help="write circuit JSON here")
def circuit_build(kind, k, length, n, pv_str, out):
    if kind == "adder":
        bundle = build_adder(k)
        obj = {
            "arity": bundle.arity,
            "outputs": sorted(bundle.outputs),
            "gates": node_count(bundle)[0],
        }
        c = None
    elif kind == "subtractor":
        bundle = build_subtractor(k)
        obj = {
            "arity": bundle.arity,
            "outputs": sorted(bundle.outputs),
            "gates": node_count(bundle)[0],
        }
        c = None
    elif kind == "ge":
        c = build_ge(k)
    elif kind == "zero-test":
        c = build_zero_test(length)
    elif kind == "phi":
        c = build_phi_circuit(PartitionVector.from_string(pv_str), k, n)
    else:
        c = xor_circuit()
    if c is not None:
        obj = c.to_json()
        obj["gates"], obj["nodes"] = node_count(c)
    if out and c is not None:
        Path(out).write_text(json.dumps(c.to_json(), indent=2) + "\n")
    _emit(obj)


@circuit.command("eval")
@click.option("--file", "path", type=str, required=True)
@click.option("--bits", type=str, required=True)
def circuit_eval(path, bits):
    c = circuit_from_file(path)
    x = BitArray.from_string(bits)
    _emit({"bits": bits, "value": eval_circuit(c, x)})


@circuit.command("count")
@click.option("--file", "path", type=str, required=True)
def circuit_count(path):
    c = circuit_from_file(path)
    d, nodes = node_count(c)
    _emit({"gates": d, "nodes_with_negations": nodes})


# -- fitting extremum and sampling sets --------------------------------------


def _load_points(path):
    obj = json.loads(Path(path).read_text())
    pts = obj["points"] if isinstance(obj, dict) else obj
    out = []
    for p in pts:
        out.append(int(p, 2) if isinstance(p, str) else int(p))
    return out


@main.group()
def fe():
    """Exact fitting extremum."""


@fe.command("solve")
@click.option("--samples", type=str, required=True, help="sampling-set JSON file")
@click.option("--gate-cap", type=int, default=10, show_default=True)
def fe_solve_cmd(samples, gate_cap):
    sv = SamplingSet.from_json(json.loads(Path(samples).read_text()))
    sol = fe_solve(sv, gate_cap=gate_cap)
    _emit(sol.to_json(), PASS if sol.status == "exact" else INDETERMINATE)


@main.group("pss")
def pss_group():
    """Proper sampling set decisions."""


@pss_group.command("check")
@click.option("--samples", type=str, required=True, help="point-set JSON file")
@click.option("--fn", "fn_path", type=str, required=True, help="truth-table JSON file")
@click.option("--gate-cap", type=int, default=10, show_default=True)
def pss_check_cmd(samples, fn_path, gate_cap):
    f = TruthTable.from_json(json.loads(Path(fn_path).read_text()))
    rep = pss_check(_load_points(samples), f, gate_cap=gate_cap)
    _emit(rep.to_json(), PASS if rep.status == "exact" else INDETERMINATE)


@pss_group.command("min")
@click.option("--fn", "fn_path", type=str, required=True)
@click.option("--gate-cap", type=int, default=10, show_default=True)
def pss_min_cmd(fn_path, gate_cap):
    f = TruthTable.from_json(json.loads(Path(fn_path).read_text()))
    size, witness = mpss_search(f, gate_cap=gate_cap)
    _emit({"size": size, "witness": list(witness)})


@pss_group.command("from-circuit")
@click.option("--fn", "fn_path", type=str, required=True)
@click.option("--circuit", "circuit_path", type=str, required=True)
@click.option("--gate-cap", type=int, default=10, show_default=True)
def pss_from_circuit_cmd(fn_path, circuit_path, gate_cap):
    f = TruthTable.from_json(json.loads(Path(fn_path).read_text()))
    c = circuit_from_file(circuit_path)
    points, audit = pss_from_circuit(f, c, gate_cap=gate_cap)
    _emit(
        {
            "points": list(points),
            "size": len(points),
            "audit": audit.to_json(),
            "within_3d": len(points) <= audit.thm42_bound or audit.thm42_degenerate,
        }
    )


@main.command("audit")
@click.option("--n", type=int, required=True, help="arity for the d < n|S| check")
@click.option("--sample-size", type=int, default=0, show_default=True)
@click.option("--d", type=int, default=0, show_default=True)
@click.option("--pv-length", type=int, default=None)
def audit_cmd(n, sample_size, d, pv_length):
    _emit(bound_audit(n, sample_size, d, pv_length=pv_length).to_json())


# -- scenarios ---------------------------------------------------------------


@main.command("verify")
@click.option("--scenario", "scenario_id", type=click.Choice(sorted(SCENARIOS)), default=None)
@click.option("--suite", type=str, default=None, help="suite JSON file")
@click.option("--k", type=int, default=None)
@click.option("--n", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--workers", type=int, default=1, show_default=True,
              help="never changes verdicts, only elapsed time")
@click.option("--report-dir", type=str, default=None)
def verify(scenario_id, suite, k, n, seed, workers, report_dir):
    if (scenario_id is None) == (suite is None):
        raise click.UsageError("pass exactly one of --scenario / --suite")
    if scenario_id is not None:
        params = {key: v for key, v in (("k", k), ("n", n), ("seed", seed)) if v is not None}
        report = run_scenario(scenario_id, params or None, workers=workers)
        if report_dir:
            write_report(report, report_dir)
        code = {"pass": PASS, "recorded": PASS, "fail": FAIL}.get(
            report.verdict, INDETERMINATE
        )
        _emit(report.to_json(), code)
    summary, reports = run_suite(suite, workers=workers, out_dir=report_dir)
    if summary["failed"]:
        code = FAIL
    elif summary["indeterminate"]:
        code = INDETERMINATE
    else:
        code = PASS
    _emit(summary, code)


@main.group()
def report():
    """Run-report utilities."""


@report.command("show")
@click.argument("file", type=str)
def report_show(file):
    obj = json.loads(Path(file).read_text())
    _emit(obj)


def run():
    try:
        main(standalone_mode=True)
    except ParlabError as exc:  # pragma: no cover - defensive
        click.echo(json.dumps({"error": str(exc)}), err=True)
        sys.exit(FAIL)


if __name__ == "__main__":
    run()
