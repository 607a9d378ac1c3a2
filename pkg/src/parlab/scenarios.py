"""Reproducible verification scenarios and their JSON run reports.

Each scenario strings library operations into one deterministic experiment
with a pass/fail (asserted) or recorded outcome.  Reports are immutable
values: the hashed body excludes wall-clock time, so identical inputs with
the same tool version always produce byte-identical bodies, and report
files are append-only (named by scenario id and body hash).
"""

from __future__ import annotations

import hashlib
import json
import math
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from importlib import metadata
from pathlib import Path

from .bits import BitArray, SamplingSet, TruthTable
from .circuit import (
    build_adder,
    build_ge,
    build_subtractor,
    build_subpartition_circuit,
    node_count,
    truth_table,
    xor_circuit,
)
from .errors import DomainError
from .fepss import (
    bound_audit,
    fe_solve,
    fe_solve_fn,
    fe_solve_naive,
    mpss_search,
    pss_check,
    pss_from_circuit,
    witness_requirement_check,
    _engine,
)
from .paramfn import ParamBoolFn, ParameterList, phi_partition, trial
from .partition import (
    enumerate_pv,
    gpar,
    par_bits,
    random_pv_order,
    signed_sum,
    unique_omega,
    verify_uniqueness,
    witness_chain,
)

SCHEMA_VERSION = 1

try:
    VERSION = metadata.version("parlab")
except metadata.PackageNotFoundError:  # running from a source tree
    VERSION = "0.0.0"


def _par_map(fn, items, workers: int):
    """Apply fn to items, in order. Worker count never affects results:
    outputs are collected positionally regardless of completion order."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True)
class RunReport:
    schema: int
    scenario: str
    params: dict
    verdict: str  # "pass" | "fail" | "recorded" | "indeterminate"
    metrics: dict
    version: str
    fingerprint: str
    wall_clock: float

    def body(self) -> dict:
        return {
            "schema": self.schema,
            "scenario": self.scenario,
            "params": self.params,
            "verdict": self.verdict,
            "metrics": self.metrics,
            "version": self.version,
            "fingerprint": self.fingerprint,
        }

    def body_bytes(self) -> bytes:
        return json.dumps(self.body(), sort_keys=True, separators=(",", ":")).encode()

    def body_hash(self) -> str:
        return hashlib.sha256(self.body_bytes()).hexdigest()

    def to_json(self) -> dict:
        out = self.body()
        out["wall_clock"] = self.wall_clock
        out["body_hash"] = self.body_hash()
        return out


# ---------------------------------------------------------------------------
# scenario bodies: each returns (verdict, metrics)


def _sc_uniqueness(params, workers):
    n_min, n_max = params["n_min"], params["n_max"]

    def check_length(n):
        bad = 0
        top = 1 << n
        for p in enumerate_pv(n):
            omega = unique_omega(p)
            ok = (
                signed_sum(p, omega) == 0
                and all(1 <= a < top for a in omega.values)
                and verify_uniqueness(omega, p)
            )
            bad += not ok
        return bad

    failures = _par_map(check_length, range(n_min, n_max + 1), workers)
    metrics = {
        "per_length_failures": {
            str(n): f for n, f in zip(range(n_min, n_max + 1), failures)
        },
        "vectors_checked": sum((1 << (n - 1)) - 1 for n in range(n_min, n_max + 1)),
    }
    return ("pass" if not any(failures) else "fail"), metrics


def _sc_parity_reduction(params, workers):
    lengths = params["lengths"]

    def check_length(length):
        k = math.isqrt(length)
        mismatches = 0
        square = k * k == length
        for v in range(1 << length):
            x = BitArray.from_int(v, length)
            got = gpar(x)
            if square and k >= 3:
                want = par_bits(x, k, k)
            else:
                # definitional oracle: some partition vector balances the
                # cut numbers (trailing number may be shorter than k bits)
                vals = []
                pos = 0
                while pos < length:
                    width = min(k, length - pos)
                    vals.append(
                        int("".join(str(b) for b in x.bits[pos:pos + width]), 2)
                    )
                    pos += width
                want = int(
                    any(
                        sum(s * a for s, a in zip(p.signs, vals)) == 0
                        for p in enumerate_pv(len(vals))
                    )
                )
            mismatches += got != want
        return mismatches

    mismatches = _par_map(check_length, lengths, workers)
    metrics = {
        "per_length_mismatches": {str(l): m for l, m in zip(lengths, mismatches)}
    }
    return ("pass" if not any(mismatches) else "fail"), metrics


def _sc_trial_equivalence(params, workers):
    pairs = [tuple(p) for p in params["pairs"]]

    def check_pair(pair):
        k, n = pair
        phi = phi_partition(k, n)
        plist = ParameterList.from_vectors(enumerate_pv(n))
        mismatches = 0
        for v in range(1 << (k * n)):
            x = BitArray.from_int(v, k * n)
            if trial(phi, plist, x) != par_bits(x, k, n):
                mismatches += 1
        return mismatches

    mismatches = _par_map(check_pair, pairs, workers)
    circuit = build_subpartition_circuit(list(enumerate_pv(3)), 3, 3)
    table = truth_table(circuit)
    circuit_mismatches = sum(
        table[v] != par_bits(BitArray.from_int(v, 9), 3, 3) for v in range(512)
    )
    metrics = {
        "per_pair_mismatches": {f"{k},{n}": m for (k, n), m in zip(pairs, mismatches)},
        "circuit_mismatches": circuit_mismatches,
        "circuit_gates": node_count(circuit)[0],
    }
    ok = not any(mismatches) and circuit_mismatches == 0
    return ("pass" if ok else "fail"), metrics


def _sc_wj_chain(params, workers):
    k, n = params["k"], params["n"]
    orders = params.get("random_orders", 0)
    seed = params.get("seed", 0)
    expect_strict = params.get("expect_strict", True)

    chains = [witness_chain(k, n)]
    chains += _par_map(
        lambda s: witness_chain(k, n, random_pv_order(n, s)),
        range(seed, seed + orders),
        workers,
    )
    all_strict = all(c.all_strict for c in chains)
    metrics = {
        "canonical_w_sizes": [len(w) for w in chains[0].w_sets],
        "orders_checked": len(chains),
        "all_strict": all_strict,
    }
    if not expect_strict:
        return "recorded", metrics
    return ("pass" if all_strict else "fail"), metrics


def _sc_adder_sweep(params, workers):
    k_max = params["k_max"]

    def check_width(k):
        add = build_adder(k)
        sub = build_subtractor(k)
        ge = build_ge(k)
        sum_tables = [truth_table(add.circuit_for(f"z{i}")) for i in range(k + 1)]
        mag_tables = [truth_table(sub.circuit_for(f"z{i}")) for i in range(k)]
        sign_table = truth_table(sub.circuit_for(f"z{k}"))
        ge_table = truth_table(ge)
        bad = 0
        for x in range(1 << k):
            for y in range(1 << k):
                v = (x << k) | y
                got_sum = sum(sum_tables[i][v] << i for i in range(k + 1))
                got_mag = sum(mag_tables[i][v] << i for i in range(k))
                good = (
                    got_sum == x + y
                    and got_mag == abs(x - y)
                    and sign_table[v] == (1 if x < y else 0)
                    and ge_table[v] == (1 if x >= y else 0)
                )
                bad += not good
        return bad

    failures = _par_map(check_width, range(1, k_max + 1), workers)
    metrics = {
        "per_width_failures": {str(k): f for k, f in zip(range(1, k_max + 1), failures)}
    }
    return ("pass" if not any(failures) else "fail"), metrics


def _seeded_sampling_set(rng, arity_choices=(2, 3), max_size=8, max_gates=3):
    """Random sampling set whose labels come from a random function of at
    most max_gates gates, so the naive oracle stays tractable."""
    n = rng.choice(arity_choices)
    eng = _engine(n)
    eng.ensure_depth(max_gates)
    classes = [c for d in range(max_gates + 1) for c in eng.by_depth[d]]
    c = rng.choice(classes)
    t = c if rng.random() < 0.5 else c ^ eng.full
    size = rng.randint(1, min(max_size, 1 << n))
    pts = rng.sample(range(1 << n), size)
    return SamplingSet.from_pairs(n, [(v, (t >> v) & 1) for v in pts])


def _sc_fe_oracle(params, workers):
    count, seed = params["count"], params["seed"]
    rng = random.Random(seed)
    sets = [_seeded_sampling_set(rng) for _ in range(count)]

    def compare(sv):
        return fe_solve(sv).min_d == fe_solve_naive(sv)

    agreed = _par_map(compare, sets, workers)
    metrics = {"agreed": sum(agreed), "total": count}
    return ("pass" if sum(agreed) == count else "fail"), metrics


def _sc_xor_mpss(params, workers):
    del workers
    audits_ok = []
    sv = SamplingSet.from_pairs(
        4, [("0000", 0), ("0100", 1), ("0001", 1), ("0101", 0)]
    )
    sol = fe_solve(sv)
    audits_ok.append(sol.audit is None or sol.audit.thm41_holds)
    z0 = TruthTable(4, sum(1 << v for v in range(16) if ((v >> 2) & 1) ^ (v & 1)))
    rep = pss_check([0b0000, 0b0100, 0b0001, 0b0101], z0)
    xor2 = truth_table(xor_circuit())
    size, witness = mpss_search(xor2)
    full_sol = fe_solve_fn(range(4), xor2)
    audits_ok.append(full_sol.audit is None or full_sol.audit.thm41_holds)
    metrics = {
        "four_point_min_d": sol.min_d,
        "pss_verdict_z0": rep.is_pss,
        "pss_status": rep.status,
        "mpss_xor_size": size,
        "mpss_xor_witness": list(witness),
        "thm41_all_hold": all(audits_ok),
    }
    ok = (
        sol.min_d == 3
        and rep.status == "exact"
        and size == 4
        and all(audits_ok)
    )
    return ("pass" if ok else "fail"), metrics


def _sc_cegis_sweep(params, workers):
    seed, extra = params["seed"], params["three_input_count"]
    cases = [TruthTable(2, t) for t in range(16)]
    rng = random.Random(seed)
    cases += [TruthTable(3, rng.getrandbits(8)) for _ in range(extra)]

    def run_case(f):
        sol = fe_solve_fn(range(1 << f.arity), f)
        pts, audit = pss_from_circuit(f, sol.witness_circuit)
        within = len(pts) <= audit.thm42_bound or audit.thm42_degenerate
        return (f.arity, f.table, audit.d, len(pts), within)

    rows = _par_map(run_case, cases, workers)
    metrics = {
        "terminated": len(rows),
        "total": len(cases),
        "within_3d": sum(r[4] for r in rows),
        "outside_3d": [
            {"arity": a, "table": t, "d": d, "size": s}
            for a, t, d, s, w in rows
            if not w
        ],
    }
    return ("pass" if len(rows) == len(cases) else "fail"), metrics


def _sc_witness_requirement(params, workers):
    del workers
    k, n = params["k"], params["n"]
    vectors = list(enumerate_pv(n))
    plist = ParameterList.from_vectors(vectors)
    witnesses = []
    for p in vectors:
        omega = unique_omega(p)
        v = 0
        for a in omega.values:
            v = (v << k) | a
        witnesses.append(v)
    full = witness_requirement_check(witnesses, plist, k, n)
    empty = witness_requirement_check([], plist, k, n)
    partial = witness_requirement_check(
        [w for i, w in enumerate(witnesses) if i != 1], plist, k, n
    )
    ok = (
        full.all_met
        and empty.missing_indices == tuple(range(len(vectors)))
        and partial.missing_indices == (1,)
    )
    metrics = {
        "full": full.to_json(),
        "empty_missing": list(empty.missing_indices),
        "partial_missing": list(partial.missing_indices),
    }
    return ("pass" if ok else "fail"), metrics


def _sc_toy_lemma53(params, workers):
    base = params["base_points"]
    w1, w2 = params["witness1"], params["witness2"]
    arity = params.get("arity", 4)
    members = sorted(set(base) | {w1, w2})

    def phi_eval(x, q):
        v = 0
        for b in x:
            v = (v << 1) | b
        qv = 0
        for b in q:
            qv = (qv << 1) | b
        return 1 if v in base or v == qv else 0

    phi = ParamBoolFn(arity, arity, phi_eval, name="base-or-extra-point")
    plist = ParameterList.from_vectors(
        [tuple((w >> (arity - 1 - i)) & 1 for i in range(arity)) for w in (w1, w2)]
    )
    f = TruthTable(arity, sum(1 << v for v in members))
    # sanity: the trial really computes f, and each parameter has a unique
    # private witness (its own extra point)
    for v in range(1 << arity):
        x = BitArray.from_int(v, arity)
        if trial(phi, plist, x) != f[v]:
            raise DomainError("construction does not express the target")
    privates = []
    for i, q in enumerate(plist.entries):
        pts = [
            v
            for v in range(1 << arity)
            if phi_eval([(v >> (arity - 1 - t)) & 1 for t in range(arity)], q)
            and not any(
                phi_eval([(v >> (arity - 1 - t)) & 1 for t in range(arity)], r)
                for j, r in enumerate(plist.entries)
                if j != i
            )
        ]
        privates.append(pts)
    unique_witnesses = privates == [[w1], [w2]]

    def scan_chunk(chunk):
        pss_count = 0
        violations = 0
        sizes = []
        for mask in chunk:
            pts = [v for v in range(1 << arity) if (mask >> v) & 1]
            if pss_check(pts, f).is_pss:
                pss_count += 1
                sizes.append(len(pts))
                if not ((mask >> w1) & 1 and (mask >> w2) & 1):
                    violations += 1
        return pss_count, violations, min(sizes, default=None)

    total = 1 << (1 << arity)
    step = max(1, total // max(workers, 1) // 8)
    chunks = [range(lo, min(lo + step, total)) for lo in range(0, total, step)]
    results = _par_map(scan_chunk, chunks, workers)
    pss_count = sum(r[0] for r in results)
    violations = sum(r[1] for r in results)
    min_size = min((r[2] for r in results if r[2] is not None), default=None)
    metrics = {
        "unique_witnesses": unique_witnesses,
        "pss_count": pss_count,
        "violations": violations,
        "min_pss_size": min_size,
    }
    ok = unique_witnesses and violations == 0 and pss_count > 0
    return ("pass" if ok else "fail"), metrics


def _sc_bound_audit(params, workers):
    del workers
    n_min, n_max = params["n_min"], params["n_max"]
    rows = {}
    ok = True
    for n in range(n_min, n_max + 1):
        a = bound_audit(0, 0, 0, pv_length=n)
        want_lemma = 1 << (n - 1)
        want_eta = -((-(1 << n)) // 6)
        rows[str(n)] = {"lemma56_lower": a.lemma56_lower, "eta_lower": a.eta_lower}
        ok = ok and a.lemma56_lower == want_lemma and a.eta_lower == want_eta
    return ("pass" if ok else "fail"), {"per_length": rows}


SCENARIOS = {
    "uniqueness": (_sc_uniqueness, {"n_min": 3, "n_max": 8}),
    "parity-reduction": (_sc_parity_reduction, {"lengths": [4, 6, 8, 9, 12]}),
    "trial-equivalence": (
        _sc_trial_equivalence,
        {"pairs": [[1, 3], [2, 3], [3, 3], [2, 4]]},
    ),
    "wj-chain": (
        _sc_wj_chain,
        {"k": 3, "n": 3, "random_orders": 20, "seed": 0, "expect_strict": True},
    ),
    "wj-chain-k1": (
        _sc_wj_chain,
        {"k": 1, "n": 3, "random_orders": 0, "seed": 0, "expect_strict": False},
    ),
    "adder-sweep": (_sc_adder_sweep, {"k_max": 6}),
    "fe-oracle": (_sc_fe_oracle, {"count": 100, "seed": 20260826}),
    "xor-mpss": (_sc_xor_mpss, {}),
    "cegis-sweep": (_sc_cegis_sweep, {"seed": 20260826, "three_input_count": 20}),
    "witness-requirement": (_sc_witness_requirement, {"k": 3, "n": 3}),
    "toy-lemma53": (
        _sc_toy_lemma53,
        {"arity": 4, "base_points": [0, 1], "witness1": 2, "witness2": 5},
    ),
    "bound-audit": (_sc_bound_audit, {"n_min": 3, "n_max": 20}),
}


def run_scenario(scenario_id: str, params: dict | None = None, workers: int = 1) -> RunReport:
    if scenario_id not in SCENARIOS:
        raise DomainError(f"unknown scenario {scenario_id!r}")
    fn, defaults = SCENARIOS[scenario_id]
    merged = dict(defaults)
    merged.update(params or {})
    fingerprint = hashlib.sha256(
        json.dumps(merged, sort_keys=True, separators=(",", ":")).encode()
    ).hexdigest()
    start = time.monotonic()
    verdict, metrics = fn(merged, workers)
    return RunReport(
        schema=SCHEMA_VERSION,
        scenario=scenario_id,
        params=merged,
        verdict=verdict,
        metrics=metrics,
        version=VERSION,
        fingerprint=fingerprint,
        wall_clock=time.monotonic() - start,
    )


def write_report(report: RunReport, out_dir) -> Path:
    """Persist a report, append-only: the filename carries the body hash,
    and an existing file is left untouched."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{report.scenario}-{report.body_hash()[:12]}.json"
    if not path.exists():
        path.write_text(json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n")
    return path


def load_suite(config_path) -> list[dict]:
    obj = json.loads(Path(config_path).read_text())
    if obj.get("schema") != SCHEMA_VERSION:
        raise DomainError("unsupported suite schema")
    entries = obj.get("scenarios", [])
    for e in entries:
        if e.get("id") not in SCENARIOS:
            raise DomainError(f"unknown scenario {e.get('id')!r}")
    return entries


def run_suite(config_path, workers: int = 1, out_dir=None):
    """Run every scenario in a suite file; returns (summary, reports)."""
    entries = load_suite(config_path)
    reports = [
        run_scenario(e["id"], e.get("params"), workers=workers) for e in entries
    ]
    if out_dir is not None:
        for r in reports:
            write_report(r, out_dir)
    failed = [r.scenario for r in reports if r.verdict == "fail"]
    indeterminate = [r.scenario for r in reports if r.verdict == "indeterminate"]
    summary = {
        "schema": SCHEMA_VERSION,
        "total": len(reports),
        "verdicts": {r.scenario: r.verdict for r in reports},
        "failed": failed,
        "indeterminate": indeterminate,
    }
    return summary, reports
