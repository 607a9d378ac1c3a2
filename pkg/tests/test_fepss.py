import random

import pytest
from hypothesis import given, settings, strategies as st

from parlab.bits import SamplingSet, TruthTable
from parlab.circuit import node_count, truth_table, xor_circuit
from parlab.errors import CapacityError, DomainError
from parlab.fepss import (
    bound_audit,
    fe_solve,
    fe_solve_fn,
    fe_solve_naive,
    general_length_lower,
    mpss_search,
    pss_check,
    pss_from_circuit,
    witness_requirement_check,
)
from parlab.paramfn import ParameterList
from parlab.partition import enumerate_pv, unique_omega

XOR2 = TruthTable.from_bits([0, 1, 1, 0])


def test_constant_fit_costs_nothing():
    sv = SamplingSet.from_pairs(3, [(v, 0) for v in range(5)])
    sol = fe_solve(sv)
    assert sol.min_d == 0
    assert TruthTable(3, 0) in sol.minimizers


def test_single_point_fit_costs_nothing():
    assert fe_solve(SamplingSet.from_pairs(3, [(5, 1)])).min_d == 0


def test_xor_needs_three_gates_and_is_forced():
    sol = fe_solve_fn(range(4), XOR2)
    assert sol.min_d == 3
    assert sol.minimizers == (XOR2,)
    assert sol.minimizers_exhaustive
    assert truth_table(sol.witness_circuit) == XOR2
    assert node_count(sol.witness_circuit)[0] == 3


def test_partial_xor_is_cheap():
    assert fe_solve_fn([0, 1, 2], XOR2).min_d == 1


def test_empty_sample_fits_at_zero():
    assert fe_solve_fn([], XOR2).min_d == 0


def test_witness_always_fits_sample():
    rng = random.Random(5)
    for _ in range(25):
        n = rng.choice([2, 3])
        pts = rng.sample(range(1 << n), rng.randint(1, 1 << n))
        sv = SamplingSet.from_pairs(n, [(v, rng.randint(0, 1)) for v in pts])
        sol = fe_solve(sv)
        t = truth_table(sol.witness_circuit)
        assert all(t[v] == b for v, b in sv.points)
        assert node_count(sol.witness_circuit)[0] == sol.min_d


def test_monotone_in_sample():
    rng = random.Random(11)
    for _ in range(20):
        f = TruthTable(3, rng.getrandbits(8))
        pts = rng.sample(range(8), 6)
        small = fe_solve_fn(pts[:3], f).min_d
        large = fe_solve_fn(pts, f).min_d
        assert small <= large


def test_thm41_audited_on_solves():
    sol = fe_solve_fn(range(4), XOR2)
    assert sol.audit is not None and sol.audit.thm41_holds


def test_gate_cap_reports_budget_exhausted():
    parity3 = TruthTable(3, sum(1 << v for v in range(8) if bin(v).count("1") % 2))
    sol = fe_solve_fn(range(8), parity3, gate_cap=2)
    assert sol.status == "budget-exhausted"
    assert sol.min_d is None
    assert fe_solve_fn(range(8), parity3).min_d == 6


def test_arity_capacity_guard():
    with pytest.raises(CapacityError):
        fe_solve(SamplingSet.from_pairs(9, [(0, 0)]))


def test_oracle_agreement_seeded():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.choice([2, 3])
        pts = rng.sample(range(1 << n), rng.randint(1, min(6, 1 << n)))
        sv = SamplingSet.from_pairs(n, [(v, rng.randint(0, 1)) for v in pts])
        assert fe_solve(sv).min_d == fe_solve_naive(sv)


def test_pss_single_point_fails():
    rep = pss_check([0], XOR2)
    assert rep.is_pss is False
    assert rep.disagreeing_minimizer is not None
    assert rep.disagreeing_minimizer != XOR2


def test_pss_full_domain_holds():
    assert pss_check(range(4), XOR2).is_pss


def test_pss_semantics_field():
    assert pss_check([0], XOR2).semantics == "every-minimizer"


def test_mpss_xor_needs_all_points():
    size, witness = mpss_search(XOR2)
    assert size == 4
    assert witness == (0, 1, 2, 3)


def test_mpss_constant_zero_nonempty():
    size, _ = mpss_search(TruthTable(2, 0))
    assert size >= 1


def test_mpss_literal_within_domain():
    literal = TruthTable.from_bits([0, 1, 0, 1])  # second input
    size, _ = mpss_search(literal)
    assert 1 <= size <= 4


def test_pss_from_circuit_xor_within_bound():
    points, audit = pss_from_circuit(XOR2, xor_circuit())
    assert pss_check(points, XOR2).is_pss
    assert len(points) <= audit.thm42_bound


def test_pss_from_circuit_rejects_wrong_circuit():
    with pytest.raises(DomainError):
        pss_from_circuit(TruthTable(2, 0), xor_circuit())


def test_bound_audit_arithmetic():
    a = bound_audit(4, 4, 3)
    assert a.thm41_holds is True
    assert a.thm42_bound == 9
    empty = bound_audit(4, 0, 0)
    assert empty.thm41_holds is None
    assert empty.thm42_degenerate
    withn = bound_audit(3, 0, 0, pv_length=3)
    assert withn.lemma56_lower == 4
    assert withn.eta_lower == 2


@given(st.integers(min_value=2, max_value=400))
def test_general_length_lower_monotone_shape(length):
    assert general_length_lower(length) >= 1
    if length >= 3:
        assert general_length_lower(length) >= general_length_lower(length - 1)


def test_witness_requirement_full_and_partial():
    vectors = list(enumerate_pv(3))
    plist = ParameterList.from_vectors(vectors)
    witnesses = []
    for p in vectors:
        v = 0
        for a in unique_omega(p).values:
            v = (v << 3) | a
        witnesses.append(v)
    assert witness_requirement_check(witnesses, plist, 3, 3).all_met
    empty = witness_requirement_check([], plist, 3, 3)
    assert empty.missing_indices == (0, 1, 2)
    partial = witness_requirement_check(witnesses[:1] + witnesses[2:], plist, 3, 3)
    assert partial.missing_indices == (1,)
