import pytest
from hypothesis import given, settings, strategies as st

from parlab.bits import BitArray
from parlab.circuit import (
    Circuit,
    Gate,
    Wire,
    build_adder,
    build_ge,
    build_indicator,
    build_parametric_union,
    build_phi_circuit,
    build_subpartition_circuit,
    build_subtractor,
    build_zero_test,
    canonical_encode,
    circuit_from_file,
    circuit_to_file,
    eval_circuit,
    node_count,
    phi_input_for_numbers,
    truth_table,
    xor_circuit,
)
from parlab.errors import DomainError
from parlab.paramfn import phi_partition
from parlab.partition import PartitionVector, enumerate_pv, par_bits


def test_gate_wires_must_be_topological():
    with pytest.raises(DomainError):
        Circuit(2, (Gate("and", Wire("i", 0), Wire("g", 0)),), Wire("g", 0))


def test_xor_circuit_shape_and_table():
    c = xor_circuit()
    assert node_count(c) == (3, 5)
    assert truth_table(c).table == 0b0110


def _bundle_value(bundle, names, v):
    return sum(truth_table(bundle.circuit_for(name))[v] << i for i, name in enumerate(names))


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=4), st.data())
def test_adder_matches_integers(k, data):
    x = data.draw(st.integers(min_value=0, max_value=(1 << k) - 1))
    y = data.draw(st.integers(min_value=0, max_value=(1 << k) - 1))
    add = build_adder(k)
    v = (x << k) | y
    names = [f"z{i}" for i in range(k + 1)]
    assert _bundle_value(add, names, v) == x + y


def test_adder_known_cases():
    add = build_adder(4)
    v = (0b1001 << 4) | 0b1010
    assert _bundle_value(add, [f"z{i}" for i in range(5)], v) == 0b10011
    add2 = build_adder(2)
    v2 = (0b11 << 2) | 0b01
    assert _bundle_value(add2, [f"z{i}" for i in range(3)], v2) == 0b100


def test_subtractor_known_cases():
    sub = build_subtractor(5)
    v = (0b10101 << 5) | 0b11010
    assert _bundle_value(sub, [f"z{i}" for i in range(5)], v) == 0b00101
    assert truth_table(sub.circuit_for("z5"))[v] == 1  # x < y: sign set
    sub4 = build_subtractor(4)
    v4 = (0b1101 << 4) | 0b1010
    assert _bundle_value(sub4, [f"z{i}" for i in range(4)], v4) == 0b0011
    assert truth_table(sub4.circuit_for("z4"))[v4] == 0


def test_ge_exhaustive_small():
    ge = build_ge(3)
    t = truth_table(ge)
    for x in range(8):
        for y in range(8):
            assert t[(x << 3) | y] == (1 if x >= y else 0)


def test_zero_test():
    z = build_zero_test(4)
    t = truth_table(z)
    assert t[0] == 1
    assert all(t[v] == 0 for v in range(1, 16))


def test_phi_circuit_matches_parametric_function():
    phi = phi_partition(2, 3)
    for p in enumerate_pv(3):
        c = build_phi_circuit(p, 2, 3)
        t = truth_table(c)
        for v in range(64):
            x = BitArray.from_int(v, 6)
            assert t[v] == phi(x, p.to_bits())


def test_subpartition_circuit_expresses_par():
    c = build_subpartition_circuit(list(enumerate_pv(3)), 3, 3)
    t = truth_table(c)
    for v in range(512):
        assert t[v] == par_bits(BitArray.from_int(v, 9), 3, 3)


def test_phi_gate_count_linear_in_construction_size():
    for n in (3, 4, 5):
        p = next(iter(enumerate_pv(n)))
        d = node_count(build_phi_circuit(p, n, n))[0]
        assert d <= 20 * (n * n + n * n)


def test_indicator_matches_only_its_pattern():
    ind = build_indicator([1, 0, 1])
    for p in ((0, 0, 0), (1, 0, 1), (1, 1, 1), (0, 0, 1)):
        c = ind.instantiate(p)
        assert truth_table(c).table == (1 if p == (1, 0, 1) else 0)


def test_phi_input_encoding():
    x = phi_input_for_numbers([3, 1, 2], 2)
    assert str(x) == "110110"


def test_parametric_union_rejects_duplicates():
    c1 = build_phi_circuit(PartitionVector.from_string("++-"), 1, 3)
    with pytest.raises(DomainError):
        build_parametric_union([((1, 1, 0), c1), ((1, 1, 0), c1)])


def test_canonical_encode_commutative():
    a = Circuit(2, (Gate("and", Wire("i", 0), Wire("i", 1)),), Wire("g", 0))
    b = Circuit(2, (Gate("and", Wire("i", 1), Wire("i", 0)),), Wire("g", 0))
    assert canonical_encode(a) == canonical_encode(b)


def test_circuit_file_round_trip(tmp_path):
    c = xor_circuit()
    path = tmp_path / "c.json"
    circuit_to_file(c, path)
    c2 = circuit_from_file(path)
    assert truth_table(c2) == truth_table(c)
    assert eval_circuit(c2, BitArray.from_string("10")) == 1
