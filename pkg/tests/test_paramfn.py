import pytest

from parlab.bits import BitArray
from parlab.errors import DimensionError
from parlab.paramfn import ParameterList, phi_partition, switchable_gate, trial
from parlab.partition import enumerate_pv, par_bits


def test_switchable_gate_values():
    f = switchable_gate("and")
    assert f([1, 1], [0, 1]) == 0
    assert f([0, 1], [0, 1]) == 1
    assert f([1, 0], [1, 0]) == 1  # x1 and not x2
    assert f([1, 1], [1, 1]) == 1


def test_trial_of_switch_gate_is_parity():
    f = switchable_gate("and")
    plist = ParameterList(2, ((1, 0), (0, 1)))
    for a in (0, 1):
        for b in (0, 1):
            assert trial(f, plist, [a, b]) == a ^ b


def test_trial_is_order_independent():
    f = switchable_gate("and")
    fwd = ParameterList(2, ((1, 0), (0, 1)))
    rev = ParameterList(2, ((0, 1), (1, 0)))
    for a in (0, 1):
        for b in (0, 1):
            assert trial(f, fwd, [a, b]) == trial(f, rev, [a, b])


def test_duplicates_flagged_but_legal():
    plist = ParameterList(2, ((1, 0), (1, 0)))
    assert plist.has_duplicates
    f = switchable_gate("and")
    assert trial(f, plist, [1, 0]) == trial(f, ParameterList(2, ((1, 0),)), [1, 0])


def test_phi_partition_single_vector():
    phi = phi_partition(2, 3)
    # 01 10 11 -> {1, 2, 3}; p = ++- balances (1 + 2 - 3 = 0)
    assert phi(BitArray.from_string("011011"), (1, 1, 0)) == 1
    assert phi(BitArray.from_string("011011"), (1, 0, 1)) == 0


def test_trial_over_all_vectors_is_partition_function():
    phi = phi_partition(2, 3)
    plist = ParameterList.from_vectors(enumerate_pv(3))
    for v in range(1 << 6):
        x = BitArray.from_int(v, 6)
        assert trial(phi, plist, x) == par_bits(x, 2, 3)


def test_arity_checked():
    phi = phi_partition(2, 3)
    with pytest.raises(DimensionError):
        phi(BitArray.from_string("0110"), (1, 1, 0))


def test_parameter_list_json_round_trip():
    plist = ParameterList(3, ((1, 0, 1), (0, 1, 1)))
    assert ParameterList.from_json(plist.to_json()) == plist
