import pytest
from hypothesis import given, settings, strategies as st

from parlab.bits import BitArray, NumberSet
from parlab.errors import DomainError
from parlab.partition import (
    PartitionVector,
    enumerate_pv,
    gpar,
    par_bits,
    par_range,
    random_pv_order,
    signed_sum,
    spar,
    unique_omega,
    verify_uniqueness,
    witness_chain,
)


def test_partition_vector_invariants():
    with pytest.raises(DomainError):
        PartitionVector.from_string("-++")  # first sign must be +
    with pytest.raises(DomainError):
        PartitionVector.from_string("+++")  # all-plus is no partition


def test_enumeration_order_and_count():
    vs = list(enumerate_pv(3))
    assert [str(p) for p in vs] == ["++-", "+-+", "+--"]
    for n in range(3, 10):
        assert len(list(enumerate_pv(n))) == 2 ** (n - 1) - 1


def test_signed_sum_balanced_and_unbalanced():
    omega = NumberSet((3, 1, 1, 2, 2, 1, 2, 2, 4), 15)
    assert signed_sum(PartitionVector.from_string("+---+-++-"), omega) == 0
    assert signed_sum(PartitionVector.from_string("+++++----"), omega) == 0
    assert signed_sum(
        PartitionVector.from_string("+-+--"), NumberSet((3, 1, 2, 4, 1), 7)
    ) == -1


def test_par_range_verdicts():
    assert par_range(NumberSet((3, 1, 1, 2, 2, 1, 2, 2, 4), 15), 15) == 1
    assert par_range(NumberSet((3, 1, 2, 4, 1), 15), 15) == 0
    assert par_range(NumberSet((3, 1, 2, 4, 12), 15), 15) == 0


def test_par_bits_and_gpar():
    assert par_bits(BitArray.from_string("110101101001"), 2, 6) == 1
    assert par_bits(BitArray.from_string("110101101000"), 2, 6) == 0
    assert gpar(BitArray.from_string("110101101000")) == 0
    assert gpar(BitArray.from_string("1001011010111")) == 1
    assert gpar(BitArray.from_string("1111")) == 1


def test_spar_subset_monotone():
    x = BitArray.from_string("110101101")
    full = list(enumerate_pv(3))
    assert spar(x, 3, 3, full) == par_bits(x, 3, 3)
    assert spar(x, 3, 3, full[:1]) <= par_bits(x, 3, 3)


def test_unique_omega_known_constructions():
    assert unique_omega(PartitionVector.from_string("+---")).values == (14, 8, 4, 2)
    assert unique_omega(PartitionVector.from_string("++---")).values == (27, 1, 16, 8, 4)


def test_verify_uniqueness_examples():
    assert verify_uniqueness(NumberSet((6, 1, 3, 2, 2), 7), PartitionVector.from_string("++---"))
    assert verify_uniqueness(NumberSet((15, 8, 4, 2, 1), 15), PartitionVector.from_string("+----"))
    assert not verify_uniqueness(NumberSet((3, 1, 1, 2, 1), 3), PartitionVector.from_string("++---"))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=3, max_value=7), st.randoms(use_true_random=False))
def test_unique_omega_always_unique(n, rnd):
    vectors = list(enumerate_pv(n))
    p = vectors[rnd.randrange(len(vectors))]
    omega = unique_omega(p)
    assert signed_sum(p, omega) == 0
    assert all(1 <= a < 2**n for a in omega.values)
    assert verify_uniqueness(omega, p)


def test_witness_chain_strictness_depends_on_width():
    wide = witness_chain(3, 3)
    assert wide.all_strict
    assert [len(w) for w in wide.w_sets] == [36, 64, 85]
    narrow = witness_chain(1, 3)
    assert not narrow.all_strict
    assert [len(w) for w in narrow.w_sets] == [3, 4, 4]


def test_witness_chain_any_order_strict():
    for seed in range(5):
        assert witness_chain(3, 3, random_pv_order(3, seed)).all_strict


def test_chain_partitions_domain():
    c = witness_chain(2, 3)
    assert len(c.z_set) + len(c.w_set) == 1 << 6
    assert c.w_sets[-1] == c.w_set
