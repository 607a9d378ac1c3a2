"""Partition vectors and the partition functions they induce.

A partition vector is a sign vector (first component +1, not all +1) that
splits an ordered group of numbers in two; the group is equally partitioned
exactly when the signed sum vanishes. The functions here evaluate equal
partitionability by traversing the vector space, build the unique-vector
witness groups, and materialize the witness chain W_1 ... W_J used by the
lower-bound experiments.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .bits import BitArray, NumberSet, cut_bits, cut_bits_general
from .errors import CapacityError, DimensionError, DomainError, RangeError

MAX_PV_LENGTH = 24


@dataclass(frozen=True)
class PartitionVector:
    """Sign vector with signs in {+1, -1}, signs[0] = +1, not all +1."""

    signs: tuple[int, ...]

    def __post_init__(self):
        if len(self.signs) < 2:
            raise DomainError("partition vector needs length >= 2")
        if any(s not in (1, -1) for s in self.signs):
            raise DomainError("components must be +1 or -1")
        if self.signs[0] != 1:
            raise DomainError("first component must be +1")
        if all(s == 1 for s in self.signs):
            raise DomainError("the all-+1 vector does not represent a partition")

    def __len__(self) -> int:
        return len(self.signs)

    @classmethod
    def from_string(cls, s: str) -> "PartitionVector":
        m = {"+": 1, "-": -1}
        try:
            return cls(tuple(m[c] for c in s))
        except KeyError:
            raise DomainError(f"invalid sign string {s!r}") from None

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "PartitionVector":
        # boolean form: 1 <-> +1, 0 <-> -1
        return cls(tuple(1 if b else -1 for b in bits))

    def to_bits(self) -> tuple[int, ...]:
        return tuple(1 if s == 1 else 0 for s in self.signs)

    def to_json(self) -> str:
        return "".join("+" if s == 1 else "-" for s in self.signs)

    def __str__(self) -> str:
        return self.to_json()


@dataclass(frozen=True)
class PartitionVectorSpace:
    """Complete, canonically ordered list of admissible vectors of length n."""

    n: int
    vectors: tuple[PartitionVector, ...]

    @property
    def count(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __getitem__(self, i):
        return self.vectors[i]


def enumerate_pv(n: int) -> PartitionVectorSpace:
    """All admissible vectors of length n, lexicographic with +1 < -1.

    Count is 2^(n-1) - 1: first component pinned to +1 and the all-+1
    vector excluded.
    """
    if n < 2 or n > MAX_PV_LENGTH:
        raise CapacityError(f"n must be in [2, {MAX_PV_LENGTH}], got {n}")
    vectors = []
    for m in range(1, 1 << (n - 1)):
        signs = (1,) + tuple(
            -1 if (m >> (n - 2 - i)) & 1 else 1 for i in range(n - 1)
        )
        vectors.append(PartitionVector(signs))
    return PartitionVectorSpace(n, tuple(vectors))


def signed_sum(p: PartitionVector, omega: NumberSet) -> int:
    """<p, omega> = sum of p_i * alpha_i; zero iff p equally partitions omega."""
    if len(p) != len(omega):
        raise DimensionError(f"vector length {len(p)} != set size {len(omega)}")
    return sum(s * a for s, a in zip(p.signs, omega.values))


def _signs_sum(signs: tuple[int, ...], values: tuple[int, ...]) -> int:
    return sum(s * a for s, a in zip(signs, values))


def _par_of_values(values: tuple[int, ...]) -> int:
    """Traverse the vector space for this length, early exit on a zero sum."""
    n = len(values)
    total = sum(values)
    if total % 2:
        return 0
    # p_1 is pinned +1; try every subset of the remaining positions as -1
    target = total // 2  # sum of the negative part
    rest = values[1:]
    for m in range(1, 1 << (n - 1)):
        neg = 0
        mm = m
        i = 0
        while mm:
            if mm & 1:
                neg += rest[i]
            mm >>= 1
            i += 1
        if neg == target:
            return 1
    return 0


def par_range(omega: NumberSet, m: int) -> int:
    """Partition function with range: 1 iff some admissible vector gives a
    zero signed sum. Defined for N > 2."""
    n = len(omega)
    if n < 3 or n > MAX_PV_LENGTH:
        raise CapacityError(f"N must be in [3, {MAX_PV_LENGTH}], got {n}")
    for a in omega.values:
        if a > m:
            raise RangeError(f"value {a} exceeds range bound {m}")
    return _par_of_values(omega.values)


def par_bits(x: BitArray, k: int, n: int) -> int:
    """Partition function of a bit array of size k*n."""
    if n < 3:
        raise CapacityError(f"n must be >= 3, got {n}")
    omega = cut_bits(x, k, n)
    return par_range(omega, (1 << k) - 1)


def gpar(x: BitArray) -> int:
    """General partition function: cut with k = floor(sqrt(len)), then
    traverse. Collapses to par_bits on perfect-square lengths."""
    _, n, omega = cut_bits_general(x)
    if n < 2:
        raise DomainError("general cutting produced fewer than 2 numbers")
    return _par_of_values(omega.values)


def spar(x: BitArray, k: int, n: int, subset: Iterable[PartitionVector]) -> int:
    """Sub-partition function: traverse only `subset` instead of the full
    vector space."""
    vectors = list(subset)
    if not vectors:
        raise DomainError("subset must be non-empty")
    omega = cut_bits(x, k, n)
    for p in vectors:
        if len(p) != n:
            raise DimensionError("subset vector length mismatch")
        if signed_sum(p, omega) == 0:
            return 1
    return 0


def unique_omega(p: PartitionVector) -> NumberSet:
    """Build the witness group for p: signed sum zero and p the unique
    admissible vector achieving it, every value in [1, 2^N).

    Block construction: reduce p to the canonical J-block vector (global
    negation when +1s exceed floor(N/2), then the permutation moving +1
    positions to the front), emit alpha_1 = 2^N - 2^J - 2^(J-1) + 1,
    alpha_2..alpha_J = 2^(J-2)..1, alpha_(J+1)..alpha_N = 2^(N-1)..2^J,
    then undo the permutation.
    """
    n = len(p)
    if n <= 2:
        raise DomainError("unique witness construction needs N > 2")
    signs = p.signs
    plus = sum(1 for s in signs if s == 1)
    if plus > n // 2:
        signs = tuple(-s for s in signs)
    plus_pos = [i for i, s in enumerate(signs) if s == 1]
    minus_pos = [i for i, s in enumerate(signs) if s == -1]
    j = len(plus_pos)
    canonical = [(1 << n) - (1 << j) - (1 << (j - 1)) + 1]
    canonical += [1 << (j - 2 - t) for t in range(j - 1)]
    canonical += [1 << (n - 1 - t) for t in range(n - j)]
    values = [0] * n
    for idx, pos in enumerate(plus_pos + minus_pos):
        values[pos] = canonical[idx]
    return NumberSet(tuple(values), (1 << n) - 1)


def verify_uniqueness(omega: NumberSet, p: PartitionVector) -> bool:
    """Brute-force oracle: p gives a zero sum and every other admissible
    vector does not."""
    n = len(omega)
    if n > MAX_PV_LENGTH:
        raise CapacityError(f"N must be <= {MAX_PV_LENGTH}, got {n}")
    if len(p) != n:
        raise DimensionError("vector length mismatch")
    if signed_sum(p, omega) != 0:
        return False
    for q in enumerate_pv(n):
        if q != p and _signs_sum(q.signs, omega.values) == 0:
            return False
    return True


@dataclass(frozen=True)
class WitnessChain:
    """Z, W and the cumulative satisfied-input sets W_1 ... W_J over B^(kn)
    for a fixed enumeration order of the vector space."""

    k: int
    n: int
    order: tuple[PartitionVector, ...]
    w_sets: tuple[frozenset[int], ...]
    z_set: frozenset[int]
    w_set: frozenset[int]

    @property
    def strict_flags(self) -> tuple[bool, ...]:
        """strict_flags[j] is True when W_(j+1) \\ W_j is non-empty."""
        return tuple(
            bool(self.w_sets[j + 1] - self.w_sets[j])
            for j in range(len(self.w_sets) - 1)
        )

    @property
    def all_strict(self) -> bool:
        return all(self.strict_flags)

    def report(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "order": [p.to_json() for p in self.order],
            "w_sizes": [len(w) for w in self.w_sets],
            "strict": list(self.strict_flags),
            "all_strict": self.all_strict,
            "z_size": len(self.z_set),
            "w_size": len(self.w_set),
        }


def witness_chain(
    k: int,
    n: int,
    order: Sequence[PartitionVector] | PartitionVectorSpace | None = None,
) -> WitnessChain:
    """Brute-force Z, W and every W_j over the full domain B^(kn)."""
    if k * n > 20:
        raise CapacityError(f"k*n must be <= 20 for full materialization, got {k * n}")
    if order is None:
        order = enumerate_pv(n)
    vectors = tuple(order)
    if not vectors or any(len(p) != n for p in vectors):
        raise DimensionError("order must be a non-empty list of length-n vectors")

    total_points = 1 << (k * n)
    hits: list[set[int]] = [set() for _ in vectors]
    w_all: set[int] = set()
    for v in range(total_points):
        x = BitArray.from_int(v, k * n)
        omega = cut_bits(x, k, n)
        for j, p in enumerate(vectors):
            if _signs_sum(p.signs, omega.values) == 0:
                hits[j].add(v)
                w_all.add(v)
    cumulative: list[frozenset[int]] = []
    acc: set[int] = set()
    for h in hits:
        acc |= h
        cumulative.append(frozenset(acc))
    z = frozenset(range(total_points)) - w_all
    return WitnessChain(
        k=k,
        n=n,
        order=vectors,
        w_sets=tuple(cumulative),
        z_set=z,
        w_set=frozenset(w_all),
    )


def random_pv_order(n: int, seed: int) -> tuple[PartitionVector, ...]:
    """Seeded shuffle of the canonical order, for the any-order experiments."""
    vectors = list(enumerate_pv(n))
    random.Random(seed).shuffle(vectors)
    return tuple(vectors)
