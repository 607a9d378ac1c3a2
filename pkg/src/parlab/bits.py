"""Foundational value types: bit arrays, number sets, truth tables, sampling sets.

Bit strings are read big-endian (most significant bit first) everywhere.
A point of arity n is interchangeably an n-character "0"/"1" string or the
integer it denotes; truth tables index their entries by that integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .errors import CapacityError, DimensionError, DomainError, RangeError

MAX_BITARRAY_LEN = 1 << 20
MAX_TABLE_ARITY = 20


def _check_bit(b: int) -> int:
    if b not in (0, 1):
        raise DomainError(f"bit must be 0 or 1, got {b!r}")
    return b


@dataclass(frozen=True)
class BitArray:
    """Immutable ordered string of bits."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= len(self.bits) <= MAX_BITARRAY_LEN:
            raise CapacityError(f"bit array length {len(self.bits)} out of range")
        for b in self.bits:
            _check_bit(b)

    @classmethod
    def from_string(cls, s: str) -> "BitArray":
        try:
            return cls(tuple(int(c) for c in s))
        except ValueError:
            raise DomainError(f"invalid bit string {s!r}") from None

    @classmethod
    def from_int(cls, value: int, length: int) -> "BitArray":
        if value < 0 or value >> length:
            raise DomainError(f"{value} does not fit in {length} bits")
        return cls(tuple((value >> (length - 1 - i)) & 1 for i in range(length)))

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)

    def to_int(self) -> int:
        v = 0
        for b in self.bits:
            v = (v << 1) | b
        return v

    def to_json(self) -> str:
        return str(self)


@dataclass(frozen=True)
class NumberSet:
    """Ordered list of non-negative integers with a declared range bound.

    Order is significant: position i pairs with the i-th partition vector
    component. Multiset semantics come from the partition operations, not
    from this container.
    """

    values: tuple[int, ...]
    range_bound: int

    def __post_init__(self):
        if len(self.values) < 1:
            raise DimensionError("a number set needs at least one value")
        for a in self.values:
            if not 0 <= a <= self.range_bound:
                raise DomainError(
                    f"value {a} outside [0, {self.range_bound}]"
                )

    def __len__(self) -> int:
        return len(self.values)

    def to_json(self) -> dict:
        return {"values": list(self.values), "range_bound": self.range_bound}

    @classmethod
    def from_json(cls, obj: Mapping) -> "NumberSet":
        return cls(tuple(obj["values"]), obj["range_bound"])


@dataclass(frozen=True)
class TruthTable:
    """Complete boolean function of `arity` inputs, bit-packed.

    `table` holds the 2^arity output bits as an int: bit i is the output at
    the point whose big-endian value is i.
    """

    arity: int
    table: int

    def __post_init__(self):
        if self.arity > MAX_TABLE_ARITY:
            raise CapacityError(f"arity {self.arity} exceeds cap {MAX_TABLE_ARITY}")
        if self.arity < 0:
            raise DomainError("negative arity")
        if self.table < 0 or self.table >> (1 << self.arity):
            raise DomainError("table does not fit 2^arity bits")

    def __getitem__(self, point: int) -> int:
        return (self.table >> point) & 1

    def value_at(self, x: BitArray) -> int:
        if len(x) != self.arity:
            raise DimensionError("point arity mismatch")
        return self[x.to_int()]

    @property
    def size(self) -> int:
        return 1 << self.arity

    def to_json(self) -> dict:
        nbytes = max(1, (self.size + 7) // 8)
        raw = bytes((self.table >> (8 * j)) & 0xFF for j in range(nbytes))
        return {"arity": self.arity, "table": raw.hex()}

    @classmethod
    def from_json(cls, obj: Mapping) -> "TruthTable":
        raw = bytes.fromhex(obj["table"])
        table = sum(b << (8 * j) for j, b in enumerate(raw))
        arity = obj["arity"]
        table &= (1 << (1 << arity)) - 1
        return cls(arity, table)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "TruthTable":
        bits = list(bits)
        n = len(bits).bit_length() - 1
        if 1 << n != len(bits):
            raise DimensionError("table length must be a power of two")
        return cls(n, sum(_check_bit(b) << i for i, b in enumerate(bits)))


@dataclass(frozen=True)
class SamplingSet:
    """Set of (input point, assigned bit) pairs over B^arity."""

    arity: int
    points: frozenset[tuple[int, int]]

    def __post_init__(self):
        seen = set()
        for v, b in self.points:
            if not 0 <= v < (1 << self.arity):
                raise DomainError(f"point {v} outside B^{self.arity}")
            _check_bit(b)
            if v in seen:
                raise DomainError(f"point {v} assigned twice")
            seen.add(v)

    def __len__(self) -> int:
        return len(self.points)

    @classmethod
    def from_pairs(cls, arity: int, pairs: Iterable[tuple[int | str | BitArray, int]]) -> "SamplingSet":
        norm = []
        for x, b in pairs:
            if isinstance(x, str):
                x = BitArray.from_string(x)
            if isinstance(x, BitArray):
                if len(x) != arity:
                    raise DimensionError("point length mismatch")
                x = x.to_int()
            norm.append((x, b))
        return cls(arity, frozenset(norm))

    @classmethod
    def from_function(cls, arity: int, points: Iterable[int], f: TruthTable) -> "SamplingSet":
        return cls(arity, frozenset((v, f[v]) for v in points))

    def to_json(self) -> dict:
        pts = sorted(self.points)
        return {
            "arity": self.arity,
            "points": [
                {"x": str(BitArray.from_int(v, self.arity)), "v": b} for v, b in pts
            ],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "SamplingSet":
        return cls.from_pairs(obj["arity"], [(p["x"], p["v"]) for p in obj["points"]])


def cut_bits(x: BitArray, k: int, n: int) -> NumberSet:
    """Cut x, left to right, into n big-endian k-bit numbers."""
    if k < 1 or n < 1:
        raise DomainError("k and n must be positive")
    if len(x) != k * n:
        raise DimensionError(f"length {len(x)} != {k}*{n}")
    vals = []
    for i in range(n):
        v = 0
        for b in x.bits[i * k : (i + 1) * k]:
            v = (v << 1) | b
        vals.append(v)
    return NumberSet(tuple(vals), (1 << k) - 1)


def cut_bits_general(x: BitArray) -> tuple[int, int, NumberSet]:
    """General cutting rule: k = floor(sqrt(l)); a short trailing number is
    kept when k does not divide l. Returns (k, n, numbers)."""
    l = len(x)
    if l <= 2:
        raise DomainError("general cutting needs length > 2")
    k = int(l**0.5)
    while (k + 1) * (k + 1) <= l:  # guard float rounding
        k += 1
    while k * k > l:
        k -= 1
    n_full = l // k
    if k * n_full == l:
        return k, n_full, cut_bits(x, k, n_full)
    vals = list(cut_bits(BitArray(x.bits[: k * n_full]), k, n_full).values)
    tail = 0
    for b in x.bits[k * n_full :]:
        tail = (tail << 1) | b
    vals.append(tail)
    return k, n_full + 1, NumberSet(tuple(vals), (1 << k) - 1)


def table_from_evaluator(arity: int, eval_fn: Callable[[BitArray], int]) -> TruthTable:
    """Tabulate a point -> bit map. Deterministic, arity capped at 20."""
    if arity > MAX_TABLE_ARITY:
        raise CapacityError(f"arity {arity} exceeds cap {MAX_TABLE_ARITY}")
    table = 0
    for v in range(1 << arity):
        if _check_bit(eval_fn(BitArray.from_int(v, arity))):
            table |= 1 << v
    return TruthTable(arity, table)


def encode_numbers(values: Iterable[int], k: int) -> BitArray:
    """Concatenate k-bit big-endian encodings; inverse of cut_bits."""
    bits: list[int] = []
    for v in values:
        if v < 0 or v >> k:
            raise RangeError(f"{v} does not fit in {k} bits")
        bits.extend((v >> (k - 1 - i)) & 1 for i in range(k))
    return BitArray(tuple(bits))
