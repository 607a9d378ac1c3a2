"""Boolean functions with parameters and the trial operator.

A parametric function maps (input point, parameter vector) to a bit; trying
it against a list of parameter vectors ORs the outcomes, which is how the
partition function decomposes into per-vector checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .bits import BitArray, cut_bits
from .errors import DimensionError, DomainError


@dataclass(frozen=True)
class ParamBoolFn:
    """Pure evaluable map (x in B^input_arity, p in B^param_arity) -> bit."""

    input_arity: int
    param_arity: int
    eval_fn: Callable[[tuple[int, ...], tuple[int, ...]], int]
    name: str = "anonymous"

    def __call__(self, x: Sequence[int] | BitArray, p: Sequence[int] | BitArray) -> int:
        x = _as_bits(x, self.input_arity, "input")
        p = _as_bits(p, self.param_arity, "parameter")
        return self.eval_fn(x, p)


def _as_bits(v, arity: int, what: str) -> tuple[int, ...]:
    if isinstance(v, BitArray):
        v = v.bits
    v = tuple(v)
    if len(v) != arity:
        raise DimensionError(f"{what} arity {len(v)} != {arity}")
    if any(b not in (0, 1) for b in v):
        raise DomainError(f"{what} must be binary")
    return v


@dataclass(frozen=True)
class ParameterList:
    """Ordered list of parameter vectors; duplicates are legal but flagged."""

    param_arity: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for e in self.entries:
            if len(e) != self.param_arity:
                raise DimensionError("entry arity mismatch")
            if any(b not in (0, 1) for b in e):
                raise DomainError("entries must be binary")

    @property
    def has_duplicates(self) -> bool:
        return len(set(self.entries)) != len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def to_json(self) -> dict:
        return {
            "param_arity": self.param_arity,
            "entries": ["".join(str(b) for b in e) for e in self.entries],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "ParameterList":
        return cls(
            obj["param_arity"],
            tuple(tuple(int(c) for c in e) for e in obj["entries"]),
        )

    @classmethod
    def from_vectors(cls, vectors: Iterable) -> "ParameterList":
        entries = []
        for v in vectors:
            bits = v.to_bits() if hasattr(v, "to_bits") else tuple(v)
            entries.append(bits)
        if not entries:
            raise DomainError("empty vector list has no arity")
        return cls(len(entries[0]), tuple(entries))


def trial(phi: ParamBoolFn, plist: ParameterList, x: Sequence[int] | BitArray) -> int:
    """phi tried with plist: 1 iff some entry succeeds. Entries are tried in
    order with early exit; the result is order-independent."""
    if plist.param_arity != phi.param_arity:
        raise DimensionError("parameter arity mismatch")
    x = _as_bits(x, phi.input_arity, "input")
    for p in plist.entries:
        if phi.eval_fn(x, p):
            return 1
    return 0


def phi_partition(k: int, n: int) -> ParamBoolFn:
    """The partition check for one parameter vector: eval(x, p) = 1 iff the
    signed sum of the numbers cut from x vanishes, with p read as a sign
    vector under 1 <-> +1, 0 <-> -1.

    Parameter vectors outside the admissible space (first bit 0, or all
    ones) are evaluated by the same literal formula; the function is total
    on B^(kn) x B^n.
    """
    if k < 1 or n < 3:
        raise DomainError("phi_partition needs k >= 1 and n >= 3")

    def eval_fn(x: tuple[int, ...], p: tuple[int, ...]) -> int:
        omega = cut_bits(BitArray(x), k, n)
        s = 0
        for b, a in zip(p, omega.values):
            s += a if b else -a
        return 1 if s == 0 else 0

    return ParamBoolFn(k * n, n, eval_fn, name=f"phi_partition[{k},{n}]")


def switchable_gate(base: str) -> ParamBoolFn:
    """Two-input gate with per-input pass/negate switches: the input is
    negated when its switch parameter is 0."""
    if base not in ("and", "or"):
        raise DomainError(f"base must be 'and' or 'or', got {base!r}")

    def eval_fn(x: tuple[int, ...], p: tuple[int, ...]) -> int:
        a = x[0] if p[0] else 1 - x[0]
        b = x[1] if p[1] else 1 - x[1]
        return (a & b) if base == "and" else (a | b)

    return ParamBoolFn(2, 2, eval_fn, name=f"switchable_{base}")
