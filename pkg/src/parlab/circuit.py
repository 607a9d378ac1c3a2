"""Fan-in-2 AND/OR circuits with free negation on wires.

Gate count d(C) counts AND/OR gates only; negations and constants are wire
attributes and cost nothing. d'(C) adds the number of negation flags set.
Builders produce ripple-carry adders, sign-magnitude subtractors,
comparators, zero tests, the per-vector partition check circuit, structure
indicators, parametric unions, and the sub-partition disjunction.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence

from .bits import BitArray, TruthTable, encode_numbers
from .errors import CapacityError, DimensionError, DomainError
from .partition import PartitionVector


class Wire(NamedTuple):
    """Reference to an input ('i'), gate ('g'), constant ('c') or parameter
    slot ('p'), plus a negation flag."""

    kind: str
    idx: int
    neg: bool = False

    def negated(self) -> "Wire":
        if self.kind == "c":
            return Wire("c", 1 - self.idx, False)
        return Wire(self.kind, self.idx, not self.neg)

    def key(self) -> str:
        if self.kind == "c":
            return f"c{self.idx}"
        return f"{self.kind}{self.idx}"


class Gate(NamedTuple):
    op: str  # "and" | "or"
    left: Wire
    right: Wire


CONST0 = Wire("c", 0)
CONST1 = Wire("c", 1)


def _check_wire(w: Wire, arity: int, n_gates: int, param_arity: int = 0) -> None:
    if w.kind == "i":
        if not 0 <= w.idx < arity:
            raise DimensionError(f"input wire {w.idx} outside arity {arity}")
    elif w.kind == "g":
        if not 0 <= w.idx < n_gates:
            raise DomainError(f"gate wire {w.idx} out of order")
    elif w.kind == "c":
        if w.idx not in (0, 1) or w.neg:
            raise DomainError("constants are c0/c1 with no negation flag")
    elif w.kind == "p":
        if not 0 <= w.idx < param_arity:
            raise DimensionError(f"parameter slot {w.idx} outside {param_arity}")
    else:
        raise DomainError(f"unknown wire kind {w.kind!r}")


@dataclass(frozen=True)
class Circuit:
    """Topologically ordered gate list with a single output wire."""

    arity: int
    gates: tuple[Gate, ...]
    output: Wire

    def __post_init__(self):
        for i, g in enumerate(self.gates):
            if g.op not in ("and", "or"):
                raise DomainError(f"bad gate op {g.op!r}")
            _check_wire(g.left, self.arity, i)
            _check_wire(g.right, self.arity, i)
        _check_wire(self.output, self.arity, len(self.gates))

    def to_json(self) -> dict:
        def wj(w: Wire):
            return w.key()

        return {
            "arity": self.arity,
            "gates": [
                {
                    "op": g.op,
                    "l": wj(g.left),
                    "ln": g.left.neg,
                    "r": wj(g.right),
                    "rn": g.right.neg,
                }
                for g in self.gates
            ],
            "out": wj(self.output),
            "outn": self.output.neg,
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "Circuit":
        def wire(key: str, neg: bool) -> Wire:
            kind, idx = key[0], int(key[1:])
            return Wire(kind, idx, bool(neg))

        gates = tuple(
            Gate(g["op"], wire(g["l"], g.get("ln", False)), wire(g["r"], g.get("rn", False)))
            for g in obj["gates"]
        )
        return cls(obj["arity"], gates, wire(obj["out"], obj.get("outn", False)))


@dataclass(frozen=True)
class CircuitBundle:
    """Shared-input circuit collection with named output wires."""

    arity: int
    gates: tuple[Gate, ...]
    outputs: dict[str, Wire]

    def circuit_for(self, name: str) -> Circuit:
        return Circuit(self.arity, self.gates, self.outputs[name])


@dataclass(frozen=True)
class ParametricCircuit:
    """Circuit whose constant slots are parameter placeholders o_1..o_J."""

    arity: int
    param_arity: int
    gates: tuple[Gate, ...]
    output: Wire

    def instantiate(self, p: Sequence[int]) -> Circuit:
        """Structural substitution of the slots with the bits of p; no
        simplification is performed."""
        if len(p) != self.param_arity:
            raise DimensionError("parameter arity mismatch")

        def sub(w: Wire) -> Wire:
            if w.kind != "p":
                return w
            bit = p[w.idx]
            if w.neg:
                bit = 1 - bit
            return CONST1 if bit else CONST0

        gates = tuple(Gate(g.op, sub(g.left), sub(g.right)) for g in self.gates)
        return Circuit(self.arity, gates, sub(self.output))

    def eval(self, x: Sequence[int] | BitArray, p: Sequence[int]) -> int:
        return eval_circuit(self.instantiate(p), x)


def _wire_value(w: Wire, inputs: Sequence[int], gate_vals: list[int]) -> int:
    if w.kind == "i":
        v = inputs[w.idx]
    elif w.kind == "g":
        v = gate_vals[w.idx]
    elif w.kind == "c":
        v = w.idx
    else:
        raise DomainError("parametric wire in a plain evaluation")
    return (1 - v) if w.neg else v


def eval_circuit(c: Circuit, x: Sequence[int] | BitArray) -> int:
    """Standard DAG evaluation of a single point."""
    if isinstance(x, BitArray):
        x = x.bits
    if len(x) != c.arity:
        raise DimensionError(f"point arity {len(x)} != {c.arity}")
    gate_vals: list[int] = []
    for g in c.gates:
        a = _wire_value(g.left, x, gate_vals)
        b = _wire_value(g.right, x, gate_vals)
        gate_vals.append(a & b if g.op == "and" else a | b)
    return _wire_value(c.output, x, gate_vals)


def _input_masks(arity: int) -> list[int]:
    # mask over all 2^arity points: input i is the (arity-1-i)-th bit of the
    # point value (big-endian string convention)
    masks = []
    for i in range(arity):
        m = 0
        for v in range(1 << arity):
            if (v >> (arity - 1 - i)) & 1:
                m |= 1 << v
        masks.append(m)
    return masks


def truth_table(c: Circuit) -> TruthTable:
    """Bit-parallel evaluation over the full domain."""
    if c.arity > 20:
        raise CapacityError("full-table evaluation capped at arity 20")
    full = (1 << (1 << c.arity)) - 1
    inputs = _input_masks(c.arity)

    def val(w: Wire, gate_vals: list[int]) -> int:
        if w.kind == "i":
            v = inputs[w.idx]
        elif w.kind == "g":
            v = gate_vals[w.idx]
        else:
            v = full if w.idx else 0
        return (v ^ full) if w.neg else v

    gate_vals: list[int] = []
    for g in c.gates:
        a, b = val(g.left, gate_vals), val(g.right, gate_vals)
        gate_vals.append(a & b if g.op == "and" else a | b)
    return TruthTable(c.arity, val(c.output, gate_vals))


def node_count(c: Circuit | CircuitBundle | ParametricCircuit) -> tuple[int, int]:
    """(d, d') where d counts gates and d' adds set negation flags."""
    d = len(c.gates)
    negs = sum(int(g.left.neg) + int(g.right.neg) for g in c.gates)
    if isinstance(c, CircuitBundle):
        negs += sum(int(w.neg) for w in c.outputs.values())
    else:
        negs += int(c.output.neg)
    return d, d + negs


class Builder:
    """Appends gates with deterministic constant/identity folding.

    Folding keeps the constructed circuits free of degenerate gates so the
    advertised gate counts are reproducible; it never rewrites an existing
    gate.
    """

    def __init__(self, arity: int, param_arity: int = 0):
        self.arity = arity
        self.param_arity = param_arity
        self.gates: list[Gate] = []

    def inp(self, i: int) -> Wire:
        return Wire("i", i)

    def slot(self, j: int) -> Wire:
        return Wire("p", j)

    def gate(self, op: str, a: Wire, b: Wire) -> Wire:
        unit, zero = (CONST1, CONST0) if op == "and" else (CONST0, CONST1)
        if a == zero or b == zero:
            return zero
        if a == unit:
            return b
        if b == unit:
            return a
        if a == b:
            return a
        if a == b.negated():
            return zero
        self.gates.append(Gate(op, a, b))
        return Wire("g", len(self.gates) - 1)

    def and_(self, a: Wire, b: Wire) -> Wire:
        return self.gate("and", a, b)

    def or_(self, a: Wire, b: Wire) -> Wire:
        return self.gate("or", a, b)

    def xor(self, a: Wire, b: Wire) -> Wire:
        # fixed 3-gate expansion (a|b) & (!a|!b)
        return self.and_(self.or_(a, b), self.or_(a.negated(), b.negated()))

    def and_chain(self, wires: Sequence[Wire]) -> Wire:
        acc = wires[0]
        for w in wires[1:]:
            acc = self.and_(acc, w)
        return acc

    def or_chain(self, wires: Sequence[Wire]) -> Wire:
        acc = wires[0]
        for w in wires[1:]:
            acc = self.or_(acc, w)
        return acc

    def mux(self, sel: Wire, when1: Wire, when0: Wire) -> Wire:
        return self.or_(self.and_(sel, when1), self.and_(sel.negated(), when0))

    def ripple_add(self, xs: list[Wire], ys: list[Wire], carry_in: Wire = CONST0) -> list[Wire]:
        """LSB-first addition of two equal-width wire vectors; returns
        width+1 result bits LSB-first."""
        assert len(xs) == len(ys)
        zs = []
        t = carry_in
        for a, b in zip(xs, ys):
            zs.append(self.xor(self.xor(a, b), t))
            t = self.or_chain([self.and_(a, b), self.and_(a, t), self.and_(b, t)])
        zs.append(t)
        return zs

    def ge(self, xs: list[Wire], ys: list[Wire]) -> Wire:
        """[x >= y] for LSB-first equal-width vectors."""
        assert len(xs) == len(ys)
        acc = CONST1  # equality of the empty suffix
        for a, b in zip(xs, ys):  # LSB to MSB
            gt = self.and_(a, b.negated())
            eq = self.xor(a, b).negated()
            acc = self.or_(gt, self.and_(eq, acc))
        return acc

    def subtract(self, xs: list[Wire], ys: list[Wire]) -> tuple[Wire, list[Wire]]:
        """Sign-magnitude subtraction x - y via complement addition:
        x + ~y + 1 when x >= y, else ~x + y + 1 with sign 1. Returns
        (sign, magnitude LSB-first, same width)."""
        g = self.ge(xs, ys)
        a = self.ripple_add(xs, [y.negated() for y in ys], CONST1)[: len(xs)]
        b = self.ripple_add([x.negated() for x in xs], ys, CONST1)[: len(xs)]
        mag = [self.mux(g, ai, bi) for ai, bi in zip(a, b)]
        return g.negated(), mag


def _number_inputs(b: Builder, offset: int, k: int) -> list[Wire]:
    # big-endian input block at `offset` -> LSB-first wire list
    return [b.inp(offset + k - 1 - j) for j in range(k)]


def build_adder(k: int) -> CircuitBundle:
    """Ripple-carry adder over 2k inputs (x then y, big-endian); outputs
    z0..zk and carries t0..t(k-1)."""
    if k < 1:
        raise DomainError("k must be >= 1")
    b = Builder(2 * k)
    xs = _number_inputs(b, 0, k)
    ys = _number_inputs(b, k, k)
    zs = []
    t: Wire | None = None
    outputs: dict[str, Wire] = {}
    for j in range(k):
        if t is None:
            zs.append(b.xor(xs[j], ys[j]))
            t = b.and_(xs[j], ys[j])
        else:
            zs.append(b.xor(b.xor(xs[j], ys[j]), t))
            t = b.or_chain(
                [b.and_(xs[j], ys[j]), b.and_(xs[j], t), b.and_(ys[j], t)]
            )
        outputs[f"z{j}"] = zs[j]
        outputs[f"t{j}"] = t
    outputs[f"z{k}"] = t
    return CircuitBundle(2 * k, tuple(b.gates), outputs)


def build_subtractor(k: int) -> CircuitBundle:
    """Sign-magnitude subtractor over 2k inputs; outputs z0..z(k-1)
    (magnitude) and zk (sign, 1 when x < y)."""
    if k < 1:
        raise DomainError("k must be >= 1")
    b = Builder(2 * k)
    xs = _number_inputs(b, 0, k)
    ys = _number_inputs(b, k, k)
    sign, mag = b.subtract(xs, ys)
    outputs = {f"z{j}": mag[j] for j in range(k)}
    outputs[f"z{k}"] = sign
    return CircuitBundle(2 * k, tuple(b.gates), outputs)


def build_ge(k: int) -> Circuit:
    """Comparator [x >= y] over 2k inputs (x then y, big-endian)."""
    if k < 1:
        raise DomainError("k must be >= 1")
    b = Builder(2 * k)
    xs = _number_inputs(b, 0, k)
    ys = _number_inputs(b, k, k)
    out = b.ge(xs, ys)
    return Circuit(2 * k, tuple(b.gates), out)


def build_zero_test(l: int) -> Circuit:
    """Conjunction of negated inputs; l - 1 gates."""
    if l < 1:
        raise DomainError("l must be >= 1")
    b = Builder(l)
    out = b.and_chain([b.inp(i).negated() for i in range(l)])
    return Circuit(l, tuple(b.gates), out)


def _signed_accumulator(
    b: Builder, p: PartitionVector, k: int, n: int
) -> tuple[Wire, list[Wire]]:
    """Chain of n-1 additions/subtractions selected by the signs of p over a
    sign-magnitude accumulator that widens one bit per stage."""
    sign: Wire = CONST0
    mag = _number_inputs(b, 0, k)
    for i in range(1, n):
        a = _number_inputs(b, i * k, k)
        a_ext = a + [CONST0] * (len(mag) - k)
        add_bits = b.ripple_add(mag, a_ext)  # width w+1
        sub_sign, sub_mag = b.subtract(mag, a_ext)
        sub_bits = sub_mag + [CONST0]  # width w+1
        # magnitudes add when the accumulator sign matches the operand sign,
        # otherwise they subtract and the sign follows the larger magnitude
        if p.signs[i] == 1:
            same = sign.negated()
            add_sign: Wire = CONST0
            diff_sign = sub_sign.negated()  # diff branch has sign = 1
        else:
            same = sign
            add_sign = CONST1
            diff_sign = sub_sign  # diff branch has sign = 0
        mag = [b.mux(same, ai, si) for ai, si in zip(add_bits, sub_bits)]
        sign = b.mux(same, add_sign, diff_sign)
    return sign, mag


def build_phi_circuit(p: PartitionVector, k: int, n: int) -> Circuit:
    """Circuit computing the one-vector partition check: the signed sum of
    the numbers cut from the input, then a zero test on the k+n-1 result
    bits. Gate count is O(k*n + n^2)."""
    if len(p) != n:
        raise DimensionError("vector length mismatch")
    if k * n > 64:
        raise CapacityError("phi circuits capped at 64 inputs")
    b = Builder(k * n)
    _, mag = _signed_accumulator(b, p, k, n)
    out = b.and_chain([w.negated() for w in mag])
    return Circuit(k * n, tuple(b.gates), out)


def build_indicator(q: Sequence[int]) -> ParametricCircuit:
    """Equality detector on the parameter slots: instantiated at p it is 1
    iff p equals the structure indicator q."""
    q = tuple(q)
    if len(q) < 1:
        raise DomainError("indicator needs at least one bit")
    b = Builder(0, param_arity=len(q))
    lits = [b.slot(j) if bit else b.slot(j).negated() for j, bit in enumerate(q)]
    out = b.and_chain(lits)
    return ParametricCircuit(0, len(q), tuple(b.gates), out)


def _append_subcircuit(b: Builder, c: Circuit) -> Wire:
    """Copy a plain circuit's gates into the builder, remapping gate ids."""
    if c.arity != b.arity:
        raise DimensionError("member circuits must share the input arity")
    offset_map: dict[int, Wire] = {}

    def remap(w: Wire) -> Wire:
        if w.kind == "g":
            base = offset_map[w.idx]
            return base.negated() if w.neg else base
        return w

    for i, g in enumerate(c.gates):
        offset_map[i] = b.gate(g.op, remap(g.left), remap(g.right))
    return remap(c.output)


def build_parametric_union(members: Sequence[tuple[Sequence[int], Circuit]]) -> ParametricCircuit:
    """V(p) = OR over members of (C_q AND [p = q]); instantiated at a listed
    q it is pointwise C_q, and constant 0 at any unlisted p."""
    if not members:
        raise DomainError("union needs at least one member")
    qs = [tuple(q) for q, _ in members]
    if len(set(qs)) != len(qs):
        raise DomainError("duplicate structure indicators")
    param_arity = len(qs[0])
    arity = members[0][1].arity
    b = Builder(arity, param_arity=param_arity)
    terms = []
    for q, c in members:
        if len(q) != param_arity:
            raise DimensionError("structure indicators must share arity")
        c_out = _append_subcircuit(b, c)
        lits = [b.slot(j) if bit else b.slot(j).negated() for j, bit in enumerate(q)]
        terms.append(b.and_(c_out, b.and_chain(lits)))
    out = b.or_chain(terms)
    return ParametricCircuit(arity, param_arity, tuple(b.gates), out)


def build_subpartition_circuit(
    plist: Sequence[PartitionVector], k: int, n: int
) -> Circuit:
    """Disjunction of the per-vector partition checks; pointwise equal to
    the sub-partition function over plist."""
    if k * n > 20:
        raise CapacityError("sub-partition circuits capped at 20 inputs for verification")
    if not plist:
        warnings.warn("empty vector list: returning the constant-0 circuit")
        return Circuit(k * n, (), CONST0)
    b = Builder(k * n)
    outs = [_append_subcircuit(b, build_phi_circuit(p, k, n)) for p in plist]
    out = b.or_chain(outs)
    return Circuit(k * n, tuple(b.gates), out)


def canonical_encode(c: Circuit | CircuitBundle) -> str:
    """Deterministic structural serialization: commutative operands are
    ordered, unreachable gates ignored. Equal strings iff the reachable DAG
    shapes match. Intended for small circuits (expression sharing is
    expanded)."""
    memo: dict[int, str] = {}

    def enc(w: Wire) -> str:
        if w.kind == "g":
            g = c.gates[w.idx]
            if w.idx not in memo:
                a, b = enc(g.left), enc(g.right)
                if b < a:
                    a, b = b, a
                memo[w.idx] = f"{g.op}({a},{b})"
            body = memo[w.idx]
        else:
            body = w.key()
        return f"!{body}" if w.neg else body

    if isinstance(c, CircuitBundle):
        parts = [f"{name}={enc(w)}" for name, w in sorted(c.outputs.items())]
        return f"bundle[{c.arity}]:" + ";".join(parts)
    return f"circuit[{c.arity}]:" + enc(c.output)


def circuit_to_file(c: Circuit, path) -> None:
    with open(path, "w") as fh:
        json.dump(c.to_json(), fh, indent=2, sort_keys=True)


def circuit_from_file(path) -> Circuit:
    with open(path) as fh:
        return Circuit.from_json(json.load(fh))


def xor_circuit() -> Circuit:
    """(x|y) & (!x|!y), the fixed XOR expansion, as a standalone 2-input circuit."""
    b = Builder(2)
    out = b.xor(b.inp(0), b.inp(1))
    return Circuit(2, tuple(b.gates), out)


def phi_input_for_numbers(values: Iterable[int], k: int) -> BitArray:
    """Encode a number group as the bit-array input of the phi circuits."""
    return encode_numbers(values, k)
