"""Exact minimum-gate-count fitting, proper-sampling-set decisions and
bound audits.

The solver answers: over all fan-in-2 AND/OR circuits with free negations,
what is the smallest gate count d of a circuit agreeing with a sampling
set, and which truth tables do those minimal circuits compute?  Exactness
is the whole point -- proper-sampling-set verdicts quantify over *every*
minimizer, so a heuristic answer would be worthless.

The default backend enumerates circuit topologies level by level up to
canonical equivalence.  A search state is the set of distinct truth tables
available on wires (inputs plus gate outputs so far, each table identified
with its complement since negation is free); adding one gate moves to a
superset state with one more table.  Breadth-first over these states,
everything reachable at level d is exactly what some d-gate circuit can
compute, so the first level containing a table consistent with the samples
gives the minimum, and that level's consistent tables are the complete
minimizer list.  A structurally independent enumerate-by-size oracle
(`fe_solve_naive`) cross-checks the backend on small instances.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .bits import SamplingSet, TruthTable
from .circuit import Circuit, Gate, Wire, CONST0, node_count, truth_table
from .errors import CapacityError, DomainError

MAX_SOLVE_ARITY = 8
DEFAULT_GATE_CAP = 10
DEFAULT_MINIMIZER_CAP = 4096
DEFAULT_STATE_BUDGET = 2_000_000


# ---------------------------------------------------------------------------
# reachability engine


def _input_masks(arity: int) -> list[int]:
    return [
        sum(1 << v for v in range(1 << arity) if (v >> (arity - 1 - i)) & 1)
        for i in range(arity)
    ]


class _ReachEngine:
    """Level-by-level enumeration of truth tables reachable with d gates.

    Tables are stored canonically (the lesser of t and its complement); a
    canonical class is realizable with d gates iff either polarity is.
    States carry the gate sequence that produced them so a witness circuit
    can be replayed later.  Levels are completed in order, so `mcs[c]` is
    the true minimum gate count of class c once its level is done.
    """

    def __init__(self, arity: int, state_budget: int = DEFAULT_STATE_BUDGET):
        self.arity = arity
        self.full = (1 << (1 << arity)) - 1
        self.state_budget = state_budget
        base = sorted(set(min(m, m ^ self.full) for m in _input_masks(arity)))
        self.mcs: dict[int, int] = {0: 0}
        self.seq: dict[int, tuple] = {}
        for c in base:
            self.mcs[c] = 0
        self.by_depth: list[list[int]] = [sorted(self.mcs)]
        self._base = tuple(base)
        # frontier maps state (sorted tuple of classes) -> producing sequence
        self._frontier: Optional[dict[tuple, tuple]] = {self._base: ()}
        self._frontier_depth = 0
        self.levels_done = 0
        self.exhausted = False
        self.nodes = 0

    @property
    def resolved(self) -> bool:
        return len(self.mcs) == 1 << ((1 << self.arity) - 1)

    def ensure_depth(self, depth: int) -> None:
        while self.levels_done < depth and not self.resolved and not self.exhausted:
            if self._frontier is None:
                self.exhausted = True
                return
            if self._frontier_depth < self.levels_done:
                # frontier lags behind (a previous level was streamed
                # without storage); rebuild it before going deeper
                self._expand(store=True)
            else:
                # stream the new level; keep states only if another level
                # could still be requested afterwards
                self._expand(store=depth > self.levels_done + 1)

    def _expand(self, store: bool) -> None:
        full = self.full
        d = self._frontier_depth + 1
        new_level = d > self.levels_done
        new_frontier: dict[tuple, tuple] = {}
        over_budget = False
        for state in sorted(self._frontier):
            seq = self._frontier[state]
            m = len(state)
            for i in range(m):
                a = state[i]
                na = a ^ full
                for j in range(i + 1, m):
                    b = state[j]
                    nb = b ^ full
                    for pa, pb, t in (
                        (1, 1, a & b),
                        (1, 0, a & nb),
                        (0, 1, na & b),
                        (0, 0, na & nb),
                    ):
                        self.nodes += 1
                        c = t if t <= t ^ full else t ^ full
                        if c == 0 or c in state:
                            continue
                        if c not in self.mcs:
                            self.mcs[c] = d
                            self.seq[c] = (seq, (a, pa, b, pb))
                        if store and not over_budget:
                            ns = tuple(sorted(state + (c,)))
                            if ns not in new_frontier:
                                new_frontier[ns] = (seq, (a, pa, b, pb))
                                if len(new_frontier) > self.state_budget:
                                    over_budget = True
        if new_level:
            self.levels_done = d
            self.by_depth.append(sorted(c for c, v in self.mcs.items() if v == d))
        if store and not over_budget:
            self._frontier = new_frontier
            self._frontier_depth = d
        elif over_budget:
            self._frontier = None
        if self.resolved:
            self._frontier = None

    def level_complete(self, depth: int) -> bool:
        return depth <= self.levels_done or self.resolved

    def tables_at(self, depth: int) -> list[int]:
        """All truth tables (both polarities) first realized at `depth`."""
        if depth >= len(self.by_depth):
            return []
        out = []
        for c in self.by_depth[depth]:
            out.append(c)
            out.append(c ^ self.full)
        return sorted(out)

    def witness(self, table: int) -> Circuit:
        full = self.full
        c = table if table <= table ^ full else table ^ full
        if c not in self.mcs:
            raise CapacityError("table outside the explored search space")
        wire_map: dict[int, Wire] = {0: CONST0}
        for i, m in enumerate(_input_masks(self.arity)):
            cm = min(m, m ^ full)
            wire_map.setdefault(cm, Wire("i", i, neg=m != cm))
        gates: list[Gate] = []
        steps: list[tuple] = []
        node = self.seq.get(c)
        while node is not None:
            prev, step = node
            steps.append(step)
            node = prev if prev else None
        for a, pa, b, pb in reversed(steps):
            la = wire_map[a] if pa else wire_map[a].negated()
            rb = wire_map[b] if pb else wire_map[b].negated()
            ta = a if pa else a ^ full
            tb = b if pb else b ^ full
            t = ta & tb
            if la.neg and rb.neg:
                # De Morgan: (not x) and (not y) = not (x or y)
                gates.append(Gate("or", la.negated(), rb.negated()))
                out = Wire("g", len(gates) - 1, True)
            else:
                gates.append(Gate("and", la, rb))
                out = Wire("g", len(gates) - 1)
            cc = t if t <= t ^ full else t ^ full
            if cc not in wire_map:
                wire_map[cc] = out if t == cc else out.negated()
        w = wire_map[c]
        return Circuit(self.arity, tuple(gates), w if table == c else w.negated())


_ENGINES: dict[int, _ReachEngine] = {}


def _engine(arity: int) -> _ReachEngine:
    if arity not in _ENGINES:
        _ENGINES[arity] = _ReachEngine(arity)
    return _ENGINES[arity]


# ---------------------------------------------------------------------------
# report types


@dataclass(frozen=True)
class SearchStats:
    nodes: int
    depth_reached: int
    backend: str = "level-enumeration"


@dataclass(frozen=True)
class BoundAudit:
    """Arithmetic consequences of the sample/gate-count bound statements."""

    n: int
    sample_size: int
    d: int
    thm41_holds: Optional[bool]
    thm42_bound: int
    thm42_degenerate: bool
    pv_length: Optional[int] = None
    lemma56_lower: Optional[int] = None
    eta: Fraction = Fraction(1, 6)
    eta_lower: Optional[int] = None
    general_length_lower: Optional[int] = None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "sample_size": self.sample_size,
            "d": self.d,
            "thm41_holds": self.thm41_holds,
            "thm42_bound": self.thm42_bound,
            "thm42_degenerate": self.thm42_degenerate,
            "pv_length": self.pv_length,
            "lemma56_lower": self.lemma56_lower,
            "eta": str(self.eta),
            "eta_lower": self.eta_lower,
            "general_length_lower": self.general_length_lower,
        }


@dataclass(frozen=True)
class FESolution:
    min_d: Optional[int]
    minimizers: tuple[TruthTable, ...]
    witness_circuit: Optional[Circuit]
    status: str  # "exact" | "budget-exhausted"
    minimizers_exhaustive: bool
    stats: SearchStats
    audit: Optional[BoundAudit] = None

    def to_json(self) -> dict:
        return {
            "min_d": self.min_d,
            "status": self.status,
            "minimizers": [t.to_json() for t in self.minimizers],
            "minimizers_exhaustive": self.minimizers_exhaustive,
            "witness_circuit": (
                self.witness_circuit.to_json() if self.witness_circuit else None
            ),
            "stats": {
                "nodes": self.stats.nodes,
                "depth_reached": self.stats.depth_reached,
                "backend": self.stats.backend,
            },
            "audit": self.audit.to_json() if self.audit else None,
        }


@dataclass(frozen=True)
class PSSReport:
    is_pss: Optional[bool]  # None when indeterminate
    min_d: Optional[int]
    disagreeing_minimizer: Optional[TruthTable]
    semantics: str = "every-minimizer"
    status: str = "exact"

    def to_json(self) -> dict:
        return {
            "is_pss": self.is_pss,
            "min_d": self.min_d,
            "disagreeing_minimizer": (
                self.disagreeing_minimizer.to_json()
                if self.disagreeing_minimizer
                else None
            ),
            "semantics": self.semantics,
            "status": self.status,
        }


@dataclass(frozen=True)
class WitnessRequirementReport:
    """Which parameter vectors have a private satisfied point inside S."""

    k: int
    n: int
    satisfied: tuple[bool, ...]
    missing_indices: tuple[int, ...]

    @property
    def all_met(self) -> bool:
        return not self.missing_indices

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "satisfied": list(self.satisfied),
            "missing_indices": list(self.missing_indices),
            "all_met": self.all_met,
        }


# ---------------------------------------------------------------------------
# fitting extremum


def _sample_masks(sv: SamplingSet) -> tuple[int, int]:
    mp = mv = 0
    for v, bit in sv.points:
        mp |= 1 << v
        if bit:
            mv |= 1 << v
    return mp, mv


def fe_solve(
    sv: SamplingSet,
    gate_cap: int = DEFAULT_GATE_CAP,
    minimizer_cap: int = DEFAULT_MINIMIZER_CAP,
) -> FESolution:
    """Minimize gate count over circuits agreeing with the sampling set.

    Returns the exact minimum and the complete list of minimizer truth
    tables (capped at minimizer_cap with the exhaustive flag cleared), or a
    budget-exhausted result when no fit exists within gate_cap / the state
    budget.  A "no circuit exists" outcome is impossible: every table is
    realizable, so running out of budget is the only failure mode.
    """
    if sv.arity > MAX_SOLVE_ARITY:
        raise CapacityError(f"arity {sv.arity} exceeds solver limit {MAX_SOLVE_ARITY}")
    mp, mv = _sample_masks(sv)
    eng = _engine(sv.arity)
    for d in itertools.count():
        if d > gate_cap:
            break
        eng.ensure_depth(d)
        if not eng.level_complete(d):
            break
        hits = [t for t in eng.tables_at(d) if t & mp == mv]
        if not hits:
            continue
        capped = len(hits) > minimizer_cap
        tables = tuple(TruthTable(sv.arity, t) for t in hits[:minimizer_cap])
        audit = None
        if len(sv) >= 1:
            audit = bound_audit(sv.arity, len(sv), d)
        return FESolution(
            min_d=d,
            minimizers=tables,
            witness_circuit=eng.witness(hits[0]),
            status="exact",
            minimizers_exhaustive=not capped,
            stats=SearchStats(eng.nodes, eng.levels_done),
            audit=audit,
        )
    return FESolution(
        min_d=None,
        minimizers=(),
        witness_circuit=None,
        status="budget-exhausted",
        minimizers_exhaustive=False,
        stats=SearchStats(eng.nodes, eng.levels_done),
    )


def fe_solve_fn(
    points: Iterable[int],
    f: TruthTable,
    gate_cap: int = DEFAULT_GATE_CAP,
    minimizer_cap: int = DEFAULT_MINIMIZER_CAP,
) -> FESolution:
    """fe_solve on the sampling set induced by restricting f to `points`."""
    sv = SamplingSet.from_function(f.arity, points, f)
    return fe_solve(sv, gate_cap=gate_cap, minimizer_cap=minimizer_cap)


def pss_check(
    points: Iterable[int],
    f: TruthTable,
    gate_cap: int = DEFAULT_GATE_CAP,
) -> PSSReport:
    """Decide whether `points` is a proper sampling set of f.

    Proper means every minimal-gate-count circuit fitting the induced
    samples computes f everywhere (the every-minimizer reading).  The
    verdict is definitive only when the solver's level enumeration
    completed; otherwise status is "indeterminate".
    """
    sv = SamplingSet.from_function(f.arity, points, f)
    mp, mv = _sample_masks(sv)
    eng = _engine(f.arity)
    for d in itertools.count():
        if d > gate_cap:
            break
        eng.ensure_depth(d)
        if not eng.level_complete(d):
            break
        found = False
        for t in eng.tables_at(d):
            if t & mp == mv:
                found = True
                if t != f.table:
                    return PSSReport(False, d, TruthTable(f.arity, t))
        if found:
            return PSSReport(True, d, None)
    return PSSReport(None, None, None, status="indeterminate")


def mpss_search(
    f: TruthTable,
    gate_cap: int = DEFAULT_GATE_CAP,
    subset_budget: int = 1 << 20,
) -> tuple[int, tuple[int, ...]]:
    """Smallest point set that is a proper sampling set of f.

    Ascending-size subset enumeration; returns (size, first witness in
    lexicographic order).  The full domain is always proper, so the search
    terminates for any f the solver can range over.
    """
    if f.arity > 4:
        raise CapacityError("minimal-PSS search is limited to arity 4")
    domain = range(1 << f.arity)
    tried = 0
    for size in range(len(domain) + 1):
        for subset in itertools.combinations(domain, size):
            tried += 1
            if tried > subset_budget:
                raise CapacityError("subset budget exhausted before a verdict")
            rep = pss_check(subset, f, gate_cap=gate_cap)
            if rep.is_pss:
                return size, subset
    raise CapacityError("no proper sampling set found (cap too small)")


def pss_from_circuit(
    f: TruthTable,
    c: Circuit,
    gate_cap: int = DEFAULT_GATE_CAP,
) -> tuple[tuple[int, ...], BoundAudit]:
    """Grow a proper sampling set of f by counterexample-guided refinement.

    Starting from the empty set, repeatedly solve the fitting extremum and,
    while some minimizer disagrees with f somewhere, add the lowest-index
    disagreeing point of the first such minimizer.  Each added point
    eliminates at least one offending table, so the loop terminates.  The
    audit compares the final size against three times the gate count of c.
    """
    if truth_table(c).table != f.table:
        raise DomainError("circuit does not express the target function")
    points: list[int] = []
    while True:
        rep = pss_check(points, f, gate_cap=gate_cap)
        if rep.status != "exact":
            raise CapacityError("solver budget exhausted during refinement")
        if rep.is_pss:
            break
        g = rep.disagreeing_minimizer
        diff = g.table ^ f.table
        v = (diff & -diff).bit_length() - 1
        points.append(v)
    d = node_count(c)[0]
    audit = bound_audit(f.arity, len(points), d)
    return tuple(sorted(points)), audit


# ---------------------------------------------------------------------------
# independent oracle


def fe_solve_naive(sv: SamplingSet, gate_cap: int = 6) -> Optional[int]:
    """Minimum gate count by direct enumeration of gate sequences.

    Structurally independent check for fe_solve: depth-first over explicit
    sequences of AND/OR gates (operands are earlier wires with optional
    negation, left index <= right index, the last gate or its negation is
    the output).  The only skips are commutative duplicates, same-operand
    gates and gates recomputing a table already on a wire; none of those
    can be the last resort of a minimal circuit.  Returns None if no fit
    exists within gate_cap.
    """
    full = (1 << (1 << sv.arity)) - 1
    mp, mv = _sample_masks(sv)
    base = _input_masks(sv.arity)
    for t in (0, full, *base):
        if t & mp == mv or (t ^ full) & mp == mv:
            return 0

    def fits_at(depth: int, wires: list[int], seen: set[int]) -> bool:
        m = len(wires)
        for i in range(m):
            a = wires[i]
            for j in range(i + 1, m):
                b = wires[j]
                for la in (a, a ^ full):
                    for rb in (b, b ^ full):
                        for t in (la & rb, la | rb):
                            if t in seen or (t ^ full) in seen:
                                continue
                            if depth == 1:
                                if t & mp == mv or (t ^ full) & mp == mv:
                                    return True
                            else:
                                wires.append(t)
                                seen.add(t)
                                ok = fits_at(depth - 1, wires, seen)
                                seen.discard(t)
                                wires.pop()
                                if ok:
                                    return True
        return False

    for d in range(1, gate_cap + 1):
        seen = set(base) | {t ^ full for t in base}
        if fits_at(d, list(base), seen):
            return d
    return None


# ---------------------------------------------------------------------------
# bound arithmetic and witness requirements


def general_length_lower(length: int, eta: Fraction = Fraction(1, 6)) -> int:
    """Gate-count lower bound implied for the general-length function.

    For input length L the lower bound is eta * 2^floor(sqrt(L)), rounded
    up to the next integer.
    """
    if length < 2:
        raise DomainError("length must be at least 2")
    root = math.isqrt(length)
    return -((-(1 << root) * eta.numerator) // eta.denominator)


def bound_audit(
    n: int,
    sample_size: int,
    d: int,
    pv_length: Optional[int] = None,
) -> BoundAudit:
    """Pure arithmetic report on the sample/gate-count bound statements.

    thm41_holds is None when the sample is empty (the strict inequality
    d < n*|S| is vacuous there); thm42_degenerate flags the useless 3d = 0
    bound.  When a partition-vector length N is given, the report adds the
    implied lower bounds 2^(N-1) on proper-sample size and ceil(2^N / 6)
    on gate count, plus the general-length form at L = N^2.
    """
    eta = Fraction(1, 6)
    thm41 = None if sample_size == 0 else d < n * sample_size
    lemma56 = eta_lower = gen_lower = None
    if pv_length is not None:
        if pv_length < 2:
            raise DomainError("partition-vector length must be at least 2")
        lemma56 = 1 << (pv_length - 1)
        eta_lower = -((-(1 << pv_length) * eta.numerator) // eta.denominator)
        gen_lower = general_length_lower(pv_length * pv_length, eta)
    return BoundAudit(
        n=n,
        sample_size=sample_size,
        d=d,
        thm41_holds=thm41,
        thm42_bound=3 * d,
        thm42_degenerate=d == 0,
        pv_length=pv_length,
        lemma56_lower=lemma56,
        eta=eta,
        eta_lower=eta_lower,
        general_length_lower=gen_lower,
    )


def witness_requirement_check(
    points: Iterable[int],
    plist,
    k: int,
    n: int,
) -> WitnessRequirementReport:
    """Check the private-witness necessary condition on a candidate set.

    For every parameter vector p_i in plist there must be a point x in the
    set with phi(x, p_i) = 1 and phi(x, p_j) = 0 for every other j; a
    proper sampling set of the sub-partition function over plist cannot do
    without one.  Reports, per index, whether such a point was found.
    """
    from .paramfn import phi_partition

    if k * n > 20:
        raise CapacityError("k*n above brute-force limit 20")
    phi = phi_partition(k, n)
    vectors = list(plist.entries) if hasattr(plist, "entries") else list(plist)
    pts = sorted(set(points))
    arity = k * n
    sat = []
    for i, _ in enumerate(vectors):
        ok = False
        for v in pts:
            x = [(v >> (arity - 1 - t)) & 1 for t in range(arity)]
            if phi(x, vectors[i]) != 1:
                continue
            if all(
                phi(x, q) == 0 for j, q in enumerate(vectors) if j != i
            ):
                ok = True
                break
        sat.append(ok)
    missing = tuple(i for i, s in enumerate(sat) if not s)
    return WitnessRequirementReport(k, n, tuple(sat), missing)
