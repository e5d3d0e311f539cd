"""Incompletely specified generalized Mealy machines."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace
from typing import NamedTuple, Sequence

from .boolset import PropSet, ValuationSet, cube_to_set, disjoint_cube_cover, first_cube


class Edge(NamedTuple):
    target: int
    out: ValuationSet


class PropositionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Igmm:
    """Input-deterministic transducer with set-valued, partial outputs.

    ``table[q][i]`` is ``None`` when ``delta(q, i)`` is undefined, in which
    case the output is implicitly the full set.
    """

    inputs: PropSet
    outputs: PropSet
    table: tuple[tuple[Edge | None, ...], ...]
    init: int = 0
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        table = tuple(tuple(row) for row in self.table)
        object.__setattr__(self, "table", table)
        n = len(table)
        if n == 0:
            raise ValueError("a machine needs at least one state")
        if not 0 <= self.init < n:
            raise ValueError(f"initial state {self.init} out of range")
        n_in = self.inputs.n_valuations
        k_out = self.outputs.arity
        for q, row in enumerate(table):
            if len(row) != n_in:
                raise ValueError(f"state {q} has {len(row)} entries, expected {n_in}")
            for i, e in enumerate(row):
                if e is None:
                    continue
                if not 0 <= e.target < n:
                    raise ValueError(f"delta({q}, {i}) = {e.target} out of range")
                if e.out.arity != k_out:
                    raise ValueError(f"lambda({q}, {i}) has arity {e.out.arity}")
                if e.out.is_empty():
                    raise ValueError(f"lambda({q}, {i}) is empty")
        if self.names is None:
            object.__setattr__(self, "names", tuple(str(q) for q in range(n)))
        else:
            names = tuple(self.names)
            if len(names) != n or len(set(names)) != n:
                raise ValueError("state names must be unique, one per state")
            object.__setattr__(self, "names", names)

    @property
    def n_states(self) -> int:
        return len(self.table)

    @property
    def n_inputs(self) -> int:
        return self.inputs.n_valuations

    def delta(self, q: int, i: int) -> int | None:
        e = self.table[q][i]
        return None if e is None else e.target

    def output(self, q: int, i: int) -> ValuationSet:
        """``lambda(q, i)``; the full set where the transition is undefined."""
        if not 0 <= q < self.n_states or not 0 <= i < self.n_inputs:
            raise IndexError(f"({q}, {i}) out of range")
        e = self.table[q][i]
        if e is None:
            return ValuationSet.full(self.outputs.arity)
        return e.out

    def top(self) -> ValuationSet:
        return ValuationSet.full(self.outputs.arity)

    def state_index(self, name: str) -> int:
        return self.names.index(name)


def same_props(a: Igmm, b: Igmm) -> None:
    if a.inputs != b.inputs or a.outputs != b.outputs:
        raise PropositionMismatch(
            f"propositions differ: {a.inputs.names}/{a.outputs.names} "
            f"vs {b.inputs.names}/{b.outputs.names}")


def from_edges(inputs: Sequence[str], outputs: Sequence[str], n_states: int,
               edges, init: int = 0, names=None) -> Igmm:
    """Build a machine from ``(src, input_valuations, dst, out_set)`` tuples.

    ``input_valuations`` is an iterable of input valuation indices and
    ``out_set`` a :class:`ValuationSet` (or an iterable of output
    valuations).
    """
    ip, op = PropSet(tuple(inputs)), PropSet(tuple(outputs))
    rows = [[None] * ip.n_valuations for _ in range(n_states)]
    for src, ins, dst, out in edges:
        if not isinstance(out, ValuationSet):
            out = ValuationSet.of(out, op.arity)
        for i in ins:
            if rows[src][i] is not None:
                raise ValueError(f"duplicate entry for ({src}, {i})")
            rows[src][i] = Edge(dst, out)
    return Igmm(ip, op, tuple(map(tuple, rows)), init, names)


def is_input_complete(m: Igmm) -> bool:
    return all(e is not None for row in m.table for e in row)


def complete_with_sink(m: Igmm) -> Igmm:
    """Route undefined transitions to a fresh universal state.

    The sink is the last state; all its self-loops output the full set.
    """
    if is_input_complete(m):
        return m
    sink = m.n_states
    top = m.top()
    rows = [tuple(e if e is not None else Edge(sink, top) for e in row)
            for row in m.table]
    rows.append(tuple(Edge(sink, top) for _ in range(m.n_inputs)))
    name = "sink"
    while name in m.names:
        name = "_" + name
    return Igmm(m.inputs, m.outputs, tuple(rows), m.init, m.names + (name,))


def reachable_states(m: Igmm) -> list[int]:
    """States reachable from the initial state, in BFS order."""
    seen = {m.init}
    order = [m.init]
    todo = deque(order)
    while todo:
        q = todo.popleft()
        for e in m.table[q]:
            if e is not None and e.target not in seen:
                seen.add(e.target)
                order.append(e.target)
                todo.append(e.target)
    return order


def subsystem(m: Igmm, keep: Sequence[int]) -> tuple[Igmm, dict[int, int]]:
    """Restrict ``m`` to ``keep`` (in increasing order); targets must stay inside."""
    keep = sorted(keep)
    mapping = {q: n for n, q in enumerate(keep)}
    rows = []
    for q in keep:
        row = []
        for e in m.table[q]:
            row.append(None if e is None else Edge(mapping[e.target], e.out))
        rows.append(tuple(row))
    names = tuple(m.names[q] for q in keep)
    return Igmm(m.inputs, m.outputs, tuple(rows), mapping[m.init], names), mapping


def reachable_prune(m: Igmm) -> tuple[Igmm, dict[int, int]]:
    """Drop unreachable states; returns the new machine and old -> new indices."""
    reach = reachable_states(m)
    if len(reach) == m.n_states:
        return m, {q: q for q in range(m.n_states)}
    return subsystem(m, reach)


def restrict_to_first_cubes(m: Igmm) -> Igmm:
    """Replace every output set by the first cube of its disjoint cover."""
    k = m.outputs.arity
    rows = tuple(
        tuple(None if e is None else Edge(e.target, cube_to_set(first_cube(e.out), k))
              for e in row)
        for row in m.table)
    return replace(m, table=rows)


def merged_edges(m: Igmm) -> list[tuple[int, int, int, ValuationSet]]:
    """Group entries by (state, target, output set).

    Returns ``(state, input_mask, target, out)`` with ``input_mask`` a
    bitmask over input valuations, ordered by state then first input.
    """
    groups = []
    for q, row in enumerate(m.table):
        idx: dict[tuple[int, int], int] = {}
        local = []
        for i, e in enumerate(row):
            if e is None:
                continue
            key = (e.target, e.out.mask)
            if key not in idx:
                idx[key] = len(local)
                local.append([q, 0, e.target, e.out])
            local[idx[key]][1] |= 1 << i
        groups.extend(tuple(g) for g in local)
    return groups


@dataclass(frozen=True)
class MachineStats:
    n_states: int
    n_defined_transitions: int
    n_edges_merged: int
    is_input_complete: bool

    def __str__(self):
        return (f"{self.n_states} states, {self.n_defined_transitions} defined "
                f"transitions, input-complete: {str(self.is_input_complete).lower()}, "
                f"{self.n_edges_merged} merged edges")


def stats(m: Igmm) -> MachineStats:
    """Counts for reporting; merged edges are the lines an XKISS writer emits."""
    defined = sum(e is not None for row in m.table for e in row)
    lines = 0
    for _, in_mask, _, out in merged_edges(m):
        n_in = len(disjoint_cube_cover(ValuationSet(in_mask, m.inputs.arity)))
        lines += n_in
    return MachineStats(m.n_states, defined, lines, is_input_complete(m))


def isomorphic(a: Igmm, b: Igmm) -> bool:
    """Equality of ``delta``, ``lambda`` and ``init`` up to state renaming.

    States are matched by name.  Unmatched states must be isolated (no
    transitions, never a target, not initial) on both sides and equally
    many; such states are interchangeable.
    """
    if a.inputs != b.inputs or a.outputs != b.outputs or a.n_states != b.n_states:
        return False
    b_idx = {n: q for q, n in enumerate(b.names)}
    perm: dict[int, int] = {}
    loose_a = []
    for q, n in enumerate(a.names):
        if n in b_idx:
            perm[q] = b_idx[n]
        else:
            loose_a.append(q)
    loose_b = sorted(set(range(b.n_states)) - set(perm.values()))
    if len(loose_a) != len(loose_b):
        return False

    def isolated(m, qs):
        qs = set(qs)
        for q in qs:
            if q == m.init or any(e is not None for e in m.table[q]):
                return False
        return not any(e is not None and e.target in qs for row in m.table for e in row)

    if not isolated(a, loose_a) or not isolated(b, loose_b):
        return False
    perm.update(zip(loose_a, loose_b))
    if perm[a.init] != b.init:
        return False
    for q in range(a.n_states):
        for ea, eb in zip(a.table[q], b.table[perm[q]]):
            if (ea is None) != (eb is None):
                return False
            if ea is not None and (perm[ea.target] != eb.target or ea.out != eb.out):
                return False
    return True
