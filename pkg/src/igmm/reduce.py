"""Polynomial-time reductions: bisimulation quotient and output assignment."""
from __future__ import annotations

from typing import Mapping

from .machine import Edge, Igmm, complete_with_sink, reachable_states, subsystem
from .relations import bisimulation_partition, representatives, spec_graph, specialization_relation


def bisim_quotient(m: Igmm) -> Igmm:
    """One state per bisimulation block, named after the block's smallest member."""
    blocks = bisimulation_partition(m)
    block_of = {}
    for b, members in enumerate(blocks):
        for q in members:
            block_of[q] = b
    rows = []
    for members in blocks:
        rows.append(tuple(None if e is None else Edge(block_of[e.target], e.out)
                          for e in m.table[members[0]]))
    names = tuple(m.names[members[0]] for members in blocks)
    return Igmm(m.inputs, m.outputs, tuple(rows), block_of[m.init], names)


def output_assignment_map(m: Igmm, choices: Mapping[int, int] | None = None) -> list[int]:
    """Representative of every state of ``m``, never the completion sink."""
    full = complete_with_sink(m)
    sink = () if full is m else (m.n_states,)
    g = spec_graph(specialization_relation(full))
    r = representatives(g, choices, exclude=sink)
    return r[:m.n_states]


def _remap(m: Igmm, r: list[int]) -> Igmm:
    rows = [tuple(None if e is None else Edge(r[e.target], e.out) for e in row)
            for row in m.table]
    remapped = Igmm(m.inputs, m.outputs, tuple(rows), r[m.init], m.names)
    return subsystem(remapped, reachable_states(remapped))[0]


def reduce_with_output_assignment(m: Igmm, choices: Mapping[int, int] | None = None,
                                  until_fixpoint: bool = True) -> Igmm:
    """Redirect every transition to a minimal specialization of its target.

    Outputs of the surviving states are kept as they are.  One remapping
    can expose new specializations among the survivors, so by default the
    step is repeated until the state count stops shrinking; ``choices``
    only applies to the first step.
    """
    out = _remap(m, output_assignment_map(m, choices))
    while until_fixpoint:
        nxt = _remap(out, output_assignment_map(out))
        if nxt.n_states >= out.n_states:
            break
        out = nxt
    return out
