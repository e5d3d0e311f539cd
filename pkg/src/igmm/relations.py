"""Variation matrix, partial solution, specialization preorder, bisimulation."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Collection, Mapping

from .machine import Igmm, is_input_complete


@dataclass(frozen=True)
class VariationMatrix:
    """``mat[k][l]`` is True iff states ``k`` and ``l`` are NOT variations."""

    n: int
    mat: tuple[tuple[bool, ...], ...]

    def not_variation(self, k: int, l: int) -> bool:
        return self.mat[k][l]

    def pairs(self):
        """Non-variation pairs ``(k, l)`` with ``k < l``."""
        return [(k, l) for k in range(self.n) for l in range(k + 1, self.n) if self.mat[k][l]]


def _predecessors(m: Igmm) -> list[list[list[int]]]:
    preds = [[[] for _ in range(m.n_inputs)] for _ in range(m.n_states)]
    for q, row in enumerate(m.table):
        for i, e in enumerate(row):
            if e is not None:
                preds[e.target][i].append(q)
    return preds


def variation_matrix(m: Igmm) -> VariationMatrix:
    """Mark pairs with disjoint outputs, then propagate to predecessor pairs."""
    n = m.n_states
    mat = [[False] * n for _ in range(n)]
    work = deque()
    for k in range(n):
        for l in range(k + 1, n):
            for i in range(m.n_inputs):
                if (m.output(k, i) & m.output(l, i)).is_empty():
                    mat[k][l] = mat[l][k] = True
                    work.append((k, l))
                    break
    preds = _predecessors(m)
    while work:
        k, l = work.popleft()
        for i in range(m.n_inputs):
            for pk in preds[k][i]:
                for pl in preds[l][i]:
                    if pk != pl and not mat[pk][pl]:
                        mat[pk][pl] = mat[pl][pk] = True
                        work.append((pk, pl))
    return VariationMatrix(n, tuple(map(tuple, mat)))


def partial_solution(vm: VariationMatrix) -> list[int]:
    """Greedy set of pairwise non-variations, most-constrained states first.

    The order of the returned list is the insertion order; it fixes which
    class each state is pinned to when seeding the SAT encoding.
    """
    nvc = [sum(row) for row in vm.mat]
    order = sorted(range(vm.n), key=lambda q: (-nvc[q], q))
    chosen: list[int] = []
    for q in order:
        if all(vm.mat[q][p] for p in chosen):
            chosen.append(q)
    return chosen


@dataclass(frozen=True)
class SpecRelation:
    """``rel[a][b]`` is True iff state ``a`` specializes state ``b``."""

    n: int
    rel: tuple[tuple[bool, ...], ...]

    def __call__(self, a: int, b: int) -> bool:
        return self.rel[a][b]


def specialization_relation(m: Igmm) -> SpecRelation:
    """Greatest relation with output inclusion and related successors."""
    if not is_input_complete(m):
        raise ValueError("specialization_relation needs an input-complete machine "
                         "(apply complete_with_sink first)")
    n = m.n_states
    rel = [[all(m.table[a][i].out <= m.table[b][i].out for i in range(m.n_inputs))
            for b in range(n)] for a in range(n)]
    changed = True
    while changed:
        changed = False
        for a in range(n):
            ra = m.table[a]
            for b in range(n):
                if not rel[a][b]:
                    continue
                rb = m.table[b]
                for i in range(m.n_inputs):
                    if not rel[ra[i].target][rb[i].target]:
                        rel[a][b] = False
                        changed = True
                        break
    return SpecRelation(n, tuple(map(tuple, rel)))


@dataclass(frozen=True)
class SpecGraph:
    """Condensation of the specialization preorder.

    ``edges[x]`` lists the nodes strictly below node ``x`` (their members
    specialize the members of ``x``).  Nodes are ordered by smallest member.
    """

    nodes: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, ...], ...]
    node_of: tuple[int, ...]

    @property
    def leaves(self) -> tuple[int, ...]:
        return tuple(x for x, succ in enumerate(self.edges) if not succ)

    def leaf_sets(self) -> list[tuple[int, ...]]:
        return [self.nodes[x] for x in self.leaves]


def spec_graph(rel: SpecRelation) -> SpecGraph:
    n = rel.n
    for a in range(n):
        if not rel(a, a):
            raise ValueError(f"relation is not reflexive at {a}")
        for b in range(n):
            if rel(a, b):
                for c in range(n):
                    if rel(b, c) and not rel(a, c):
                        raise ValueError(f"relation is not transitive at {a}, {b}, {c}")
    node_of = [-1] * n
    nodes: list[tuple[int, ...]] = []
    for a in range(n):
        if node_of[a] >= 0:
            continue
        members = tuple(b for b in range(n) if rel(a, b) and rel(b, a))
        for b in members:
            node_of[b] = len(nodes)
        nodes.append(members)
    edges = []
    for x, members in enumerate(nodes):
        a = members[0]
        edges.append(tuple(y for y, other in enumerate(nodes)
                           if y != x and rel(other[0], a)))
    return SpecGraph(tuple(nodes), tuple(edges), tuple(node_of))


def representatives(g: SpecGraph, choices: Mapping[int, int] | None = None,
                    exclude: Collection[int] = ()) -> list[int]:
    """Map each state to a state of a leaf below it.

    Default rule: among the reachable leaves, the one with the lowest
    smallest member, then its smallest member.  ``choices`` pins individual
    states to a specific representative; ``exclude`` lists states that may
    only be picked when a leaf has no other member.
    """
    choices = dict(choices or {})
    leaves = set(g.leaves)
    excl = set(exclude)

    def pick(members):
        usable = [q for q in members if q not in excl]
        return min(usable) if usable else min(members)

    def key(x):
        return pick(g.nodes[x])

    r = []
    for q in range(len(g.node_of)):
        x = g.node_of[q]
        below = [x] if x in leaves else [y for y in g.edges[x] if y in leaves]
        if q in choices:
            want = choices[q]
            if want < 0 or want >= len(g.node_of) or g.node_of[want] not in below:
                raise ValueError(f"state {want} is not a representative of {q}")
            r.append(want)
            continue
        r.append(pick(g.nodes[min(below, key=key)]))
    return r


def bisimulation_partition(m: Igmm) -> list[tuple[int, ...]]:
    """Coarsest partition with equal outputs and block-equal successors.

    An undefined transition only matches an undefined transition.
    Blocks are returned ordered by smallest member.
    """
    block = [0] * m.n_states
    while True:
        sigs: dict[tuple, int] = {}
        new = []
        for q, row in enumerate(m.table):
            sig = (block[q],) + tuple(
                None if e is None else (e.out.mask, block[e.target]) for e in row)
            new.append(sigs.setdefault(sig, len(sigs)))
        if len(sigs) == len(set(block)):
            break
        block = new
    groups: dict[int, list[int]] = {}
    for q, b in enumerate(block):
        groups.setdefault(b, []).append(q)
    return sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])
