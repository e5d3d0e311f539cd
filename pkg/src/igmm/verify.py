"""Independent oracles: specialization and bisimilarity checks, exhaustive
minimal class count, and a seeded random machine generator.

Nothing here calls into the relations or SAT modules, so these functions
can be used to cross-check them.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .boolset import MAX_PROPS, PropSet, ValuationSet
from .machine import Edge, Igmm, same_props


@dataclass(frozen=True)
class Counterexample:
    """After reading ``word``, the implementation may emit ``output`` on the
    last input while the specification forbids it."""

    word: tuple[int, ...]
    output: int

    def format(self, m: Igmm) -> str:
        w = " . ".join(f"[{m.inputs.format_valuation(i)}]" for i in self.word)
        return f"input {w} -> output [{m.outputs.format_valuation(self.output)}] not allowed"


def universal_states(m: Igmm) -> set[int]:
    """States from which every output word is allowed."""
    univ = set(range(m.n_states))
    changed = True
    while changed:
        changed = False
        for q in list(univ):
            for e in m.table[q]:
                if e is not None and (not e.out.is_full() or e.target not in univ):
                    univ.discard(q)
                    changed = True
                    break
    return univ


def _restriction_witness(m: Igmm, q: int) -> tuple[tuple[int, ...], int]:
    """Shortest input word from ``q`` ending in a transition whose output is
    not full, plus a forbidden output valuation.  ``q`` must not be universal."""
    parent = {q: None}
    todo = deque([q])
    while todo:
        s = todo.popleft()
        for i, e in enumerate(m.table[s]):
            if e is None:
                continue
            if not e.out.is_full():
                word = [i]
                cur = s
                while parent[cur] is not None:
                    prev, j = parent[cur]
                    word.append(j)
                    cur = prev
                return tuple(reversed(word)), min(~e.out)
            if e.target not in parent:
                parent[e.target] = (s, i)
                todo.append(e.target)
    raise ValueError(f"state {q} is universal")


def check_specialization(impl: Igmm, spec: Igmm) -> Counterexample | None:
    """None if every behaviour of ``impl`` is allowed by ``spec``.

    Walks pairs of states reached by the same input word.  Where ``spec``
    is undefined anything goes; where only ``impl`` is undefined, ``spec``
    must allow everything from then on.
    """
    same_props(impl, spec)
    univ = universal_states(spec)
    start = (impl.init, spec.init)
    parent: dict[tuple[int, int], tuple | None] = {start: None}
    todo = deque([start])

    def word_to(pair):
        w = []
        while parent[pair] is not None:
            pair, i = parent[pair]
            w.append(i)
        return tuple(reversed(w))

    while todo:
        pair = todo.popleft()
        p, q = pair
        for i in range(spec.n_inputs):
            es = spec.table[q][i]
            if es is None:
                continue
            ei = impl.table[p][i]
            if ei is None:
                if es.out.is_full() and es.target in univ:
                    continue
                if not es.out.is_full():
                    return Counterexample(word_to(pair) + (i,), min(~es.out))
                rest, o = _restriction_witness(spec, es.target)
                return Counterexample(word_to(pair) + (i,) + rest, o)
            if not ei.out <= es.out:
                return Counterexample(word_to(pair) + (i,), min(ei.out & ~es.out))
            nxt = (ei.target, es.target)
            if nxt not in parent:
                parent[nxt] = (pair, i)
                todo.append(nxt)
    return None


def is_specialization(impl: Igmm, spec: Igmm) -> bool:
    return check_specialization(impl, spec) is None


def check_bisimilar(m1: Igmm, m2: Igmm) -> bool:
    same_props(m1, m2)
    start = (m1.init, m2.init)
    seen = {start}
    todo = deque([start])
    while todo:
        p, q = todo.popleft()
        for e1, e2 in zip(m1.table[p], m2.table[q]):
            if e1 is None or e2 is None:
                if e1 is not e2:
                    return False
                continue
            if e1.out != e2.out:
                return False
            nxt = (e1.target, e2.target)
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return True


def not_variation_oracle(m: Igmm) -> list[list[bool]]:
    """Pairwise non-variation by forward exploration of each state pair."""
    n = m.n_states
    res = [[False] * n for _ in range(n)]
    for k in range(n):
        for l in range(k + 1, n):
            seen = {(k, l)}
            todo = [(k, l)]
            bad = False
            while todo and not bad:
                p, q = todo.pop()
                for e1, e2 in zip(m.table[p], m.table[q]):
                    if e1 is None or e2 is None:
                        continue
                    if (e1.out & e2.out).is_empty():
                        bad = True
                        break
                    nxt = (e1.target, e2.target)
                    if nxt not in seen:
                        seen.add(nxt)
                        todo.append(nxt)
            res[k][l] = res[l][k] = bad
    return res


def brute_force_min_size(m: Igmm, cap: int | None = None) -> int:
    """Smallest number of classes satisfying cover, closure and nonemptiness.

    Every state of ``m`` must be covered, reachable or not.  Exhaustive
    search over candidate classes, each step satisfying one open
    obligation: an uncovered state or a successor set that no chosen class
    contains.  Limited to 8 states and 4 input valuations; proving that
    no smaller system exists can still take minutes on 8 states.
    """
    n_states = m.n_states
    if n_states > 8 or m.n_inputs > 4:
        raise ValueError("brute force is limited to 8 states and 4 input valuations")
    cap = n_states if cap is None else min(cap, n_states)
    nv = not_variation_oracle(m)
    top = ValuationSet.full(m.outputs.arity)

    def valid(cls):
        if any(nv[a][b] for a, b in combinations(cls, 2)):
            return False
        for i in range(m.n_inputs):
            acc = top
            for q in cls:
                e = m.table[q][i]
                if e is not None:
                    acc = acc & e.out
            if acc.is_empty():
                return False
        return True

    candidates = set()
    for r in range(1, n_states + 1):
        for cls in combinations(range(n_states), r):
            if valid(cls):
                candidates.add(frozenset(cls))

    def successors(cls, i):
        return frozenset(e.target for q in cls if (e := m.table[q][i]) is not None)

    ordered = sorted(candidates, key=lambda c: (-len(c), sorted(c)))
    succ_sets = {c: [s for i in range(m.n_inputs) if (s := successors(c, i))] for c in candidates}

    # states no valid class can hold together need separate classes
    apart = [0] * n_states
    for a, b in combinations(range(n_states), 2):
        if frozenset((a, b)) not in candidates:
            apart[a] |= 1 << b
            apart[b] |= 1 << a

    @lru_cache(maxsize=None)
    def clique(mask):
        if not mask:
            return 0
        q = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << q)
        return max(clique(rest), 1 + clique(rest & apart[q]))

    def obligations(chosen):
        """Open obligations, plus a lower bound on the classes still needed."""
        covered = frozenset().union(*chosen) if chosen else frozenset()
        open_ = [s for c in chosen for s in succ_sets[c] if not any(s <= d for d in chosen)]
        uncovered = [q for q in range(n_states) if q not in covered]
        open_ += [frozenset([q]) for q in uncovered]
        bound = clique(sum(1 << q for q in uncovered))
        return open_, max(bound, 1 if open_ else 0)

    def search(chosen, budget, seen):
        key = frozenset(chosen)
        if key in seen:
            return False
        seen.add(key)
        open_, bound = obligations(chosen)
        if not open_:
            return True
        if bound > budget:
            return False
        options = None
        for need in open_:
            opts = [c for c in ordered if need <= c and c not in key]
            if options is None or len(opts) < len(options):
                options = opts
        for cls in options:
            if search(chosen + [cls], budget - 1, seen):
                return True
        return False

    for n in range(1, cap + 1):
        if search([], n, set()):
            return n
    return n_states


def random_igmm(seed: int, n_states: int, n_in_props: int, n_out_props: int,
                density: float = 1.0, output_bias: float = 0.5) -> Igmm:
    """Random machine; each defined output keeps each valuation with
    probability ``output_bias`` (redrawn when empty)."""
    if n_states < 1:
        raise ValueError("need at least one state")
    if not 0 <= n_in_props <= MAX_PROPS or not 0 <= n_out_props <= MAX_PROPS:
        raise ValueError("proposition count out of range")
    if not 0.0 <= density <= 1.0 or not 0.0 < output_bias <= 1.0:
        raise ValueError("density must be in [0, 1] and output_bias in (0, 1]")
    rng = random.Random(seed)
    n_in, n_out = 1 << n_in_props, 1 << n_out_props
    rows = []
    for _ in range(n_states):
        row = []
        for _ in range(n_in):
            if rng.random() >= density:
                row.append(None)
                continue
            target = rng.randrange(n_states)
            mask = 0
            while not mask:
                mask = sum(1 << v for v in range(n_out) if rng.random() < output_bias)
            row.append(Edge(target, ValuationSet(mask, n_out_props)))
        rows.append(tuple(row))
    return Igmm(PropSet.default(n_in_props, "i"), PropSet.default(n_out_props, "o"),
                tuple(rows), 0)
