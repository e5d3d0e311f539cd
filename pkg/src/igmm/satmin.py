"""Exact minimization through an incremental SAT encoding.

States are grouped into ``n`` possibly overlapping classes.  Cover and
closure are encoded up front; nonemptiness of class outputs is checked on
each model and only the clauses needed to exclude the observed
violations are added (a CEGAR loop).  The first ``n`` for which a model
passes the check yields the minimal machine.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .boolset import MAX_PROPS, Cube, ValuationSet, disjoint_cube_cover
from .machine import Edge, Igmm, reachable_prune
from .relations import VariationMatrix, partial_solution, variation_matrix
from .sat import Solver, SolverTimeout, write_dimacs

log = logging.getLogger(__name__)


class _Const:
    __slots__ = ("value",)

    def __init__(self, value: bool):
        self.value = value

    def __repr__(self):
        return "TRUE" if self.value else "FALSE"


TRUE = _Const(True)
FALSE = _Const(False)


def neg(lit):
    if lit is TRUE:
        return FALSE
    if lit is FALSE:
        return TRUE
    return -lit


def simplify(lits) -> list[int] | None:
    """Drop FALSE literals; None if the clause is satisfied outright."""
    out = []
    for l in lits:
        if l is TRUE:
            return None
        if l is FALSE:
            continue
        if -l in out:
            return None
        if l not in out:
            out.append(l)
    return out


def succ(m: Igmm, members: Iterable[int], i: int) -> frozenset[int]:
    return frozenset(e.target for q in members if (e := m.table[q][i]) is not None)


def out(m: Igmm, members: Iterable[int], i: int) -> ValuationSet:
    acc = m.top()
    for q in members:
        acc = acc & m.output(q, i)
    return acc


@dataclass
class CnfProblem:
    """Named-variable CNF over ``n`` classes of the states of one machine.

    Membership literals ``s`` may be constants when the partial solution
    pins states to classes; clauses only ever grow.
    """

    n: int
    n_states: int
    partial: tuple[int, ...] = ()
    names: list[str] = field(default_factory=list)
    index: dict[tuple, int] = field(default_factory=dict)
    clauses: list[list[int]] = field(default_factory=list)
    assumptions: list[int] = field(default_factory=list)
    const: dict[tuple[int, int], _Const] = field(default_factory=dict)
    covers: dict[tuple[int, int], list[Cube]] = field(default_factory=dict)
    act_done: set[tuple] = field(default_factory=set)
    pairs_done: set[tuple] = field(default_factory=set)
    sc_done: set[tuple[int, int]] = field(default_factory=set)
    _fed: int = 0

    @property
    def n_vars(self) -> int:
        return len(self.names)

    @property
    def n_clauses(self) -> int:
        return len(self.clauses)

    def var(self, key: tuple) -> int:
        v = self.index.get(key)
        if v is None:
            self.names.append("_".join(map(str, key)))
            v = self.index[key] = len(self.names)
        return v

    def s(self, q: int, j: int):
        c = self.const.get((q, j))
        return c if c is not None else self.var(("s", q, j))

    def add(self, lits) -> bool:
        c = simplify(lits)
        if c is None:
            return False
        self.clauses.append(c)
        return True

    def feed(self, solver: Solver) -> None:
        while self.n_vars > solver.n_vars:
            solver.new_var()
        for c in self.clauses[self._fed:]:
            solver.add_clause(c)
        self._fed = len(self.clauses)

    def member(self, model: Sequence[bool], q: int, j: int) -> bool:
        c = self.const.get((q, j))
        if c is not None:
            return c.value
        v = self.index.get(("s", q, j))
        return v is not None and model[v]

    def to_dimacs(self) -> str:
        return write_dimacs(self.n_vars, self.clauses)

    def varmap(self) -> str:
        return "".join(f"{v} {name}\n" for v, name in enumerate(self.names, 1))


def _lex_geq(p: CnfProblem, a: int, b: int) -> None:
    """Membership column of class ``a`` is lexicographically >= that of ``b``."""
    eq = TRUE
    for q in range(p.n_states):
        x, y = p.s(q, a), p.s(q, b)
        p.add([neg(eq), x, neg(y)])
        if q == p.n_states - 1:
            break
        nxt = p.var(("lex", a, q))
        p.add([neg(eq), neg(x), neg(y), nxt])
        p.add([neg(eq), x, y, nxt])
        eq = nxt


def encode_cover_closure(m: Igmm, vm: VariationMatrix, partial: Sequence[int], n: int,
                         symmetry_breaking: bool = True) -> CnfProblem:
    """Cover, variation-class and closure clauses for ``n`` classes.

    The ``p``-th state of ``partial`` is pinned to class ``p``; states that
    are not variations of it are kept out of that class by constants.  The
    remaining classes are interchangeable; with ``symmetry_breaking`` their
    membership columns are forced into decreasing lexicographic order.
    """
    if n < len(partial):
        raise ValueError(f"n = {n} is below the partial solution size {len(partial)}")
    N = m.n_states
    p = CnfProblem(n, N, tuple(partial))
    for j, pq in enumerate(partial):
        for q in range(N):
            if q == pq:
                p.const[(q, j)] = TRUE
            elif vm.mat[q][pq]:
                p.const[(q, j)] = FALSE
    for q in range(N):
        p.add([p.s(q, j) for j in range(n)])
    for k, l in vm.pairs():
        for j in range(n):
            p.add([neg(p.s(k, j)), neg(p.s(l, j))])
    for k in range(n):
        for i in range(m.n_inputs):
            per_j = []
            for j in range(n):
                implied = []
                for q in range(N):
                    t = m.delta(q, i)
                    if t is None:
                        continue
                    c = simplify([neg(p.s(q, k)), p.s(t, j)])
                    if c is not None:
                        implied.append(c)
                per_j.append(implied)
            if any(not implied for implied in per_j):
                continue  # some class absorbs Succ(C_k, i) unconditionally
            viable = [j for j in range(n) if all(per_j[j])]
            zs = {j: p.var(("z", i, k, j)) for j in viable}
            p.add([zs[j] for j in viable])
            for j in viable:
                for c in per_j[j]:
                    p.add([-zs[j]] + c)
    if symmetry_breaking:
        for j in range(len(partial), n - 1):
            _lex_geq(p, j, j + 1)
    return p


def encode_nonemptiness(p: CnfProblem, m: Igmm, vm: VariationMatrix,
                        items: Iterable[tuple[Iterable[int], int]],
                        shared_activation: bool = False) -> int:
    """Add cube-activation clauses for the given ``(states, input)`` groups.

    Each output set is split into disjoint cubes.  Every member of a class
    keeps at least one cube active, and two members of the same class may
    not keep disjoint cubes active; since pairwise intersecting cubes have
    a common valuation, this is exactly a nonempty class output.

    By default the active cubes are chosen per class.  With
    ``shared_activation`` a state makes one choice per input for all its
    classes (fewer variables, linked through "same class" literals), which
    can exclude valid systems whose classes overlap.

    Clauses are emitted at most once; returns the number added.
    """
    before = p.n_clauses
    classes = (None,) if shared_activation else range(p.n)

    def cubes(q, i):
        if (q, i) not in p.covers:
            p.covers[(q, i)] = disjoint_cube_cover(m.output(q, i))
        return p.covers[(q, i)]

    def active(c, q, i, j):
        if len(cubes(q, i)) == 1:
            return TRUE
        return p.var(("a", c, q, i) if j is None else ("a", c, q, i, j))

    def same_class(q, q2, j):
        if j is not None:
            return [neg(p.s(q, j)), neg(p.s(q2, j))]
        v = p.var(("sc", q, q2))
        if (q, q2) not in p.sc_done:
            p.sc_done.add((q, q2))
            for k in range(p.n):
                p.add([neg(p.s(q, k)), neg(p.s(q2, k)), v])
        return [-v]

    for members, i in items:
        states = sorted(q for q in set(members) if m.delta(q, i) is not None)
        for j in classes:
            here = states if j is None else [q for q in states if p.s(q, j) is not FALSE]
            for q in here:
                if (q, i, j) not in p.act_done:
                    p.act_done.add((q, i, j))
                    guard = [] if j is None else [neg(p.s(q, j))]
                    p.add(guard + [active(c, q, i, j) for c in range(len(cubes(q, i)))])
            for x, q in enumerate(here):
                for q2 in here[x + 1:]:
                    if vm.mat[q][q2] or (q, q2, i, j) in p.pairs_done:
                        continue
                    p.pairs_done.add((q, q2, i, j))
                    cq, cq2 = cubes(q, i), cubes(q2, i)
                    for a, ca in enumerate(cq):
                        for b, cb in enumerate(cq2):
                            if not ca.intersects(cb):
                                p.add(same_class(q, q2, j)
                                      + [neg(active(a, q, i, j)), neg(active(b, q2, i, j))])
    return p.n_clauses - before


@dataclass(frozen=True)
class ClassSystem:
    members: tuple[frozenset[int], ...]
    succ_choice: dict[tuple[int, int], int]

    @property
    def n(self) -> int:
        return len(self.members)


def class_system(m: Igmm, members: Sequence[Iterable[int]]) -> ClassSystem:
    """Attach successor choices (lowest class index containing ``Succ``)."""
    members = tuple(frozenset(c) for c in members)
    choice = {}
    for k, c in enumerate(members):
        for i in range(m.n_inputs):
            s = succ(m, c, i)
            if not s:
                continue
            for j, d in enumerate(members):
                if s <= d:
                    choice[(i, k)] = j
                    break
    return ClassSystem(members, choice)


def decode(p: CnfProblem, model: Sequence[bool], m: Igmm) -> ClassSystem:
    members = [[q for q in range(p.n_states) if p.member(model, q, j)] for j in range(p.n)]
    return class_system(m, members)


def check_nonemptiness(m: Igmm, cs: ClassSystem) -> list[tuple[int, int]]:
    return [(k, i) for k, c in enumerate(cs.members) for i in range(m.n_inputs)
            if out(m, c, i).is_empty()]


def build_machine(m: Igmm, cs: ClassSystem) -> Igmm:
    """One state per class, outputs intersected over the members."""
    covered = frozenset().union(*cs.members)
    if covered != frozenset(range(m.n_states)):
        raise ValueError(f"classes do not cover states {sorted(set(range(m.n_states)) - covered)}")
    rows = []
    for k, c in enumerate(cs.members):
        row = []
        for i in range(m.n_inputs):
            s = succ(m, c, i)
            if not s:
                row.append(None)
                continue
            if (i, k) not in cs.succ_choice:
                raise ValueError(f"closure fails for class {k} under input {i}")
            o = out(m, c, i)
            if o.is_empty():
                raise ValueError(f"class {k} has no common output under input {i}")
            row.append(Edge(cs.succ_choice[(i, k)], o))
        rows.append(tuple(row))
    init = next(k for k, c in enumerate(cs.members) if m.init in c)
    return Igmm(m.inputs, m.outputs, tuple(rows), init,
                tuple(str(k) for k in range(cs.n)))


@dataclass
class MinimizeOptions:
    keep_unreachable: bool = False
    timeout_s: float | None = 1800.0
    seed: int = 0
    seeded: bool = True
    eager: bool = False
    symmetry_breaking: bool = True
    shared_activation: bool = False
    dimacs_dump: str | Path | None = None
    max_props: int = MAX_PROPS


@dataclass
class MinimizeReport:
    method: str = "sat"
    status: str = "ok"
    states_in: int = 0
    states_out: int = 0
    partial_size: int = 0
    n_tried: list[int] = field(default_factory=list)
    sat_vars: int = 0
    sat_clauses: int = 0
    cegar_rounds: int = 0
    rounds_per_n: dict[int, int] = field(default_factory=dict)
    time_s: float = 0.0
    classes: tuple[frozenset[int], ...] | None = None

    def line(self) -> str:
        return (f"{self.method}: {self.states_in} -> {self.states_out} states, "
                f"{self.time_s * 1000:.1f} ms, {self.sat_vars} vars, "
                f"{self.sat_clauses} clauses, {self.cegar_rounds} CEGAR rounds, {self.status}")


def _dump(directory, p: CnfProblem, n: int, rnd: int) -> None:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    (d / f"n{n}_r{rnd}.cnf").write_text(p.to_dimacs())
    (d / f"n{n}_r{rnd}.varmap").write_text(p.varmap())


def minimize(m: Igmm, opts: MinimizeOptions | None = None) -> tuple[Igmm, MinimizeReport]:
    """Minimal specialization of ``m``.

    On timeout the (pruned) input is returned with ``status == 'timeout'``.
    """
    opts = opts or MinimizeOptions()
    t0 = time.monotonic()
    deadline = None if opts.timeout_s is None else t0 + opts.timeout_s
    if m.inputs.arity > opts.max_props or m.outputs.arity > opts.max_props:
        raise ValueError(f"more than {opts.max_props} propositions")
    report = MinimizeReport(states_in=m.n_states)
    if opts.keep_unreachable:
        work, back = m, list(range(m.n_states))
    else:
        work, mapping = reachable_prune(m)
        back = sorted(mapping, key=mapping.get)
    N = work.n_states
    vm = variation_matrix(work)
    partial = partial_solution(vm)
    report.partial_size = len(partial)
    result = work
    try:
        if opts.timeout_s is not None and opts.timeout_s <= 0:
            raise SolverTimeout()
        for n in range(len(partial) if opts.seeded else 1, N):
            if deadline is not None and time.monotonic() > deadline:
                raise SolverTimeout()
            report.n_tried.append(n)
            p = encode_cover_closure(work, vm, partial if opts.seeded else (), n,
                                     opts.symmetry_breaking)
            if opts.eager:
                encode_nonemptiness(p, work, vm, [(range(N), i) for i in range(work.n_inputs)],
                                    opts.shared_activation)
            solver = Solver(opts.seed)
            rnd = 0
            found = None
            while True:
                if opts.dimacs_dump is not None:
                    _dump(opts.dimacs_dump, p, n, rnd)
                p.feed(solver)
                report.sat_vars = max(report.sat_vars, p.n_vars)
                report.sat_clauses = max(report.sat_clauses, p.n_clauses)
                if not solver.solve(deadline=deadline):
                    log.debug("n=%d unsat after %d rounds", n, rnd)
                    break
                cs = decode(p, solver.model, work)
                bad = check_nonemptiness(work, cs)
                if not bad:
                    found = cs
                    break
                added = encode_nonemptiness(p, work, vm, [(cs.members[k], i) for k, i in bad],
                                            opts.shared_activation)
                if added == 0:
                    raise RuntimeError("nonemptiness refinement made no progress")
                rnd += 1
                report.cegar_rounds += 1
            report.rounds_per_n[n] = rnd
            if found is not None:
                result = build_machine(work, found)
                report.classes = tuple(frozenset(back[q] for q in c) for c in found.members)
                break
    except SolverTimeout:
        report.status = "timeout"
        result = work
    report.states_out = result.n_states
    report.time_s = time.monotonic() - t0
    return result, report
