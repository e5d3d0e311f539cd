"""A small CDCL SAT solver with incremental clause addition.

Literals use the DIMACS convention: variable ``v >= 1`` is the literal
``v``, its negation ``-v``.  Internally literal ``v`` is ``2*v`` and ``-v``
is ``2*v + 1``.
"""
from __future__ import annotations

import heapq
import random
import time
from typing import Iterable, Sequence


class SolverTimeout(Exception):
    """The deadline passed before the solver reached a verdict."""


def _luby(i: int) -> int:
    k = 1
    while (1 << k) - 1 < i + 1:
        k += 1
    while (1 << k) - 1 != i + 1:
        i -= (1 << (k - 1)) - 1
        k = 1
        while (1 << k) - 1 < i + 1:
            k += 1
    return 1 << (k - 1)


class Solver:
    """Conflict-driven clause learning with watched literals and VSIDS.

    Clauses may be added between calls to :meth:`solve`; learnt clauses are
    kept, so later calls restart from the accumulated knowledge.
    """

    restart_base = 100
    var_decay = 0.95

    def __init__(self, seed: int = 0):
        self._rng = random.Random(seed)
        self.n_vars = 0
        self._clauses: list[list[int]] = []
        self._watches: list[list[int]] = [[], []]
        self._assign = [0]
        self._level = [0]
        self._reason: list[int | None] = [None]
        self._activity = [0.0]
        self._phase = [False]
        self._trail: list[int] = []
        self._trail_lim: list[int] = []
        self._qhead = 0
        self._heap: list[tuple[float, int]] = []
        self._inc = 1.0
        self._ok = True
        self.model: list[bool] | None = None
        self.conflicts = 0
        self.decisions = 0

    def new_var(self) -> int:
        self.n_vars += 1
        self._watches += [[], []]
        self._assign.append(0)
        self._level.append(0)
        self._reason.append(None)
        self._activity.append(self._rng.random() * 1e-6)
        self._phase.append(False)
        heapq.heappush(self._heap, (-self._activity[-1], self.n_vars))
        return self.n_vars

    def _ensure(self, v: int) -> None:
        while self.n_vars < v:
            self.new_var()

    def _val(self, lit: int) -> int:
        a = self._assign[lit >> 1]
        return -a if lit & 1 else a

    def add_clause(self, lits: Iterable[int]) -> bool:
        """Add a clause; returns False once the formula is known UNSAT."""
        if not self._ok:
            return False
        self._cancel_until(0)
        internal = set()
        for l in lits:
            if l == 0:
                raise ValueError("0 is not a literal")
            self._ensure(abs(l))
            internal.add(2 * l if l > 0 else -2 * l + 1)
        clause = []
        for il in sorted(internal):
            if il ^ 1 in internal:
                return True
            v = self._val(il)
            if v == 1:
                return True
            if v == 0:
                clause.append(il)
        if not clause:
            self._ok = False
            return False
        if len(clause) == 1:
            self._enqueue(clause[0], None)
            if self._propagate() is not None:
                self._ok = False
            return self._ok
        self._attach(clause)
        return True

    def _attach(self, clause: list[int]) -> int:
        ci = len(self._clauses)
        self._clauses.append(clause)
        self._watches[clause[0]].append(ci)
        self._watches[clause[1]].append(ci)
        return ci

    def _enqueue(self, lit: int, reason: int | None) -> None:
        v = lit >> 1
        self._assign[v] = -1 if lit & 1 else 1
        self._level[v] = len(self._trail_lim)
        self._reason[v] = reason
        self._trail.append(lit)

    def _propagate(self) -> int | None:
        clauses, watches, assign = self._clauses, self._watches, self._assign
        while self._qhead < len(self._trail):
            p = self._trail[self._qhead]
            self._qhead += 1
            false_lit = p ^ 1
            ws = watches[false_lit]
            i = j = 0
            n = len(ws)
            while i < n:
                ci = ws[i]
                i += 1
                c = clauses[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                first = c[0]
                a = assign[first >> 1]
                if (-a if first & 1 else a) == 1:
                    ws[j] = ci
                    j += 1
                    continue
                for k in range(2, len(c)):
                    lk = c[k]
                    a = assign[lk >> 1]
                    if (-a if lk & 1 else a) != -1:
                        c[1], c[k] = lk, c[1]
                        watches[lk].append(ci)
                        break
                else:
                    ws[j] = ci
                    j += 1
                    a = assign[first >> 1]
                    if (-a if first & 1 else a) == -1:
                        while i < n:
                            ws[j] = ws[i]
                            j += 1
                            i += 1
                        del ws[j:]
                        self._qhead = len(self._trail)
                        return ci
                    self._enqueue(first, ci)
            del ws[j:]
        return None

    def _bump(self, v: int) -> None:
        self._activity[v] += self._inc
        if self._activity[v] > 1e100:
            for u in range(1, self.n_vars + 1):
                self._activity[u] *= 1e-100
            self._inc *= 1e-100
            self._heap = [(-self._activity[u], u) for u in range(1, self.n_vars + 1)
                          if self._assign[u] == 0]
            heapq.heapify(self._heap)
        elif self._assign[v] == 0:
            heapq.heappush(self._heap, (-self._activity[v], v))

    def _analyze(self, confl: int) -> tuple[list[int], int]:
        seen = set()
        learnt = [0]
        path = 0
        p = None
        idx = len(self._trail) - 1
        level = len(self._trail_lim)
        c = self._clauses[confl]
        while True:
            for q in (c if p is None else c[1:]):
                v = q >> 1
                if v not in seen and self._level[v] > 0:
                    seen.add(v)
                    self._bump(v)
                    if self._level[v] == level:
                        path += 1
                    else:
                        learnt.append(q)
            while self._trail[idx] >> 1 not in seen:
                idx -= 1
            p = self._trail[idx]
            idx -= 1
            seen.discard(p >> 1)
            path -= 1
            if path == 0:
                break
            c = self._clauses[self._reason[p >> 1]]
        learnt[0] = p ^ 1
        if len(learnt) == 1:
            return learnt, 0
        best = max(range(1, len(learnt)), key=lambda k: self._level[learnt[k] >> 1])
        learnt[1], learnt[best] = learnt[best], learnt[1]
        return learnt, self._level[learnt[1] >> 1]

    def _cancel_until(self, level: int) -> None:
        if len(self._trail_lim) <= level:
            return
        start = self._trail_lim[level]
        for lit in reversed(self._trail[start:]):
            v = lit >> 1
            self._phase[v] = not lit & 1
            self._assign[v] = 0
            self._reason[v] = None
            heapq.heappush(self._heap, (-self._activity[v], v))
        del self._trail[start:]
        del self._trail_lim[level:]
        self._qhead = len(self._trail)

    def _pick(self) -> int | None:
        while self._heap:
            _, v = heapq.heappop(self._heap)
            if self._assign[v] == 0:
                return 2 * v if self._phase[v] else 2 * v + 1
        return None

    def solve(self, assumptions: Sequence[int] = (), deadline: float | None = None) -> bool:
        """Return True (model in :attr:`model`) or False; raises SolverTimeout."""
        self.model = None
        if not self._ok:
            return False
        self._cancel_until(0)
        if self._propagate() is not None:
            self._ok = False
            return False
        for a in assumptions:
            self._ensure(abs(a))
        assume = [2 * a if a > 0 else -2 * a + 1 for a in assumptions]
        restarts = 0
        budget = self.restart_base * _luby(restarts)
        since_restart = 0
        while True:
            confl = self._propagate()
            if confl is not None:
                self.conflicts += 1
                since_restart += 1
                if len(self._trail_lim) == 0:
                    self._ok = False
                    return False
                learnt, back = self._analyze(confl)
                self._cancel_until(back)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    self._enqueue(learnt[0], self._attach(learnt))
                self._inc /= self.var_decay
                if deadline is not None and self.conflicts % 64 == 0 and time.monotonic() > deadline:
                    self._cancel_until(0)
                    raise SolverTimeout()
                continue
            if since_restart >= budget:
                restarts += 1
                since_restart = 0
                budget = self.restart_base * _luby(restarts)
                self._cancel_until(0)
                continue
            if deadline is not None and self.decisions % 256 == 0 and time.monotonic() > deadline:
                self._cancel_until(0)
                raise SolverTimeout()
            level = len(self._trail_lim)
            if level < len(assume):
                lit = assume[level]
                v = self._val(lit)
                if v == -1:
                    self._cancel_until(0)
                    return False
                self._trail_lim.append(len(self._trail))
                if v == 0:
                    self._enqueue(lit, None)
                continue
            lit = self._pick()
            if lit is None:
                self.model = [False] + [self._assign[v] == 1 for v in range(1, self.n_vars + 1)]
                self._cancel_until(0)
                return True
            self.decisions += 1
            self._trail_lim.append(len(self._trail))
            self._enqueue(lit, None)


def solve_cnf(clauses: Iterable[Sequence[int]], seed: int = 0,
              deadline: float | None = None) -> list[bool] | None:
    """One-shot helper: a model (index 0 unused) or None if UNSAT."""
    s = Solver(seed)
    for c in clauses:
        if not s.add_clause(c):
            return None
    return s.model if s.solve(deadline=deadline) else None


def write_dimacs(n_vars: int, clauses: Sequence[Sequence[int]]) -> str:
    lines = [f"p cnf {n_vars} {len(clauses)}"]
    lines += [" ".join(map(str, c)) + " 0" if c else "0" for c in clauses]
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> tuple[int, list[list[int]]]:
    n_vars = 0
    clauses: list[list[int]] = []
    cur: list[int] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad header {line!r}")
            n_vars = int(parts[2])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(cur)
                cur = []
            else:
                cur.append(lit)
    if cur:
        raise ValueError("last clause is not 0-terminated")
    return n_vars, clauses
