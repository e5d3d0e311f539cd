"""Acceptance checks, one per criterion.

Each check prints a single ``PASS``/``FAIL`` line; the pytest summary
repeats them.  Run directly with ``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import random
import sys
import time
from pathlib import Path

import pytest

from igmm.boolset import ValuationSet, cube_to_set, cubes_pairwise_disjoint, disjoint_cube_cover
from igmm.kiss import parse, parse_kiss2, write_kiss2, write_xkiss
from igmm.machine import Igmm, isomorphic, reachable_prune, restrict_to_first_cubes
from igmm.reduce import bisim_quotient, reduce_with_output_assignment
from igmm.relations import bisimulation_partition, representatives, spec_graph, specialization_relation
from igmm.samples import (NZ, Z, controller, controller_min, pairwise_gadget, seven_state,
                          seven_state_reduced)
from igmm.satmin import MinimizeOptions, minimize
from igmm.verify import brute_force_min_size, check_specialization, random_igmm

DATA = Path(__file__).resolve().parent.parent / "data"

FIXTURE_TIME_LIMIT_S = 1.0
SWEEP_TIME_LIMIT_S = 60.0
N_CORPUS = 240
N_CUBE_SETS = 10_000
N_ROUND_TRIP = 1_000

RESULTS: dict[int, tuple[bool, str]] = {}


def record(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = (ok, detail)
    print(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")


def corpus() -> list[Igmm]:
    """Seeded machines: up to 5 states, 2 input and 2 output propositions."""
    out = []
    for seed in range(N_CORPUS):
        rng = random.Random(seed)
        out.append(random_igmm(seed, rng.randint(1, 5), rng.randint(1, 2), rng.randint(1, 2),
                               density=(0.5, 1.0)[seed % 2],
                               output_bias=rng.choice([0.3, 0.5, 0.8])))
    return out


def fixtures() -> dict[str, Igmm]:
    return {p.name: parse(p.read_text()) for p in sorted(DATA.iterdir()) if p.is_file()}


def run_all(m: Igmm) -> dict[str, Igmm]:
    """The three methods on the reachable part of ``m``."""
    work = reachable_prune(m)[0]
    return {"sat": minimize(work)[0],
            "bisim-oa": reduce_with_output_assignment(work),
            "bisim": bisim_quotient(work)}


def criterion_1():
    t0 = time.perf_counter()
    res, _ = minimize(controller())
    dt = time.perf_counter() - t0
    ok = res.n_states == 1 and isomorphic(res, controller_min()) and dt < FIXTURE_TIME_LIMIT_S
    return ok, f"3 -> {res.n_states} states, exact outputs {isomorphic(res, controller_min())}, {dt:.3f} s"


def criterion_2():
    t0 = time.perf_counter()
    res, rep = minimize(seven_state())
    dt = time.perf_counter() - t0
    c1 = next(k for k, c in enumerate(rep.classes) if 1 in c)
    a, not_a = 1, 0
    outs_ok = res.output(c1, a) == NZ and res.output(c1, not_a) == Z
    ok = res.n_states == 3 and outs_ok and dt < FIXTURE_TIME_LIMIT_S
    return ok, (f"7 -> {res.n_states} states, class of 1 = {sorted(rep.classes[c1])}, "
                f"outputs match {outs_ok}, {dt:.3f} s")


def criterion_3():
    m = seven_state()
    red = reduce_with_output_assignment(m)
    g = spec_graph(specialization_relation(m))
    leaves = sorted(g.leaf_sets())
    pinned_r = representatives(g, {3: 1, 4: 1, 6: 1})
    pinned = reduce_with_output_assignment(m, {3: 1, 4: 1, 6: 1}, until_fixpoint=False)
    ok = (red.n_states == 4 and set(red.names) == {"0", "1", "2", "5"}
          and leaves == [(0,), (1,), (2,), (5,)] and (4, 6) in g.nodes
          and pinned_r == [0, 1, 2, 1, 1, 5, 1] and isomorphic(pinned, seven_state_reduced()))
    return ok, (f"{red.n_states} states {sorted(red.names)}, leaves {leaves}, "
                f"node (4, 6) {(4, 6) in g.nodes}, pinned map {pinned_r}")


def criterion_4():
    q = bisim_quotient(seven_state())
    blocks = bisimulation_partition(seven_state())
    ok = q.n_states == 6 and (4, 6) in blocks
    return ok, f"{q.n_states} states, blocks {blocks}"


def criterion_5():
    t0 = time.perf_counter()
    machines = corpus()
    mismatches = []
    for seed, m in enumerate(machines):
        got = minimize(m)[0].n_states
        want = brute_force_min_size(reachable_prune(m)[0])
        got_all = minimize(m, MinimizeOptions(keep_unreachable=True))[0].n_states
        want_all = brute_force_min_size(m)
        if got != want or got_all != want_all:
            mismatches.append(seed)
    dt = time.perf_counter() - t0
    ok = not mismatches and len(machines) >= 200 and dt < SWEEP_TIME_LIMIT_S
    return ok, (f"{len(machines) - len(mismatches)}/{len(machines)} equal to exhaustive search, "
                f"{dt:.1f} s" + (f", mismatching seeds {mismatches[:10]}" if mismatches else ""))


def criterion_6():
    failures = []
    instances = list(fixtures().items()) + [(f"seed {s}", m) for s, m in enumerate(corpus())]
    gadget_all = minimize(pairwise_gadget(), MinimizeOptions(keep_unreachable=True))[0]
    checks = 0
    for name, m in instances:
        for method, res in run_all(m).items():
            checks += 1
            if check_specialization(res, m) is not None:
                failures.append((name, method))
    checks += 1
    if check_specialization(gadget_all, pairwise_gadget()) is not None:
        failures.append(("gadget, all states", "sat"))
    return not failures, f"{checks} results checked, {len(failures)} failures {failures[:5]}"


def criterion_7():
    order_bad, idem_bad = [], []
    instances = list(fixtures().items()) + [(f"seed {s}", m) for s, m in enumerate(corpus())]
    for name, m in instances:
        r = run_all(m)
        sizes = [r["sat"].n_states, r["bisim-oa"].n_states, r["bisim"].n_states, m.n_states]
        if sizes != sorted(sizes):
            order_bad.append((name, sizes))
        again = {"sat": minimize(r["sat"])[0],
                 "bisim-oa": reduce_with_output_assignment(r["bisim-oa"]),
                 "bisim": bisim_quotient(r["bisim"])}
        for method in r:
            if again[method].n_states < r[method].n_states:
                idem_bad.append((name, method))
    ok = not order_bad and not idem_bad
    return ok, (f"{len(instances)} instances, ordering violations {order_bad[:3]}, "
                f"idempotence violations {idem_bad[:3]}")


def criterion_8():
    res, rep = minimize(pairwise_gadget(), MinimizeOptions(keep_unreachable=True))
    ok = res.n_states == 2 and rep.cegar_rounds >= 1 and rep.rounds_per_n.get(1, 0) >= 1
    return ok, f"3 -> {res.n_states} states, {rep.cegar_rounds} refinement rounds, tried n = {rep.n_tried}"


def criterion_9():
    rows, bad = [], []
    cases = [(name, m, False) for name, m in fixtures().items()]
    cases.append(("gadget.xkiss, all states", pairwise_gadget(), True))
    strict_fig2 = False
    for name, m, keep in cases:
        _, s = minimize(m, MinimizeOptions(keep_unreachable=keep, seeded=True))
        _, u = minimize(m, MinimizeOptions(keep_unreachable=keep, seeded=False))
        rows.append(f"{name} {s.sat_vars}/{s.sat_clauses} vs {u.sat_vars}/{u.sat_clauses}")
        if s.sat_vars > u.sat_vars or s.sat_clauses > u.sat_clauses:
            bad.append(name)
        if name == "fig2.xkiss":
            strict_fig2 = s.sat_vars < u.sat_vars and s.sat_clauses < u.sat_clauses
    ok = not bad and strict_fig2
    return ok, f"seeded vs unseeded vars/clauses: {'; '.join(rows)}"


def parity_family(m: int) -> ValuationSet:
    """Union over pairs (o_2k, o_2k+1) of 'exactly one of the two is true'."""
    k = 2 * m
    return ValuationSet.of([v for v in range(1 << k)
                            if any((v >> 2 * j & 1) != (v >> (2 * j + 1) & 1) for j in range(m))], k)


def criterion_10():
    rng = random.Random(10)
    bad = 0
    for _ in range(N_CUBE_SETS):
        k = rng.randint(0, 6)
        mask = rng.randint(1, (1 << (1 << k)) - 1)
        s = ValuationSet(mask, k)
        cubes = disjoint_cube_cover(s)
        union = ValuationSet.empty(k)
        for c in cubes:
            union = union | cube_to_set(c, k)
        if not (cubes_pairwise_disjoint(cubes) and union == s
                and disjoint_cube_cover(ValuationSet(mask, k)) == cubes):
            bad += 1
    counts = [len(disjoint_cube_cover(parity_family(m))) for m in (1, 2, 3)]
    want = [2 ** m for m in (1, 2, 3)]
    ok = bad == 0 and counts == want
    return ok, (f"{N_CUBE_SETS - bad}/{N_CUBE_SETS} random sets partitioned exactly; "
                f"parity family cube counts {counts}, required {want}")


def criterion_11():
    failures = []
    machines = list(fixtures().items())
    for seed in range(N_ROUND_TRIP):
        rng = random.Random(seed)
        machines.append((f"seed {seed}", random_igmm(
            seed, rng.randint(1, 6), rng.randint(1, 3), rng.randint(1, 3),
            density=rng.choice([0.3, 0.7, 1.0]), output_bias=rng.choice([0.3, 0.6]))))
    for name, m in machines:
        once = parse(write_xkiss(m))
        if not (isomorphic(once, m) and isomorphic(parse(write_xkiss(once)), once)):
            failures.append((name, "xkiss"))
        cubes = restrict_to_first_cubes(m)
        once = parse_kiss2(write_kiss2(cubes))
        if not (isomorphic(once, cubes) and isomorphic(parse_kiss2(write_kiss2(once)), once)):
            failures.append((name, "kiss2"))
    return not failures, f"{len(machines)} machines x 2 formats, {len(failures)} failures {failures[:5]}"


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 12)}


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    ok, detail = CRITERIA[n]()
    record(n, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for n in sorted(CRITERIA):
        ok, detail = CRITERIA[n]()
        record(n, ok, detail)
        failed += not ok
    sys.exit(1 if failed else 0)
