"""Compare SAT minimization against exhaustive search on random machines.

    python3 scripts/differential_sweep.py --count 500 --max-states 6
"""
import argparse
import random
import time

from igmm.machine import reachable_prune
from igmm.reduce import bisim_quotient, reduce_with_output_assignment
from igmm.satmin import MinimizeOptions, minimize
from igmm.verify import brute_force_min_size, is_specialization, random_igmm


def instance(seed, max_states, max_in, max_out):
    rng = random.Random(seed)
    return random_igmm(seed, rng.randint(1, max_states), rng.randint(1, max_in),
                       rng.randint(1, max_out), density=rng.choice([0.3, 0.5, 0.8, 1.0]),
                       output_bias=rng.choice([0.3, 0.5, 0.8]))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=300)
    ap.add_argument("--first-seed", type=int, default=0)
    ap.add_argument("--max-states", type=int, default=5)
    ap.add_argument("--max-in", type=int, default=2)
    ap.add_argument("--max-out", type=int, default=2)
    ap.add_argument("--eager", action="store_true")
    args = ap.parse_args()

    t0 = time.perf_counter()
    failures = 0
    totals = {"sat": 0, "bisim-oa": 0, "bisim": 0, "input": 0}
    for seed in range(args.first_seed, args.first_seed + args.count):
        m = reachable_prune(instance(seed, args.max_states, args.max_in, args.max_out))[0]
        res, rep = minimize(m, MinimizeOptions(eager=args.eager))
        want = brute_force_min_size(m)
        oa, bq = reduce_with_output_assignment(m), bisim_quotient(m)
        ok = res.n_states == want and is_specialization(res, m) and is_specialization(oa, m)
        if not ok:
            failures += 1
            print(f"seed {seed}: sat {res.n_states}, exhaustive {want}")
        for key, size in (("sat", res.n_states), ("bisim-oa", oa.n_states),
                          ("bisim", bq.n_states), ("input", m.n_states)):
            totals[key] += size
    dt = time.perf_counter() - t0
    print(f"{args.count} machines, {failures} mismatches, {dt:.1f} s")
    print("total states: " + ", ".join(f"{k} {v}" for k, v in totals.items()))


if __name__ == "__main__":
    main()
