"""Write seeded random machines as XKISS files, e.g. as input for ``igmm bench``.

    python3 scripts/make_corpus.py out/ --count 50 --states 10
"""
import argparse
from pathlib import Path

from igmm.kiss import write_xkiss
from igmm.verify import random_igmm


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("out", type=Path)
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--states", type=int, default=8)
    ap.add_argument("--in-props", type=int, default=2)
    ap.add_argument("--out-props", type=int, default=2)
    ap.add_argument("--density", type=float, default=0.8)
    ap.add_argument("--output-bias", type=float, default=0.5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    for k in range(args.count):
        m = random_igmm(args.seed + k, args.states, args.in_props, args.out_props,
                        args.density, args.output_bias)
        (args.out / f"rand_{args.seed + k:04d}.xkiss").write_text(write_xkiss(m))
    print(f"wrote {args.count} machines to {args.out}")


if __name__ == "__main__":
    main()
