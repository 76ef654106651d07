"""Measured CAM adder-tree delay against the n * log2(K) model."""

import argparse
import random
import statistics

from cvtlab.camsim import build_tree, simulate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ks", type=int, nargs="+", default=[2, 4, 8, 16, 32])
    ap.add_argument("--ns", type=int, nargs="+", default=[2, 4, 8])
    ap.add_argument("--sets", type=int, default=300)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    print(f"{'K':>3} {'n':>3} {'model':>6} {'mean':>7} {'max':>4} {'model+levels':>12}")
    for k in args.ks:
        for n in args.ns:
            tree = build_tree(k, n)
            delays = []
            for _ in range(args.sets):
                xs = [rng.randrange(2**n) for _ in range(k)]
                delays.append(simulate(tree, xs).measured_delay)
            print(f"{k:>3} {n:>3} {tree.paper_model_delay:>6} {statistics.mean(delays):>7.2f} "
                  f"{max(delays):>4} {tree.paper_model_delay + tree.depth:>12}")


if __name__ == "__main__":
    main()
