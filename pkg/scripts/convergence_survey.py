"""Histogram of iteration counts for the carry/sum recurrence adder.

Iterations are compared with max digit length + 1, the tight worst case.
"""

import argparse
import collections
import itertools

from cvtlab.adder import convergence_bound_check


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bases", type=int, nargs="+", default=[2, 3, 4, 10])
    ap.add_argument("--digits", type=int, default=4, help="exhaust operands below base**digits")
    args = ap.parse_args()

    for beta in args.bases:
        hist = collections.Counter()
        over = 0
        limit = beta**args.digits
        for a, b in itertools.product(range(limit), repeat=2):
            chk = convergence_bound_check(a, b, beta)
            hist[chk.iterations] += 1
            over += not chk.within
        mean = sum(k * v for k, v in hist.items()) / limit**2
        print(f"base {beta}: {limit**2} pairs, mean iterations {mean:.3f}, "
              f"max {max(hist)}, over bound {over}")
        for it in sorted(hist):
            print(f"  {it:>3} {hist[it]:>9}")


if __name__ == "__main__":
    main()
