"""Check sum(X) == CVT + XOR over random operand tuples in a range of bases."""

import argparse
import random
import time

from cvtlab import sum_identity_check


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bases", type=int, nargs="+", default=list(range(2, 11)))
    ap.add_argument("--tuples", type=int, default=20_000, help="random tuples per base")
    ap.add_argument("--max-k", type=int, default=8)
    ap.add_argument("--bits", type=int, default=64)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    print(f"{'base':>4} {'tuples':>8} {'violations':>10} {'seconds':>8}")
    for beta in args.bases:
        t0 = time.perf_counter()
        bad = 0
        for _ in range(args.tuples):
            xs = [rng.getrandbits(args.bits) for _ in range(rng.randint(1, args.max_k))]
            r = sum_identity_check(xs, beta)
            bad += sum(xs) != r.cvt + r.xor
        print(f"{beta:>4} {args.tuples:>8} {bad:>10} {time.perf_counter() - t0:>8.2f}")


if __name__ == "__main__":
    main()
