"""Verdict table for every CVT/XOR property across several bases.

Writes one JSON file with all verdicts when --out is given.
"""

import argparse
import json

from cvtlab.proplab import ALL_PROPERTIES, TrialConfig, expected_universal, run_campaign


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bases", type=int, nargs="+", default=list(range(2, 8)))
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--k", type=int, default=4)
    ap.add_argument("--width", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out")
    args = ap.parse_args()

    rows = []
    print(f"{'prop':>5} " + " ".join(f"{'b' + str(b):>14}" for b in args.bases))
    table = {}
    for beta in args.bases:
        cfg = TrialConfig(base=beta, k=args.k, width=args.width, trials=args.trials, seed=args.seed)
        for v in run_campaign(cfg):
            table[v.property_id, beta] = v
            rows.append(v.as_dict())
    for pid in ALL_PROPERTIES:
        cells = []
        for beta in args.bases:
            v = table[pid, beta]
            mark = "*" if pid in expected_universal(beta) else " "
            cells.append(f"{v.holds_count}/{v.fail_count}/{v.not_evaluable_count}{mark}".rjust(14))
        print(f"{pid:>5} " + " ".join(cells))
    print("cells are holds/fails/not-evaluable; * marks laws expected to hold in that base")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
