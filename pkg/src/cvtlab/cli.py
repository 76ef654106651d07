"""``cvtlab`` command line: transform, add, props, cam.

Every successful command prints one JSON report. Exit codes: 0 success,
2 usage or parse error, 3 invariant violation (a bug in this package).
"""

from __future__ import annotations

import argparse
import datetime
import json
import random
import sys
from typing import List, Optional, Sequence, Tuple

from cvtlab import adder, camsim, proplab
from cvtlab.digitvec import (
    DigitVector,
    GeneralizedDigitVector,
    RadixError,
    format_vector,
    parse_vector,
    to_digits,
)
from cvtlab.errors import InvariantViolation
from cvtlab.transforms import RuleTable, TransformError, ivt_apply, transform

FORMAT_VERSION = "1"


class UsageError(Exception):
    pass


def make_report(command: str, argv: Sequence[str], payload: dict, seed=None) -> dict:
    return {
        "format": FORMAT_VERSION,
        "command": command,
        "argv": list(argv),
        "seed": seed,
        "payload": payload,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds"),
    }


def strip_timestamp(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "timestamp"}


def dump(report: dict) -> str:
    return json.dumps(report, indent=2)


# -- operand parsing -------------------------------------------------------------


def parse_operands(tokens: Sequence[str], base: Optional[int]) -> Tuple[int, List[DigitVector]]:
    """Resolve bare decimals and ``b:digits`` strings to one common base.

    A prefix fixes the base; ``--base`` only applies when every token is bare.
    Conflicting prefixes, or a prefix disagreeing with ``--base``, is an error.
    """
    parsed = []
    prefixed_base = None
    for tok in tokens:
        if ":" in tok:
            try:
                v = parse_vector(tok)
            except RadixError as exc:
                raise UsageError(f"operand {tok!r}: {exc}") from None
            if prefixed_base is None:
                prefixed_base = v.base
            elif v.base != prefixed_base:
                raise UsageError(f"operand {tok!r}: base mismatch ({v.base} vs {prefixed_base})")
            if base is not None and v.base != base:
                raise UsageError(f"operand {tok!r}: base mismatch with --base {base}")
            parsed.append(v)
        else:
            try:
                n = int(tok, 10)
            except ValueError:
                raise UsageError(f"operand {tok!r}: not a natural number") from None
            if n < 0:
                raise UsageError(f"operand {tok!r}: negative")
            parsed.append(n)
    resolved = prefixed_base or base or 2
    if resolved < 2:
        raise UsageError(f"--base must be >= 2, got {resolved}")
    vectors = []
    for p in parsed:
        if isinstance(p, GeneralizedDigitVector):
            vectors.append(p.canonical())
        else:
            vectors.append(to_digits(p, resolved))
    return resolved, vectors


def _vec(v: GeneralizedDigitVector) -> dict:
    return {"value": v.value, "digits": format_vector(v)}


# -- commands --------------------------------------------------------------------


def cmd_transform(args) -> dict:
    base, vs = parse_operands(args.numbers, args.base)
    width = args.width or max(len(v) for v in vs)
    vs = [v.padded(width) for v in vs]
    payload = {"base": base, "operands": [_vec(v) for v in vs], "op": args.op}
    if args.op == "ivt":
        if args.rule is None:
            raise UsageError("--rule is required with --op ivt")
        arity = args.arity or len(vs)
        if arity != len(vs):
            raise UsageError(f"--arity {arity}: got {len(vs)} operands")
        try:
            rule = RuleTable.from_index(args.rule, base, arity)
        except TransformError as exc:
            raise UsageError(f"--rule {args.rule}: {exc}") from None
        out = ivt_apply(rule, vs)
        payload["rule"] = {"index": rule.rule_index, "arity": arity, "outputs": list(rule.outputs)}
        payload["ivt"] = _vec(out)
        return payload

    r = transform(vs, base)
    if args.op in ("cvt", "both"):
        payload["cvt"] = _vec(r.cvt)
    if args.op in ("xor", "both"):
        payload["xor"] = _vec(r.xor)
    if args.op == "both":
        total = sum(v.value for v in vs)
        if total != r.cvt.value + r.xor.value:
            raise InvariantViolation(f"sum {total} != cvt {r.cvt.value} + xor {r.xor.value}")
        payload["identity"] = f"{total}={r.cvt.value}+{r.xor.value}"
    return payload


def cmd_add(args) -> dict:
    base, vs = parse_operands(args.numbers, args.base)
    values = [v.value for v in vs]
    result, trace = adder.add_multi(values, base)
    if result != sum(values):
        raise InvariantViolation("adder result differs from direct sum")
    payload = {
        "base": base,
        "operands": values,
        "result": result,
        "result_digits": format_vector(to_digits(result, base)),
        "iterations": trace.iterations,
    }
    if args.trace:
        payload["steps"] = [[c, x] for c, x in trace.steps]
    return payload


def _parse_properties(text: str) -> List[str]:
    if text.lower() == "all":
        return list(proplab.ALL_PROPERTIES)
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        match = [p for p in proplab.ALL_PROPERTIES if p.lower() == tok.lower()]
        if not match:
            raise UsageError(f"--properties: unknown property {tok!r}")
        out.append(match[0])
    return out


def _single_case(pid: str, args) -> tuple:
    shape = proplab._shape(pid)
    need = {
        "copies": ("x", "copies"),
        "scaled": ("xs", "shift"),
        "concat": ("xs", "ys"),
        "power": ("x", "copies", "power"),
    }[shape]
    missing = [n for n in need if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{pid} needs --{' --'.join(missing)} for a single case")
    if shape == "copies":
        return (args.x, args.copies)
    if shape == "scaled":
        return (tuple(args.xs), args.shift)
    if shape == "concat":
        return (tuple(args.xs), tuple(args.ys))
    return (args.x, args.copies, args.power)


def cmd_props(args) -> dict:
    if args.base < 2:
        raise UsageError(f"--base must be >= 2, got {args.base}")
    pids = _parse_properties(args.properties)
    explicit = any(getattr(args, n) is not None for n in ("x", "xs", "ys"))
    if explicit:
        verdicts = [proplab.adjudicate(pid, args.base, [_single_case(pid, args)], workers=1) for pid in pids]
        config = {"base": args.base, "mode": "single"}
    else:
        if args.trials == "exhaustive":
            trials = None
        else:
            try:
                trials = int(args.trials)
            except ValueError:
                raise UsageError(f"--trials {args.trials!r}: expected a count or 'exhaustive'") from None
        try:
            cfg = proplab.TrialConfig(
                base=args.base, k=args.k, width=args.width, trials=trials, seed=args.seed,
                max_copies=args.max_copies, max_shift=args.max_shift, max_power=args.max_power,
            )
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        verdicts = proplab.run_campaign(cfg, pids)
        config = {
            "base": cfg.base, "k": cfg.k, "width": cfg.width,
            "trials": "exhaustive" if cfg.trials is None else cfg.trials,
            "seed": cfg.seed, "max_copies": cfg.max_copies,
            "max_shift": cfg.max_shift, "max_power": cfg.max_power,
        }
    rows = [v.as_dict() for v in verdicts]
    for v in verdicts:
        if v.condition_violations:
            raise InvariantViolation(f"{v.property_id}: column-remainder condition disagrees on "
                                     f"{v.condition_violations} trials")
    return {"config": config, "verdicts": rows}


def cmd_cam(args) -> dict:
    try:
        tree = camsim.build_tree(args.k, args.n)
    except camsim.CamError as exc:
        raise UsageError(str(exc)) from None
    if args.random:
        if args.inputs:
            raise UsageError("give either explicit inputs or --random, not both")
        rng = random.Random(args.seed)
        inputs = [rng.randrange(2 ** args.n) for _ in range(args.k)]
    else:
        try:
            inputs = [int(t, 10) for t in args.inputs]
        except ValueError as exc:
            raise UsageError(f"cam inputs: {exc}") from None
    try:
        report = camsim.simulate(tree, inputs, trace=args.trace)
    except (camsim.CamError, camsim.CamOverflow) as exc:
        raise UsageError(str(exc)) from None
    payload = {
        "k": tree.leaf_count,
        "n": tree.input_width,
        "cam_count": tree.cam_count,
        "levels": tree.depth,
        "widths": [level[0].width for level in tree.levels],
    }
    payload.update(report.as_dict())
    return payload


# -- entry point -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cvtlab", description=__doc__.splitlines()[0])
    p.add_argument("--out", help="also write the report to this file")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("transform", help="multi-operand CVT / XOR / rule-table transforms")
    t.add_argument("numbers", nargs="+")
    t.add_argument("--base", type=int)
    t.add_argument("--op", choices=["cvt", "xor", "both", "ivt"], default="both")
    t.add_argument("--rule", type=int)
    t.add_argument("--arity", type=int)
    t.add_argument("--width", type=int)

    a = sub.add_parser("add", help="add by CVT-XOR iteration")
    a.add_argument("numbers", nargs="+")
    a.add_argument("--base", type=int)
    a.add_argument("--trace", action="store_true")

    pr = sub.add_parser("props", help="adjudicate the algebraic laws")
    pr.add_argument("--base", type=int, default=2)
    pr.add_argument("--properties", default="all")
    pr.add_argument("--trials", default="1000")
    pr.add_argument("--seed", type=int, default=0)
    pr.add_argument("--width", type=int, default=4)
    pr.add_argument("--k", type=int, default=4)
    pr.add_argument("--max-copies", type=int, default=8)
    pr.add_argument("--max-shift", type=int, default=2)
    pr.add_argument("--max-power", type=int, default=3)
    pr.add_argument("--x", type=int, help="single case: repeated operand")
    pr.add_argument("--copies", type=int, help="single case: copy count")
    pr.add_argument("--power", type=int, help="single case: exponent")
    pr.add_argument("--shift", type=int, help="single case: scalar = base**shift")
    pr.add_argument("--xs", type=int, nargs="+", help="single case: first operand list")
    pr.add_argument("--ys", type=int, nargs="+", help="single case: second operand list")

    c = sub.add_parser("cam", help="simulate the CAM adder tree")
    c.add_argument("inputs", nargs="*")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--random", action="store_true")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--trace", action="store_true")
    return p


COMMANDS = {"transform": cmd_transform, "add": cmd_add, "props": cmd_props, "cam": cmd_cam}


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    try:
        payload = COMMANDS[args.command](args)
    except InvariantViolation as exc:
        print(f"cvtlab: invariant violation: {exc}", file=sys.stderr)
        return 3
    except (UsageError, RadixError, TransformError, ValueError) as exc:
        print(f"cvtlab: error: {exc}", file=sys.stderr)
        return 2
    seed = None
    if args.command == "props" or (args.command == "cam" and args.random):
        seed = args.seed
    text = dump(make_report(args.command, argv, payload, seed))
    print(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
