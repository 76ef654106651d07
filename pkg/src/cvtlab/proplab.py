"""Adjudicate claimed algebraic laws of the multi-operand CVT and XOR.

Each law is a pair (claimed value, actual value) computed from the same
inputs. A campaign draws inputs (seeded random or exhaustive), evaluates the
law with :mod:`cvtlab.transforms`, and aggregates a :class:`PropertyVerdict`.
Counterexamples are replayed with :mod:`cvtlab.oracle` before they are
reported.

Property ids::

    P1   CVT of K copies of X is K*X (K even) or (K-1)*X (K odd)
    P1g  same, generalized: (K - K mod b)*X whenever K mod b is 0 or 1
    P2a  CVT(S*xs) == S*CVT(xs)                 S = b**t
    P2b  CVT(xs // S) == floor(P / (S + m))     m = #odd / (S/2)
    P3   CVT(xs + ys) == CVT(xs) + CVT(ys)
    P4   CVT(copies of X**K) == CVT(copies of X) * X**(K-1)
    P5   XOR of K copies of X is 0 (K even) or X (K odd)
    P5g  same, generalized on K mod b
    P6a  XOR(S*xs) == S*XOR(xs)
    P6b  XOR(xs // S) == XOR(xs) // S
    P7   XOR(xs + ys) == XOR(XOR(xs), XOR(ys))
    P8   XOR(copies of X**K) == XOR(copies of X) * X**(K-1)
"""

from __future__ import annotations

import itertools
import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from cvtlab import oracle
from cvtlab.digitvec import check_base
from cvtlab.errors import InvariantViolation
from cvtlab.transforms import cvt_multi, xor_multi

ALL_PROPERTIES = ("P1", "P1g", "P2a", "P2b", "P3", "P4", "P5", "P5g", "P6a", "P6b", "P7", "P8")

WORKERS_ENV = "CVTLAB_WORKERS"

HOLDS, FAILS, NOT_EVALUABLE = "holds", "fails", "not_evaluable"


class _Ops:
    """Pluggable transform backend: ``cvt``/``xor`` take a list of ints."""

    def __init__(self, cvt: Callable, xor: Callable):
        self.cvt = cvt
        self.xor = xor


IMPL = _Ops(
    cvt=lambda xs, b: cvt_multi(list(xs), b).value,
    xor=lambda xs, b: xor_multi(list(xs), b).value,
)
ORACLE = _Ops(cvt=oracle.cvt, xor=oracle.xor)


@dataclass(frozen=True)
class Outcome:
    claimed: Optional[int]
    actual: Optional[int]
    status: str
    # P3 only: predicted validity from column remainders
    condition: Optional[bool] = None
    note: Optional[str] = None


def _outcome(claimed, actual, condition=None, note=None) -> Outcome:
    return Outcome(claimed, actual, HOLDS if claimed == actual else FAILS, condition, note)


def _skip(note: str) -> Outcome:
    return Outcome(None, None, NOT_EVALUABLE, None, note)


# -- individual laws -------------------------------------------------------------
#
# Every evaluator takes (inputs, base, ops) and returns an Outcome.


def _p1(inp, base, ops=IMPL):
    x, k = inp
    actual = ops.cvt([x] * k, base)
    claimed = (k if k % 2 == 0 else k - 1) * x
    return _outcome(claimed, actual)


def _p1g(inp, base, ops=IMPL):
    x, k = inp
    r = k % base
    if r not in (0, 1):
        return _skip(f"K mod base = {r}")
    return _outcome((k - r) * x, ops.cvt([x] * k, base))


def _p2a(inp, base, ops=IMPL):
    xs, t = inp
    s = base ** t
    return _outcome(s * ops.cvt(xs, base), ops.cvt([s * x for x in xs], base))


def p2b_m(xs: Sequence[int], scalar: int) -> Optional[Fraction]:
    """``m = (#odd operands) / (scalar / 2)``; None unless scalar/2 is a positive integer."""
    if scalar % 2:
        return None
    odd = sum(1 for x in xs if x % 2)
    return Fraction(odd, scalar // 2)


def _p2b(inp, base, ops=IMPL):
    xs, t = inp
    s = base ** t
    m = p2b_m(xs, s)
    if m is None:
        return _skip(f"scalar {s} is odd, m undefined")
    p = ops.cvt(xs, base)
    claimed = math.floor(Fraction(p) / (s + m))
    actual = ops.cvt([x // s for x in xs], base)
    note = None if m.denominator == 1 else f"m={m} non-integral"
    return _outcome(claimed, actual, note=note)


def _p3(inp, base, ops=IMPL):
    xs, ys = inp
    claimed = ops.cvt(xs, base) + ops.cvt(ys, base)
    actual = ops.cvt(list(xs) + list(ys), base)
    # column remainders of xs and ys are the XOR digits; no remainder
    # overflow means their pairwise carry is zero
    condition = ops.cvt([ops.xor(xs, base), ops.xor(ys, base)], base) == 0
    return _outcome(claimed, actual, condition=condition)


def _p4(inp, base, ops=IMPL):
    x, copies, k = inp
    p = ops.cvt([x] * copies, base)
    return _outcome(p * x ** (k - 1), ops.cvt([x ** k] * copies, base))


def _p5(inp, base, ops=IMPL):
    x, k = inp
    return _outcome(0 if k % 2 == 0 else x, ops.xor([x] * k, base))


def _p5g(inp, base, ops=IMPL):
    x, k = inp
    r = k % base
    if r not in (0, 1):
        return _skip(f"K mod base = {r}")
    return _outcome(x if r else 0, ops.xor([x] * k, base))


def _p6a(inp, base, ops=IMPL):
    xs, t = inp
    s = base ** t
    return _outcome(s * ops.xor(xs, base), ops.xor([s * x for x in xs], base))


def _p6b(inp, base, ops=IMPL):
    xs, t = inp
    s = base ** t
    return _outcome(ops.xor(xs, base) // s, ops.xor([x // s for x in xs], base))


def _p7(inp, base, ops=IMPL):
    xs, ys = inp
    claimed = ops.xor([ops.xor(xs, base), ops.xor(ys, base)], base)
    return _outcome(claimed, ops.xor(list(xs) + list(ys), base))


def _p8(inp, base, ops=IMPL):
    x, copies, k = inp
    p = ops.xor([x] * copies, base)
    return _outcome(p * x ** (k - 1), ops.xor([x ** k] * copies, base))


EVALUATORS: Dict[str, Callable] = {
    "P1": _p1, "P1g": _p1g, "P2a": _p2a, "P2b": _p2b, "P3": _p3, "P4": _p4,
    "P5": _p5, "P5g": _p5g, "P6a": _p6a, "P6b": _p6b, "P7": _p7, "P8": _p8,
}

CONDITION_NOTES = {
    "P1": "literal even/odd rule; exact in base 2 only",
    "P1g": "holds whenever K mod base is 0 or 1",
    "P2a": "digit shift; expected universal",
    "P2b": "m = #odd/(S/2) evaluated exactly; not evaluable for odd S",
    "P3": "holds iff no column has remainder(xs) + remainder(ys) >= base",
    "P4": "expected universal in base 2; adjudicated per base otherwise",
    "P5": "literal even/odd rule; exact in base 2 only",
    "P5g": "holds whenever K mod base is 0 or 1",
    "P6a": "digit shift; expected universal",
    "P6b": "digit shift; expected universal",
    "P7": "column sums mod base are associative; expected universal",
    "P8": "expected universal in base 2; adjudicated per base otherwise",
}


def expected_universal(base: int) -> Tuple[str, ...]:
    """Laws that must show zero counterexamples in ``base`` (a failure is a bug)."""
    laws = ["P1g", "P2a", "P5g", "P6a", "P6b", "P7"]
    if base == 2:
        laws += ["P1", "P4", "P5", "P8"]
    return tuple(sorted(laws))


# one named checker per law


def check_p1_cvt_identical(x: int, k: int, base: int) -> Dict[str, Outcome]:
    return {"P1": _p1((x, k), base), "P1g": _p1g((x, k), base)}


def check_p2_cvt_scaling(xs: Sequence[int], t: int, base: int) -> Dict[str, Outcome]:
    inp = (tuple(xs), t)
    return {"P2a": _p2a(inp, base), "P2b": _p2b(inp, base)}


def check_p3_cvt_concat(xs: Sequence[int], ys: Sequence[int], base: int) -> Outcome:
    return _p3((tuple(xs), tuple(ys)), base)


def check_p4_cvt_power(x: int, copies: int, k: int, base: int) -> Outcome:
    return _p4((x, copies, k), base)


def check_p5_xor_identical(x: int, k: int, base: int) -> Dict[str, Outcome]:
    return {"P5": _p5((x, k), base), "P5g": _p5g((x, k), base)}


def check_p6_xor_scaling(xs: Sequence[int], t: int, base: int) -> Dict[str, Outcome]:
    inp = (tuple(xs), t)
    return {"P6a": _p6a(inp, base), "P6b": _p6b(inp, base)}


def check_p7_xor_concat(xs: Sequence[int], ys: Sequence[int], base: int) -> Outcome:
    return _p7((tuple(xs), tuple(ys)), base)


def check_p8_xor_power(x: int, copies: int, k: int, base: int) -> Outcome:
    return _p8((x, copies, k), base)


def replay(pid: str, inputs, base: int) -> Outcome:
    """Re-evaluate one case through the reference oracle."""
    return EVALUATORS[pid](inputs, base, ORACLE)


# -- campaigns -------------------------------------------------------------------


@dataclass(frozen=True)
class TrialConfig:
    """``trials=None`` means exhaustive enumeration over the small domain."""

    base: int = 2
    k: int = 4
    width: int = 4
    trials: Optional[int] = 1000
    seed: int = 0
    max_copies: int = 8
    max_shift: int = 2
    max_power: int = 3
    max_counterexamples: int = 10

    def __post_init__(self):
        check_base(self.base)
        if self.trials is not None and self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.k < 1 or self.width < 1:
            raise ValueError("k and width must be >= 1")
        if self.max_copies < 1 or self.max_shift < 1 or self.max_power < 1:
            raise ValueError("max_copies, max_shift and max_power must be >= 1")


@dataclass(frozen=True)
class Counterexample:
    inputs: tuple
    claimed: int
    actual: int


@dataclass
class PropertyVerdict:
    property_id: str
    base: int
    trials: int
    holds_count: int = 0
    fail_count: int = 0
    not_evaluable_count: int = 0
    counterexamples: List[Counterexample] = field(default_factory=list)
    condition_note: str = ""
    # P3: trials where the column-remainder prediction disagreed with the outcome
    condition_violations: int = 0
    nonintegral_m: int = 0

    @property
    def holds(self) -> bool:
        return self.fail_count == 0

    def as_dict(self) -> dict:
        return {
            "id": self.property_id,
            "base": self.base,
            "trials": self.trials,
            "holds": self.holds_count,
            "fails": self.fail_count,
            "not_evaluable": self.not_evaluable_count,
            "condition_violations": self.condition_violations,
            "nonintegral_m": self.nonintegral_m,
            "counterexamples": [
                {"inputs": _listify(c.inputs), "claimed": c.claimed, "actual": c.actual}
                for c in self.counterexamples
            ],
            "note": self.condition_note,
        }


def _listify(x):
    if isinstance(x, tuple):
        return [_listify(v) for v in x]
    return x


def _shape(pid: str) -> str:
    if pid in ("P1", "P1g", "P5", "P5g"):
        return "copies"
    if pid in ("P2a", "P2b", "P6a", "P6b"):
        return "scaled"
    if pid in ("P3", "P7"):
        return "concat"
    return "power"


def _copy_counts(pid: str, cfg: TrialConfig) -> List[int]:
    top = cfg.max_copies
    if pid.endswith("g"):
        top = max(top, 2 * cfg.base + 1)
        return [c for c in range(1, top + 1) if c % cfg.base in (0, 1)]
    return list(range(1, top + 1))


def enumerate_cases(pid: str, cfg: TrialConfig) -> Iterable[tuple]:
    """Every input tuple of the exhaustive domain, in lexicographic order."""
    values = range(cfg.base ** cfg.width)
    shape = _shape(pid)
    if shape == "copies":
        return itertools.product(values, _copy_counts(pid, cfg))
    if shape == "scaled":
        return itertools.product(
            itertools.product(values, repeat=cfg.k), range(1, cfg.max_shift + 1)
        )
    if shape == "concat":
        sets = list(itertools.product(values, repeat=cfg.k))
        return itertools.product(sets, sets)
    return itertools.product(values, range(1, cfg.max_copies + 1), range(1, cfg.max_power + 1))


def random_cases(pid: str, cfg: TrialConfig) -> List[tuple]:
    # string seeds hash with sha512, independent of PYTHONHASHSEED
    rng = random.Random(f"{cfg.seed}:{pid}:{cfg.base}")
    hi = cfg.base ** cfg.width - 1
    shape = _shape(pid)
    draw = lambda: rng.randint(0, hi)  # noqa: E731
    cases = []
    if shape == "copies":
        counts = _copy_counts(pid, cfg)
        for _ in range(cfg.trials):
            cases.append((draw(), rng.choice(counts)))
    elif shape == "scaled":
        for _ in range(cfg.trials):
            cases.append((tuple(draw() for _ in range(cfg.k)), rng.randint(1, cfg.max_shift)))
    elif shape == "concat":
        for _ in range(cfg.trials):
            xs = tuple(draw() for _ in range(cfg.k))
            ys = tuple(draw() for _ in range(cfg.k))
            cases.append((xs, ys))
    else:
        for _ in range(cfg.trials):
            cases.append((draw(), rng.randint(1, cfg.max_copies), rng.randint(1, cfg.max_power)))
    return cases


def _evaluate_chunk(pid: str, base: int, cases: Sequence[tuple]) -> list:
    fn = EVALUATORS[pid]
    return [fn(c, base) for c in cases]


def _workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def _evaluate(pid: str, base: int, cases: List[tuple], workers: int) -> list:
    if workers <= 1 or len(cases) < 2 * workers:
        return _evaluate_chunk(pid, base, cases)
    size = -(-len(cases) // workers)
    chunks = [cases[i:i + size] for i in range(0, len(cases), size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_evaluate_chunk, [pid] * len(chunks), [base] * len(chunks), chunks)
        return [o for part in parts for o in part]


def adjudicate(pid: str, base: int, cases: Sequence[tuple], max_counterexamples: int = 10,
               workers: Optional[int] = None) -> PropertyVerdict:
    """Evaluate ``pid`` on explicit cases and fold the outcomes into a verdict."""
    cases = list(cases)
    outcomes = _evaluate(pid, base, cases, _workers() if workers is None else workers)
    verdict = PropertyVerdict(pid, base, len(cases), condition_note=CONDITION_NOTES[pid])
    bad = {}
    for case, out in zip(cases, outcomes):
        if out.status == NOT_EVALUABLE:
            verdict.not_evaluable_count += 1
            continue
        if out.note and "non-integral" in out.note:
            verdict.nonintegral_m += 1
        if out.condition is not None and out.condition != (out.status == HOLDS):
            verdict.condition_violations += 1
        if out.status == HOLDS:
            verdict.holds_count += 1
        else:
            verdict.fail_count += 1
            bad.setdefault(case, out)
    for case in sorted(bad)[:max_counterexamples]:
        check = replay(pid, case, base)
        if check.status != FAILS or check.claimed != bad[case].claimed or check.actual != bad[case].actual:
            raise InvariantViolation(f"{pid} counterexample {case} does not replay")
        verdict.counterexamples.append(Counterexample(case, check.claimed, check.actual))
    return verdict


def run_campaign(config: TrialConfig, properties: Iterable[str] = ALL_PROPERTIES,
                 workers: Optional[int] = None) -> List[PropertyVerdict]:
    verdicts = []
    for pid in properties:
        if pid not in EVALUATORS:
            raise ValueError(f"unknown property {pid!r}")
        if config.trials is None:
            cases = list(enumerate_cases(pid, config))
        else:
            cases = random_cases(pid, config)
        verdicts.append(adjudicate(pid, config.base, cases, config.max_counterexamples, workers))
    return verdicts
