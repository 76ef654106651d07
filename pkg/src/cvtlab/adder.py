"""Addition by iterating ``(X, Y) -> (CVT(X, Y), XOR(X, Y))`` until the carry is 0.

One iteration is one simultaneous evaluation of both transforms. The loop
stops right after the evaluation that produces a zero carry, so adding
anything to 0 takes exactly one iteration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from operator import add
from typing import List, Sequence, Tuple

from cvtlab.digitvec import check_base, to_digits, valuate
from cvtlab.errors import InvariantViolation
from cvtlab.transforms import transform


class ConvergenceError(InvariantViolation):
    pass


@dataclass
class IterationTrace:
    steps: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def iterations(self) -> int:
        return len(self.steps)

    @property
    def result(self) -> int:
        return self.steps[-1][1]

    def as_dict(self) -> dict:
        return {
            "iterations": self.iterations,
            "result": self.result,
            "steps": [[c, x] for c, x in self.steps],
        }


def _iterate(da: Tuple[int, ...], db: Tuple[int, ...], total: int, base: int, trace: IterationTrace) -> IterationTrace:
    # guard only: real runs stay within digit length + 1
    limit = 2 * max(len(da), len(db)) + 4
    floor_div, mod_of = base.__rfloordiv__, base.__rmod__
    while True:
        # two-operand column sums; the carry row is one digit longer than the other
        if len(da) != len(db):
            width = max(len(da), len(db))
            da, db = da + (0,) * (width - len(da)), db + (0,) * (width - len(db))
        sums = tuple(map(add, da, db))
        carry, mod = (0, *map(floor_div, sums)), tuple(map(mod_of, sums))
        c, x = valuate(carry, base), valuate(mod, base)
        trace.steps.append((c, x))
        if c + x != total:
            raise ConvergenceError(f"carry/sum split {c}+{x} lost track of {total}")
        if c == 0:
            return trace
        if len(trace.steps) > limit:
            raise ConvergenceError(f"no convergence after {len(trace.steps)} iterations")
        # two-operand carry digits are 0 or 1: already canonical for the next step
        da, db = carry, mod


def add_pair_iterative(a: int, b: int, base: int = 2) -> IterationTrace:
    check_base(base)
    if a < 0 or b < 0:
        raise ValueError("operands must be non-negative")
    return _iterate(to_digits(a, base).digits, to_digits(b, base).digits, a + b, base, IterationTrace())


def add_multi(xs: Sequence[int], base: int = 2) -> Tuple[int, IterationTrace]:
    """Sum ``xs`` by one multi-operand transform, then pairwise iteration.

    The first trace step is the multi-operand ``(CVT, XOR)`` pair; for two
    operands this is the ordinary first pairwise step.
    """
    check_base(base)
    if not xs:
        raise ValueError("no operands")
    r = transform(list(xs), base)
    c, x = r.cvt.value, r.xor.value
    trace = IterationTrace([(c, x)])
    if c:
        _iterate(to_digits(c, base).digits, r.xor.digits, c + x, base, trace)
    if trace.result != sum(xs):
        raise ConvergenceError(f"sum mismatch: {trace.result} != {sum(xs)}")
    return trace.result, trace


@dataclass(frozen=True)
class BoundCheck:
    iterations: int
    bound: int
    result: int

    @property
    def within(self) -> bool:
        return self.iterations <= self.bound


def digit_length(value: int, base: int) -> int:
    return len(to_digits(value, base))


def convergence_bound_check(a: int, b: int, base: int = 2) -> BoundCheck:
    """Iterations versus ``max(len(a), len(b)) + 1`` digits in ``base``."""
    check_base(base)
    if a < 0 or b < 0:
        raise ValueError("operands must be non-negative")
    da, db = to_digits(a, base).digits, to_digits(b, base).digits
    trace = _iterate(da, db, a + b, base, IterationTrace())
    bound = max(len(da), len(db)) + 1
    return BoundCheck(trace.iterations, bound, trace.result)
