"""Column-wise carry (CVT) and modular-sum (XOR) transforms in base ``beta``.

For operands ``X_1..X_K`` padded to a common width ``n``, let ``s_i`` be the
sum of the digits in column ``i``. Then::

    XOR  digit i      = s_i mod beta
    CVT  digit i + 1  = s_i // beta     (units digit is always 0)

and ``sum(X) == value(CVT) + value(XOR)`` for any ``K`` and any base.

Operands may be given as :class:`DigitVector` or as plain non-negative ints
(converted in the requested base).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import zip_longest
from typing import List, NamedTuple, Sequence, Tuple, Union

from cvtlab.digitvec import (
    DigitVector,
    GeneralizedDigitVector,
    RadixError,
    check_base,
    to_digits,
    valuate,
)

Operand = Union[int, DigitVector]


class TransformError(ValueError):
    pass


def as_vectors(xs: Sequence[Operand], base: int) -> Tuple[DigitVector, ...]:
    """Coerce operands to digit vectors in ``base``.

    Raises :class:`TransformError` on an empty list or a vector in another base.
    """
    check_base(base)
    if len(xs) == 0:
        raise TransformError("no operands")
    out = []
    for x in xs:
        if type(x) is DigitVector and x.base == base:
            out.append(x)
        elif isinstance(x, GeneralizedDigitVector):
            if x.base != base:
                raise TransformError(f"base mismatch: operand in base {x.base}, expected {base}")
            out.append(x.canonical())
        elif isinstance(x, int) and not isinstance(x, bool):
            out.append(to_digits(x, base))
        else:
            raise TransformError(f"unsupported operand {x!r}")
    return tuple(out)


def infer_base(xs: Sequence[Operand], base: int = None) -> int:
    bases = {x.base for x in xs if isinstance(x, GeneralizedDigitVector)}
    if base is not None:
        bases.add(base)
    if len(bases) > 1:
        raise TransformError(f"base mismatch: {sorted(bases)}")
    if not bases:
        raise TransformError("base not given and not inferable from operands")
    return bases.pop()


def column_sums(xs: Sequence[Operand], base: int) -> List[int]:
    """Digit sums per column, LSB first, over the common padded width."""
    vs = as_vectors(xs, base)
    return list(map(sum, zip_longest(*(v.digits for v in vs), fillvalue=0)))


def split_columns(rows: Sequence[Sequence[int]], base: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Bare kernel on LSB-first digit rows: ``(carry digits, modular digits)``.

    No validation; callers pass canonical rows in ``base``.
    """
    sums = list(map(sum, zip_longest(*rows, fillvalue=0)))
    return (0, *map(base.__rfloordiv__, sums)), tuple(map(base.__rmod__, sums))


def xor_multi(xs: Sequence[Operand], base: int) -> DigitVector:
    return DigitVector._trusted(tuple(map(base.__rmod__, column_sums(xs, base))), base)


def cvt_multi(xs: Sequence[Operand], base: int) -> GeneralizedDigitVector:
    """Carry vector ``(C_n, ..., C_1, 0)``; length is one more than the operands."""
    return GeneralizedDigitVector._trusted((0, *map(base.__rfloordiv__, column_sums(xs, base))), base)


def cvt_pair(a: Operand, b: Operand, base: int = None) -> GeneralizedDigitVector:
    return cvt_multi([a, b], infer_base([a, b], base))


def xor_pair(a: Operand, b: Operand, base: int = None) -> DigitVector:
    return xor_multi([a, b], infer_base([a, b], base))


class TransformResult(NamedTuple):
    cvt: GeneralizedDigitVector
    xor: DigitVector
    operand_count: int
    base: int


def transform(xs: Sequence[Operand], base: int) -> TransformResult:
    carry, mod = split_columns([v.digits for v in as_vectors(xs, base)], base)
    return TransformResult(
        cvt=GeneralizedDigitVector._trusted(carry, base),
        xor=DigitVector._trusted(mod, base),
        operand_count=len(xs),
        base=base,
    )


@dataclass(frozen=True)
class IdentityReport:
    total: int
    cvt: int
    xor: int

    @property
    def holds(self) -> bool:
        return self.total == self.cvt + self.xor


def sum_identity_check(xs: Sequence[Operand], base: int) -> IdentityReport:
    vs = as_vectors(xs, base)
    carry, mod = split_columns([v.digits for v in vs], base)
    return IdentityReport(
        total=sum(v.value for v in vs), cvt=valuate(carry, base), xor=valuate(mod, base)
    )


@dataclass(frozen=True)
class CorollaryReport:
    xor_zero: bool
    cvt_zero: bool
    column_sums: Tuple[int, ...]


def corollary_predicates(xs: Sequence[Operand], base: int) -> CorollaryReport:
    """Zero tests for XOR and CVT read off the raw column sums.

    XOR vanishes iff every column sum is a multiple of the base; CVT vanishes
    iff every column sum is below the base.
    """
    sums = tuple(column_sums(xs, base))
    return CorollaryReport(
        xor_zero=all(s % base == 0 for s in sums),
        cvt_zero=all(s < base for s in sums),
        column_sums=sums,
    )


# -- rule tables ---------------------------------------------------------------


@dataclass(frozen=True)
class RuleTable:
    """Local digit map ``f_j`` of arity 1 or 2 over ``{0..radix-1}``.

    ``outputs[r]`` is the image of the ``r``-th input tuple, tuples taken in
    ascending positional order (first variable most significant). The rule
    index is the base-``radix`` number whose digit ``r`` is ``outputs[r]``,
    so the last row of the truth table is the leading digit.
    """

    arity: int
    radix: int
    outputs: Tuple[int, ...]

    def __post_init__(self):
        check_base(self.radix)
        if self.arity not in (1, 2):
            raise TransformError(f"arity must be 1 or 2, got {self.arity}")
        outputs = tuple(self.outputs)
        if len(outputs) != self.radix ** self.arity:
            raise TransformError(
                f"rule table needs {self.radix ** self.arity} entries, got {len(outputs)}"
            )
        if any(not 0 <= o < self.radix for o in outputs):
            raise TransformError(f"rule output out of range for radix {self.radix}")
        object.__setattr__(self, "outputs", outputs)

    @property
    def rule_index(self) -> int:
        return DigitVector(self.outputs, self.radix).value

    @classmethod
    def from_outputs(cls, outputs: Sequence[int], radix: int, arity: int, index: int = None):
        table = cls(arity, radix, tuple(outputs))
        if index is not None and table.rule_index != index:
            raise TransformError(f"outputs encode rule {table.rule_index}, not {index}")
        return table

    @classmethod
    def from_index(cls, index: int, radix: int, arity: int) -> "RuleTable":
        rows = radix ** arity
        if not 0 <= index < radix ** rows:
            raise TransformError(f"rule index {index} out of range for radix {radix}, arity {arity}")
        table = cls(arity, radix, to_digits(index, radix, rows).digits)
        assert table.rule_index == index
        return table

    def __call__(self, *digits: int) -> int:
        if len(digits) != self.arity:
            raise TransformError(f"rule of arity {self.arity} applied to {len(digits)} digits")
        row = 0
        for d in digits:
            row = row * self.radix + d
        return self.outputs[row]


def ivt_apply(rule: RuleTable, xs: Sequence[Operand]) -> DigitVector:
    if len(xs) != rule.arity:
        raise TransformError(f"arity mismatch: rule takes {rule.arity}, got {len(xs)} operands")
    try:
        vs = as_vectors(xs, rule.radix)
    except RadixError as exc:
        raise TransformError(str(exc)) from exc
    width = max(len(v) for v in vs)
    cols = zip(*(v.padded(width).digits for v in vs))
    return DigitVector(tuple(rule(*col) for col in cols), rule.radix)
