"""Positional digit vectors in an arbitrary radix.

Digits are stored least-significant first, so ``digits[0]`` is the units
place. Everything that is printed or parsed is written most-significant
first, the way numbers are normally read.

Two flavours exist. :class:`DigitVector` is canonical (every digit below the
base). :class:`GeneralizedDigitVector` lets digits reach or exceed the base,
which is what a multi-operand carry transform produces; it is still valued
by the usual positional sum.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple


class RadixError(ValueError):
    """Malformed digit data or an invalid base."""


def check_base(beta: int) -> int:
    if not isinstance(beta, int) or isinstance(beta, bool) or beta < 2:
        raise RadixError(f"base must be an integer >= 2, got {beta!r}")
    return beta


def valuate(digits: Sequence[int], beta: int) -> int:
    """Positional value of LSB-first ``digits``; digits may exceed ``beta``."""
    total = 0
    for d in reversed(digits):
        total = total * beta + d
    return total


@dataclass(frozen=True, eq=False)
class GeneralizedDigitVector:
    """Digit string whose entries are unbounded above.

    Equality is by base and value, so ``[1, 0]`` equals ``[1]`` and a
    generalized vector equals the canonical vector of the same number.
    """

    digits: Tuple[int, ...]
    base: int

    def __post_init__(self):
        check_base(self.base)
        digits = tuple(self.digits)
        if not digits:
            raise RadixError("empty digit vector")
        if any((not isinstance(d, int)) or d < 0 for d in digits):
            raise RadixError(f"digits must be non-negative integers: {digits!r}")
        object.__setattr__(self, "digits", digits)

    @classmethod
    def _trusted(cls, digits: Tuple[int, ...], base: int):
        # internal constructor for digits already known valid
        obj = object.__new__(cls)
        object.__setattr__(obj, "digits", digits)
        object.__setattr__(obj, "base", base)
        return obj

    def __len__(self) -> int:
        return len(self.digits)

    def __eq__(self, other):
        if not isinstance(other, GeneralizedDigitVector):
            return NotImplemented
        return self.base == other.base and self.value == other.value

    def __hash__(self):
        return hash((self.base, self.value))

    @property
    def value(self) -> int:
        return valuate(self.digits, self.base)

    def is_canonical(self) -> bool:
        return all(d < self.base for d in self.digits)

    def canonical(self) -> "DigitVector":
        """Re-express the value with every digit below the base."""
        return to_digits(self.value, self.base)

    def msb_first(self) -> Tuple[int, ...]:
        return self.digits[::-1]

    def __str__(self) -> str:
        return format_vector(self)


@dataclass(frozen=True, eq=False)
class DigitVector(GeneralizedDigitVector):
    """Canonical base-``base`` digit string (every digit < base)."""

    def __post_init__(self):
        super().__post_init__()
        bad = [d for d in self.digits if d >= self.base]
        if bad:
            raise RadixError(
                f"digit {bad[0]} out of range for base {self.base}"
            )

    def canonical(self) -> "DigitVector":
        return self

    def padded(self, width: int) -> "DigitVector":
        """Zero-pad at the most significant end up to ``width`` digits."""
        if width <= len(self.digits):
            return self
        return DigitVector._trusted(self.digits + (0,) * (width - len(self.digits)), self.base)

    def trimmed(self) -> "DigitVector":
        """Drop leading (most significant) zeros, keeping at least one digit."""
        digits = list(self.digits)
        while len(digits) > 1 and digits[-1] == 0:
            digits.pop()
        return DigitVector(tuple(digits), self.base)


_STR_FORMATS = {2: "b", 8: "o", 10: "d"}


def to_digits(value: int, base: int, min_width: Optional[int] = None) -> DigitVector:
    """Write a natural number in base ``base``, LSB first.

    Zero becomes ``[0]``; ``min_width`` pads with zeros at the top.
    """
    check_base(base)
    if value < 0:
        raise RadixError(f"negative value {value}")
    if base in _STR_FORMATS:
        digits = list(map(int, reversed(format(value, _STR_FORMATS[base]))))
    else:
        digits = []
        while value:
            value, r = divmod(value, base)
            digits.append(r)
        if not digits:
            digits.append(0)
    if min_width is not None and len(digits) < min_width:
        digits.extend([0] * (min_width - len(digits)))
    return DigitVector._trusted(tuple(digits), base)


def from_msb(digits: Iterable[int], base: int) -> DigitVector:
    """Build a canonical vector from digits written most-significant first."""
    return DigitVector(tuple(reversed(list(digits))), base)


def valuation(v: GeneralizedDigitVector) -> int:
    return v.value


def shift_up(v: DigitVector, t: int) -> DigitVector:
    """Insert ``t`` zeros at the units end (multiply by base**t)."""
    if t < 0:
        raise RadixError("shift count must be non-negative")
    if t == 0:
        return v
    return DigitVector._trusted((0,) * t + v.digits, v.base)


def shift_down(v: DigitVector, t: int) -> DigitVector:
    """Drop ``t`` least significant digits (floor-divide by base**t)."""
    if t < 0:
        raise RadixError("shift count must be non-negative")
    if t == 0:
        return v
    rest = v.digits[t:]
    return DigitVector._trusted(rest or (0,), v.base)


def pad_common(vectors: Sequence[DigitVector]) -> Tuple[DigitVector, ...]:
    width = max(len(v) for v in vectors)
    return tuple(v.padded(width) for v in vectors)


# -- text format ---------------------------------------------------------------
#
#   "3:0122"        canonical, MSB first, one character per digit
#   "3:[0,3,3,0]"   comma list, used whenever a digit is >= 10 or >= base

_FLAT = re.compile(r"^\s*(\d+)\s*:\s*([0-9]+)\s*$")
_LIST = re.compile(r"^\s*(\d+)\s*:\s*\[\s*([0-9,\s]*)\]\s*$")


def format_vector(v: GeneralizedDigitVector) -> str:
    msb = v.msb_first()
    if any(d >= 10 or d >= v.base for d in msb):
        return f"{v.base}:[{','.join(str(d) for d in msb)}]"
    return f"{v.base}:{''.join(str(d) for d in msb)}"


def parse_vector(text: str) -> GeneralizedDigitVector:
    """Parse the ``base:digits`` format.

    Returns a :class:`DigitVector` when every digit is below the base,
    otherwise a :class:`GeneralizedDigitVector`.
    """
    m = _FLAT.match(text)
    if m:
        base = int(m.group(1))
        msb = [int(c) for c in m.group(2)]
    else:
        m = _LIST.match(text)
        if not m:
            raise RadixError(f"cannot parse digit string {text!r}")
        base = int(m.group(1))
        parts = [p.strip() for p in m.group(2).split(",")]
        if not parts or any(not p for p in parts):
            raise RadixError(f"cannot parse digit list {text!r}")
        msb = [int(p) for p in parts]
    check_base(base)
    lsb = tuple(reversed(msb))
    if all(d < base for d in lsb):
        return DigitVector(lsb, base)
    return GeneralizedDigitVector(lsb, base)
