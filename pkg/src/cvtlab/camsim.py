"""Cycle-counted behavioural model of a binary tree of CVT-XOR adder cells.

Each cell (CAM) holds two binary registers. One clock replaces them with
their pairwise carry vector and XOR; the cell is done when the carry register
reads zero, and the XOR register then holds the sum. ``K`` inputs are added by
a complete binary tree of ``K - 1`` cells in ``log2(K)`` levels; a level
starts only after every cell of the previous level is done.

Level ``l`` (counting from 1) uses registers ``n + l`` bits wide, enough for
the sum of ``2**l`` inputs of ``n`` bits. A carry that would leave the
register raises :class:`CamOverflow` rather than wrapping.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import List, Optional, Sequence, Tuple

from cvtlab.digitvec import DigitVector, format_vector, to_digits
from cvtlab.errors import InvariantViolation
from cvtlab.transforms import cvt_pair, xor_pair

IDLE, RUNNING, DONE = "idle", "running", "done"


class CamOverflow(ArithmeticError):
    pass


class CamError(ValueError):
    pass


@dataclass(frozen=True)
class CamUnit:
    width: int
    reg_x: DigitVector
    reg_y: DigitVector
    cycle_count: int = 0
    state: str = IDLE

    @property
    def total(self) -> int:
        return self.reg_x.value + self.reg_y.value


def load(width: int, x: int, y: int) -> CamUnit:
    """Fresh running cell with ``x`` in the carry register and ``y`` in the sum register."""
    if width < 1:
        raise CamError("register width must be >= 1")
    for v in (x, y):
        if not 0 <= v < 2 ** width:
            raise CamOverflow(f"operand {v} does not fit a {width}-bit register")
    return CamUnit(width, to_digits(x, 2, width), to_digits(y, 2, width), 0, RUNNING)


def cam_step(unit: CamUnit) -> CamUnit:
    if unit.state != RUNNING:
        raise CamError(f"cannot clock a cell in state {unit.state!r}")
    carry = cvt_pair(unit.reg_x, unit.reg_y, 2)
    if any(carry.digits[unit.width:]):
        raise CamOverflow(f"carry out of a {unit.width}-bit register")
    reg_x = DigitVector(carry.digits[: unit.width], 2)
    reg_y = xor_pair(unit.reg_x, unit.reg_y, 2)
    done = not any(reg_x.digits)
    return replace(
        unit,
        reg_x=reg_x,
        reg_y=reg_y,
        cycle_count=unit.cycle_count + 1,
        state=DONE if done else RUNNING,
    )


def run_cam(unit: CamUnit, trace: Optional[List[str]] = None, label: str = "") -> CamUnit:
    total = unit.total
    if trace is not None:
        trace.append(_trace_line(label, unit))
    while unit.state == RUNNING:
        unit = cam_step(unit)
        if unit.total != total:
            raise InvariantViolation(f"{label}: register sum drifted from {total} to {unit.total}")
        if trace is not None:
            trace.append(_trace_line(label, unit))
        if unit.cycle_count > 2 * unit.width + 2:
            raise InvariantViolation(f"{label}: no convergence after {unit.cycle_count} cycles")
    return unit


def _trace_line(label: str, unit: CamUnit) -> str:
    return (
        f"{label} cycle={unit.cycle_count} "
        f"x={format_vector(unit.reg_x)} y={format_vector(unit.reg_y)}"
    )


@dataclass(frozen=True)
class CamSlot:
    level: int
    index: int
    width: int
    sources: Tuple[int, int]

    @property
    def label(self) -> str:
        return f"L{self.level}.U{self.index}"


@dataclass(frozen=True)
class AdderTree:
    leaf_count: int
    input_width: int
    levels: Tuple[Tuple[CamSlot, ...], ...]

    @property
    def cam_count(self) -> int:
        return sum(len(level) for level in self.levels)

    @property
    def depth(self) -> int:
        return len(self.levels)

    @property
    def paper_model_delay(self) -> int:
        # fixed n clocks per level
        return self.input_width * self.depth


def build_tree(k: int, n: int) -> AdderTree:
    if k < 2 or k & (k - 1):
        raise CamError(f"leaf count must be a power of two >= 2, got {k}")
    if n < 1:
        raise CamError(f"input width must be >= 1, got {n}")
    levels = []
    fan_in = k
    level = 1
    while fan_in > 1:
        levels.append(
            tuple(
                CamSlot(level, u, n + level, (2 * u, 2 * u + 1))
                for u in range(fan_in // 2)
            )
        )
        fan_in //= 2
        level += 1
    return AdderTree(k, n, tuple(levels))


@dataclass
class SimulationReport:
    inputs: List[int]
    result: int
    per_level_cycles: List[int]
    unit_cycles: List[List[int]]
    paper_model_delay: int
    measured_delay: int
    trace: List[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        out = {
            "inputs": list(self.inputs),
            "result": self.result,
            "per_level_cycles": list(self.per_level_cycles),
            "unit_cycles": [list(c) for c in self.unit_cycles],
            "paper_model_delay": self.paper_model_delay,
            "measured_delay": self.measured_delay,
        }
        if self.trace:
            out["trace"] = list(self.trace)
        return out


def simulate(tree: AdderTree, inputs: Sequence[int], trace: bool = False) -> SimulationReport:
    inputs = list(inputs)
    if len(inputs) != tree.leaf_count:
        raise CamError(f"expected {tree.leaf_count} inputs, got {len(inputs)}")
    for v in inputs:
        if not isinstance(v, int) or not 0 <= v < 2 ** tree.input_width:
            raise CamError(f"input {v!r} outside [0, 2**{tree.input_width})")

    lines: Optional[List[str]] = [] if trace else None
    values = inputs
    per_level, unit_cycles = [], []
    for level in tree.levels:
        done = [
            run_cam(load(slot.width, values[slot.sources[0]], values[slot.sources[1]]), lines, slot.label)
            for slot in level
        ]
        cycles = [u.cycle_count for u in done]
        unit_cycles.append(cycles)
        per_level.append(max(cycles))
        values = [u.reg_y.value for u in done]

    result = values[0]
    if result != sum(inputs):
        raise InvariantViolation(f"tree produced {result}, direct sum is {sum(inputs)}")
    return SimulationReport(
        inputs=inputs,
        result=result,
        per_level_cycles=per_level,
        unit_cycles=unit_cycles,
        paper_model_delay=tree.paper_model_delay,
        measured_delay=sum(per_level),
        trace=lines or [],
    )
