import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from cvtlab.adder import add_pair_iterative
from cvtlab.camsim import (
    DONE,
    CamError,
    CamOverflow,
    build_tree,
    cam_step,
    load,
    run_cam,
    simulate,
)


def test_single_step_matches_table_columns():
    u = cam_step(load(5, 11, 13))
    assert u.reg_x.msb_first() == (1, 0, 0, 1, 0)
    assert u.reg_y.msb_first() == (0, 0, 1, 1, 0)
    assert u.cycle_count == 1


def test_zero_carry_finishes_in_one_cycle():
    u = run_cam(load(4, 0, 9))
    assert u.state == DONE and u.cycle_count == 1 and u.reg_y.value == 9


def test_run_to_completion_agrees_with_adder():
    u = run_cam(load(5, 11, 13))
    assert u.reg_y.value == 24
    assert u.cycle_count == add_pair_iterative(11, 13, 2).iterations
    assert u.cycle_count <= 5


def test_overflow_is_an_error():
    with pytest.raises(CamOverflow):
        run_cam(load(4, 15, 1))
    with pytest.raises(CamOverflow):
        load(3, 8, 0)


def test_stepping_a_finished_cell_is_an_error():
    u = run_cam(load(3, 1, 2))
    with pytest.raises(CamError):
        cam_step(u)


def test_trace_lines():
    lines = []
    run_cam(load(5, 11, 13), lines, "L1.U0")
    assert lines[0] == "L1.U0 cycle=0 x=2:01011 y=2:01101"
    assert lines[1] == "L1.U0 cycle=1 x=2:10010 y=2:00110"
    assert lines[-1].endswith("x=2:00000 y=2:11000")


@pytest.mark.parametrize(
    "k, n, per_level, widths",
    [
        (16, 4, [8, 4, 2, 1], [5, 6, 7, 8]),
        (2, 4, [1], [5]),
        (8, 3, [4, 2, 1], [4, 5, 6]),
    ],
)
def test_tree_shape(k, n, per_level, widths):
    t = build_tree(k, n)
    assert t.cam_count == k - 1
    assert [len(level) for level in t.levels] == per_level
    assert [level[0].width for level in t.levels] == widths
    assert t.depth == k.bit_length() - 1
    for level in t.levels:
        assert [s.sources for s in level] == [(2 * u, 2 * u + 1) for u in range(len(level))]


@pytest.mark.parametrize("k", [0, 1, 3, 6, 12])
def test_tree_rejects_non_power_of_two(k):
    with pytest.raises(CamError):
        build_tree(k, 4)


def test_simulate_sixteen_nibbles():
    rng = random.Random(1)
    inputs = [rng.randrange(16) for _ in range(16)]
    rep = simulate(build_tree(16, 4), inputs)
    assert rep.result == sum(inputs)
    assert rep.paper_model_delay == 16
    assert rep.measured_delay == sum(rep.per_level_cycles)


def test_simulate_all_zero():
    rep = simulate(build_tree(8, 3), [0] * 8)
    assert rep.result == 0
    assert rep.unit_cycles == [[1] * 4, [1] * 2, [1]]


def test_simulate_sixteen_fifteens():
    rep = simulate(build_tree(16, 4), [15] * 16)
    assert rep.result == 240
    # every cell of a level sees the same operands, so cycles are uniform
    assert all(len(set(c)) == 1 for c in rep.unit_cycles)
    expect = [add_pair_iterative(15 * 2**l, 15 * 2**l, 2).iterations for l in range(4)]
    assert rep.per_level_cycles == expect


def test_simulate_rejects_bad_inputs():
    tree = build_tree(4, 2)
    with pytest.raises(CamError):
        simulate(tree, [1, 2, 3])
    with pytest.raises(CamError):
        simulate(tree, [1, 2, 3, 4])


def test_exhaustive_k4_n2():
    tree = build_tree(4, 2)
    for xs in itertools.product(range(4), repeat=4):
        assert simulate(tree, xs).result == sum(xs)


@settings(max_examples=60)
@given(st.sampled_from([2, 4, 8, 16]), st.integers(1, 6), st.randoms(use_true_random=False))
def test_circuit_matches_direct_sum(k, n, rnd):
    xs = [rnd.randrange(2**n) for _ in range(k)]
    rep = simulate(build_tree(k, n), xs)
    assert rep.result == sum(xs)
    assert rep.paper_model_delay == n * (k.bit_length() - 1)


def test_trace_covers_every_cycle_of_every_unit():
    rep = simulate(build_tree(4, 3), [7, 5, 3, 1], trace=True)
    cells = sum(c + 1 for level in rep.unit_cycles for c in level)
    assert len(rep.trace) == cells
    assert rep.trace[0].startswith("L1.U0 cycle=0")
