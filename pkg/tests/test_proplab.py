import itertools

import pytest
from hypothesis import given, strategies as st

from cvtlab import proplab
from cvtlab.proplab import (
    FAILS,
    HOLDS,
    NOT_EVALUABLE,
    TrialConfig,
    adjudicate,
    check_p1_cvt_identical,
    check_p2_cvt_scaling,
    check_p3_cvt_concat,
    check_p4_cvt_power,
    check_p5_xor_identical,
    check_p6_xor_scaling,
    check_p7_xor_concat,
    check_p8_xor_power,
    expected_universal,
    replay,
    run_campaign,
)


def pair(o):
    return (o.claimed, o.actual, o.status)


# -- worked examples ---------------------------------------------------------------


def test_p1_examples():
    assert pair(check_p1_cvt_identical(5, 4, 2)["P1"]) == (20, 20, HOLDS)
    assert pair(check_p1_cvt_identical(5, 5, 2)["P1"]) == (20, 20, HOLDS)
    assert pair(check_p1_cvt_identical(2, 2, 3)["P1"]) == (4, 3, FAILS)
    assert check_p1_cvt_identical(2, 2, 3)["P1g"].status == NOT_EVALUABLE


def test_p2_examples():
    r = check_p2_cvt_scaling([5, 4, 6, 7], 2, 2)
    assert pair(r["P2a"]) == (88, 88, HOLDS)
    assert pair(r["P2b"]) == (4, 4, HOLDS)
    assert proplab.p2b_m([5, 4, 6, 7], 4) == 1
    # P = 16, m = 4/2 = 2, floor(16/6) = 2; CVT(0, 0, 1, 1) = 2
    assert pair(check_p2_cvt_scaling([3, 3, 5, 7], 2, 2)["P2b"]) == (2, 2, HOLDS)
    assert check_p2_cvt_scaling([1, 2], 1, 3)["P2b"].status == NOT_EVALUABLE


def test_p2b_nonintegral_m_is_flagged():
    assert proplab.p2b_m([1, 2, 3, 4], 4) == 1
    out = check_p2_cvt_scaling([1, 2, 4, 6], 2, 2)["P2b"]
    assert "non-integral" in out.note


def test_p3_examples():
    o = check_p3_cvt_concat([5, 4, 6, 7], [13, 9, 9, 13], 2)
    assert pair(o) == (66, 66, HOLDS) and o.condition
    o = check_p3_cvt_concat([1, 0], [1, 0], 2)
    assert pair(o) == (0, 2, FAILS) and o.condition is False
    assert pair(check_p3_cvt_concat([0, 0], [0, 0], 5)) == (0, 0, HOLDS)


def test_p4_examples():
    assert pair(check_p4_cvt_power(3, 4, 3, 2)) == (108, 108, HOLDS)
    p = check_p1_cvt_identical(6, 3, 7)["P1"].actual
    assert pair(check_p4_cvt_power(6, 3, 1, 7)) == (p, p, HOLDS)
    # base 3: CVT(2,2,2) = 6, CVT(4,4,4) = 12 = 6 * 2
    assert pair(check_p4_cvt_power(2, 3, 2, 3)) == (12, 12, HOLDS)


def test_xor_examples():
    assert pair(check_p5_xor_identical(5, 4, 2)["P5"]) == (0, 0, HOLDS)
    assert pair(check_p5_xor_identical(5, 5, 2)["P5"]) == (5, 5, HOLDS)
    r = check_p6_xor_scaling([5, 4, 5, 7], 2, 2)
    assert pair(r["P6a"]) == (12, 12, HOLDS)
    assert pair(r["P6b"]) == (0, 0, HOLDS)
    assert pair(check_p7_xor_concat([5, 4, 5, 7], [13, 9, 9, 10], 2)) == (4, 4, HOLDS)
    assert pair(check_p8_xor_power(3, 3, 2, 2)) == (9, 9, HOLDS)


# -- laws --------------------------------------------------------------------------

values = st.integers(0, 3**8)
lists = st.lists(values, min_size=1, max_size=6)
bases = st.integers(2, 7)


@given(lists, st.integers(1, 3), bases)
def test_shift_laws_universal(xs, t, beta):
    for pid in ("P2a", "P6a", "P6b"):
        assert proplab.EVALUATORS[pid]((tuple(xs), t), beta).status == HOLDS


@given(lists, lists, bases)
def test_p7_universal_and_p3_biconditional(xs, ys, beta):
    assert check_p7_xor_concat(xs, ys, beta).status == HOLDS
    o = check_p3_cvt_concat(xs, ys, beta)
    assert o.condition == (o.status == HOLDS)


@given(values, st.integers(1, 12), st.integers(1, 4))
def test_binary_power_and_copy_laws(x, copies, k):
    assert check_p4_cvt_power(x, copies, k, 2).status == HOLDS
    assert check_p8_xor_power(x, copies, k, 2).status == HOLDS
    assert check_p1_cvt_identical(x, copies, 2)["P1"].status == HOLDS
    assert check_p5_xor_identical(x, copies, 2)["P5"].status == HOLDS


@given(values, st.integers(0, 4), st.integers(0, 1), bases)
def test_generalized_copy_rule(x, q, r, beta):
    k = q * beta + r
    if k == 0:
        return
    assert check_p1_cvt_identical(x, k, beta)["P1g"].status == HOLDS
    assert check_p5_xor_identical(x, k, beta)["P5g"].status == HOLDS


# -- replay and campaigns --------------------------------------------------------------


def test_replay_uses_oracle_and_agrees():
    for pid, case, base in [("P1", (2, 2), 3), ("P3", ((1, 0), (1, 0)), 2)]:
        impl = proplab.EVALUATORS[pid](case, base)
        ref = replay(pid, case, base)
        assert pair(impl) == pair(ref)
        assert ref.status == FAILS


def test_campaign_p1_base3_exhaustive_finds_counterexample():
    cfg = TrialConfig(base=3, k=2, width=3, trials=None)
    (v,) = run_campaign(cfg, ["P1"])
    assert v.fail_count > 0
    (small,) = run_campaign(TrialConfig(base=3, width=1, trials=None), ["P1"])
    assert (2, 2) in [c.inputs for c in small.counterexamples]
    assert v.holds_count + len(v.counterexamples) <= v.trials
    for c in v.counterexamples:
        assert replay("P1", c.inputs, 3).actual == c.actual != c.claimed


def test_campaign_shift_law_full_hold():
    (v,) = run_campaign(TrialConfig(base=2, k=4, width=4, trials=2000, seed=3), ["P2a"])
    assert v.holds_count == 2000 and not v.counterexamples


def test_campaign_zero_operands_everything_holds():
    cfg = TrialConfig(base=5, k=3, width=1, trials=None, max_copies=2, max_shift=1, max_power=1)
    for pid in proplab.ALL_PROPERTIES:
        zero_case = next(iter(proplab.enumerate_cases(pid, cfg)))
        v = adjudicate(pid, 5, [zero_case])
        assert v.fail_count == 0, pid


def test_counterexamples_sorted_and_deduplicated():
    cases = [((1, 0), (1, 0)), ((0, 1), (0, 1)), ((1, 1), (1, 1)), ((1, 0), (1, 0))]
    v = adjudicate("P3", 2, cases)
    assert (v.holds_count, v.fail_count) == (1, 3)
    assert [c.inputs for c in v.counterexamples] == [((0, 1), (0, 1)), ((1, 0), (1, 0))]


def test_campaign_is_deterministic():
    cfg = TrialConfig(base=3, trials=300, seed=11)
    a = [v.as_dict() for v in run_campaign(cfg)]
    b = [v.as_dict() for v in run_campaign(cfg)]
    assert a == b
    c = [v.as_dict() for v in run_campaign(TrialConfig(base=3, trials=300, seed=12))]
    assert a != c


def test_parallel_matches_serial():
    cfg = TrialConfig(base=2, trials=400, seed=5)
    serial = [v.as_dict() for v in run_campaign(cfg, workers=1)]
    parallel = [v.as_dict() for v in run_campaign(cfg, workers=3)]
    assert serial == parallel


def test_exhaustive_enumeration_order_is_lexicographic():
    cfg = TrialConfig(base=2, k=2, width=2, trials=None)
    cases = list(proplab.enumerate_cases("P3", cfg))
    assert len(cases) == 16 * 16
    assert cases == sorted(cases)


def test_expected_universal_sets():
    assert set(expected_universal(2)) >= {"P1", "P4", "P5", "P8", "P2a", "P6a", "P6b", "P7"}
    assert "P1" not in expected_universal(3)


def test_config_validation():
    with pytest.raises(ValueError):
        TrialConfig(base=1)
    with pytest.raises(ValueError):
        TrialConfig(trials=0)
    with pytest.raises(ValueError):
        run_campaign(TrialConfig(trials=1), ["P9"])
