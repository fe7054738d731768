import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ewlab.core import (
    Hint,
    Instance,
    Job,
    Machine,
    instance_from_json,
    instance_to_json,
    job_early_work,
    lemma1_bound,
    total_early_work,
    validate,
)
from ewlab.exactnum import ONE, SQRT2, ZERO, QValue


def q(x):
    return x if isinstance(x, QValue) else QValue(x)


# -- objective ----------------------------------------------------------------

def test_total_early_work_examples():
    assert total_early_work(q(2), q("2/3"), ONE) == q("5/3")
    assert total_early_work(ZERO, ZERO, ONE) == ZERO
    assert total_early_work(SQRT2, ZERO, ONE) == ONE


def test_total_early_work_rejects_bad_input():
    with pytest.raises(ValueError):
        total_early_work(q(-1), ZERO, ONE)
    with pytest.raises(ValueError):
        total_early_work(ZERO, ZERO, ZERO)


def test_job_early_work_cases():
    assert job_early_work(q("1/2"), ZERO, ONE) == q("1/2")
    assert job_early_work(ONE, q("1/2"), ONE) == q("1/2")
    assert job_early_work(q("1/2"), q(2), ONE) == ZERO


def test_lemma1_bound_examples():
    assert lemma1_bound(q(2), ONE) == q(2)
    assert lemma1_bound(ZERO, ONE) == ZERO
    assert lemma1_bound(SQRT2, ONE) == SQRT2
    assert lemma1_bound(q(5), ONE) == q(2)


loads = st.fractions(min_value=0, max_value=4, max_denominator=12)


@given(loads, loads)
def test_total_early_work_caps(l1, l2):
    d = ONE
    value = total_early_work(q(l1), q(l2), d)
    assert value <= d + d
    assert value <= q(l1) + q(l2)


@given(loads, loads, st.fractions(min_value=0, max_value=1, max_denominator=12))
def test_total_early_work_monotone(l1, l2, bump):
    base = total_early_work(q(l1), q(l2), ONE)
    assert total_early_work(q(l1) + q(bump), q(l2), ONE) >= base
    assert total_early_work(q(l1), q(l2) + q(bump), ONE) >= base


def test_back_to_back_jobs_sum_to_capped_load():
    # Per-job early work, executed back to back from time 0, telescopes to
    # min(load, d) no matter how the machine's jobs are permuted.
    rng = random.Random(11)
    for _ in range(100):
        d = q(Fraction(rng.randint(1, 24), 12))
        sizes = [Fraction(rng.randint(1, 24), 12) for _ in range(rng.randint(0, 8))]
        sizes = [s for s in sizes if q(s) <= d]
        rng.shuffle(sizes)
        load, acc = ZERO, ZERO
        for s in sizes:
            acc = acc + job_early_work(q(s), load, d)
            load = load + q(s)
        assert acc == (load if load <= d else d)


# -- validation ---------------------------------------------------------------

def test_validate_well_formed():
    inst = Instance.build(1, [("1/2", 1)])
    assert validate(inst, Hint.none()) == []


def test_validate_oversized_job():
    inst = Instance.build(1, [("3/2", 1)])
    out = validate(inst, Hint.none())
    assert out == ["job 1: p > d"]


def test_validate_dishonest_total():
    inst = Instance.build(1, [("1/2", 2)])
    out = validate(inst, Hint.total(2))
    assert len(out) == 1 and "total" in out[0]


def test_validate_pmax_kinds():
    inst = Instance.build(1, [("2/3", 1), ("1/3", 2)])
    assert validate(inst, Hint.pmax("2/3")) == []
    assert validate(inst, Hint.pmax1("2/3")) == []
    assert validate(inst, Hint.pmax2("2/3")) != []
    assert validate(inst, Hint.pmax("1/2")) != []
    tie = Instance.build(1, [("2/3", 1), ("2/3", 2)])
    assert validate(tie, Hint.pmax1("2/3")) == []
    assert validate(tie, Hint.pmax2("2/3")) == []


def test_validate_empty_instance_with_pmax():
    inst = Instance.build(1, [])
    assert validate(inst, Hint.none()) == []
    assert validate(inst, Hint.pmax(1)) != []


def test_validate_multiple_violations_are_indexed():
    inst = Instance.build(1, [("1/2", 1), ("5", 2), ("0", 1)])
    out = validate(inst, Hint.none())
    assert "job 2: p > d" in out
    assert "job 3: p <= 0" in out


def test_job_rejects_bad_hierarchy():
    with pytest.raises(ValueError):
        Job(ONE, 3)


def test_hint_rejects_bad_kind():
    with pytest.raises(ValueError):
        Hint("biggest", ONE)
    with pytest.raises(ValueError):
        Hint("none", ONE)


# -- wire format ---------------------------------------------------------------

def test_instance_json_round_trip():
    inst = Instance.build("3/2", [("1/2", 1), (SQRT2 - 1, 2), ("4/3", 2)])
    hint = Hint.pmax2("4/3")
    doc = instance_to_json(inst, hint)
    back_inst, back_hint = instance_from_json(doc)
    assert back_inst == inst
    assert back_hint == hint


def test_instance_json_hint_optional_on_read():
    inst, hint = instance_from_json({"d": "1", "jobs": [{"p": "1/2", "g": 2}]})
    assert hint == Hint.none()
    assert inst.jobs[0].g == 2


def test_instance_json_rejections():
    with pytest.raises(ValueError):
        instance_from_json({"jobs": []})
    with pytest.raises(ValueError):
        instance_from_json({"d": "1", "jobs": [{"p": "1/0", "g": 2}]})
    with pytest.raises(ValueError):
        instance_from_json({"d": "1", "jobs": [{"p": "1/2", "g": 5}]})
    with pytest.raises(ValueError):
        instance_from_json({"d": "1", "hint": {"kind": "total"}, "jobs": []})
    with pytest.raises(ValueError):
        instance_from_json([1, 2])


def test_machine_serializes_by_name():
    assert Machine("M1") is Machine.M1
    assert Machine.M2.value == "M2"
