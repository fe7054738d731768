import pickle
from decimal import Decimal, getcontext
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ewlab.exactnum import ONE, SQRT2, SQRT5, SQRT10, ZERO, QValue, ratio_decimal


def qv(a=0, b=0, c=0, e=0):
    return QValue(a, b, c, e)


def high_precision(x: QValue) -> Decimal:
    """Independent floating reference at 60 significant digits."""
    getcontext().prec = 60
    return (Decimal(x.a.numerator) / x.a.denominator
            + Decimal(x.b.numerator) / x.b.denominator * Decimal(2).sqrt()
            + Decimal(x.c.numerator) / x.c.denominator * Decimal(5).sqrt()
            + Decimal(x.e.numerator) / x.e.denominator * Decimal(10).sqrt())


# -- addition ----------------------------------------------------------------

def test_add_componentwise():
    assert qv(1) + qv(0, 1) == qv(1, 1)


def test_add_identity():
    x = qv("3/7", "-2/5", 1, "9/4")
    assert x + ZERO == x
    assert ZERO + x == x


def test_add_cancellation_reaches_sqrt2():
    assert (SQRT2 - 1) + 1 == SQRT2
    assert qv(-1, 1) + qv(1) == qv(0, 1)


# -- multiplication ----------------------------------------------------------

def test_mul_radical_table():
    assert SQRT2 * SQRT5 == SQRT10
    assert SQRT2 * SQRT2 == qv(2)
    assert SQRT5 * SQRT5 == qv(5)
    assert SQRT10 * SQRT10 == qv(10)
    assert SQRT2 * SQRT10 == 2 * SQRT5
    assert SQRT5 * SQRT10 == 5 * SQRT2


def test_mul_conjugates():
    # (sqrt5 - 1)(sqrt5 + 1) = 4; cross-checked against 60-digit evaluation.
    product = (SQRT5 - 1) * (SQRT5 + 1)
    assert product == qv(4)
    approx = high_precision(SQRT5 - 1) * high_precision(SQRT5 + 1)
    assert abs(approx - 4) < Decimal("1e-50")


def test_scalar_operands():
    assert 3 * SQRT2 == qv(0, 3)
    assert SQRT2 * Fraction(1, 2) == qv(0, "1/2")
    assert (1 - SQRT2) == -(SQRT2 - 1)


# -- sign --------------------------------------------------------------------

def test_sign_zero_is_structural():
    assert ZERO.sign() == 0
    assert qv().sign() == 0
    assert not ZERO


def test_sign_one_minus_sqrt2():
    assert (ONE - SQRT2).sign() == -1


def test_sign_sqrt10_minus_three():
    # sqrt10 = 3.16227...; frozen from the 60-digit reference.
    value = SQRT10 - 3
    assert high_precision(value) > 0
    assert value.sign() == 1


def test_sign_tiny_differences_resolved():
    # 1393/985 < sqrt2 < 99/70: both gaps are ~1e-6, far below one
    # interval round, but the loop must still decide them exactly.
    assert (SQRT2 - Fraction(1393, 985)).sign() == 1
    assert (SQRT2 - Fraction(99, 70)).sign() == -1


# -- comparisons -------------------------------------------------------------

def test_compare_examples():
    assert (SQRT2 - 1).compare(ONE) == -1
    half_ratio = QValue(Fraction(-1, 2), 0, Fraction(1, 2))
    assert half_ratio.compare(half_ratio) == 0
    assert QValue(Fraction(2, 3)).compare(SQRT2 - 1) == 1


def test_rich_comparisons():
    assert SQRT2 < SQRT5 < SQRT10
    assert SQRT2 <= SQRT2
    assert SQRT5 > 2
    assert qv("2/3") >= qv("2/3")
    assert qv("5/8") != SQRT2


def test_min_max_derive_from_ordering():
    values = [SQRT2, qv(1), SQRT5 - 1, qv("4/3")]
    assert min(values) == qv(1)
    assert max(values) == SQRT2


# -- decimals ----------------------------------------------------------------

def test_to_decimal_known_constants():
    assert SQRT2.to_decimal(4) == "1.4142"
    assert qv("4/3").to_decimal(4) == "1.3333"
    assert (SQRT5 - 1).to_decimal(4) == "1.2361"


def test_to_decimal_negative_and_ties():
    assert (-SQRT2).to_decimal(4) == "-1.4142"
    # Rational ties round to even.
    assert qv("1/8").to_decimal(2) == "0.12"
    assert qv("3/8").to_decimal(2) == "0.38"
    assert ZERO.to_decimal(3) == "0.000"


def test_to_decimal_matches_reference():
    for x in (SQRT10, SQRT2 + SQRT5, qv("7/13", "-2/3", "1/9", "4/7")):
        want = str(high_precision(x).quantize(Decimal("1.000000000000")))
        assert x.to_decimal(12) == want


def test_ratio_decimal():
    assert ratio_decimal(qv(2), qv("5/3"), 4) == "1.2000"
    assert ratio_decimal(SQRT2, ONE, 6) == "1.414214"
    assert ratio_decimal(qv(2), SQRT2, 6) == "1.414214"
    # Exact rational quotient of two irrational values.
    assert ratio_decimal(SQRT2 + SQRT2, SQRT2, 4) == "2.0000"
    assert ratio_decimal(ZERO, SQRT5, 3) == "0.000"
    with pytest.raises(ValueError):
        ratio_decimal(ONE, ZERO)


# -- serialization -----------------------------------------------------------

def test_json_round_trip():
    samples = [ZERO, ONE, qv("-7/3"), SQRT2 - 1,
               qv("1/2", "-3/4", "5/6", "-7/8"), 5 * SQRT10]
    for x in samples:
        assert QValue.from_json(x.to_json()) == x


def test_json_lenient_forms():
    assert QValue.from_json("2/4") == qv("1/2")
    assert QValue.from_json("3/-6") == qv("-1/2")
    assert QValue.from_json(7) == qv(7)
    assert QValue.from_json("7") == qv(7)
    assert QValue.from_json({"b": "1"}) == SQRT2
    assert QValue.from_json({"a": "1/2", "e": 2}) == qv("1/2", 0, 0, 2)


def test_json_rejects_bad_input():
    with pytest.raises(ValueError):
        QValue.from_json("1/0")
    with pytest.raises(ValueError):
        QValue.from_json(0.5)
    with pytest.raises(ValueError):
        QValue.from_json("three")
    with pytest.raises(ValueError):
        QValue.from_json({"a": "1", "z": "2"})
    with pytest.raises(ValueError):
        QValue.from_json(True)


def test_hash_and_pickle():
    assert hash(qv(3)) == hash(3)
    assert hash(qv("1/2")) == hash(Fraction(1, 2))
    x = qv("1/2", "-3/4", "5/6", "-7/8")
    assert pickle.loads(pickle.dumps(x)) == x
    assert len({SQRT2, SQRT2, SQRT5}) == 2


# -- algebraic properties ----------------------------------------------------

small_rationals = st.fractions(min_value=-10, max_value=10, max_denominator=10)
qvalues = st.builds(QValue, small_rationals, small_rationals,
                    small_rationals, small_rationals)


@given(qvalues, qvalues, qvalues)
def test_ring_axioms(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


@given(qvalues)
def test_sign_agrees_with_decimal(x):
    rendered = x.to_decimal(30)
    decimal_sign = 0
    if any(ch != "0" for ch in rendered.replace(".", "").lstrip("-")):
        decimal_sign = -1 if rendered.startswith("-") else 1
    assert x.sign() == decimal_sign


@settings(max_examples=50)
@given(qvalues, qvalues, qvalues)
def test_order_is_transitive(x, y, z):
    lo, mid, hi = sorted([x, y, z])
    assert lo <= mid <= hi
    assert lo <= hi


@given(qvalues, qvalues)
def test_order_matches_reference(x, y):
    cmp = x.compare(y)
    gap = high_precision(x) - high_precision(y)
    if gap > Decimal("1e-40"):
        assert cmp == 1
    elif gap < Decimal("-1e-40"):
        assert cmp == -1
    else:
        assert cmp == 0
