from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kfano.core import (AffForm, DimensionError, KfanoError, format_rat,
                        pair, rat, rat_decimal, vec, vec_add, vec_scale,
                        vec_sub)

rationals = st.fractions(max_denominator=50)


def test_rat_coercions():
    assert rat(3) == Fraction(3)
    assert rat("2/3") == Fraction(2, 3)
    assert rat(Fraction(5, 7)) == Fraction(5, 7)
    with pytest.raises(TypeError):
        rat(0.5)


def test_pair_and_vectors():
    a = vec(("1", "2"))
    b = vec(("3", "-1"))
    assert pair(a, b) == 1
    assert vec_add(a, b) == (4, 1)
    assert vec_sub(a, b) == (-2, 3)
    assert vec_scale("1/2", a) == (Fraction(1, 2), 1)
    with pytest.raises(DimensionError):
        pair(a, (1,))


def test_affform():
    f = AffForm((1, -1), 2, 3, label="D")
    assert f((1, 0)) == 1
    g = f.normalized()
    assert g.h == 1 and g((1, 0)) == 1 and g.label == "D"
    with pytest.raises(KfanoError):
        AffForm((1,), 0, 0)


def test_format_rat():
    assert format_rat(Fraction(3)) == "3"
    assert format_rat(Fraction(-5, 7)) == "-5/7"


def test_rat_decimal():
    assert rat_decimal(Fraction(1, 2)) == "0.5"
    assert rat_decimal(0) == "0"
    assert rat_decimal(Fraction(1, 3)).startswith("0.3333333333")
    assert rat_decimal(Fraction(1000)) == "1000"
    assert rat_decimal(Fraction(-1, 4)) == "-0.25"


@given(rationals, rationals, st.lists(rationals, min_size=2, max_size=2))
def test_pair_linear(a, b, w):
    u = (a, b)
    v = tuple(w)
    assert pair(vec_add(u, v), (1, 1)) == pair(u, (1, 1)) + pair(v, (1, 1))


@given(st.fractions(max_denominator=30), rationals)
def test_rat_decimal_roundtrip_accuracy(x, _):
    if x == 0:
        return
    approx = float(rat_decimal(x).replace("e", "E"))
    assert abs(approx - float(x)) <= abs(float(x)) * 1e-10
