from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kfano.core import AffForm, KfanoError
from kfano.variety import GENERIC, build_anticanonical
from kfano.afun import (PLFunc, a_total, build_A, build_delta_Z,
                        build_delta_x_O, build_delta_x_d,
                        normal_fan_at_vertices, subdivide)


def geometry(data):
    m = build_anticanonical(data)
    return m, build_A(data, m), build_delta_Z(data, m)


def as_form_set(plf):
    return {p.normalized().key() for p in plf.pieces}


def test_plfunc_needs_pieces():
    with pytest.raises(KfanoError):
        PLFunc([])


def test_A_functions_sl3(sl3):
    m, A, delta_Z = geometry(sl3)
    third = Fraction(2, 3)
    for x in ("x1", "x2", "x3"):
        assert as_form_set(A[x]) == {
            ((0, 1), third, 1), ((1, 0), third, 1), ((0, 0), third, 1)}
    assert as_form_set(A["inf"]) == {((-1, -1), 0, 1)}
    assert as_form_set(A[GENERIC]) == {((0, 0), 0, 1)}
    # hand values at the origin
    zero = (Fraction(0), Fraction(0))
    assert A["x1"](zero) == third
    assert A["inf"](zero) == 0
    assert a_total(A, zero) == 2


def test_delta_Z_sl3(sl3):
    m, A, delta_Z = geometry(sl3)
    assert delta_Z.vertices == (
        (-2, -2), (Fraction(-1, 2), 1), (1, Fraction(-1, 2)), (1, 1))
    for v in delta_Z.vertices:
        assert a_total(A, v) == 0


def test_subdivision_tiles_delta_Z(sl3):
    m, A, delta_Z = geometry(sl3)
    sub = subdivide(sl3, m, delta_Z)
    assert sum(c.volume() for c, _ in sub.cells) == delta_Z.volume()
    # the active piece is really the minimum on each cell
    for cell, active in sub.cells:
        for v in cell.vertices:
            for cls, label in active.items():
                piece = next(p for p in A[cls].pieces if p.label == label)
                assert piece(v) == A[cls](v)


def test_delta_x_O_fibers(sl3):
    m, A, delta_Z = geometry(sl3)
    dxo = build_delta_x_O(sl3, m)
    mu = (Fraction(0), Fraction(0))
    # generic fiber: [a_x - 1 - A_x, ... + A] = [-1, 1] at the origin
    assert dxo[GENERIC].contains(mu + (Fraction(-1),))
    assert dxo[GENERIC].contains(mu + (Fraction(1),))
    assert not dxo[GENERIC].contains(mu + (Fraction(1) + Fraction(1, 100),))
    # x_i fiber: [-A_xi - 1/3, A - A_xi - 1/3] = [-1, 1] at the origin
    lo = -A["x1"](mu) + sl3.a_of("x1") - 1
    hi = lo + a_total(A, mu)
    assert lo == -1 and hi == 1
    assert dxo["x1"].contains(mu + (lo,)) and dxo["x1"].contains(mu + (hi,))
    assert not dxo["x1"].contains(mu + (lo - Fraction(1, 100),))


def test_delta_x_O_fiber_length_is_A(sl3):
    m, A, delta_Z = geometry(sl3)
    dxo = build_delta_x_O(sl3, m)
    sub = subdivide(sl3, m, delta_Z)
    samples = {v for cell, _ in sub.cells for v in cell.vertices}
    for x in dxo:
        ax = sl3.a_of(x) if x != GENERIC else Fraction(0)
        for mu in samples:
            lo = ax - 1 - A[x](mu)
            length = a_total(A, mu)
            assert dxo[x].contains(mu + (lo,))
            assert dxo[x].contains(mu + (lo + length,))
            eps = Fraction(1, 1000)
            assert not dxo[x].contains(mu + (lo - eps,))
            assert not dxo[x].contains(mu + (lo + length + eps,))


def test_delta_x_d_unbounded_with_recession(sl3):
    m, A, delta_Z = geometry(sl3)
    poly = build_delta_x_d(sl3, m)["x1"]
    assert poly.vertices  # has vertices but is unbounded
    rc = poly.recession_cone
    assert rc.rays or rc.lineality
    fans = normal_fan_at_vertices(poly)
    assert len(fans) == len(poly.vertices)


@settings(max_examples=30, deadline=None)
@given(st.tuples(st.fractions(min_value=-2, max_value=1, max_denominator=8),
                 st.fractions(min_value=-2, max_value=1, max_denominator=8)),
       st.tuples(st.fractions(min_value=-2, max_value=1, max_denominator=8),
                 st.fractions(min_value=-2, max_value=1, max_denominator=8)))
def test_A_concavity(sl3_shared, p, q):
    m, A, delta_Z = geometry(sl3_shared)
    if not (delta_Z.contains(p) and delta_Z.contains(q)):
        return
    mid = tuple((a + b) / 2 for a, b in zip(p, q))
    for x in A:
        assert A[x](mid) >= (A[x](p) + A[x](q)) / 2
