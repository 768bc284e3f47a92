from fractions import Fraction
from math import floor

import pytest

from kfano.core import AffForm, KfanoError
from kfano.afun import PLFunc
from kfano.polyhedra import Polytope
from kfano.latsum import (LatSumProblem, expansion_residual_test,
                          linearity_cells, sk_expansion, sk_oracle,
                          _piece_denominator)


def interval(lo, hi):
    return Polytope.from_vertices([(lo,), (hi,)])


def test_identity_on_unit_interval():
    # f = x, pi = 1 on [0, 1]: S_k = k(k+1)/2 and the expansion is exact
    prob = LatSumProblem(1, interval(0, 1),
                         PLFunc([AffForm((1,), 0)]), {(0,): Fraction(1)})
    assert sk_oracle(prob, 2) == 3
    for k in (1, 2, 3, 5, 8):
        assert sk_oracle(prob, k) == Fraction(k * (k + 1), 2)
        assert sk_expansion(prob, k) == sk_oracle(prob, k)
    assert expansion_residual_test(prob, [2, 4, 8])


def test_zero_function():
    prob = LatSumProblem(1, interval(0, 3),
                         PLFunc([AffForm((0,), 0)]), {(0,): Fraction(1)})
    assert sk_oracle(prob, 4) == 0
    assert sk_expansion(prob, 4) == 0


def test_degenerate_interval():
    # [2, 2]: no interior, only the doubled endpoint in the boundary term
    prob = LatSumProblem(1, interval(2, 2),
                         PLFunc([AffForm((1,), 0)]), {(0,): Fraction(1)})
    for k in (1, 2, 5):
        assert sk_oracle(prob, k) == 2 * k == sk_expansion(prob, k)


def test_denominator_jump_term():
    # f = x/2 on [0, 2]: S_k = k^2 exactly, and the expansion balances the
    # boundary term against the p_a = 2 jump correction
    piece = AffForm((1,), 0, h=2)
    assert _piece_denominator(piece) == 2
    prob = LatSumProblem(1, interval(0, 2), PLFunc([piece]),
                         {(0,): Fraction(1)})
    for k in (1, 2, 3, 7):
        assert sk_oracle(prob, k) == k * k
        assert sk_expansion(prob, k) == k * k


def test_hypothesis_validation():
    with pytest.raises(KfanoError):
        LatSumProblem(1, interval(0, 1), PLFunc([AffForm((1,), 0, h=2)]),
                      {(0,): Fraction(1)})  # f(1) = 1/2
    with pytest.raises(KfanoError):
        LatSumProblem(1, Polytope.from_vertices([(0,), (Fraction(1, 2),)]),
                      PLFunc([AffForm((2,), 0)]), {(0,): Fraction(1)})
    from kfano.polyhedra import HalfSpace
    empty = Polytope.from_halfspaces(1, [HalfSpace((1,), 0),
                                         HalfSpace((-1,), -1)])
    with pytest.raises(KfanoError):
        LatSumProblem(1, empty, PLFunc([AffForm((1,), 0)]),
                      {(0,): Fraction(1)})


def tent_problem():
    # f = min(x, y, 4 - x - y) on the triangle conv{0, (4,0), (0,4)},
    # weighted by pi = x (homogeneous, as the expansion scaling requires)
    tri = Polytope.from_vertices([(0, 0), (4, 0), (0, 4)])
    f = PLFunc([AffForm((1, 0), 0), AffForm((0, 1), 0), AffForm((-1, -1), 4)])
    return LatSumProblem(2, tri, f, {(1, 0): Fraction(1)})


def test_linearity_cells_tile():
    prob = tent_problem()
    cells = linearity_cells(prob)
    assert sum(c.volume() for c, _ in cells) == prob.polytope.volume()
    for cell, piece in cells:
        for v in cell.vertices:
            assert piece(v) == prob.f(v)


def test_double_summation_cross_check():
    prob = tent_problem()
    k = 3
    total = Fraction(0)
    for x in range(0, 4 * k + 1):
        for y in range(0, 4 * k - x + 1):
            kf = min(x, y, 4 * k - x - y)
            total += floor(kf) * Fraction(x)
    assert total == sk_oracle(prob, k)


def test_residual_bounded_2d():
    prob = tent_problem()
    assert expansion_residual_test(prob, [2, 4, 8, 16])


def test_bad_point_growth():
    # lattice points of k Delta sitting on a linearity wall grow like k^{r-1}
    prob = tent_problem()
    cells = linearity_cells(prob)

    def bad_count(k):
        count = 0
        for x in range(0, 4 * k + 1):
            for y in range(0, 4 * k - x + 1):
                p = (Fraction(x, k), Fraction(y, k))
                hits = sum(1 for cell, _ in cells if cell.contains(p))
                if hits > 1:
                    count += 1
        return count

    c4 = bad_count(4)
    C = Fraction(c4, 4)  # fit the constant at k = 4
    for k in (8, 16):
        assert bad_count(k) <= C * k
