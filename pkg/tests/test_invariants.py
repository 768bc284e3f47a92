import random
from fractions import Fraction

import pytest

from kfano.core import KfanoError
from kfano.variety import GENERIC, HVector, VarietyData
from kfano.invariants import (barycenters, dimension_n, eval_pi, futaki,
                              futaki_direct, h0_coefficients, jna,
                              lambda_max, min_twisted_jna, volume,
                              volume_via_delta_x_O, weyl_dim)
from kfano.testconfig import TestConfig

from conftest import make_toy

V_GOLDEN = Fraction(5479, 192)
MU_GOLDEN = Fraction(16141, 76706)
T_INF = Fraction(-5248, 191765)
T_XI = Fraction(-166658, 575295)
T_GEN = Fraction(-12279, 27395)


def sl3_coroot_oracle():
    """Standalone SL3 data with the honest coroots, for the Weyl formula."""
    coroots = [((2, -1), 1), ((-1, 2), 1), ((1, 1), 2)]
    return VarietyData(
        rank=2, pi_factors=[], kappa_P=(2, 2), rho=(1, 1),
        positive_coroots=[(tuple(map(Fraction, c)), Fraction(d))
                          for c, d in coroots],
        marked_points=[("x", 2)], divisors=[], valuation_cones={})


def test_eval_pi_examples(sl3):
    assert eval_pi(sl3, sl3.kappa_P) == 8
    assert eval_pi(sl3, (0, 1)) == 0      # a zero factor kills the product
    toy = make_toy()
    assert eval_pi(toy, (5,)) == 1        # empty product


def test_weyl_dim_sl3_hand_values():
    d = sl3_coroot_oracle()
    assert weyl_dim(d, (Fraction(0), Fraction(0))) == 1
    assert weyl_dim(d, (Fraction(1), Fraction(1))) == 8       # adjoint
    assert weyl_dim(d, (Fraction(2, 3), Fraction(1, 3))) == 3  # standard


def test_weyl_dim_missing_coroots():
    from kfano.variety import PiFactor
    d = sl3_coroot_oracle()
    d.positive_coroots = []
    d.pi_factors = [PiFactor((1, 0), 1)]
    with pytest.raises(KfanoError):
        weyl_dim(d, (1, 1))


def test_weyl_dim_fixture_self_consistent(sl3):
    # the fixture's density convention gives the same adjoint dimension
    assert weyl_dim(sl3, (Fraction(1), Fraction(1))) == 8


def test_dimension_n(sl3, toy):
    assert dimension_n(sl3) == 6
    assert dimension_n(toy) == 2


def test_volume_golden_and_identity(sl3):
    V = volume(sl3)
    assert V == V_GOLDEN
    for x in sl3.point_classes():
        assert volume_via_delta_x_O(sl3, x) == V


def test_volume_grid_oracle(sl3):
    from _oracles import grid_integral_2d, make_density
    g = grid_integral_2d(sl3, make_density(sl3))
    assert abs(g - float(V_GOLDEN)) <= 1e-4 * float(V_GOLDEN)


def test_volume_toy(toy):
    assert volume(toy) == 4
    assert volume_via_delta_x_O(toy, "z1") == 4
    assert volume_via_delta_x_O(toy, GENERIC) == 4


def test_barycenters_golden(sl3):
    b = barycenters(sl3)
    for x in sl3.point_classes():
        assert b[x][0] == (MU_GOLDEN, MU_GOLDEN)
    assert b["inf"][1] == T_INF
    assert b["x1"][1] == T_XI == b["x2"][1] == b["x3"][1]
    assert b[GENERIC][1] == T_GEN
    # fiber decomposition: t_inf + 3 t_xi = 2 t_gen follows from
    # A = sum_x A_x with a_gen = 0
    assert b["inf"][1] + 3 * b["x1"][1] == 2 * b[GENERIC][1]


def test_barycenters_symmetric_input(toy):
    b = barycenters(toy)
    for x in toy.point_classes():
        assert b[x] == ((Fraction(0),), Fraction(0))


def test_futaki_examples(sl3):
    qx1 = HVector("x1", (0, 0), 1)
    assert futaki(sl3, qx1).value == Fraction(166658, 575295)
    central = HVector(None, (-1, 0), 0)
    assert futaki(sl3, central).value == Fraction(16141, 76706)
    assert futaki(sl3, HVector(None, (0, 0), 0)).value == 0


def test_futaki_rejects_non_valuation(sl3):
    with pytest.raises(KfanoError):
        futaki(sl3, HVector("x1", (1, 0), 1))


def test_futaki_two_routes(sl3):
    for v0 in (HVector("x1", (0, 0), 1), HVector("inf", (-2, -2), 1),
               HVector(None, (-1, -1), 0), HVector(GENERIC, (-1, -1), 1)):
        assert futaki(sl3, v0).value == futaki_direct(sl3, v0)


def test_futaki_linearity(sl3):
    # conic combinations inside the same valuation cone
    rays = [HVector("x1", (0, 0), 1), HVector("x1", (-1, 0), 0),
            HVector("x1", (0, -1), 0)]
    vals = [futaki(sl3, r).value for r in rays]
    combo = HVector("x1", (-2, -3), 5)
    expect = 5 * vals[0] + 2 * vals[1] + 3 * vals[2]
    assert futaki(sl3, combo).value == expect


def test_jna_basic(sl3, toy):
    assert jna(sl3, HVector(None, (0, 0), 0)) == 0
    val = jna(sl3, HVector("x1", (0, 0), 1))
    assert val == Fraction(741953, 575295) and val > 0
    # toy: central direction ell = 1, max mu = 1, mean 0
    assert jna(toy, HVector(None, (1,), 0)) == 1


def test_jna_grid_cross_check(sl3):
    # mean of <(mu,t), q_x1> = t over Delta_x1^O, against the float oracle
    from _oracles import grid_integral_2d, make_density
    V = grid_integral_2d(sl3, make_density(sl3))
    t_mean = grid_integral_2d(sl3, make_density(sl3, fiber_class="x1")) / V
    exact = jna(sl3, HVector("x1", (0, 0), 1))
    # max of t over Delta_x1^O at the vertices
    from kfano.invariants import delta_x_O_polytopes
    tmax = max(q[-1] for q in delta_x_O_polytopes(sl3)["x1"].vertices)
    assert abs((float(tmax) - t_mean) - float(exact)) <= 1e-4


def test_min_twisted_trivial_lineality(sl3):
    v0 = HVector("x1", (0, 0), 1)
    val, ellp = min_twisted_jna(sl3, v0)
    assert val == jna(sl3, v0) and ellp == (0, 0)


def test_min_twisted_full_lineality(toy):
    v0 = HVector(None, (1,), 0)
    val, ellp = min_twisted_jna(toy, v0)
    assert val == 0 and ellp == (-1,)
    # a jump direction can also be partially twisted
    v1 = HVector("z1", (2,), 1)
    val1, _ = min_twisted_jna(toy, v1)
    assert 0 <= val1 <= jna(toy, v1)


def test_lambda_max(sl3, toy):
    assert lambda_max(sl3, HVector(None, (0, 0), 0), 1) == 1
    # toy, central v0 = (1): tau0 = m0 + mu on [-1, 1]
    assert lambda_max(toy, HVector(None, (1,), 0), 2) == 3


def test_h0_coefficients(sl3, toy):
    V = volume(sl3)
    assert h0_coefficients(sl3) == (V, 3 * V)
    assert h0_coefficients(toy) == (4, 4)


def test_jna_nonnegative_random(sl3):
    rng = random.Random(7)
    ray_sets = {
        "x1": [(-1, 0, 0), (0, -1, 0), (0, 0, 1)],
        "inf": [(-1, 0, 0), (0, -1, 0), (-2, -2, 1)],
        GENERIC: [(-1, 0, 0), (0, -1, 0), (-1, -1, 1)],
    }
    for _ in range(30):
        cls = rng.choice(list(ray_sets))
        coeffs = [rng.randint(0, 3) for _ in ray_sets[cls]]
        v = [sum(c * r[i] for c, r in zip(coeffs, ray_sets[cls]))
             for i in range(3)]
        point = cls if v[2] != 0 else None
        hv = HVector(point, tuple(v[:2]), v[2])
        assert jna(sl3, hv) >= 0
