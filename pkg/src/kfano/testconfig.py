"""Test configurations: validation of (v0, m0), tau^0, the two-variable
A-function, filtration dimensions and brute-force lattice-sum oracles.

A test configuration with integral central fibre is encoded by an integral
hyperspace element v0 = h0 q_{x0} + ell0 inside the valuation cone, an offset
m0 making tau^0 > 0 on the moment polytope, and a negative multiplicity m
(m = -1 for integral central fibre).  All lattice work happens in the shifted
integer frame mu' = lambda - k*lambda0, so floors are exact.
"""

import os
from fractions import Fraction
from math import ceil, floor

from .core import KfanoError, pair, rat, vec
from .variety import GENERIC
from .invariants import _geometry, weyl_dim


DEFAULT_MAX_LATTICE = 10 ** 7


def max_lattice_points():
    """Enumeration budget, overridable through KFANO_MAX_LATTICE."""
    return int(os.environ.get("KFANO_MAX_LATTICE", str(DEFAULT_MAX_LATTICE)))


class TestConfig:
    """(v0, m0, m) with m a negative integer; m = -1 means integral fibre."""

    __test__ = False  # keep pytest collection away from the name

    def __init__(self, v0, m0, m=-1):
        self.v0 = v0
        self.m0 = int(m0)
        self.m = int(m)
        if self.m >= 0:
            raise KfanoError("multiplicity m must be negative, got %s" % m)

    def __repr__(self):
        return "TestConfig(v0=%r, m0=%d, m=%d)" % (self.v0, self.m0, self.m)


def _is_integral(v0):
    return all(x.denominator == 1 for x in v0.ell) and v0.h.denominator == 1


def _class_of(v0):
    return v0.point if v0.point is not None else GENERIC


def tau0(data, tc, mu):
    """tau^0(mu) = m0 + ell0(mu) + h0 (A(mu) - A_{x0}(mu))."""
    m, A, delta_Z, sub = _geometry(data)
    mu = vec(mu)
    if not delta_Z.contains(mu):
        raise KfanoError("point %s outside the moment polytope" % (mu,))
    v0 = tc.v0
    rest = sum((A[x](mu) for x in A if x != _class_of(v0)), Fraction(0))
    return tc.m0 + pair(mu, v0.ell) + v0.h * rest


def validate_tc(data, tc):
    """(accepted, minimal m0): vertex-scan of tau^0 over the subdivision.

    tau^0 is concave PL, so its minimum over Delta_Z is attained at a vertex
    of the linearity subdivision.  The minimal m0 is the least positive
    integer making the minimum positive.
    """
    v0 = tc.v0
    if not _is_integral(v0):
        raise KfanoError("v0 must be integral: %r" % (v0,))
    if not data.contains_valuation(v0):
        raise KfanoError("v0 is not a G-valuation: %r" % (v0,))
    m, A, delta_Z, sub = _geometry(data)
    x0 = _class_of(v0)
    worst = None
    for cell, active in sub.cells:
        for q in cell.vertices:
            rest = sum((A[x](q) for x in A if x != x0), Fraction(0))
            val = pair(q, v0.ell) + v0.h * rest
            if worst is None or val < worst:
                worst = val
    minimal = max(1, floor(-worst) + 1)
    return (tc.m0 + worst > 0, minimal)


def A_of_D(data, tc, mu, t):
    """The two-variable fiber function A(D, mu, t) of the total space.

    For h0 != 0: min{A_{x0}(mu), (-t + m0 + ell0(mu))/h0} plus the A_x of the
    other classes.  For h0 = 0 the quotient degenerates to a characteristic
    function: A(mu) when t <= m0 + ell0(mu), else 0.
    """
    m, A, delta_Z, sub = _geometry(data)
    mu = vec(mu)
    t = rat(t)
    v0 = tc.v0
    c = -t + tc.m0 + pair(mu, v0.ell)
    if v0.h == 0:
        if c < 0:
            return Fraction(0)
        return sum((A[x](mu) for x in A), Fraction(0))
    x0 = _class_of(v0)
    rest = sum((A[x](mu) for x in A if x != x0), Fraction(0))
    return min(A[x0](mu), c / v0.h) + rest


def build_delta_Z_L(data, tc):
    """The (mu, t)-polytope {mu in Delta_Z, 0 <= t <= tau^0(mu)}.

    tau^0 is concave, so the upper bound expands into one inequality per
    selection of active pieces of the A_x with x != x0.
    """
    from itertools import product
    from .polyhedra import HalfSpace, Polytope
    from .afun import _sum_selection
    from .core import zero_vec
    m, A, delta_Z, sub = _geometry(data)
    v0 = tc.v0
    x0 = _class_of(v0)
    r = data.rank
    rows = [HalfSpace(h.normal + (Fraction(0),), h.offset)
            for h in delta_Z.halfspaces]
    rows.append(HalfSpace(zero_vec(r) + (Fraction(1),), 0))  # t >= 0
    others = [x for x in sorted(A) if x != x0]
    for selection in product(*(A[x].pieces for x in others)):
        if selection:
            lin, const = _sum_selection(selection)
        else:
            lin, const = zero_vec(r), Fraction(0)
        normal = tuple(e + v0.h * l for e, l in zip(v0.ell, lin))
        rows.append(HalfSpace(normal + (Fraction(-1),),
                              tc.m0 + v0.h * const))
    return Polytope.from_halfspaces(r + 1, rows)


def _floor_kAx(A, x, k, mu_int):
    """floor(k A_x(mu'/k)) evaluated exactly at an integral mu'."""
    best = None
    for p in A[x].pieces:
        val = floor((k * p.constant + pair(mu_int, p.linear)) / p.h)
        if best is None or val < best:
            best = val
    return best


def _in_k_delta_Z(delta_Z, k, mu_int):
    return all(k * h.offset + pair(mu_int, h.normal) >= 0
               for h in delta_Z.halfspaces)


def filtration_dim(data, tc, k, lam, tau):
    """dim (F^tau R_k)^(B)_lambda, exact, both the central and jump branch.

    lam is the absolute B-weight; internally mu' = lam - k*kappa_P must be an
    integral lattice point of k Delta_Z.
    """
    if k < 0:
        raise KfanoError("k must be nonnegative")
    m, A, delta_Z, sub = _geometry(data)
    lam = vec(lam)
    mu_int = tuple(l - k * kp for l, kp in zip(lam, data.kappa_P))
    if any(x.denominator != 1 for x in mu_int):
        return 0
    if not _in_k_delta_Z(delta_Z, k, mu_int):
        return 0
    v0 = tc.v0
    shift = tau * tc.m + k * tc.m0 + pair(mu_int, v0.ell)
    if v0.h == 0:
        if shift < 0:
            return 0
        deg = sum(_floor_kAx(A, x, k, mu_int) for x in A)
        return max(0, deg + 1)
    x0 = _class_of(v0)
    deg = min(_floor_kAx(A, x0, k, mu_int), floor(shift / v0.h))
    deg += sum(_floor_kAx(A, x, k, mu_int) for x in A if x != x0)
    return max(0, deg + 1)


def _lattice_points_k_delta_Z(data, k):
    """Integral points of k Delta_Z (shifted frame), budget-checked."""
    m, A, delta_Z, sub = _geometry(data)
    r = data.rank
    los = [min(v[i] for v in delta_Z.vertices) for i in range(r)]
    his = [max(v[i] for v in delta_Z.vertices) for i in range(r)]
    ranges = [range(ceil(k * lo), floor(k * hi) + 1)
              for lo, hi in zip(los, his)]
    total = 1
    for rg in ranges:
        total *= max(0, len(rg))
    budget = max_lattice_points()
    if total > budget:
        raise KfanoError("lattice enumeration needs ~%d points, budget is %d "
                         "(KFANO_MAX_LATTICE)" % (total, budget))
    out = []
    def rec(prefix, depth):
        if depth == r:
            p = tuple(Fraction(x) for x in prefix)
            if _in_k_delta_Z(delta_Z, k, p):
                out.append(p)
            return
        for x in ranges[depth]:
            rec(prefix + [x], depth + 1)
    rec([], 0)
    return out


def oracle_h0(data, k):
    """Brute-force h^0(X, K^-k): sum of dim(R_k)_lambda * dim V_lambda."""
    if k == 0:
        return 1
    m, A, delta_Z, sub = _geometry(data)
    total = Fraction(0)
    for mu_int in _lattice_points_k_delta_Z(data, k):
        deg = sum(_floor_kAx(A, x, k, mu_int) for x in A)
        d = max(0, deg + 1)
        if d == 0:
            continue
        lam = tuple(x + k * kp for x, kp in zip(mu_int, data.kappa_P))
        total += d * weyl_dim(data, lam)
    if total.denominator != 1:
        raise KfanoError("non-integral h0 oracle value %s" % total)
    return int(total)


def oracle_wk(data, tc, k):
    """Brute-force total weight w_k = sum_{tau>=1} dim F^tau (times dim V)."""
    if k == 0:
        return 0
    m, A, delta_Z, sub = _geometry(data)
    v0 = tc.v0
    x0 = _class_of(v0)
    total = Fraction(0)
    for mu_int in _lattice_points_k_delta_Z(data, k):
        floors = {x: _floor_kAx(A, x, k, mu_int) for x in A}
        base = sum(floors.values())
        if base + 1 <= 0:
            continue
        lam = tuple(x + k * kp for x, kp in zip(mu_int, data.kappa_P))
        wd = weyl_dim(data, lam)
        ell0_mu = pair(mu_int, v0.ell)
        tau = 1
        while True:
            shift = tau * tc.m + k * tc.m0 + ell0_mu
            if v0.h == 0:
                d = base + 1 if shift >= 0 else 0
            else:
                deg = min(floors[x0], floor(shift / v0.h)) + \
                    sum(floors[x] for x in A if x != x0)
                d = max(0, deg + 1)
            if d == 0:
                break
            total += d * wd
            tau += 1
    if total.denominator != 1:
        raise KfanoError("non-integral wk oracle value %s" % total)
    return int(total)


def twist(tc, ellp, q):
    """The configuration associated to q(v0 + ell'); gradings shift by
    ell'(lambda) and then scale by the base change q."""
    from .variety import HVector
    q = int(q)
    if q <= 0:
        raise KfanoError("base change q must be a positive integer")
    ellp = vec(ellp)
    new_ell = tuple(q * (a + b) for a, b in zip(tc.v0.ell, ellp))
    new_h = q * tc.v0.h
    if any(x.denominator != 1 for x in new_ell) or new_h.denominator != 1:
        raise KfanoError("twist q(v0 + ell') = %s is not integral"
                         % (new_ell + (new_h,),))
    v = HVector(tc.v0.point, new_ell, new_h)
    return TestConfig(v, q * tc.m0, tc.m)


def central_fibre_spherical(tc):
    """The central fibre of a special configuration is G x Gm-spherical
    exactly when v0 is not central."""
    if tc.m != -1:
        raise KfanoError("sphericity criterion needs a special configuration "
                         "(m = -1)")
    return tc.v0.h != 0
