"""Float grid-refinement oracles used only in tests.

The exact pipeline never touches floats; these independent Riemann-type
integrators give ~1e-5 relative accuracy for the cross-checks.
"""

import numpy as np

from kfano.variety import GENERIC, build_anticanonical
from kfano.afun import build_A, build_delta_Z


def _float_pieces(plf):
    return [(np.array([float(c) for c in p.linear]),
             float(p.constant), float(p.h)) for p in plf.pieces]


def grid_integral_2d(data, integrand, n_strips=600, n_inner=600):
    """Midpoint-rule integral over Delta_Z of integrand(mu1, mu2_array).

    integrand takes a float mu1 and a numpy array of mu2 values and returns
    the array of values.  The mu2-section endpoints are solved sharply from
    the H-representation, so the only error is the midpoint-rule O(1/N^2).
    """
    m = build_anticanonical(data)
    delta_Z = build_delta_Z(data, m)
    rows = [(float(h.normal[0]), float(h.normal[1]), float(h.offset))
            for h in delta_Z.halfspaces]
    xs = [float(v[0]) for v in delta_Z.vertices]
    lo, hi = min(xs), max(xs)
    width = (hi - lo) / n_strips
    total = 0.0
    for i in range(n_strips):
        x = lo + (i + 0.5) * width
        ylo, yhi = -np.inf, np.inf
        feasible = True
        for a, b, c in rows:
            rhs = c + a * x
            if b > 0:
                ylo = max(ylo, -rhs / b)
            elif b < 0:
                yhi = min(yhi, -rhs / b)
            elif rhs < 0:
                feasible = False
        if not feasible or yhi <= ylo:
            continue
        dy = (yhi - ylo) / n_inner
        ys = ylo + (np.arange(n_inner) + 0.5) * dy
        total += integrand(x, ys).sum() * dy * width
    return total


def make_density(data, fiber_class=None, moment=None):
    """Float evaluator for A*pi, mu_i*A*pi or the t-moment fiber density."""
    m = build_anticanonical(data)
    A = build_A(data, m)
    a_pieces = {x: _float_pieces(A[x]) for x in A}
    pi_rows = [(np.array([float(c) for c in f.coroot]),
                float(sum(k * c for k, c in zip(data.kappa_P, f.coroot))),
                float(f.denom)) for f in data.pi_factors]
    a_of = {x: (float(data.a_of(x)) if x != GENERIC else 0.0) for x in A}

    def density(x, ys):
        pts1 = np.full_like(ys, x)
        a_vals = {}
        for cls, pieces in a_pieces.items():
            vals = [(lin[0] * pts1 + lin[1] * ys + const) / h
                    for lin, const, h in pieces]
            a_vals[cls] = np.minimum.reduce(vals)
        a_tot = sum(a_vals.values())
        pi = np.ones_like(ys)
        for lin, const, denom in pi_rows:
            pi = pi * (lin[0] * pts1 + lin[1] * ys + const) / denom
        out = a_tot * pi
        if moment == 0:
            out = out * pts1
        elif moment == 1:
            out = out * ys
        if fiber_class is not None:
            out = out * (a_tot / 2.0 - a_vals[fiber_class]
                         + a_of[fiber_class] - 1.0)
        return out

    return density
