"""Volume, barycenters, Futaki invariant, J^NA and h^0 asymptotics.

All integrals are taken in the shifted frame mu = lambda - kappa_P: the
Duistermaat-Heckman density pi is evaluated at mu + kappa_P, and barycenters
are reported as b - (kappa_P, 0), matching the natural output frame.
"""

from fractions import Fraction

from .core import AffForm, KfanoError, pair, rat, vec, zero_vec
from .integrate import (PolyDensity, integrate_polytope, integrate_simplex,
                        poly_add, poly_const, poly_coord, poly_from_aff,
                        poly_mul, poly_scale)
from .polyhedra import solve_lp, triangulate
from .variety import GENERIC, build_anticanonical, central_lineality
from .afun import build_A, build_delta_Z, build_delta_x_O, subdivide


class FutakiValue:
    def __init__(self, value, v0, barycenter_used):
        self.value = value
        self.v0 = v0
        self.barycenter_used = barycenter_used

    def __repr__(self):
        return "FutakiValue(%s)" % (self.value,)


def eval_pi(data, lam):
    """pi(lambda) = prod <lambda, alpha^vee> / <rho, alpha^vee>."""
    out = Fraction(1)
    for f in data.pi_factors:
        out *= pair(lam, f.coroot) / f.denom
    return out


def weyl_dim(data, lam):
    """dim V_lambda by the Weyl formula over all positive coroots."""
    if not data.positive_coroots and data.pi_factors:
        raise KfanoError("positive coroots missing: cannot evaluate the "
                         "Weyl dimension oracle")
    out = Fraction(1)
    for coroot, denom in data.positive_coroots:
        out *= (pair(lam, coroot) + pair(data.rho, coroot)) / denom
    return out


def dimension_n(data):
    """n = rk(Gamma) + deg(pi) + 1."""
    return data.rank + len(data.pi_factors) + 1


def pi_density(data):
    """pi(mu + kappa_P) as a factored density in the shifted frame."""
    factors = [AffForm(f.coroot, pair(data.kappa_P, f.coroot), f.denom)
               for f in data.pi_factors]
    return PolyDensity([(1, factors)])


def _geometry(data):
    """Cache the anticanonical pipeline on the data object."""
    if "geometry" not in data._cache:
        m = build_anticanonical(data)
        A = build_A(data, m)
        delta_Z = build_delta_Z(data, m)
        sub = subdivide(data, m, delta_Z)
        data._cache["geometry"] = (m, A, delta_Z, sub)
    return data._cache["geometry"]


def _cell_affine(A, active, cls):
    """The active affine piece of A_cls on a cell, normalized to h = 1."""
    label = active[cls]
    for p in A[cls].pieces:
        if p.label == label:
            return p.normalized()
    raise KfanoError("no piece labelled %r" % label)


def _cell_A_poly(A, active, nvars, skip=None):
    """sum over classes (minus skip) of the active piece, as a polynomial."""
    out = {}
    for cls in A:
        if cls == skip:
            continue
        out = poly_add(out, poly_from_aff(_cell_affine(A, active, cls), nvars))
    return out


def volume(data):
    """V = int_{Delta_Z} A(mu) pi(mu + kappa_P) dmu, cell by cell."""
    if "volume" in data._cache:
        return data._cache["volume"]
    m, A, delta_Z, sub = _geometry(data)
    r = data.rank
    pi_poly = pi_density(data).to_poly(r)
    total = Fraction(0)
    for cell, active in sub.cells:
        integrand = poly_mul(_cell_A_poly(A, active, r), pi_poly)
        total += integrate_polytope(integrand, cell)
    if total == 0:
        raise KfanoError("zero volume: not a Fano-like input")
    data._cache["volume"] = total
    return total


def volume_via_delta_x_O(data, x):
    """The identity route: V = int_{Delta_x^O} pi, for any point class."""
    dxo = delta_x_O_polytopes(data)
    pi_poly = pi_density(data).to_poly(data.rank)
    # extend to (mu, t) with no t-dependence
    ext = {e + (0,): c for e, c in pi_poly.items()}
    return integrate_polytope(ext, dxo[x])


def delta_x_O_polytopes(data):
    if "delta_x_O" not in data._cache:
        m, A, delta_Z, sub = _geometry(data)
        data._cache["delta_x_O"] = build_delta_x_O(data, m)
    return data._cache["delta_x_O"]


def barycenters(data):
    """Per point class, the pi-weighted barycenter of Delta_x^O minus
    (kappa_P, 0): mu_b = (1/V) int mu A pi and
    t_b = (1/V) int (A/2 - A_x + a_x - 1) A pi over Delta_Z."""
    if "barycenters" in data._cache:
        return data._cache["barycenters"]
    m, A, delta_Z, sub = _geometry(data)
    r = data.rank
    V = volume(data)
    pi_poly = pi_density(data).to_poly(r)
    mu_moments = [Fraction(0)] * r
    t_moments = {x: Fraction(0) for x in A}
    for cell, active in sub.cells:
        a_poly = _cell_A_poly(A, active, r)
        a_pi = poly_mul(a_poly, pi_poly)
        tris = triangulate(cell)
        for i in range(r):
            integrand = poly_mul(a_pi, poly_coord(i, r))
            mu_moments[i] += sum(
                (integrate_simplex(integrand, s) for s in tris), Fraction(0))
        half_a = poly_scale(Fraction(1, 2), a_poly)
        for x in A:
            ax = data.a_of(x) if x != GENERIC else Fraction(0)
            ax_poly = poly_from_aff(_cell_affine(A, active, x), r)
            fib = poly_add(poly_add(half_a, poly_scale(-1, ax_poly)),
                           poly_const(ax - 1, r))
            integrand = poly_mul(fib, a_pi)
            t_moments[x] += sum(
                (integrate_simplex(integrand, s) for s in tris), Fraction(0))
    out = {}
    mu_b = tuple(mom / V for mom in mu_moments)
    for x in A:
        out[x] = (mu_b, t_moments[x] / V)
    data._cache["barycenters"] = out
    return out


def _class_of(v0):
    return v0.point if v0.point is not None else GENERIC


def _require_valuation(data, v0):
    if not data.contains_valuation(v0):
        raise KfanoError("not a G-valuation: %r violates the valuation cone"
                         % (v0,))


def futaki(data, v0):
    """Fut = <kappa_P - b(Delta_x^O), v0> = -(<mu_b, ell_0> + h_0 t_b)."""
    _require_valuation(data, v0)
    mu_b, t_b = barycenters(data)[_class_of(v0)]
    value = -(pair(mu_b, v0.ell) + v0.h * t_b)
    return FutakiValue(value, v0, (mu_b, t_b))


def futaki_direct(data, v0):
    """The direct route: (1/V) int_{Delta_x^O} <(kappa_P - lambda, -t), v0> pi,
    evaluated by triangulating the (mu, t)-polytope itself.

    In the shifted frame the integrand is (-ell_0(mu) - h_0 t) pi(mu+kappa_P).
    """
    _require_valuation(data, v0)
    x = _class_of(v0)
    p = delta_x_O_polytopes(data)[x]
    r = data.rank
    pi_poly = pi_density(data).to_poly(r)
    pi_ext = {e + (0,): c for e, c in pi_poly.items()}
    lin = poly_from_aff(AffForm(tuple(-c for c in v0.ell) + (-v0.h,), 0), r + 1)
    integrand = poly_mul(lin, pi_ext)
    return integrate_polytope(integrand, p) / volume(data)


def jna(data, v0):
    """J^NA = max over Delta_x^O of <(lambda,t), v0> minus its pi-mean."""
    _require_valuation(data, v0)
    x = _class_of(v0)
    p = delta_x_O_polytopes(data)[x]
    mu_b, t_b = barycenters(data)[x]

    def g(q):
        return pair(q[:-1], v0.ell) + v0.h * q[-1]

    if not p.vertices:
        return Fraction(0)
    return max(g(q) for q in p.vertices) - (pair(mu_b, v0.ell) + v0.h * t_b)


def min_twisted_jna(data, v0):
    """Minimum of J^NA over twists by the central torus directions.

    Minimizes ell' -> max_vertices <., v0 + ell'> - <b, v0 + ell'> over the
    span of the central lineality A, by exact LP on the epigraph.  Returns
    (minimum, ell').
    """
    _require_valuation(data, v0)
    basis = central_lineality(data)
    if not basis:
        return (jna(data, v0), zero_vec(data.rank))
    x = _class_of(v0)
    p = delta_x_O_polytopes(data)[x]
    mu_b, t_b = barycenters(data)[x]
    k = len(basis)
    # variables (s, c_1..c_k); minimize s subject to, for every vertex q:
    #   s >= <q - b, v0> + sum_j c_j <mu_q - mu_b, basis_j>
    A_ub = []
    b_ub = []
    for q in p.vertices:
        dmu = tuple(a - b for a, b in zip(q[:-1], mu_b))
        dt = q[-1] - t_b
        base = pair(dmu, v0.ell) + v0.h * dt
        row = [Fraction(-1)] + [pair(dmu, bj) for bj in basis]
        A_ub.append(tuple(row))
        b_ub.append(-base)
    c = [Fraction(1)] + [Fraction(0)] * k
    status, sol, value = solve_lp(c, A_ub, b_ub)
    if status != "optimal":
        raise KfanoError("twisted J^NA minimization failed: %s" % status)
    coeffs = sol[1:]
    ellp = zero_vec(data.rank)
    for cj, bj in zip(coeffs, basis):
        ellp = tuple(e + cj * b for e, b in zip(ellp, bj))
    return (value, ellp)


def lambda_max(data, v0, m0):
    """Max of tau^0 over Delta_Z, scanned at the subdivision cell vertices."""
    m, A, delta_Z, sub = _geometry(data)
    x0 = _class_of(v0)
    m0 = rat(m0)
    best = None
    for cell, active in sub.cells:
        for q in cell.vertices:
            val = m0 + pair(q, v0.ell) + \
                v0.h * (sum((A[x](q) for x in A), Fraction(0)) - A[x0](q))
            if best is None or val > best:
                best = val
    return best


def h0_coefficients(data):
    """Leading coefficients of h^0(X, K^-k): (V, nV/2)."""
    V = volume(data)
    n = dimension_n(data)
    return (V, Fraction(n, 2) * V)
