"""Exact integration of polynomials over simplices and polytopes.

Polynomials are dicts mapping exponent tuples to rational coefficients.
Products of affine forms are expanded symbolically; simplex integrals use the
closed form  int_{standard d-simplex} prod u_i^{a_i} du = (prod a_i!)/(d+sum a_i)!.
"""

from fractions import Fraction
from math import factorial

from .core import AffForm, KfanoError, rat, vec, vec_sub
from .polyhedra import (Simplex, _det, affine_dim, kernel_basis, primitive,
                        to_local_coords, triangulate)


# ---------------------------------------------------------------------------
# polynomial dicts

def poly_const(c, nvars):
    c = rat(c)
    if c == 0:
        return {}
    return {(0,) * nvars: c}


def poly_coord(i, nvars):
    e = [0] * nvars
    e[i] = 1
    return {tuple(e): Fraction(1)}


def poly_from_aff(aff, nvars=None):
    """The affine form (constant + <x, linear>)/h as a polynomial dict."""
    if nvars is None:
        nvars = len(aff.linear)
    out = {}
    if aff.constant != 0:
        out[(0,) * nvars] = aff.constant / aff.h
    for i, c in enumerate(aff.linear):
        if c != 0:
            e = [0] * nvars
            e[i] = 1
            out[tuple(e)] = c / aff.h
    return out


def poly_add(p, q):
    out = dict(p)
    for e, c in q.items():
        c2 = out.get(e, Fraction(0)) + c
        if c2 == 0:
            out.pop(e, None)
        else:
            out[e] = c2
    return out


def poly_scale(c, p):
    c = rat(c)
    if c == 0:
        return {}
    return {e: c * v for e, v in p.items()}


def poly_mul(p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            c = out.get(e, Fraction(0)) + c1 * c2
            if c == 0:
                out.pop(e, None)
            else:
                out[e] = c
    return out


def poly_eval(p, x):
    total = Fraction(0)
    for e, c in p.items():
        term = c
        for xi, ei in zip(x, e):
            for _ in range(ei):
                term *= xi
        total += term
    return total


def poly_substitute(p, affines):
    """Substitute x_i = affines[i] (each a polynomial dict in new variables)."""
    if not p:
        return {}
    nnew = len(next(iter(affines[0].keys()), ())) if affines else 0
    # memoized powers
    powers = [{0: poly_const(1, nnew)} for _ in affines]

    def power(i, k):
        cache = powers[i]
        if k not in cache:
            cache[k] = poly_mul(power(i, k - 1), affines[i])
        return cache[k]

    out = {}
    for e, c in p.items():
        term = poly_const(c, nnew)
        for i, ei in enumerate(e):
            if ei:
                term = poly_mul(term, power(i, ei))
        out = poly_add(out, term)
    return out


class PolyDensity:
    """sum_j c_j * prod_i (affine form)_{j,i}, kept factored until needed."""

    def __init__(self, terms):
        # terms: list of (coefficient, list of AffForm)
        self.terms = [(rat(c), list(fs)) for c, fs in terms]

    @classmethod
    def constant(cls, c):
        return cls([(c, [])])

    def eval(self, x):
        total = Fraction(0)
        for c, fs in self.terms:
            term = c
            for f in fs:
                term *= f(x)
            total += term
        return total

    def to_poly(self, nvars):
        out = {}
        for c, fs in self.terms:
            term = poly_const(c, nvars)
            for f in fs:
                term = poly_mul(term, poly_from_aff(f, nvars))
            out = poly_add(out, term)
        return out

    def __mul__(self, other):
        if isinstance(other, PolyDensity):
            terms = []
            for c1, f1 in self.terms:
                for c2, f2 in other.terms:
                    terms.append((c1 * c2, f1 + f2))
            return PolyDensity(terms)
        return NotImplemented


def _as_poly(f, nvars):
    if isinstance(f, PolyDensity):
        return f.to_poly(nvars)
    if isinstance(f, AffForm):
        return poly_from_aff(f, nvars)
    if isinstance(f, dict):
        return f
    return poly_const(f, nvars)


def integrate_simplex(f, s):
    """Exact integral of f over a simplex (ambient Lebesgue measure)."""
    pts = s.points
    d = len(pts) - 1
    if s.chart is not None:
        raise KfanoError("use integrate_facet for lower-dimensional simplices")
    if len(pts[0]) != d:
        raise KfanoError("simplex is not full-dimensional")
    poly = _as_poly(f, d)
    v0 = pts[0]
    cols = [vec_sub(p, v0) for p in pts[1:]]
    det = _det(cols)
    if det == 0:
        return Fraction(0)
    # x_i = v0_i + sum_j cols[j][i] * u_j
    subs = []
    for i in range(d):
        sub = {}
        if v0[i] != 0:
            sub[(0,) * d] = v0[i]
        for j in range(d):
            if cols[j][i] != 0:
                e = [0] * d
                e[j] = 1
                sub[tuple(e)] = cols[j][i]
        subs.append(sub)
    q = poly_substitute(poly, subs)
    total = Fraction(0)
    for e, c in q.items():
        num = 1
        for ei in e:
            num *= factorial(ei)
        total += c * Fraction(num, factorial(sum(e) + d))
    return abs(det) * total


def integrate_polytope(f, p):
    """Exact integral over a polytope; zero for lower-dimensional input."""
    if p.is_empty or not p.vertices:
        return Fraction(0)
    if affine_dim(p.vertices) < p.ambient_dim:
        return Fraction(0)
    return sum((integrate_simplex(f, s) for s in triangulate(p)), Fraction(0))


def weighted_barycenter(f, p):
    """(int_p x_i f) / (int_p f), componentwise."""
    mass = integrate_polytope(f, p)
    if mass == 0:
        raise KfanoError("degenerate density: zero total mass")
    d = p.ambient_dim
    poly = _as_poly(f, d)
    out = []
    for i in range(d):
        mom = sum((integrate_simplex(poly_mul(poly, poly_coord(i, d)), s)
                   for s in triangulate(p)), Fraction(0))
        out.append(mom / mass)
    return tuple(out)


# ---------------------------------------------------------------------------
# facet integrals with the lattice measure

def integer_kernel_basis(n):
    """Basis of the lattice {u in Z^d : n.u = 0} for a primitive integer n."""
    n = [int(x) for x in primitive(n)]
    d = len(n)
    a = list(n)
    cols = [[1 if i == j else 0 for i in range(d)] for j in range(d)]
    while True:
        nz = [i for i in range(d) if a[i] != 0]
        if len(nz) <= 1:
            break
        nz.sort(key=lambda i: abs(a[i]))
        j, i = nz[0], nz[1]  # reduce the larger by the smaller
        q = a[i] // a[j]
        a[i] -= q * a[j]
        cols[i] = [x - q * y for x, y in zip(cols[i], cols[j])]
    return [tuple(Fraction(x) for x in cols[i]) for i in range(d) if a[i] == 0]


def integrate_facet(f, facet_vertices, normal):
    """Integral of f over a facet with the induced lattice measure.

    The facet lies in {x : <x, normal> = const}; the measure is the Lebesgue
    measure in coordinates given by an integer basis of the normal's kernel
    lattice (equivalently Euclidean measure / |primitive normal|_2).
    """
    pts = sorted(set(vec(p) for p in facet_vertices))
    if not pts:
        return Fraction(0)
    d = len(pts[0])
    ad = affine_dim(pts)
    if ad < d - 1:
        return Fraction(0)
    basis = integer_kernel_basis(normal)
    p0 = pts[0]
    local = {}
    for p in pts:
        local[to_local_coords(p, p0, basis)] = p
    poly = _as_poly(f, d)
    # substitute x_i = p0_i + sum_j basis[j][i] u_j
    k = d - 1
    subs = []
    for i in range(d):
        sub = {}
        if p0[i] != 0:
            sub[(0,) * k] = p0[i]
        for j in range(k):
            if basis[j][i] != 0:
                e = [0] * k
                e[j] = 1
                sub[tuple(e)] = basis[j][i]
        subs.append(sub)
    q = poly_substitute(poly, subs)
    from .polyhedra import Polytope
    flat = Polytope.from_vertices(sorted(local))
    return integrate_polytope(q, flat)
