"""Exact polyhedral geometry over the rationals.

H/V-representation conversion, cones with double description, triangulation
and a small exact simplex LP.  Everything is deterministic: vertex lists and
ray lists are sorted lexicographically and normalized to primitive integer
vectors where that makes sense.
"""

from fractions import Fraction
from itertools import combinations
from math import gcd

from .core import KfanoError, pair, rat, vec, vec_sub


class UnboundedError(KfanoError):
    def __init__(self, msg, certificate=None):
        super().__init__(msg)
        self.certificate = certificate


# ---------------------------------------------------------------------------
# exact linear algebra

def rref(rows, width=None):
    """Reduced row echelon form.  Returns (rows, pivot column list)."""
    if width is None:
        width = len(rows[0]) if rows else 0
    mat = [[rat(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for col in range(width):
        piv = None
        for i in range(r, len(mat)):
            if mat[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        f = mat[r][col]
        mat[r] = [x / f for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                g = mat[i][col]
                mat[i] = [x - g * y for x, y in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    return [tuple(row) for row in mat[:r]], pivots


def matrix_rank(rows):
    if not rows:
        return 0
    return len(rref(rows)[0])


def solve_square(rows, rhs):
    """Solve the n x n system rows . x = rhs; None if singular."""
    n = len(rows)
    aug = [list(rows[i]) + [rat(rhs[i])] for i in range(n)]
    red, pivots = rref(aug, width=n)
    if len(pivots) != n:
        return None
    sol = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        sol[col] = red[i][n]
    return tuple(sol)


def sign_normalize(v):
    """Flip sign so the first nonzero entry is positive."""
    for x in v:
        if x != 0:
            return v if x > 0 else tuple(-y for y in v)
    return v


def primitive(v):
    """Scale a nonzero rational vector to a primitive integer vector.

    Direction is preserved (only positive scaling).
    """
    denom_lcm = 1
    for x in v:
        x = rat(x)
        denom_lcm = denom_lcm * x.denominator // gcd(denom_lcm, x.denominator)
    ints = [int(rat(x) * denom_lcm) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        return tuple(Fraction(0) for _ in v)
    return tuple(Fraction(x // g) for x in ints)


def kernel_basis(rows, n):
    """Basis of {x in Q^n : r . x = 0 for all rows}, in RREF shape.

    Each basis vector is primitive integer with first nonzero entry positive.
    """
    rows = [r for r in rows if any(x != 0 for x in r)]
    if not rows:
        red, pivots = [], []
    else:
        red, pivots = rref(rows, width=n)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for j in free:
        v = [Fraction(0)] * n
        v[j] = Fraction(1)
        for i, col in enumerate(pivots):
            v[col] = -red[i][j]
        basis.append(sign_normalize(primitive(tuple(v))))
    return basis


def reduce_mod_span(v, basis):
    """Reduce v modulo the span of the (independent) basis vectors."""
    if not basis:
        return tuple(v)
    red, pivots = rref(basis, width=len(v))
    v = list(v)
    for row, col in zip(red, pivots):
        if v[col] != 0:
            f = v[col] / row[col]
            v = [x - f * y for x, y in zip(v, row)]
    return tuple(v)


def affine_dim(points):
    """Dimension of the affine hull of a point set (-1 for empty)."""
    if not points:
        return -1
    p0 = points[0]
    diffs = [vec_sub(p, p0) for p in points[1:]]
    return matrix_rank(diffs)


def affine_basis(points):
    """(p0, basis) with basis a maximal independent set of differences."""
    p0 = points[0]
    basis = []
    for p in points[1:]:
        d = vec_sub(p, p0)
        if matrix_rank(basis + [d]) > len(basis):
            basis.append(d)
    return p0, basis


def to_local_coords(p, p0, basis):
    """Coordinates u with p = p0 + sum u_i basis_i (p must lie in the hull)."""
    n = len(p0)
    k = len(basis)
    # solve the overdetermined system basis^T u = p - p0 exactly
    aug = [[basis[j][i] for j in range(k)] + [p[i] - p0[i]] for i in range(n)]
    red, pivots = rref(aug, width=k)
    sol = [Fraction(0)] * k
    for i, col in enumerate(pivots):
        sol[col] = red[i][k]
    # consistency check
    for i in range(n):
        val = sum(basis[j][i] * sol[j] for j in range(k))
        if val != p[i] - p0[i]:
            raise KfanoError("point not in the affine hull")
    return tuple(sol)


# ---------------------------------------------------------------------------
# halfspaces

class HalfSpace:
    """{p : offset + <p, normal> >= 0}."""

    __slots__ = ("normal", "offset")

    def __init__(self, normal, offset):
        self.normal = vec(normal)
        self.offset = rat(offset)

    def eval(self, p):
        return self.offset + pair(p, self.normal)

    def normalized(self):
        """Primitive integer representative (positive scaling only)."""
        v = primitive((self.offset,) + self.normal)
        return HalfSpace(v[1:], v[0])

    def key(self):
        h = self.normalized()
        return (h.offset,) + h.normal

    def __eq__(self, other):
        return isinstance(other, HalfSpace) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "HalfSpace(normal=%s, offset=%s)" % (self.normal, self.offset)


def _dedupe_halfspaces(halfspaces):
    seen = {}
    for h in halfspaces:
        hn = h.normalized()
        if any(x != 0 for x in hn.normal):
            seen.setdefault(hn.key(), hn)
    return sorted(seen.values(), key=lambda h: h.key())


# ---------------------------------------------------------------------------
# exact LP (dense two-phase simplex, Bland's rule)

def solve_lp(c, A, b):
    """Minimize c.x subject to A x <= b with x free.  Exact.

    Returns (status, x, value); status is 'optimal', 'unbounded' or
    'infeasible'.
    """
    m = len(A)
    n = len(c)
    c = [rat(v) for v in c]
    # x = u - w with u, w >= 0; slack s >= 0 turns A x <= b into equalities.
    ncols = 2 * n + m
    tab = []
    rhs = []
    for i in range(m):
        row = [rat(v) for v in A[i]]
        full = row + [-v for v in row] + [Fraction(0)] * m
        full[2 * n + i] = Fraction(1)
        r = rat(b[i])
        if r < 0:
            full = [-v for v in full]
            r = -r
        tab.append(full)
        rhs.append(r)
    # phase 1: artificials
    total = ncols + m
    basis = []
    for i in range(m):
        tab[i] = tab[i] + [Fraction(0)] * m
        tab[i][ncols + i] = Fraction(1)
        basis.append(ncols + i)
    costs1 = [Fraction(0)] * total
    for j in range(ncols, total):
        costs1[j] = Fraction(1)
    status = _simplex_min(tab, rhs, basis, costs1, total)
    if status != "optimal":  # phase 1 is bounded below by 0
        raise KfanoError("phase-1 simplex cannot be unbounded")
    if sum(costs1[basis[i]] * rhs[i] for i in range(m)) > 0:
        return ("infeasible", None, None)
    # pivot remaining artificials out (or drop degenerate rows)
    i = 0
    while i < len(tab):
        if basis[i] >= ncols:
            entering = None
            for j in range(ncols):
                if tab[i][j] != 0:
                    entering = j
                    break
            if entering is None:
                del tab[i], rhs[i], basis[i]
                continue
            _pivot(tab, rhs, i, entering)
            basis[i] = entering
        i += 1
    for row in tab:
        del row[ncols:]
    costs2 = c + [-v for v in c] + [Fraction(0)] * m
    status = _simplex_min(tab, rhs, basis, costs2, ncols)
    if status == "unbounded":
        return ("unbounded", None, None)
    xval = [Fraction(0)] * ncols
    for i, j in enumerate(basis):
        xval[j] = rhs[i]
    x = tuple(xval[j] - xval[n + j] for j in range(n))
    value = sum(ci * xi for ci, xi in zip(c, x))
    return ("optimal", x, value)


def _simplex_min(tab, rhs, basis, costs, ncols):
    m = len(tab)
    while True:
        cb = [costs[basis[i]] for i in range(m)]
        entering = -1
        for j in range(ncols):
            rj = costs[j] - sum(cb[i] * tab[i][j] for i in range(m))
            if rj < 0:
                entering = j
                break  # Bland: smallest index
        if entering < 0:
            return "optimal"
        leave = -1
        best = None
        for i in range(m):
            if tab[i][entering] > 0:
                ratio = rhs[i] / tab[i][entering]
                if best is None or ratio < best or \
                        (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            return "unbounded"
        _pivot(tab, rhs, leave, entering)
        basis[leave] = entering


def _pivot(tab, rhs, r, c):
    f = tab[r][c]
    tab[r] = [x / f for x in tab[r]]
    rhs[r] = rhs[r] / f
    for i in range(len(tab)):
        if i != r and tab[i][c] != 0:
            g = tab[i][c]
            tab[i] = [x - g * y for x, y in zip(tab[i], tab[r])]
            rhs[i] = rhs[i] - g * rhs[r]


def lp_feasible(halfspaces, dim):
    """Exact feasibility of {x : offset + <x, normal> >= 0 for all}."""
    A = [tuple(-x for x in h.normal) for h in halfspaces]
    b = [h.offset for h in halfspaces]
    status, _, _ = solve_lp([Fraction(0)] * dim, A, b)
    return status == "optimal"


# ---------------------------------------------------------------------------
# cones

class Cone:
    """Rational polyhedral cone with synchronized descriptions.

    rays: primitive integer extreme rays (mod lineality), sorted;
    lineality: RREF basis of the lineality space;
    halfspaces: homogeneous inequalities <x, n> >= 0.
    """

    def __init__(self, dim, rays, lineality, halfspaces):
        self.dim = dim
        self.rays = tuple(sorted(rays))
        self.lineality = tuple(lineality)
        self.halfspaces = tuple(halfspaces)

    @classmethod
    def from_halfspaces(cls, dim, normals):
        normals = [primitive(n) for n in normals if any(rat(x) != 0 for x in n)]
        normals = sorted(set(normals))
        lin = kernel_basis(normals, dim)
        k = dim - len(lin) - 1
        rays = set()
        if k >= 0:
            for combo in combinations(range(len(normals)), k):
                sub = [normals[i] for i in combo]
                ker = kernel_basis(sub, dim)
                if len(ker) != len(lin) + 1:
                    continue
                cand = None
                for kv in ker:
                    red = reduce_mod_span(kv, lin)
                    if any(x != 0 for x in red):
                        cand = primitive(red)
                        break
                if cand is None:
                    continue
                pos = all(pair(cand, n) >= 0 for n in normals)
                neg = all(pair(cand, n) <= 0 for n in normals)
                if pos and not neg:
                    rays.add(cand)
                elif neg and not pos:
                    rays.add(tuple(-x for x in cand))
        hs = [HalfSpace(n, 0) for n in normals]
        return cls(dim, rays, lin, hs)

    @classmethod
    def from_generators(cls, dim, rays, lineality=()):
        gens = [tuple(rat(x) for x in r) for r in rays]
        for l in lineality:
            lv = tuple(rat(x) for x in l)
            gens.append(lv)
            gens.append(tuple(-x for x in lv))
        dual = cls.from_halfspaces(dim, gens)
        normals = list(dual.rays)
        for l in dual.lineality:
            normals.append(l)
            normals.append(tuple(-x for x in l))
        return cls.from_halfspaces(dim, normals)

    def dual(self):
        """{y : <x, y> >= 0 for all x in the cone}."""
        return Cone.from_generators(self.dim, [h.normal for h in self.halfspaces])

    def contains(self, v):
        return all(pair(v, h.normal) >= 0 for h in self.halfspaces)

    def generators(self):
        gens = list(self.rays)
        for l in self.lineality:
            gens.append(l)
            gens.append(tuple(-x for x in l))
        return gens

    def is_trivial(self):
        return not self.rays and not self.lineality

    def __repr__(self):
        return "Cone(dim=%d, rays=%s, lineality=%s)" % (
            self.dim, list(self.rays), list(self.lineality))


def cone_equal(a, b):
    if a.dim != b.dim:
        raise KfanoError("cones in different ambient dimensions")
    return all(b.contains(g) for g in a.generators()) and \
        all(a.contains(g) for g in b.generators())


def dual_cone(c):
    return c.dual()


def intersect_with_hyperplane(c, n):
    """The cone {x in c : <x, n> = 0}; a zero normal means the whole space."""
    n = vec(n)
    if all(x == 0 for x in n):
        return c
    normals = [h.normal for h in c.halfspaces]
    normals.append(n)
    normals.append(tuple(-x for x in n))
    return Cone.from_halfspaces(c.dim, normals)


def lineality_space(c):
    return list(c.lineality)


# ---------------------------------------------------------------------------
# polytopes

class Polytope:
    """Bounded rational polytope with synchronized H- and V-representation."""

    def __init__(self, ambient_dim, halfspaces, vertices, is_empty=False):
        self.ambient_dim = ambient_dim
        self.halfspaces = tuple(halfspaces)
        self.vertices = tuple(sorted(vertices))
        self.is_empty = is_empty

    @classmethod
    def empty(cls, ambient_dim):
        return cls(ambient_dim, (), (), is_empty=True)

    @classmethod
    def from_halfspaces(cls, ambient_dim, halfspaces, prune=True):
        hs = _dedupe_halfspaces(halfspaces)
        d = ambient_dim
        verts = set()
        for combo in combinations(hs, d):
            rows = [h.normal for h in combo]
            rhs = [-h.offset for h in combo]
            p = solve_square(rows, rhs)
            if p is None:
                continue
            if all(h.eval(p) >= 0 for h in hs):
                verts.add(p)
        if not verts:
            if not lp_feasible(hs, d):
                return cls.empty(d)
            line = kernel_basis([h.normal for h in hs], d)
            raise UnboundedError("feasible region contains a line",
                                 certificate=line[0] if line else None)
        rc = Cone.from_halfspaces(d, [h.normal for h in hs])
        if rc.rays or rc.lineality:
            cert = rc.rays[0] if rc.rays else rc.lineality[0]
            raise UnboundedError("not a polytope: unbounded in direction %s"
                                 % (cert,), certificate=cert)
        vertices = sorted(verts)
        if prune and affine_dim(vertices) == d:
            kept = []
            for h in hs:
                tight = [v for v in vertices if h.eval(v) == 0]
                if affine_dim(tight) == d - 1:
                    kept.append(h)
            hs = kept
        return cls(d, hs, vertices)

    @classmethod
    def from_vertices(cls, points):
        points = sorted(set(vec(p) for p in points))
        if not points:
            return cls.empty(0)
        d = len(points[0])
        hs = hull_halfspaces(points, d)
        return cls.from_halfspaces(d, hs)

    @property
    def dim(self):
        """Dimension of the affine hull."""
        return affine_dim(self.vertices)

    def contains(self, p):
        if self.is_empty:
            return False
        return all(h.eval(p) >= 0 for h in self.halfspaces)

    def volume(self):
        return sum((s.volume() for s in triangulate(self)), Fraction(0))

    def __repr__(self):
        if self.is_empty:
            return "Polytope.empty(%d)" % self.ambient_dim
        return "Polytope(dim=%d, %d halfspaces, %d vertices)" % (
            self.ambient_dim, len(self.halfspaces), len(self.vertices))


def hull_halfspaces(points, d):
    """Facet inequalities of the convex hull of a point set.

    Full-dimensional hulls give facets only; lower-dimensional hulls also get
    the affine-hull equalities (as pairs of opposite halfspaces).
    """
    out = []
    ad = affine_dim(points)
    if ad < d:
        p0, basis = affine_basis(points)
        rows = [vec_sub(p, p0) for p in points[1:]]
        for n in kernel_basis(rows if rows else [], d):
            off = -pair(p0, n)
            out.append(HalfSpace(n, off))
            out.append(HalfSpace(tuple(-x for x in n), -off))
        if ad <= 0:
            return _dedupe_halfspaces(out)
        # facets of the hull, computed in local coordinates
        local = {to_local_coords(p, p0, basis): p for p in points}
        for lh in hull_halfspaces(sorted(local), ad):
            # pull back c.u + o >= 0 along p = p0 + basis.u: the ambient
            # normal is any n with <basis_j, n> = c_j
            sol = _solve_underdetermined(basis, lh.normal, d)
            off = lh.offset - pair(p0, sol)
            out.append(HalfSpace(sol, off))
        return _dedupe_halfspaces(out)
    for combo in combinations(points, d):
        p0 = combo[0]
        diffs = [vec_sub(p, p0) for p in combo[1:]]
        ker = kernel_basis(diffs if diffs else [], d)
        if len(ker) != 1:
            continue
        n = ker[0]
        off = -pair(p0, n)
        h = HalfSpace(n, off)
        vals = [h.eval(p) for p in points]
        if all(v >= 0 for v in vals):
            if any(v > 0 for v in vals):
                out.append(h)
        elif all(v <= 0 for v in vals):
            out.append(HalfSpace(tuple(-x for x in n), -off))
    return _dedupe_halfspaces(out)


def _solve_underdetermined(rows, rhs, n):
    """A particular solution x of rows . x = rhs (rows independent)."""
    aug = [list(rows[i]) + [rat(rhs[i])] for i in range(len(rows))]
    red, pivots = rref(aug, width=n)
    if len(pivots) != len(rows):
        raise KfanoError("inconsistent system")
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = red[i][n]
    return tuple(x)


class Simplex:
    """d+1 affinely independent points, optionally inside an affine chart."""

    def __init__(self, points, chart=None):
        self.points = tuple(vec(p) for p in points)
        self.chart = chart  # (p0, basis) when the simplex is lower-dimensional

    def volume(self):
        pts = self.points
        d = len(pts) - 1
        if len(pts[0]) != d:
            raise KfanoError("volume of a lower-dimensional simplex is ambient-measure zero")
        return abs(_det([vec_sub(p, pts[0]) for p in pts[1:]])) / _factorial(d)

    def __repr__(self):
        return "Simplex(%s)" % (list(self.points),)


def _factorial(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return Fraction(out)


def _det(rows):
    mat = [list(r) for r in rows]
    n = len(mat)
    det = Fraction(1)
    for col in range(n):
        piv = None
        for i in range(col, n):
            if mat[i][col] != 0:
                piv = i
                break
        if piv is None:
            return Fraction(0)
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = -det
        det *= mat[col][col]
        f = mat[col][col]
        for i in range(col + 1, n):
            if mat[i][col] != 0:
                g = mat[i][col] / f
                mat[i] = [x - g * y for x, y in zip(mat[i], mat[col])]
    return det


def triangulate(p):
    """Fan triangulation from the lexicographically smallest vertex.

    Full-dimensional polytopes give Simplex objects in ambient coordinates.
    Lower-dimensional ones are triangulated inside their affine hull; the
    resulting simplices carry the chart (p0, basis).
    """
    if p.is_empty or not p.vertices:
        return []
    d = p.ambient_dim
    ad = affine_dim(p.vertices)
    if ad == 0:
        return []
    if ad < d:
        p0, basis = affine_basis(list(p.vertices))
        local = {to_local_coords(v, p0, basis): v for v in p.vertices}
        out = []
        for tri in _triangulate_points(sorted(local), ad):
            out.append(Simplex([local[q] for q in tri], chart=(p0, basis)))
        return out
    return [Simplex(tri) for tri in _triangulate_points(sorted(p.vertices), d)]


def _triangulate_points(vertices, d):
    """Triangulate the hull of a full-dimensional vertex set; deterministic."""
    if d == 1:
        return [(min(vertices), max(vertices))]
    if len(vertices) == d + 1:
        return [tuple(vertices)]
    facets = hull_halfspaces(vertices, d)
    v0 = min(vertices)
    out = []
    for h in facets:
        if h.eval(v0) == 0:
            continue
        tight = sorted(v for v in vertices if h.eval(v) == 0)
        p0, basis = affine_basis(tight)
        local = {to_local_coords(v, p0, basis): v for v in tight}
        for tri in _triangulate_points(sorted(local), d - 1):
            out.append((v0,) + tuple(local[q] for q in tri))
    return out


def hrep_to_vrep(halfspaces, ambient_dim=None):
    """Vertex enumeration; errors on unbounded input, empty marker otherwise."""
    hs = list(halfspaces)
    if ambient_dim is None:
        ambient_dim = len(hs[0].normal)
    return Polytope.from_halfspaces(ambient_dim, hs)
