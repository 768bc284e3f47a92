"""Piecewise-linear machinery: the concave functions A_x, the moment polytope,
its linearity subdivision, and the fibered polytopes over it."""

from fractions import Fraction
from itertools import product

from .core import AffForm, KfanoError, vec_add, zero_vec
from .polyhedra import Cone, HalfSpace, Polytope, primitive
from .variety import GENERIC, AnticanonicalData, build_anticanonical


class PLFunc:
    """Pointwise minimum of finitely many affine forms (concave PL)."""

    def __init__(self, pieces):
        if not pieces:
            raise KfanoError("a PL function needs at least one piece")
        self.pieces = list(pieces)

    def __call__(self, w):
        return min(p(w) for p in self.pieces)

    def argmin(self, w):
        """Label of a piece achieving the min at w (first in piece order)."""
        best = None
        lab = None
        for p in self.pieces:
            v = p(w)
            if best is None or v < best:
                best = v
                lab = p.label
        return lab

    def __repr__(self):
        return "PLFunc(%d pieces)" % len(self.pieces)


class Subdivision:
    """Cells on which every A_x is affine, with the active piece recorded."""

    def __init__(self, cells):
        self.cells = list(cells)  # list of (Polytope, {class: piece label})


def _coeff_map(m):
    if isinstance(m, AnticanonicalData):
        return m.coefficients
    return m


def build_A(data, m):
    """A_x = min over jump divisors at x of (m_D + ell_D(mu)) / h_D."""
    m = _coeff_map(m)
    pieces = {}
    for d in data.divisors:
        if d.v.h > 0:
            pieces.setdefault(d.v.point, []).append(
                AffForm(d.v.ell, m[d.name], d.v.h, label=d.name))
    out = {}
    for cls in data.point_classes():
        if cls not in pieces:
            raise KfanoError("A undefined: point class %r has no divisor "
                             "with h > 0" % cls)
        out[cls] = PLFunc(sorted(pieces[cls], key=lambda p: p.key()))
    return out


def _sum_selection(selection):
    """Affine form sum of one normalized piece per point class."""
    n = len(selection[0].linear)
    lin = zero_vec(n)
    const = Fraction(0)
    for p in selection:
        q = p.normalized()
        lin = vec_add(lin, q.linear)
        const += q.constant
    return lin, const


def a_total(A, w):
    """A(mu) = sum over point classes of A_x(mu)."""
    return sum((f(w) for f in A.values()), Fraction(0))


def build_delta_Z(data, m):
    """The moment polytope {central facets} intersect {A >= 0}.

    The concave constraint A >= 0 is expanded into one inequality per
    selection of one active piece per point class.
    """
    m = _coeff_map(m)
    A = build_A(data, m)
    rows = []
    for d in data.divisors:
        if d.v.h == 0:
            rows.append(HalfSpace(d.v.ell, m[d.name]))
    classes = sorted(A)
    for selection in product(*(A[c].pieces for c in classes)):
        lin, const = _sum_selection(selection)
        rows.append(HalfSpace(lin, const))
    poly = Polytope.from_halfspaces(data.rank, rows)
    if poly.is_empty:
        raise KfanoError("moment polytope is empty: not an ample/Fano-like input")
    return poly


def subdivide(data, m, delta_Z=None):
    """Common refinement of the linearity domains of all A_x over Delta_Z."""
    m = _coeff_map(m)
    A = build_A(data, m)
    if delta_Z is None:
        delta_Z = build_delta_Z(data, m)
    classes = sorted(A)
    cells = []
    seen = set()
    for selection in product(*(A[c].pieces for c in classes)):
        rows = list(delta_Z.halfspaces)
        for cls, chosen in zip(classes, selection):
            ch = chosen.normalized()
            for other in A[cls].pieces:
                if other is chosen:
                    continue
                ot = other.normalized()
                # chosen <= other on the cell
                lin = tuple(a - b for a, b in zip(ot.linear, ch.linear))
                rows.append(HalfSpace(lin, ot.constant - ch.constant))
        cell = Polytope.from_halfspaces(data.rank, rows)
        if cell.is_empty or cell.dim < data.rank:
            continue
        key = cell.vertices
        if key in seen:
            continue
        seen.add(key)
        cells.append((cell, {cls: piece.label
                             for cls, piece in zip(classes, selection)}))
    return Subdivision(cells)


def build_delta_x_O(data, m=None):
    """The (mu, t)-polytopes over Delta_Z with fiber [-A_x, A - A_x] shifted
    by (0, a_x - 1), one per point class.

    Stored in shifted coordinates mu = lambda - kappa_P, t last.
    """
    if m is None:
        m = build_anticanonical(data)
    m = _coeff_map(m)
    A = build_A(data, m)
    delta_Z = build_delta_Z(data, m)
    classes = sorted(A)
    out = {}
    for x in classes:
        ax = data.a_of(x) if x != GENERIC else Fraction(0)
        shift = ax - 1
        rows = []
        for h in delta_Z.halfspaces:
            rows.append(HalfSpace(h.normal + (Fraction(0),), h.offset))
        # lower bound: t >= -A_x(mu) + shift, one row per piece of A_x
        for p in A[x].pieces:
            q = p.normalized()
            rows.append(HalfSpace(q.linear + (Fraction(1),),
                                  q.constant - shift))
        # upper bound: t <= sum_{y != x} A_y(mu) + shift, per selection
        others = [c for c in classes if c != x]
        for selection in product(*(A[c].pieces for c in others)):
            if selection:
                lin, const = _sum_selection(selection)
            else:
                lin, const = zero_vec(data.rank), Fraction(0)
            rows.append(HalfSpace(lin + (Fraction(-1),), const + shift))
        out[x] = Polytope.from_halfspaces(data.rank + 1, rows)
    return out


class Polyhedron:
    """Possibly unbounded H-rep polyhedron with vertices and recession cone."""

    def __init__(self, ambient_dim, halfspaces):
        from itertools import combinations
        from .polyhedra import _dedupe_halfspaces, solve_square
        self.ambient_dim = ambient_dim
        self.halfspaces = tuple(_dedupe_halfspaces(halfspaces))
        verts = set()
        for combo in combinations(self.halfspaces, ambient_dim):
            p = solve_square([h.normal for h in combo],
                             [-h.offset for h in combo])
            if p is not None and all(h.eval(p) >= 0 for h in self.halfspaces):
                verts.add(p)
        self.vertices = tuple(sorted(verts))
        self.recession_cone = Cone.from_halfspaces(
            ambient_dim, [h.normal for h in self.halfspaces])

    def __repr__(self):
        return "Polyhedron(dim=%d, %d halfspaces, %d vertices)" % (
            self.ambient_dim, len(self.halfspaces), len(self.vertices))


def build_delta_x_d(data, m):
    """The unbounded polyhedra Delta_x(d) in (mu, t): central rows plus
    m_D + t h_D + ell_D(mu) >= 0 for every jump divisor at x."""
    m = _coeff_map(m)
    A = build_A(data, m)
    out = {}
    for x in data.point_classes():
        rows = []
        for d in data.divisors:
            if d.v.h == 0:
                rows.append(HalfSpace(d.v.ell + (Fraction(0),), m[d.name]))
        for p in A[x].pieces:
            rows.append(HalfSpace(p.linear + (p.h,), p.constant))
        out[x] = Polyhedron(data.rank + 1, rows)
    return out


def normal_fan_at_vertices(p):
    """Inner normal cone at each vertex; deterministic vertex order."""
    out = []
    for v in sorted(p.vertices):
        active = [primitive(h.normal) for h in p.halfspaces if h.eval(v) == 0]
        out.append((v, Cone.from_generators(p.ambient_dim, active)))
    return out
