"""Weighted lattice sums S_k(f; pi) and their two-term asymptotic expansion.

S_k(f; pi) = sum over lambda in k*Delta cap Z^r of floor(k f(lambda/k)) pi(lambda)
for a concave piecewise-linear f on an integral polytope Delta, with a
polynomial weight pi of degree d.  The expansion is

    k^{r+d+1} int_Delta f pi
  + (1/2) k^{r+d} int_{boundary} f pi dsigma
  - (1/2) k^{r+d} sum_a (1 - 1/|p_a|) int_{Omega_a} pi,

where Omega_a are the linearity domains of f, p_a the (primitivized)
denominator of the piece on Omega_a, and dsigma the lattice surface measure.
"""

from fractions import Fraction
from math import ceil, floor

from .core import KfanoError, pair
from .integrate import (integrate_facet, integrate_polytope, poly_eval,
                        poly_from_aff, poly_mul)
from .polyhedra import HalfSpace, Polytope, affine_dim, primitive
from .testconfig import max_lattice_points


class LatSumProblem:
    """An integral polytope, a concave PL function and a polynomial weight.

    f is given as a PLFunc (pointwise min of AffForm pieces); pi as a
    polynomial dict.  The lemma's hypotheses are validated: integral polytope
    vertices and integral values of f at them.
    """

    def __init__(self, rank, polytope, f, pi, pi_degree=None):
        self.rank = rank
        self.polytope = polytope
        self.f = f
        self.pi = dict(pi)
        if pi_degree is None:
            pi_degree = max((sum(e) for e in self.pi), default=0)
        self.pi_degree = pi_degree
        if polytope.is_empty:
            raise KfanoError("lattice-sum polytope is empty")
        for v in polytope.vertices:
            if any(x.denominator != 1 for x in v):
                raise KfanoError("polytope vertex %s is not integral" % (v,))
            val = f(v)
            if val.denominator != 1:
                raise KfanoError("f takes the non-integral value %s at the "
                                 "vertex %s" % (val, v))


def _piece_denominator(piece):
    """|p_a| for the piece (q_a(x) + r_a)/p_a with (p_a, -q_a) primitive."""
    g = primitive((piece.h,) + tuple(-x for x in piece.linear))
    return abs(g[0]) if g[0] != 0 else Fraction(1)


def sk_oracle(problem, k):
    """Exact brute-force S_k(f; pi)."""
    if k < 1:
        raise KfanoError("k must be a positive integer")
    p = problem.polytope
    r = problem.rank
    los = [min(v[i] for v in p.vertices) for i in range(r)]
    his = [max(v[i] for v in p.vertices) for i in range(r)]
    ranges = [range(int(ceil(k * lo)), int(floor(k * hi)) + 1)
              for lo, hi in zip(los, his)]
    total_box = 1
    for rg in ranges:
        total_box *= max(0, len(rg))
    budget = max_lattice_points()
    if total_box > budget:
        raise KfanoError("lattice enumeration needs ~%d points, budget is %d "
                         "(KFANO_MAX_LATTICE)" % (total_box, budget))
    total = Fraction(0)
    def in_k_delta(pt):
        return all(k * h.offset + pair(pt, h.normal) >= 0
                   for h in p.halfspaces)
    def rec(prefix, depth):
        nonlocal total
        if depth == r:
            pt = tuple(Fraction(x) for x in prefix)
            if not in_k_delta(pt):
                return
            # k f(pt/k) = min over pieces of (k r_a + q_a(pt)) / p_a
            kf = min((k * q.constant + pair(pt, q.linear)) / q.h
                     for q in problem.f.pieces)
            total += floor(kf) * poly_eval(problem.pi, pt)
            return
        for x in ranges[depth]:
            rec(prefix + [x], depth + 1)
    rec([], 0)
    return total


def linearity_cells(problem):
    """(cell, piece) pairs covering the polytope, full-dimensional only."""
    p = problem.polytope
    r = problem.rank
    out = []
    seen = set()
    for chosen in problem.f.pieces:
        rows = list(p.halfspaces)
        ch = chosen.normalized()
        for other in problem.f.pieces:
            if other is chosen:
                continue
            ot = other.normalized()
            lin = tuple(a - b for a, b in zip(ot.linear, ch.linear))
            rows.append(HalfSpace(lin, ot.constant - ch.constant))
        cell = Polytope.from_halfspaces(r, rows)
        if cell.is_empty or cell.dim < r:
            continue
        if cell.vertices in seen:
            continue
        seen.add(cell.vertices)
        out.append((cell, chosen))
    return out


def _boundary_integral(problem, cells):
    """int_{boundary Delta} f pi with the lattice surface measure."""
    p = problem.polytope
    r = problem.rank
    if r == 1:
        lo = min(v[0] for v in p.vertices)
        hi = max(v[0] for v in p.vertices)
        return sum((problem.f((x,)) * poly_eval(problem.pi, (x,))
                    for x in (lo, hi)), Fraction(0))
    total = Fraction(0)
    for facet in p.halfspaces:
        for cell, piece in cells:
            rows = list(cell.halfspaces)
            rows.append(HalfSpace(tuple(-x for x in facet.normal),
                                  -facet.offset))
            piece_cell = Polytope.from_halfspaces(r, rows, prune=False)
            if piece_cell.is_empty or not piece_cell.vertices:
                continue
            if affine_dim(piece_cell.vertices) < r - 1:
                continue
            integrand = poly_mul(poly_from_aff(piece.normalized(), r),
                                 problem.pi)
            total += integrate_facet(integrand, piece_cell.vertices,
                                     facet.normal)
    return total


def sk_expansion(problem, k):
    """The three displayed expansion terms, evaluated exactly at k."""
    r = problem.rank
    d = problem.pi_degree
    cells = linearity_cells(problem)
    main = Fraction(0)
    jump = Fraction(0)
    for cell, piece in cells:
        integrand = poly_mul(poly_from_aff(piece.normalized(), r), problem.pi)
        main += integrate_polytope(integrand, cell)
        pa = _piece_denominator(piece)
        if pa != 1:
            jump += (1 - 1 / pa) * integrate_polytope(problem.pi, cell)
    boundary = _boundary_integral(problem, cells)
    return (Fraction(k) ** (r + d + 1) * main
            + Fraction(1, 2) * Fraction(k) ** (r + d) * boundary
            - Fraction(1, 2) * Fraction(k) ** (r + d) * jump)


def expansion_residual_test(problem, ks):
    """Whether |sk_oracle - sk_expansion| / k^{r+d-1} stays bounded over ks.

    The bound is twice the ratio at the smallest k; a zero first ratio
    demands zeros throughout.
    """
    ks = sorted(ks)
    if not ks:
        raise KfanoError("need at least one k")
    exponent = problem.rank + problem.pi_degree - 1
    ratios = []
    for k in ks:
        res = abs(sk_oracle(problem, k) - sk_expansion(problem, k))
        ratios.append(res / Fraction(k) ** exponent)
    bound = 2 * ratios[0]
    if ratios[0] == 0:
        return all(r == 0 for r in ratios)
    return all(r <= bound for r in ratios)
