"""K-stability verdicts with polyhedral certificates.

kappa_P - b(Delta_x^O) acts on (ell, h)-space as the functional
<(lambda, t), v> = ell(lambda) + h*t based at (kappa_P, 0); in the shifted
barycenter frame this is the covector (-mu_b, -t_b).  Semistability pairs it
against every generator of the valuation cone V_x; polystability compares the
orthogonal slice of V_x with the automorphism cone A_x.
"""

from fractions import Fraction

from .core import KfanoError, is_zero, pair
from .polyhedra import Cone, cone_equal, intersect_with_hyperplane
from .variety import GENERIC, HVector, central_lineality
from .invariants import barycenters

VERDICT_UNSTABLE = "Unstable"
VERDICT_SEMISTABLE = "Semistable"
VERDICT_POLYSTABLE = "Polystable"
VERDICT_UNIFORM = "UniformlyStable"


class StabilityReport:
    def __init__(self, verdict, per_class, witness=None):
        self.verdict = verdict
        self.per_class = per_class
        self.witness = witness

    def __repr__(self):
        return "StabilityReport(%s)" % self.verdict


def _kappa_minus_b(data, x):
    mu_b, t_b = barycenters(data)[x]
    return tuple(-c for c in mu_b) + (-t_b,)


def semistable_check(data):
    """Pair kappa_P - b against every ray of every V_x; all must be >= 0."""
    certs = {}
    ok = True
    for x in data.point_classes():
        functional = _kappa_minus_b(data, x)
        cone = data.valuation_cone(x)
        pairings = [(g, pair(g, functional)) for g in cone.generators()]
        good = all(v >= 0 for _, v in pairings)
        certs[x] = {"kappa_minus_b": functional,
                    "ray_pairings": pairings,
                    "dual_ok": good}
        ok = ok and good
    return ok, certs


def _ax_cone(data, x):
    """The automorphism cone A_x in (ell, h)-space."""
    if data.is_G_times_Gm_spherical:
        if data.spherical_Ax is None:
            raise KfanoError("G x Gm-spherical input needs spherical_Ax")
        return data.spherical_Ax[x]
    # not spherical: A_x = A, the central lineality, embedded at h = 0
    basis = [b + (Fraction(0),) for b in central_lineality(data)]
    return Cone.from_generators(data.rank + 1, [], lineality=basis)


def polystable_check(data):
    """(kappa_P - b)-orthogonal slice of V_x equals A_x at every class."""
    ok = True
    certs = {}
    for x in data.point_classes():
        functional = _kappa_minus_b(data, x)
        cone = data.valuation_cone(x)
        slice_cone = intersect_with_hyperplane(cone, functional)
        ax = _ax_cone(data, x)
        good = cone_equal(slice_cone, ax)
        certs[x] = {"slice_cone": slice_cone, "Ax": ax, "slice_ok": good}
        ok = ok and good
    return ok, certs


def _unstable_witness(data, certs):
    """The valuation-cone ray with the most negative pairing, as an HVector."""
    best = None
    best_ray = None
    best_class = None
    for x, cert in certs.items():
        for g, v in cert["ray_pairings"]:
            if v < 0 and (best is None or v < best):
                best = v
                best_ray = g
                best_class = x
    if best_ray is None:
        return None
    h = best_ray[-1]
    point = best_class if h != 0 else None
    return HVector(point, best_ray[:-1], h)


def stability_report(data):
    ss, ss_certs = semistable_check(data)
    per_class = {x: dict(ss_certs[x]) for x in ss_certs}
    if not ss:
        return StabilityReport(VERDICT_UNSTABLE, per_class,
                               witness=_unstable_witness(data, ss_certs))
    ps, ps_certs = polystable_check(data)
    for x in ps_certs:
        per_class[x].update(ps_certs[x])
    if not ps:
        return StabilityReport(VERDICT_SEMISTABLE, per_class)
    if data.is_G_times_Gm_spherical:
        return StabilityReport(VERDICT_POLYSTABLE, per_class)
    return StabilityReport(VERDICT_UNIFORM, per_class)


def horospherical_check(data):
    """The simplified horospherical criterion.

    Requires the central valuation cone to be the whole central space
    (lineality of full rank).  Semistable iff the mu-part of kappa_P - b is 0
    and the t-part >= 0 at every class; polystable iff additionally the
    t-part is > 0 at every class (non-spherical branch) or b = kappa_P at
    every class (spherical branch).
    """
    if len(central_lineality(data)) != data.rank:
        raise KfanoError("not horospherical: central valuation cone is a "
                         "proper subcone of the character space")
    bary = barycenters(data)
    mu_zero = all(is_zero(mu_b) for mu_b, _ in bary.values())
    t_parts = [-t_b for _, t_b in bary.values()]
    if not (mu_zero and all(t >= 0 for t in t_parts)):
        return VERDICT_UNSTABLE
    if data.is_G_times_Gm_spherical:
        poly = mu_zero and all(t == 0 for t in t_parts)
    else:
        poly = all(t > 0 for t in t_parts)
    return VERDICT_POLYSTABLE if poly else VERDICT_SEMISTABLE
