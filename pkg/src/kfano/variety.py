"""Input data model for a polarized complexity-one G-variety.

The combinatorial data: lattice rank, Duistermaat-Heckman factors, kappa_P,
marked curve points with anticanonical coefficients a_x, B-stable divisor
records in hyperspace coordinates v = h q_x + ell, and valuation cones.
"""

from fractions import Fraction

from .core import KfanoError, is_zero, pair, rat, vec
from .polyhedra import Cone, HalfSpace

GENERIC = "generic"
CENTRAL = "central"

KIND_G_STABLE = "g_stable"
KIND_COLOUR_A = "colour_a"
KIND_COLOUR_A_PRIME = "colour_a_prime"
KIND_COLOUR_B = "colour_b"
KIND_COLOUR_CENTRAL_TO_STABLE = "colour_central_to_stable"
KINDS = (KIND_G_STABLE, KIND_COLOUR_A, KIND_COLOUR_A_PRIME, KIND_COLOUR_B,
         KIND_COLOUR_CENTRAL_TO_STABLE)


class HVector:
    """A hyperspace element v = h q_x + ell.

    h = 0 means v is central; the point is then irrelevant and stored as None.
    """

    __slots__ = ("point", "ell", "h")

    def __init__(self, point, ell, h):
        self.h = rat(h)
        if self.h < 0:
            raise KfanoError("jump h must be nonnegative, got %s" % self.h)
        self.ell = vec(ell)
        self.point = point if self.h != 0 else None

    def is_central(self):
        return self.h == 0

    def coords(self):
        """(ell_1, ..., ell_r, h) in the point's halfspace of the hyperspace."""
        return self.ell + (self.h,)

    def __repr__(self):
        return "HVector(point=%r, ell=%s, h=%s)" % (self.point, self.ell, self.h)

    def __eq__(self, other):
        return (isinstance(other, HVector) and self.point == other.point
                and self.ell == other.ell and self.h == other.h)

    def __hash__(self):
        return hash((self.point, self.ell, self.h))


class DivisorRecord:
    __slots__ = ("name", "v", "kind", "alpha_pairing")

    def __init__(self, name, v, kind, alpha_pairing=None):
        if kind not in KINDS:
            raise KfanoError("unknown divisor kind %r" % kind)
        self.name = name
        self.v = v
        self.kind = kind
        self.alpha_pairing = None if alpha_pairing is None else rat(alpha_pairing)

    def __repr__(self):
        return "DivisorRecord(%r, %r, kind=%r)" % (self.name, self.v, self.kind)


class PiFactor:
    __slots__ = ("coroot", "denom")

    def __init__(self, coroot, denom):
        self.coroot = vec(coroot)
        self.denom = rat(denom)
        if self.denom <= 0:
            raise KfanoError("pi-factor denominator must be positive")


class VarietyData:
    """Everything the pipeline needs, in one immutable-by-convention bag.

    valuation_cones maps a point class (marked name or GENERIC) to a list of
    normals of length rank+1 acting on (ell_1..ell_r, h); the cone is the set
    where all of them pair nonnegatively.
    """

    def __init__(self, rank, pi_factors, kappa_P, rho, positive_coroots,
                 marked_points, divisors, valuation_cones,
                 is_quasihomogeneous=False, is_G_times_Gm_spherical=False,
                 spherical_Ax=None):
        self.rank = rank
        self.pi_factors = list(pi_factors)
        self.kappa_P = vec(kappa_P)
        self.rho = vec(rho)
        self.positive_coroots = list(positive_coroots)
        self.marked_points = [(name, rat(a)) for name, a in marked_points]
        self.divisors = list(divisors)
        self.valuation_cones = {pt: [vec(n) for n in rows]
                                for pt, rows in valuation_cones.items()}
        self.is_quasihomogeneous = bool(is_quasihomogeneous)
        self.is_G_times_Gm_spherical = bool(is_G_times_Gm_spherical)
        self.spherical_Ax = spherical_Ax
        self._cache = {}

    # -- small helpers used all over ------------------------------------
    def a_of(self, point):
        for name, a in self.marked_points:
            if name == point:
                return a
        return Fraction(0)

    def point_classes(self):
        """Marked point names plus the generic representative."""
        return [name for name, _ in self.marked_points] + [GENERIC]

    def valuation_cone(self, point):
        """The cone V_x in (ell, h)-coordinates as a Cone object."""
        key = ("vcone", point)
        if key not in self._cache:
            rows = self.valuation_cones.get(point)
            if rows is None:
                rows = self.valuation_cones.get(GENERIC)
            if rows is None:
                raise KfanoError("no valuation cone for point %r" % point)
            self._cache[key] = Cone.from_halfspaces(self.rank + 1, rows)
        return self._cache[key]

    def contains_valuation(self, v):
        """Whether the hyperspace element v lies in the valuation cone."""
        point = v.point if v.point is not None else GENERIC
        return self.valuation_cone(point).contains(v.coords())


class AnticanonicalData:
    def __init__(self, coefficients, lambda0):
        self.coefficients = dict(coefficients)
        self.lambda0 = vec(lambda0)

    def __getitem__(self, name):
        return self.coefficients[name]


def validate(data):
    """Structural diagnostics; empty list means the data is usable."""
    diags = []
    if data.rank < 1:
        diags.append("lattice rank must be >= 1")
    names = [n for n, _ in data.marked_points]
    if len(set(names)) != len(names):
        diags.append("marked point names are not unique")
    total_a = sum((a for _, a in data.marked_points), Fraction(0))
    if total_a != 2:
        diags.append("anticanonical degree != 2: sum of a_x is %s" % total_a)
    generic_jump = [d for d in data.divisors
                    if d.v.point == GENERIC and d.v.h > 0]
    if not generic_jump:
        diags.append("no divisor with h>0 at generic point")
    elif len(generic_jump) > 1:
        diags.append("more than one template divisor at the generic point")
    dnames = [d.name for d in data.divisors]
    if len(set(dnames)) != len(dnames):
        diags.append("divisor names are not unique")
    for d in data.divisors:
        if len(d.v.ell) != data.rank:
            diags.append("divisor %s: covector length != rank" % d.name)
            continue
        if d.v.h > 0 and d.v.point not in set(names) | {GENERIC}:
            diags.append("divisor %s: unknown point %r" % (d.name, d.v.point))
        if d.v.h > 0 and d.kind != KIND_G_STABLE and not data.is_quasihomogeneous:
            diags.append("divisor %s: colour with jump in a non-quasihomogeneous "
                         "input" % d.name)
        if d.kind == KIND_G_STABLE:
            try:
                ok = data.contains_valuation(d.v) if d.v.h > 0 else \
                    data.valuation_cone(GENERIC).contains(d.v.ell + (Fraction(0),))
            except KfanoError:
                ok = True  # missing cone reported separately
            if not ok:
                diags.append("divisor %s: G-stable but v is not a G-valuation"
                             % d.name)
        if d.kind == KIND_COLOUR_B and d.v.h == 0 and d.alpha_pairing is None:
            diags.append("divisor %s: central type-b colour without alpha_pairing"
                         % d.name)
    for f in data.pi_factors:
        if pair(data.kappa_P, f.coroot) <= 0:
            diags.append("pi-factor %s is not positive at kappa_P"
                         % (f.coroot,))
    if GENERIC not in data.valuation_cones:
        diags.append("no valuation cone for the generic point")
    for name in names:
        if name not in data.valuation_cones:
            diags.append("no valuation cone for marked point %s" % name)
    for pt, rows in data.valuation_cones.items():
        for n in rows:
            if len(n) != data.rank + 1:
                diags.append("valuation cone at %s: row length != rank+1" % pt)
                break
    if data.is_G_times_Gm_spherical and data.spherical_Ax is None:
        diags.append("G x Gm-spherical flag set but spherical_Ax not supplied")
    return diags


def build_anticanonical(data):
    """Coefficients m_D of the distinguished anticanonical divisor.

    Divisors with jump get 1 - h + h a_x; central G-stable divisors get 1;
    central colours get the classified coefficient (1 for type a/a' and
    central-to-stable, <alpha^vee, kappa_P> for type b).
    """
    coeff = {}
    for d in data.divisors:
        v = d.v
        if v.h != 0:
            coeff[d.name] = 1 - v.h + v.h * data.a_of(v.point)
        elif d.kind == KIND_G_STABLE:
            coeff[d.name] = Fraction(1)
        elif d.kind in (KIND_COLOUR_A, KIND_COLOUR_A_PRIME,
                        KIND_COLOUR_CENTRAL_TO_STABLE):
            coeff[d.name] = Fraction(1)
        elif d.kind == KIND_COLOUR_B:
            if d.alpha_pairing is None:
                raise KfanoError("type-b colour %s needs alpha_pairing" % d.name)
            coeff[d.name] = d.alpha_pairing
        else:  # pragma: no cover
            raise KfanoError("unhandled divisor kind %r" % d.kind)
    return AnticanonicalData(coeff, data.kappa_P)


def affine_cone_data(data, m):
    """Extended hyperspace vectors (v_D, -m_D) and the polytope data P-hat.

    Returns (extended, per_point) where extended maps divisor name to the
    vector (ell, h, -m_D) and per_point maps each point class with jump
    divisors to the generating points of conv{v_D/h_D - q_x}, each written as
    (ell/h, -m/h) with the trivial jump coordinate dropped.
    """
    if isinstance(m, AnticanonicalData):
        m = m.coefficients
    extended = {}
    per_point = {}
    for d in data.divisors:
        if d.name not in m:
            raise KfanoError("no coefficient for divisor %s" % d.name)
        md = rat(m[d.name])
        extended[d.name] = d.v.ell + (d.v.h, -md)
        if d.v.h != 0:
            pt = d.v.point
            entry = tuple(x / d.v.h for x in d.v.ell) + (-md / d.v.h,)
            per_point.setdefault(pt, []).append(entry)
    return extended, per_point


def variety_from_dict(doc):
    """Build a VarietyData from a parsed variety file (see the cli module)."""
    try:
        rank = int(doc["lattice"]["rank"])
        pi_factors = [PiFactor(f["coroot"], f["denom"])
                      for f in doc.get("pi_factor", [])]
        weights = doc["weights"]
        kappa_P = vec(weights["kappa_P"])
        rho = vec(weights["rho"])
        coroots = [(vec(c["coroot"]), rat(c["denom"]))
                   for c in doc.get("coroot", [])]
        marked = [(p["name"], rat(p["a"])) for p in doc.get("point", [])]
        divisors = []
        for d in doc.get("divisor", []):
            h = rat(d["h"])
            point = d.get("point", CENTRAL)
            if h == 0:
                point = None
            v = HVector(point, vec(d["ell"]), h)
            divisors.append(DivisorRecord(d["name"], v, d["kind"],
                                          d.get("alpha_pairing")))
        cones = {}
        for c in doc.get("valuation_cone", []):
            rows = []
            for row in c["inequalities"]:
                row = vec(row)
                if len(row) != rank + 2:
                    raise KfanoError("valuation cone row must have rank+2 entries")
                if row[-1] != 0:
                    raise KfanoError("valuation cone rows must be homogeneous "
                                     "(constant 0)")
                rows.append(row[:-1])
            cones[c["point"]] = rows
        flags = doc.get("flags", {})
        return VarietyData(
            rank, pi_factors, kappa_P, rho, coroots, marked, divisors, cones,
            is_quasihomogeneous=flags.get("quasihomogeneous", False),
            is_G_times_Gm_spherical=flags.get("g_times_gm_spherical", False))
    except KeyError as e:
        raise KfanoError("variety file is missing field %s" % e)


def load_variety(path):
    """Parse a TOML variety file into a VarietyData."""
    try:
        import tomllib as toml
    except ImportError:  # Python < 3.11
        import tomli as toml
    with open(path, "rb") as fh:
        doc = toml.load(fh)
    return variety_from_dict(doc)


def central_lineality(data):
    """Basis of the linear part A of the central valuation cone."""
    rows = data.valuation_cones.get(GENERIC)
    if rows is None:
        raise KfanoError("no valuation cone for the generic point")
    central_normals = []
    for n in rows:
        ell_part = n[:-1]
        if not is_zero(ell_part):
            central_normals.append(ell_part)
    cone = Cone.from_halfspaces(data.rank, central_normals)
    return list(cone.lineality)
