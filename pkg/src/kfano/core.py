"""Exact rational scalars, vectors, affine forms and pairings.

Everything downstream works with tuples of ``fractions.Fraction``.  Weights
(lattice characters) and covectors (elements of the dual space) are both plain
tuples; the pairing is the standard dot product in the chosen basis.
"""

from fractions import Fraction


class KfanoError(Exception):
    """Base error for this package."""


class DimensionError(KfanoError):
    pass


def rat(x):
    """Coerce x to an exact Fraction.  Accepts int, Fraction and 'p/q' strings."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError("cannot make an exact rational out of %r" % (x,))


def vec(xs):
    """Coerce a sequence to a tuple of Fractions."""
    return tuple(rat(x) for x in xs)


def zero_vec(n):
    return (Fraction(0),) * n


def pair(w, c):
    """Exact dot product <w, c>."""
    if len(w) != len(c):
        raise DimensionError("pairing of vectors of length %d and %d" % (len(w), len(c)))
    return sum((a * b for a, b in zip(w, c)), Fraction(0))


def vec_add(a, b):
    if len(a) != len(b):
        raise DimensionError("adding vectors of different lengths")
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    if len(a) != len(b):
        raise DimensionError("subtracting vectors of different lengths")
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c, a):
    c = rat(c)
    return tuple(c * x for x in a)


def is_zero(a):
    return all(x == 0 for x in a)


def format_rat(x):
    """Serialize a rational as 'p/q' (or 'p' for integers)."""
    x = rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def rat_decimal(x, digits=12):
    """Decimal approximation with the given number of significant digits."""
    return "%.*g" % (digits, float(rat(x)))


class AffForm:
    """The affine form w -> (constant + <w, linear>) / h.

    h is the divisor of jump appearing in the fractions (m_D + l_D(lambda))/h_D;
    it is 1 for plain affine forms.
    """

    __slots__ = ("linear", "constant", "h", "label")

    def __init__(self, linear, constant, h=1, label=None):
        self.linear = vec(linear)
        self.constant = rat(constant)
        self.h = rat(h)
        if self.h <= 0:
            raise KfanoError("divisor of jump must be positive, got %s" % self.h)
        self.label = label

    def __call__(self, w):
        return (self.constant + pair(w, self.linear)) / self.h

    def normalized(self):
        """The same form with h cleared: (linear/h, constant/h, 1)."""
        if self.h == 1:
            return self
        return AffForm(vec_scale(1 / self.h, self.linear), self.constant / self.h,
                       1, self.label)

    def key(self):
        return (self.linear, self.constant, self.h)

    def __eq__(self, other):
        return isinstance(other, AffForm) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "AffForm(linear=%s, constant=%s, h=%s, label=%r)" % (
            self.linear, self.constant, self.h, self.label)


def eval_aff(f, w):
    """Evaluate an AffForm at a weight; exact."""
    return f(w)
