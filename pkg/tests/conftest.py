import pathlib

import pytest
from fractions import Fraction

from kfano.variety import (GENERIC, DivisorRecord, HVector, VarietyData,
                           load_variety)

REPO = pathlib.Path(__file__).resolve().parent.parent
SL3_PATH = REPO / "examples" / "sl3-triangles.toml"


@pytest.fixture()
def sl3():
    # fresh object per test: several tests poke at the cache
    return load_variety(str(SL3_PATH))


@pytest.fixture(scope="session")
def sl3_shared():
    # read-only shared copy for the expensive integral pipelines
    return load_variety(str(SL3_PATH))


def make_toy(spherical=False, spherical_Ax=None):
    """Rank-1 horospherical toy: Delta_Z = [-1, 1], A == 2, V = 4.

    Two marked points with a = 1 carrying a single jump divisor each
    (ell = 0, so A_z == 1), central facets at mu = +-1, trivial pi.  Every
    valuation cone is {h >= 0}, so the central lineality is the whole line
    and b = (kappa_P, 0) at every point class.
    """
    z1 = HVector("z1", (0,), 1)
    z2 = HVector("z2", (0,), 1)
    divisors = [
        DivisorRecord("Wplus", HVector(None, (1,), 0), "g_stable"),
        DivisorRecord("Wminus", HVector(None, (-1,), 0), "g_stable"),
        DivisorRecord("V1", z1, "g_stable"),
        DivisorRecord("V2", z2, "g_stable"),
        DivisorRecord("Dx", HVector(GENERIC, (0,), 1), "colour_a"),
    ]
    cones = {"z1": [(0, 1)], "z2": [(0, 1)], GENERIC: [(0, 1)]}
    return VarietyData(
        rank=1, pi_factors=[], kappa_P=(0,), rho=(0,), positive_coroots=[],
        marked_points=[("z1", 1), ("z2", 1)], divisors=divisors,
        valuation_cones=cones, is_quasihomogeneous=True,
        is_G_times_Gm_spherical=spherical, spherical_Ax=spherical_Ax)


@pytest.fixture()
def toy():
    return make_toy()
