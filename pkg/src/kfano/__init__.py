"""Exact K-stability computations for Q-Fano G-varieties of complexity one."""

from .core import AffForm, KfanoError, format_rat, pair, rat, rat_decimal, vec
from .polyhedra import Cone, HalfSpace, Polytope, cone_equal
from .variety import (AnticanonicalData, DivisorRecord, HVector, PiFactor,
                      VarietyData, build_anticanonical, central_lineality,
                      load_variety, validate, variety_from_dict)
from .afun import (PLFunc, Subdivision, a_total, build_A, build_delta_Z,
                   build_delta_x_O, build_delta_x_d, subdivide)
from .invariants import (FutakiValue, barycenters, dimension_n, eval_pi,
                         futaki, futaki_direct, h0_coefficients, jna,
                         lambda_max, min_twisted_jna, volume,
                         volume_via_delta_x_O, weyl_dim)
from .testconfig import (TestConfig, A_of_D, build_delta_Z_L,
                         central_fibre_spherical, filtration_dim, oracle_h0,
                         oracle_wk, tau0, twist, validate_tc)
from .stability import (StabilityReport, horospherical_check,
                        polystable_check, semistable_check, stability_report)
from .latsum import (LatSumProblem, expansion_residual_test, sk_expansion,
                     sk_oracle)

__all__ = [n for n in dir() if not n.startswith("_")]
