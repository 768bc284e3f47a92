"""Command-line front end: kfano validate | report | futaki | jna | oracle.

Exit codes: 0 success, 1 diagnostics / domain errors, 2 parse errors.
Rationals are printed as "p/q" with a 12-significant-digit decimal
annotation; json reports keep the exact strings and put decimals in
separate *_decimal fields.
"""

import argparse
import json
import sys
from fractions import Fraction

from .core import KfanoError, format_rat, rat, rat_decimal, vec
from .variety import GENERIC, HVector, load_variety, validate
from .afun import build_A, build_delta_Z
from .variety import build_anticanonical
from .invariants import (barycenters, futaki, jna, min_twisted_jna, volume)
from .stability import stability_report
from .testconfig import TestConfig, oracle_h0, oracle_wk, validate_tc
from .latsum import LatSumProblem, sk_oracle


def _load(path):
    try:
        return load_variety(path)
    except (OSError, KfanoError, ValueError) as e:
        raise ParseError(str(e))
    except Exception as e:  # malformed TOML
        raise ParseError(str(e))


class ParseError(Exception):
    pass


def _parse_ell(s, rank):
    parts = [p.strip() for p in s.split(",")]
    if len(parts) != rank:
        raise KfanoError("--ell needs %d comma-separated entries" % rank)
    return vec(parts)


def _hvector(data, args):
    ell = _parse_ell(args.ell, data.rank)
    h = rat(args.h)
    point = args.point
    if h == 0:
        point = None
    elif point is None:
        raise KfanoError("--point is required when h != 0")
    return HVector(point, ell, h)


def cmd_validate(args):
    data = _load(args.file)
    diags = validate(data)
    if diags:
        for d in diags:
            print("diagnostic: %s" % d)
        return 1
    print("OK: %s parses to a usable variety" % args.file)
    return 0


def _rat_field(x):
    return {"exact": format_rat(x), "decimal": rat_decimal(x)}


def _report_dict(data):
    m = build_anticanonical(data)
    delta_Z = build_delta_Z(data, m)
    A = build_A(data, m)
    V = volume(data)
    bary = barycenters(data)
    rep = stability_report(data)
    doc = {
        "moment_polytope": {
            "halfspaces": [{"normal": [format_rat(x) for x in h.normal],
                            "offset": format_rat(h.offset)}
                           for h in delta_Z.halfspaces],
            "vertices": [[format_rat(x) for x in v]
                         for v in delta_Z.vertices],
        },
        "A_functions": {
            x: [{"linear": [format_rat(c) for c in p.linear],
                 "constant": format_rat(p.constant),
                 "h": format_rat(p.h),
                 "divisor": p.label}
                for p in A[x].pieces]
            for x in A
        },
        "volume": _rat_field(V),
        "barycenters": {
            x: {"mu": [format_rat(c) for c in mu_b],
                "mu_decimal": [rat_decimal(c) for c in mu_b],
                "t": format_rat(t_b),
                "t_decimal": rat_decimal(t_b)}
            for x, (mu_b, t_b) in bary.items()
        },
        "verdict": rep.verdict,
        "certificates": {
            x: {
                "kappa_minus_b": [format_rat(c)
                                  for c in cert["kappa_minus_b"]],
                "ray_pairings": [
                    {"ray": [format_rat(c) for c in g],
                     "pairing": format_rat(v)}
                    for g, v in cert.get("ray_pairings", [])],
                "dual_ok": cert.get("dual_ok"),
                "slice_ok": cert.get("slice_ok"),
            }
            for x, cert in rep.per_class.items()
        },
    }
    if rep.witness is not None:
        doc["witness"] = {
            "point": rep.witness.point,
            "ell": [format_rat(c) for c in rep.witness.ell],
            "h": format_rat(rep.witness.h),
        }
    return doc


def _render_markdown(doc):
    lines = []
    lines.append("# K-stability report")
    lines.append("")
    lines.append("## Moment polytope")
    for h in doc["moment_polytope"]["halfspaces"]:
        lines.append("- %s + (%s) . mu >= 0"
                     % (h["offset"], ", ".join(h["normal"])))
    lines.append("")
    lines.append("Vertices: " + "; ".join(
        "(" + ", ".join(v) + ")" for v in doc["moment_polytope"]["vertices"]))
    lines.append("")
    lines.append("## A-functions")
    for x in sorted(doc["A_functions"]):
        pieces = ", ".join(
            "(%s + (%s).mu)/%s [%s]" % (p["constant"],
                                        ", ".join(p["linear"]),
                                        p["h"], p["divisor"])
            for p in doc["A_functions"][x])
        lines.append("- A_%s = min{ %s }" % (x, pieces))
    lines.append("")
    lines.append("## Volume")
    lines.append("V = %s (~ %s)" % (doc["volume"]["exact"],
                                    doc["volume"]["decimal"]))
    lines.append("")
    lines.append("## Barycenters (b - kappa_P frame)")
    for x in sorted(doc["barycenters"]):
        b = doc["barycenters"][x]
        lines.append("- %s: mu = (%s), t = %s"
                     % (x, ", ".join(b["mu"]), b["t"]))
    lines.append("")
    lines.append("## Verdict: %s" % doc["verdict"])
    if "witness" in doc:
        w = doc["witness"]
        lines.append("Witness: point=%s ell=(%s) h=%s"
                     % (w["point"], ", ".join(w["ell"]), w["h"]))
    return "\n".join(lines) + "\n"


def cmd_report(args):
    data = _load(args.file)
    doc = _report_dict(data)
    if args.format == "json":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        sys.stdout.write(_render_markdown(doc))
    return 0


def cmd_futaki(args):
    data = _load(args.file)
    v0 = _hvector(data, args)
    out = futaki(data, v0)
    print("%s (~ %s)" % (format_rat(out.value), rat_decimal(out.value)))
    return 0


def cmd_jna(args):
    data = _load(args.file)
    v0 = _hvector(data, args)
    val = jna(data, v0)
    print("%s (~ %s)" % (format_rat(val), rat_decimal(val)))
    if args.twist_min:
        best, ellp = min_twisted_jna(data, v0)
        print("twisted minimum: %s (~ %s) at ell' = (%s)"
              % (format_rat(best), rat_decimal(best),
                 ", ".join(format_rat(c) for c in ellp)))
    return 0


def cmd_oracle(args):
    data = _load(args.file)
    if args.which == "h0":
        print(oracle_h0(data, args.k))
        return 0
    if args.which == "wk":
        if args.ell is None:
            raise KfanoError("oracle wk needs --ell/--h/--point for v0")
        v0 = _hvector(data, args)
        tc = TestConfig(v0, args.m0)
        ok, minimal = validate_tc(data, tc)
        if not ok:
            raise KfanoError("(v0, m0) rejected: minimal admissible m0 is %d"
                             % minimal)
        print(oracle_wk(data, tc, args.k))
        return 0
    # sk: the anticanonical lattice sum sum_mu floor(k A(mu/k)) pi(mu + k kappa_P)
    from math import floor
    from .core import pair
    from .invariants import _geometry, pi_density
    from .testconfig import _lattice_points_k_delta_Z
    from .integrate import poly_eval
    m, A, delta_Z, sub = _geometry(data)
    pi_poly = pi_density(data).to_poly(data.rank)
    total = Fraction(0)
    k = args.k
    for mu in _lattice_points_k_delta_Z(data, k):
        kf = sum(min((k * p.constant + pair(mu, p.linear)) / p.h
                     for p in A[x].pieces) for x in A)
        total += floor(kf) * poly_eval(pi_poly, mu)
    print(format_rat(total))
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="kfano",
                                description="K-stability of Q-Fano "
                                "complexity-one G-varieties")
    sub = p.add_subparsers(dest="command", required=True)

    pv = sub.add_parser("validate", help="check a variety file")
    pv.add_argument("file")
    pv.set_defaults(func=cmd_validate)

    pr = sub.add_parser("report", help="full combinatorial report")
    pr.add_argument("file")
    pr.add_argument("--format", choices=("json", "markdown"),
                    default="markdown")
    pr.set_defaults(func=cmd_report)

    def add_v0(q):
        q.add_argument("--point", default=None)
        q.add_argument("--ell", required=True)
        q.add_argument("--h", default="0")

    pf = sub.add_parser("futaki", help="Futaki invariant of v0")
    pf.add_argument("file")
    add_v0(pf)
    pf.set_defaults(func=cmd_futaki)

    pj = sub.add_parser("jna", help="non-Archimedean J functional of v0")
    pj.add_argument("file")
    add_v0(pj)
    pj.add_argument("--twist-min", action="store_true")
    pj.set_defaults(func=cmd_jna)

    po = sub.add_parser("oracle", help="brute-force lattice-sum oracles")
    po.add_argument("file")
    po.add_argument("which", choices=("h0", "wk", "sk"))
    po.add_argument("--k", type=int, required=True)
    po.add_argument("--point", default=None)
    po.add_argument("--ell", default=None)
    po.add_argument("--h", default="0")
    po.add_argument("--m0", type=int, default=1)
    po.set_defaults(func=cmd_oracle)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print("parse error: %s" % e, file=sys.stderr)
        return 2
    except KfanoError as e:
        print("error: %s" % e, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
