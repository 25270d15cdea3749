"""Command-line entry point.

Every verb prints one JSON object on stdout.  Exit status: 0 when the
command succeeds and its property holds, 1 when the property is false
(non-member, not independent, a failed suite...), 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Dict, List, Optional

from factorspace import covering as cv
from factorspace import io
from factorspace.ci import ci_membership, ci_pointwise, graphoid_check
from factorspace.covering import Covering
from factorspace.errors import FactorSpaceError
from factorspace.factorize import graphical_hull, minimal_factorization
from factorspace.loglin import DEFAULT_TOL, member
from factorspace.markov import hc_check, markov_test
from factorspace.verify import clique_suite, intersection_suite

VERBS = (
    "meet", "leq", "saturate", "canonical", "member", "minfac", "hull", "ci",
    "graphoid", "markov", "hc", "verify-intersection", "verify-cliques",
)


def _labels(c: Covering) -> List[List[str]]:
    return c.to_labels()


def _sci(x: float) -> str:
    return f"{x:.5e}"


def _same_order(c: Covering, index_set) -> Covering:
    # a covering file may list the labels in another order than the table
    if c.index_set == index_set:
        return c
    if set(c.index_set.labels) != set(index_set.labels):
        raise FactorSpaceError("index-set mismatch")
    return Covering(index_set, frozenset(c.index_set.transfer(m, index_set) for m in c.members))


def _pair(args):
    a = io.load("covering", args.a)
    b = _same_order(io.load("covering", args.b), a.index_set)
    return a, b


def cmd_meet(args) -> tuple:
    a, b = _pair(args)
    m = cv.meet(a, b)
    return 0, {"meet": _labels(m), "canonical": _labels(cv.canonical(m))}


def cmd_leq(args) -> tuple:
    a, b = _pair(args)
    ok = cv.leq(a, b)
    return (0 if ok else 1), {"leq": ok, "equiv": cv.equiv(a, b)}


def cmd_saturate(args) -> tuple:
    a = io.load("covering", args.a)
    return 0, {"saturation": _labels(cv.saturate(a)), "canonical": _labels(cv.canonical(a))}


def cmd_canonical(args) -> tuple:
    a = io.load("covering", args.a)
    return 0, {"canonical": _labels(cv.canonical(a))}


def cmd_member(args) -> tuple:
    f = io.load("table", args.table)
    a = _same_order(io.load("covering", args.covering), f.space.index_set)
    m = member(f, a, args.tol)
    return (0 if m.is_member else 1), {
        "member": m.is_member,
        "residual": _sci(m.residual),
        "canonical": _labels(cv.canonical(cv.nonempty(a))),
    }


def cmd_minfac(args) -> tuple:
    f = io.load("table", args.table)
    return 0, {"minimal": _labels(minimal_factorization(f, args.tol))}


def cmd_hull(args) -> tuple:
    f = io.load("table", args.table)
    return 0, {"hull": _labels(graphical_hull(f, args.tol))}


def _subset_arg(text: Optional[str]) -> List[str]:
    if not text:
        return []
    return [t for t in text.split(",") if t]


def cmd_ci(args) -> tuple:
    p = io.load("distribution", args.distribution)
    x, y, z = (_subset_arg(v) for v in (args.x, args.y, args.z))
    pw = ci_pointwise(p, x, y, z, args.tol)
    mb = ci_membership(p, x, y, z, args.tol)
    report = {
        "independent": pw.independent,
        "pointwise": {"independent": pw.independent, "residual": _sci(pw.residual)},
        "membership": {"independent": mb.independent, "residual": _sci(mb.residual)},
        "routes_agree": pw.independent == mb.independent,
    }
    return (0 if pw.independent and mb.independent else 1), report


def cmd_graphoid(args) -> tuple:
    p = io.load("distribution", args.distribution)
    r = graphoid_check(p, args.tol)
    return (1 if r.status == "violated" else 0), r.to_dict()


def cmd_markov(args) -> tuple:
    p = io.load("distribution", args.distribution)
    g = io.load("graph", args.graph)
    r = markov_test(p, g, args.mode, args.tol)
    return (0 if r.holds else 1), {"mode": args.mode, "holds": r.holds, "worst_residual": _sci(r.worst_residual)}


def cmd_hc(args) -> tuple:
    p = io.load("distribution", args.distribution)
    g = io.load("graph", args.graph)
    r = hc_check(p, g, args.tol)
    return (0 if r.agree else 1), r.to_dict()


def cmd_verify_intersection(args) -> tuple:
    r = intersection_suite(args.n, args.trials, args.seed, args.tol, args.k)
    ok = r["rank"]["failed"] == 0 and r["membership"]["failed"] == 0
    return (0 if ok else 1), r


def cmd_verify_cliques(args) -> tuple:
    r = clique_suite(args.max_n)
    return (0 if r["failed"] == 0 else 1), r


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="membership tolerance (log scale, relative)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomised verbs")

    parser = argparse.ArgumentParser(prog="factorspace", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=fn)
        return p

    for name, fn, text in (
        ("meet", cmd_meet, "pairwise intersections of two coverings"),
        ("leq", cmd_leq, "pre-order test A <= B"),
    ):
        p = verb(name, fn, text)
        p.add_argument("a")
        p.add_argument("b")
    for name, fn, text in (
        ("saturate", cmd_saturate, "downward closure of a covering"),
        ("canonical", cmd_canonical, "canonical antichain of a covering"),
    ):
        verb(name, fn, text).add_argument("a")

    p = verb("member", cmd_member, "does the table factorise along the covering")
    p.add_argument("table")
    p.add_argument("covering")
    verb("minfac", cmd_minfac, "exact minimal factorisation (n <= 5)").add_argument("table")
    verb("hull", cmd_hull, "meet of the separating splits containing the table").add_argument("table")

    p = verb("ci", cmd_ci, "conditional independence X _||_ Y | Z, both routes")
    p.add_argument("distribution")
    p.add_argument("--x", required=True, help="comma-separated labels")
    p.add_argument("--y", required=True, help="comma-separated labels")
    p.add_argument("--z", default="", help="comma-separated labels (may be empty)")

    verb("graphoid", cmd_graphoid, "intersection axiom on a 4-variable law (W,X,Y,Z)").add_argument("distribution")

    p = verb("markov", cmd_markov, "pairwise or local Markov property relative to a graph")
    p.add_argument("distribution")
    p.add_argument("graph")
    p.add_argument("--mode", choices=("pairwise", "local"), default="pairwise")

    p = verb("hc", cmd_hc, "pairwise / local / clique-factorisation agreement")
    p.add_argument("distribution")
    p.add_argument("graph")

    p = verb("verify-intersection", cmd_verify_intersection, "random rank and membership checks of the meet")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--k", type=int, default=2, help="alphabet size per variable")
    p.add_argument("--trials", type=int, default=50)

    p = verb("verify-cliques", cmd_verify_cliques, "clique lemma on every graph up to --max-n vertices")
    p.add_argument("--max-n", type=int, default=6)
    return parser


def dispatch(argv: Optional[List[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        code, report = args.func(args)
    except FactorSpaceError as exc:
        print(json.dumps({"verb": args.verb, "error": str(exc)}, sort_keys=True), file=out)
        print(f"factorspace {args.verb}: {exc}", file=sys.stderr)
        return 2
    report: Dict = {"verb": args.verb, **report}
    print(json.dumps(report, sort_keys=True), file=out)
    return code


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
