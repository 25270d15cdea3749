"""Randomised and exhaustive property suites.

Each suite returns a plain dict (JSON-ready, deterministic for a given
seed) with pass/fail counts, the worst residual seen and the first few
failures.  Nothing here raises on a failed property.
"""

from __future__ import annotations

import itertools
from typing import Dict, List, Sequence

import numpy as np

from factorspace import covering as cv
from factorspace.ci import JointDistribution, ci_membership, ci_pointwise, graphoid_check, graphoid_coverings
from factorspace.covering import Covering, IndexSet
from factorspace.loglin import DEFAULT_TOL, PositiveTable, build_subspace, intersect_oracle, member, sample_member
from factorspace.markov import Graph, all_graphs, clique_complex, clique_lemma_check, hc_check, is_connected
from factorspace.state import StateSpace

MAX_FAILURES_REPORTED = 5


def labels(n: int) -> List[str]:
    return [str(k) for k in range(1, n + 1)]


def all_coverings(index_set: IndexSet) -> List[Covering]:
    """All ``2^(2^n)`` families of subsets (only sensible for n <= 3)."""
    subsets = list(range(1 << index_set.n))
    return [
        Covering._raw(index_set, [s for k, s in enumerate(subsets) if bits >> k & 1])
        for bits in range(1 << len(subsets))
    ]


def random_covering(index_set: IndexSet, rng: np.random.Generator, density: float = 0.3) -> Covering:
    """Random family of subsets; never empty."""
    total = 1 << index_set.n
    pick = [s for s in range(total) if rng.random() < density]
    if not pick:
        pick = [int(rng.integers(total))]
    return Covering._raw(index_set, pick)


class _Tally:
    def __init__(self, name: str):
        self.name = name
        self.passed = 0
        self.failed = 0
        self.worst = 0.0
        self.failures: List = []

    def record(self, ok: bool, detail=None, residual: float = 0.0) -> None:
        """Count one check; a callable ``detail`` is only evaluated on failure."""
        self.worst = max(self.worst, float(residual))
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.failures) < MAX_FAILURES_REPORTED:
                self.failures.append(detail() if callable(detail) else detail)

    def report(self) -> Dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "failed": self.failed,
            "worst_residual": f"{self.worst:.5e}",
            "failures": self.failures,
        }


def covering_laws_suite(n: int = 3) -> Dict:
    """Pre-order and meet/union laws, exhaustive over every covering of ``n`` labels.

    Pairwise laws run over all coverings; laws with three or four
    arguments run over the canonical antichains, which suffices because
    meet and union are checked to respect equivalence on all pairs.
    """
    idx = IndexSet(tuple(labels(n)))
    covs = all_coverings(idx)
    canon = [cv.canonical(c) for c in covs]
    sats = [cv.saturate(c) for c in covs]
    reps = cv.all_antichains(idx, include_empty=True)
    t = _Tally("covering_laws")

    for c, s, k in zip(covs, sats, canon):
        t.record(cv.saturate(s) == s, lambda c=c: ("saturation_fixed_point", c.to_labels()))
        t.record(cv.equiv(c, s) and cv.equiv(c, k), lambda c=c: ("equiv_to_representatives", c.to_labels()))
        t.record(cv.leq(c, c), lambda c=c: ("reflexive", c.to_labels()))
        t.record(cv.canonical(s) == k, lambda c=c: ("canonical_of_saturation", c.to_labels()))

    for i, a in enumerate(covs):
        ka, sa = canon[i], sats[i]
        for j, b in enumerate(covs):
            kb, sb = canon[j], sats[j]
            m = cv.meet(a, b)
            km = cv.canonical(m)
            ok = (
                km == cv.canonical(cv.meet(b, a))
                and cv.leq(m, a)
                and cv.leq(m, b)
                and (ka == kb) == cv.equiv(a, b)
                and km == cv.canonical(cv.meet(ka, kb))
                and cv.canonical(cv.union(a, b)) == cv.canonical(cv.union(ka, kb))
                and cv.leq(a, cv.union(a, b))
                and cv.leq(a, b) == (sa.members <= sb.members)
                and cv.saturate(cv.meet(sa, sb)).members == (sa.members & sb.members)
                and cv.meet(sa, sb).members == (sa.members & sb.members)
            )
            t.record(ok, lambda a=a, b=b: (a.to_labels(), b.to_labels()))

    for a, b, c in itertools.product(reps, repeat=3):
        lhs = cv.canonical(cv.meet(cv.union(a, b), c))
        rhs = cv.canonical(cv.union(cv.meet(a, c), cv.meet(b, c)))
        trans = not (cv.leq(a, b) and cv.leq(b, c)) or cv.leq(a, c)
        t.record(lhs == rhs and trans, lambda: ("distributive_transitive", a.to_labels(), b.to_labels(), c.to_labels()))

    leq_table = {(i, j): cv.leq(a, b) for i, a in enumerate(reps) for j, b in enumerate(reps)}
    for (i, a), (j, b) in itertools.product(enumerate(reps), repeat=2):
        for k, c in enumerate(reps):
            if not leq_table[i, k]:
                continue
            for m, d in enumerate(reps):
                if not leq_table[j, m]:
                    continue
                ok = cv.leq(cv.union(a, b), cv.union(c, d)) and cv.leq(cv.meet(a, b), cv.meet(c, d))
                t.record(ok, lambda: ("monotone", a.to_labels(), b.to_labels(), c.to_labels(), d.to_labels()))
    return t.report()


def intersection_suite(n: int = 4, trials: int = 200, seed: int = 0, tol: float = DEFAULT_TOL, k: int = 2) -> Dict:
    """Rank oracle versus meet, plus membership of sampled intersection members."""
    rng = np.random.default_rng(seed)
    space = StateSpace.uniform(labels(n), k)
    idx = space.index_set
    ranks = _Tally("intersection_rank")
    members = _Tally("intersection_membership")
    for trial in range(trials):
        a = random_covering(idx, rng)
        b = random_covering(idx, rng)
        m = cv.meet(a, b)
        dims = intersect_oracle(space, a, b)
        got = build_subspace(space, m).dim
        ranks.record(dims.dim_intersection == got, {"trial": trial, "oracle": dims.dim_intersection, "meet": got})
        f = sample_member(space, [a, b], rng)
        res = member(f, m, tol)
        members.record(res.is_member, {"trial": trial, "residual": f"{res.residual:.5e}"}, res.residual)
    return {"n": n, "trials": trials, "seed": seed, "rank": ranks.report(), "membership": members.report()}


def clique_suite(max_n: int = 6) -> Dict:
    """Clique lemma on every graph with at most ``max_n`` vertices."""
    t = _Tally("clique_lemma")
    for n in range(1, max_n + 1):
        for g in all_graphs(labels(n)):
            t.record(clique_lemma_check(g), g.to_dict)
    return t.report()


def clique_factorised(space: StateSpace, g: Graph, rng: np.random.Generator) -> PositiveTable:
    """Product of random positive factors, one per maximal clique."""
    out = np.zeros(space.size)
    for c in clique_complex(g).maximal.members:
        out += rng.normal(size=space.size_of(c))[space.cylinder_index(c)]
    return PositiveTable.from_log(space, out)


def hc_suite(max_n: int = 4, trials: int = 100, seed: int = 0, tol: float = DEFAULT_TOL) -> Dict:
    """Three-way agreement of pairwise, local and clique predicates on every connected graph."""
    rng = np.random.default_rng(seed)
    constructed = _Tally("hc_clique_factorised")
    projected = _Tally("hc_pairwise_projected")
    generic = _Tally("hc_generic")
    for n in range(1, max_n + 1):
        space = StateSpace.uniform(labels(n), 2)
        for g in all_graphs(labels(n)):
            if not is_connected(g):
                continue
            pairs = [cv.split(space.index_set, i, j) for i, j in g.non_adjacent_pairs()]
            for _ in range(trials):
                p = JointDistribution.normalize(clique_factorised(space, g, rng))
                r = hc_check(p, g, tol)
                constructed.record(r.agree and r.clique, r.to_dict(), r.clique_residual)
                if pairs:
                    q = JointDistribution.normalize(sample_member(space, pairs, rng))
                    r = hc_check(q, g, tol)
                    projected.record(r.agree and r.pairwise, r.to_dict(), r.pairwise_residual)
                if not g.is_complete():
                    u = JointDistribution.normalize(PositiveTable.from_log(space, rng.normal(size=space.size)))
                    r = hc_check(u, g, tol)
                    generic.record(r.agree and not r.clique, r.to_dict())
    return {
        "max_n": max_n,
        "trials": trials,
        "seed": seed,
        "clique_factorised": constructed.report(),
        "pairwise_projected": projected.report(),
        "generic": generic.report(),
    }


def graphoid_suite(trials: int = 1000, seed: int = 0, alphabet_sizes: Sequence[int] = (2, 3), tol: float = DEFAULT_TOL,
                   threshold: float = 1e-7) -> Dict:
    """Intersection axiom on antecedent-satisfying four-variable laws.

    Trials are split evenly over ``alphabet_sizes``; a trial passes when the
    antecedent holds and both consequent residuals are at most ``threshold``.
    """
    rng = np.random.default_rng(seed)
    t = _Tally("graphoid_intersection")
    for trial in range(trials):
        k = alphabet_sizes[trial % len(alphabet_sizes)]
        space = StateSpace.uniform(["0", "1", "2", "3"], k)
        xy, xw, _ = graphoid_coverings(space)
        p = JointDistribution.normalize(sample_member(space, [xy, xw], rng))
        r = graphoid_check(p, tol)
        worst = max(r.x_yw_given_z.residual, r.x_yw_given_z_pointwise.residual)
        ok = r.applicable and r.status == "holds" and worst <= threshold
        t.record(ok, {"trial": trial, "k": k, **r.to_dict()}, worst)
    return t.report()


def ci_routes_suite(trials: int = 500, seed: int = 0, tol: float = DEFAULT_TOL) -> Dict:
    """Pointwise and membership CI tests agree, including on which inputs they reject.

    When both report dependence their residuals must lie within a factor 10.
    """
    rng = np.random.default_rng(seed)
    t = _Tally("ci_two_routes")
    for trial in range(trials):
        n = int(rng.integers(2, 5))
        space = StateSpace.uniform(labels(n), int(rng.integers(2, 4)))
        full = space.index_set.full
        x, y, z = (int(rng.integers(0, full + 1)) for _ in range(3))
        if trial % 5 != 0:
            # mostly disjoint triples with non-empty X and Y; every fifth trial is left raw
            y &= ~x
            z &= ~(x | y)
            if not x or not y:
                x, y = 1, 2
                z &= ~3
        disjoint = not (x & y or x & z or y & z)
        if disjoint and rng.random() < 0.5:
            cov = Covering(space.index_set, frozenset({x | z, y | z}))
            p = JointDistribution.normalize(sample_member(space, [cov], rng))
        else:
            p = JointDistribution.normalize(PositiveTable.from_log(space, rng.normal(size=space.size)))
        outcomes = []
        for route in (ci_pointwise, ci_membership):
            try:
                outcomes.append(("ok", route(p, x, y, z, tol)))
            except ValueError:
                outcomes.append(("rejected", None))
        (sa, ra), (sb, rb) = outcomes
        agree = sa == sb and (ra is None or ra.independent == rb.independent)
        if agree and ra is not None and not ra.independent:
            # dependent inputs: the two residuals must also be of the same size
            agree = 0.1 <= ra.residual / rb.residual <= 10.0
        detail = {"trial": trial, "x": x, "y": y, "z": z, "pointwise": sa, "membership": sb}
        if ra is not None:
            detail.update(pointwise_residual=f"{ra.residual:.5e}", membership_residual=f"{rb.residual:.5e}")
        t.record(agree, detail)
    return t.report()


def verify_suites(seed: int = 0, intersection_n: int = 4, clique_max_n: int = 6, hc_max_n: int = 4,
                  trials: int = 50, tol: float = DEFAULT_TOL) -> Dict:
    """Run every suite and summarise pass/fail counts."""
    reports = {
        "covering_laws": covering_laws_suite(3),
        "intersection": intersection_suite(intersection_n, trials, seed, tol),
        "clique_lemma": clique_suite(clique_max_n),
        "hammersley_clifford": hc_suite(hc_max_n, max(1, trials // 5), seed, tol),
        "graphoid": graphoid_suite(trials, seed, tol=tol),
        "ci_routes": ci_routes_suite(trials, seed, tol),
    }

    def tallies(r):
        if "failed" in r:
            return [r]
        return [v for v in r.values() if isinstance(v, dict) and "failed" in v]

    summary = {}
    for name, r in reports.items():
        ts = tallies(r)
        summary[name] = {
            "passed": sum(t["passed"] for t in ts),
            "failed": sum(t["failed"] for t in ts),
            "worst_residual": f"{max(float(t['worst_residual']) for t in ts):.5e}",
        }
    all_passed = not any(v["failed"] for v in summary.values())
    return {"seed": seed, "all_passed": all_passed, "summary": summary, "reports": reports}
