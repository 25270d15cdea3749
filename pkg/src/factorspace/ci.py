"""Marginals, conditionals and conditional-independence tests for positive laws.

Every CI statement can be decided two ways: pointwise, by comparing
``P(x, y | z)`` with ``P(x | z) P(y | z)``, or structurally, by testing
whether the marginal on ``X ∪ Y ∪ Z`` factorises along
``{X ∪ Z, Y ∪ Z}``.  Both are implemented and are expected to agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, NamedTuple

import numpy as np

from factorspace.covering import Covering
from factorspace.errors import FactorSpaceError
from factorspace.loglin import DEFAULT_TOL, PositiveTable, member
from factorspace.state import StateSpace

NORMALISATION_TOL = 1e-12


@dataclass(frozen=True)
class JointDistribution:
    """A strictly positive table summing to one."""

    table: PositiveTable

    def __post_init__(self):
        total = float(np.sum(self.table.values))
        if abs(total - 1.0) > NORMALISATION_TOL:
            raise FactorSpaceError(f"distribution sums to {total!r}, not 1")

    @classmethod
    def normalize(cls, table: PositiveTable) -> "JointDistribution":
        return cls(PositiveTable(table.space, table.values / np.sum(table.values)))

    @classmethod
    def from_values(cls, space: StateSpace, values) -> "JointDistribution":
        return cls.normalize(PositiveTable(space, values))

    @property
    def space(self) -> StateSpace:
        return self.table.space

    @property
    def values(self) -> np.ndarray:
        return self.table.values

    def to_dict(self) -> Dict:
        return {**self.table.to_dict(), "normalized": True}


def marginal(p: JointDistribution, a) -> JointDistribution:
    """Law of ``X_a``, on the state space of the labels in ``a``."""
    space = p.space
    a = space.mask(a)
    values = np.bincount(space.cylinder_index(a), weights=p.values, minlength=space.size_of(a))
    return JointDistribution(PositiveTable(space.sub(a), values))


def conditional(p: JointDistribution, target, given) -> PositiveTable:
    """``P(x_target | x_given)`` as a table on ``E_{target ∪ given}``.

    Each slice with the ``given`` coordinates fixed sums to one.
    """
    space = p.space
    target, given = space.mask(target), space.mask(given)
    if target & given:
        raise FactorSpaceError("target and given overlap")
    joint = marginal(p, target | given)
    sub = joint.space
    g = space.index_set.transfer(given, sub.index_set)
    denom = np.bincount(sub.cylinder_index(g), weights=joint.values, minlength=sub.size_of(g))
    return PositiveTable(sub, joint.values / denom[sub.cylinder_index(g)])


class CIResult(NamedTuple):
    independent: bool
    residual: float


def _disjoint(space: StateSpace, x, y, z):
    x, y, z = space.mask(x), space.mask(y), space.mask(z)
    if x & y or x & z or y & z:
        raise FactorSpaceError("X, Y and Z must be pairwise disjoint")
    return x, y, z


def ci_pointwise(p: JointDistribution, x, y, z, tol: float = DEFAULT_TOL) -> CIResult:
    """``X ⫫ Y | Z`` by direct comparison of ``P(x, y | z)`` with ``P(x | z) P(y | z)``.

    The residual is the largest log-ratio gap between the two sides.  Like
    membership, the test passes when it is at most ``tol * (1 + max|log P_xyz|)``.
    """
    x, y, z = _disjoint(p.space, x, y, z)
    joint = marginal(p, x | y | z)
    sub = joint.space
    to_sub = lambda m: p.space.index_set.transfer(m, sub.index_set)  # noqa: E731
    xs, ys, zs = to_sub(x), to_sub(y), to_sub(z)

    def margin(m):
        return np.bincount(sub.cylinder_index(m), weights=joint.values, minlength=sub.size_of(m))[
            sub.cylinder_index(m)
        ]

    pz = margin(zs)
    lhs = np.log(joint.values / pz)
    rhs = np.log(margin(xs | zs) / pz) + np.log(margin(ys | zs) / pz)
    r = float(np.max(np.abs(lhs - rhs)))
    scale = 1.0 + float(np.max(np.abs(np.log(joint.values))))
    return CIResult(r <= tol * scale, r)


def ci_membership(p: JointDistribution, x, y, z, tol: float = DEFAULT_TOL) -> CIResult:
    """``X ⫫ Y | Z`` as membership of the ``X ∪ Y ∪ Z`` marginal in ``G_{X∪Z, Y∪Z}``."""
    x, y, z = _disjoint(p.space, x, y, z)
    joint = marginal(p, x | y | z)
    idx = p.space.index_set
    sub = joint.space.index_set
    cov = Covering(sub, frozenset({idx.transfer(x | z, sub), idx.transfer(y | z, sub)}))
    m = member(joint.table, cov, tol)
    return CIResult(m.is_member, m.residual)


def ci_test(p: JointDistribution, x, y, z, tol: float = DEFAULT_TOL, route: str = "pointwise") -> CIResult:
    """Conditional independence ``X ⫫ Y | Z``; labels outside ``X ∪ Y ∪ Z`` are summed out."""
    if route == "pointwise":
        return ci_pointwise(p, x, y, z, tol)
    if route == "membership":
        return ci_membership(p, x, y, z, tol)
    raise FactorSpaceError(f"unknown route {route!r}")


GRAPHOID_STATUS = ("holds", "violated", "not applicable")


@dataclass(frozen=True)
class GraphoidReport:
    """Outcome of the intersection axiom on one four-variable law (W, X, Y, Z)."""

    x_y_given_zw: CIResult
    x_w_given_zy: CIResult
    x_yw_given_z: CIResult
    x_yw_given_z_pointwise: CIResult

    @property
    def applicable(self) -> bool:
        return self.x_y_given_zw.independent and self.x_w_given_zy.independent

    @property
    def status(self) -> str:
        if not self.applicable:
            return "not applicable"
        return "holds" if self.x_yw_given_z.independent else "violated"

    def to_dict(self) -> Dict:
        def fmt(r: CIResult):
            return {"independent": r.independent, "residual": f"{r.residual:.5e}"}

        return {
            "status": self.status,
            "antecedent": {"X_Y_given_ZW": fmt(self.x_y_given_zw), "X_W_given_ZY": fmt(self.x_w_given_zy)},
            "consequent": {
                "X_YW_given_Z": fmt(self.x_yw_given_z),
                "X_YW_given_Z_pointwise": fmt(self.x_yw_given_z_pointwise),
            },
        }


def graphoid_coverings(space: StateSpace):
    """The antecedent and consequent coverings over labels ordered W, X, Y, Z."""
    if space.index_set.n != 4:
        raise FactorSpaceError("graphoid check needs exactly four variables (W, X, Y, Z)")
    w, x, y, z = (1 << k for k in range(4))
    idx = space.index_set
    xy = Covering(idx, frozenset({w | x | z, w | y | z}))
    xw = Covering(idx, frozenset({w | y | z, x | y | z}))
    cons = Covering(idx, frozenset({w | y | z, x | z}))
    return xy, xw, cons


def graphoid_check(p: JointDistribution, tol: float = DEFAULT_TOL) -> GraphoidReport:
    """Intersection axiom: ``X⫫Y|(Z,W)`` and ``X⫫W|(Z,Y)`` imply ``X⫫(Y,W)|Z``.

    The four labels of ``p`` are read positionally as W, X, Y, Z.
    Decided through covering membership; the consequent is also reported
    pointwise.
    """
    xy, xw, cons = graphoid_coverings(p.space)
    w, x, y, z = (1 << k for k in range(4))
    r1 = member(p.table, xy, tol)
    r2 = member(p.table, xw, tol)
    r3 = member(p.table, cons, tol)
    pw = ci_pointwise(p, x, y | w, z, tol)
    return GraphoidReport(CIResult(*r1), CIResult(*r2), CIResult(*r3), pw)
