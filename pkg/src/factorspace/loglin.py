"""Log-linear cylinder subspaces and numerical membership.

A positive table ``f`` factorises along a covering ``A`` exactly when
``log f`` lies in the span of the cylinder indicators ``1[x_a = xi]``
(``a`` in ``A``, ``xi`` in ``E_a``).  Everything here works in the log
domain with dense matrices; dimensions always come from rank-revealing
decompositions because the indicator columns are linearly dependent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, NamedTuple, Optional, Sequence

import numpy as np

from factorspace.covering import Antichain, Covering, canonical, nonempty, saturate
from factorspace.errors import IndexSetMismatch, NotPositive, StateSpaceTooLarge
from factorspace.state import StateSpace

DEFAULT_TOL = 1e-8
MAX_DENSE_STATES = 4096


@dataclass(frozen=True, eq=False)
class PositiveTable:
    """Strictly positive values on every configuration of ``space`` (row-major)."""

    space: StateSpace
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float).reshape(-1)
        if values.shape[0] != self.space.size:
            raise ValueError(f"expected {self.space.size} values, got {values.shape[0]}")
        if not np.all(np.isfinite(values)) or np.any(values <= 0):
            raise NotPositive()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_log(cls, space: StateSpace, log_values) -> "PositiveTable":
        return cls(space, np.exp(np.asarray(log_values, dtype=float)))

    @classmethod
    def constant(cls, space: StateSpace, value: float = 1.0) -> "PositiveTable":
        return cls(space, np.full(space.size, float(value)))

    def log(self) -> np.ndarray:
        return np.log(self.values)

    def as_array(self) -> np.ndarray:
        return self.values.reshape(self.space.sizes)

    def to_dict(self) -> Dict:
        return {"space": self.space.to_dict(), "values": self.values.tolist()}


class Membership(NamedTuple):
    is_member: bool
    residual: float


class OracleDims(NamedTuple):
    dim_a: int
    dim_b: int
    dim_sum: int
    dim_intersection: int


def orthonormal_basis(m: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the column span of ``m`` (thin SVD, numpy's rank cutoff)."""
    if m.size == 0:
        return np.zeros((m.shape[0], 0))
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    if s.size == 0 or s[0] == 0:
        return np.zeros((m.shape[0], 0))
    cutoff = s[0] * max(m.shape) * np.finfo(float).eps
    return u[:, : int(np.sum(s > cutoff))]


@dataclass(frozen=True, eq=False)
class CylinderSubspace:
    """The log-domain span of a covering's cylinder indicators."""

    space: StateSpace
    covering: Antichain
    basis: np.ndarray
    tol: float = DEFAULT_TOL
    orth: np.ndarray = field(repr=False, default=None)

    @property
    def dim(self) -> int:
        return self.orth.shape[1]

    def project(self, y: np.ndarray) -> np.ndarray:
        return self.orth @ (self.orth.T @ y)

    def residual(self, y: np.ndarray) -> float:
        """Sup-norm of the least-squares residual of ``y`` against the basis."""
        return float(np.max(np.abs(y - self.project(y)))) if y.size else 0.0

    def contains(self, y: np.ndarray, tol: Optional[float] = None) -> Membership:
        tol = self.tol if tol is None else tol
        r = self.residual(y)
        scale = 1.0 + float(np.max(np.abs(y)))
        return Membership(bool(r <= tol * scale), r)


def _basis_matrix(space: StateSpace, members) -> np.ndarray:
    cols = []
    for a in members:
        idx = space.cylinder_index(a)
        block = np.zeros((space.size, space.size_of(a)))
        block[np.arange(space.size), idx] = 1.0
        cols.append(block)
    return np.hstack(cols)


@lru_cache(maxsize=512)
def _build(space: StateSpace, antichain: Antichain, tol: float) -> CylinderSubspace:
    basis = _basis_matrix(space, antichain.ordered())
    basis.setflags(write=False)
    orth = orthonormal_basis(basis)
    orth.setflags(write=False)
    return CylinderSubspace(space, antichain, basis, tol, orth)


def _guard(space: StateSpace) -> None:
    if space.size > MAX_DENSE_STATES:
        raise StateSpaceTooLarge(f"dense subspace limited to {MAX_DENSE_STATES} states, got {space.size}")


def build_subspace(space: StateSpace, a: Covering, tol: float = DEFAULT_TOL) -> CylinderSubspace:
    """Cylinder subspace of ``a``, built from its canonical antichain.

    The empty covering is treated as ``{∅}`` (the constants).
    Equivalent coverings give the identical object.
    """
    if a.index_set != space.index_set:
        raise IndexSetMismatch()
    _guard(space)
    return _build(space, canonical(nonempty(a)), float(tol))


def member(f: PositiveTable, a: Covering, tol: float = DEFAULT_TOL) -> Membership:
    """Whether ``f`` factorises along ``a``, with the log-domain residual.

    ``f`` is a member when ``max|log f - P log f| <= tol * (1 + max|log f|)``,
    ``P`` being the orthogonal projector onto the cylinder span.
    """
    return build_subspace(f.space, a, tol).contains(f.log(), tol)


def member_uncached(f: PositiveTable, a: Covering, tol: float = DEFAULT_TOL) -> Membership:
    """:func:`member` without touching the subspace cache (for one-off sweeps)."""
    if a.index_set != f.space.index_set:
        raise IndexSetMismatch()
    _guard(f.space)
    return _build.__wrapped__(f.space, canonical(nonempty(a)), float(tol)).contains(f.log(), tol)


def intersect_oracle(space: StateSpace, a: Covering, b: Covering) -> OracleDims:
    """Dimensions of the spans of ``a``, ``b``, their sum and their intersection.

    Ranks come straight from the raw indicator matrices, without going
    through any covering meet.
    """
    if a.index_set != space.index_set or b.index_set != space.index_set:
        raise IndexSetMismatch()
    _guard(space)
    ma = _basis_matrix(space, sorted(nonempty(a).members))
    mb = _basis_matrix(space, sorted(nonempty(b).members))
    da = int(np.linalg.matrix_rank(ma))
    db = int(np.linalg.matrix_rank(mb))
    ds = int(np.linalg.matrix_rank(np.hstack([ma, mb])))
    return OracleDims(da, db, ds, da + db - ds)


def subspace_equal(space: StateSpace, a: Covering, b: Covering, tol: float = DEFAULT_TOL) -> bool:
    """Whether the two cylinder spans coincide (each basis lies in the other)."""
    sa = build_subspace(space, a, tol)
    sb = build_subspace(space, b, tol)
    for src, dst in ((sa, sb), (sb, sa)):
        resid = src.basis - dst.orth @ (dst.orth.T @ src.basis)
        if np.max(np.abs(resid)) > tol:
            return False
    return True


def intersection_basis(space: StateSpace, coverings: Sequence[Covering], tol: float = 1e-9) -> np.ndarray:
    """Orthonormal basis of the intersection of several cylinder spans.

    Computed from principal angles between the spans (cosines equal to one
    mark shared directions), independently of the covering algebra.
    """
    if not coverings:
        raise ValueError("need at least one covering")
    q = build_subspace(space, coverings[0]).orth
    for c in coverings[1:]:
        r = build_subspace(space, c).orth
        if q.shape[1] == 0:
            break
        u, s, _ = np.linalg.svd(q.T @ r, full_matrices=False)
        q = orthonormal_basis(q @ u[:, : int(np.sum(s > 1.0 - tol))])
    return q


def random_log_member(basis: np.ndarray, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    """Orthogonal projection of a Gaussian log-table onto ``span(basis)``.

    ``basis`` must have orthonormal columns.
    """
    y = rng.normal(scale=scale, size=basis.shape[0])
    return basis @ (basis.T @ y)


def interaction_dimension(space: StateSpace, a: Covering) -> int:
    """``sum over s in saturate(a) of prod_{i in s} (|E_i| - 1)``.

    A closed-form dimension count compared against the rank oracle in the
    tests; nothing in the package relies on it.
    """
    total = 0
    for s in saturate(nonempty(a)).members:
        term = 1
        for k in space.index_set.positions(s):
            term *= space.sizes[k] - 1
        total += term
    return total


def sample_member(
    space: StateSpace, coverings: Sequence[Covering], rng: np.random.Generator, scale: float = 1.0
) -> PositiveTable:
    """Random positive table lying in every listed factorisation space.

    A Gaussian log-table is projected onto the intersection of the spans
    (see :func:`intersection_basis`) and exponentiated.
    """
    return PositiveTable.from_log(space, random_log_member(intersection_basis(space, coverings), rng, scale))
