"""Explicit factor systems and the constructive side of the intersection property.

A :class:`FactorSystem` holds one positive table per covering member; its
product is a :class:`~factorspace.loglin.PositiveTable`.  The functions
here turn one factorisation into another:

* :func:`slice_factors` re-expresses a product that happens to depend only
  on ``x_a`` by freezing the coordinates outside ``a`` at an anchor.
* :func:`refactor_meet` takes two factorisations of the same table, along
  ``A`` and ``B``, and builds one along the meet ``A ⊓ B``, peeling one
  member of ``A`` at a time.
* :func:`minimal_factorization` finds the smallest covering class whose
  factorisation space contains a table, by exhaustive search.

Factors are never unique (any factor can trade constants or lower-order
terms with another); only products are part of the contract.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Tuple, Union

import numpy as np

from factorspace import kernels
from factorspace.covering import (
    Antichain,
    Covering,
    all_antichains,
    canonical,
    family_meet,
    meet,
    nonempty,
    split,
    top,
)
from factorspace.errors import FactorMismatch, FactorSpaceError, NotMember, NotPositive, TooManyVariables
from factorspace.loglin import DEFAULT_TOL, PositiveTable, _basis_matrix, member, member_uncached
from factorspace.state import PartialState, StateSpace

MAX_EXACT_VARIABLES = 5

AnchorLike = Union[None, PartialState, Mapping[str, str]]
Entries = List[Tuple[int, np.ndarray]]


@dataclass(frozen=True, eq=False)
class FactorSystem:
    """One strictly positive table on ``E_a`` for every member ``a`` of ``covering``."""

    space: StateSpace
    covering: Covering
    factors: Mapping[int, np.ndarray]

    def __post_init__(self):
        if self.covering.index_set != self.space.index_set:
            raise FactorSpaceError("covering and space disagree on the index set")
        if set(self.factors) != set(self.covering.members):
            raise FactorSpaceError("factor domains must match covering members exactly")
        clean = {}
        for a, t in self.factors.items():
            t = np.array(t, dtype=float).reshape(-1)
            if t.shape[0] != self.space.size_of(a):
                raise FactorSpaceError(
                    f"factor on {self.space.index_set.format(a)} needs {self.space.size_of(a)} values"
                )
            if not np.all(np.isfinite(t)) or np.any(t <= 0):
                raise NotPositive()
            t.setflags(write=False)
            clean[a] = t
        object.__setattr__(self, "factors", clean)

    def factor(self, subset) -> np.ndarray:
        return self.factors[self.space.mask(subset)]

    def to_dict(self) -> Dict:
        labels = self.space.index_set
        return {
            "covering": self.covering.to_labels(),
            "factors": {",".join(labels.labels_of(a)): self.factors[a].tolist() for a in self.covering.ordered()},
        }

    @classmethod
    def from_dict(cls, space: StateSpace, data: Mapping) -> "FactorSystem":
        cov = Covering.of(space.index_set, data["covering"])
        factors = {}
        for key, vals in data["factors"].items():
            labs = [x for x in key.split(",") if x != ""]
            factors[space.mask(labs)] = vals
        return cls(space, cov, factors)


def default_anchor(space: StateSpace) -> PartialState:
    """First symbol of every alphabet."""
    return PartialState(space, space.index_set.full, tuple(alpha[0] for alpha in space.alphabets))


def _anchor_indices(space: StateSpace, anchor: AnchorLike) -> Tuple[int, ...]:
    if anchor is None:
        return tuple(0 for _ in space.alphabets)
    if not isinstance(anchor, PartialState):
        anchor = PartialState.from_dict(space, anchor)
    if anchor.domain != space.index_set.full:
        raise FactorSpaceError("anchor must assign every label")
    return tuple(space.symbol_index(lab, v) for lab, v in anchor.as_dict().items())


def _lift(space: StateSpace, table: np.ndarray, inner: int, outer: int) -> np.ndarray:
    """A table on ``E_inner`` viewed as a table on ``E_outer`` (``inner`` within ``outer``)."""
    return table[space.projection_index(outer, inner)]


def _slice(space: StateSpace, table: np.ndarray, b: int, a: int, anchor: Tuple[int, ...]) -> np.ndarray:
    # table on E_b -> table on E_{b&a}, coordinates of b - a frozen at the anchor
    arr = table.reshape(space.shape_of(b))
    index = tuple(slice(None) if a >> k & 1 else anchor[k] for k in space.index_set.positions(b))
    return np.ascontiguousarray(arr[index]).reshape(-1)


def _slice_entries(space: StateSpace, entries: Entries, a: int, anchor: Tuple[int, ...]) -> Entries:
    return [(b & a, _slice(space, t, b, a, anchor)) for b, t in entries]


def _collect(space: StateSpace, entries: Entries) -> FactorSystem:
    # entries with the same domain are multiplied together
    merged: Dict[int, np.ndarray] = {}
    for d, t in entries:
        merged[d] = merged[d] * t if d in merged else t
    return FactorSystem(space, Covering(space.index_set, frozenset(merged)), merged)


def _entries(fs: FactorSystem) -> Entries:
    return [(a, fs.factors[a]) for a in fs.covering.ordered()]


def eval_product(fs: FactorSystem) -> PositiveTable:
    """Pointwise product of all factors, ``f(x) = prod_a f_a(x_a)``."""
    space = fs.space
    out = np.ones(space.size)
    for a, t in fs.factors.items():
        out = out * t[space.cylinder_index(a)]
    return PositiveTable(space, out)


def max_rel_err(x: np.ndarray, y: np.ndarray) -> float:
    return float(np.max(np.abs(x - y) / np.abs(y))) if y.size else 0.0


def slice_factors(fs: FactorSystem, a, anchor: AnchorLike = None, tol: float = DEFAULT_TOL) -> FactorSystem:
    """Factorisation along ``{a} ⊓ B`` of a product over ``B`` that lies in ``G_a``.

    Each factor ``g_b`` is replaced by ``x_{b&a} -> g_b(x_{b&a} c_{b-a})``
    with ``c`` the anchor.  Raises :class:`NotMember` if the product does
    not depend on ``x_a`` alone.
    """
    space = fs.space
    a = space.mask(a)
    check = member(eval_product(fs), Covering._raw(space.index_set, [a]), tol)
    if not check.is_member:
        raise NotMember(f"input not in G_a: residual={check.residual:.6g}", check.residual)
    return _collect(space, _slice_entries(space, _entries(fs), a, _anchor_indices(space, anchor)))


def _refactor(space: StateSpace, a_entries: Entries, b_entries: Entries, anchor: Tuple[int, ...]) -> Entries:
    if not a_entries:
        return []
    alpha, _ = a_entries[0]
    if len(a_entries) == 1:
        return _slice_entries(space, b_entries, alpha, anchor)
    rest = a_entries[1:]
    # h1 = f_alpha = g / prod_{c in rest} f_c depends on x_alpha only; slice every factor of that quotient
    k_rest = _slice_entries(space, [(c, 1.0 / t) for c, t in rest], alpha, anchor)
    k_b = _slice_entries(space, b_entries, alpha, anchor)
    # f2 = f / k_b has explicit factorisations along rest and along B
    f2_rest = [(c, t * _lift(space, k, d, c)) for (c, t), (d, k) in zip(rest, k_rest)]
    f2_b = [(b, t / _lift(space, k, d, b)) for (b, t), (d, k) in zip(b_entries, k_b)]
    return k_b + _refactor(space, f2_rest, f2_b, anchor)


def refactor_meet(
    f: PositiveTable,
    fs_a: FactorSystem,
    fs_b: FactorSystem,
    anchor: AnchorLike = None,
    tol: float = DEFAULT_TOL,
) -> FactorSystem:
    """Factor system along the raw meet ``A ⊓ B`` whose product is ``f``.

    ``fs_a`` and ``fs_b`` must both multiply out to ``f`` (relative error
    at most ``tol``).  Members of ``A`` are peeled in canonical order.
    """
    space = f.space
    if fs_a.space != space or fs_b.space != space:
        raise FactorSpaceError("factor systems live on a different space")
    err = max(max_rel_err(eval_product(fs_a).values, f.values), max_rel_err(eval_product(fs_b).values, f.values))
    if err > tol:
        raise FactorMismatch(f"factor systems disagree: max rel err={err:.6g}")
    entries = _refactor(space, _entries(fs_a), _entries(fs_b), _anchor_indices(space, anchor))
    out = _collect(space, entries)
    # domains are exactly the pairwise intersections; keep the covering identical to meet(A, B)
    want = meet(fs_a.covering, fs_b.covering)
    assert out.covering.members == want.members
    return out


def extract_factors(f: PositiveTable, a: Covering, tol: float = DEFAULT_TOL) -> FactorSystem:
    """Some factor system along ``a`` whose product is ``f``.

    One least-squares solve of ``log f`` on the indicator columns of
    ``canonical(a)``; members of ``a`` that are not maximal get the
    constant factor 1.  The empty covering is read as ``{∅}``.
    """
    space = f.space
    a = nonempty(a)
    check = member(f, a, tol)
    if not check.is_member:
        raise NotMember(f"table does not factorise along the covering: residual={check.residual:.6g}", check.residual)
    top_members = canonical(a).ordered()
    coef, *_ = np.linalg.lstsq(_basis_matrix(space, top_members), f.log(), rcond=None)
    factors = {m: np.ones(space.size_of(m)) for m in a.members}
    start = 0
    for m in top_members:
        stop = start + space.size_of(m)
        factors[m] = np.exp(coef[start:stop])
        start = stop
    return FactorSystem(space, a, factors)


def minimal_factorization(f: PositiveTable, tol: float = DEFAULT_TOL) -> Antichain:
    """Canonical antichain of the smallest factorisation class containing ``f``.

    Visits every antichain of the power set (Dedekind-many: 168 for four
    variables, 7581 for five), keeps those whose space contains ``f`` and
    intersects their saturations.  Limited to five variables.
    """
    index_set = f.space.index_set
    n = index_set.n
    if n > MAX_EXACT_VARIABLES:
        raise TooManyVariables("exact minimal factorization limited to n≤5; use graphical_hull")
    acc = (1 << (1 << n)) - 1
    for k in all_antichains(index_set):
        if acc == kernels.downset_bits(list(k.members)) & acc:
            # already below k; membership cannot shrink the intersection
            continue
        if member_uncached(f, k, tol).is_member:
            acc &= kernels.downset_bits(list(k.members))
    survivors = [s for s in range(1 << n) if acc >> s & 1]
    return canonical(Covering._raw(index_set, survivors))


def graphical_hull(f: PositiveTable, tol: float = DEFAULT_TOL) -> Antichain:
    """Meet of the separating splits ``[i, j]`` that contain ``f`` (``{I}`` if none do).

    Always at or above :func:`minimal_factorization`; it cannot see missing
    higher-order interactions inside a clique.
    """
    index_set = f.space.index_set
    labels = index_set.labels
    family = []
    for p in range(len(labels)):
        for q in range(p + 1, len(labels)):
            c = split(index_set, labels[p], labels[q])
            if member(f, c, tol).is_member:
                family.append(c)
    if not family:
        return top(index_set)
    return canonical(family_meet(family))
