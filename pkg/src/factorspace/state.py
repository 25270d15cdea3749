"""Finite product state spaces, partial configurations, and flat indexing.

Configurations of a subset ``a`` are enumerated in row-major order: the
last label of the index set (among those in ``a``) varies fastest.  That
order fixes the layout of every dense table in the package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np

from factorspace.covering import IndexSet, SubsetLike
from factorspace.errors import DomainError, FactorSpaceError, StateSpaceTooLarge

MAX_STATES = 2**31


@dataclass(frozen=True)
class StateSpace:
    """Index set plus one finite, non-empty alphabet per label."""

    index_set: IndexSet
    alphabets: Tuple[Tuple[str, ...], ...]

    def __post_init__(self):
        alphabets = tuple(tuple(str(s) for s in alpha) for alpha in self.alphabets)
        if len(alphabets) != self.index_set.n:
            raise FactorSpaceError("one alphabet per label required")
        for lab, alpha in zip(self.index_set.labels, alphabets):
            if not alpha:
                raise FactorSpaceError(f"empty alphabet for label {lab!r}")
            if len(set(alpha)) != len(alpha):
                raise FactorSpaceError(f"duplicate symbols in alphabet of {lab!r}")
        total = 1
        for alpha in alphabets:
            total *= len(alpha)
            if total > MAX_STATES:
                raise StateSpaceTooLarge(f"state count exceeds {MAX_STATES}")
        object.__setattr__(self, "alphabets", alphabets)

    @classmethod
    def from_alphabets(cls, alphabets: Mapping[str, Sequence[str]]) -> "StateSpace":
        """Build from ``{label: [symbols]}``; label order is the mapping's order."""
        return cls(IndexSet(tuple(alphabets)), tuple(tuple(v) for v in alphabets.values()))

    @classmethod
    def uniform(cls, labels: Sequence, k: int) -> "StateSpace":
        """Every label gets the alphabet ``0..k-1``."""
        return cls(IndexSet(tuple(labels)), tuple(tuple(str(s) for s in range(k)) for _ in labels))

    def to_dict(self) -> Dict:
        return {"alphabets": {lab: list(alpha) for lab, alpha in zip(self.index_set.labels, self.alphabets)}}

    @property
    def labels(self) -> Tuple[str, ...]:
        return self.index_set.labels

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(a) for a in self.alphabets)

    @property
    def size(self) -> int:
        return self.size_of(self.index_set.full)

    def size_of(self, mask: int) -> int:
        out = 1
        for k in self.index_set.positions(mask):
            out *= len(self.alphabets[k])
        return out

    def shape_of(self, mask: int) -> Tuple[int, ...]:
        return tuple(len(self.alphabets[k]) for k in self.index_set.positions(mask))

    def mask(self, subset: SubsetLike) -> int:
        return self.index_set.mask(subset)

    def sub(self, mask: int) -> "StateSpace":
        """The state space of the labels in ``mask``."""
        pos = self.index_set.positions(mask)
        return StateSpace(self.index_set.sub(mask), tuple(self.alphabets[k] for k in pos))

    def symbol_index(self, label, symbol) -> int:
        alpha = self.alphabets[self.index_set.position(label)]
        try:
            return alpha.index(str(symbol))
        except ValueError:
            raise FactorSpaceError(f"symbol {symbol!r} not in alphabet of {label!r}") from None

    def projection_index(self, outer: int, inner: int) -> np.ndarray:
        """For each configuration of ``outer`` (row-major), the flat index of its restriction to ``inner``."""
        return _projection_index(self, outer, inner)

    def cylinder_index(self, mask: int) -> np.ndarray:
        """Flat index into ``E_mask`` of every full configuration."""
        return _projection_index(self, self.index_set.full, mask)


@lru_cache(maxsize=4096)
def _projection_index(space: StateSpace, outer: int, inner: int) -> np.ndarray:
    if inner & ~outer:
        raise DomainError("restriction outside domain")
    if space.size_of(outer) > MAX_STATES:
        raise StateSpaceTooLarge(f"state count exceeds {MAX_STATES}")
    outer_pos = space.index_set.positions(outer)
    outer_shape = tuple(len(space.alphabets[k]) for k in outer_pos)
    inner_axes = [outer_pos.index(k) for k in space.index_set.positions(inner)]
    if not inner_axes:
        out = np.zeros(int(np.prod(outer_shape, dtype=np.int64)), dtype=np.int64)
    else:
        grids = np.indices(outer_shape, dtype=np.int64).reshape(len(outer_shape), -1)
        inner_shape = tuple(outer_shape[ax] for ax in inner_axes)
        out = np.ravel_multi_index(tuple(grids[inner_axes]), inner_shape).astype(np.int64)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class PartialState:
    """An assignment of one symbol to each label of ``domain``.

    ``values`` lists the symbols in label order of the domain.
    """

    space: StateSpace
    domain: int
    values: Tuple[str, ...]

    def __post_init__(self):
        labels = self.space.index_set.labels_of(self.domain)
        values = tuple(str(v) for v in self.values)
        if len(values) != len(labels):
            raise FactorSpaceError("assignment must cover the domain exactly")
        for lab, v in zip(labels, values):
            self.space.symbol_index(lab, v)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_dict(cls, space: StateSpace, assignment: Mapping[str, str]) -> "PartialState":
        domain = space.mask(list(assignment))
        labels = space.index_set.labels_of(domain)
        return cls(space, domain, tuple(assignment[lab] for lab in labels))

    @classmethod
    def empty(cls, space: StateSpace) -> "PartialState":
        return cls(space, 0, ())

    def as_dict(self) -> Dict[str, str]:
        return dict(zip(self.space.index_set.labels_of(self.domain), self.values))

    def flat_index(self) -> int:
        """Row-major position of this configuration within ``E_domain``."""
        idx = 0
        for lab, v in zip(self.space.index_set.labels_of(self.domain), self.values):
            k = self.space.index_set.position(lab)
            idx = idx * len(self.space.alphabets[k]) + self.space.symbol_index(lab, v)
        return idx

    def __repr__(self) -> str:
        body = ",".join(f"{k}={v}" for k, v in self.as_dict().items())
        return f"PartialState({body})"


def restrict(x: PartialState, a: SubsetLike) -> PartialState:
    """Projection of ``x`` onto ``a``, which must lie inside ``x``'s domain."""
    a = x.space.mask(a)
    if a & ~x.domain:
        raise DomainError("restriction outside domain")
    d = x.as_dict()
    return PartialState(x.space, a, tuple(d[lab] for lab in x.space.index_set.labels_of(a)))


def glue(u: PartialState, v: PartialState) -> PartialState:
    """Join two assignments on disjoint domains."""
    if u.space != v.space:
        raise FactorSpaceError("partial states live on different spaces")
    if u.domain & v.domain:
        raise DomainError("overlapping glue")
    d = {**u.as_dict(), **v.as_dict()}
    dom = u.domain | v.domain
    return PartialState(u.space, dom, tuple(d[lab] for lab in u.space.index_set.labels_of(dom)))


def enumerate_states(space: StateSpace, a: SubsetLike) -> List[PartialState]:
    """All configurations of ``a`` in row-major order (last label fastest)."""
    a = space.mask(a)
    pos = space.index_set.positions(a)
    return [PartialState(space, a, combo) for combo in itertools.product(*(space.alphabets[k] for k in pos))]
