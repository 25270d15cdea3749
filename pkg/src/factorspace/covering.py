"""Coverings of a finite index set and their pre-order algebra.

A *covering* is any finite family of subsets of the index set ``I``; it
may contain the empty subset and may itself be empty.  Coverings are
pre-ordered by ``A <= B`` iff every member of ``A`` sits inside some member
of ``B``.  Two coverings are equivalent when each is below the other, and
the canonical representative of a class is the antichain of maximal
members.

Subsets are stored as bitmasks over the label order of the
:class:`IndexSet`; the set algebra itself runs in :mod:`factorspace.kernels`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, List, Sequence, Tuple, Union

from factorspace import kernels
from factorspace.errors import EmptyFamily, FactorSpaceError, IndexSetMismatch

MAX_LABELS = 62

SubsetLike = Union[int, Iterable]


@dataclass(frozen=True)
class IndexSet:
    """Ordered, duplicate-free variable labels.

    Bit ``k`` of a subset mask refers to ``labels[k]``.  An empty label
    tuple is allowed so that marginals on the empty set have a home; the
    JSON loaders reject it.
    """

    labels: Tuple[str, ...]

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        if len(set(labels)) != len(labels):
            raise FactorSpaceError(f"duplicate labels in index set: {list(labels)}")
        if len(labels) > MAX_LABELS:
            raise FactorSpaceError(f"index set limited to {MAX_LABELS} labels")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_pos", {lab: k for k, lab in enumerate(labels)})

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    def __len__(self) -> int:
        return len(self.labels)

    def position(self, label) -> int:
        try:
            return self._pos[str(label)]
        except KeyError:
            raise FactorSpaceError(f"unknown label {label!r}") from None

    def mask(self, subset: SubsetLike) -> int:
        """Bitmask of ``subset``, given as labels or as an existing mask."""
        if isinstance(subset, int):
            if subset < 0 or subset & ~self.full:
                raise FactorSpaceError(f"mask {subset:#x} outside index set")
            return subset
        if isinstance(subset, str):
            subset = [subset]
        m = 0
        for lab in subset:
            m |= 1 << self.position(lab)
        return m

    def labels_of(self, mask: int) -> Tuple[str, ...]:
        return tuple(lab for k, lab in enumerate(self.labels) if mask >> k & 1)

    def positions(self, mask: int) -> Tuple[int, ...]:
        return tuple(k for k in range(len(self.labels)) if mask >> k & 1)

    def complement(self, mask: int) -> int:
        return self.full & ~mask

    def sort_key(self, mask: int):
        # size descending, then lexicographic on label positions
        pos = self.positions(mask)
        return (-len(pos), pos)

    def sub(self, mask: int) -> "IndexSet":
        """Index set made of the labels in ``mask``, in the same relative order."""
        return IndexSet(self.labels_of(mask))

    def transfer(self, mask: int, other: "IndexSet") -> int:
        """Re-express ``mask`` over ``other`` (which must contain those labels)."""
        return other.mask(self.labels_of(mask))

    def format(self, mask: int) -> str:
        return "{" + ",".join(self.labels_of(mask)) + "}"


@dataclass(frozen=True, eq=False)
class Covering:
    index_set: IndexSet
    members: FrozenSet[int]

    def __post_init__(self):
        members = frozenset(self.members)
        full = self.index_set.full
        for m in members:
            if not isinstance(m, int) or m < 0 or m & ~full:
                raise FactorSpaceError(f"covering member {m!r} outside index set")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, index_set: IndexSet, members: Iterable[SubsetLike]) -> "Covering":
        """Build from subsets given as label lists (or masks)."""
        return cls(index_set, frozenset(index_set.mask(m) for m in members))

    @classmethod
    def _raw(cls, index_set: IndexSet, members) -> "Covering":
        # trusted constructor for kernel output; skips validation
        obj = object.__new__(cls)
        object.__setattr__(obj, "index_set", index_set)
        object.__setattr__(obj, "members", frozenset(members))
        return obj

    def ordered(self) -> Tuple[int, ...]:
        """Members in canonical order: size descending, then lexicographic."""
        return tuple(sorted(self.members, key=self.index_set.sort_key))

    def to_labels(self) -> List[List[str]]:
        return [list(self.index_set.labels_of(m)) for m in self.ordered()]

    def __iter__(self) -> Iterator[int]:
        return iter(self.ordered())

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other) -> bool:
        # exact set equality; an Antichain equals a Covering with the same members
        if not isinstance(other, Covering):
            return NotImplemented
        return self.members == other.members and (
            self.index_set is other.index_set or self.index_set == other.index_set
        )

    def __hash__(self) -> int:
        return hash((self.index_set, self.members))

    def __contains__(self, subset) -> bool:
        return self.index_set.mask(subset) in self.members

    def __repr__(self) -> str:
        inner = ",".join(self.index_set.format(m) for m in self.ordered())
        return f"{type(self).__name__}({{{inner}}})"


@dataclass(frozen=True, eq=False, repr=False)
class Antichain(Covering):
    """A covering whose members are pairwise incomparable under inclusion."""

    def __post_init__(self):
        super().__post_init__()
        if len(kernels.maximal(list(self.members))) != len(self.members):
            raise FactorSpaceError("members are not pairwise incomparable")


def _check(a: Covering, b: Covering) -> None:
    if a.index_set is not b.index_set and a.index_set != b.index_set:
        raise IndexSetMismatch()


def leq(a: Covering, b: Covering) -> bool:
    """``a <= b``: every member of ``a`` is contained in a member of ``b``."""
    _check(a, b)
    return kernels.leq(list(a.members), list(b.members))


def equiv(a: Covering, b: Covering) -> bool:
    return leq(a, b) and leq(b, a)


def union(a: Covering, b: Covering) -> Covering:
    _check(a, b)
    return Covering._raw(a.index_set, a.members | b.members)


def meet(a: Covering, b: Covering) -> Covering:
    """All pairwise intersections ``{x & y : x in a, y in b}``; the empty set is kept."""
    _check(a, b)
    return Covering._raw(a.index_set, kernels.meet(list(a.members), list(b.members)))


def saturate(a: Covering) -> Covering:
    """Downward closure of ``a`` in the power set of the index set."""
    return Covering._raw(a.index_set, kernels.saturate(list(a.members), a.index_set.n))


def canonical(a: Covering) -> Antichain:
    """Maximal elements of the saturation, i.e. of ``a`` itself.

    ``canonical(a) == canonical(b)`` exactly when ``a`` and ``b`` are
    equivalent.  The empty set survives only if it is the sole member.
    """
    return Antichain._raw(a.index_set, kernels.maximal(list(a.members)))


def family_meet(family: Sequence[Covering]) -> Covering:
    """Left fold of :func:`meet` over a non-empty list."""
    family = list(family)
    if not family:
        raise EmptyFamily()
    out = family[0]
    for c in family[1:]:
        out = meet(out, c)
    return out


def top(index_set: IndexSet) -> Antichain:
    """The covering ``{I}``."""
    return Antichain._raw(index_set, [index_set.full])


def constants(index_set: IndexSet) -> Antichain:
    """The covering ``{∅}`` whose factorisation space is the constants."""
    return Antichain._raw(index_set, [0])


def nonempty(a: Covering) -> Covering:
    """Replace the empty covering by ``{∅}``; both describe the constants."""
    if a.members:
        return a
    return constants(a.index_set)


def all_antichains(index_set: IndexSet, include_empty: bool = False) -> List[Antichain]:
    """Every antichain of the power set of ``index_set``, deterministically ordered."""
    out = [Antichain._raw(index_set, m) for m in kernels.antichains(index_set.n)]
    if not include_empty:
        out = [a for a in out if a.members]
    return out


def split(index_set: IndexSet, i, j) -> Covering:
    """The two-member covering ``{I - {j}, I - {i}}`` separating labels ``i`` and ``j``."""
    mi, mj = index_set.mask([i]), index_set.mask([j])
    if mi == mj:
        raise FactorSpaceError("split needs two distinct labels")
    return Covering._raw(index_set, [index_set.full & ~mj, index_set.full & ~mi])
