import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from factorspace import covering as cv
from factorspace.covering import Antichain, Covering, IndexSet
from factorspace.errors import EmptyFamily, FactorSpaceError, IndexSetMismatch

from conftest import cov, idx

I3 = idx("123")
I4 = idx("1234")


def as_sets(c):
    return {frozenset(m) for m in c.to_labels()}


def sets(*members):
    return {frozenset(m) for m in members}


def fs_meet(a, b):
    return {x & y for x in a for y in b}


def fs_maximal(a):
    return {x for x in a if not any(x < y for y in a)}


# -- examples with hand-checked answers ------------------------------------


def test_worked_meet_example():
    a = cov(I4, "124", "13")
    b = cov(I4, "24", "23")
    m = cv.meet(a, b)
    assert as_sets(m) == sets("24", "2", "", "3")
    assert as_sets(cv.canonical(m)) == sets("24", "3")
    assert as_sets(cv.canonical(m)) == fs_maximal(fs_meet(as_sets(a), as_sets(b)))


def test_union_equivalence_example():
    a = cov(I4, "12", "13")
    u = cv.union(a, cov(I4, "2"))
    assert as_sets(u) == sets("12", "13", "2")
    assert cv.equiv(u, a)
    assert cv.canonical(u) == cv.canonical(a)
    assert as_sets(cv.canonical(u)) == sets("12", "13")


def test_leq_examples():
    assert cv.leq(cov(I4, "12", "13"), cov(I4, "1234"))
    assert cv.leq(cov(I4, "12", "13"), cov(I4, "12", "13"))
    assert not cv.leq(cov(I3, "12"), cov(I3, "23"))


def test_equiv_examples():
    a = cov(I3, "12", "13")
    assert cv.equiv(a, a)
    assert not cv.equiv(cov(I3, "1"), cov(I3, "12"))


def test_union_identities():
    a = cov(I3, "12", "3")
    assert cv.union(a, Covering.of(I3, [])) == a
    assert cv.union(cov(I3, "1"), cov(I3, "1")) == cov(I3, "1")


def test_meet_with_top_and_self():
    a = cov(I3, "12", "3")
    assert cv.meet(cv.top(I3), a) == a
    assert cv.equiv(cv.meet(a, a), a)


def test_saturate_examples():
    i2 = idx("12")
    assert as_sets(cv.saturate(cov(i2, "12"))) == sets("", "1", "2", "12")
    assert cv.saturate(Covering.of(I3, [])).members == frozenset()


def test_canonical_examples():
    assert as_sets(cv.canonical(cov(I3, "12", "13", "2"))) == sets("12", "13")
    assert as_sets(cv.canonical(cov(I3, ""))) == sets("")
    assert as_sets(cv.canonical(cov(I4, "24", "2", "", "3"))) == sets("24", "3")
    assert isinstance(cv.canonical(cov(I3, "1")), Antichain)


def test_family_meet_of_two_splits():
    # [1,3] = {{1,2},{2,3}}, [1,2] = {{1,3},{2,3}}; {2,3} survives as 23 & 23
    got = cv.family_meet([cv.split(I3, "1", "3"), cv.split(I3, "1", "2")])
    want = fs_meet(sets("12", "23"), sets("13", "23"))
    assert as_sets(got) == want
    assert as_sets(cv.canonical(got)) == sets("1", "23")


def test_family_meet_of_all_splits_is_singletons():
    fam = [cv.split(I3, i, j) for i, j in itertools.combinations("123", 2)]
    assert as_sets(cv.canonical(cv.family_meet(fam))) == sets("1", "2", "3")


def test_family_meet_trivial_cases():
    a = cov(I3, "12", "3")
    assert cv.family_meet([a]) == a
    assert cv.equiv(cv.family_meet([cv.top(I3), a]), a)
    with pytest.raises(EmptyFamily, match="empty family"):
        cv.family_meet([])


def test_split():
    assert as_sets(cv.split(I3, "1", "3")) == sets("12", "23")
    assert as_sets(cv.split(idx("0123"), "1", "2")) == sets("013", "023")
    assert as_sets(cv.split(idx("12"), "1", "2")) == sets("1", "2")


def test_index_set_mismatch():
    with pytest.raises(IndexSetMismatch, match="index-set mismatch"):
        cv.leq(cov(I3, "1"), cov(I4, "1"))
    with pytest.raises(IndexSetMismatch):
        cv.meet(cov(I3, "1"), cov(idx("321"), "1"))


def test_invalid_inputs():
    with pytest.raises(FactorSpaceError):
        IndexSet(("1", "1"))
    with pytest.raises(FactorSpaceError):
        Covering.of(I3, [["4"]])
    with pytest.raises(FactorSpaceError):
        Antichain.of(I3, [["1"], ["1", "2"]])


def test_equality_across_subclasses():
    a = Antichain.of(I3, [["1", "2"]])
    c = Covering.of(I3, [["1", "2"]])
    assert a == c and hash(a) == hash(c)


def test_all_antichains_counts():
    assert len(cv.all_antichains(I3)) == 19
    assert len(cv.all_antichains(I3, include_empty=True)) == 20


def test_repr_and_labels_round_trip():
    c = cov(I4, "24", "3")
    assert repr(c) == "Covering({{2,4},{3}})"
    assert Covering.of(I4, c.to_labels()) == c


# -- algebraic laws against a frozenset model ------------------------------

subsets4 = st.frozensets(st.sampled_from("1234"))
families = st.frozensets(subsets4, max_size=6)


def build(fam):
    return Covering.of(I4, [sorted(s) for s in fam])


@given(families, families)
def test_meet_union_match_set_model(a, b):
    A, B = build(a), build(b)
    assert as_sets(cv.meet(A, B)) == fs_meet(a, b)
    assert as_sets(cv.union(A, B)) == a | b
    assert cv.leq(A, B) == all(any(x <= y for y in b) for x in a)


@given(families)
def test_saturate_and_canonical_match_set_model(a):
    A = build(a)
    down = {frozenset(s) for m in a for r in range(len(m) + 1) for s in itertools.combinations(m, r)}
    assert as_sets(cv.saturate(A)) == down
    assert as_sets(cv.canonical(A)) == fs_maximal(a)


@given(families, families, families)
def test_lattice_laws(a, b, c):
    A, B, C = build(a), build(b), build(c)
    k = cv.canonical
    assert k(cv.meet(A, B)) == k(cv.meet(B, A))
    assert k(cv.meet(cv.meet(A, B), C)) == k(cv.meet(A, cv.meet(B, C)))
    assert k(cv.meet(cv.union(A, B), C)) == k(cv.union(cv.meet(A, C), cv.meet(B, C)))
    assert cv.leq(cv.meet(A, B), A)
    assert cv.leq(A, cv.union(A, B))
    # meet is the greatest lower bound
    if cv.leq(C, A) and cv.leq(C, B):
        assert cv.leq(C, cv.meet(A, B))
    assert cv.equiv(A, B) == (cv.saturate(A) == cv.saturate(B))
    assert cv.equiv(A, B) == (k(A) == k(B))
