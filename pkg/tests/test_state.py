import itertools

import numpy as np
import pytest

from factorspace.errors import DomainError, FactorSpaceError, StateSpaceTooLarge
from factorspace.state import PartialState, StateSpace, enumerate_states, glue, restrict


@pytest.fixture
def mixed():
    return StateSpace.from_alphabets({"1": ["a", "b"], "2": ["x", "y", "z"], "3": ["0", "1"]})


def test_restrict_examples(mixed):
    x = PartialState.from_dict(mixed, {"1": "b", "2": "z", "3": "0"})
    assert restrict(x, ["1", "2"]).as_dict() == {"1": "b", "2": "z"}
    assert restrict(x, []) == PartialState.empty(mixed)
    assert restrict(x, ["1", "2", "3"]) == x
    with pytest.raises(DomainError, match="restriction outside domain"):
        restrict(restrict(x, ["1"]), ["2"])


def test_glue_examples(mixed):
    u = PartialState.from_dict(mixed, {"1": "a"})
    v = PartialState.from_dict(mixed, {"2": "y"})
    assert glue(u, v).as_dict() == {"1": "a", "2": "y"}
    assert glue(PartialState.empty(mixed), v) == v
    with pytest.raises(DomainError, match="overlapping glue"):
        glue(u, u)


def test_glue_of_complementary_restrictions(mixed):
    for x in enumerate_states(mixed, ["1", "2", "3"]):
        for r in range(4):
            for a in itertools.combinations("123", r):
                rest = [lab for lab in "123" if lab not in a]
                assert glue(restrict(x, a), restrict(x, rest)) == x


def test_enumerate_examples(mixed):
    assert enumerate_states(mixed, []) == [PartialState.empty(mixed)]
    b = StateSpace.uniform(["1", "2", "3"], 2)
    assert ["".join(s.values) for s in enumerate_states(b, ["1", "2"])] == ["00", "01", "10", "11"]
    assert len(enumerate_states(mixed, ["1", "2"])) == 6


def test_flat_index_is_row_major(mixed):
    states = enumerate_states(mixed, ["1", "2", "3"])
    assert [s.flat_index() for s in states] == list(range(12))
    assert mixed.size == 12 and mixed.sizes == (2, 3, 2)


def test_projection_index_matches_restriction(mixed):
    full = mixed.index_set.full
    for mask in range(8):
        idx = mixed.cylinder_index(mask)
        want = [restrict(s, mixed.index_set.labels_of(mask)).flat_index() for s in enumerate_states(mixed, full)]
        assert idx.tolist() == want
        assert not idx.flags.writeable


def test_projection_index_between_subsets(mixed):
    outer = mixed.mask(["2", "3"])
    idx = mixed.projection_index(outer, mixed.mask(["3"]))
    assert idx.tolist() == [0, 1, 0, 1, 0, 1]
    with pytest.raises(DomainError):
        mixed.projection_index(mixed.mask(["2"]), mixed.mask(["3"]))


def test_sub_space(mixed):
    s = mixed.sub(mixed.mask(["1", "3"]))
    assert s.labels == ("1", "3") and s.sizes == (2, 2)


def test_bad_spaces():
    with pytest.raises(FactorSpaceError):
        StateSpace.from_alphabets({"1": []})
    with pytest.raises(FactorSpaceError):
        StateSpace.from_alphabets({"1": ["a", "a"]})
    with pytest.raises(StateSpaceTooLarge):
        StateSpace.uniform([str(k) for k in range(40)], 2)
    space = StateSpace.uniform(["1"], 2)
    with pytest.raises(FactorSpaceError):
        PartialState.from_dict(space, {"1": "7"})


def test_empty_state_space_has_one_state():
    space = StateSpace.from_alphabets({"1": ["a"]}).sub(0)
    assert space.size == 1
    assert np.array_equal(space.cylinder_index(0), [0])
