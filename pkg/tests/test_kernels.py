import itertools
import os
import subprocess
import sys

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from factorspace import _kernels_py, kernels

from conftest import BACKENDS

masks4 = st.lists(st.integers(0, 15), max_size=10)
masks6 = st.lists(st.integers(0, 63), max_size=12)


def brute_antichains(n):
    """All antichains of P([n]) by filtering every family of subsets."""
    subsets = range(1 << n)
    out = []
    for bits in range(1 << (1 << n)):
        fam = [s for s in subsets if bits >> s & 1]
        if all(not (a != b and a & ~b == 0) for a in fam for b in fam):
            out.append(sorted(fam))
    return out


@pytest.mark.parametrize("n,count", [(0, 2), (1, 3), (2, 6), (3, 20), (4, 168), (5, 7581)])
def test_antichain_counts_are_dedekind_numbers(backend, n, count):
    assert len(backend.antichains(n)) == count


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_antichains_match_brute_force(backend, n):
    assert sorted(backend.antichains(n)) == sorted(brute_antichains(n))


def test_antichain_order_is_backend_independent():
    if len(BACKENDS) < 2:
        pytest.skip("compiled kernels not built")
    py, c = BACKENDS
    assert py.antichains(5) == c.antichains(5)


@given(masks6, masks6)
def test_meet_union_leq_against_sets(a, b):
    for k in BACKENDS:
        assert k.meet(a, b) == sorted({x & y for x in a for y in b})
        assert k.union(a, b) == sorted(set(a) | set(b))
        assert k.leq(a, b) == all(any(x | y == y for y in b) for x in a)


@given(masks6)
def test_saturate_and_maximal_against_brute_force(a):
    down = sorted({s for s in range(64) for m in a if s | m == m})
    top = sorted({m for m in a if not any(m != o and m | o == o for o in a)})
    for k in BACKENDS:
        assert k.saturate(a, 6) == down
        assert k.maximal(a) == top
        assert k.downset_bits(a) == sum(1 << s for s in down)


def test_saturate_wide_index_set(backend):
    # above 24 labels the compiled kernel switches to a set-based path
    m = (1 << 40) | (1 << 3) | 1
    assert backend.saturate([m], 41) == sorted([0, 1, 8, 9, 1 << 40, (1 << 40) | 1, (1 << 40) | 8, m])


@settings(max_examples=60)
@given(st.integers(1, 9), st.data())
def test_maximal_cliques_match_networkx(n, data):
    pairs = list(itertools.combinations(range(n), 2))
    chosen = data.draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    adj = [0] * n
    g = nx.Graph()
    g.add_nodes_from(range(n))
    for p, q in chosen:
        adj[p] |= 1 << q
        adj[q] |= 1 << p
        g.add_edge(p, q)
    want = sorted(sum(1 << v for v in c) for c in nx.find_cliques(g))
    for k in BACKENDS:
        assert k.maximal_cliques(adj) == want


def test_maximal_cliques_empty_graph(backend):
    assert backend.maximal_cliques([]) == [0]
    assert backend.maximal_cliques([0, 0, 0]) == [1, 2, 4]


def test_backend_selection_env_override():
    env = {**os.environ, "FACTORSPACE_PURE_PYTHON": "1"}
    out = subprocess.run(
        [sys.executable, "-c", "from factorspace import kernels; print(kernels.BACKEND)"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert out.stdout.strip() == "python"
    assert kernels.BACKEND in ("python", "cython")
    if kernels.BACKEND == "python":
        assert kernels.meet is _kernels_py.meet
