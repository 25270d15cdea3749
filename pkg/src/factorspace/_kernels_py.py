"""Pure-Python bitmask kernels.

Reference implementation of the hot combinatorial loops.  The compiled
module ``factorspace._kernels`` exposes the same functions with the same
signatures and must return identical results; ``factorspace.kernels``
picks one at import time.

A subset of an ``n``-element index set is an ``int`` whose bit ``k`` is set
when the ``k``-th label belongs to it.  A family of subsets is a list of
such ints.  Every function that returns a family returns it sorted by
integer value with duplicates removed.
"""

from __future__ import annotations

from typing import Iterable, List, Sequence


def popcount(x: int) -> int:
    return x.bit_count()


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def meet(a: Sequence[int], b: Sequence[int]) -> List[int]:
    """Pairwise intersections ``{x & y : x in a, y in b}``."""
    return sorted({x & y for x in a for y in b})


def union(a: Sequence[int], b: Sequence[int]) -> List[int]:
    return sorted(set(a) | set(b))


def leq(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff every member of ``a`` is contained in some member of ``b``."""
    for x in a:
        for y in b:
            if x & ~y == 0:
                break
        else:
            return False
    return True


def saturate(a: Sequence[int], n: int) -> List[int]:
    """Downward closure of ``a`` inside the power set of ``n`` labels."""
    out = set()
    for m in a:
        if m in out:
            continue
        sub = m
        while True:
            out.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & m
    return sorted(out)


def maximal(a: Sequence[int]) -> List[int]:
    """Members of ``a`` not strictly contained in another member."""
    uniq = sorted(set(a), key=int.bit_count, reverse=True)
    kept: List[int] = []
    for m in uniq:
        for k in kept:
            if m & ~k == 0:
                break
        else:
            kept.append(m)
    return sorted(kept)


def downset_bits(a: Iterable[int]) -> int:
    """Saturation of ``a`` packed as one int with bit ``s`` set for each member ``s``."""
    out = 0
    for m in a:
        sub = m
        while True:
            out |= 1 << sub
            if sub == 0:
                break
            sub = (sub - 1) & m
    return out


def antichains(n: int) -> List[List[int]]:
    """Every antichain of the power set of ``n`` labels, the empty one included.

    Antichains are in bijection with downsets, so this walks the downsets:
    subsets are visited by increasing size and a subset may join only when
    all of its one-smaller subsets already did.  There are Dedekind-many
    results (2, 3, 6, 20, 168, 7581 for n = 0..5).
    """
    order = sorted(range(1 << n), key=lambda s: (popcount(s), s))
    total = len(order)
    out: List[List[int]] = []

    def allowed(down: int, s: int) -> bool:
        for i in _bits(s):
            if not (down >> (s ^ (1 << i))) & 1:
                return False
        return True

    def walk(pos: int, down: int) -> None:
        if pos == total:
            out.append(_downset_maximal(down, n))
            return
        s = order[pos]
        walk(pos + 1, down)
        if allowed(down, s):
            walk(pos + 1, down | (1 << s))

    walk(0, 0)
    return out


def _downset_maximal(down: int, n: int) -> List[int]:
    top = []
    for s in range(1 << n):
        if not (down >> s) & 1:
            continue
        for i in range(n):
            if not s >> i & 1 and (down >> (s | (1 << i))) & 1:
                break
        else:
            top.append(s)
    return top


def maximal_cliques(adj: Sequence[int]) -> List[int]:
    """Maximal cliques of the graph with adjacency masks ``adj`` (Bron-Kerbosch with pivot)."""
    out: List[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if p == 0 and x == 0:
            out.append(r)
            return
        pivot_pool = p | x
        best, best_deg = -1, -1
        for u in _bits(pivot_pool):
            deg = popcount(p & adj[u])
            if deg > best_deg:
                best, best_deg = u, deg
        for v in _bits(p & ~adj[best]):
            bit = 1 << v
            expand(r | bit, p & adj[v], x & adj[v])
            p &= ~bit
            x |= bit

    expand(0, (1 << len(adj)) - 1, 0)
    return sorted(out)
