# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bitmask kernels; same contract as ``factorspace._kernels_py``.

Masks are held as ``unsigned long long``, so families are limited to index
sets of at most 63 labels.  Callers enforce that bound.
"""

from libc.stdlib cimport malloc, free, qsort, calloc

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef int _cmp_u64(const void* pa, const void* pb) noexcept nogil:
    cdef u64 a = (<u64*>pa)[0]
    cdef u64 b = (<u64*>pb)[0]
    if a < b:
        return -1
    if a > b:
        return 1
    return 0


cdef inline int _popcount(u64 x) noexcept nogil:
    return __builtin_popcountll(x)


cdef u64* _load(object seq, Py_ssize_t* size) except NULL:
    cdef Py_ssize_t k = len(seq)
    cdef u64* buf = <u64*>malloc((k if k > 0 else 1) * sizeof(u64))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i = 0
    for m in seq:
        buf[i] = <u64>m
        i += 1
    size[0] = k
    return buf


cdef list _sorted_unique(u64* buf, Py_ssize_t k):
    cdef list out = []
    cdef Py_ssize_t i
    if k == 0:
        return out
    qsort(buf, k, sizeof(u64), _cmp_u64)
    out.append(buf[0])
    for i in range(1, k):
        if buf[i] != buf[i - 1]:
            out.append(buf[i])
    return out


def popcount(x):
    return _popcount(<u64>x)


def meet(a, b):
    cdef Py_ssize_t na, nb, i, j, k = 0
    cdef u64* pa = _load(a, &na)
    cdef u64* pb = NULL
    cdef u64* buf = NULL
    try:
        pb = _load(b, &nb)
        buf = <u64*>malloc((na * nb if na * nb > 0 else 1) * sizeof(u64))
        if buf == NULL:
            raise MemoryError()
        for i in range(na):
            for j in range(nb):
                buf[k] = pa[i] & pb[j]
                k += 1
        return _sorted_unique(buf, k)
    finally:
        free(pa)
        free(pb)
        free(buf)


def union(a, b):
    cdef Py_ssize_t na, nb, i
    cdef u64* pa = _load(a, &na)
    cdef u64* pb = NULL
    cdef u64* buf = NULL
    try:
        pb = _load(b, &nb)
        buf = <u64*>malloc((na + nb + 1) * sizeof(u64))
        if buf == NULL:
            raise MemoryError()
        for i in range(na):
            buf[i] = pa[i]
        for i in range(nb):
            buf[na + i] = pb[i]
        return _sorted_unique(buf, na + nb)
    finally:
        free(pa)
        free(pb)
        free(buf)


def leq(a, b):
    cdef Py_ssize_t na, nb, i, j
    cdef bint found
    cdef u64* pa = _load(a, &na)
    cdef u64* pb = NULL
    try:
        pb = _load(b, &nb)
        for i in range(na):
            found = False
            for j in range(nb):
                if pa[i] & ~pb[j] == 0:
                    found = True
                    break
            if not found:
                return False
        return True
    finally:
        free(pa)
        free(pb)


def saturate(a, int n):
    cdef Py_ssize_t na, i
    cdef u64 m, sub, s
    cdef u64 size
    cdef unsigned char* seen = NULL
    cdef u64* pa = _load(a, &na)
    cdef list out = []
    try:
        if n > 24:
            # flag table would be too large; fall back to a Python set
            acc = set()
            for i in range(na):
                m = pa[i]
                sub = m
                while True:
                    acc.add(sub)
                    if sub == 0:
                        break
                    sub = (sub - 1) & m
            return sorted(acc)
        size = (<u64>1) << n
        seen = <unsigned char*>calloc(size, 1)
        if seen == NULL:
            raise MemoryError()
        for i in range(na):
            m = pa[i]
            if seen[m]:
                continue
            sub = m
            while True:
                seen[sub] = 1
                if sub == 0:
                    break
                sub = (sub - 1) & m
        for s in range(size):
            if seen[s]:
                out.append(s)
        return out
    finally:
        free(pa)
        free(seen)


def maximal(a):
    cdef Py_ssize_t na, i, j, k = 0
    cdef bint dominated
    cdef u64* pa = _load(a, &na)
    cdef u64* keep = NULL
    try:
        keep = <u64*>malloc((na + 1) * sizeof(u64))
        if keep == NULL:
            raise MemoryError()
        for i in range(na):
            dominated = False
            for j in range(na):
                if pa[j] != pa[i] and pa[i] & ~pa[j] == 0:
                    dominated = True
                    break
            if not dominated:
                keep[k] = pa[i]
                k += 1
        return _sorted_unique(keep, k)
    finally:
        free(pa)
        free(keep)


def downset_bits(a):
    out = 0
    one = 1
    cdef u64 m, sub
    for mm in a:
        m = <u64>mm
        sub = m
        while True:
            out |= one << sub
            if sub == 0:
                break
            sub = (sub - 1) & m
    return out


cdef void _walk(int pos, u64 down, int n, int total, int* order, list out) except *:
    cdef int s, i
    cdef bint ok
    if pos == total:
        out.append(_downset_maximal(down, n))
        return
    s = order[pos]
    _walk(pos + 1, down, n, total, order, out)
    ok = True
    for i in range(n):
        if (s >> i) & 1 and not ((down >> (s ^ (1 << i))) & 1):
            ok = False
            break
    if ok:
        _walk(pos + 1, down | ((<u64>1) << s), n, total, order, out)


cdef list _downset_maximal(u64 down, int n):
    cdef list top = []
    cdef int s, i
    cdef bint is_max
    for s in range(1 << n):
        if not (down >> s) & 1:
            continue
        is_max = True
        for i in range(n):
            if not ((s >> i) & 1) and (down >> (s | (1 << i))) & 1:
                is_max = False
                break
        if is_max:
            top.append(s)
    return top


def antichains(int n):
    if n < 0 or n > 6:
        raise ValueError("antichain enumeration supports 0 <= n <= 6")
    cdef int total = 1 << n
    cdef int* order = <int*>malloc(total * sizeof(int))
    cdef int pos = 0, size, s
    cdef list out = []
    if order == NULL:
        raise MemoryError()
    try:
        for size in range(n + 1):
            for s in range(total):
                if _popcount(<u64>s) == size:
                    order[pos] = s
                    pos += 1
        _walk(0, 0, n, total, order, out)
        return out
    finally:
        free(order)


cdef void _expand(u64 r, u64 p, u64 x, u64* adj, list out) except *:
    cdef u64 pool, cand, bit
    cdef int u, best, best_deg, deg, v
    if p == 0 and x == 0:
        out.append(r)
        return
    pool = p | x
    best = -1
    best_deg = -1
    while pool:
        u = __builtin_ctzll(pool)
        pool &= pool - 1
        deg = _popcount(p & adj[u])
        if deg > best_deg:
            best = u
            best_deg = deg
    cand = p & ~adj[best]
    while cand:
        v = __builtin_ctzll(cand)
        cand &= cand - 1
        bit = (<u64>1) << v
        _expand(r | bit, p & adj[v], x & adj[v], adj, out)
        p &= ~bit
        x |= bit


def maximal_cliques(adj):
    cdef Py_ssize_t n
    cdef u64* padj = _load(adj, &n)
    cdef list out = []
    cdef u64 full
    try:
        full = ((<u64>1) << n) - 1 if n < 64 else <u64>0xFFFFFFFFFFFFFFFF
        _expand(0, full, 0, padj, out)
        out.sort()
        return out
    finally:
        free(padj)
