# cython: language_level=3
"""Compiled kernels; see ``_pykernels`` for the reference semantics."""
import numpy as np

cimport numpy as cnp
from cpython.bytes cimport PyBytes_FromStringAndSize
from libc.stdint cimport int32_t, int64_t, uint64_t
from libc.stdlib cimport free, malloc

from .errors import BudgetExceeded

cnp.import_array()

cdef enum:
    MAXN = 8

MAX_CANONICAL_N = MAXN


cdef struct CanonState:
    int n
    int total
    uint64_t up[MAXN]
    int cls[MAXN]
    int slots[MAXN]
    int order[MAXN]
    int best_order[MAXN]
    uint64_t best
    bint have_best


cdef void _canon(CanonState* s, int p, uint64_t code, unsigned int used) noexcept nogil:
    cdef int v, i, u
    cdef uint64_t c
    cdef int nbits
    if p == s.n:
        if not s.have_best or code < s.best:
            s.best = code
            s.have_best = True
            for i in range(s.n):
                s.best_order[i] = s.order[i]
        return
    nbits = p * (p + 1)
    for v in range(s.n):
        if (used >> v) & 1 or s.cls[v] != s.slots[p]:
            continue
        c = code
        for i in range(p):
            u = s.order[i]
            c = (c << 2) | (((s.up[u] >> v) & 1) << 1) | ((s.up[v] >> u) & 1)
        if s.have_best and c > (s.best >> (s.total - nbits)):
            continue
        s.order[p] = v
        _canon(s, p + 1, c, used | (1u << v))


def canonical_poset(int n, up, cls):
    cdef CanonState s
    cdef int i
    if n > MAXN:
        raise ValueError(f"canonical form supports n <= {MAXN}")
    if n == 0:
        return 0, ()
    s.n = n
    s.total = n * (n - 1)
    s.have_best = False
    s.best = 0
    slots = sorted(cls)
    for i in range(n):
        s.up[i] = <uint64_t>up[i]
        s.cls[i] = <int>cls[i]
        s.slots[i] = <int>slots[i]
    with nogil:
        _canon(&s, 0, 0, 0)
    return int(s.best), tuple(s.best_order[i] for i in range(n))


def closure_bfs(domain_size, gens, bint right_action, long budget):
    cdef int d = domain_size
    cdef cnp.ndarray[int32_t, ndim=2] G = np.ascontiguousarray(
        np.asarray(gens, dtype=np.int32).reshape(-1, d))
    cdef int k = G.shape[0]
    cdef long cap = 64
    cdef cnp.ndarray[int32_t, ndim=2] E = np.empty((cap, d), dtype=np.int32)
    cdef cnp.ndarray[int32_t, ndim=2] T = np.empty((cap, max(k, 1)), dtype=np.int32)
    cdef cnp.ndarray[int64_t, ndim=1] parent = np.empty(cap, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] last = np.empty(cap, dtype=np.int64)
    cdef int32_t* tmp = <int32_t*>malloc(max(d, 1) * sizeof(int32_t))
    cdef long size = 1, i = 0, t
    cdef int j, x
    index = {}
    try:
        for x in range(d):
            E[0, x] = x
            tmp[x] = x
        parent[0] = -1
        last[0] = -1
        index[PyBytes_FromStringAndSize(<char*>tmp, d * 4)] = 0
        while i < size:
            for j in range(k):
                if right_action:
                    for x in range(d):
                        tmp[x] = G[j, E[i, x]]
                else:
                    for x in range(d):
                        tmp[x] = E[i, G[j, x]]
                key = PyBytes_FromStringAndSize(<char*>tmp, d * 4)
                found = index.get(key)
                if found is None:
                    t = size
                    if t >= budget:
                        raise BudgetExceeded("monoid closure", budget, t)
                    if size == cap:
                        cap *= 2
                        E = np.resize(E, (cap, d))
                        T = np.resize(T, (cap, max(k, 1)))
                        parent = np.resize(parent, cap)
                        last = np.resize(last, cap)
                    for x in range(d):
                        E[t, x] = tmp[x]
                    parent[t] = i
                    last[t] = j
                    index[key] = t
                    size += 1
                else:
                    t = found
                T[i, j] = <int32_t>t
            i += 1
    finally:
        free(tmp)
    return (E[:size].copy(), T[:size, :k].copy(), parent[:size].copy(), last[:size].copy())


def cayley_from_right(table, parent, last, long identity):
    cdef const int32_t[:, ::1] T = np.ascontiguousarray(table, dtype=np.int32)
    cdef const int64_t[::1] par = np.ascontiguousarray(parent, dtype=np.int64)
    cdef const int64_t[::1] lst = np.ascontiguousarray(last, dtype=np.int64)
    cdef long size = T.shape[0]
    out = np.empty((size, size), dtype=np.int32)
    cdef int32_t[:, ::1] mul = out
    cdef long a, b, p, g
    with nogil:
        for a in range(size):
            mul[a, identity] = <int32_t>a
        for b in range(size):
            if b == identity:
                continue
            p = par[b]
            g = lst[b]
            for a in range(size):
                mul[a, b] = T[mul[a, p], g]
    return out


def cayley_from_elements(elements, bint right_action):
    cdef const int32_t[:, ::1] E = np.ascontiguousarray(elements, dtype=np.int32)
    cdef long size = E.shape[0]
    cdef int d = E.shape[1]
    if d > 15:
        from ._pykernels import cayley_from_elements as slow
        return slow(np.asarray(E), right_action)
    cdef cnp.ndarray[int64_t, ndim=1] w = np.array([d ** x for x in range(d)], dtype=np.int64)
    codes = np.asarray(E, dtype=np.int64) @ w if d else np.zeros(size, dtype=np.int64)
    order_arr = np.argsort(codes, kind="stable").astype(np.int64)
    sorted_arr = np.ascontiguousarray(codes[order_arr])
    if size > 1 and np.any(sorted_arr[1:] == sorted_arr[:size - 1]):
        raise ValueError("duplicate maps in element list")
    cdef int64_t[::1] order = order_arr
    cdef int64_t[::1] sc = sorted_arr
    out = np.empty((size, size), dtype=np.int32)
    cdef int32_t[:, ::1] mul = out
    cdef long a, b, lo, hi, mid, bad_a = -1, bad_b = -1
    cdef int x
    cdef int64_t c
    with nogil:
        for a in range(size):
            for b in range(size):
                c = 0
                if right_action:
                    for x in range(d):
                        c += E[b, E[a, x]] * w[x]
                else:
                    for x in range(d):
                        c += E[a, E[b, x]] * w[x]
                lo = 0
                hi = size
                while lo < hi:
                    mid = (lo + hi) >> 1
                    if sc[mid] < c:
                        lo = mid + 1
                    else:
                        hi = mid
                if lo == size or sc[lo] != c:
                    bad_a = a
                    bad_b = b
                    break
                mul[a, b] = <int32_t>order[lo]
            if bad_a >= 0:
                break
    if bad_a >= 0:
        raise ValueError(f"elements {bad_a} and {bad_b} multiply outside the set")
    return out


def coset_order(mul_in):
    cdef const int32_t[:, ::1] mul = np.ascontiguousarray(mul_in, dtype=np.int32)
    cdef long size = mul.shape[0]
    cdef long words = (size + 63) // 64
    bits_arr = np.zeros((size, max(words, 1)), dtype=np.uint64)
    cdef uint64_t[:, ::1] bits = bits_arr
    cdef long a, b, v, i, j, q
    with nogil:
        for a in range(size):
            for b in range(size):
                v = mul[a, b]
                bits[a, v >> 6] |= (<uint64_t>1) << (v & 63)
    seen = {}
    coset_of = np.empty(size, dtype=np.int64)
    reps = []
    for a in range(size):
        key = bits_arr[a].tobytes()
        c = seen.get(key)
        if c is None:
            c = len(reps)
            seen[key] = c
            reps.append(a)
        coset_of[a] = c
    cdef long k = len(reps)
    cdef int64_t[::1] rep = np.array(reps, dtype=np.int64)
    leq_arr = np.zeros((k, k), dtype=np.uint8)
    cdef unsigned char[:, ::1] leq = leq_arr
    cdef bint sub
    with nogil:
        for i in range(k):
            for j in range(k):
                sub = True
                for q in range(words):
                    if bits[rep[i], q] & ~bits[rep[j], q]:
                        sub = False
                        break
                leq[i, j] = sub
    return coset_of, leq_arr.view(bool)
