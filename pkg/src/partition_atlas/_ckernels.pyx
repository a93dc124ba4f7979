# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: neighbourhood clique numbers and neighbour-set differences.

Bitsets are arrays of ``W`` 64-bit words; row ``i`` of a local adjacency
matrix lives at ``adj + i * W``.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy, memset


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int _ctz(uint64_t x) nogil:
    return __builtin_ctzll(x)


cdef inline bint _empty(const uint64_t* s, int W) nogil:
    cdef int w
    for w in range(W):
        if s[w]:
            return False
    return True


cdef int _expand(const uint64_t* adj, int W, int k, uint64_t* P,
                 int size, int best) nogil:
    cdef int* order = <int*> malloc(k * sizeof(int))
    cdef int* colors = <int*> malloc(k * sizeof(int))
    cdef uint64_t* U = <uint64_t*> malloc(W * sizeof(uint64_t))
    cdef uint64_t* Q = <uint64_t*> malloc(W * sizeof(uint64_t))
    cdef uint64_t* newP = <uint64_t*> malloc(W * sizeof(uint64_t))
    cdef int m = 0, color = 0, w, v, i
    cdef const uint64_t* row

    memcpy(U, P, W * sizeof(uint64_t))
    while not _empty(U, W):
        color += 1
        memcpy(Q, U, W * sizeof(uint64_t))
        w = 0
        while w < W:
            if Q[w] == 0:
                w += 1
                continue
            v = w * 64 + _ctz(Q[w])
            order[m] = v
            colors[m] = color
            m += 1
            U[w] &= ~((<uint64_t> 1) << (v & 63))
            Q[w] &= ~((<uint64_t> 1) << (v & 63))
            row = adj + v * W
            for i in range(W):
                Q[i] &= ~row[i]

    for i in range(m - 1, -1, -1):
        if size + colors[i] <= best:
            break
        v = order[i]
        row = adj + v * W
        for w in range(W):
            newP[w] = P[w] & row[w]
        if _empty(newP, W):
            if size + 1 > best:
                best = size + 1
        else:
            best = _expand(adj, W, k, newP, size + 1, best)
        P[v >> 6] &= ~((<uint64_t> 1) << (v & 63))

    free(order)
    free(colors)
    free(U)
    free(Q)
    free(newP)
    return best


def local_clique_sizes(const long long[::1] indptr, const long long[::1] indices):
    """Clique number of the subgraph induced on each vertex's neighbourhood."""
    cdef Py_ssize_t nv = indptr.shape[0] - 1
    cdef Py_ssize_t v, j, x, u, wv
    cdef int k, W, li, lj
    cdef long long* local = <long long*> malloc(max(nv, 1) * sizeof(long long))
    cdef uint64_t* adj
    cdef uint64_t* P
    out = [0] * nv
    for v in range(nv):
        local[v] = -1
    try:
        for v in range(nv):
            k = <int> (indptr[v + 1] - indptr[v])
            if k == 0:
                continue
            W = (k + 63) // 64
            for j in range(k):
                local[indices[indptr[v] + j]] = j
            adj = <uint64_t*> malloc(k * W * sizeof(uint64_t))
            P = <uint64_t*> malloc(W * sizeof(uint64_t))
            memset(adj, 0, k * W * sizeof(uint64_t))
            memset(P, 0, W * sizeof(uint64_t))
            for li in range(k):
                u = indices[indptr[v] + li]
                for x in range(indptr[u], indptr[u + 1]):
                    wv = indices[x]
                    lj = <int> local[wv]
                    if lj >= 0:
                        adj[li * W + (lj >> 6)] |= (<uint64_t> 1) << (lj & 63)
                P[li >> 6] |= (<uint64_t> 1) << (li & 63)
            out[v] = _expand(adj, W, k, P, 0, 0)
            free(adj)
            free(P)
            for j in range(k):
                local[indices[indptr[v] + j]] = -1
    finally:
        free(local)
    return out


def edge_symmetric_differences(const long long[::1] indptr, const long long[::1] indices,
                               const long long[::1] sources, const long long[::1] targets):
    """``|N(s) ^ N(t)|`` for each pair, by merging the sorted rows."""
    cdef Py_ssize_t m = sources.shape[0]
    cdef Py_ssize_t e, i, j, iend, jend
    cdef long long s, t, common
    out = [0] * m
    for e in range(m):
        s = sources[e]
        t = targets[e]
        i = indptr[s]
        iend = indptr[s + 1]
        j = indptr[t]
        jend = indptr[t + 1]
        common = 0
        while i < iend and j < jend:
            if indices[i] == indices[j]:
                common += 1
                i += 1
                j += 1
            elif indices[i] < indices[j]:
                i += 1
            else:
                j += 1
        out[e] = (indptr[s + 1] - indptr[s]) + (indptr[t + 1] - indptr[t]) - 2 * common
    return out
