"""Pure-Python kernels. Same contract as the compiled ``_ckernels`` module."""

from __future__ import annotations


def _color_order(P: int, adj: list[int]) -> tuple[list[int], list[int]]:
    order: list[int] = []
    colors: list[int] = []
    color = 0
    uncolored = P
    while uncolored:
        color += 1
        Q = uncolored
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            order.append(v)
            colors.append(color)
            uncolored &= ~low
            Q &= ~low
            Q &= ~adj[v]
    return order, colors


def _expand(P: int, size: int, best: int, adj: list[int]) -> int:
    order, colors = _color_order(P, adj)
    for i in range(len(order) - 1, -1, -1):
        if size + colors[i] <= best:
            return best
        v = order[i]
        newP = P & adj[v]
        if newP:
            best = _expand(newP, size + 1, best, adj)
        elif size + 1 > best:
            best = size + 1
        P &= ~(1 << v)
    return best


def max_clique_size(adj: list[int]) -> int:
    """Clique number of a graph given as a list of neighbour bitmasks."""
    k = len(adj)
    if k == 0:
        return 0
    return _expand((1 << k) - 1, 0, 0, adj)


def local_clique_sizes(indptr, indices) -> list[int]:
    """Clique number of the subgraph induced on each vertex's neighbourhood.

    ``indptr``/``indices`` is a CSR adjacency with sorted rows.
    """
    nv = len(indptr) - 1
    rows = [indices[indptr[v]:indptr[v + 1]] for v in range(nv)]
    out = [0] * nv
    for v in range(nv):
        nbrs = rows[v]
        local = {u: i for i, u in enumerate(nbrs)}
        adj = []
        for u in nbrs:
            mask = 0
            for w in rows[u]:
                j = local.get(w)
                if j is not None:
                    mask |= 1 << j
            adj.append(mask)
        out[v] = max_clique_size(adj)
    return out


def edge_symmetric_differences(indptr, indices, sources, targets) -> list[int]:
    """``|N(s) ^ N(t)|`` for every pair ``(sources[i], targets[i])``."""
    out = []
    for s, t in zip(sources, targets):
        a = set(indices[indptr[s]:indptr[s + 1]])
        b = indices[indptr[t]:indptr[t + 1]]
        common = sum(1 for x in b if x in a)
        out.append(len(a) + len(b) - 2 * common)
    return out
