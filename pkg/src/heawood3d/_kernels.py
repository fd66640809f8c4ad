"""Hot loops: breadth-first spanning potentials and backtracking colour search.

Both run under numba when available (see ``_accel``); the ``py_func``
attribute of each kernel is the interpreted version.
"""
import numpy as np

from ._accel import jit


def incidence_csr(n_nodes, tails, heads):
    """CSR incidence lists: for node ``v``, arcs ``arcs[ptr[v]:ptr[v+1]]``.

    ``other`` is the opposite endpoint and ``step`` is +1 when ``v`` is the
    tail (the arc is traversed forward leaving ``v``), -1 otherwise. Loop arcs
    are left out.
    """
    tails = np.asarray(tails, dtype=np.int64)
    heads = np.asarray(heads, dtype=np.int64)
    m = len(tails)
    keep = tails != heads
    arc_ids = np.arange(m, dtype=np.int64)[keep]
    src = np.concatenate([tails[keep], heads[keep]])
    other = np.concatenate([heads[keep], tails[keep]])
    step = np.concatenate([np.ones(len(arc_ids), np.int64), -np.ones(len(arc_ids), np.int64)])
    arcs = np.concatenate([arc_ids, arc_ids])
    order = np.lexsort((arcs, src))
    ptr = np.zeros(n_nodes + 1, dtype=np.int64)
    np.add.at(ptr, src + 1, 1)
    return np.cumsum(ptr), arcs[order], other[order], step[order]


@jit
def spanning_potential(n_nodes, ptr, arcs, other, step):
    """BFS spanning forest with integer potentials.

    ``pot[v]`` is the signed number of arcs on the tree path from the root of
    ``v``'s component to ``v`` (forward +1, backward -1). Roots are the lowest
    unvisited node; neighbours are scanned in arc order.
    """
    pot = np.zeros(n_nodes, dtype=np.int64)
    parent_arc = -np.ones(n_nodes, dtype=np.int64)
    parent = -np.ones(n_nodes, dtype=np.int64)
    depth = -np.ones(n_nodes, dtype=np.int64)
    queue = np.empty(n_nodes, dtype=np.int64)
    for root in range(n_nodes):
        if depth[root] >= 0:
            continue
        depth[root] = 0
        head = 0
        tail = 0
        queue[tail] = root
        tail += 1
        while head < tail:
            v = queue[head]
            head += 1
            for q in range(ptr[v], ptr[v + 1]):
                w = other[q]
                if depth[w] < 0:
                    depth[w] = depth[v] + 1
                    pot[w] = pot[v] + step[q]
                    parent[w] = v
                    parent_arc[w] = arcs[q]
                    queue[tail] = w
                    tail += 1
    return pot, parent, parent_arc, depth


@jit
def backtrack_colourings(order, ptr, nbr, n_colours, start, limit, store):
    """Enumerate proper colourings extending ``start`` (-1 = free).

    Nodes are coloured in ``order``; the search stops after ``limit``
    solutions. Returns (count, solutions[:store], exhausted, search nodes).
    """
    n = start.shape[0]
    m = order.shape[0]
    colour = start.copy()
    sols = np.empty((max(store, 1), n), dtype=np.int64)
    count = 0
    visited = 0
    if m == 0:
        if store > 0:
            sols[0] = colour
        return 1, sols, True, 0
    trial = -np.ones(m, dtype=np.int64)
    pos = 0
    while pos >= 0:
        v = order[pos]
        colour[v] = -1
        c = trial[pos] + 1
        while c < n_colours:
            ok = True
            for q in range(ptr[v], ptr[v + 1]):
                if colour[nbr[q]] == c:
                    ok = False
                    break
            if ok:
                break
            c += 1
        if c < n_colours:
            visited += 1
            trial[pos] = c
            colour[v] = c
            if pos == m - 1:
                if count < store:
                    sols[count] = colour
                count += 1
                if count >= limit:
                    return count, sols, False, visited
            else:
                pos += 1
                trial[pos] = -1
        else:
            trial[pos] = -1
            pos -= 1
    return count, sols, True, visited


def adjacency_csr(n_nodes, pairs):
    """Symmetric CSR neighbour lists from undirected pairs (duplicates kept)."""
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    src = np.concatenate([pairs[:, 0], pairs[:, 1]])
    dst = np.concatenate([pairs[:, 1], pairs[:, 0]])
    order = np.lexsort((dst, src))
    ptr = np.zeros(n_nodes + 1, dtype=np.int64)
    np.add.at(ptr, src + 1, 1)
    return np.cumsum(ptr), dst[order]


def constraint_order(n_nodes, ptr, nbr, fixed):
    """Static most-constrained-first order over the free nodes.

    Repeatedly picks the free node with the most already-placed neighbours,
    ties broken by lowest index.
    """
    placed = np.zeros(n_nodes, dtype=bool)
    placed[fixed] = True
    score = np.zeros(n_nodes, dtype=np.int64)
    for v in np.flatnonzero(placed):
        np.add.at(score, nbr[ptr[v]:ptr[v + 1]], 1)
    order = []
    free = n_nodes - int(placed.sum())
    for _ in range(free):
        masked = np.where(placed, -1, score)
        v = int(np.argmax(masked))
        order.append(v)
        placed[v] = True
        np.add.at(score, nbr[ptr[v]:ptr[v + 1]], 1)
    return np.array(order, dtype=np.int64)
