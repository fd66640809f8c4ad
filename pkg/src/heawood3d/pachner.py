"""Bistellar (Pachner) moves on gluing tables.

Each move removes a small ball of tetrahedra and refills it. Corners of the
removed tetrahedra are given local vertex labels; the new tetrahedra are
written in the same labels, and every boundary face of the ball is reglued
by matching label triples. Surviving tetrahedra keep their order and the new
ones are appended.
"""
from dataclasses import dataclass

from . import perm as P
from .complex import GluingTable, build_triangulation
from .errors import MoveNotApplicable

KINDS = ("1-4", "2-3", "3-2", "4-1")


@dataclass(frozen=True, order=True)
class PachnerMove:
    """``site`` is a tetrahedron (1-4), face (2-3), edge (3-2) or vertex (4-1)."""

    kind: str
    site: int


def _plan(tri, move):
    """Region tetrahedra, their corner labels, internal label triples and new tetrahedra."""
    kind, site = move.kind, move.site
    T = tri.table
    if kind == "1-4":
        if not 0 <= site < tri.n_tetrahedra:
            raise MoveNotApplicable(move, "no such tetrahedron")
        labels = {site: (0, 1, 2, 3)}
        new = [tuple(4 if c == i else c for c in range(4)) for i in range(4)]
        return labels, set(), new
    if kind == "2-3":
        if not 0 <= site < tri.n_faces:
            raise MoveNotApplicable(move, "no such face")
        t, i = (int(x) for x in tri.face_reps[site])
        u, p = T.gluing(t, i)
        if u == t:
            raise MoveNotApplicable(move, "face joins a tetrahedron to itself")
        lu = [None] * 4
        for c in range(4):
            if c != i:
                lu[p[c]] = c
        lu[p[i]] = 4
        labels = {t: (0, 1, 2, 3), u: tuple(lu)}
        internal = {frozenset(P.face_corners(i))}
        new = [tuple(4 if c == x else c for c in range(4)) for x in P.face_corners(i)]
        return labels, internal, new
    if kind == "3-2":
        if not 0 <= site < tri.n_edges:
            raise MoveNotApplicable(move, "no such edge")
        orbit = tri.edge_orbits[site]
        tets = [t for t, _ in orbit]
        if len(orbit) != 3 or len(set(tets)) != 3:
            raise MoveNotApplicable(move, "edge is not in exactly three distinct tetrahedra")
        t1, (a, b) = orbit[0]
        c, d = (x for x in range(4) if x not in (a, b))
        l1 = [None] * 4
        l1[a], l1[b], l1[c], l1[d] = 0, 1, 2, 3
        labels = {t1: tuple(l1)}
        for opp, keep in ((c, d), (d, c)):
            u, p = T.gluing(t1, opp)
            if u in labels or u not in tets:
                raise MoveNotApplicable(move, "tetrahedra around the edge are not arranged in a ring")
            lu = [None] * 4
            lu[p[a]], lu[p[b]], lu[p[keep]] = 0, 1, l1[keep]
            lu[lu.index(None)] = 4
            labels[u] = tuple(lu)
        internal = {frozenset(s) for s in ((0, 1, 2), (0, 1, 3), (0, 1, 4))}
        new = [(0, 2, 3, 4), (1, 2, 3, 4)]
        return labels, internal, new
    if kind == "4-1":
        if not 0 <= site < tri.n_vertices:
            raise MoveNotApplicable(move, "no such vertex")
        orbit = tri.vertex_orbits[site]
        tets = [t for t, _ in orbit]
        if len(orbit) != 4 or len(set(tets)) != 4:
            raise MoveNotApplicable(move, "vertex is not in exactly four distinct tetrahedra")
        t1, a = orbit[0]
        others = P.face_corners(a)
        l1 = [None] * 4
        l1[a] = 0
        for lab, c in enumerate(others, start=1):
            l1[c] = lab
        labels = {t1: tuple(l1)}
        for opp in others:
            u, p = T.gluing(t1, opp)
            if u in labels or u not in tets:
                raise MoveNotApplicable(move, "vertex star is not four tetrahedra around a point")
            lu = [None] * 4
            for c in range(4):
                if c != opp:
                    lu[p[c]] = l1[c]
            lu[lu.index(None)] = 4
            labels[u] = tuple(lu)
        internal = {frozenset((0, x, y)) for x in range(1, 5) for y in range(x + 1, 5)}
        new = [tuple(4 if c == a else l1[c] for c in range(4))]
        return labels, internal, new
    raise MoveNotApplicable(move, f"unknown move kind {kind!r}")


def _face_labels(lab, i):
    return frozenset(lab[c] for c in range(4) if c != i)


def apply_pachner(tri, move):
    """Return the triangulation after ``move``; raises ``MoveNotApplicable``."""
    labels, internal, new = _plan(tri, move)
    table = tri.table
    region = sorted(labels)
    inv = {r: {lab: c for c, lab in enumerate(labels[r])} for r in region}

    boundary = {}
    for r in region:
        for i in range(4):
            S = _face_labels(labels[r], i)
            u, p = table.gluing(r, i)
            if S in internal:
                ok = u in labels and all(labels[u][p[c]] == labels[r][c] for c in range(4) if c != i)
                if not ok:
                    raise MoveNotApplicable(move, "interior faces of the ball do not match up")
                continue
            if S in boundary:
                raise MoveNotApplicable(move, "ball boundary repeats a face")
            boundary[S] = (r, i)

    new_faces = {}
    for n, lab in enumerate(new):
        for i in range(4):
            new_faces.setdefault(_face_labels(lab, i), []).append((n, i))
    if set(S for S, v in new_faces.items() if len(v) == 1) != set(boundary):
        raise MoveNotApplicable(move, "new tetrahedra do not fill the ball")

    keep = [t for t in range(table.n_tetrahedra) if t not in labels]
    index = {t: k for k, t in enumerate(keep)}
    n0 = len(keep)
    rows = [list(table.rows()[t]) for t in keep]
    rows = [[(index.get(u, u), p) for u, p in row] for row in rows]
    new_rows = [[None] * 4 for _ in new]
    new_inv = [{lab: c for c, lab in enumerate(lab4)} for lab4 in new]

    for S, slots in new_faces.items():
        if len(slots) == 2:
            (n1, i1), (n2, i2) = slots
            q = [0] * 4
            for c in range(4):
                q[c] = i2 if c == i1 else new_inv[n2][new[n1][c]]
            new_rows[n1][i1] = (n0 + n2, tuple(q))
            new_rows[n2][i2] = (n0 + n1, P.inverse(q))
            continue
        (n, i_new), = slots
        r, i = boundary[S]
        u, p = table.gluing(r, i)
        if u in labels:
            # glued to another boundary face of the ball
            S2 = _face_labels(labels[u], p[i])
            (n2, i2), = new_faces[S2]
            q = [0] * 4
            for c in range(4):
                q[c] = i2 if c == i_new else new_inv[n2][labels[u][p[inv[r][new[n][c]]]]]
            new_rows[n][i_new] = (n0 + n2, tuple(q))
        else:
            q = [0] * 4
            for c in range(4):
                q[c] = p[i] if c == i_new else p[inv[r][new[n][c]]]
            q = tuple(q)
            new_rows[n][i_new] = (index[u], q)
            rows[index[u]][p[i]] = (n0 + n, P.inverse(q))
    return build_triangulation(GluingTable.from_rows(rows + new_rows))


def is_applicable(tri, move):
    try:
        _plan(tri, move)
    except MoveNotApplicable:
        return False
    return True


def _skeleton_sets(tri):
    edges = {frozenset(int(v) for v in pair) for pair in tri.edge_endpoints}
    faces = {frozenset(int(v) for v in fv) for fv in tri.face_vertices}
    return edges, faces


def applicable_moves(tri, simplicial=False):
    """Every applicable move, in (kind, site) order.

    With ``simplicial`` only moves that keep the 2-skeleton a simplicial
    complex are listed: a 2-3 move must create a new edge between distinct
    vertices and a 3-2 move must create a new triangle.
    """
    moves = [PachnerMove("1-4", t) for t in range(tri.n_tetrahedra)]
    edges, faces = _skeleton_sets(tri) if simplicial else (None, None)
    for f in range(tri.n_faces):
        t, i = tri.face_reps[f]
        u, j = tri.face_other[f]
        if t == u:
            continue
        if simplicial:
            d, e = int(tri.tet_vertices[t, i]), int(tri.tet_vertices[u, j])
            if d == e or frozenset((d, e)) in edges:
                continue
        moves.append(PachnerMove("2-3", f))
    for e in range(tri.n_edges):
        if len(tri.edge_orbits[e]) != 3:
            continue
        m = PachnerMove("3-2", e)
        try:
            labels, _, _ = _plan(tri, m)
        except MoveNotApplicable:
            continue
        if simplicial:
            ring = set()
            for t, lab in labels.items():
                for c in range(4):
                    if lab[c] >= 2:
                        ring.add(int(tri.tet_vertices[t, c]))
            if len(ring) != 3 or frozenset(ring) in faces:
                continue
        moves.append(m)
    for v in range(tri.n_vertices):
        if len(tri.vertex_orbits[v]) == 4 and is_applicable(tri, PachnerMove("4-1", v)):
            moves.append(PachnerMove("4-1", v))
    return moves
