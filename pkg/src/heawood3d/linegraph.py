"""Spatial line graphs, tetrahedron handedness and effective lengths of cycles.

Face orientations are stored per face as a cyclic order of its three edge
slots (see ``Triangulation3``): ``order[f] = (2, 0, 1)`` when the corners
run through slots 0 -> 1 -> 2, and ``(1, 0, 2)`` for the reverse. The directed
line graph has arc ``3*f + j`` from the edge in slot ``order[f][j]`` to the edge
in slot ``order[f][(j + 1) % 3]``; all arcs carry weight 1.
"""
from collections import deque
from dataclasses import dataclass

import numpy as np

from . import perm as P
from ._kernels import incidence_csr, spanning_potential
from .complex import Triangulation3, _frozen
from .errors import (ArcNotIncident, DualNotBipartite, InconsistentFace, InvalidComplex,
                     NonOrientable, WalkNotClosed)

RIGHT = 1
LEFT = -1

_POSITIVE = (2, 0, 1)
_NEGATIVE = (1, 0, 2)


@dataclass(frozen=True, eq=False)
class LineGraph:
    """Undirected multigraph on the edges; one link per (face, pair of edge slots)."""

    n_nodes: int
    links: np.ndarray
    link_faces: np.ndarray


def spatial_line_graph(k):
    from .complex import as_two_complex

    k = as_two_complex(k)
    links = np.concatenate([k.faces[:, [0, 1]], k.faces[:, [0, 2]], k.faces[:, [1, 2]]])
    faces = np.tile(np.arange(k.n_faces), 3)
    order = np.argsort(faces, kind="stable")
    return LineGraph(k.n_edges, _frozen(links[order]), _frozen(faces[order]))


@dataclass(frozen=True)
class DualCycle:
    """Closed walk in the dual graph: ``tets[j]`` and ``tets[j+1]`` meet at ``faces[j]``."""

    tets: tuple
    faces: tuple

    @property
    def length(self):
        return len(self.faces)


@dataclass(frozen=True, eq=False)
class TetOrientations:
    """Handedness per tetrahedron plus the sign applied to its corner order.

    ``handedness`` is the dual-graph bipartition class (tetrahedron 0 of each
    component is Right). It is measured against the orientation that
    tetrahedron 0's corner order (0, 1, 2, 3) induces on its component, so the
    sign actually applied to a tetrahedron's own corner order is
    ``corner_sign = handedness * orientation``.
    """

    handedness: np.ndarray
    orientation: np.ndarray

    @property
    def corner_sign(self):
        return self.handedness * self.orientation

    def label(self, t):
        return "Right" if self.handedness[t] == RIGHT else "Left"


def _dual_bfs(tri, multiplier):
    """Propagate ±1 values over the dual graph; ``value[u] = value[t] * multiplier(t, i)``.

    Returns the values (every tetrahedron labelled, roots +1) and the first
    violated closed walk, or ``None``.
    """
    n = tri.n_tetrahedra
    value = np.zeros(n, dtype=np.int64)
    parent = -np.ones(n, dtype=np.int64)
    parent_face = -np.ones(n, dtype=np.int64)
    depth = np.zeros(n, dtype=np.int64)
    witness = None
    targets = tri.table.targets
    for root in range(n):
        if value[root]:
            continue
        value[root] = 1
        queue = deque([root])
        while queue:
            t = queue.popleft()
            for i in range(4):
                u = targets[t][i]
                want = value[t] * multiplier(t, i)
                if not value[u]:
                    value[u] = want
                    parent[u] = t
                    parent_face[u] = tri.tet_faces[t, i]
                    depth[u] = depth[t] + 1
                    queue.append(u)
                elif value[u] != want and witness is None:
                    witness = _tree_cycle(t, u, int(tri.tet_faces[t, i]), parent, parent_face, depth)
    return value, witness


def _tree_cycle(x, y, face, parent, parent_face, depth):
    """Cycle x -> ... -> lca -> ... -> y -> (face) -> x through the BFS tree."""
    up_x, up_y = [x], [y]
    fx, fy = [], []
    a, b = x, y
    while depth[a] > depth[b]:
        fx.append(int(parent_face[a]))
        a = int(parent[a])
        up_x.append(a)
    while depth[b] > depth[a]:
        fy.append(int(parent_face[b]))
        b = int(parent[b])
        up_y.append(b)
    while a != b:
        fx.append(int(parent_face[a]))
        a = int(parent[a])
        up_x.append(a)
        fy.append(int(parent_face[b]))
        b = int(parent[b])
        up_y.append(b)
    tets = up_x + up_y[::-1][1:]
    faces = fx + fy[::-1] + [face]
    return DualCycle(tuple(int(t) for t in tets) + (int(x),), tuple(faces))


def orient_tetrahedra(tri):
    """Split the tetrahedra into Right and Left by 2-colouring the dual graph.

    Raises ``DualNotBipartite`` with an odd dual cycle, or ``NonOrientable``
    when no coherent orientation of the tetrahedra exists.
    """
    handed, odd = _dual_bfs(tri, lambda t, i: -1)
    if odd is not None:
        raise DualNotBipartite(odd)
    orient, twisted = _dual_bfs(tri, lambda t, i: -tri.gluing_sign(t, i))
    if twisted is not None:
        raise NonOrientable(twisted)
    return TetOrientations(_frozen(handed), _frozen(orient))


def corner_signs(tri):
    """Corner-order signs with matching induced orientations on every face.

    Propagates ``sign[u] = sign[t] * sign(gluing)`` directly. Returns the signs
    (spanning-tree values where a conflict exists) and the first dual cycle
    along which they cannot be matched, or ``None``.
    """
    return _dual_bfs(tri, lambda t, i: tri.gluing_sign(t, i))


@dataclass(frozen=True, eq=False)
class FaceOrientations:
    """Cyclic slot order per face; ``signs[f]`` is +1 for slots 0 -> 1 -> 2."""

    signs: np.ndarray
    order: np.ndarray

    def edge_cycle(self, k, f):
        faces = k.face_edges if isinstance(k, Triangulation3) else k.faces
        return tuple(int(faces[f][j]) for j in self.order[f])


def _from_signs(signs):
    signs = np.asarray(signs, dtype=np.int64)
    order = np.where(signs[:, None] > 0, np.array(_POSITIVE), np.array(_NEGATIVE))
    return FaceOrientations(_frozen(signs), _frozen(order))


def _slot_parity(slots):
    # parity of (a, b, c) as a permutation of (0, 1, 2)
    return 1 if tuple(slots) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1


def face_signs_from_corners(tri, corner_sign, check=True):
    """Boundary orientation of each face from its representative tetrahedron.

    The face opposite corner ``i`` of a tetrahedron with corner sign ``s``
    gets ``s * (-1)**i`` on its ascending corner order. With ``check`` the
    opposite incidence is required to induce the same orientation.
    """
    F = tri.n_faces
    signs = np.empty(F, dtype=np.int64)
    for f in range(F):
        t, i = tri.face_reps[f]
        signs[f] = corner_sign[t] * (-1) ** int(i)
        if not check:
            continue
        u, j = tri.face_other[f]
        slots = [tri.face_positions[u, j, c] for c in P.face_corners(int(j))]
        other = corner_sign[u] * (-1) ** int(j) * _slot_parity(slots)
        if other != signs[f]:
            raise InconsistentFace(f)
    return signs


def induce_face_orientations(k, h=None):
    """Orient every face from the tetrahedron (or chamber) it bounds.

    For a ``Triangulation3``, ``h`` is a ``TetOrientations`` (computed when
    omitted); agreement between the two incident tetrahedra is checked. For a
    ``TwoComplex`` the chambers are oriented instead, chamber 0 Right.
    """
    if isinstance(k, Triangulation3):
        if h is None:
            h = orient_tetrahedra(k)
        return _from_signs(face_signs_from_corners(k, h.corner_sign))
    return _from_signs(_chamber_face_signs(k))


def _chamber_face_signs(k):
    if k.chambers is None:
        raise InvalidComplex("a 2-complex without chambers has no induced face orientation")
    corners = [sorted(set(int(v) for v in k.face_vertices[list(ch)].ravel())) for ch in k.chambers]
    incid = [[] for _ in range(k.n_faces)]
    for ch, quad in enumerate(k.chambers):
        for f in quad:
            missing = [v for v in corners[ch] if v not in k.face_vertices[f]][0]
            incid[f].append((ch, corners[ch].index(missing)))
    for f, inc in enumerate(incid):
        if not inc:
            raise InvalidComplex(f"face {f} lies on no chamber")

    n_ch = len(k.chambers)
    sign = np.zeros(n_ch, dtype=np.int64)
    for root in range(n_ch):
        if sign[root]:
            continue
        sign[root] = RIGHT
        queue = deque([root])
        while queue:
            ch = queue.popleft()
            for f in k.chambers[ch]:
                inc = incid[f]
                if len(inc) < 2:
                    continue
                (c1, i1), (c2, i2) = inc[0], inc[1]
                if c1 != ch:
                    (c1, i1), (c2, i2) = (c2, i2), (c1, i1)
                want = sign[c1] * (-1) ** (i1 + i2)
                if not sign[c2]:
                    sign[c2] = want
                    queue.append(c2)
                elif sign[c2] != want:
                    raise InconsistentFace(int(f))

    signs = np.empty(k.n_faces, dtype=np.int64)
    for f, inc in enumerate(incid):
        ch, i = inc[0]
        fv = [int(v) for v in k.face_vertices[f]]
        slots = [fv.index(v) for v in sorted(fv)]
        signs[f] = sign[ch] * (-1) ** i * _slot_parity(slots)
    return signs


@dataclass(frozen=True, eq=False)
class DirectedLineGraph:
    n_nodes: int
    tails: np.ndarray
    heads: np.ndarray
    order: np.ndarray

    @property
    def n_arcs(self):
        return len(self.tails)

    @property
    def arc_faces(self):
        return np.arange(self.n_arcs) // 3

    def arc_between(self, face, slot_from, slot_to):
        """Arc of ``face`` joining two edge slots, with +1 if it points from -> to."""
        o = list(self.order[face])
        j = o.index(slot_from)
        if o[(j + 1) % 3] == slot_to:
            return 3 * face + j, 1
        j = o.index(slot_to)
        return 3 * face + j, -1

    def underlying_links(self):
        return np.stack([self.tails, self.heads], axis=1)


def directed_line_graph(k, fo):
    from .complex import as_two_complex

    k = as_two_complex(k)
    F = k.n_faces
    rows = np.arange(F)[:, None]
    cyc = k.faces[rows, fo.order]
    tails = cyc.ravel()
    heads = np.roll(cyc, -1, axis=1).ravel()
    return DirectedLineGraph(k.n_edges, _frozen(tails), _frozen(heads), fo.order)


@dataclass(frozen=True)
class CycleWitness:
    """Closed walk ``nodes[0], arcs[0], nodes[1], ..., nodes[-1] == nodes[0]``."""

    nodes: tuple
    arcs: tuple
    effective_length: int

    def as_dict(self):
        return {"nodes": list(self.nodes), "arcs": list(self.arcs),
                "effective_length": self.effective_length}


def effective_length(dl, walk):
    """Forward arcs minus backward arcs along a closed walk (all weights 1).

    ``walk`` is a ``CycleWitness`` or a ``(nodes, arcs)`` pair. Loop arcs count
    as forward.
    """
    nodes, arcs = (walk.nodes, walk.arcs) if isinstance(walk, CycleWitness) else walk
    nodes, arcs = list(nodes), list(arcs)
    if len(nodes) != len(arcs) + 1 or not arcs or nodes[0] != nodes[-1]:
        raise WalkNotClosed(f"walk of {len(arcs)} arcs does not return to {nodes[0] if nodes else None}")
    total = 0
    for j, a in enumerate(arcs):
        x, y = nodes[j], nodes[j + 1]
        t, h = int(dl.tails[a]), int(dl.heads[a])
        if (t, h) == (x, y):
            total += 1
        elif (t, h) == (y, x):
            total -= 1
        else:
            raise ArcNotIncident(f"arc {a} ({t}->{h}) does not join {x} and {y}")
    return total


@dataclass(frozen=True)
class TetCycle:
    """A tetrahedron cycle as three steps ``(face, slot_from, slot_to)``."""

    kind: str
    tet: int
    index: int
    nodes: tuple
    steps: tuple

    def walk(self, dl):
        arcs = [dl.arc_between(f, a, b)[0] for f, a, b in self.steps]
        return self.nodes + (self.nodes[0],), tuple(arcs)


def tetrahedron_cycles(tri):
    """Face cycles (one per face) and vertex cycles (one per tetrahedron corner).

    A ``TwoComplex`` with chambers is accepted too; its chambers play the
    part of the tetrahedra.
    """
    if not isinstance(tri, Triangulation3):
        return _chamber_cycles(tri)
    cycles = []
    for f in range(tri.n_faces):
        t, i = tri.face_reps[f]
        nodes = tuple(int(e) for e in tri.face_edges[f])
        cycles.append(TetCycle("face", int(t), int(i), nodes, ((f, 0, 1), (f, 1, 2), (f, 2, 0))))
    fp = tri.face_positions
    for t in range(tri.n_tetrahedra):
        for a in range(4):
            b, c, d = P.face_corners(a)
            e = lambda x: int(tri.tet_edges[t, P.EDGE_INDEX[a, x]])
            f = lambda x: int(tri.tet_faces[t, x])
            steps = ((f(d), fp[t, d, c], fp[t, d, b]),
                     (f(b), fp[t, b, d], fp[t, b, c]),
                     (f(c), fp[t, c, b], fp[t, c, d]))
            steps = tuple((x, int(y), int(z)) for x, y, z in steps)
            cycles.append(TetCycle("vertex", t, a, (e(b), e(c), e(d)), steps))
    return cycles


def _chamber_cycles(k):
    if k.chambers is None:
        raise InvalidComplex("a 2-complex without chambers has no tetrahedron cycles")
    cycles = [TetCycle("face", -1, f, tuple(int(e) for e in k.faces[f]), ((f, 0, 1), (f, 1, 2), (f, 2, 0)))
              for f in range(k.n_faces)]
    for ch, quad in enumerate(k.chambers):
        corners = sorted(set(int(v) for v in k.face_vertices[list(quad)].ravel()))
        by_verts = {frozenset(int(v) for v in k.face_vertices[f]): int(f) for f in quad}
        for index, a in enumerate(corners):
            b, c, d = (v for v in corners if v != a)

            def edge(x):
                return next(int(e) for f in quad for e in k.faces[f]
                            if set(k.edges[e].tolist()) == {a, x})

            def step(x, y):
                f = by_verts[frozenset((a, x, y))]
                slots = k.faces[f].tolist()
                return f, slots.index(edge(x)), slots.index(edge(y))

            steps = (step(b, c), step(c, d), step(d, b))
            cycles.append(TetCycle("vertex", ch, index, (edge(b), edge(c), edge(d)), steps))
    return cycles


def _spanning(dl):
    ptr, arcs, other, step = incidence_csr(dl.n_nodes, dl.tails, dl.heads)
    return spanning_potential(dl.n_nodes, ptr, arcs, other, step)


def _fundamental_walk(dl, arc, parent, parent_arc, depth):
    """Closed walk: arc forward (tail -> head), then tree path head -> tail."""
    x, y = int(dl.tails[arc]), int(dl.heads[arc])
    path_y, arcs_y = [y], []
    path_x, arcs_x = [x], []
    a, b = y, x
    while depth[a] > depth[b]:
        arcs_y.append(int(parent_arc[a]))
        a = int(parent[a])
        path_y.append(a)
    while depth[b] > depth[a]:
        arcs_x.append(int(parent_arc[b]))
        b = int(parent[b])
        path_x.append(b)
    while a != b:
        arcs_y.append(int(parent_arc[a]))
        a = int(parent[a])
        path_y.append(a)
        arcs_x.append(int(parent_arc[b]))
        b = int(parent[b])
        path_x.append(b)
    nodes = [x] + path_y + path_x[::-1][1:]
    arcs = [int(arc)] + arcs_y + arcs_x[::-1]
    return tuple(nodes), tuple(arcs)


def conflict_witnesses(dl, modulus=3):
    """Spanning tree, potentials and the non-tree arcs whose cycle fails mod ``modulus``.

    The fundamental cycle of a non-tree arc has effective length
    ``1 + pot[tail] - pot[head]``.
    """
    pot, parent, parent_arc, depth = _spanning(dl)
    tails = np.asarray(dl.tails)
    heads = np.asarray(dl.heads)
    lengths = 1 + pot[tails] - pot[heads]
    is_tree = np.zeros(dl.n_arcs, dtype=bool)
    tree_arcs = parent_arc[parent_arc >= 0]
    is_tree[tree_arcs] = True
    bad = np.flatnonzero(~is_tree & (lengths % modulus != 0))
    return pot, parent, parent_arc, depth, lengths, bad


@dataclass(frozen=True)
class CycleCheck:
    ok: bool
    checked: int
    witness: CycleWitness = None


def fundamental_cycle_check(dl, modulus=3):
    """Check every fundamental cycle of a BFS spanning forest mod ``modulus``.

    The first failure is the lowest-indexed non-tree arc; its closed walk is
    returned as the witness.
    """
    pot, parent, parent_arc, depth, lengths, bad = conflict_witnesses(dl, modulus)
    checked = dl.n_arcs - int((parent_arc >= 0).sum())
    if len(bad) == 0:
        return CycleCheck(True, checked)
    arc = int(bad[0])
    nodes, arcs = _fundamental_walk(dl, arc, parent, parent_arc, depth)
    return CycleCheck(False, checked, CycleWitness(nodes, arcs, int(lengths[arc])))


def to_dot(graph, directed=False):
    """DOT text for a ``LineGraph`` or ``DirectedLineGraph``; nodes are named ``e<k>``."""
    lines = ["digraph DL {" if directed else "graph L {"]
    for v in range(graph.n_nodes):
        lines.append(f"  e{v};")
    if directed:
        for a, (t, h) in enumerate(zip(graph.tails, graph.heads)):
            lines.append(f"  e{t} -> e{h} [face={a // 3}];")
    else:
        for (x, y), f in zip(graph.links, graph.link_faces):
            lines.append(f"  e{x} -- e{y} [face={f}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
