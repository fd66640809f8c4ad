"""Tetrahedral gluing tables, their quotient cells, and abstract 2-complexes.

A closed triangulation is given by a gluing table: face ``i`` of tetrahedron
``t`` (the face opposite corner ``i``) is glued to tetrahedron ``u`` through a
corner permutation ``p`` with ``p[i]`` the corner of ``u`` opposite the target
face. Vertices, edges and faces of the triangulation are the orbits of corner
incidences under these gluings. Every orbit is numbered in the order it is
first met when scanning ``(tetrahedron, local index)`` lexicographically, so
identical tables always give identical cell numberings.
"""
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import perm as P
from .errors import (InvalidComplex, NonInvolutiveGluing, NotAManifold, OpenFace,
                     SelfIdentityGluing)


def _frozen(a):
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class GluingTable:
    """Face pairings of a closed tetrahedral complex.

    ``targets[t][i]`` is the tetrahedron glued to face ``i`` of ``t`` (``None``
    for an unglued face) and ``perms[t][i]`` the corner permutation as a
    4-tuple of images.
    """

    targets: tuple
    perms: tuple

    @classmethod
    def from_rows(cls, rows):
        """Build from rows of four ``(u, perm)`` entries (``perm`` a tuple or "0123" string)."""
        targets, perms = [], []
        for row in rows:
            if len(row) != 4:
                raise ValueError(f"each tetrahedron needs 4 face gluings, got {len(row)}")
            trow, prow = [], []
            for entry in row:
                if entry is None:
                    trow.append(None)
                    prow.append(None)
                    continue
                u, p = entry
                if isinstance(p, str):
                    p = P.parse(p)
                trow.append(int(u))
                prow.append(tuple(int(x) for x in p))
            targets.append(tuple(trow))
            perms.append(tuple(prow))
        return cls(tuple(targets), tuple(perms))

    @property
    def n_tetrahedra(self):
        return len(self.targets)

    def gluing(self, t, i):
        return self.targets[t][i], self.perms[t][i]

    def rows(self):
        return [[(self.targets[t][i], self.perms[t][i]) for i in range(4)]
                for t in range(self.n_tetrahedra)]

    def validate(self):
        """Raise on the first broken invariant, scanning faces lexicographically."""
        n = self.n_tetrahedra
        for t in range(n):
            for i in range(4):
                if self.targets[t][i] is None or self.perms[t][i] is None:
                    raise OpenFace(t, i)
        for t in range(n):
            for i in range(4):
                u, p = self.targets[t][i], self.perms[t][i]
                if not 0 <= u < n or sorted(p) != [0, 1, 2, 3]:
                    raise NonInvolutiveGluing(t, i, f"tetrahedron {t} face {i}: bad target {(u, p)}")
                if u == t and p[i] == i:
                    # a face glued onto itself; the identity case is the usual mistake
                    raise SelfIdentityGluing(t, i)
                j = p[i]
                back_u, back_p = self.targets[u][j], self.perms[u][j]
                if back_u != t or back_p != P.inverse(p):
                    raise NonInvolutiveGluing(t, i)


@dataclass(frozen=True, eq=False)
class Triangulation3:
    """A closed tetrahedral complex together with its quotient cells.

    Index arrays (all read-only):

    ``tet_vertices[t, c]``   vertex cell of corner ``c``
    ``tet_edges[t, k]``      edge cell of local edge ``perm.EDGE_PAIRS[k]``
    ``tet_faces[t, i]``      face cell of the face opposite corner ``i``
    ``edge_ends[t, k]``      directed edge-end cell of ``perm.ORDERED_PAIRS[k]``
    ``face_positions[t, i, c]``  slot (0..2) of corner ``c`` in the canonical
                             representative of face ``tet_faces[t, i]``

    Face ``f`` has canonical representative ``face_reps[f] = (t, i)``; its three
    slots are the corners of face ``i`` of ``t`` in ascending order. Slot ``j``
    holds vertex ``face_vertices[f, j]`` and the opposite edge ``face_edges[f, j]``.
    """

    table: GluingTable
    tet_vertices: np.ndarray
    tet_edges: np.ndarray
    tet_faces: np.ndarray
    edge_ends: np.ndarray
    face_positions: np.ndarray
    face_reps: np.ndarray
    face_other: np.ndarray
    edge_reps: np.ndarray
    edge_endpoints: np.ndarray
    face_edges: np.ndarray
    face_vertices: np.ndarray
    perm_ids: np.ndarray

    @property
    def n_tetrahedra(self):
        return self.tet_vertices.shape[0]

    @property
    def n_vertices(self):
        return int(self.tet_vertices.max()) + 1 if self.n_tetrahedra else 0

    @property
    def n_edges(self):
        return self.edge_reps.shape[0]

    @property
    def n_faces(self):
        return self.face_reps.shape[0]

    @property
    def counts(self):
        return {"V": self.n_vertices, "E": self.n_edges, "F": self.n_faces, "T": self.n_tetrahedra}

    @property
    def euler_characteristic(self):
        return self.n_vertices - self.n_edges + self.n_faces - self.n_tetrahedra

    @cached_property
    def links(self):
        return link_graphs(self)

    @cached_property
    def vertex_orbits(self):
        orbits = [[] for _ in range(self.n_vertices)]
        for t in range(self.n_tetrahedra):
            for c in range(4):
                orbits[self.tet_vertices[t, c]].append((t, c))
        return tuple(tuple(o) for o in orbits)

    @cached_property
    def edge_orbits(self):
        """Per edge, the ``(t, (a, b))`` incidences oriented like the representative."""
        orbits = [[] for _ in range(self.n_edges)]
        head_end = {}
        for e, (t, k) in enumerate(self.edge_reps):
            head_end[e] = self.edge_ends[t, P.ORDERED_INDEX[P.EDGE_PAIRS[k]]]
        for t in range(self.n_tetrahedra):
            for k, (a, b) in enumerate(P.EDGE_PAIRS):
                e = self.tet_edges[t, k]
                if self.edge_ends[t, P.ORDERED_INDEX[a, b]] == head_end[e]:
                    orbits[e].append((t, (a, b)))
                else:
                    orbits[e].append((t, (b, a)))
        return tuple(tuple(o) for o in orbits)

    @cached_property
    def face_orbits(self):
        return tuple(((int(r[0]), int(r[1])), (int(o[0]), int(o[1])))
                     for r, o in zip(self.face_reps, self.face_other))

    def gluing_sign(self, t, i):
        """Sign of the permutation gluing face ``i`` of ``t``."""
        return int(P.PERM_SIGN[self.perm_ids[t, i]])


def _components(n, src, dst):
    """Connected-component labels numbered by first appearance in ``range(n)``."""
    g = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n))
    _, labels = connected_components(g, directed=False)
    _, first = np.unique(labels, return_index=True)
    remap = np.empty(len(first), dtype=np.int64)
    remap[np.argsort(first)] = np.arange(len(first))
    return remap[labels]


def build_triangulation(table):
    """Validate ``table`` and derive its vertex, edge and face cells."""
    table.validate()
    n = table.n_tetrahedra
    targets = np.array(table.targets, dtype=np.int64).reshape(n, 4)
    pids = np.array([[P.PERM_ID[p] for p in row] for row in table.perms], dtype=np.int64).reshape(n, 4)
    t_idx = np.repeat(np.arange(n), 4)
    i_idx = np.tile(np.arange(4), n)
    u_idx = targets.ravel()
    p_idx = pids.ravel()

    # vertices: corner c of face i maps to corner p[c] of u
    vs, vd = [], []
    for c in range(4):
        m = i_idx != c
        vs.append(4 * t_idx[m] + c)
        vd.append(4 * u_idx[m] + P.PERM_ARRAY[p_idx[m], c])
    tet_vertices = _components(4 * n, np.concatenate(vs), np.concatenate(vd)).reshape(n, 4)

    # edges, both undirected and directed (edge ends)
    es, ed, os_, od = [], [], [], []
    for k, (a, b) in enumerate(P.EDGE_PAIRS):
        m = (i_idx != a) & (i_idx != b)
        es.append(6 * t_idx[m] + k)
        ed.append(6 * u_idx[m] + P.EDGE_MAP[p_idx[m], k])
    for k, (a, b) in enumerate(P.ORDERED_PAIRS):
        m = (i_idx != a) & (i_idx != b)
        os_.append(12 * t_idx[m] + k)
        od.append(12 * u_idx[m] + P.ORDERED_MAP[p_idx[m], k])
    tet_edges = _components(6 * n, np.concatenate(es), np.concatenate(ed)).reshape(n, 6)
    edge_ends = _components(12 * n, np.concatenate(os_), np.concatenate(od)).reshape(n, 12)

    tet_faces = _components(4 * n, 4 * t_idx + i_idx, 4 * u_idx + P.PERM_ARRAY[p_idx, i_idx]).reshape(n, 4)

    n_edges = int(tet_edges.max()) + 1
    first = np.unique(tet_edges.ravel(), return_index=True)[1]
    edge_reps = np.stack([first // 6, first % 6], axis=1)
    edge_endpoints = np.empty((n_edges, 2), dtype=np.int64)
    for e, (t, k) in enumerate(edge_reps):
        a, b = P.EDGE_PAIRS[k]
        edge_endpoints[e] = tet_vertices[t, a], tet_vertices[t, b]

    n_faces = int(tet_faces.max()) + 1
    face_reps = np.empty((n_faces, 2), dtype=np.int64)
    face_other = np.empty((n_faces, 2), dtype=np.int64)
    face_positions = -np.ones((n, 4, 4), dtype=np.int64)
    face_edges = np.empty((n_faces, 3), dtype=np.int64)
    face_vertices = np.empty((n_faces, 3), dtype=np.int64)
    seen = np.zeros(n_faces, dtype=bool)
    for t in range(n):
        for i in range(4):
            f = tet_faces[t, i]
            if seen[f]:
                continue
            seen[f] = True
            u, p = table.targets[t][i], table.perms[t][i]
            face_reps[f] = t, i
            face_other[f] = u, p[i]
            corners = P.face_corners(i)
            for j, c in enumerate(corners):
                face_positions[t, i, c] = j
                face_positions[u, p[i], p[c]] = j
                x, y = (d for d in corners if d != c)
                face_edges[f, j] = tet_edges[t, P.EDGE_INDEX[x, y]]
                face_vertices[f, j] = tet_vertices[t, c]

    return Triangulation3(
        table=table,
        tet_vertices=_frozen(tet_vertices),
        tet_edges=_frozen(tet_edges),
        tet_faces=_frozen(tet_faces),
        edge_ends=_frozen(edge_ends),
        face_positions=_frozen(face_positions),
        face_reps=_frozen(face_reps),
        face_other=_frozen(face_other),
        edge_reps=_frozen(edge_reps),
        edge_endpoints=_frozen(edge_endpoints),
        face_edges=_frozen(face_edges),
        face_vertices=_frozen(face_vertices),
        perm_ids=_frozen(pids),
    )


@dataclass(frozen=True, eq=False)
class TwoComplex:
    """Abstract 2-complex with triangular faces.

    ``edges[e]`` are the endpoint vertices of edge ``e``; ``faces[f]`` are three
    edge indices and ``face_vertices[f, j]`` is the corner of face ``f``
    opposite its ``j``-th edge. ``chambers`` (optional) lists four face indices
    per tetrahedral chamber.
    """

    n_vertices: int
    edges: np.ndarray
    faces: np.ndarray
    face_vertices: np.ndarray
    chambers: np.ndarray = None

    @classmethod
    def from_lists(cls, n_vertices, edges, faces, chambers=None, check=True):
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        faces = np.asarray(faces, dtype=np.int64).reshape(-1, 3)
        if edges.size and (edges.min() < 0 or edges.max() >= n_vertices):
            raise InvalidComplex("edge endpoint out of range")
        if faces.size and (faces.min() < 0 or faces.max() >= len(edges)):
            raise InvalidComplex("face edge index out of range")
        fv = np.empty_like(faces)
        for f, tri in enumerate(faces):
            for j in range(3):
                x, y = (int(tri[(j + 1) % 3]), int(tri[(j + 2) % 3]))
                common = set(edges[x]) & set(edges[y])
                if check and (len(common) != 1 or edges[x][0] == edges[x][1] or edges[y][0] == edges[y][1]):
                    raise InvalidComplex(f"face {f}: edges {x} and {y} do not meet in exactly one vertex")
                fv[f, j] = min(common) if common else -1
            if check and len(set(fv[f])) != 3:
                raise InvalidComplex(f"face {f}: corners are not distinct")
        if chambers is not None:
            chambers = np.asarray(chambers, dtype=np.int64).reshape(-1, 4)
            if chambers.size and (chambers.min() < 0 or chambers.max() >= len(faces)):
                raise InvalidComplex("chamber face index out of range")
            if check:
                for ch, quad in enumerate(chambers):
                    verts = set(fv[list(quad)].ravel())
                    if len(verts) != 4 or len(set(quad)) != 4:
                        raise InvalidComplex(f"chamber {ch} is not a tetrahedron")
            chambers = _frozen(chambers)
        return cls(int(n_vertices), _frozen(edges), _frozen(faces), _frozen(fv), chambers)

    @property
    def n_edges(self):
        return self.edges.shape[0]

    @property
    def n_faces(self):
        return self.faces.shape[0]


def two_skeleton(tri):
    """The 2-complex of ``tri``; cell indices are carried over unchanged."""
    return TwoComplex(tri.n_vertices, tri.edge_endpoints, tri.face_edges, tri.face_vertices,
                      tri.tet_faces)


def as_two_complex(k):
    return two_skeleton(k) if isinstance(k, Triangulation3) else k


@dataclass(frozen=True)
class EdgeDegrees:
    degrees: np.ndarray
    odd_edges: tuple

    @property
    def all_even(self):
        return not self.odd_edges

    def as_dict(self):
        return {e: int(d) for e, d in enumerate(self.degrees)}


def edge_degrees(k):
    """Face-degree of every edge, counting a face once per slot the edge fills."""
    k = as_two_complex(k)
    deg = np.bincount(k.faces.ravel(), minlength=k.n_edges)
    return EdgeDegrees(_frozen(deg), tuple(int(e) for e in np.flatnonzero(deg % 2)))


@dataclass(frozen=True, eq=False)
class LinkGraph:
    """Link of a vertex: nodes are edge ends at the vertex, links are face corners.

    ``node_edges[n]`` is the edge of the complex behind node ``n``;
    ``adjacency`` pairs local node indices (one row per face corner, with
    ``adjacency_faces`` giving the face); ``triangles`` are the link faces,
    one per tetrahedron corner at the vertex.
    """

    vertex: int
    node_edges: np.ndarray
    adjacency: np.ndarray
    adjacency_faces: np.ndarray
    triangles: np.ndarray

    @property
    def n_nodes(self):
        return len(self.node_edges)

    @property
    def euler_characteristic(self):
        return self.n_nodes - len(self.adjacency) + len(self.triangles)

    def node_degrees(self):
        return np.bincount(self.adjacency.ravel(), minlength=self.n_nodes)

    def is_connected(self):
        if self.n_nodes == 0:
            return False
        return _components(self.n_nodes, self.adjacency[:, 0], self.adjacency[:, 1]).max() == 0


_ORD = np.full((4, 4), -1, dtype=np.int64)
for _a, _b in P.ORDERED_PAIRS:
    _ORD[_a, _b] = P.ORDERED_INDEX[_a, _b]
_FACE_CORNERS = np.array([P.face_corners(i) for i in range(4)], dtype=np.int64)


def _group(keys, n_groups, *columns):
    """Split row arrays by ``keys`` (stable, so rows keep their scan order)."""
    order = np.argsort(keys, kind="stable")
    cuts = np.cumsum(np.bincount(keys, minlength=n_groups))[:-1]
    return [np.split(col[order], cuts) for col in columns]


def link_graphs(tri):
    """All vertex links at once; ``link_graphs(tri)[v] == link_graph(tri, v)``."""
    V = tri.n_vertices
    n_ends = int(tri.edge_ends.max()) + 1
    tails = np.array([a for a, _ in P.ORDERED_PAIRS])
    undirected = np.array([P.EDGE_INDEX[pair] for pair in P.ORDERED_PAIRS])
    end_vertex = np.empty(n_ends, dtype=np.int64)
    end_edge = np.empty(n_ends, dtype=np.int64)
    end_vertex[tri.edge_ends] = tri.tet_vertices[:, tails]
    end_edge[tri.edge_ends] = tri.tet_edges[:, undirected]
    # nodes of a link are its edge ends in increasing cell order
    ends_of = _group(end_vertex, V, np.arange(n_ends))[0]
    local = np.empty(n_ends, dtype=np.int64)
    for group in ends_of:
        local[group] = np.arange(len(group))

    t = tri.face_reps[:, 0][:, None]
    c = _FACE_CORNERS[tri.face_reps[:, 1]]
    x, y = c[:, [1, 0, 0]], c[:, [2, 2, 1]]
    adj_v = tri.tet_vertices[t, c].ravel()
    nx = local[tri.edge_ends[t, _ORD[c, x]]].ravel()
    ny = local[tri.edge_ends[t, _ORD[c, y]]].ravel()
    adj_f = np.repeat(np.arange(tri.n_faces), 3)
    ax, ay, af = _group(adj_v, V, nx, ny, adj_f)

    tt = np.repeat(np.arange(tri.n_tetrahedra), 4)[:, None]
    aa = np.tile(np.arange(4), tri.n_tetrahedra)[:, None]
    others = _FACE_CORNERS[aa[:, 0]]
    tri_nodes = local[tri.edge_ends[tt, _ORD[aa, others]]]
    (tris,) = _group(tri.tet_vertices.ravel(), V, tri_nodes)

    return tuple(
        LinkGraph(v, _frozen(end_edge[ends_of[v]]), _frozen(np.stack([ax[v], ay[v]], axis=1)),
                  _frozen(af[v]), _frozen(tris[v].reshape(-1, 3)))
        for v in range(V))


def link_graph(tri, v):
    return tri.links[v]


@dataclass(frozen=True, eq=False)
class DualGraph:
    """Tetrahedra as nodes; ``edges[f]`` joins the two tetrahedra at face ``f``."""

    n_nodes: int
    edges: np.ndarray

    def degrees(self):
        return np.bincount(self.edges.ravel(), minlength=self.n_nodes)


def dual_graph(tri):
    return DualGraph(tri.n_tetrahedra, _frozen(np.stack([tri.face_reps[:, 0], tri.face_other[:, 0]], axis=1)))


@dataclass(frozen=True)
class ManifoldReport:
    face_degrees_ok: bool
    edges_ok: bool
    bad_edges: tuple
    link_euler: tuple
    link_connected: tuple
    bad_vertices: tuple
    euler_characteristic: int

    @property
    def links_ok(self):
        return not self.bad_vertices

    @property
    def ok(self):
        return self.face_degrees_ok and self.edges_ok and self.links_ok and self.euler_characteristic == 0

    def as_dict(self):
        return {
            "ok": self.ok,
            "face_degrees_ok": self.face_degrees_ok,
            "edges_ok": self.edges_ok,
            "bad_edges": list(self.bad_edges),
            "links_ok": self.links_ok,
            "bad_vertices": list(self.bad_vertices),
            "euler_characteristic": self.euler_characteristic,
        }


def verify_closed_3manifold(tri, strict=True):
    """Check face degrees, edge validity, sphere vertex links and Euler characteristic 0.

    Vertex links are checked all at once: link nodes are edge-end cells, link
    edges are face corners, link triangles are tetrahedron corners. Simple
    connectivity is not checked.
    """
    face_ok = bool(np.all(np.bincount(tri.tet_faces.ravel(), minlength=tri.n_faces) == 2))

    # an edge identified with itself in reverse has both of its ends in one cell
    rev = np.array([P.ORDERED_INDEX[b, a] for a, b in P.ORDERED_PAIRS])
    same = tri.edge_ends == tri.edge_ends[:, rev]
    flat = np.flatnonzero(same.any(axis=1))
    bad_edges = sorted({int(tri.tet_edges[t, P.EDGE_INDEX[P.ORDERED_PAIRS[k]]])
                        for t in flat for k in np.flatnonzero(same[t])})

    n_ends = int(tri.edge_ends.max()) + 1
    end_vertex = np.empty(n_ends, dtype=np.int64)
    for k, (a, _) in enumerate(P.ORDERED_PAIRS):
        end_vertex[tri.edge_ends[:, k]] = tri.tet_vertices[:, a]
    src, dst, corner_vertex = [], [], []
    for t, i in tri.face_reps:
        corners = P.face_corners(int(i))
        for c in corners:
            x, y = (d for d in corners if d != c)
            src.append(tri.edge_ends[t, P.ORDERED_INDEX[c, x]])
            dst.append(tri.edge_ends[t, P.ORDERED_INDEX[c, y]])
            corner_vertex.append(tri.tet_vertices[t, c])
    V = tri.n_vertices
    n_nodes = np.bincount(end_vertex, minlength=V)
    n_links = np.bincount(np.array(corner_vertex, dtype=np.int64), minlength=V)
    n_tris = np.bincount(tri.tet_vertices.ravel(), minlength=V)
    euler = n_nodes - n_links + n_tris
    comp = _components(n_ends, np.array(src, dtype=np.int64), np.array(dst, dtype=np.int64))
    n_comp = np.zeros(V, dtype=np.int64)
    pairs = np.unique(np.stack([end_vertex, comp], axis=1), axis=0)
    np.add.at(n_comp, pairs[:, 0], 1)
    connected = n_comp == 1
    bad_vertices = tuple(int(v) for v in np.flatnonzero((euler != 2) | ~connected))

    report = ManifoldReport(face_ok, not bad_edges, tuple(bad_edges), tuple(int(x) for x in euler),
                            tuple(bool(x) for x in connected), bad_vertices, tri.euler_characteristic)
    if strict and not report.ok:
        if bad_vertices:
            witness = ("vertex", bad_vertices[0])
        elif bad_edges:
            witness = ("edge", bad_edges[0])
        elif not face_ok:
            witness = ("face", None)
        else:
            witness = ("euler_characteristic", report.euler_characteristic)
        raise NotAManifold(witness, report)
    return report
