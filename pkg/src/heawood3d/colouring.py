"""Edge 3-colourings of 2-complexes and vertex 4-colourings of their skeleta.

The constructive route colours a triangulation with all edge degrees even by
integrating the all-ones weighting of the directed line graph: walking along
an arc adds 1 (mod 3) to the label. When the weighting has no consistent
integral, the conflicting arc closes a cycle of non-zero effective length,
which is returned as the obstruction.
"""
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from ._kernels import adjacency_csr, backtrack_colourings, constraint_order
from .complex import Triangulation3, _frozen, as_two_complex, edge_degrees
from .errors import (CapExceeded, DualNotBipartite, ImproperInput, InternalInconsistency,
                     NonOrientable)
from .linegraph import (CycleWitness, _fundamental_walk, _from_signs, conflict_witnesses,
                        corner_signs, directed_line_graph, face_signs_from_corners,
                        induce_face_orientations, orient_tetrahedra)

# Z3 colour -> non-zero element of F2 x F2, encoded as 2*b1 + b2
COLOUR_TO_VECTOR = {0: (0, 1), 1: (1, 0), 2: (1, 1)}
_CODE = np.array([1, 2, 3], dtype=np.int64)
_DECODE = np.array([-1, 0, 1, 2], dtype=np.int64)


@dataclass(frozen=True, eq=False)
class EdgeColouring:
    colours: np.ndarray

    def __eq__(self, other):
        return isinstance(other, EdgeColouring) and np.array_equal(self.colours, other.colours)

    def __hash__(self):
        return hash(tuple(self.colours))

    def as_dict(self):
        return {str(e): int(c) for e, c in enumerate(self.colours)}


@dataclass(frozen=True, eq=False)
class VertexColouring4:
    """Vertex colours in F2 x F2, stored as codes ``2*b1 + b2``."""

    codes: np.ndarray

    @classmethod
    def from_vectors(cls, vectors):
        return cls(_frozen(np.array([2 * b1 + b2 for b1, b2 in vectors], dtype=np.int64)))

    @property
    def vectors(self):
        return [(int(c) >> 1, int(c) & 1) for c in self.codes]

    def __eq__(self, other):
        return isinstance(other, VertexColouring4) and np.array_equal(self.codes, other.codes)

    def __hash__(self):
        return hash(tuple(self.codes))


@dataclass(frozen=True)
class FaceViolation:
    face: int
    edges: tuple


def verify_edge_colouring(k, c):
    """First face with two equally coloured edges, or ``None`` when proper."""
    k = as_two_complex(k)
    col = np.asarray(c.colours if isinstance(c, EdgeColouring) else c)
    fc = col[k.faces]
    for a, b in ((0, 1), (0, 2), (1, 2)):
        hit = np.flatnonzero(fc[:, a] == fc[:, b])
        if len(hit):
            f = int(hit.min())
            # report the lowest face over all slot pairs
            for a2, b2 in ((0, 1), (0, 2), (1, 2)):
                if fc[f, a2] == fc[f, b2]:
                    return FaceViolation(f, (int(k.faces[f, a2]), int(k.faces[f, b2])))
    return None


def verify_vertex_colouring(k, vc):
    """First edge whose endpoints share a colour, or ``None``."""
    k = as_two_complex(k)
    codes = np.asarray(vc.codes)
    bad = np.flatnonzero(codes[k.edges[:, 0]] == codes[k.edges[:, 1]])
    return int(bad[0]) if len(bad) else None


def integrate_potential(dl, modulus=3):
    """Labels with ``label[head] = label[tail] + 1`` on every arc, or a ``CycleWitness``.

    Each component is rooted at its lowest node, labelled 0.
    """
    pot, parent, parent_arc, depth, lengths, bad = conflict_witnesses(dl, modulus)
    if len(bad):
        arc = int(bad[0])
        nodes, arcs = _fundamental_walk(dl, arc, parent, parent_arc, depth)
        return CycleWitness(nodes, arcs, int(lengths[arc]))
    return _frozen(pot % modulus)


@dataclass(frozen=True)
class OddEdge:
    edge: int
    degree: int

    def as_dict(self):
        return {"obstruction": "odd_edge", "edge": self.edge, "degree": self.degree}


@dataclass(frozen=True)
class ConflictCycle:
    witness: CycleWitness
    orientation: str = "tetrahedra"

    def as_dict(self):
        d = {"obstruction": "conflict_cycle", "orientation": self.orientation}
        d.update(self.witness.as_dict())
        return d


@dataclass(frozen=True)
class ColouringCertificate:
    colouring: EdgeColouring = None
    obstruction: object = None
    method: str = "constructive"
    details: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.colouring is not None

    def as_dict(self):
        out = {"method": self.method}
        if self.ok:
            out["edges"] = self.colouring.as_dict()
            out["certificate"] = {"verified": True, **self.details}
        else:
            out.update(self.obstruction.as_dict())
            out["certificate"] = dict(self.details)
        return out


def _face_orientations_for(k):
    """Face orientations for the pipeline plus a note on how they were found.

    For triangulations this is the bipartition/orientation route; if it fails
    on an even complex the corner signs are propagated directly and, where
    even that is impossible, the spanning-tree values are used as they stand.
    """
    if not isinstance(k, Triangulation3):
        return induce_face_orientations(k), "chambers"
    try:
        h = orient_tetrahedra(k)
    except (DualNotBipartite, NonOrientable):
        signs, witness = corner_signs(k)
        note = "corner_signs" if witness is None else "spanning_tree"
        return _from_signs(face_signs_from_corners(k, signs, check=witness is None)), note
    return induce_face_orientations(k, h), "tetrahedra"


def colour_edges(k):
    """Constructive 3-edge-colouring, or a certified obstruction.

    ``k`` is a ``Triangulation3`` (or a 2-complex whose faces all lie on
    chambers). Odd edges are reported first; otherwise the result is either a
    verified proper colouring or a cycle of the directed line graph whose
    effective length is not divisible by 3.
    """
    deg = edge_degrees(k)
    if deg.odd_edges:
        e = deg.odd_edges[0]
        return ColouringCertificate(obstruction=OddEdge(e, int(deg.degrees[e])),
                                    details={"odd_edges": list(deg.odd_edges)})
    fo, note = _face_orientations_for(k)
    dl = directed_line_graph(k, fo)
    result = integrate_potential(dl)
    if isinstance(result, CycleWitness):
        return ColouringCertificate(obstruction=ConflictCycle(result, note),
                                    details={"orientation": note})
    colouring = EdgeColouring(result)
    bad = verify_edge_colouring(k, colouring)
    if bad is not None:
        raise InternalInconsistency(f"integrated labels are not proper at face {bad.face}")
    return ColouringCertificate(colouring=colouring, details={"orientation": note})


@dataclass(frozen=True)
class BruteForceResult:
    colourings: list
    count: int
    exhaustive: bool
    symmetry: bool
    colours: int
    search_nodes: int

    @property
    def total(self):
        """Number of colourings without the symmetry reduction (exact only if exhaustive)."""
        if not self.symmetry:
            return self.count
        c = self.colours
        return self.count * c * (c - 1) * (c - 2)


def colour_graph(n_nodes, pairs, colours, fixed=None, cap=1, store=None):
    """Backtracking vertex colouring of a multigraph; shared by edge and link searches.

    Returns (colourings, count, exhaustive, search nodes). ``cap`` bounds
    the count: the search stops after ``cap + 1`` solutions.
    """
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    start = -np.ones(n_nodes, dtype=np.int64)
    if np.any(pairs[:, 0] == pairs[:, 1]):
        return [], 0, True, 0
    fixed = dict(fixed or {})
    for v, c in fixed.items():
        start[v] = c
    ptr, nbr = adjacency_csr(n_nodes, pairs)
    for v, c in fixed.items():
        if np.any(start[nbr[ptr[v]:ptr[v + 1]]] == c):
            return [], 0, True, 0
    order = constraint_order(n_nodes, ptr, nbr, np.array(sorted(fixed), dtype=np.int64))
    store = cap if store is None else store
    count, sols, exhausted, visited = backtrack_colourings(order, ptr, nbr, colours, start,
                                                           cap + 1, store)
    found = [_frozen(sols[j].copy()) for j in range(min(count, store))]
    return found, int(count), bool(exhausted), int(visited)


def brute_force_edge_colourings(k, colours=3, cap=1000, symmetry=False, max_edges=64, strict=True):
    """Enumerate proper edge colourings by backtracking over the line graph.

    With ``symmetry`` the three edges of face 0 are fixed to colours
    (0, 1, 2), so ``total`` is six times ``count`` for three colours. At most
    ``cap`` colourings are returned; if more exist the search stops and
    ``CapExceeded`` is raised unless ``strict`` is off.
    """
    k = as_two_complex(k)
    if max_edges is not None and k.n_edges > max_edges:
        raise ValueError(f"{k.n_edges} edges exceeds the exhaustive limit of {max_edges}")
    pairs = np.concatenate([k.faces[:, [0, 1]], k.faces[:, [0, 2]], k.faces[:, [1, 2]]])
    fixed = None
    if symmetry and k.n_faces:
        if colours < 3:
            raise ValueError("symmetry reduction needs at least three colours")
        e0, e1, e2 = (int(x) for x in k.faces[0])
        if len({e0, e1, e2}) < 3:
            return BruteForceResult([], 0, True, True, colours, 0)
        fixed = {e0: 0, e1: 1, e2: 2}
    found, count, exhaustive, visited = colour_graph(k.n_edges, pairs, colours, fixed, cap)
    if not exhaustive and strict:
        raise CapExceeded(cap)
    return BruteForceResult([EdgeColouring(c) for c in found], count,
                            exhaustive, bool(fixed), colours, visited)


def heawood_colour_link(lg, max_nodes=64):
    """A proper 3-colouring of the link graph's nodes, or ``None`` if none exists."""
    if max_nodes is not None and lg.n_nodes > max_nodes:
        raise ValueError(f"link has {lg.n_nodes} nodes, limit is {max_nodes}")
    pairs = np.asarray(lg.adjacency)
    fixed = None
    if len(pairs) and pairs[0, 0] != pairs[0, 1]:
        fixed = {int(pairs[0, 0]): 0, int(pairs[0, 1]): 1}
    found, count, _, _ = colour_graph(lg.n_nodes, pairs, 3, fixed, cap=1, store=1)
    return found[0] if count else None


@dataclass(frozen=True)
class SkeletonCycle:
    """Cycle of the 1-skeleton whose colour vectors do not sum to zero."""

    vertices: tuple
    edges: tuple
    total: tuple


def vertex4_from_edge3(k, c):
    """Integrate edge colours, read as F2 x F2 vectors, over the 1-skeleton.

    Vertex 0 of each component gets (0, 0); returns a ``VertexColouring4`` or
    the ``SkeletonCycle`` through the first inconsistent edge.
    """
    k = as_two_complex(k)
    weight = _CODE[np.asarray(c.colours if isinstance(c, EdgeColouring) else c)]
    V = k.n_vertices
    code = -np.ones(V, dtype=np.int64)
    parent = -np.ones(V, dtype=np.int64)
    parent_edge = -np.ones(V, dtype=np.int64)
    depth = np.zeros(V, dtype=np.int64)
    incident = [[] for _ in range(V)]
    for e, (x, y) in enumerate(k.edges):
        incident[x].append((e, int(y)))
        if x != y:
            incident[y].append((e, int(x)))
    for root in range(V):
        if code[root] >= 0:
            continue
        code[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for e, w in incident[u]:
                if code[w] < 0:
                    code[w] = code[u] ^ weight[e]
                    parent[w], parent_edge[w], depth[w] = u, e, depth[u] + 1
                    queue.append(w)
    for e, (x, y) in enumerate(k.edges):
        if code[x] ^ code[y] != weight[e]:
            return _skeleton_cycle(int(e), int(x), int(y), parent, parent_edge, depth, weight)
    return VertexColouring4(_frozen(code))


def _skeleton_cycle(e, x, y, parent, parent_edge, depth, weight):
    px, py, ex, ey = [x], [y], [], []
    a, b = x, y
    while depth[a] > depth[b]:
        ex.append(int(parent_edge[a]))
        a = int(parent[a])
        px.append(a)
    while depth[b] > depth[a]:
        ey.append(int(parent_edge[b]))
        b = int(parent[b])
        py.append(b)
    while a != b:
        ex.append(int(parent_edge[a]))
        a = int(parent[a])
        px.append(a)
        ey.append(int(parent_edge[b]))
        b = int(parent[b])
        py.append(b)
    verts = tuple(px + py[::-1][1:] + [x])
    edges = tuple(ex + ey[::-1] + [e])
    total = 0
    for f in edges:
        total ^= int(weight[f])
    return SkeletonCycle(verts, edges, (total >> 1, total & 1))


def edge3_from_vertex4(k, vc):
    """Each edge gets the F2 x F2 sum of its endpoint colours."""
    k = as_two_complex(k)
    codes = np.asarray(vc.codes if isinstance(vc, VertexColouring4) else vc, dtype=np.int64)
    s = codes[k.edges[:, 0]] ^ codes[k.edges[:, 1]]
    zero = np.flatnonzero(s == 0)
    if len(zero):
        raise ImproperInput(int(zero[0]))
    colouring = EdgeColouring(_frozen(_DECODE[s]))
    bad = verify_edge_colouring(k, colouring)
    if bad is not None:
        raise InternalInconsistency(f"vertex colours give equal edge colours on face {bad.face}")
    return colouring


def restrict_to_link(c, lg):
    """Edge colours read on the nodes of a link graph."""
    return np.asarray(c.colours)[lg.node_edges]

