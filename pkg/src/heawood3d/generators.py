"""Instance families: fixed triangulations, subdivisions, random walks, regluings."""
import random
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from . import perm as P
from .colouring import (ConflictCycle, _face_orientations_for, brute_force_edge_colourings,
                        colour_edges)
from .complex import (GluingTable, TwoComplex, build_triangulation, edge_degrees,
                      verify_closed_3manifold)
from .errors import NotDisjoint, ResultNotClosed, UnknownName
from .linegraph import directed_line_graph, effective_length
from .pachner import PachnerMove, applicable_moves, apply_pachner

CANONICAL = ("single_tet", "double_tet", "simplex4_boundary", "cross16")


def from_facets(facets):
    """Gluing table of a closed simplicial 3-complex given by vertex-labelled facets.

    Two facets sharing three labels are glued through the label-preserving
    corner map.
    """
    facets = [tuple(f) for f in facets]
    where = {}
    for t, f in enumerate(facets):
        for i in range(4):
            where.setdefault(frozenset(f[c] for c in range(4) if c != i), []).append((t, i))
    rows = [[None] * 4 for _ in facets]
    for S, inc in where.items():
        if len(inc) != 2:
            raise ValueError(f"triangle {sorted(S)} lies in {len(inc)} facets, expected 2")
        (t, i), (u, j) = inc
        pos_u = {lab: c for c, lab in enumerate(facets[u])}
        p = tuple(j if c == i else pos_u[facets[t][c]] for c in range(4))
        rows[t][i] = (u, p)
        rows[u][j] = (t, P.inverse(p))
    return GluingTable.from_rows(rows)


def single_tet():
    """Lone tetrahedron as a 2-complex: edges in ``perm.EDGE_PAIRS`` order, face i opposite vertex i."""
    edges = list(P.EDGE_PAIRS)
    faces = []
    for i in range(4):
        a, b, c = P.face_corners(i)
        faces.append([P.EDGE_INDEX[b, c], P.EDGE_INDEX[a, c], P.EDGE_INDEX[a, b]])
    return TwoComplex.from_lists(4, edges, faces, chambers=[[0, 1, 2, 3]])


def double_tet_table():
    return GluingTable.from_rows([[(1, P.IDENTITY)] * 4, [(0, P.IDENTITY)] * 4])


def simplex4_boundary_table():
    return from_facets([tuple(v for v in range(5) if v != k) for k in range(5)])


def cross16_table():
    """Boundary of the 4-dimensional cross-polytope.

    Tetrahedron ``m`` has corner ``i`` at ``+e_i`` (vertex label ``2i``) when
    bit ``3 - i`` of ``m`` is clear and at ``-e_i`` (label ``2i + 1``) otherwise.
    """
    facets = [tuple(2 * i + ((m >> (3 - i)) & 1) for i in range(4)) for m in range(16)]
    return from_facets(facets)


def canonical(name):
    if name == "single_tet":
        return single_tet()
    tables = {"double_tet": double_tet_table, "simplex4_boundary": simplex4_boundary_table,
              "cross16": cross16_table}
    if name not in tables:
        raise UnknownName(name)
    return build_triangulation(tables[name]())


def barycentric_subdivision(tri):
    """One tetrahedron per flag (vertex < edge < face < tetrahedron).

    Flag ``(t, pi)`` uses corner ``pi[0]`` of ``t``, the edge ``pi[0] pi[1]`` and
    the face opposite ``pi[3]``; it is tetrahedron ``24 * t + k`` where ``pi``
    is the ``k``-th permutation in lexicographic order. Corner ``d`` of every
    new tetrahedron is the barycentre of a ``d``-cell, and all gluings are the
    identity. Returns the subdivision and the dimension label of each vertex.
    """
    flags = list(permutations(range(4)))
    rank = {pi: k for k, pi in enumerate(flags)}
    table = tri.table
    rows = []
    for t in range(tri.n_tetrahedra):
        for pi in flags:
            row = [None] * 4
            for i in range(3):
                swapped = list(pi)
                swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
                row[i] = (24 * t + rank[tuple(swapped)], P.IDENTITY)
            u, p = table.gluing(t, pi[3])
            row[3] = (24 * u + rank[tuple(p[c] for c in pi)], P.IDENTITY)
            rows.append(row)
    sub = build_triangulation(GluingTable.from_rows(rows))
    dims = np.empty(sub.n_vertices, dtype=np.int64)
    dims[sub.tet_vertices.ravel()] = np.tile(np.arange(4), sub.n_tetrahedra)
    dims.flags.writeable = False
    return sub, dims


def random_walk(tri, seed, steps, simplicial=True):
    """Seeded walk of uniformly chosen applicable Pachner moves."""
    rng = random.Random(seed)
    for _ in range(steps):
        moves = applicable_moves(tri, simplicial=simplicial)
        tri = apply_pachner(tri, rng.choice(moves))
    return tri


def random_s3(seed, steps, simplicial=True):
    """Random triangulation of the 3-sphere: a Pachner walk from the double tetrahedron."""
    return random_walk(canonical("double_tet"), seed, steps, simplicial=simplicial)


@dataclass(frozen=True)
class RegluingSpec:
    """Remove ``tet_a`` and ``tet_b`` and glue corner ``c`` of the first hole to ``sigma[c]``."""

    tet_a: int
    tet_b: int
    sigma: tuple = P.IDENTITY


def vertex_disjoint_pairs(tri):
    """Pairs ``a < b`` of tetrahedra with four distinct vertices each and none in common."""
    verts = [set(int(v) for v in row) for row in tri.tet_vertices]
    good = [t for t, vs in enumerate(verts) if len(vs) == 4]
    return [(a, b) for k, a in enumerate(good) for b in good[k + 1:] if not verts[a] & verts[b]]


def twisted_reglue(tri, spec):
    a, b, sigma = spec.tet_a, spec.tet_b, tuple(spec.sigma)
    va, vb = set(tri.tet_vertices[a].tolist()), set(tri.tet_vertices[b].tolist())
    if a == b or len(va) != 4 or len(vb) != 4 or va & vb:
        raise NotDisjoint(f"tetrahedra {a} and {b} are not vertex-disjoint")
    table = tri.table
    keep = [t for t in range(table.n_tetrahedra) if t not in (a, b)]
    index = {t: k for k, t in enumerate(keep)}
    rows = [[table.gluing(t, i) for i in range(4)] for t in keep]
    for i in range(4):
        u, p = table.gluing(a, i)
        w, q = table.gluing(b, sigma[i])
        if u in (a, b) or w in (a, b):
            raise NotDisjoint(f"tetrahedra {a} and {b} touch each other or themselves")
        # corner of u -> corner of a -> corner of b -> corner of w
        g = P.compose(q, P.compose(sigma, P.inverse(p)))
        rows[index[u]][p[i]] = (w, g)
        rows[index[w]][q[sigma[i]]] = (u, P.inverse(g))
    rows = [[(index[u], p) for u, p in row] for row in rows]
    try:
        return build_triangulation(GluingTable.from_rows(rows))
    except ValueError as exc:
        raise ResultNotClosed(str(exc)) from exc


@dataclass
class SearchResult:
    hit: object = None
    certificate: dict = None
    log: list = field(default_factory=list)
    candidates: int = 0

    @property
    def found(self):
        return self.hit is not None


def certify_counterexample(tri):
    """Re-verify a candidate: even degrees, no colouring, a conflict cycle, valid links."""
    deg = edge_degrees(tri)
    brute = brute_force_edge_colourings(tri, symmetry=True, cap=1, max_edges=None, strict=False)
    cert = colour_edges(tri)
    conflict = cert.obstruction if isinstance(cert.obstruction, ConflictCycle) else None
    eff = None
    if conflict is not None:
        dl = directed_line_graph(tri, _face_orientations_for(tri)[0])
        eff = effective_length(dl, conflict.witness)
    report = verify_closed_3manifold(tri, strict=False)
    return {
        "degrees": [int(d) for d in deg.degrees],
        "all_even": deg.all_even,
        "brute_force": {"count": brute.count, "exhaustive": brute.exhaustive,
                        "search_nodes": brute.search_nodes},
        "conflict_cycle": conflict.witness.as_dict() if conflict else None,
        "effective_length": eff,
        "orientation": conflict.orientation if conflict else None,
        "manifold": report.as_dict(),
        "valid": bool(deg.all_even and brute.exhaustive and brute.count == 0 and eff is not None
                      and eff % 3 != 0 and report.ok),
    }


def counterexample_search(tri, stop_at_first=True):
    """Look for a regluing of two vertex-disjoint tetrahedra that is even but not 3-colourable.

    Candidates run over pairs ``(a, b)`` in lexicographic order and, for each,
    the 24 corner bijections in lexicographic order. Every candidate is logged
    once as ``candidate a,b sigma even=<bool> colourable=<bool>``.
    """
    result = SearchResult()
    for a, b in vertex_disjoint_pairs(tri):
        for sigma in P.ALL_PERMS:
            result.candidates += 1
            cand = twisted_reglue(tri, RegluingSpec(a, b, sigma))
            deg = edge_degrees(cand)
            head = f"candidate {a},{b} {P.format_perm(sigma)}"
            if not deg.all_even:
                # an odd edge already rules out a colouring at its endpoint's link
                result.log.append(f"{head} even=false colourable=false odd_edge={deg.odd_edges[0]}")
                continue
            brute = brute_force_edge_colourings(cand, symmetry=True, cap=1, max_edges=None,
                                                strict=False)
            colourable = brute.count > 0
            result.log.append(f"{head} even=true colourable={str(colourable).lower()}")
            if colourable or not brute.exhaustive:
                continue
            cert = certify_counterexample(cand)
            if not cert["valid"]:
                raise ResultNotClosed(f"candidate {a},{b} {P.format_perm(sigma)} failed re-verification")
            if result.hit is None:
                result.hit = (cand, RegluingSpec(a, b, sigma))
                result.certificate = cert
            if stop_at_first:
                return result
    return result


__all__ = [
    "CANONICAL", "PachnerMove", "RegluingSpec", "SearchResult", "apply_pachner",
    "applicable_moves", "barycentric_subdivision", "canonical", "certify_counterexample",
    "counterexample_search", "cross16_table", "double_tet_table", "from_facets", "random_s3",
    "random_walk", "simplex4_boundary_table", "single_tet", "twisted_reglue",
    "vertex_disjoint_pairs",
]
