import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from heawood3d import (GluingTable, build_triangulation, dual_graph, edge_degrees, link_graph,
                       random_s3, two_skeleton, verify_closed_3manifold)
from heawood3d.complex import TwoComplex
from heawood3d.errors import NonInvolutiveGluing, NotAManifold, OpenFace, SelfIdentityGluing

ID = (0, 1, 2, 3)


@pytest.mark.parametrize("name,counts", [
    ("double", {"V": 4, "E": 6, "F": 4, "T": 2}),
    ("simplex4", {"V": 5, "E": 10, "F": 10, "T": 5}),
    ("cross16", {"V": 8, "E": 24, "F": 32, "T": 16}),
])
def test_cell_counts(request, name, counts):
    tri = request.getfixturevalue(name)
    assert tri.counts == counts
    assert tri.euler_characteristic == 0


def test_cells_are_discovered_in_scan_order(double):
    # corners of tetrahedron 0 are met first
    assert double.tet_vertices[0].tolist() == [0, 1, 2, 3]
    assert double.tet_edges[0].tolist() == [0, 1, 2, 3, 4, 5]
    assert double.tet_faces[0].tolist() == [0, 1, 2, 3]


def test_build_is_deterministic(cross16):
    again = build_triangulation(cross16.table)
    for name in ("tet_vertices", "tet_edges", "tet_faces", "edge_ends", "face_edges"):
        assert np.array_equal(getattr(again, name), getattr(cross16, name))


def test_arrays_are_read_only(double):
    with pytest.raises(ValueError):
        double.tet_edges[0, 0] = 3


def test_open_face_rejected():
    rows = [[(1, ID)] * 4, [(0, ID)] * 3 + [None]]
    with pytest.raises(OpenFace) as exc:
        build_triangulation(GluingTable.from_rows(rows))
    assert (exc.value.tet, exc.value.face) == (1, 3)


def test_mismatched_reverse_rejected():
    rows = [[(1, ID)] * 4, [(0, ID)] * 3 + [(0, (0, 1, 3, 2))]]
    with pytest.raises(NonInvolutiveGluing) as exc:
        build_triangulation(GluingTable.from_rows(rows))
    assert exc.value.tet == 0


def test_identity_self_gluing_rejected():
    rows = [[(0, ID), (0, ID), (0, ID), (0, ID)]]
    with pytest.raises(SelfIdentityGluing):
        build_triangulation(GluingTable.from_rows(rows))


def test_self_gluing_across_distinct_faces_allowed():
    swap01, swap23 = (1, 0, 2, 3), (0, 1, 3, 2)
    tri = build_triangulation(GluingTable.from_rows([[(0, swap01), (0, swap01), (0, swap23), (0, swap23)]]))
    assert tri.counts == {"V": 2, "E": 3, "F": 2, "T": 1}
    assert verify_closed_3manifold(tri).ok


def test_non_manifold_vertex_reported():
    rows = [[(0, (1, 2, 0, 3)), (0, (2, 0, 1, 3)), (0, (0, 1, 3, 2)), (0, (0, 1, 3, 2))]]
    tri = build_triangulation(GluingTable.from_rows(rows))
    report = verify_closed_3manifold(tri, strict=False)
    assert not report.ok
    with pytest.raises(NotAManifold):
        verify_closed_3manifold(tri)


def test_two_skeleton(double, simplex4):
    k = two_skeleton(double)
    assert isinstance(k, TwoComplex) and k.n_faces == 4
    assert np.array_equal(k.faces, double.face_edges)
    assert set(edge_degrees(k).degrees.tolist()) == {2}
    assert len(k.chambers) == 2
    assert set(edge_degrees(two_skeleton(simplex4)).degrees.tolist()) == {3}


def test_edge_degrees(single, simplex4, cross16):
    assert edge_degrees(single).degrees.tolist() == [2] * 6
    d = edge_degrees(simplex4)
    assert d.degrees.tolist() == [3] * 10 and d.odd_edges == tuple(range(10)) and not d.all_even
    assert edge_degrees(cross16).degrees.tolist() == [4] * 24


def test_two_complex_rejects_non_triangle():
    with pytest.raises(ValueError):
        TwoComplex.from_lists(4, [(0, 1), (1, 2), (2, 3)], [(0, 1, 2)])


def test_link_graphs(double, simplex4, cross16):
    lg = link_graph(double, 0)
    assert (lg.n_nodes, len(lg.adjacency), len(lg.triangles)) == (3, 3, 2)
    assert lg.euler_characteristic == 2 and lg.is_connected()
    for v in range(5):
        lg = link_graph(simplex4, v)
        assert (lg.n_nodes, len(lg.adjacency), len(lg.triangles)) == (4, 6, 4)
        pairs = {frozenset(p) for p in lg.adjacency.tolist()}
        assert len(pairs) == 6  # K4
    for v in range(8):
        lg = link_graph(cross16, v)
        assert (lg.n_nodes, len(lg.adjacency), len(lg.triangles)) == (6, 12, 8)
        assert lg.node_degrees().tolist() == [4] * 6


def test_link_node_degree_is_edge_degree(cross16):
    deg = edge_degrees(cross16).degrees
    for v in range(cross16.n_vertices):
        lg = link_graph(cross16, v)
        assert np.array_equal(lg.node_degrees(), deg[lg.node_edges])


def test_dual_graphs(double, simplex4, cross16):
    d = dual_graph(double)
    assert d.n_nodes == 2 and len(d.edges) == 4
    assert all(sorted(e) == [0, 1] for e in d.edges.tolist())
    pairs = {frozenset(e) for e in dual_graph(simplex4).edges.tolist()}
    assert pairs == {frozenset((a, b)) for a in range(5) for b in range(a + 1, 5)}
    # the 16-cell facets are sign vectors; neighbours differ in one sign
    q = {frozenset(e) for e in dual_graph(cross16).edges.tolist()}
    assert q == {frozenset((m, m ^ (1 << k))) for m in range(16) for k in range(4)}


def test_manifold_checks(double, cross16, simplex4):
    for tri in (double, cross16, simplex4):
        assert verify_closed_3manifold(tri).ok


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.integers(0, 14))
def test_random_invariants(seed, steps):
    tri = random_s3(seed, steps)
    deg = edge_degrees(tri).degrees
    assert deg.sum() == 3 * tri.n_faces
    assert [len(tri.edge_orbits[e]) for e in range(tri.n_edges)] == deg.tolist()
    d = dual_graph(tri)
    assert len(d.edges) == tri.n_faces and set(d.degrees().tolist()) == {4}
    assert verify_closed_3manifold(tri).ok


def scan_link(tri, v):
    """Reference link: one pass over corners and faces for a single vertex."""
    from heawood3d import perm as P
    ends, node_edges = {}, []

    def node(t, a, b):
        end = int(tri.edge_ends[t, P.ORDERED_INDEX[a, b]])
        if end not in ends:
            ends[end] = len(ends)
            node_edges.append(int(tri.tet_edges[t, P.EDGE_INDEX[a, b]]))
        return ends[end]

    triangles = [[node(t, a, b) for b in range(4) if b != a] for t, a in tri.vertex_orbits[v]]
    adjacency, faces = [], []
    for f, (t, i) in enumerate(tri.face_reps.tolist()):
        corners = P.face_corners(i)
        for c in corners:
            if tri.tet_vertices[t, c] == v:
                x, y = (d for d in corners if d != c)
                adjacency.append((node(t, c, x), node(t, c, y)))
                faces.append(f)
    rank = {ends[e]: k for k, e in enumerate(sorted(ends))}
    ne = [node_edges[ends[e]] for e in sorted(ends)]
    return ne, [(rank[a], rank[b]) for a, b in adjacency], faces, [[rank[n] for n in tr] for tr in triangles]


@pytest.mark.parametrize("make", [lambda: random_s3(11, 25), lambda: random_s3(2, 9)])
def test_batched_links_match_scan(make, cross16, double):
    for tri in (make(), cross16, double):
        for v in range(tri.n_vertices):
            lg = link_graph(tri, v)
            ne, adj, faces, tris = scan_link(tri, v)
            assert lg.node_edges.tolist() == ne and lg.adjacency.tolist() == [list(p) for p in adj]
            assert lg.adjacency_faces.tolist() == faces and lg.triangles.tolist() == tris
