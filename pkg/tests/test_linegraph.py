import numpy as np
import pytest

from heawood3d import (DirectedLineGraph, directed_line_graph, effective_length,
                       fundamental_cycle_check, induce_face_orientations, orient_tetrahedra,
                       spatial_line_graph, tetrahedron_cycles)
from heawood3d.complex import TwoComplex
from heawood3d.errors import ArcNotIncident, DualNotBipartite, WalkNotClosed
from heawood3d.linegraph import CycleWitness, _from_signs, to_dot

from conftest import arcs_graph


def simple_cycles(dl):
    """Every simple cycle of the underlying multigraph, as (nodes, arcs), both directions."""
    inc = [[] for _ in range(dl.n_nodes)]
    for a, (t, h) in enumerate(zip(dl.tails.tolist(), dl.heads.tolist())):
        inc[t].append((a, h))
        inc[h].append((a, t))
    found = []

    def dfs(start, v, nodes, arcs):
        for a, w in inc[v]:
            if arcs and a == arcs[-1]:
                continue
            if w == start and (len(arcs) >= 2 or a != (arcs[0] if arcs else -1)):
                found.append((nodes + [w], arcs + [a]))
            elif w > start and w not in nodes:
                dfs(start, w, nodes + [w], arcs + [a])

    for s in range(dl.n_nodes):
        dfs(s, s, [s], [])
    return found


def triangle():
    return TwoComplex.from_lists(3, [(0, 1), (1, 2), (0, 2)], [(0, 1, 2)])


def test_line_graph_of_single_tet_is_octahedron(single):
    lg = spatial_line_graph(single)
    assert lg.n_nodes == 6 and len(lg.links) == 12
    pairs = {frozenset(p) for p in lg.links.tolist()}
    assert len(pairs) == 12
    # K_{2,2,2}: the non-neighbours are the opposite edges 01/23, 02/13, 03/12
    missing = {frozenset((a, b)) for a in range(6) for b in range(a + 1, 6)} - pairs
    assert missing == {frozenset((0, 5)), frozenset((1, 4)), frozenset((2, 3))}


def test_line_graph_counts(double):
    assert len(spatial_line_graph(triangle()).links) == 3
    lg = spatial_line_graph(double)
    assert lg.n_nodes == 6 and len(lg.links) == 12
    assert np.bincount(lg.link_faces).tolist() == [3, 3, 3, 3]


def test_orientations(double, simplex4, cross16):
    h = orient_tetrahedra(double)
    assert h.handedness.tolist() == [1, -1]
    assert (h.label(0), h.label(1)) == ("Right", "Left")
    with pytest.raises(DualNotBipartite) as exc:
        orient_tetrahedra(simplex4)
    w = exc.value.witness
    assert w.length == 3 and w.tets[0] == w.tets[-1]
    for j, f in enumerate(w.faces):
        assert f in simplex4.tet_faces[w.tets[j]] and f in simplex4.tet_faces[w.tets[j + 1]]
    h = orient_tetrahedra(cross16)
    parity = [1 if bin(m).count("1") % 2 == 0 else -1 for m in range(16)]
    assert h.handedness.tolist() == parity


def test_adjacent_tetrahedra_have_opposite_handedness(cross16):
    h = orient_tetrahedra(cross16).handedness
    for (t, _), (u, _) in zip(cross16.face_reps.tolist(), cross16.face_other.tolist()):
        assert h[t] == -h[u]


@pytest.mark.parametrize("name,faces", [("double", 4), ("cross16", 32)])
def test_face_orientations(request, name, faces):
    tri = request.getfixturevalue(name)
    fo = induce_face_orientations(tri, orient_tetrahedra(tri))
    assert len(fo.order) == faces
    for f in range(faces):
        assert sorted(fo.edge_cycle(tri, f)) == sorted(tri.face_edges[f].tolist())


def test_directed_line_graph_shape(single, double):
    dl = directed_line_graph(triangle(), _from_signs([1]))
    t, h = dl.tails.tolist(), dl.heads.tolist()
    assert sorted(zip(t, h)) in ([(0, 1), (1, 2), (2, 0)], [(0, 2), (1, 0), (2, 1)])
    for k in (single, double):
        dl = directed_line_graph(k, induce_face_orientations(k))
        assert (dl.n_nodes, dl.n_arcs) == (6, 12)


def test_underlying_graph_is_line_graph(cross16):
    dl = directed_line_graph(cross16, induce_face_orientations(cross16))
    lg = spatial_line_graph(cross16)
    key = lambda pairs, faces: sorted((f, min(p), max(p)) for p, f in zip(pairs.tolist(), faces.tolist()))
    assert key(dl.underlying_links(), dl.arc_faces) == key(lg.links, lg.link_faces)


def test_tetrahedron_cycle_counts(single, double, simplex4):
    for k, faces, verts in ((double, 4, 8), (simplex4, 10, 20), (single, 4, 4)):
        cycles = tetrahedron_cycles(k)
        assert sum(c.kind == "face" for c in cycles) == faces
        assert sum(c.kind == "vertex" for c in cycles) == verts


@pytest.mark.parametrize("name", ["single", "double", "cross16"])
def test_tetrahedron_cycles_have_length_three(request, name):
    k = request.getfixturevalue(name)
    dl = directed_line_graph(k, induce_face_orientations(k))
    assert {effective_length(dl, c.walk(dl)) for c in tetrahedron_cycles(k)} <= {3, -3}


def test_effective_length_basics():
    tri3 = arcs_graph(3, [(0, 1), (1, 2), (2, 0)])
    assert effective_length(tri3, ([0, 1, 2, 0], [0, 1, 2])) == 3
    assert effective_length(tri3, ([0, 2, 1, 0], [2, 1, 0])) == -3
    with pytest.raises(WalkNotClosed):
        effective_length(tri3, ([0, 1, 2], [0, 1]))
    with pytest.raises(ArcNotIncident):
        effective_length(tri3, ([0, 2, 1, 0], [0, 1, 2]))


def test_cycle_check_tree_and_witness():
    sq = arcs_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    res = fundamental_cycle_check(sq, 3)
    assert not res.ok and res.checked == 1
    assert abs(res.witness.effective_length) == 4
    assert effective_length(sq, res.witness) == res.witness.effective_length
    assert fundamental_cycle_check(sq, 4).ok


def test_cycle_check_matches_all_simple_cycles(single):
    dl = directed_line_graph(single, induce_face_orientations(single))
    cycles = simple_cycles(dl)
    assert len(cycles) > 50
    assert all(effective_length(dl, c) % 3 == 0 for c in cycles)
    assert fundamental_cycle_check(dl, 3).ok
    # one face flipped against the chamber: some cycle breaks, and the check sees it
    signs = induce_face_orientations(single).signs.copy()
    signs[0] *= -1
    bad = directed_line_graph(single, _from_signs(signs))
    assert any(effective_length(bad, c) % 3 for c in simple_cycles(bad))
    res = fundamental_cycle_check(bad, 3)
    assert not res.ok and res.witness.effective_length % 3 != 0


def test_cycle_check_on_cross16(cross16):
    dl = directed_line_graph(cross16, induce_face_orientations(cross16))
    res = fundamental_cycle_check(dl, 3)
    assert res.ok and res.checked == 96 - 23


def test_first_failure_is_lowest_arc():
    # two independent 4-cycles; the reported one contains the lower non-tree arc
    g = arcs_graph(7, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (6, 0)])
    w = fundamental_cycle_check(g, 3).witness
    assert isinstance(w, CycleWitness) and w.arcs[0] == min(w.arcs[0], 7)
    assert set(w.arcs) <= {0, 1, 2, 3}


def test_dot_export(double):
    dot = to_dot(spatial_line_graph(double))
    assert dot.startswith("graph L {") and "e1 -- e0 [face=3];" in dot
    dl = directed_line_graph(double, induce_face_orientations(double))
    ddot = to_dot(dl, directed=True)
    assert ddot.count("->") == 12 and "[face=3]" in ddot
    assert isinstance(dl, DirectedLineGraph)
