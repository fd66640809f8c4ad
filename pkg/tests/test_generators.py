import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from heawood3d import (PachnerMove, RegluingSpec, applicable_moves, apply_pachner,
                       barycentric_subdivision, canonical, colour_edges, counterexample_search,
                       edge_degrees, random_s3, twisted_reglue, verify_closed_3manifold,
                       verify_vertex_colouring)
from heawood3d.colouring import VertexColouring4
from heawood3d.errors import MoveNotApplicable, NotDisjoint, UnknownName
from heawood3d.fileio import serialize_gluing_file
from heawood3d.generators import certify_counterexample, vertex_disjoint_pairs
from heawood3d.pachner import is_applicable
from heawood3d.complex import TwoComplex


def test_canonical(single, double, cross16):
    assert isinstance(single, TwoComplex) and single.n_edges == 6
    assert double.n_tetrahedra == 2 and set(edge_degrees(double).degrees.tolist()) == {2}
    assert cross16.n_tetrahedra == 16 and set(edge_degrees(cross16).degrees.tolist()) == {4}
    with pytest.raises(UnknownName):
        canonical("poincare")


@pytest.mark.parametrize("name,counts", [
    ("double", {"V": 16, "E": 64, "F": 96, "T": 48}),
    ("simplex4", {"V": 30, "E": 150, "F": 240, "T": 120}),
])
def test_subdivision(request, name, counts):
    sub, dims = barycentric_subdivision(request.getfixturevalue(name))
    assert sub.counts == counts
    assert edge_degrees(sub).all_even
    assert verify_vertex_colouring(sub, VertexColouring4(dims)) is None
    assert verify_closed_3manifold(sub).ok
    # one vertex per cell of the base
    base = request.getfixturevalue(name)
    assert np.bincount(dims).tolist() == [base.n_vertices, base.n_edges, base.n_faces, base.n_tetrahedra]


def test_pachner_signatures(double):
    t = apply_pachner(double, PachnerMove("1-4", 0))
    assert (t.n_tetrahedra, t.n_vertices) == (5, 5)
    back = apply_pachner(t, PachnerMove("4-1", t.n_vertices - 1))
    assert back.counts == double.counts

    t = apply_pachner(double, PachnerMove("2-3", 0))
    assert t.counts == {"V": 4, "E": 7, "F": 6, "T": 3}
    new = [e for e in range(t.n_edges) if edge_degrees(t).degrees[e] == 3]
    assert len(new) == 1
    assert apply_pachner(t, PachnerMove("3-2", new[0])).counts == double.counts


def test_pachner_not_applicable(double):
    with pytest.raises(MoveNotApplicable):
        apply_pachner(double, PachnerMove("3-2", 0))
    with pytest.raises(MoveNotApplicable):
        apply_pachner(double, PachnerMove("1-4", 7))
    assert not is_applicable(double, PachnerMove("4-1", 0))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 1000), st.integers(0, 20))
def test_random_walks_stay_manifolds(seed, steps):
    tri = random_s3(seed, steps)
    assert verify_closed_3manifold(tri).ok
    for m in applicable_moves(tri)[:6]:
        after = apply_pachner(tri, m)
        d = {"1-4": (3, 1, 4), "4-1": (-3, -1, -4), "2-3": (1, 0, 1), "3-2": (-1, 0, -1)}[m.kind]
        assert (after.n_tetrahedra - tri.n_tetrahedra, after.n_vertices - tri.n_vertices,
                after.n_edges - tri.n_edges) == d
        assert verify_closed_3manifold(after).ok


def test_random_s3_reproducible(double):
    assert serialize_gluing_file(random_s3(1, 0)) == serialize_gluing_file(double)
    assert serialize_gluing_file(random_s3(7, 15)) == serialize_gluing_file(random_s3(7, 15))
    assert serialize_gluing_file(random_s3(7, 15)) != serialize_gluing_file(random_s3(8, 15))


def test_subdivided_walks_colour():
    for seed in (1, 2, 3):
        sub, _ = barycentric_subdivision(random_s3(seed, 10))
        assert colour_edges(sub).ok


def test_twisted_reglue_cross16(cross16):
    assert vertex_disjoint_pairs(cross16)[0] == (0, 15)
    out = twisted_reglue(cross16, RegluingSpec(0, 15))
    assert out.n_tetrahedra == 14
    out.table.validate()
    with pytest.raises(NotDisjoint):
        twisted_reglue(cross16, RegluingSpec(0, 1))


def test_search_hit_is_certified(cross16):
    res = counterexample_search(cross16)
    assert res.found
    cand, spec = res.hit
    assert (spec.tet_a, spec.tet_b) == (0, 15)
    cert = certify_counterexample(cand)
    assert cert["valid"] and cert["all_even"] and cert["brute_force"]["count"] == 0
    assert cert["effective_length"] % 3 != 0
    assert res.log[-1].startswith("candidate 0,15 ") and res.log[-1].endswith("even=true colourable=false")


def test_search_log_has_odd_edges():
    res = counterexample_search(canonical("cross16"), stop_at_first=False)
    assert res.candidates == len(res.log) == 8 * 24
    odd = [line for line in res.log if "even=false" in line]
    assert all(" odd_edge=" in line for line in odd)
    assert sum("colourable=true" in line for line in res.log) == 32


def test_odd_candidates_are_logged_and_skipped():
    base = random_s3(3, 20)
    res = counterexample_search(base, stop_at_first=False)
    assert not res.found and res.candidates == 24 * len(vertex_disjoint_pairs(base)) == 48
    assert res.log[0] == "candidate 0,15 0123 even=false colourable=false odd_edge=0"
    seen = [tuple(line.split()[1:3]) for line in res.log]
    assert len(set(seen)) == len(seen)
