import random
from collections import Counter

import pytest
from hypothesis import assume, given, settings, strategies as st

from orthoseg.analysis import find_hamiltonian_path, is_planar_drawing, min_cover_of_drawing, segment_count
from orthoseg.drawers import (
    draw_general,
    draw_general_mso,
    draw_spine,
    draw_sp_upward,
    draw_tree_min_segments,
    draw_tree_upward,
    is_upward,
)
from orthoseg.errors import DegreeExceeded, Lemma4Violation, NotATree, NotHamiltonian
from orthoseg.ortho_rep import rep_from_drawing, segment_stats
from orthoseg.plane_graph import RootedTree
from orthoseg.spqtree import SPQNode, SPQTree, build_spq_tree, check_lemma4

import fixtures
from fixtures import K23_EDGES, THETA_EDGES
from graphgen import random_degree3_graph, random_sp_edges, random_tree_edges

BINARY7 = [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]


def formula(tree: RootedTree) -> int:
    deg = Counter(tree.degree(v) for v in tree.vertices)
    return (deg[1] + deg[3]) // 2


@pytest.mark.parametrize(
    "edges, expected",
    [([(0, 1), (1, 2), (2, 3), (3, 4)], 1), ([(0, 1), (0, 2), (0, 3)], 2), (BINARY7, 3)],
)
def test_tree_examples(edges, expected):
    d = draw_tree_min_segments(RootedTree.from_edges(edges, 0))
    assert segment_count(d) == expected
    assert is_planar_drawing(d)


def test_tree_drawer_rejects_non_trees():
    with pytest.raises(NotATree):
        draw_tree_min_segments(fixtures.path(3))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 50), st.sampled_from([3, 4]))
def test_tree_segment_formula(seed, n, max_degree):
    tree = RootedTree.from_edges(random_tree_edges(n, random.Random(seed), max_degree), 0)
    d = draw_tree_min_segments(tree)
    assert segment_count(d) == formula(tree)
    assert is_planar_drawing(d)


def test_general_on_tree_matches_tree_drawer():
    g = fixtures.path(5)
    tree = RootedTree.from_edges(g.edges, 0)
    assert segment_count(draw_general_mso(g)) == segment_count(draw_tree_min_segments(tree)) == 1


def test_four_cycle_with_pendant():
    g = fixtures.square_with_tail(1)
    d = draw_general_mso(g)
    n = segment_count(d)
    assert n in (4, 5)
    assert n == segment_stats(rep_from_drawing(g, d)).segments
    assert is_planar_drawing(d)


def test_four_cycle_general():
    assert segment_count(draw_general_mso(fixtures.cycle(4))) == 4


def test_augment_never_hurts_validity():
    g = fixtures.cube()
    for aug in (True, False):
        d = draw_general(g, augment=aug).drawing
        assert is_planar_drawing(d)
        assert rep_from_drawing(g, d) is not None


@pytest.mark.parametrize(
    "edges, s, t, cover",
    [({0: (0, 1)}, 0, 1, 1), (K23_EDGES, 0, 4, 3), (THETA_EDGES, 0, 5, 2)],
)
def test_sp_examples(edges, s, t, cover):
    tree = build_spq_tree(edges, s, t)
    d, report = draw_sp_upward(tree)
    assert report.cover_number == cover
    assert min_cover_of_drawing(d)[0] == cover
    assert d.meta["cover"] == cover
    assert is_upward(d, tree)
    assert is_planar_drawing(d)


def test_sp_rejects_structure_violation():
    bad = SPQTree(SPQNode("P", 0, 1, [SPQNode("Q", 0, 1, edge=0), SPQNode("Q", 0, 1, edge=1)]))
    with pytest.raises(Lemma4Violation):
        draw_sp_upward(bad)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 60))
def test_sp_cover_is_optimal_for_drawing(seed, n):
    edges, s, t = random_sp_edges(n, random.Random(seed))
    tree = build_spq_tree(edges, s, t)
    assume(check_lemma4(tree))
    d, report = draw_sp_upward(tree)
    assert report.cover_number == report.p_star + (2 if report.root_case else 1)
    assert min_cover_of_drawing(d)[0] == report.cover_number
    assert is_upward(d, tree)
    assert is_planar_drawing(d)


def test_tree_upward_path():
    tree = RootedTree.from_edges([(0, 1), (1, 2), (2, 3)], 0)
    d = draw_tree_upward(tree)
    assert min_cover_of_drawing(d)[0] == 1
    full = draw_tree_upward(tree, keep_double=True)
    # only the leaf is shared, so the doubled graph is a path of six edges
    assert len(full.edges) == 6
    assert min_cover_of_drawing(full)[0] == 1


def test_tree_upward_star():
    # every leaf of an upward star needs its own vertical
    tree = RootedTree.from_edges([(0, 1), (0, 2), (0, 3)], 0)
    d = draw_tree_upward(tree)
    assert min_cover_of_drawing(d)[0] == 3
    assert is_planar_drawing(d)
    assert all(d.coords[leaf][1] < d.coords[0][1] for leaf in (1, 2, 3))


def test_tree_upward_single_vertex():
    d = draw_tree_upward(RootedTree.from_edges({}, 5))
    assert d.coords == {5: (0, 0)}
    assert d.meta["cover"] == 1


def test_tree_upward_degree_limit():
    with pytest.raises(DegreeExceeded):
        draw_tree_upward(RootedTree.from_edges([(0, 1), (0, 2), (0, 3), (0, 4)], 0))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 40))
def test_tree_upward_monotone(seed, n):
    tree = RootedTree.from_edges(random_tree_edges(n, random.Random(seed), 3), 0)
    d = draw_tree_upward(tree)
    assert is_planar_drawing(d)
    for e, (u, v) in tree.edges.items():
        parent, child = (u, v) if tree.parent(v) == u else (v, u)
        pts = d.polylines[e] if d.edges[e][0] == parent else d.polylines[e][::-1]
        assert all(b[1] <= a[1] for a, b in zip(pts, pts[1:]))
        assert d.coords[child][1] < d.coords[parent][1]


def test_spine_cycle():
    g = fixtures.cycle(6)
    d = draw_spine(g, [0, 1, 2, 3, 4, 5])
    assert len({y for _, y in d.coords.values()}) == 1
    assert [x for x, _ in sorted(d.coords.values())] == list(range(6))
    assert d.bend_count() == 2
    assert min_cover_of_drawing(d)[0] == 1


def test_spine_path_graph():
    g = fixtures.path(5)
    d = draw_spine(g, [0, 1, 2, 3, 4])
    assert segment_count(d) == 1
    assert d.bend_count() == 0


def test_spine_prism():
    g = fixtures.prism()
    p = find_hamiltonian_path(g)
    d = draw_spine(g, p)
    assert min_cover_of_drawing(d)[0] == 1
    assert is_planar_drawing(d)


def test_spine_rejects_bad_paths():
    g = fixtures.cycle(6)
    with pytest.raises(NotHamiltonian):
        draw_spine(g, [0, 2, 1, 3, 4, 5])
    with pytest.raises(NotHamiltonian):
        draw_spine(g, [0, 1, 2])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(3, 12))
def test_spine_cover_one(seed, n):
    g = random_degree3_graph(n, seed)
    p = find_hamiltonian_path(g)
    assume(p is not None)
    d = draw_spine(g, p)
    assert min_cover_of_drawing(d)[0] == 1
    assert is_planar_drawing(d)
