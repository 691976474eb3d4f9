"""Acceptance criteria 1-10, one pass/fail line each (see the terminal summary)."""

import io
import random
import time

import networkx as nx
import pytest

from orthoseg.analysis import (
    brute_force_mso,
    extract_segments,
    find_conflicts,
    find_hamiltonian_path,
    is_planar_drawing,
    min_cover_of_drawing,
    segment_count,
)
from orthoseg.augment import _bipartite_of_walk, _crosses, planar_max_matching
from orthoseg.cli import run
from orthoseg.compaction import compact, shape_from_rep
from orthoseg.drawers import (
    draw_general,
    draw_general_mso,
    draw_spine,
    draw_sp_upward,
    draw_tree_min_segments,
    draw_tree_upward,
    is_upward,
    solve_shape,
)
from orthoseg.io import dump_graph
from orthoseg.ortho_rep import rep_from_drawing, segment_stats, validate_rep
from orthoseg.plane_graph import RootedTree
from orthoseg.spqtree import build_spq_tree, check_lemma4

import fixtures
from conftest import CRITERIA
from fixtures import K23_EDGES, PLUS, THETA_EDGES, U_WITH_WALL_VERTEX, polygon_rep
from graphgen import random_degree3_graph, random_grid_graph, random_plane_graph, random_sp_edges, random_tree_edges
from test_augment import exhaustive
from test_drawers import formula


def report(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    CRITERIA.append(line)
    print(line)


def corpus_min_degree_2(count=200, max_n=30):
    rng = random.Random(2026)
    return [random_plane_graph(rng.randint(3, max_n), rng.randrange(10**6)) for _ in range(count)]


def _mutate(r, rng):
    """Break P1 at one vertex, or P2 on the two faces beside one edge."""
    g = r.graph
    bad = r.__class__(g, dict(r.angles), dict(r.bends))
    if rng.random() < 0.5:
        d = rng.choice(sorted(bad.angles))
        bad.angles[d] += 1 if bad.angles[d] < 4 else -1
        return bad, "P1", {g.head(d)}
    e = rng.choice([e for e in g.edges if g.face_of_dart[(e, 0)] != g.face_of_dart[(e, 1)]])
    bad.bends[e] = bad.bends.get(e, "") + "L"
    return bad, "P2", {g.face_of_dart[(e, 0)], g.face_of_dart[(e, 1)]}


def test_criterion_1_validator():
    rng = random.Random(1)
    t0 = time.perf_counter()
    valid = caught = 0
    graphs = corpus_min_degree_2()
    for g in graphs:
        _, _, r = solve_shape(g)
        valid += bool(validate_rep(r))
        bad, cls, where = _mutate(r, rng)
        rep = validate_rep(bad)
        caught += (not rep) and rep.condition == cls and rep.where in where
    dt = time.perf_counter() - t0
    ok = valid == caught == len(graphs) and dt < 5
    report(1, ok, f"{valid}/{len(graphs)} decoded reps valid, {caught} mutations caught, {dt:.2f}s")
    assert ok


@pytest.mark.xfail(strict=True, reason="identity as stated omits the halving of the V3 term; see README")
def test_criterion_2_cost_identity_as_stated():
    mismatched = 0
    graphs = corpus_min_degree_2()
    example = None
    for g in graphs:
        _, fa, r = solve_shape(g)
        s = segment_stats(r)
        nseg = len(extract_segments(compact(r)))
        if fa.total_cost_x2 != 2 * (2 * s.v4 + s.v3 + nseg):
            mismatched += 1
            example = example or (len(g.vertices), fa.total_cost_x2 / 2, 2 * s.v4 + s.v3 + nseg)
    report(2, mismatched == 0, f"{mismatched}/{len(graphs)} instances violate cost/2 = 2*V4 + V3 + #s; e.g. n, lhs, rhs = {example}")
    assert mismatched == 0


def test_cost_identity_with_half_v3():
    for g in corpus_min_degree_2():
        _, fa, r = solve_shape(g)
        s = segment_stats(r)
        nseg = len(extract_segments(compact(r)))
        assert fa.total_cost_x2 == 4 * s.v4 + s.v3 + 2 * nseg


def atlas_corpus():
    out = []
    for G in nx.graph_atlas_g():
        n = G.number_of_nodes()
        if not 3 <= n <= 6 or not nx.is_connected(G):
            continue
        degs = [d for _, d in G.degree()]
        if min(degs) < 2 or max(degs) > 4 or not nx.check_planarity(G)[0]:
            continue
        g = fixtures.embed(G)
        out.extend(fixtures.embed(G, f) for f in range(len(g.faces)))
    return out


def test_criterion_3_optimality():
    t0 = time.perf_counter()
    corpus = atlas_corpus()
    agree = enlarged = 0
    for g in corpus:
        best = brute_force_mso(g)
        if best is None:
            enlarged += 1
            best = brute_force_mso(g, bend_budget=12)
        agree += best is not None and best == segment_count(draw_general_mso(g))
    dt = time.perf_counter() - t0
    ok = agree == len(corpus) >= 50 and dt < 60
    report(3, ok, f"{agree}/{len(corpus)} embeddings optimal, {dt:.1f}s (bend budget raised 4 -> 12 for {enlarged})")
    assert ok


def test_criterion_4_canonical():
    got = (
        segment_count(draw_general_mso(fixtures.cycle(4))),
        draw_sp_upward(build_spq_tree(K23_EDGES, 0, 4))[1].cover_number,
        draw_sp_upward(build_spq_tree(THETA_EDGES, 0, 5))[1].cover_number,
        segment_count(draw_general_mso(fixtures.path(2))),
    )
    ok = got == (4, 3, 2, 1)
    report(4, ok, f"C4 segments, K23 cover, theta cover, edge segments = {got}")
    assert ok


def augment_faces():
    faces = []
    for ang in (PLUS, U_WITH_WALL_VERTEX, [1, 1, 1, 1, 3, 1]):
        sh = shape_from_rep(polygon_rep(ang))
        faces.extend(_bipartite_of_walk(sh, w) for w in sh.faces())
    for seed in range(40):
        _, _, r = solve_shape(random_plane_graph(random.Random(seed).randint(4, 20), seed))
        sh = shape_from_rep(r)
        faces.extend(_bipartite_of_walk(sh, w) for w in sh.faces())
    return [b for b in faces if (b.h_pairs or b.v_pairs) and len(b.ports) <= 12]


def test_criterion_5_augmentation():
    faces = augment_faces()
    maximum = clean = 0
    for b in faces:
        fp = planar_max_matching(b)
        maximum += len(fp.h) == exhaustive(b.h_pairs) and len(fp.v) == exhaustive(b.v_pairs)
        ok_face = True
        for mine, pairs in ((fp.h, b.h_pairs), (fp.v, b.v_pairs)):
            flat = [k for p in mine for k in p]
            ok_face &= set(mine) <= set(pairs) and len(flat) == len(set(flat))
            ok_face &= not any(_crosses(p, q) for p in mine for q in mine)
        clean += ok_face
    drawn = collinear = 0
    for seed in range(60):
        g = random_plane_graph(random.Random(seed).randint(4, 40), seed, pendant_rate=0.2)
        res = draw_general(g)
        for u, v, kind in res.plan.vertex_pairs():
            drawn += 1
            axis = 1 if kind == "H" else 0
            collinear += res.drawing.coords[u][axis] == res.drawing.coords[v][axis]
    ok = len(faces) >= 20 and maximum == clean == len(faces) and collinear == drawn
    report(5, ok, f"{maximum}/{len(faces)} faces maximum, {clean} conflict-free, {collinear}/{drawn} pairs collinear")
    assert ok


def test_criterion_6_trees():
    rng = random.Random(6)
    good = 0
    for _ in range(100):
        tree = RootedTree.from_edges(random_tree_edges(rng.randint(2, 50), rng), 0)
        d = draw_tree_min_segments(tree)
        good += segment_count(d) == formula(tree) and is_planar_drawing(d)
    report(6, good == 100, f"{good}/100 trees hit (V1 + V3)/2 with a planar drawing")
    assert good == 100


def test_criterion_7_series_parallel():
    rng = random.Random(7)
    tested = good = tries = 0
    while tested < 100 and tries < 5000:
        tries += 1
        edges, s, t = random_sp_edges(rng.randint(2, 60), rng)
        tree = build_spq_tree(edges, s, t)
        if not check_lemma4(tree):
            continue
        tested += 1
        d, rep = draw_sp_upward(tree)
        good += is_planar_drawing(d) and is_upward(d, tree) and min_cover_of_drawing(d)[0] == rep.cover_number
    ok = tested == good == 100
    report(7, ok, f"{good}/{tested} SP drawings planar, upward and cover-optimal")
    assert ok


def spine_corpus():
    out = [g for G in nx.graph_atlas_g() if 2 <= G.number_of_nodes() and nx.is_connected(G)
           and max(d for _, d in G.degree()) <= 3 and nx.check_planarity(G)[0]
           for g in [fixtures.embed(G)]]
    rng = random.Random(8)
    out += [random_degree3_graph(rng.randint(3, 12), rng.randrange(10**6)) for _ in range(150)]
    out += [fixtures.prism(), fixtures.cube(), fixtures.cycle(12)]
    return [g for g in out if len(g.vertices) <= 12]


def test_criterion_8_spine():
    tested = good = 0
    for g in spine_corpus():
        p = find_hamiltonian_path(g)
        if p is None:
            continue
        tested += 1
        d = draw_spine(g, p)
        good += is_planar_drawing(d) and min_cover_of_drawing(d)[0] == 1
    ok = tested == good and tested > 0
    report(8, ok, f"{good}/{tested} Hamiltonian graphs drawn with cover 1")
    assert ok


def test_criterion_9_round_trip():
    rng = random.Random(9)
    reps = crossings = total = 0
    for _ in range(100):
        g = random_plane_graph(rng.randint(3, 40), rng.randrange(10**6))
        for mode in ("segment-min", "bend-min"):
            _, _, r = solve_shape(g, mode)
            d = compact(r)
            total += 1
            reps += rep_from_drawing(g, d) == r
            crossings += bool(find_conflicts(d))
    for _ in range(50):
        g = random_plane_graph(rng.randint(3, 40), rng.randrange(10**6), pendant_rate=0.3)
        d = draw_general_mso(g)
        total += 1
        reps += bool(validate_rep(rep_from_drawing(g, d)))
        crossings += bool(find_conflicts(d))
    ok = reps == total and crossings == 0
    report(9, ok, f"{reps}/{total} reps reproduced, {crossings} drawings with crossings")
    assert ok


def test_criterion_10_scale(tmp_path):
    g = random_grid_graph(45, 45, 10)
    path = tmp_path / "big.txt"
    path.write_text(dump_graph(g))
    out, err = io.StringIO(), io.StringIO()
    t0 = time.perf_counter()
    code = run(["draw", "--mode", "segment-min", str(path)], out, err)
    dt = time.perf_counter() - t0
    ok = code == 0 and dt < 10
    report(10, ok, f"{len(g.vertices)} vertices, {len(g.edges)} edges drawn in {dt:.2f}s (exit {code})")
    assert ok
