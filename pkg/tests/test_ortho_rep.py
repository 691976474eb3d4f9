import random

import pytest
from hypothesis import given, settings, strategies as st

from orthoseg.analysis import extract_segments
from orthoseg.compaction import compact, shape_from_rep
from orthoseg.errors import InvalidRep, UncanonicalFlow
from orthoseg.flow_net import ANGLE, DUAL, FlowAssignment, build_modified_network, conservation_ok
from orthoseg.ortho_rep import (
    OrthoRep,
    decode_flow,
    dumps,
    loads,
    rep_from_drawing,
    reverse_bends,
    segment_stats,
    validate_rep,
)
from orthoseg.drawers import solve_shape

import fixtures
from graphgen import random_plane_graph


def rectangle(g):
    """Every corner convex inside, reflex outside."""
    return OrthoRep(g, {d: (3 if f.is_outer else 1) for f in g.faces for d in f.darts})


def encode(r: OrthoRep, net) -> FlowAssignment:
    """Flow on the modified network that spells out ``r``."""
    g = r.graph
    nv = len(g.vertices)
    flow = [0] * len(net.arcs)
    for i, a in enumerate(net.arcs):
        if a.kind == ANGLE:
            ang = r.angles[a.provenance]
            into_vertex = a.tail >= nv
            flow[i] = int((ang == 1 and into_vertex) or (ang == 3 and not into_vertex))
        elif a.kind == DUAL:
            s = r.bends.get(a.provenance, "")
            left = nv + g.face_of_dart[(a.provenance, 0)]
            if s:
                assert len(set(s)) == 1
                toward_left = a.tail == left
                flow[i] = len(s) if (s[0] == "L") == toward_left else 0
    return FlowAssignment(flow, 0)


def test_rectangle_valid():
    assert validate_rep(rectangle(fixtures.cycle(4)))


def test_p1_violation_reports_vertex():
    g = fixtures.cycle(4)
    r = rectangle(g)
    d = g.inner_faces()[0].darts[0]
    r.angles[d] = 2
    rep = validate_rep(r)
    assert (rep.condition, rep.where, rep.value) == ("P1", g.head(d), 5)


def test_p2_violation_reports_face():
    g = fixtures.cycle(4)
    r = rectangle(g)
    inner = g.inner_faces()[0]
    # straighten two opposite corners on both sides: P1 holds, faces do not
    for d in (inner.darts[0], inner.darts[2]):
        r.angles[d] = 2
        for f in g.faces:
            for x in f.darts:
                if f.is_outer and g.head(x) == g.head(d):
                    r.angles[x] = 2
    rep = validate_rep(r)
    assert rep.condition == "P2"
    assert rep.value in (2, -2)


def test_decode_four_cycle_rectangle():
    g = fixtures.cycle(4)
    net = build_modified_network(g)
    r = rectangle(g)
    fa = encode(r, net)
    assert conservation_ok(net, fa)
    assert decode_flow(g, net, fa) == r


def test_zero_angle_flow_is_straight():
    g = fixtures.cycle(4)
    net = build_modified_network(g)
    straight = {d: 2 for f in g.faces for d in f.darts}
    side = "L" if not g.faces[g.face_of_dart[(0, 0)]].is_outer else "R"
    fa = encode(OrthoRep(g, straight, {0: side * 4}), net)
    r = decode_flow(g, net, fa)
    assert all(a == 2 for a in r.angles.values())
    assert validate_rep(r)


def test_dual_flow_two_gives_two_bends():
    g = fixtures.cycle(4)
    net = build_modified_network(g)
    r = OrthoRep(g, {d: 2 for f in g.faces for d in f.darts}, {0: "LL", 2: "LL"})
    if not validate_rep(r):
        r.bends = {0: "RR", 2: "RR"}
    assert validate_rep(r)
    back = decode_flow(g, net, encode(r, net))
    assert back == r
    s = back.bends_of((0, 0))
    assert len(s) == 2 and len(set(s)) == 1
    assert back.bends_of((0, 1)) == reverse_bends(s)


def test_uncanonical_rejected():
    g = fixtures.cycle(4)
    net = build_modified_network(g)
    fa = encode(rectangle(g), net)
    i = next(i for i, a in enumerate(net.arcs) if a.kind == ANGLE and fa.flow[i] == 1)
    fa.flow[net.arcs[i].opposite] = 1
    with pytest.raises(UncanonicalFlow):
        decode_flow(g, net, fa)


def test_reverse_bends():
    assert reverse_bends("LLR") == "LRR"
    assert reverse_bends("") == ""


def test_stats_rectangle():
    st_ = segment_stats(rectangle(fixtures.cycle(4)))
    assert (st_.v3, st_.vertex_bends, st_.edge_bends, st_.segments) == (0, 4, 0, 4)


def test_stats_straight_path():
    g = fixtures.path(5)
    r = OrthoRep(g, {d: (4 if g.degree(g.head(d)) == 1 else 2) for d in g.darts()})
    assert segment_stats(r).segments == 1


def test_stats_reject_invalid():
    g = fixtures.cycle(4)
    r = rectangle(g)
    r.angles[g.faces[0].darts[0]] = 2
    with pytest.raises(InvalidRep):
        segment_stats(r)


def test_k4_stats_match_geometry():
    g = fixtures.k4()
    _, _, r = solve_shape(g)
    s = segment_stats(r)
    assert s.v3 == 4
    assert s.segments == (4 + 2 * s.vertex_bends + 2 * s.edge_bends) // 2
    assert len(extract_segments(compact(shape_from_rep(r)))) == s.segments


def test_text_round_trip():
    g = fixtures.k4()
    _, _, r = solve_shape(g)
    assert loads(dumps(r), g) == r


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6), st.integers(3, 30))
def test_decoded_reps_reencode(seed, n):
    g = random_plane_graph(n, seed)
    for mode in ("segment-min", "bend-min"):
        _, _, r = solve_shape(g, mode)
        assert validate_rep(r)
        net = build_modified_network(g)
        fa = encode(r, net)
        assert conservation_ok(net, fa)
        assert decode_flow(g, net, fa) == r


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6), st.integers(3, 25))
def test_face_imbalance_sums_to_zero(seed, n):
    g = random_plane_graph(n, seed)
    rng = random.Random(seed)
    angles = {}
    patterns = {2: [[1, 3], [3, 1], [2, 2]], 3: [[1, 1, 2], [1, 2, 1], [2, 1, 1]], 4: [[1, 1, 1, 1]]}
    for v in g.vertices:
        pat = rng.choice(patterns[g.degree(v)])
        for e, a in zip(g.rotation[v], pat):
            angles[(e, 0 if g.edges[e][1] == v else 1)] = a
    r = OrthoRep(g, angles, {e: rng.choice(["", "L", "RR", "LLL"]) for e in g.edges})
    assert validate_rep(r) or validate_rep(r).condition == "P2"
    total = sum(r.face_turn(f.id) - (-4 if f.is_outer else 4) for f in g.faces)
    assert total == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(3, 30))
def test_drawing_reads_back(seed, n):
    g = random_plane_graph(n, seed)
    _, _, r = solve_shape(g)
    assert rep_from_drawing(g, compact(shape_from_rep(r))) == r
