"""Drawing constructions built on the flow pipeline or placed directly.

* trees: path peeling, one straight segment per peeled path;
* general graphs: the closure through min-cost flow, tree parts attached
  by path peeling inside the corners their rotation asks for;
* series-parallel graphs and rooted trees: upward drawings with explicit
  coordinates from the SPQ-tree;
* Hamiltonian spines: the path on one horizontal line, the other edges
  routed with a bend-only flow.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Sequence

from .augment import AlignmentPlan, apply_alignments, plan_alignments
from .compaction import Drawing, OrthoShape, compact, shape_from_rep
from .errors import (
    DegreeExceeded,
    EmbeddingConflict,
    Infeasible,
    Lemma4Violation,
    NotATree,
    NotHamiltonian,
)
from .flow_net import (
    MSO_COSTS,
    CostParams,
    FlowAssignment,
    FlowNetwork,
    build_bend_network,
    build_classic_network,
    build_modified_network,
    min_cost_flow,
)
from .ortho_rep import OrthoRep, decode_flow, rep_from_ports, validate_rep
from .plane_graph import ClosureDecomposition, Dart, PlaneGraph, RootedTree, closure
from .spqtree import SPQNode, SPQTree, build_spq_tree, check_lemma4

Port = tuple[int, int]  # (vertex, edge)


# ---------------------------------------------------------------------------
# Trees by path peeling
# ---------------------------------------------------------------------------


def _lowest_leaf(tree: RootedTree) -> dict[int, int]:
    low: dict[int, int] = {}
    for v in reversed(tree.vertices):
        kids = tree.children.get(v, [])
        low[v] = min((low[c] for c in kids), default=v)
    return low


def peel_ports(tree: RootedTree, root_ports: Mapping[int, int] | None = None) -> dict[Port, int]:
    """Port of every tree edge at both ends, following the tree's child order.

    Children are read clockwise after the parent edge.  Every vertex gets
    a straight pair of edges (two for degree 4), so peeling the tree into
    straight root-to-leaf paths through the pairs gives one segment per
    path; at a degree-3 vertex the path continues toward the subtree with
    the lowest-id leaf.  ``root_ports`` fixes the root's edges by edge id.
    """
    port: dict[Port, int] = {}
    low = _lowest_leaf(tree)
    root = tree.root
    kids = tree.children.get(root, [])
    if root_ports:
        first = [root_ports[tree.parent_edge[c]] for c in kids]
    else:
        first = {0: [], 1: [0], 2: [0, 2], 3: [0, 3, 2], 4: [0, 3, 2, 1]}[len(kids)]
    stack = []
    for c, d in zip(kids, first):
        e = tree.parent_edge[c]
        port[(root, e)] = d
        port[(c, e)] = (d + 2) % 4
        stack.append(c)
    while stack:
        v = stack.pop()
        kids = tree.children.get(v, [])
        if not kids:
            continue
        p = port[(v, tree.parent_edge[v])]
        if len(kids) == 1:
            offsets = [2]
        elif len(kids) == 3:
            offsets = [1, 2, 3]
        elif len(kids) == 2:
            # the straight continuation goes toward the lower leaf
            offsets = [2, 3] if low[kids[0]] < low[kids[1]] else [1, 2]
        else:
            raise DegreeExceeded(f"vertex {v} has degree {len(kids) + 1}")
        for c, k in zip(kids, offsets):
            e = tree.parent_edge[c]
            d = (p - k) % 4
            port[(v, e)] = d
            port[(c, e)] = (d + 2) % 4
            stack.append(c)
    return port


def _check_tree(tree: RootedTree, max_degree: int) -> None:
    for v in tree.vertices:
        if tree.degree(v) > max_degree:
            raise DegreeExceeded(f"vertex {v} has degree {tree.degree(v)}")


def draw_tree_min_segments(tree: RootedTree) -> Drawing:
    """Tree drawing with (#leaves + #degree-3 vertices) / 2 segments."""
    if not isinstance(tree, RootedTree):
        raise NotATree("expected a RootedTree")
    _check_tree(tree, 4)
    port = peel_ports(tree)
    dirs = {}
    for e, (u, v) in tree.edges.items():
        dirs[(e, 0)] = port[(u, e)]
        dirs[(e, 1)] = port[(v, e)]
    shape = OrthoShape.from_directions(tree.vertices, tree.edges, dirs)
    return compact(shape)


# ---------------------------------------------------------------------------
# General graphs
# ---------------------------------------------------------------------------


@dataclass
class MSOResult:
    drawing: Drawing
    decomposition: ClosureDecomposition
    network: FlowNetwork | None
    flow: FlowAssignment | None
    rep: OrthoRep | None  # of the closure
    plan: AlignmentPlan


def solve_shape(
    g: PlaneGraph,
    mode: str = "segment-min",
    costs: CostParams = MSO_COSTS,
    min_angle: Mapping[Dart, int] | None = None,
):
    """Network, optimal flow and decoded representation for a min-degree-2 graph."""
    if mode == "segment-min":
        net = build_modified_network(g, costs, min_angle)
    elif mode == "bend-min":
        net = build_classic_network(g, min_angle)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    fa = min_cost_flow(net)
    rep = decode_flow(g, net, fa)
    return net, fa, rep


def draw_general(
    g: PlaneGraph,
    mode: str = "segment-min",
    costs: CostParams = MSO_COSTS,
    augment: bool = True,
) -> MSOResult:
    """Closure through the flow pipeline, tree parts attached by peeling."""
    dec = closure(g)
    core = dec.closure
    net = fa = rep = None
    if core.edges:
        net, fa, rep = solve_shape(core, mode, costs, _reserved_corners(g, dec))
        shape = shape_from_rep(rep)
    else:
        shape = OrthoShape(core.vertices, {})
    shape.edges = dict(g.edges)
    forced = _connection_ports(g, shape, dec)
    for tree, c in dec.tree_parts:
        port = peel_ports(tree, forced if core.edges else None)
        for v in tree.vertices:
            if v not in shape.ports:
                shape.real.append(v)
                shape.ports[v] = [None] * 4
        for e, (u, v) in sorted(tree.edges.items()):
            shape.connect(u, port[(u, e)], v, e)
            shape.start_dir[e] = port[(u, e)]
    plan = plan_alignments(shape) if augment else AlignmentPlan()
    apply_alignments(shape, plan)
    drawing = compact(shape)
    drawing.meta["aligned_pairs"] = plan.aligned_pairs
    if fa is not None:
        drawing.meta["cost_x2"] = fa.total_cost_x2
    return MSOResult(drawing, dec, net, fa, rep, plan)


def _reserved_corners(g: PlaneGraph, dec: ClosureDecomposition) -> dict[Dart, int]:
    """Minimum angle of each closure corner that must hold tree edges."""
    core = dec.closure
    out: dict[Dart, int] = {}
    for c in dec.connection_vertices:
        rot = g.rotation[c]
        n = len(rot)
        for i, e in enumerate(rot):
            if e not in core.edges:
                continue
            m = 0
            while rot[(i + 1 + m) % n] not in core.edges:
                m += 1
            if m:
                d = core.out_dart(c, e)
                out[(d[0], 1 - d[1])] = m + 1
    return out


def _connection_ports(g: PlaneGraph, shape: OrthoShape, dec: ClosureDecomposition) -> dict[int, int]:
    """Ports for tree edges at connection vertices, inside the corner the rotation puts them in.

    Within one corner the order is kept; among order-keeping choices the
    one with the most ports opposite a taken port wins (segment sharing).
    """
    core = dec.closure
    forced: dict[int, int] = {}
    if not core.edges:
        return forced
    for c in sorted(dec.connection_vertices):
        rot = g.rotation[c]
        closure_port = {}
        for e in rot:
            if e in core.edges:
                u = core.edges[e][0]
                closure_port[e] = shape.start_dir[e] if u == c else _arrival_port(shape, e)
        start = next(i for i, e in enumerate(rot) if e in closure_port)
        order = rot[start:] + rot[:start]
        taken = set(closure_port.values())
        runs = []
        for i, e in enumerate(order):
            if e in closure_port:
                runs.append((closure_port[e], []))
            else:
                runs[-1][1].append(e)
        for k, (pc, tree_edges) in enumerate(runs):
            if not tree_edges:
                continue
            pn = runs[(k + 1) % len(runs)][0]
            free = []
            d = (pc - 1) % 4
            while d != pn:
                free.append(d)
                d = (d - 1) % 4
            best = None
            for pick in combinations(free, len(tree_edges)):
                final = taken | set(pick)
                score = sum((d + 2) % 4 in final for d in pick)
                if best is None or score > best[0]:
                    best = (score, pick)
            for e, d in zip(tree_edges, best[1]):
                forced[e] = d
    return forced


def _arrival_port(shape: OrthoShape, e: int) -> int:
    """Port at the second endpoint of edge ``e`` in the shape."""
    return shape.dart_piece[(e, 1)][1]


def draw_general_mso(g: PlaneGraph, augment: bool = True) -> Drawing:
    """Minimum-segment drawing of a connected plane graph of max degree 4."""
    return draw_general(g, "segment-min", MSO_COSTS, augment).drawing


# ---------------------------------------------------------------------------
# Upward series-parallel drawings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SPCoverReport:
    p_star: int
    root_case: bool

    @property
    def cover_number(self) -> int:
        return self.p_star + (2 if self.root_case else 1)


def sp_cover_report(tree: SPQTree) -> SPCoverReport:
    p_star = 0
    for node in tree.root.walk():
        if node.kind == "P" and sum(c.kind == "S" for c in node.children) >= 2:
            p_star += 1
    root = tree.root
    root_case = root.kind == "P" and len(root.children) == 3 and all(c.kind == "S" for c in root.children)
    return SPCoverReport(p_star, root_case)


def _p_order(node: SPQNode) -> list[SPQNode]:
    """Main child first, then the right branch, then (root only) the left one."""
    return [c for c in node.children if c.kind != "Q"] + [c for c in node.children if c.kind == "Q"]


class _SPLayout:
    def __init__(self):
        self.size: dict[int, tuple[int, int]] = {}
        self.coords: dict[int, tuple[int, int]] = {}
        self.lines: dict[int, tuple[int, int, list[tuple[int, int]]]] = {}

    def measure(self, node: SPQNode) -> tuple[int, int]:
        key = id(node)
        if key in self.size:
            return self.size[key]
        if node.kind == "Q":
            wh = (0, 1)
        else:
            parts = [self.measure(c) for c in node.children]
            if node.kind == "S":
                wh = (max(w for w, _ in parts), sum(h for _, h in parts))
            else:
                wh = (sum(w for w, _ in parts) + len(parts) - 1, max(h for _, h in parts))
        self.size[key] = wh
        return wh

    def draw(self, node: SPQNode, x: int, ytop: int, ybot: int, sx: int, tx: int) -> None:
        if node.kind == "Q":
            pts = [(sx, ytop), (x, ytop), (x, ybot), (tx, ybot)]
            dedup = [pts[0]] + [p for a, p in zip(pts, pts[1:]) if p != a]
            self.lines[node.edge] = (node.s, node.t, dedup)
        elif node.kind == "S":
            y = ytop
            k = len(node.children)
            for i, c in enumerate(node.children):
                last = i == k - 1
                y_next = ybot if last else y - self.measure(c)[1]
                if not last:
                    self.coords[c.t] = (x, y_next)
                self.draw(c, x, y, y_next, sx if i == 0 else x, tx if last else x)
                y = y_next
        else:
            kids = _p_order(node)
            w_main = self.measure(kids[0])[0]
            self.draw(kids[0], x, ytop, ybot, x, x)
            self.draw(kids[1], x + w_main + 1, ytop, ybot, x, x)
            if len(kids) == 3:
                w3 = self.measure(kids[2])[0]
                self.draw(kids[2], x - w3 - 1, ytop, ybot, x, x)


def draw_sp_upward(
    tree: SPQTree, edges: Mapping[int, tuple[int, int]] | None = None
) -> tuple[Drawing, SPCoverReport]:
    """Upward drawing (s on top, every edge descending toward t) with optimal cover.

    ``edges`` fixes the stored orientation of each polyline; by default
    edges run from their upper to their lower end.
    """
    report = check_lemma4(tree)
    if not report:
        raise Lemma4Violation(report.clause)
    root = tree.root
    if root.kind == "P" and len(root.children) > 3:
        raise Lemma4Violation("a root P-node has at most three children")
    lay = _SPLayout()
    lay.measure(root)
    h = lay.size[id(root)][1]
    lay.coords[root.s] = (0, h)
    lay.coords[root.t] = (0, 0)
    lay.draw(root, 0, h, 0, 0, 0)
    xs = [p[0] for _, _, pts in lay.lines.values() for p in pts]
    ox = min(xs)
    coords = {v: (x - ox, y) for v, (x, y) in lay.coords.items()}
    polylines = {}
    out_edges = {}
    for e, (s, t, pts) in lay.lines.items():
        pts = [(x - ox, y) for x, y in pts]
        uv = (s, t) if edges is None else tuple(edges[e])
        if uv == (t, s):
            pts = pts[::-1]
        polylines[e] = pts
        out_edges[e] = uv
    drawing = Drawing(coords, polylines, out_edges)
    cover = sp_cover_report(tree)
    drawing.meta["cover"] = cover.cover_number
    return drawing, cover


def is_upward(drawing: Drawing, tree: SPQTree) -> bool:
    """Every edge, walked from its upper SPQ terminal, never rises."""
    for e, upper, _lower in tree.q_edges():
        pts = drawing.polylines[e]
        if drawing.edges[e][0] != upper:
            pts = pts[::-1]
        if any(b[1] > a[1] for a, b in zip(pts, pts[1:])):
            return False
    return True


# ---------------------------------------------------------------------------
# Upward trees by doubling
# ---------------------------------------------------------------------------


@dataclass
class DoubledTree:
    edges: dict[int, tuple[int, int]]
    top: int
    bottom: int
    tree_edges: set[int]
    tree_vertices: set[int]


def double_tree(tree: RootedTree) -> DoubledTree:
    """Two copies of the tree glued at their leaves (copy edges oriented downward)."""
    leaves = set(tree.leaves())
    verts = tree.vertices
    base = max(verts) + 1
    copy = {}
    for i, v in enumerate(sorted(verts)):
        copy[v] = v if v in leaves else base + i
    ebase = max(tree.edges, default=-1) + 1
    edges: dict[int, tuple[int, int]] = {}
    for e, (u, v) in tree.edges.items():
        p, c = (u, v) if tree.parent(v) == u else (v, u)
        edges[e] = (p, c)
        edges[ebase + e] = (copy[c], copy[p])
    return DoubledTree(edges, tree.root, copy[tree.root], set(tree.edges), set(verts))


def draw_tree_upward(tree: RootedTree, keep_double: bool = False) -> Drawing:
    """Upward drawing of a rooted tree of max degree 3 with optimal cover number."""
    _check_tree(tree, 3)
    if not tree.edges:
        d = Drawing({tree.root: (0, 0)}, {}, {})
        d.meta["cover"] = 1
        return d
    dbl = double_tree(tree)
    spq = build_spq_tree(dbl.edges, dbl.top, dbl.bottom)
    full, report = draw_sp_upward(spq, dbl.edges)
    if keep_double:
        return full
    coords = {v: p for v, p in full.coords.items() if v in dbl.tree_vertices}
    polylines = {e: pl for e, pl in full.polylines.items() if e in dbl.tree_edges}
    edges = {e: tree.edges[e] for e in dbl.tree_edges}
    for e, pl in polylines.items():
        if full.edges[e] != edges[e]:
            polylines[e] = pl[::-1]
    return Drawing(coords, polylines, edges)


# ---------------------------------------------------------------------------
# Hamiltonian spine
# ---------------------------------------------------------------------------


def _edge_between(g: PlaneGraph, u: int, v: int) -> int | None:
    for e in g.rotation[u]:
        if g.other(e, u) == v:
            return e
    return None


def _end_choices(g: PlaneGraph, v: int, path_edge: int, path_port: int) -> list[dict[Port, int]]:
    rot = g.rotation[v]
    i = rot.index(path_edge)
    others = [rot[(i + k) % len(rot)] for k in range(1, len(rot))]
    slots = [(path_port - k) % 4 for k in range(1, 4)]  # clockwise after the path port
    return [
        {(v, e): slots[j] for e, j in zip(others, pick)}
        for pick in combinations(range(3), len(others))
    ]


def draw_spine(g: PlaneGraph, path: Sequence[int]) -> Drawing:
    """All vertices on one horizontal line in path order; other edges bend around it."""
    path = list(path)
    if sorted(path) != sorted(g.vertices) or len(set(path)) != len(path):
        raise NotHamiltonian("path must visit every vertex exactly once")
    path_edges = []
    for u, w in zip(path, path[1:]):
        e = _edge_between(g, u, w)
        if e is None:
            raise NotHamiltonian(f"{u} and {w} are not adjacent")
        path_edges.append(e)
    if len(path) == 1:
        d = Drawing({path[0]: (0, 0)}, {}, {})
        d.meta["cover"] = 1
        return d

    base: dict[Port, int] = {}
    for i, v in enumerate(path):
        west = path_edges[i - 1] if i > 0 else None
        east = path_edges[i] if i < len(path_edges) else None
        if west is not None:
            base[(v, west)] = 2
        if east is not None:
            base[(v, east)] = 0
        if west is None or east is None:
            continue
        rot = g.rotation[v]
        j = rot.index(west)
        side = 1  # edges clockwise between west and east point north
        seen = set()
        for k in range(1, len(rot)):
            e = rot[(j + k) % len(rot)]
            if e == east:
                side = 3
                continue
            if side in seen:
                raise EmbeddingConflict(f"two edges on one side of the spine at {v}")
            seen.add(side)
            base[(v, e)] = side

    ends = [
        _end_choices(g, path[0], path_edges[0], 0),
        _end_choices(g, path[-1], path_edges[-1], 2),
    ]
    best = None
    for a in ends[0]:
        for b in ends[1]:
            port = {**base, **a, **b}
            rep = rep_from_ports(g, port)
            net = build_bend_network(g, rep.angles, frozenset(path_edges))
            try:
                fa = min_cost_flow(net)
            except Infeasible:
                continue
            if best is None or fa.total_cost_x2 < best[0]:
                best = (fa.total_cost_x2, net, fa, rep)
    if best is None:
        raise EmbeddingConflict("no routing keeps the spine straight")
    _, net, fa, rep = best
    final = decode_flow(g, net, fa, angles=rep.angles)
    check = validate_rep(final)
    if not check:
        raise EmbeddingConflict(str(check))
    drawing = compact(final)
    drawing.meta["cover"] = 1
    return drawing
