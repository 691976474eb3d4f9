"""Flow networks for orthogonal shapes and an exact integer min-cost-flow solver.

All costs are stored doubled (``cost_x2``) so the half-unit angle cost of
the segment-minimizing network stays an integer.

Node layout: one boundary node per graph vertex (in ``g.vertices`` order)
followed by one face node per face.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Mapping

from .errors import DegreeOneVertex, Infeasible
from .plane_graph import Dart, PlaneGraph

ANGLE = "angle"
DUAL = "dual"


@dataclass(frozen=True)
class CostParams:
    angle_cost_x2: int = 1
    dual_cost_x2: int = 2

    def __post_init__(self):
        if self.angle_cost_x2 < 0 or self.dual_cost_x2 < 0:
            raise ValueError("costs must be non-negative")

    @classmethod
    def parse(cls, text: str) -> "CostParams":
        """Parse ``"a:d"`` (doubled angle and dual costs)."""
        a, d = text.split(":")
        return cls(int(a), int(d))


MSO_COSTS = CostParams(1, 2)
BEND_MIN_COSTS = CostParams(0, 2)


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    capacity: int
    cost_x2: int
    kind: str
    provenance: object  # dart for angle arcs, edge id for dual arcs
    opposite: int = -1  # index of the reverse arc of the same pair, if any


@dataclass
class FlowNetwork:
    n_nodes: int
    supply: list[int]
    arcs: list[Arc]
    mode: str
    node_label: list[str] = field(default_factory=list)
    # flow already routed on each arc to meet its lower bound
    lower: list[int] = field(default_factory=list)
    fixed_cost_x2: int = 0  # cost of the pre-routed lower bounds

    def face_node(self, g: PlaneGraph, fid: int) -> int:
        return len(g.vertices) + fid

    def dump(self, flow: "FlowAssignment | None" = None) -> str:
        """DOT-like text listing supplies and arcs."""
        lines = [f"digraph {self.mode} {{"]
        for i in range(self.n_nodes):
            label = self.node_label[i] if self.node_label else str(i)
            lines.append(f'  n{i} [label="{label}" supply={self.supply[i]}];')
        for i, a in enumerate(self.arcs):
            fl = f" flow={flow.flow[i]}" if flow is not None else ""
            lines.append(
                f"  n{a.tail} -> n{a.head} [kind={a.kind} cap={a.capacity} cost_x2={a.cost_x2}{fl}];"
            )
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass
class FlowAssignment:
    flow: list[int]
    total_cost_x2: int


def _labels(g: PlaneGraph) -> list[str]:
    return [f"v{v}" for v in g.vertices] + [f"f{f.id}" for f in g.faces]


def _check_min_degree(g: PlaneGraph) -> None:
    for v in g.vertices:
        if g.degree(v) < 2:
            raise DegreeOneVertex(f"vertex {v} has degree {g.degree(v)}; draw the closure instead")


def _add_pair(arcs: list[Arc], a: int, b: int, cap: int, cost: int, kind: str, prov) -> None:
    i = len(arcs)
    arcs.append(Arc(a, b, cap, cost, kind, prov, i + 1))
    arcs.append(Arc(b, a, cap, cost, kind, prov, i))


def _dual_arcs(g: PlaneGraph, arcs: list[Arc], cap: int, cost: int, frozen=frozenset()) -> None:
    nv = len(g.vertices)
    for e in sorted(g.edges):
        if e in frozen:
            continue
        fl = g.face_of_dart[(e, 0)]
        fr = g.face_of_dart[(e, 1)]
        if fl == fr:
            continue  # bridge: a bend would turn both ways inside one face
        _add_pair(arcs, nv + fl, nv + fr, cap, cost, DUAL, e)


def build_modified_network(
    g: PlaneGraph,
    costs: CostParams = MSO_COSTS,
    min_angle: Mapping[Dart, int] | None = None,
) -> FlowNetwork:
    """Segment-minimizing network: bidirectional unit angle arcs.

    ``min_angle`` reserves room in chosen corners (in quarter-turns, at
    most 3): a minimum of 2 removes the face-to-vertex arc, a minimum of 3
    pre-routes one unit from the vertex into the face.
    """
    _check_min_degree(g)
    min_angle = min_angle or {}
    nv = len(g.vertices)
    vidx = {v: i for i, v in enumerate(g.vertices)}
    supply = [-(2 * g.degree(v) - 4) for v in g.vertices]
    supply += [-4 if f.is_outer else 4 for f in g.faces]
    arcs: list[Arc] = []
    lower: list[int] = []
    fixed = 0
    for f in g.faces:
        for d in f.darts:
            # corner at the head of d lies in face f
            lo = min_angle.get(d, 1)
            v = vidx[g.head(d)]
            i = len(arcs)
            arcs.append(Arc(nv + f.id, v, 1 if lo <= 1 else 0, costs.angle_cost_x2, ANGLE, d, i + 1))
            arcs.append(Arc(v, nv + f.id, 0 if lo >= 3 else 1, costs.angle_cost_x2, ANGLE, d, i))
            lower += [0, 1 if lo >= 3 else 0]
            if lo >= 3:
                supply[v] -= 1
                supply[nv + f.id] += 1
                fixed += costs.angle_cost_x2
    big = sum(x for x in supply if x > 0)
    _dual_arcs(g, arcs, big, costs.dual_cost_x2)
    lower += [0] * (len(arcs) - len(lower))
    return FlowNetwork(nv + len(g.faces), supply, arcs, "modified", _labels(g), lower, fixed)


def build_classic_network(g: PlaneGraph, min_angle: Mapping[Dart, int] | None = None) -> FlowNetwork:
    """Bend-minimizing network with one boundary-to-face arc per corner.

    Each corner must take 1 to 3 units; the mandatory units are pre-routed
    by shifting supplies, so arcs carry the excess over the minimum.
    """
    _check_min_degree(g)
    min_angle = min_angle or {}
    nv = len(g.vertices)
    vidx = {v: i for i, v in enumerate(g.vertices)}
    supply = [4] * nv
    for f in g.faces:
        supply.append(-(2 * f.degree + 4 if f.is_outer else 2 * f.degree - 4))
    arcs: list[Arc] = []
    lower: list[int] = []
    for f in g.faces:
        for d in f.darts:
            lo = min_angle.get(d, 1)
            v = vidx[g.head(d)]
            arcs.append(Arc(v, nv + f.id, 4 - lo, 0, ANGLE, d))
            lower.append(lo)
            supply[v] -= lo
            supply[nv + f.id] += lo
    big = sum(x for x in supply if x > 0) + 4 * len(g.faces)
    _dual_arcs(g, arcs, big, 2)
    lower += [0] * (len(arcs) - len(lower))
    return FlowNetwork(nv + len(g.faces), supply, arcs, "classic", _labels(g), lower)


def build_bend_network(
    g: PlaneGraph,
    angles: Mapping[Dart, int],
    frozen_edges=frozenset(),
    dual_cost_x2: int = 2,
) -> FlowNetwork:
    """Bend-only network for a fixed vertex-angle assignment.

    Face nodes only (boundary nodes are isolated).  A face's supply is the
    net number of convex bends it still needs; edges in ``frozen_edges``
    may not bend.
    """
    nv = len(g.vertices)
    supply = [0] * nv
    for f in g.faces:
        turn = sum(2 - angles[d] for d in f.darts)
        supply.append((-4 if f.is_outer else 4) - turn)
    arcs: list[Arc] = []
    big = sum(abs(x) for x in supply) + 1
    _dual_arcs(g, arcs, big, dual_cost_x2, frozenset(frozen_edges))
    return FlowNetwork(nv + len(g.faces), supply, arcs, "bend", _labels(g), [0] * len(arcs))


# ---------------------------------------------------------------------------
# Solver
# ---------------------------------------------------------------------------


def min_cost_flow(net: FlowNetwork) -> FlowAssignment:
    """Exact min-cost flow by the primal-dual method.

    Dijkstra with node potentials finds shortest-path distances; a Dinic
    blocking flow then saturates every zero-reduced-cost path before the
    next Dijkstra round.  Requires non-negative arc costs.  Opposite arc
    pairs are cancelled afterwards.
    """
    if sum(net.supply) != 0:
        raise Infeasible("supplies do not balance")
    n = net.n_nodes + 2
    src, snk = n - 2, n - 1
    to: list[int] = []
    cap: list[int] = []
    cost: list[int] = []
    adj: list[list[int]] = [[] for _ in range(n)]

    def add(u: int, v: int, c: int, w: int) -> None:
        adj[u].append(len(to))
        to.append(v)
        cap.append(c)
        cost.append(w)
        adj[v].append(len(to))
        to.append(u)
        cap.append(0)
        cost.append(-w)

    for a in net.arcs:
        if a.cost_x2 < 0:
            raise ValueError("negative arc cost")
        add(a.tail, a.head, a.capacity, a.cost_x2)
    need = 0
    for v, s in enumerate(net.supply):
        if s > 0:
            add(src, v, s, 0)
            need += s
        elif s < 0:
            add(v, snk, -s, 0)

    pot = [0] * n
    sent = 0
    inf = float("inf")
    while sent < need:
        dist = [inf] * n
        dist[src] = 0
        heap = [(0, src)]
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist[u]:
                continue
            pu = pot[u]
            for i in adj[u]:
                if cap[i] > 0:
                    v = to[i]
                    nd = d + cost[i] + pu - pot[v]
                    if nd < dist[v]:
                        dist[v] = nd
                        heapq.heappush(heap, (nd, v))
        if dist[snk] == inf:
            break
        dt = dist[snk]
        for v in range(n):
            pot[v] += dist[v] if dist[v] < dt else dt
        sent += _blocking_flows(n, src, snk, to, cap, cost, adj, pot)
    if sent < need:
        raise Infeasible(f"only {sent} of {need} units routed")

    flow = [cap[2 * i + 1] for i in range(len(net.arcs))]
    for i, a in enumerate(net.arcs):
        j = a.opposite
        if j > i:
            m = min(flow[i], flow[j])
            flow[i] -= m
            flow[j] -= m
    total = net.fixed_cost_x2 + sum(f * a.cost_x2 for f, a in zip(flow, net.arcs))
    return FlowAssignment(flow, total)


def _blocking_flows(n, src, snk, to, cap, cost, adj, pot) -> int:
    """Max flow from src to snk over arcs with zero reduced cost (Dinic)."""
    total = 0
    while True:
        level = [-1] * n
        level[src] = 0
        queue = [src]
        for u in queue:
            pu = pot[u]
            for i in adj[u]:
                v = to[i]
                if cap[i] > 0 and level[v] < 0 and cost[i] + pu - pot[v] == 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        if level[snk] < 0:
            return total
        it = [0] * n
        while True:
            # iterative DFS for one augmenting path in the level graph
            path: list[int] = []
            u = src
            while u != snk:
                advanced = False
                lst = adj[u]
                while it[u] < len(lst):
                    i = lst[it[u]]
                    v = to[i]
                    if cap[i] > 0 and level[v] == level[u] + 1 and cost[i] + pot[u] - pot[v] == 0:
                        path.append(i)
                        u = v
                        advanced = True
                        break
                    it[u] += 1
                if not advanced:
                    if u == src:
                        break
                    level[u] = -1  # dead end
                    i = path.pop()
                    u = to[i ^ 1]
                    it[u] += 1
            if u != snk:
                break
            push = min(cap[i] for i in path)
            for i in path:
                cap[i] -= push
                cap[i ^ 1] += push
            total += push


def residual_has_negative_cycle(net: FlowNetwork, fa: FlowAssignment) -> bool:
    """Bellman-Ford optimality check on the residual network."""
    edges = []
    for f, a in zip(fa.flow, net.arcs):
        if f < a.capacity:
            edges.append((a.tail, a.head, a.cost_x2))
        if f > 0:
            edges.append((a.head, a.tail, -a.cost_x2))
    dist = [0] * net.n_nodes
    for _ in range(net.n_nodes):
        changed = False
        for u, v, w in edges:
            if dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
                changed = True
        if not changed:
            return False
    return True


def conservation_ok(net: FlowNetwork, fa: FlowAssignment) -> bool:
    bal = list(net.supply)
    for f, a in zip(fa.flow, net.arcs):
        if f < 0 or f > a.capacity:
            return False
        bal[a.tail] -= f
        bal[a.head] += f
    return all(b == 0 for b in bal)
