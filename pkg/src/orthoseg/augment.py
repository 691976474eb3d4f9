"""Aligning vertices that face each other across a face.

A free port of a real vertex inside a face can be joined by a straight
dummy chord to an opposite free port further along the face, forcing the
two vertices onto one horizontal (E/W ports) or vertical (N/S ports)
line.  Along a face walk let ``psi`` be the unwrapped direction of a port
minus 2; a chord from an earlier port x to a later port y splits the face
into pieces with valid turn sums exactly when ``psi(y) - psi(x) == 2``
(or ``-6`` in the outer face, where the far side becomes the new outer
face).  That is the feasibility predicate for candidate pairs.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

from .compaction import OrthoShape, Piece, shape_from_rep
from .ortho_rep import OrthoRep
from .plane_graph import Face

H, V = "H", "V"


@dataclass(frozen=True)
class Port:
    vertex: int
    direction: int
    pos: tuple[int, int]  # (walk index, step inside the corner)
    psi: int

    @property
    def orientation(self) -> str:
        return H if self.direction % 2 == 0 else V


@dataclass
class FaceBipartite:
    """Candidate alignment pairs of one face; pairs index into ``ports``."""

    ports: list[Port]
    h_pairs: list[tuple[int, int]]
    v_pairs: list[tuple[int, int]]
    is_outer: bool = False
    key: Hashable = None

    def open_ports(self) -> dict[int, list[int]]:
        """Vertices grouped by open direction (0 = right-open, 1 = top-open, ...)."""
        out: dict[int, list[int]] = {d: [] for d in range(4)}
        for p in self.ports:
            out[p.direction].append(p.vertex)
        return out


@dataclass
class FacePlan:
    bipartite: FaceBipartite
    h: list[tuple[int, int]]
    v: list[tuple[int, int]]
    crossings: list[tuple[int, int]] = field(default_factory=list)  # (h index, v index)

    @property
    def size(self) -> int:
        return len(self.h) + len(self.v)


@dataclass
class AlignmentPlan:
    faces: list[FacePlan] = field(default_factory=list)
    dropped: list[tuple[int, int, str]] = field(default_factory=list)

    @property
    def aligned_pairs(self) -> int:
        return sum(fp.size for fp in self.faces)

    def vertex_pairs(self) -> list[tuple[int, int, str]]:
        out = []
        for fp in self.faces:
            ports = fp.bipartite.ports
            for kind, pairs in ((H, fp.h), (V, fp.v)):
                out.extend((ports[i].vertex, ports[j].vertex, kind) for i, j in pairs)
        return out


# ---------------------------------------------------------------------------
# Candidate pairs
# ---------------------------------------------------------------------------


def _face_ports(shape: OrthoShape, walk, real: set[int]) -> list[Port]:
    ports = []
    level = 0
    for k, ((u, d), t) in enumerate(walk):
        w = shape.ports[u][d]
        if w in real:
            for s in range(1, 1 - t + 1):
                ports.append(Port(w, (d + 2 - s) % 4, (k, s), level - s))
        level += t
    return ports


def _bipartite_of_walk(shape: OrthoShape, walk, key=None) -> FaceBipartite:
    real = set(shape.real)
    is_outer = sum(t for _, t in walk) == -4
    ports = _face_ports(shape, walk, real)
    by_psi: dict[int, list[int]] = defaultdict(list)
    for j, p in enumerate(ports):
        by_psi[p.psi].append(j)
    h_pairs, v_pairs = [], []
    for i, x in enumerate(ports):
        gaps = (2, -6) if is_outer else (2,)
        for gap in gaps:
            for j in by_psi.get(x.psi + gap, ()):
                if j > i and ports[j].vertex != x.vertex:
                    (h_pairs if x.orientation == H else v_pairs).append((i, j))
    return FaceBipartite(ports, sorted(h_pairs), sorted(v_pairs), is_outer, key)


def build_face_bipartite(r: OrthoRep | OrthoShape, f: Face | Piece) -> FaceBipartite:
    """Candidate pairs of one face, given as a graph face or a shape piece."""
    shape = shape_from_rep(r) if isinstance(r, OrthoRep) else r
    start = shape.dart_piece[f.darts[0]] if isinstance(f, Face) else f
    key = f.id if isinstance(f, Face) else f
    return _bipartite_of_walk(shape, shape.face_walk(start), key)


# ---------------------------------------------------------------------------
# Matching
# ---------------------------------------------------------------------------


def hopcroft_karp(left: Iterable[Hashable], adj: Mapping[Hashable, Sequence[Hashable]]) -> dict:
    """Maximum bipartite matching; returns left -> right."""
    left = list(left)
    match_l: dict = {}
    match_r: dict = {}
    inf = float("inf")
    while True:
        dist: dict = {}
        queue = deque()
        for u in left:
            if u not in match_l:
                dist[u] = 0
                queue.append(u)
        found = False
        while queue:
            u = queue.popleft()
            for v in adj.get(u, ()):
                w = match_r.get(v)
                if w is None:
                    found = True
                elif w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if not found:
            return match_l

        def augment(u) -> bool:
            # iterative DFS along the layered graph
            stack = [(u, iter(adj.get(u, ())))]
            path = []
            while stack:
                x, it = stack[-1]
                for v in it:
                    w = match_r.get(v)
                    if w is None:
                        path.append((x, v))
                        for a, b in path:
                            match_l[a] = b
                            match_r[b] = a
                        return True
                    if dist.get(w, inf) == dist[x] + 1:
                        path.append((x, v))
                        stack.append((w, iter(adj.get(w, ()))))
                        break
                else:
                    dist[x] = inf
                    stack.pop()
                    if path:
                        path.pop()
            return False

        for u in left:
            if u not in match_l:
                augment(u)


def _crosses(p: tuple[int, int], q: tuple[int, int]) -> bool:
    a, c = p
    b, d = q
    return a < b < c < d or b < a < d < c


def _max_matching(ports: list[Port], pairs: list[tuple[int, int]]) -> list[tuple[int, int]]:
    adj: dict[int, list[int]] = defaultdict(list)
    for i, j in pairs:
        a, b = (i, j) if ports[i].direction in (0, 1) else (j, i)
        adj[a].append(b)
    m = hopcroft_karp(sorted(adj), adj)
    return sorted(tuple(sorted(ab)) for ab in m.items())


def uncross(ports: list[Port], chosen: list[tuple[int, int]], allowed: set[tuple[int, int]]) -> list[tuple[int, int]]:
    """Rewrite crossing same-orientation pairs until none cross.

    Each rewrite keeps the cardinality.  If a crossing cannot be
    rewritten into two allowed pairs, a maximum non-crossing matching is
    computed directly instead.
    """
    chosen = sorted(chosen)
    for _ in range(len(chosen) ** 2 + 1):
        hit = next(
            ((p, q) for x, p in enumerate(chosen) for q in chosen[x + 1:] if _crosses(p, q)),
            None,
        )
        if hit is None:
            return chosen
        (a, c), (b, d) = sorted(hit)
        if ports[b].psi == ports[a].psi:
            new = [(a, d), (b, c)]
        elif ports[b].psi == ports[a].psi + 2:
            new = [(a, b), (c, d)]
        else:
            new = []
        if not new or any(p not in allowed for p in new):
            break
        chosen = sorted(set(chosen) - set(hit) | set(new))
    return noncrossing_max_matching(len(ports), allowed)


def noncrossing_max_matching(n: int, allowed: set[tuple[int, int]]) -> list[tuple[int, int]]:
    """Largest set of pairwise non-crossing, vertex-disjoint allowed pairs (interval DP)."""
    partners: dict[int, list[int]] = defaultdict(list)
    for i, j in allowed:
        partners[i].append(j)
    best = [[0] * (n + 1) for _ in range(n + 1)]  # best[i][j]: positions i..j-1
    choice: dict[tuple[int, int], int] = {}
    for length in range(2, n + 1):
        for i in range(n - length + 1):
            j = i + length
            val = best[i + 1][j]
            arg = -1
            for k in partners[i]:
                if k < j:
                    cand = 1 + best[i + 1][k] + best[k + 1][j]
                    if cand > val:
                        val, arg = cand, k
            best[i][j] = val
            choice[(i, j)] = arg
    out = []
    stack = [(0, n)]
    while stack:
        i, j = stack.pop()
        if j - i < 2:
            continue
        k = choice[(i, j)]
        if k < 0:
            stack.append((i + 1, j))
        else:
            out.append((i, k))
            stack.append((i + 1, k))
            stack.append((k + 1, j))
    return sorted(out)


def planar_max_matching(b: FaceBipartite) -> FacePlan:
    """Maximum matching per orientation, then uncrossed."""
    chosen = {}
    for kind, pairs in ((H, b.h_pairs), (V, b.v_pairs)):
        m = _max_matching(b.ports, pairs)
        chosen[kind] = uncross(b.ports, m, set(pairs))
    crossings = [
        (x, y)
        for x, p in enumerate(chosen[H])
        for y, q in enumerate(chosen[V])
        if _crosses(p, q)
    ]
    return FacePlan(b, chosen[H], chosen[V], crossings)


def plan_alignments(r: OrthoRep | OrthoShape) -> AlignmentPlan:
    """Independent plans for every face of the shape."""
    shape = shape_from_rep(r) if isinstance(r, OrthoRep) else r
    plan = AlignmentPlan()
    if not shape.tag:
        return plan
    for walk in shape.faces():
        b = _bipartite_of_walk(shape, walk, walk[0][0])
        if b.h_pairs or b.v_pairs:
            plan.faces.append(planar_max_matching(b))
    return plan


# ---------------------------------------------------------------------------
# Applying a plan
# ---------------------------------------------------------------------------


def _install(shape: OrthoShape, fp: FacePlan, tag_base: int, with_v: bool) -> None:
    ports = fp.bipartite.ports
    v_pairs = fp.v if with_v else []
    crossings = fp.crossings if with_v else []
    cross_at: dict[tuple[int, int], int] = {}
    for x, y in crossings:
        cross_at[(x, y)] = shape.new_vertex()
    for kind, pairs, other in ((H, fp.h, v_pairs), (V, v_pairs, fp.h)):
        for x, (i, j) in enumerate(pairs):
            inside = []
            for y, (a, b) in enumerate(other):
                key = (x, y) if kind == H else (y, x)
                if key in cross_at:
                    inner = a if i < a < j else b
                    inside.append((inner, cross_at[key]))
            chain = [ports[i].vertex] + [c for _, c in sorted(inside)] + [ports[j].vertex]
            d = ports[i].direction
            for u, w in zip(chain, chain[1:]):
                shape.connect(u, d, w, ("align", tag_base, kind, x))


def _shape_valid(shape: OrthoShape) -> bool:
    outer = 0
    for walk in shape.faces():
        s = sum(t for _, t in walk)
        if s == -4:
            outer += 1
        elif s != 4:
            return False
    return outer == 1


def apply_alignments(shape: OrthoShape | OrthoRep, plan: AlignmentPlan) -> OrthoShape:
    """Add the planned chords to ``shape`` in place (a copy is made from a rep).

    If the combined shape fails the face-turn check, vertical pairs of
    faces with crossings are dropped and recorded in ``plan.dropped``.
    """
    if isinstance(shape, OrthoRep):
        shape = shape_from_rep(shape)
    snapshot = (
        {v: list(p) for v, p in shape.ports.items()},
        dict(shape.tag),
        shape._next_id,
    )
    for n, fp in enumerate(plan.faces):
        _install(shape, fp, n, True)
    if plan.faces and not _shape_valid(shape):
        shape.ports, shape.tag, shape._next_id = snapshot
        for n, fp in enumerate(plan.faces):
            if fp.crossings:
                ports = fp.bipartite.ports
                plan.dropped.extend((ports[i].vertex, ports[j].vertex, V) for i, j in fp.v)
                fp.v, fp.crossings = [], []
            _install(shape, fp, n, True)
    return shape
