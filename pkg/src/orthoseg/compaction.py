"""From an orthogonal shape to integer coordinates.

The working structure is :class:`OrthoShape`: every vertex (real or dummy)
has four ports indexed by direction (0 = E, 1 = N, 2 = W, 3 = S), each
empty or holding the neighbor reached by a straight piece.  Bends become
dummy vertices, the drawing is framed by a rectangle, every inner face is
cut into rectangles, and the two coordinate axes are then solved
independently by longest-path layering.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Hashable, Mapping

from .errors import InconsistentConstraints, InvalidRep
from .ortho_rep import OrthoRep, dart_directions
from .plane_graph import Dart

Point = tuple[int, int]
Piece = tuple[int, int]  # (vertex, direction): the piece leaving vertex that way

class OrthoShape:
    """Ports, piece tags and dummy bookkeeping for one drawing."""

    def __init__(self, vertices, edges: Mapping[int, tuple[int, int]]):
        self.real: list[int] = list(vertices)
        self.edges: dict[int, tuple[int, int]] = dict(edges)
        self.ports: dict[int, list[int | None]] = {v: [None] * 4 for v in self.real}
        self.tag: dict[Piece, Hashable] = {}
        self.frame: set[int] = set()
        self.start_dir: dict[int, int] = {}  # direction edge e leaves its first endpoint
        self.dart_piece: dict[Dart, Piece] = {}  # first piece of each dart of the input graph
        self.projections: list[tuple[int, int, bool]] = []  # (from, hit, inside the frame ring?)
        self._next_id = -1

    # -- construction ------------------------------------------------------

    def new_vertex(self) -> int:
        v = self._next_id
        self._next_id -= 1
        self.ports[v] = [None] * 4
        return v

    def connect(self, u: int, d: int, w: int, tag: Hashable) -> None:
        back = (d + 2) % 4
        if self.ports[u][d] is not None or self.ports[w][back] is not None:
            raise InvalidRep(f"port clash joining {u} and {w}")
        self.ports[u][d] = w
        self.ports[w][back] = u
        self.tag[(u, d)] = tag
        self.tag[(w, back)] = tag

    def disconnect(self, u: int, d: int) -> None:
        w = self.ports[u][d]
        back = (d + 2) % 4
        self.ports[u][d] = None
        self.ports[w][back] = None
        del self.tag[(u, d)], self.tag[(w, back)]

    def subdivide(self, u: int, d: int, count: int) -> list[int]:
        """Split the piece leaving ``u`` in direction ``d``; new ids from ``u`` outward."""
        w = self.ports[u][d]
        tag = self.tag[(u, d)]
        self.disconnect(u, d)
        chain = [self.new_vertex() for _ in range(count)]
        prev = u
        for x in chain:
            self.connect(prev, d, x, tag)
            prev = x
        self.connect(prev, d, w, tag)
        return chain

    @classmethod
    def from_directions(
        cls,
        vertices,
        edges: Mapping[int, tuple[int, int]],
        dirs: Mapping[Dart, int],
        bends: Mapping[int, str] | None = None,
    ) -> "OrthoShape":
        bends = bends or {}
        shape = cls(vertices, edges)
        for e in sorted(edges):
            u, v = edges[e]
            d = dirs[(e, 0)]
            shape.start_dir[e] = d
            shape.dart_piece[(e, 0)] = (u, d)
            shape.dart_piece[(e, 1)] = (v, dirs[(e, 1)])
            cur = u
            for c in bends.get(e, ""):
                x = shape.new_vertex()
                shape.connect(cur, d, x, e)
                cur = x
                d = (d + (1 if c == "L" else -1)) % 4
            if (d + 2) % 4 != dirs[(e, 1)]:
                raise InvalidRep(f"edge {e} arrives from the wrong side")
            shape.connect(cur, d, v, e)
        return shape

    # -- queries -----------------------------------------------------------

    def pieces(self) -> list[Piece]:
        return [(v, d) for v, p in self.ports.items() for d in range(4) if p[d] is not None]

    def degree(self, v: int) -> int:
        return sum(x is not None for x in self.ports[v])

    def face_walk(self, start: Piece) -> list[tuple[Piece, int]]:
        """Pieces of the face left of ``start`` with the turn taken after each."""
        out = []
        u, d = start
        while True:
            w = self.ports[u][d]
            for t in (1, 0, -1, 2):
                nd = (d + t) % 4
                if self.ports[w][nd] is not None:
                    break
            out.append(((u, d), -2 if t == 2 else t))
            u, d = w, nd
            if (u, d) == start:
                return out

    def faces(self) -> list[list[tuple[Piece, int]]]:
        seen: set[Piece] = set()
        out = []
        for p in sorted(self.pieces()):
            if p in seen:
                continue
            walk = self.face_walk(p)
            seen.update(q for q, _ in walk)
            out.append(walk)
        return out


RefinedRep = OrthoShape


def shape_from_rep(r: OrthoRep) -> OrthoShape:
    g = r.graph
    return OrthoShape.from_directions(g.vertices, g.edges, dart_directions(r), r.bends)


# ---------------------------------------------------------------------------
# Rectangular refinement
# ---------------------------------------------------------------------------


def _attach_frame(shape: OrthoShape) -> Piece | None:
    """Enclose the drawing in a rectangle; returns a piece of the new outer face."""
    if not shape.tag:
        return None
    outer = None
    for walk in shape.faces():
        if sum(t for _, t in walk) == -4:
            outer = walk
            break
    if outer is None:
        raise InvalidRep("no face turns like an outer face")
    for (u, d), t in outer:
        if t < 0:
            w = shape.ports[u][d]
            delta = (d + 1) % 4
            break
    p, a, b, c, dd = (shape.new_vertex() for _ in range(5))
    shape.frame.update((p, a, b, c, dd))
    shape.connect(w, delta, p, None)
    shape.connect(p, (delta + 1) % 4, a, None)
    shape.connect(a, (delta + 2) % 4, c, None)
    shape.connect(c, (delta + 3) % 4, dd, None)
    shape.connect(dd, delta, b, None)
    shape.connect(b, (delta + 1) % 4, p, None)
    return (p, (delta + 3) % 4)


def _refine_face(shape: OrthoShape, walk: list[tuple[Piece, int]], done: set[Piece]) -> None:
    """Cut one face into rectangles, marking its new pieces in ``done``."""
    m = len(walk)
    targets: dict[int, list[int]] = defaultdict(list)
    stack: list[tuple[int, int]] = []
    level = 0
    for k in range(2 * m):
        idx = k % m
        while stack and stack[-1][1] + 1 == level:
            targets[idx].append(stack.pop()[0])
        if k < m and walk[idx][1] < 0:
            stack.append((idx, level))
        level += walk[idx][1]
    if stack:
        raise InvalidRep("face walk does not close like an inner face")
    in_ring = any(q[0] in shape.frame for q, _ in walk)
    heads = [shape.ports[u][d] for (u, d), _ in walk]
    for j, sources in targets.items():
        u, d = walk[j][0]
        back = (d + 2) % 4
        other_done = (shape.ports[u][d], back) in done
        hits = shape.subdivide(u, d, len(sources))
        for x in hits:
            done.add((x, d))
            if other_done:
                done.add((x, back))
        for x, i in zip(hits, sources):
            v, di = heads[i], walk[i][0][1]
            shape.connect(v, di, x, None)
            done.add((v, di))
            done.add((x, (di + 2) % 4))
            shape.projections.append((v, x, in_ring))


def refine_to_rectangles(r: OrthoRep | OrthoShape) -> OrthoShape:
    """Frame the drawing and cut every inner face into rectangles."""
    shape = shape_from_rep(r) if isinstance(r, OrthoRep) else r
    outer_piece = _attach_frame(shape)
    if outer_piece is None:
        return shape
    done: set[Piece] = {q for q, _ in shape.face_walk(outer_piece)}
    pending = deque(sorted(shape.pieces()))
    while pending:
        p = pending.popleft()
        if p in done:
            continue
        walk = shape.face_walk(p)
        done.update(q for q, _ in walk)
        first = shape._next_id
        _refine_face(shape, walk, done)
        # dummies split pieces whose other side is still unvisited
        for x in range(first, shape._next_id, -1):
            pending.extend((x, d) for d in range(4) if shape.ports[x][d] is not None)
    return shape


def is_rectangular(shape: OrthoShape) -> bool:
    for walk in shape.faces():
        turns = [t for _, t in walk]
        if sum(turns) == 4 and (min(turns) < 0 or turns.count(1) != 4):
            return False
    return True


# ---------------------------------------------------------------------------
# Coordinates
# ---------------------------------------------------------------------------


@dataclass
class Drawing:
    coords: dict[int, Point]
    polylines: dict[int, list[Point]]
    edges: dict[int, tuple[int, int]]
    meta: dict[str, int] = field(default_factory=dict)

    @property
    def bbox(self) -> tuple[int, int, int, int]:
        pts = list(self.coords.values()) + [p for pl in self.polylines.values() for p in pl]
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        return min(xs), min(ys), max(xs), max(ys)

    def bend_count(self) -> int:
        return sum(len(pl) - 2 for pl in self.polylines.values())


def _layer(n_classes: int, arcs: set[tuple[int, int]]) -> list[int]:
    succ: list[list[int]] = [[] for _ in range(n_classes)]
    indeg = [0] * n_classes
    for a, b in arcs:
        succ[a].append(b)
        indeg[b] += 1
    pos = [0] * n_classes
    queue = deque(i for i in range(n_classes) if indeg[i] == 0)
    seen = 0
    while queue:
        a = queue.popleft()
        seen += 1
        for b in succ[a]:
            pos[b] = max(pos[b], pos[a] + 1)
            indeg[b] -= 1
            if indeg[b] == 0:
                queue.append(b)
    if seen != n_classes:
        raise InconsistentConstraints("cyclic channel constraints")
    return pos


def _classes(shape: OrthoShape, axis_dirs: tuple[int, int]) -> tuple[dict[int, int], int]:
    """Group vertices joined by pieces in the given directions."""
    parent = {v: v for v in shape.ports}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v, p in shape.ports.items():
        for d in axis_dirs:
            if p[d] is not None:
                parent[find(v)] = find(p[d])
    ids: dict[int, int] = {}
    cls = {}
    for v in shape.ports:
        cls[v] = ids.setdefault(find(v), len(ids))
    return cls, len(ids)


def assign_coordinates(shape: OrthoShape) -> Drawing:
    """Longest-path lengths for a rectangular shape, dummies stripped."""
    xcls, nx = _classes(shape, (1, 3))
    ycls, ny = _classes(shape, (0, 2))
    xarcs = {(xcls[v], xcls[p[0]]) for v, p in shape.ports.items() if p[0] is not None}
    yarcs = {(ycls[v], ycls[p[1]]) for v, p in shape.ports.items() if p[1] is not None}
    xs = _layer(nx, xarcs)
    ys = _layer(ny, yarcs)
    at = {v: (xs[xcls[v]], ys[ycls[v]]) for v in shape.ports}

    polylines: dict[int, list[Point]] = {}
    for e, (u, v) in shape.edges.items():
        pts = [at[u]]
        cur, d = u, shape.start_dir[e]
        while True:
            cur = shape.ports[cur][d]
            pts.append(at[cur])
            if cur == v:
                break
            for nd in (d, (d + 1) % 4, (d + 3) % 4):
                if shape.ports[cur][nd] is not None and shape.tag.get((cur, nd)) == e:
                    d = nd
                    break
            else:
                raise InvalidRep(f"lost track of edge {e}")
        polylines[e] = _drop_collinear(pts)

    used = [at[v] for v in shape.real] + [p for pl in polylines.values() for p in pl]
    ox = min(p[0] for p in used)
    oy = min(p[1] for p in used)
    coords = {v: (at[v][0] - ox, at[v][1] - oy) for v in shape.real}
    polylines = {e: [(x - ox, y - oy) for x, y in pl] for e, pl in polylines.items()}
    return Drawing(coords, polylines, dict(shape.edges))


def _drop_collinear(pts: list[Point]) -> list[Point]:
    out = [pts[0]]
    for i in range(1, len(pts) - 1):
        a, b, c = out[-1], pts[i], pts[i + 1]
        if (a[0] == b[0] == c[0]) or (a[1] == b[1] == c[1]):
            continue
        out.append(b)
    out.append(pts[-1])
    return out


def compact(r: OrthoRep | OrthoShape) -> Drawing:
    """Refine and lay out in one step."""
    return assign_coordinates(refine_to_rectangles(r))
