"""Embedded planar graphs (rotation systems), face tracing and closure.

Darts are ``(edge_id, side)`` tuples: side 0 runs from the first stored
endpoint of the edge to the second, side 1 the other way.  Rotations list
incident edge ids in clockwise order.  A face is traced by following a
dart and leaving its head along the next edge clockwise, which keeps the
face on the left of every dart (inner faces are walked counterclockwise).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import (
    DanglingRotationEntry,
    DegreeExceeded,
    DisconnectedInput,
    NonPlanarEmbedding,
    NotATree,
)

Dart = tuple[int, int]

MAX_DEGREE = 4


def reverse(d: Dart) -> Dart:
    return (d[0], 1 - d[1])


@dataclass(frozen=True)
class Face:
    """A face as the cyclic list of darts that bound it.

    The corner of the face at the head of ``darts[i]`` sits between
    ``darts[i]`` and ``darts[i + 1]``; a cut vertex visited twice therefore
    contributes two corners.
    """

    id: int
    darts: tuple[Dart, ...]
    is_outer: bool = False

    @property
    def degree(self) -> int:
        return len(self.darts)


class PlaneGraph:
    """Connected plane graph with maximum degree 4 and a fixed outer face.

    Build instances with :func:`build_plane_graph`; attributes are treated
    as read-only afterwards.
    """

    def __init__(
        self,
        vertices: Sequence[int],
        edges: Mapping[int, tuple[int, int]],
        rotation: Mapping[int, Sequence[int]],
        outer_face: int | None = None,
    ):
        self.vertices: tuple[int, ...] = tuple(vertices)
        self.edges: dict[int, tuple[int, int]] = dict(edges)
        self.rotation: dict[int, tuple[int, ...]] = {
            v: tuple(rotation.get(v, ())) for v in self.vertices
        }
        self._check_rotation()
        self.faces: list[Face] = []
        self.face_of_dart: dict[Dart, int] = {}
        self._trace_faces()
        self._check_euler()
        self.outer_defaulted = outer_face is None
        if outer_face is None:
            outer_face = max(range(len(self.faces)), key=lambda i: (self.faces[i].degree, -i))
        if not 0 <= outer_face < len(self.faces):
            raise ValueError(f"outer face index {outer_face} out of range")
        self.outer_face = outer_face
        self.faces = [Face(f.id, f.darts, f.id == outer_face) for f in self.faces]

    # -- construction checks -------------------------------------------------

    def _check_rotation(self) -> None:
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise ValueError("duplicate vertex id")
        incident: dict[int, list[int]] = {v: [] for v in self.vertices}
        for e, (u, v) in self.edges.items():
            if u not in vset or v not in vset:
                raise DanglingRotationEntry(f"edge {e} has an unknown endpoint")
            if u == v:
                raise ValueError(f"edge {e} is a self-loop")
            incident[u].append(e)
            incident[v].append(e)
        for v in self.vertices:
            rot = self.rotation[v]
            for e in rot:
                if e not in self.edges:
                    raise DanglingRotationEntry(f"rotation of {v} names unknown edge {e}")
                if v not in self.edges[e]:
                    raise DanglingRotationEntry(f"rotation of {v} names edge {e} not incident to it")
            if sorted(rot) != sorted(incident[v]):
                raise DanglingRotationEntry(f"rotation of {v} is not a permutation of its edges")
            if len(rot) > MAX_DEGREE:
                raise DegreeExceeded(f"vertex {v} has degree {len(rot)}")
        self._pos = {
            (v, e): i for v in self.vertices for i, e in enumerate(self.rotation[v])
        }
        if not self._connected():
            raise DisconnectedInput("graph is not connected")

    def _connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        queue = deque(seen)
        while queue:
            v = queue.popleft()
            for e in self.rotation[v]:
                w = self.other(e, v)
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == len(self.vertices)

    def _trace_faces(self) -> None:
        if not self.edges:
            self.faces.append(Face(0, ()))
            return
        for e in sorted(self.edges):
            for side in (0, 1):
                start = (e, side)
                if start in self.face_of_dart:
                    continue
                fid = len(self.faces)
                walk = []
                d = start
                while d not in self.face_of_dart:
                    self.face_of_dart[d] = fid
                    walk.append(d)
                    d = self.next_dart(d)
                if d != start:
                    raise NonPlanarEmbedding("face walk did not close")
                self.faces.append(Face(fid, tuple(walk)))

    def _check_euler(self) -> None:
        chi = len(self.vertices) - len(self.edges) + len(self.faces)
        if chi != 2:
            raise NonPlanarEmbedding(f"V - E + F = {chi}, expected 2")

    # -- dart helpers --------------------------------------------------------

    def tail(self, d: Dart) -> int:
        return self.edges[d[0]][d[1]]

    def head(self, d: Dart) -> int:
        return self.edges[d[0]][1 - d[1]]

    def other(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    def out_dart(self, v: int, e: int) -> Dart:
        return (e, 0) if self.edges[e][0] == v else (e, 1)

    def next_dart(self, d: Dart) -> Dart:
        """Successor of ``d`` along its face."""
        v = self.head(d)
        rot = self.rotation[v]
        e_next = rot[(self._pos[(v, d[0])] + 1) % len(rot)]
        return self.out_dart(v, e_next)

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def darts(self) -> list[Dart]:
        return [(e, s) for e in sorted(self.edges) for s in (0, 1)]

    def neighbors(self, v: int) -> list[int]:
        return [self.other(e, v) for e in self.rotation[v]]

    @property
    def outer(self) -> Face:
        return self.faces[self.outer_face]

    def inner_faces(self) -> list[Face]:
        return [f for f in self.faces if not f.is_outer]

    def __repr__(self) -> str:
        return (
            f"PlaneGraph(V={len(self.vertices)}, E={len(self.edges)}, "
            f"F={len(self.faces)}, outer={self.outer_face})"
        )

    # -- convenience constructors -------------------------------------------

    @classmethod
    def from_neighbors(
        cls,
        rotation: Mapping[int, Sequence[int]],
        outer_face: int | None = None,
    ) -> "PlaneGraph":
        """Build from clockwise neighbor lists of a simple graph.

        Edge ids are assigned in sorted order of their endpoint pairs.
        """
        pairs = sorted({tuple(sorted((v, w))) for v, nbrs in rotation.items() for w in nbrs})
        eid = {p: i for i, p in enumerate(pairs)}
        edges = {i: p for p, i in eid.items()}
        rot = {v: [eid[tuple(sorted((v, w)))] for w in nbrs] for v, nbrs in rotation.items()}
        return build_plane_graph(sorted(rotation), edges, rot, outer_face)


def build_plane_graph(
    vertices: Iterable[int],
    edges: Mapping[int, tuple[int, int]],
    rotation: Mapping[int, Sequence[int]],
    outer_face: int | None = None,
    allow_multi: bool = False,
) -> PlaneGraph:
    """Validate the input and trace faces.

    Parallel edges are rejected unless ``allow_multi`` is set (internal
    constructions only).
    """
    if not allow_multi:
        seen: set[frozenset[int]] = set()
        for e, (u, v) in edges.items():
            key = frozenset((u, v))
            if key in seen:
                raise ValueError(f"parallel edge {e} between {u} and {v}")
            seen.add(key)
    return PlaneGraph(list(vertices), edges, rotation, outer_face)


def subgraph(g: PlaneGraph, keep: set[int], outer_dart_hint: Iterable[Dart] = ()) -> PlaneGraph:
    """Induced plane subgraph on ``keep`` with the inherited rotation.

    The outer face is the face containing the first surviving dart of
    ``outer_dart_hint``; when none survives the default rule applies.
    """
    edges = {e: uv for e, uv in g.edges.items() if uv[0] in keep and uv[1] in keep}
    rot = {v: [e for e in g.rotation[v] if e in edges] for v in g.vertices if v in keep}
    h = PlaneGraph(sorted(keep), edges, rot)
    for d in outer_dart_hint:
        if d[0] in edges:
            return PlaneGraph(sorted(keep), edges, rot, h.face_of_dart[d])
    return h


# ---------------------------------------------------------------------------
# Rooted trees and closure
# ---------------------------------------------------------------------------


@dataclass
class RootedTree:
    """A rooted tree; ``children`` lists are ordered, ``parent_edge`` maps a
    non-root vertex to the id of the edge joining it to its parent."""

    root: int
    children: dict[int, list[int]]
    parent_edge: dict[int, int] = field(default_factory=dict)
    edges: dict[int, tuple[int, int]] = field(default_factory=dict)

    @property
    def vertices(self) -> list[int]:
        out = []
        stack = [self.root]
        while stack:
            v = stack.pop()
            out.append(v)
            stack.extend(reversed(self.children.get(v, [])))
        return out

    def parent(self, v: int) -> int | None:
        if v == self.root:
            return None
        e = self.parent_edge[v]
        a, b = self.edges[e]
        return a if b == v else b

    def degree(self, v: int) -> int:
        return len(self.children.get(v, [])) + (0 if v == self.root else 1)

    def leaves(self) -> list[int]:
        return [v for v in self.vertices if v != self.root and not self.children.get(v)]

    @classmethod
    def from_edges(
        cls,
        edges: Mapping[int, tuple[int, int]] | Sequence[tuple[int, int]],
        root: int | None = None,
    ) -> "RootedTree":
        if not isinstance(edges, Mapping):
            edges = dict(enumerate(edges))
        adj: dict[int, list[tuple[int, int]]] = {}
        for e in sorted(edges):
            u, v = edges[e]
            adj.setdefault(u, []).append((v, e))
            adj.setdefault(v, []).append((u, e))
        if not adj:
            if root is None:
                raise NotATree("empty tree needs an explicit root")
            return cls(root, {root: []}, {}, {})
        if root is None:
            root = min(adj)
        if len(edges) != len(adj) - 1:
            raise NotATree("edge count does not match a tree")
        children: dict[int, list[int]] = {root: []}
        parent_edge: dict[int, int] = {}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w, e in adj[v]:
                if w == root or w in parent_edge:
                    continue
                parent_edge[w] = e
                children[v].append(w)
                children[w] = []
                queue.append(w)
        if len(children) != len(adj):
            raise NotATree("tree is not connected")
        return cls(root, children, parent_edge, dict(edges))


@dataclass
class ClosureDecomposition:
    closure: PlaneGraph
    connection_vertices: set[int]
    tree_parts: list[tuple[RootedTree, int]]


def _grow_tree(g: PlaneGraph, root: int, first: list[int], blocked: set[int]) -> RootedTree:
    """Tree hanging from ``root`` through the edges ``first``.

    Children are listed clockwise after the parent edge, so the child
    order carries the embedding.
    """
    children: dict[int, list[int]] = {root: []}
    parent_edge: dict[int, int] = {}
    tedges: dict[int, tuple[int, int]] = {}
    stack = []
    for e in first:
        w = g.other(e, root)
        children[root].append(w)
        stack.append((w, e))
    while stack:
        x, e = stack.pop()
        parent_edge[x] = e
        tedges[e] = g.edges[e]
        children[x] = []
        rot = g.rotation[x]
        i = rot.index(e)
        for f in rot[i + 1:] + rot[:i]:
            y = g.other(f, x)
            if y in blocked:
                continue
            children[x].append(y)
            stack.append((y, f))
    return RootedTree(root, children, parent_edge, tedges)


def closure(g: PlaneGraph) -> ClosureDecomposition:
    """Peel degree-1 vertices until none remain (or one vertex is left)."""
    deg = {v: g.degree(v) for v in g.vertices}
    alive = set(g.vertices)
    queue = deque(sorted(v for v in g.vertices if deg[v] == 1))
    while queue and len(alive) > 1:
        v = queue.popleft()
        if v not in alive or deg[v] != 1:
            continue
        alive.discard(v)
        for e in g.rotation[v]:
            w = g.other(e, v)
            if w in alive:
                deg[w] -= 1
                if deg[w] == 1:
                    queue.append(w)
    core = subgraph(g, alive, g.outer.darts)

    parts: list[tuple[RootedTree, int]] = []
    if len(alive) == 1 and len(g.vertices) > 1:
        (c,) = alive
        parts.append((_grow_tree(g, c, list(g.rotation[c]), alive), c))
    else:
        for c in sorted(alive):
            for e in g.rotation[c]:
                if g.other(e, c) not in alive:
                    parts.append((_grow_tree(g, c, [e], alive), c))
    connections = {c for _, c in parts}
    return ClosureDecomposition(core, connections, parts)
