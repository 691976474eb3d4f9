"""Named small graphs. Embeddings come from networkx's planarity test."""

from __future__ import annotations

import networkx as nx

from orthoseg.ortho_rep import OrthoRep, validate_rep
from orthoseg.plane_graph import PlaneGraph


def embed(G: nx.Graph, outer_face: int | None = None) -> PlaneGraph:
    ok, emb = nx.check_planarity(G)
    assert ok
    return PlaneGraph.from_neighbors({v: list(emb.neighbors_cw_order(v)) for v in sorted(G)}, outer_face)


def cycle(n: int) -> PlaneGraph:
    return embed(nx.cycle_graph(n))


def path(n: int) -> PlaneGraph:
    return embed(nx.path_graph(n))


def k4() -> PlaneGraph:
    return embed(nx.complete_graph(4))


def diamond() -> PlaneGraph:
    """Two triangles sharing the edge 1-2."""
    return embed(nx.Graph([(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]))


def prism() -> PlaneGraph:
    G = nx.Graph([(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
    return embed(G)


def cube() -> PlaneGraph:
    return embed(nx.convert_node_labels_to_integers(nx.hypercube_graph(3)))


def square_with_tail(tail: int = 2) -> PlaneGraph:
    edges = [(0, 1), (1, 2), (2, 3), (3, 0)]
    prev = 0
    for i in range(tail):
        edges.append((prev, 4 + i))
        prev = 4 + i
    return embed(nx.Graph(edges))


def two_squares_joined() -> PlaneGraph:
    edges = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 8), (8, 4)]
    return embed(nx.Graph(edges))


K23_EDGES = {0: (0, 1), 1: (1, 4), 2: (0, 2), 3: (2, 4), 4: (0, 3), 5: (3, 4)}
THETA_EDGES = {0: (0, 1), 1: (1, 5), 2: (0, 2), 3: (2, 3), 4: (3, 5)}


def k23() -> PlaneGraph:
    return embed(nx.Graph(list(K23_EDGES.values())))


def polygon_rep(inner_angles: list[int]) -> OrthoRep:
    """Cycle whose inner corners take the given quarter-turns in walk order."""
    g = cycle(len(inner_angles))
    inner = g.inner_faces()[0]
    angles = dict(zip(inner.darts, inner_angles))
    for d in g.outer.darts:
        mine = next(x for x in inner.darts if g.head(x) == g.head(d))
        angles[d] = 4 - angles[mine]
    r = OrthoRep(g, angles)
    assert validate_rep(r)
    return r


PLUS = [1, 1, 3] * 4
U_WITH_WALL_VERTEX = [1, 1, 2, 1, 1, 3, 3, 1, 1]
