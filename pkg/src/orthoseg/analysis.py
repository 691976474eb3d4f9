"""Geometry of finished drawings and small exhaustive oracles."""

from __future__ import annotations

import bisect
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations, product
from typing import Mapping, Sequence

from .augment import hopcroft_karp
from .compaction import Drawing, Point
from .errors import OverlappingInk, TooLarge
from .plane_graph import PlaneGraph


@dataclass(frozen=True)
class Segment:
    orientation: str  # "H", "V", or "P" for an isolated vertex
    coord: int  # y of a horizontal segment, x of a vertical one
    lo: int
    hi: int
    vertices: tuple[int, ...]
    pieces: tuple[tuple[int, int], ...]  # (edge id, index of the polyline step)

    @property
    def endpoints(self) -> tuple[Point, Point]:
        if self.orientation == "V":
            return (self.coord, self.lo), (self.coord, self.hi)
        return (self.lo, self.coord), (self.hi, self.coord)


def _pieces(d: Drawing):
    for e in sorted(d.polylines):
        pts = d.polylines[e]
        for i, (p, q) in enumerate(zip(pts, pts[1:])):
            if p[1] == q[1] and p[0] != q[0]:
                yield "H", p[1], min(p[0], q[0]), max(p[0], q[0]), (e, i)
            elif p[0] == q[0] and p[1] != q[1]:
                yield "V", p[0], min(p[1], q[1]), max(p[1], q[1]), (e, i)
            else:
                raise OverlappingInk(f"edge {e} has a degenerate or diagonal step {p} -> {q}")


def extract_segments(d: Drawing) -> list[Segment]:
    """Maximal segments, sorted by (orientation, coordinate, start)."""
    lines: dict[tuple[str, int], list[tuple[int, int, tuple[int, int]]]] = defaultdict(list)
    for o, c, lo, hi, tag in _pieces(d):
        lines[(o, c)].append((lo, hi, tag))
    at_line: dict[tuple[str, int], list[tuple[int, int]]] = defaultdict(list)
    for v, (x, y) in d.coords.items():
        at_line[("H", y)].append((x, v))
        at_line[("V", x)].append((y, v))
    for lst in at_line.values():
        lst.sort()
    out = []
    for key in sorted(lines):
        o, c = key
        ivs = sorted(lines[key])
        groups = []
        for lo, hi, tag in ivs:
            if groups and lo < groups[-1][1]:
                raise OverlappingInk(f"overlapping pieces on line {o}={c}")
            if groups and lo == groups[-1][1]:
                groups[-1][1] = hi
                groups[-1][2].append(tag)
            else:
                groups.append([lo, hi, [tag]])
        here = at_line.get(key, [])
        for lo, hi, tags in groups:
            i = bisect.bisect_left(here, (lo, float("-inf")))
            j = bisect.bisect_right(here, (hi, float("inf")))
            verts = tuple(sorted(v for _, v in here[i:j]))
            out.append(Segment(o, c, lo, hi, verts, tuple(sorted(tags))))
    touched = {v for s in out for v in s.vertices}
    for v in sorted(d.coords):
        if v not in touched:
            x, y = d.coords[v]
            out.append(Segment("P", y, x, x, (v,), ()))
    return out


def segment_count(d: Drawing) -> int:
    return len(extract_segments(d))


def min_cover_of_drawing(d: Drawing) -> tuple[int, list[Segment]]:
    """Fewest segments of ``d`` whose union contains every vertex.

    A vertex lies on at most one horizontal and one vertical segment, so
    this is a bipartite vertex cover: forced picks first, then König's
    theorem on a maximum matching of the remaining conflicts.
    """
    segs = extract_segments(d)
    on: dict[int, list[int]] = defaultdict(list)
    for i, s in enumerate(segs):
        for v in s.vertices:
            on[v].append(i)
    chosen: set[int] = set()
    for v in sorted(on):
        if len(on[v]) == 1:
            chosen.add(on[v][0])
    adj: dict[int, list[int]] = defaultdict(list)
    for v in sorted(on):
        if len(on[v]) == 2 and not (set(on[v]) & chosen):
            h, w = sorted(on[v], key=lambda i: segs[i].orientation)
            adj[h].append(w)
    left = sorted(adj)
    match = hopcroft_karp(left, adj)
    match_r = {w: h for h, w in match.items()}
    # alternating reachability from unmatched left vertices
    reach_l = {h for h in left if h not in match}
    reach_r: set[int] = set()
    stack = list(reach_l)
    while stack:
        h = stack.pop()
        for w in adj[h]:
            if w not in reach_r:
                reach_r.add(w)
                h2 = match_r.get(w)
                if h2 is not None and h2 not in reach_l:
                    reach_l.add(h2)
                    stack.append(h2)
    cover = chosen | {h for h in left if h not in reach_l} | reach_r
    picked = [segs[i] for i in sorted(cover)]
    return len(picked), picked


# ---------------------------------------------------------------------------
# Planarity of a drawing
# ---------------------------------------------------------------------------


def find_conflicts(d: Drawing) -> list[str]:
    """Crossings, overlaps and vertex/edge contacts that should not be there."""
    problems = []
    seen: dict[Point, int] = {}
    for v in sorted(d.coords):
        p = d.coords[v]
        if p in seen:
            problems.append(f"vertices {seen[p]} and {v} coincide")
        seen[p] = v
    for e, (u, v) in d.edges.items():
        pl = d.polylines[e]
        if pl[0] != d.coords[u] or pl[-1] != d.coords[v]:
            problems.append(f"edge {e} does not join its endpoints")
    hs, vs = [], []
    try:
        for o, c, lo, hi, tag in _pieces(d):
            (hs if o == "H" else vs).append((c, lo, hi, tag))
    except OverlappingInk as exc:
        return problems + [str(exc)]

    def allowed(tag_a, tag_b, p: Point) -> bool:
        ea, ia = tag_a
        eb, ib = tag_b
        if ea == eb:
            # consecutive steps of one polyline meet at their bend
            return abs(ia - ib) == 1 and p == d.polylines[ea][max(ia, ib)]
        v = seen.get(p)
        return v is not None and v in d.edges[ea] and v in d.edges[eb]

    # collinear pieces on one line
    for group in (hs, vs):
        by_line = defaultdict(list)
        for c, lo, hi, tag in group:
            by_line[c].append((lo, hi, tag))
        for c, ivs in by_line.items():
            ivs.sort()
            for (lo1, hi1, t1), (lo2, hi2, t2) in zip(ivs, ivs[1:]):
                if lo2 < hi1:
                    problems.append(f"pieces {t1} and {t2} overlap")
            for i, (lo1, hi1, t1) in enumerate(ivs):
                for lo2, hi2, t2 in ivs[i + 1:]:
                    if lo2 > hi1:
                        break
                    if lo2 == hi1:
                        p = (hi1, c) if group is hs else (c, hi1)
                        if not allowed(t1, t2, p):
                            problems.append(f"pieces {t1} and {t2} touch at {p}")
    # horizontal against vertical
    hs.sort()
    ys = [h[0] for h in hs]
    for x, lo, hi, tv in vs:
        for k in range(bisect.bisect_left(ys, lo), bisect.bisect_right(ys, hi)):
            y, hlo, hhi, th = hs[k]
            if hlo <= x <= hhi:
                p = (x, y)
                if not allowed(tv, th, p):
                    problems.append(f"pieces {tv} and {th} meet at {p}")
    # vertices on pieces of other edges
    for o, group in (("H", hs), ("V", vs)):
        for c, lo, hi, (e, i) in group:
            for v, p in d.coords.items():
                along, fixed = (p[0], p[1]) if o == "H" else (p[1], p[0])
                if fixed == c and lo <= along <= hi:
                    pl = d.polylines[e]
                    if v in d.edges[e] and p in (pl[0], pl[-1]) and p in (pl[i], pl[i + 1]):
                        continue
                    problems.append(f"vertex {v} lies on edge {e}")
    return problems


def is_planar_drawing(d: Drawing) -> bool:
    return not find_conflicts(d)


# ---------------------------------------------------------------------------
# Exhaustive oracles
# ---------------------------------------------------------------------------


def _vertex_patterns(deg: int) -> list[tuple[int, ...]]:
    if deg == 1:
        return [(4,)]
    return sorted({p for p in product((1, 2, 3), repeat=deg) if sum(p) == 4})


def _min_edge_bends(g: PlaneGraph, deficit: list[int], budget: int) -> int | None:
    """Fewest bends (signed count per edge) meeting every face deficit.

    Each bend moves the turn sums of two faces by one, so half the
    outstanding deficit bounds the bends still needed.
    """
    order = sorted(e for e in g.edges if g.face_of_dart[(e, 0)] != g.face_of_dart[(e, 1)])
    gap = sum(abs(x) for x in deficit)
    if gap > 2 * budget:
        return None
    last = {}
    for i, e in enumerate(order):
        last[g.face_of_dart[(e, 0)]] = i
        last[g.face_of_dart[(e, 1)]] = i
    closes = defaultdict(list)
    for f, i in last.items():
        closes[i].append(f)
    for f in range(len(g.faces)):
        if f not in last and deficit[f] != 0:
            return None
    rest = list(deficit)  # deficit still to be produced per face
    best = [budget + 1]

    def rec(i: int, used: int, gap: int) -> None:
        if 2 * used + gap >= 2 * best[0]:
            return
        if i == len(order):
            best[0] = used
            return
        e = order[i]
        fl, fr = g.face_of_dart[(e, 0)], g.face_of_dart[(e, 1)]
        room = best[0] - 1 - used
        for b in sorted(range(-room, room + 1), key=lambda b: (abs(b), b)):
            old = abs(rest[fl]) + abs(rest[fr])
            rest[fl] -= b
            rest[fr] += b
            if all(rest[f] == 0 for f in closes[i]):
                rec(i + 1, used + abs(b), gap - old + abs(rest[fl]) + abs(rest[fr]))
            rest[fl] += b
            rest[fr] -= b

    rec(0, 0, gap)
    return best[0] if best[0] <= budget else None


def _brute_force(g: PlaneGraph, bend_budget: int, segments: bool) -> int | None:
    if len(g.vertices) > 6:
        raise TooLarge("exhaustive search is limited to 6 vertices")
    corners = {v: [] for v in g.vertices}
    for d in g.darts():
        corners[g.head(d)].append(d)
    verts = list(g.vertices)
    choices = [_vertex_patterns(g.degree(v)) for v in verts]
    deg = [g.degree(v) for v in verts]
    base = deg.count(1) + deg.count(3)
    best = None
    for combo in product(*choices):
        bv = sum(1 for dg, p in zip(deg, combo) if dg == 2 and p != (2, 2))
        fixed = base + 2 * bv if segments else 0
        angle = {}
        for v, p in zip(verts, combo):
            for d, a in zip(corners[v], p):
                angle[d] = a
        deficit = []
        for f in g.faces:
            turn = sum(2 - angle[d] for d in f.darts)
            deficit.append((-4 if f.is_outer else 4) - turn)
        budget = bend_budget
        if best is not None:
            # only strictly better totals are of interest
            budget = min(budget, (2 * best - fixed - 1) // 2 if segments else best - 1)
        if budget < 0:
            continue
        be = _min_edge_bends(g, deficit, budget)
        if be is None:
            continue
        val = (fixed + 2 * be) // 2 if segments else be
        if best is None or val < best:
            best = val
    return best


def brute_force_mso(g: PlaneGraph, bend_budget: int = 4) -> int | None:
    """Fewest segments over all shapes with at most ``bend_budget`` edge bends.

    Returns None when no valid shape fits in the budget.
    """
    return _brute_force(g, bend_budget, segments=True)


def brute_force_min_bends(g: PlaneGraph, bend_budget: int = 4) -> int | None:
    """Fewest edge bends over all shapes (vertex bends are free)."""
    return _brute_force(g, bend_budget, segments=False)


def find_hamiltonian_path(
    g: PlaneGraph | Mapping[int, Sequence[int]], limit: int = 12
) -> list[int] | None:
    """Backtracking search; neighbors and start vertices in increasing order."""
    if isinstance(g, PlaneGraph):
        adj = {v: sorted(set(g.neighbors(v))) for v in g.vertices}
    else:
        adj = {v: sorted(set(ns)) for v, ns in g.items()}
    n = len(adj)
    if n > limit:
        raise TooLarge(f"{n} vertices exceed the limit of {limit}")
    if n == 0:
        return None
    path: list[int] = []
    on_path: set[int] = set()

    def extend(v: int) -> bool:
        path.append(v)
        on_path.add(v)
        if len(path) == n:
            return True
        for w in adj[v]:
            if w not in on_path and extend(w):
                return True
        path.pop()
        on_path.discard(v)
        return False

    for s in sorted(adj):
        if extend(s):
            return list(path)
    return None


def exhaustive_cover(d: Drawing) -> int:
    """Minimum cover by trying subsets in order of size (small drawings only)."""
    segs = extract_segments(d)
    need = set(d.coords)
    for k in range(len(segs) + 1):
        for pick in combinations(segs, k):
            if {v for s in pick for v in s.vertices} >= need:
                return k
    return len(segs)
