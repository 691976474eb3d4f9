"""Orthogonal representations: vertex angles plus per-edge bend strings.

Angles are quarter-turns (1 = pi/2 ... 4 = 2*pi, the last only at
degree-1 vertices) keyed by the dart whose head holds the corner.  Bend
strings are stored for side 0 of each edge as seen walking it: ``L`` is a
left turn, so a convex corner in the face on the dart's left.  Directions
are 0 = east, 1 = north, 2 = west, 3 = south.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Mapping

from .errors import InvalidRep, UncanonicalFlow
from .flow_net import ANGLE, DUAL, FlowAssignment, FlowNetwork
from .plane_graph import Dart, PlaneGraph, reverse

_SWAP = str.maketrans("LR", "RL")


def reverse_bends(s: str) -> str:
    return s[::-1].translate(_SWAP)


def bend_turn(s: str) -> int:
    return s.count("L") - s.count("R")


@dataclass
class OrthoRep:
    graph: PlaneGraph
    angles: dict[Dart, int]
    bends: dict[int, str] = field(default_factory=dict)

    def bends_of(self, d: Dart) -> str:
        s = self.bends.get(d[0], "")
        return s if d[1] == 0 else reverse_bends(s)

    def face_turn(self, fid: int) -> int:
        """Net left turns walking the face; +4 for inner, -4 for outer."""
        total = 0
        for d in self.graph.faces[fid].darts:
            total += 2 - self.angles[d] + bend_turn(self.bends_of(d))
        return total

    def vertex_angles(self, v: int) -> list[int]:
        g = self.graph
        return [self.angles[reverse(g.out_dart(v, e))] for e in g.rotation[v]]

    def copy(self) -> "OrthoRep":
        return OrthoRep(self.graph, dict(self.angles), dict(self.bends))

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrthoRep):
            return NotImplemented
        strip = lambda b: {e: s for e, s in b.items() if s}  # noqa: E731
        return self.angles == other.angles and strip(self.bends) == strip(other.bends)


# ---------------------------------------------------------------------------
# Decoding
# ---------------------------------------------------------------------------


def decode_flow(
    g: PlaneGraph,
    net: FlowNetwork,
    fa: FlowAssignment,
    angles: dict[Dart, int] | None = None,
) -> OrthoRep:
    """Read an angle assignment and bends off a solved network.

    ``angles`` supplies the fixed vertex angles for bend-only networks.
    """
    nv = len(g.vertices)
    if net.mode == "bend":
        if angles is None:
            raise ValueError("bend networks need the fixed angles")
        ang = dict(angles)
    elif net.mode == "classic":
        ang = {}
    else:
        ang = {d: 2 for f in g.faces for d in f.darts}
    bends: dict[int, str] = {}
    for i, (a, f) in enumerate(zip(net.arcs, fa.flow)):
        f += net.lower[i] if net.lower else 0
        if a.opposite >= 0 and f > 0 and fa.flow[a.opposite] > 0:
            raise UncanonicalFlow(f"arc pair {i}/{a.opposite} carries flow both ways")
        if a.kind == ANGLE:
            d = a.provenance
            if net.mode == "classic":
                ang[d] = f
            elif f:
                ang[d] = 1 if a.tail >= nv else 3
        elif a.kind == DUAL and f:
            e = a.provenance
            toward_left = a.tail == nv + g.face_of_dart[(e, 0)]
            bends[e] = ("L" if toward_left else "R") * f
    return OrthoRep(g, ang, bends)


# ---------------------------------------------------------------------------
# Validation and statistics
# ---------------------------------------------------------------------------


@dataclass
class RepReport:
    ok: bool
    condition: str = ""
    where: int | None = None
    value: int | None = None

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        kind = "vertex" if self.condition == "P1" else "face"
        return f"{self.condition} violated at {kind} {self.where} (value {self.value})"


def validate_rep(r: OrthoRep) -> RepReport:
    """Check the vertex-sum and face-balance conditions, P1 first."""
    g = r.graph
    for v in g.vertices:
        if g.degree(v) == 0:
            continue
        angs = r.vertex_angles(v)
        bad = any(a < 1 or a > 4 or (a == 4 and g.degree(v) > 1) for a in angs)
        if bad or sum(angs) != 4:
            return RepReport(False, "P1", v, sum(angs))
    for e, s in r.bends.items():
        if set(s) - {"L", "R"}:
            raise InvalidRep(f"bad bend string {s!r} on edge {e}")
    if not g.edges:
        return RepReport(True)
    for f in g.faces:
        turn = r.face_turn(f.id)
        if turn != (-4 if f.is_outer else 4):
            return RepReport(False, "P2", f.id, turn)
    return RepReport(True)


@dataclass(frozen=True)
class SegmentStats:
    v1: int
    v3: int
    v4: int
    vertex_bends: int
    edge_bends: int
    isolated: int = 0

    @property
    def segments(self) -> int:
        ends = self.v1 + self.v3 + 2 * self.vertex_bends + 2 * self.edge_bends
        return ends // 2 + self.isolated

    @property
    def k(self) -> int:
        """The drawing-independent constant 2*#V4 + #V3."""
        return 2 * self.v4 + self.v3


def segment_stats(r: OrthoRep) -> SegmentStats:
    rep = validate_rep(r)
    if not rep:
        raise InvalidRep(str(rep))
    g = r.graph
    deg = {v: g.degree(v) for v in g.vertices}
    vb = sum(1 for v in g.vertices if deg[v] == 2 and sorted(r.vertex_angles(v)) == [1, 3])
    return SegmentStats(
        v1=sum(1 for d in deg.values() if d == 1),
        v3=sum(1 for d in deg.values() if d == 3),
        v4=sum(1 for d in deg.values() if d == 4),
        vertex_bends=vb,
        edge_bends=sum(len(s) for s in r.bends.values()),
        isolated=sum(1 for d in deg.values() if d == 0),
    )


# ---------------------------------------------------------------------------
# Geometry of a representation
# ---------------------------------------------------------------------------


def dart_directions(r: OrthoRep, start: Dart | None = None, start_dir: int = 0) -> dict[Dart, int]:
    """Direction in which every dart leaves its tail."""
    g = r.graph
    if not g.edges:
        return {}
    if start is None:
        start = (min(g.edges), 0)
    out: dict[Dart, int] = {start: start_dir}
    queue = deque([start])

    def assign(d: Dart, val: int) -> None:
        old = out.get(d)
        if old is None:
            out[d] = val
            queue.append(d)
        elif old != val:
            raise InvalidRep(f"inconsistent direction on dart {d}")

    while queue:
        d = queue.popleft()
        dd = out[d]
        # around the tail, clockwise
        v = g.tail(d)
        rot = g.rotation[v]
        i = rot.index(d[0])
        cur = dd
        for k in range(1, len(rot)):
            e_prev = rot[(i + k - 1) % len(rot)]
            corner = reverse(g.out_dart(v, e_prev))
            cur = (cur - r.angles[corner]) % 4
            assign(g.out_dart(v, rot[(i + k) % len(rot)]), cur)
        arrive = (dd + bend_turn(r.bends_of(d))) % 4
        assign(reverse(d), (arrive + 2) % 4)
    return out


_STEP = {(1, 0): 0, (0, 1): 1, (-1, 0): 2, (0, -1): 3}


def step_dir(p, q) -> int:
    dx, dy = q[0] - p[0], q[1] - p[1]
    key = ((dx > 0) - (dx < 0), (dy > 0) - (dy < 0))
    if key not in _STEP or (dx and dy):
        raise InvalidRep(f"non-orthogonal step {p} -> {q}")
    return _STEP[key]


def rep_from_ports(
    g: PlaneGraph, port: Mapping[tuple[int, int], int], bends: Mapping[int, str] | None = None
) -> OrthoRep:
    """Angles implied by the port each edge uses at each endpoint.

    ``port[(v, e)]`` is the direction in which edge ``e`` leaves ``v``.
    """
    angles: dict[Dart, int] = {}
    for d in g.darts():
        v = g.head(d)
        e_out = g.next_dart(d)[0]
        a = (port[(v, d[0])] - port[(v, e_out)]) % 4
        angles[d] = a or 4
    return OrthoRep(g, angles, dict(bends or {}))


def rep_from_drawing(g: PlaneGraph, drawing) -> OrthoRep:
    """Read angles and bend strings back off a drawing of ``g``."""
    port: dict[tuple[int, int], int] = {}
    bends: dict[int, str] = {}
    for e, (u, v) in g.edges.items():
        pts = drawing.polylines[e]
        dirs = [step_dir(a, b) for a, b in zip(pts, pts[1:])]
        port[(u, e)] = dirs[0]
        port[(v, e)] = (dirs[-1] + 2) % 4
        s = []
        for a, b in zip(dirs, dirs[1:]):
            t = (b - a) % 4
            if t == 1:
                s.append("L")
            elif t == 3:
                s.append("R")
            elif t == 2:
                raise InvalidRep(f"edge {e} doubles back")
        bends[e] = "".join(s)
    return rep_from_ports(g, port, bends)


# ---------------------------------------------------------------------------
# Text serialization
# ---------------------------------------------------------------------------


def dumps(r: OrthoRep) -> str:
    g = r.graph
    lines = ["orthorep v1"]
    for d in g.darts():
        lines.append(f"corner {g.head(d)} {g.face_of_dart[d]} {d[0]} {d[1]} {r.angles[d]}")
    for e in sorted(g.edges):
        lines.append(f"bends {e} {r.bends.get(e) or '-'}")
    return "\n".join(lines) + "\n"


def loads(text: str, g: PlaneGraph) -> OrthoRep:
    angles: dict[Dart, int] = {}
    bends: dict[int, str] = {}
    for line in text.splitlines():
        parts = line.split()
        if not parts or parts[0] == "orthorep":
            continue
        if parts[0] == "corner":
            _, _v, _f, e, side, q = parts
            angles[(int(e), int(side))] = int(q)
        elif parts[0] == "bends":
            bends[int(parts[1])] = "" if parts[2] == "-" else parts[2]
    return OrthoRep(g, angles, bends)
