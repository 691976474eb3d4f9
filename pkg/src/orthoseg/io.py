"""Text formats for graphs and drawings, plus an SVG view of a drawing."""

from __future__ import annotations

from .compaction import Drawing
from .errors import FileFormatError
from .plane_graph import PlaneGraph, build_plane_graph

GRAPH_HEADER = "orthograph v1"
META_KEYS = ("segments", "cover", "aligned_pairs")
UNIT = 24
RADIUS = 4


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        vals = [int(t) for t in tokens]
    except ValueError:
        raise FileFormatError(f"line {lineno}: expected integers") from None
    if any(v < 0 for v in vals):
        raise FileFormatError(f"line {lineno}: ids must be non-negative")
    return vals


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_graph(text: str) -> PlaneGraph:
    vertices: list[int] = []
    rotation: dict[int, list[int]] = {}
    edges: dict[int, tuple[int, int]] = {}
    outer = None
    header = False
    for lineno, tok in _lines(text):
        if not header:
            if " ".join(tok) != GRAPH_HEADER:
                raise FileFormatError(f"line {lineno}: missing '{GRAPH_HEADER}' header")
            header = True
            continue
        kind, rest = tok[0], tok[1:]
        if kind == "v" and len(rest) == 1:
            vertices.extend(_ints(rest, lineno))
        elif kind == "r" and rest:
            v, *es = _ints(rest, lineno)
            rotation[v] = es
        elif kind == "e" and len(rest) == 3:
            e, u, w = _ints(rest, lineno)
            if e in edges:
                raise FileFormatError(f"line {lineno}: duplicate edge {e}")
            edges[e] = (u, w)
        elif kind == "outer" and len(rest) == 1:
            (outer,) = _ints(rest, lineno)
        else:
            raise FileFormatError(f"line {lineno}: cannot parse {' '.join(tok)!r}")
    if not header:
        raise FileFormatError("empty graph file")
    for v in vertices:
        rotation.setdefault(v, [])
    return build_plane_graph(vertices, edges, rotation, outer)


def dump_graph(g: PlaneGraph, with_outer: bool | None = None) -> str:
    """Serialize ``g``; the outer face line is written unless it was defaulted."""
    if with_outer is None:
        with_outer = not getattr(g, "outer_defaulted", False)
    out = [GRAPH_HEADER]
    out += [f"v {v}" for v in sorted(g.vertices)]
    for v in sorted(g.vertices):
        out.append(" ".join(["r", str(v)] + [str(e) for e in g.rotation[v]]))
    out += [f"e {e} {u} {v}" for e, (u, v) in sorted(g.edges.items())]
    if with_outer:
        out.append(f"outer {g.outer_face}")
    return "\n".join(out) + "\n"


def dump_drawing(d: Drawing) -> str:
    out = [f"vertex {v} {x} {y}" for v, (x, y) in sorted(d.coords.items())]
    for e in sorted(d.polylines):
        pts = " ".join(f"{x} {y}" for x, y in d.polylines[e])
        out.append(f"edge {e} {pts}")
    for key in META_KEYS:
        if key in d.meta:
            out.append(f"meta {key} {d.meta[key]}")
    return "\n".join(out) + "\n"


def parse_drawing(text: str) -> Drawing:
    coords: dict[int, tuple[int, int]] = {}
    polylines: dict[int, list[tuple[int, int]]] = {}
    meta: dict[str, int] = {}
    for lineno, tok in _lines(text):
        kind, rest = tok[0], tok[1:]
        try:
            if kind == "vertex" and len(rest) == 3:
                v, x, y = (int(t) for t in rest)
                coords[v] = (x, y)
            elif kind == "edge" and len(rest) >= 5 and len(rest) % 2 == 1:
                e = int(rest[0])
                nums = [int(t) for t in rest[1:]]
                polylines[e] = list(zip(nums[::2], nums[1::2]))
            elif kind == "meta" and len(rest) == 2:
                meta[rest[0]] = int(rest[1])
            else:
                raise FileFormatError(f"line {lineno}: cannot parse {' '.join(tok)!r}")
        except ValueError:
            raise FileFormatError(f"line {lineno}: expected integers") from None
    at = {p: v for v, p in coords.items()}
    edges = {}
    for e, pl in polylines.items():
        for p, q in zip(pl, pl[1:]):
            if p[0] != q[0] and p[1] != q[1]:
                raise FileFormatError(f"edge {e} is not axis-aligned")
        if pl[0] not in at or pl[-1] not in at:
            raise FileFormatError(f"edge {e} does not start and end at vertices")
        edges[e] = (at[pl[0]], at[pl[-1]])
    return Drawing(coords, polylines, edges, meta)


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


def drawing_to_svg(d: Drawing, color_segments: bool = False) -> str:
    """SVG of the drawing on a 24 px grid, y axis pointing up."""
    if d.coords:
        x0, y0, x1, y1 = d.bbox
    else:
        x0 = y0 = x1 = y1 = 0
    pad = UNIT

    def px(p):
        return (p[0] - x0) * UNIT + pad, (y1 - p[1]) * UNIT + pad

    w = (x1 - x0) * UNIT + 2 * pad
    h = (y1 - y0) * UNIT + 2 * pad
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">']
    if color_segments:
        from .analysis import extract_segments

        for i, s in enumerate(extract_segments(d)):
            if s.orientation == "P":
                continue
            (ax, ay), (bx, by) = (px(p) for p in s.endpoints)
            c = _PALETTE[i % len(_PALETTE)]
            out.append(f'<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" stroke="{c}" stroke-width="2"/>')
    else:
        for e in sorted(d.polylines):
            pts = " ".join("{},{}".format(*px(p)) for p in d.polylines[e])
            out.append(f'<polyline points="{pts}" fill="none" stroke="black" stroke-width="2"/>')
    for v in sorted(d.coords):
        cx, cy = px(d.coords[v])
        out.append(f'<circle cx="{cx}" cy="{cy}" r="{RADIUS}" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
