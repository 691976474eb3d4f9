"""Command-line front end."""

from __future__ import annotations

import argparse
import sys
from itertools import combinations
from typing import Sequence, TextIO

from .analysis import find_hamiltonian_path, min_cover_of_drawing, segment_count
from .compaction import Drawing
from .drawers import draw_general, draw_sp_upward, draw_spine, draw_tree_min_segments, draw_tree_upward
from .errors import NotATree, NotSeriesParallel, OrthoError
from .flow_net import CostParams
from .io import drawing_to_svg, dump_drawing, parse_drawing, parse_graph
from .plane_graph import PlaneGraph, _grow_tree
from .spqtree import SPQTree, build_spq_tree, check_lemma4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="orthoseg", description="Minimum-segment orthogonal drawings.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("input")
        sp.add_argument("--svg", metavar="PATH")

    d = sub.add_parser("draw", help="general plane graph through the flow pipeline")
    common(d)
    d.add_argument("--mode", choices=("segment-min", "bend-min"), default="segment-min")
    d.add_argument("--no-augment", action="store_true")
    d.add_argument("--costs", metavar="A:D", default="1:2")

    s = sub.add_parser("sp-upward", help="upward drawing of a series-parallel graph")
    common(s)
    s.add_argument("--s", type=int)
    s.add_argument("--t", type=int)

    t = sub.add_parser("tree", help="drawing of a tree")
    common(t)
    t.add_argument("--upward", action="store_true")
    t.add_argument("--root", type=int)

    h = sub.add_parser("spine", help="drawing along a Hamiltonian path")
    common(h)
    h.add_argument("--path", metavar="V1,V2,...")

    a = sub.add_parser("analyze", help="segment statistics of a drawing file")
    common(a)
    return p


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}") from None


def _sp_tree(g: PlaneGraph, s: int | None, t: int | None) -> SPQTree:
    if s is not None and t is not None:
        return build_spq_tree(g.edges, s, t)
    pairs = [(a, b) for a, b in combinations(sorted(g.vertices), 2)]
    if s is not None or t is not None:
        fixed = s if s is not None else t
        pairs = [(a, b) for a, b in pairs if fixed in (a, b)]
    for a, b in pairs:
        try:
            tree = build_spq_tree(g.edges, a, b)
        except NotSeriesParallel:
            continue
        if check_lemma4(tree):
            return tree
    raise NotSeriesParallel("no terminal pair yields a drawable decomposition")


def _draw(args) -> Drawing:
    if args.command == "analyze":
        d = parse_drawing(_read(args.input))
        d.meta["segments"] = segment_count(d)
        d.meta["cover"] = min_cover_of_drawing(d)[0]
        return d
    g = parse_graph(_read(args.input))
    if args.command == "draw":
        try:
            costs = CostParams.parse(args.costs)
        except ValueError:
            raise _UsageError(f"--costs expects two integers a:d, got {args.costs!r}") from None
        d = draw_general(g, args.mode, costs, augment=not args.no_augment).drawing
        d.meta.pop("cost_x2", None)
    elif args.command == "sp-upward":
        d, _ = draw_sp_upward(_sp_tree(g, args.s, args.t), g.edges)
    elif args.command == "tree":
        if len(g.edges) != len(g.vertices) - 1:
            raise NotATree("input is not a tree")
        root = g.vertices[0] if args.root is None else args.root
        if root not in g.rotation:
            raise _UsageError(f"--root {root} is not a vertex")
        tree = _grow_tree(g, root, list(g.rotation[root]), {root})
        d = draw_tree_upward(tree) if args.upward else draw_tree_min_segments(tree)
    else:
        if args.path:
            try:
                path = [int(x) for x in args.path.split(",")]
            except ValueError:
                raise _UsageError(f"--path expects comma-separated ids, got {args.path!r}") from None
        else:
            path = find_hamiltonian_path(g)
            if path is None:
                raise OrthoError("no Hamiltonian path found")
        d = draw_spine(g, path)
    d.meta["segments"] = segment_count(d)
    return d


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = _parser().parse_args(argv)
        d = _draw(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return 2
    except (OrthoError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    stdout.write(dump_drawing(d))
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(drawing_to_svg(d))
    return 0


def main() -> None:
    sys.exit(run())
