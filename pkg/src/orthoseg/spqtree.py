"""SPQ-trees of two-terminal series-parallel graphs.

Recognition repeatedly merges parallel virtual edges and contracts
non-terminal degree-2 vertices.  Composite nodes are merged maximally, so
an S-node never has an S-child and a P-node never has a P-child.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .errors import NotSeriesParallel


@dataclass
class SPQNode:
    kind: str  # "S", "P" or "Q"
    s: int
    t: int
    children: list["SPQNode"] = field(default_factory=list)
    edge: int | None = None

    def reversed(self) -> "SPQNode":
        if self.kind == "Q":
            return SPQNode("Q", self.t, self.s, edge=self.edge)
        kids = [c.reversed() for c in self.children]
        if self.kind == "S":
            kids.reverse()
        return SPQNode(self.kind, self.t, self.s, kids)

    def oriented(self, s: int, t: int) -> "SPQNode":
        if (self.s, self.t) == (s, t):
            return self
        if (self.t, self.s) == (s, t):
            return self.reversed()
        raise ValueError("terminals do not match")

    def walk(self) -> Iterator["SPQNode"]:
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def __repr__(self) -> str:
        if self.kind == "Q":
            return f"Q({self.s}-{self.t})"
        return f"{self.kind}({', '.join(map(repr, self.children))})"


@dataclass
class SPQTree:
    root: SPQNode

    @property
    def s(self) -> int:
        return self.root.s

    @property
    def t(self) -> int:
        return self.root.t

    def nodes(self) -> list[SPQNode]:
        return list(self.root.walk())

    def q_edges(self) -> list[tuple[int, int, int]]:
        """(edge id, upper terminal, lower terminal) for every Q-node."""
        return [(n.edge, n.s, n.t) for n in self.root.walk() if n.kind == "Q"]


def _compose(kind: str, a: SPQNode, b: SPQNode) -> SPQNode:
    kids = []
    for x in (a, b):
        kids.extend(x.children if x.kind == kind else [x])
    if kind == "S":
        return SPQNode("S", a.s, b.t, kids)
    return SPQNode("P", a.s, a.t, kids)


def build_spq_tree(edges: Mapping[int, tuple[int, int]], s: int, t: int) -> SPQTree:
    """SPQ-tree of the graph ``edges`` with terminals ``s`` and ``t``.

    Raises :class:`NotSeriesParallel` when the reductions get stuck.
    """
    if s == t:
        raise NotSeriesParallel("terminals must differ")
    virt: dict[int, SPQNode] = {}
    incident: dict[int, set[int]] = {}
    by_pair: dict[frozenset[int], set[int]] = {}
    counter = [0]

    def add(node: SPQNode) -> None:
        vid = counter[0]
        counter[0] += 1
        virt[vid] = node
        incident.setdefault(node.s, set()).add(vid)
        incident.setdefault(node.t, set()).add(vid)
        by_pair.setdefault(frozenset((node.s, node.t)), set()).add(vid)

    def remove(vid: int) -> SPQNode:
        node = virt.pop(vid)
        incident[node.s].discard(vid)
        incident[node.t].discard(vid)
        by_pair[frozenset((node.s, node.t))].discard(vid)
        return node

    for e in sorted(edges):
        u, v = edges[e]
        if u == v:
            raise NotSeriesParallel(f"self-loop {e}")
        add(SPQNode("Q", u, v, edge=e))
    if s not in incident or t not in incident:
        raise NotSeriesParallel("terminal not in graph")

    changed = True
    while changed and len(virt) > 1:
        changed = False
        for key in sorted(by_pair, key=sorted):
            vids = sorted(by_pair[key])
            if len(vids) < 2:
                continue
            first = remove(vids[0])
            node = first
            for vid in vids[1:]:
                node = _compose("P", node, remove(vid).oriented(first.s, first.t))
            add(node)
            changed = True
        for v in sorted(incident):
            if v in (s, t):
                continue
            vids = sorted(incident[v])
            if len(vids) == 0:
                continue
            if len(vids) != 2:
                if len(vids) == 1:
                    raise NotSeriesParallel(f"vertex {v} is a dead end")
                continue
            n1, n2 = virt[vids[0]], virt[vids[1]]
            x = n1.t if n1.s == v else n1.s
            y = n2.t if n2.s == v else n2.s
            if x == y:
                continue  # parallel pair, merged on the next pass
            remove(vids[0])
            remove(vids[1])
            add(_compose("S", n1.oriented(x, v), n2.oriented(v, y)))
            changed = True
    if len(virt) != 1:
        raise NotSeriesParallel("reductions stuck")
    (root,) = virt.values()
    if {root.s, root.t} != {s, t}:
        raise NotSeriesParallel("graph does not reduce to an s-t edge")
    for v, vids in incident.items():
        if vids and v not in (s, t):
            raise NotSeriesParallel("unreduced vertex")
    return SPQTree(root.oriented(s, t))


def expand(tree: SPQTree) -> list[tuple[int, int, int]]:
    """Edges reproduced by the tree, as sorted ``(id, u, v)`` with u < v."""
    return sorted((e, min(a, b), max(a, b)) for e, a, b in tree.q_edges())


@dataclass
class Lemma4Report:
    ok: bool
    clause: str = ""
    node: SPQNode | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_lemma4(tree: SPQTree) -> Lemma4Report:
    """Structural conditions on SPQ-trees of max-degree-3 graphs.

    Returns the first violated clause, checking nodes in preorder.
    """
    for node in tree.root.walk():
        kids = node.children
        kinds = [c.kind for c in kids]
        if node.kind == "S":
            if any(k == "S" for k in kinds):
                return Lemma4Report(False, "every child of an S-node is a P- or Q-node", node)
            if kinds[0] != "Q" or kinds[-1] != "Q":
                return Lemma4Report(False, "the first and last child of an S-node are Q-nodes", node)
            for i, k in enumerate(kinds):
                if k == "P" and (kinds[i - 1] != "Q" or kinds[i + 1] != "Q"):
                    return Lemma4Report(False, "a P-child of an S-node has Q-node neighbors", node)
        elif node.kind == "P":
            if node is tree.root:
                if len(kids) > 3:
                    return Lemma4Report(False, "a root P-node has at most three children", node)
            elif len(kids) != 2:
                return Lemma4Report(False, "each non-root P-node has exactly two children", node)
            if kinds.count("Q") > 1:
                return Lemma4Report(False, "at most one of the children of a P-node is a Q-node", node)
            if any(k == "P" for k in kinds):
                return Lemma4Report(False, "the children of a P-node other than a Q-node are S-nodes", node)
    return Lemma4Report(True)
