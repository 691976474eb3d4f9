"""Estimator-style wrapper around the drawing pipeline.

A drawing is computed per input graph, so ``fit`` only validates the
parameters and the inputs; ``transform`` does the work.
"""

from __future__ import annotations

from typing import Iterable

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .analysis import segment_count
from .compaction import Drawing
from .drawers import draw_general
from .errors import DegreeExceeded, DisconnectedInput
from .flow_net import CostParams
from .plane_graph import PlaneGraph

MODES = ("segment-min", "bend-min")


def check_plane_graph(g) -> PlaneGraph:
    """Return ``g`` if it is a connected plane graph of maximum degree 4."""
    if not isinstance(g, PlaneGraph):
        raise TypeError(f"expected a PlaneGraph, got {type(g).__name__}")
    if any(g.degree(v) > 4 for v in g.vertices):
        raise DegreeExceeded("maximum degree is 4")
    seen = {g.vertices[0]} if g.vertices else set()
    stack = list(seen)
    while stack:
        for w in g.neighbors(stack.pop()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != len(g.vertices):
        raise DisconnectedInput("graph is not connected")
    return g


def check_graphs(X) -> list[PlaneGraph]:
    if isinstance(X, PlaneGraph):
        X = [X]
    return [check_plane_graph(g) for g in X]


class MinSegmentDrawer(TransformerMixin, BaseEstimator):
    """Draw plane graphs with few segments.

    Parameters
    ----------
    mode : "segment-min" or "bend-min"
    costs : "a:d" doubled angle and dual costs of the segment network
    augment : align facing vertices after compaction
    """

    def __init__(self, mode: str = "segment-min", costs: str = "1:2", augment: bool = True):
        self.mode = mode
        self.costs = costs
        self.augment = augment

    def _check_params(self) -> CostParams:
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        return CostParams.parse(self.costs)

    def fit(self, X: PlaneGraph | Iterable[PlaneGraph], y=None) -> "MinSegmentDrawer":
        self.costs_ = self._check_params()
        self.n_graphs_ = len(check_graphs(X))
        return self

    def transform(self, X: PlaneGraph | Iterable[PlaneGraph]) -> list[Drawing]:
        check_is_fitted(self, "costs_")
        out = []
        for g in check_graphs(X):
            d = draw_general(g, self.mode, self.costs_, self.augment).drawing
            d.meta["segments"] = segment_count(d)
            out.append(d)
        return out

    def score(self, X, y=None) -> float:
        """Negative mean segment count (higher is better)."""
        ds = self.transform(X)
        return -sum(d.meta["segments"] for d in ds) / max(1, len(ds))
