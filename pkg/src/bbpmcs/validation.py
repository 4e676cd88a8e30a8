"""Input checks shared by the estimators and the MCS entry points."""

from __future__ import annotations

from typing import Iterable

from .errors import Disconnected, NotATree
from .graph import LabeledGraph


def _name(g: LabeledGraph) -> str:
    return g.name or "<unnamed>"


def check_graph(g) -> LabeledGraph:
    if not isinstance(g, LabeledGraph):
        raise TypeError(f"expected a LabeledGraph, got {type(g).__name__}")
    return g


def check_graphs(graphs: Iterable) -> list[LabeledGraph]:
    out = [check_graph(g) for g in graphs]
    if not out:
        raise ValueError("expected at least one graph")
    return out


def check_connected(*graphs: LabeledGraph) -> None:
    for g in graphs:
        if not g.is_connected():
            raise Disconnected(f"graph {_name(g)} is disconnected")


def check_tree(*graphs: LabeledGraph) -> None:
    for g in graphs:
        if not g.is_tree():
            raise NotATree(f"graph {_name(g)} is not a tree")
