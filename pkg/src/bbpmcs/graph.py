"""Labeled undirected graphs, weight schemes and the line-oriented file formats.

Graph format::

    # comment
    graph <name>
    v <id> [label]
    e <id> <id> [label]

Weight-scheme format::

    vlabel <label> <weight>
    elabel <label> <weight>
    default <weight>

Weights are decimal or ``p/q`` rationals and are kept as :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import (
    DanglingEdge,
    DuplicateEdge,
    DuplicateVertex,
    ParseError,
    SelfLoop,
    UnknownLabel,
)

Edge = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, eq=False)
class LabeledGraph:
    """Immutable undirected graph with string labels on vertices and edges.

    Missing labels default to the empty string. Use :meth:`from_edges` to
    build one from plain Python containers.
    """

    vertices: frozenset
    edges: frozenset
    vertex_labels: Mapping[int, str]
    edge_labels: Mapping[Edge, str]
    name: str = ""

    @classmethod
    def from_edges(
        cls,
        vertices: Iterable[int] | Mapping[int, str],
        edges: Iterable[tuple] = (),
        name: str = "",
    ) -> "LabeledGraph":
        """Build a graph.

        ``vertices`` is an iterable of ids or a mapping id -> label. Each edge is
        ``(u, v)`` or ``(u, v, label)``.
        """
        vlabels: dict[int, str] = {}
        items = vertices.items() if isinstance(vertices, Mapping) else ((v, "") for v in vertices)
        for v, lab in items:
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ParseError(f"vertex id must be a nonnegative integer, got {v!r}")
            if v in vlabels:
                raise DuplicateVertex(f"duplicate vertex {v}")
            vlabels[v] = lab
        elabels: dict[Edge, str] = {}
        for e in edges:
            u, v = e[0], e[1]
            lab = e[2] if len(e) > 2 else ""
            if u == v:
                raise SelfLoop(f"self-loop at vertex {u}")
            if u not in vlabels or v not in vlabels:
                raise DanglingEdge(f"edge ({u}, {v}) references an undeclared vertex")
            k = edge_key(u, v)
            if k in elabels:
                raise DuplicateEdge(f"duplicate edge ({u}, {v})")
            elabels[k] = lab
        return cls(
            frozenset(vlabels),
            frozenset(elabels),
            MappingProxyType(vlabels),
            MappingProxyType(elabels),
            name,
        )

    @cached_property
    def adjacency(self) -> Mapping[int, tuple[int, ...]]:
        adj: dict[int, list[int]] = {v: [] for v in sorted(self.vertices)}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return MappingProxyType({v: tuple(sorted(ns)) for v, ns in adj.items()})

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def vertex_label(self, v: int) -> str:
        return self.vertex_labels[v]

    def edge_label(self, u: int, v: int) -> str:
        return self.edge_labels[edge_key(u, v)]

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.edge_labels

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def size(self) -> int:
        return len(self.edges)

    def components(self) -> list[frozenset]:
        seen: set[int] = set()
        comps = []
        for s in sorted(self.vertices):
            if s in seen:
                continue
            comp = {s}
            stack = [s]
            while stack:
                x = stack.pop()
                for y in self.adjacency[x]:
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        # the empty graph counts as connected
        return len(self.components()) <= 1

    def is_tree(self) -> bool:
        return self.is_connected() and self.size == max(self.order - 1, 0)

    def subgraph(self, vertices: Iterable[int], edges: Iterable[Edge], name: str = "") -> "LabeledGraph":
        vs = set(vertices)
        return LabeledGraph.from_edges(
            {v: self.vertex_labels[v] for v in sorted(vs)},
            [(u, v, self.edge_label(u, v)) for u, v in sorted(edge_key(*e) for e in edges)],
            name=name,
        )

    def structurally_equal(self, other: "LabeledGraph") -> bool:
        return (
            self.name == other.name
            and dict(self.vertex_labels) == dict(other.vertex_labels)
            and dict(self.edge_labels) == dict(other.edge_labels)
        )

    def __repr__(self) -> str:
        return f"LabeledGraph(name={self.name!r}, order={self.order}, size={self.size})"


@dataclass(frozen=True)
class WeightScheme:
    """Additive label weights. ``default=None`` makes unlisted labels an error."""

    vertex_weight: Mapping[str, Fraction] = field(default_factory=dict)
    edge_weight: Mapping[str, Fraction] = field(default_factory=dict)
    default: Fraction | None = Fraction(1)

    def __post_init__(self):
        for table in (self.vertex_weight, self.edge_weight):
            for lab, w in table.items():
                if Fraction(w) < 0:
                    raise ValueError(f"negative weight for label {lab!r}")
        if self.default is not None and Fraction(self.default) < 0:
            raise ValueError("negative default weight")

    def vertex(self, label: str) -> Fraction:
        if label in self.vertex_weight:
            return Fraction(self.vertex_weight[label])
        if self.default is None:
            raise UnknownLabel(f"no weight for vertex label {label!r}")
        return Fraction(self.default)

    def edge(self, label: str) -> Fraction:
        if label in self.edge_weight:
            return Fraction(self.edge_weight[label])
        if self.default is None:
            raise UnknownLabel(f"no weight for edge label {label!r}")
        return Fraction(self.default)


DEFAULT_WEIGHTS = WeightScheme()


def graph_weight(g: LabeledGraph, weights: WeightScheme = DEFAULT_WEIGHTS) -> Fraction:
    total = Fraction(0)
    for v in g.vertices:
        total += weights.vertex(g.vertex_labels[v])
    for e in g.edges:
        total += weights.edge(g.edge_labels[e])
    return total


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _parse_id(tok: str, lineno: int) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise ParseError(f"bad vertex id {tok!r}", lineno) from None
    if v < 0:
        raise ParseError(f"vertex id must be nonnegative, got {v}", lineno)
    return v


def parse_graph(text: str) -> LabeledGraph:
    name = ""
    vlabels: dict[int, str] = {}
    elabels: dict[Edge, str] = {}
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        toks = line.split()
        kind = toks[0]
        if kind == "graph":
            if seen_header:
                raise ParseError("second graph header", lineno)
            if len(toks) > 2:
                raise ParseError("graph name must be a single token", lineno)
            name = toks[1] if len(toks) == 2 else ""
            seen_header = True
        elif kind == "v":
            if len(toks) not in (2, 3):
                raise ParseError("expected 'v <id> [label]'", lineno)
            v = _parse_id(toks[1], lineno)
            if v in vlabels:
                raise DuplicateVertex(f"duplicate vertex {v}", lineno)
            vlabels[v] = toks[2] if len(toks) == 3 else ""
        elif kind == "e":
            if len(toks) not in (3, 4):
                raise ParseError("expected 'e <id> <id> [label]'", lineno)
            u, v = _parse_id(toks[1], lineno), _parse_id(toks[2], lineno)
            if u == v:
                raise SelfLoop(f"self-loop at vertex {u}", lineno)
            if u not in vlabels or v not in vlabels:
                raise DanglingEdge(f"edge ({u}, {v}) references an undeclared vertex", lineno)
            k = edge_key(u, v)
            if k in elabels:
                raise DuplicateEdge(f"duplicate edge ({u}, {v})", lineno)
            elabels[k] = toks[3] if len(toks) == 4 else ""
        else:
            raise ParseError(f"unknown record type {kind!r}", lineno)
    return LabeledGraph.from_edges(vlabels, [(u, v, lab) for (u, v), lab in elabels.items()], name=name)


def serialize_graph(g: LabeledGraph) -> str:
    lines = [f"graph {g.name}" if g.name else "graph"]
    for v in sorted(g.vertices):
        lab = g.vertex_labels[v]
        lines.append(f"v {v} {lab}".rstrip())
    for u, v in sorted(g.edges):
        lab = g.edge_labels[(u, v)]
        lines.append(f"e {u} {v} {lab}".rstrip())
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> LabeledGraph:
    path = Path(path)
    g = parse_graph(path.read_text(encoding="utf-8"))
    if not g.name:
        g = LabeledGraph(g.vertices, g.edges, g.vertex_labels, g.edge_labels, path.stem)
    return g


def _parse_weight(tok: str, lineno: int) -> Fraction:
    try:
        w = Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad weight {tok!r}", lineno) from None
    if w < 0:
        raise ParseError(f"negative weight {tok!r}", lineno)
    return w


def parse_weights(text: str) -> WeightScheme:
    """Parse a weight-scheme document.

    A document without a ``default`` line is strict: looking up an unlisted
    label raises :class:`UnknownLabel`.
    """
    vw: dict[str, Fraction] = {}
    ew: dict[str, Fraction] = {}
    default = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        toks = line.split()
        if toks[0] in ("vlabel", "elabel"):
            # the empty label is written as a bare record: "vlabel <weight>"
            if len(toks) == 2:
                lab, wtok = "", toks[1]
            elif len(toks) == 3:
                lab, wtok = toks[1], toks[2]
            else:
                raise ParseError(f"expected '{toks[0]} <label> <weight>'", lineno)
            (vw if toks[0] == "vlabel" else ew)[lab] = _parse_weight(wtok, lineno)
        elif toks[0] == "default":
            if len(toks) != 2:
                raise ParseError("expected 'default <weight>'", lineno)
            default = _parse_weight(toks[1], lineno)
        else:
            raise ParseError(f"unknown record type {toks[0]!r}", lineno)
    return WeightScheme(vw, ew, default)


def read_weights(path: str | Path) -> WeightScheme:
    return parse_weights(Path(path).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class RootedGraph:
    graph: LabeledGraph
    root: int

    def __post_init__(self):
        if self.root not in self.graph.vertices:
            raise ValueError(f"root {self.root} is not a vertex of the graph")


FIXTURE_DIR = Path(__file__).parent / "fixtures"


def load_fixture(name: str) -> LabeledGraph:
    """Read one of the bundled example graphs, e.g. ``load_fixture("triangle")``."""
    return read_graph(FIXTURE_DIR / f"{name}.graph")
