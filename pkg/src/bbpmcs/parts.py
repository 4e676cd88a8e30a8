"""Parts of rooted trees, compound-root parts and their elementary parts.

A rooted tree ``T^r`` generates its parts by closing ``{T^r}`` under two rules:

* if the root ``p`` of a part has exactly one incident edge ``{p, v}``, drop
  ``p`` and re-root at ``v``;
* if ``p`` has ``k >= 2`` incident edges, keep, for each of them, the component
  containing ``p`` after removing the other ``k - 1`` root edges.

Parts are identified by ``(vertex set, root)``; different derivations of the
same part collapse into one entry.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .graph import LabeledGraph, RootedGraph
from .validation import check_tree


@dataclass(frozen=True)
class RootedPart:
    part_id: int
    origin: frozenset
    root: int
    rule: str  # "i", "ii" or "iii"
    derived_from: int | None
    host: LabeledGraph = field(repr=False, compare=False)

    @property
    def key(self) -> tuple[tuple[int, ...], int]:
        return tuple(sorted(self.origin)), self.root

    @property
    def root_children(self) -> tuple[int, ...]:
        return tuple(v for v in self.host.adjacency[self.root] if v in self.origin)

    @property
    def is_compound_root(self) -> bool:
        return len(self.root_children) >= 2

    @property
    def graph(self) -> RootedGraph:
        edges = [e for e in self.host.edges if e[0] in self.origin and e[1] in self.origin]
        return RootedGraph(self.host.subgraph(self.origin, edges), self.root)

    def __str__(self) -> str:
        return f"root={self.root} vertices={{{', '.join(map(str, sorted(self.origin)))}}}"


@dataclass
class PartCatalog:
    host: LabeledGraph
    parts: list[RootedPart]
    elementary_parts_of: dict[int, list[int]]

    def __post_init__(self):
        self._by_key = {p.key: p for p in self.parts}

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def find(self, vertices, root: int) -> RootedPart | None:
        return self._by_key.get((tuple(sorted(vertices)), root))

    def is_compound_root(self, part: RootedPart) -> bool:
        return part.is_compound_root

    def compound_parts(self) -> list[RootedPart]:
        return [p for p in self.parts if p.is_compound_root]


@dataclass(frozen=True)
class DeletionFamily:
    center: int
    members: tuple[RootedPart, ...]


def _branch(host: LabeledGraph, vertices: frozenset, root: int, child: int) -> frozenset:
    """Vertices reachable from ``child`` inside ``vertices`` without passing ``root``."""
    seen = {child}
    stack = [child]
    while stack:
        x = stack.pop()
        for y in host.adjacency[x]:
            if y != root and y in vertices and y not in seen:
                seen.add(y)
                stack.append(y)
    return frozenset(seen)


def _close(host: LabeledGraph, roots) -> PartCatalog:
    parts: list[RootedPart] = []
    index: dict[tuple, int] = {}
    elementary: dict[int, list[int]] = {}
    queue: deque[int] = deque()

    def add(vertices: frozenset, root: int, rule: str, parent: int | None) -> int:
        key = (tuple(sorted(vertices)), root)
        if key in index:
            return index[key]
        pid = len(parts)
        parts.append(RootedPart(pid, vertices, root, rule, parent, host))
        index[key] = pid
        queue.append(pid)
        return pid

    for r in roots:
        add(frozenset(host.vertices), r, "i", None)
        while queue:
            part = parts[queue.popleft()]
            children = part.root_children
            if len(children) == 1:
                add(part.origin - {part.root}, children[0], "ii", part.part_id)
            elif len(children) >= 2:
                elementary[part.part_id] = [
                    add(_branch(host, part.origin, part.root, c) | {part.root}, part.root, "iii", part.part_id)
                    for c in children
                ]
    return PartCatalog(host, parts, elementary)


def parts(tree: RootedGraph) -> PartCatalog:
    check_tree(tree.graph)
    return _close(tree.graph, [tree.root])


def parts_star(h: LabeledGraph) -> PartCatalog:
    """Union of the parts of ``h`` over every choice of root."""
    check_tree(h)
    return _close(h, sorted(h.vertices))


def deletion_family(h: LabeledGraph, center: int) -> DeletionFamily:
    """Parts rooted at ``center`` obtained by deleting one adjacent leaf."""
    check_tree(h)
    full = frozenset(h.vertices)
    members = []
    for v in h.adjacency[center]:
        if h.degree(v) == 1:
            members.append(RootedPart(-1, full - {v}, center, "ii", None, h))
    catalog = parts_star(h)
    resolved = tuple(catalog.find(m.origin, center) or m for m in members)
    return DeletionFamily(center, resolved)


def compound_pairs(g: RootedGraph, h: LabeledGraph) -> list[tuple[RootedPart, RootedPart]]:
    """Every pair of compound-root parts from ``parts(g)`` x ``parts_star(h)``."""
    left = parts(g).compound_parts()
    right = parts_star(h).compound_parts()
    return [(p, q) for p in left for q in right]
