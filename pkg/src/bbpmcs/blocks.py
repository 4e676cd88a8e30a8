"""Block/bridge decomposition and exact outerplanarity recognition."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

from .errors import BlockTooLarge
from .graph import Edge, LabeledGraph, edge_key

BLOCK_SIZE_LIMIT = 16


@dataclass(frozen=True, eq=False)
class BCDecomposition:
    """Blocks (cycle-containing biconnected components) and bridges of a graph.

    ``block_of`` maps every edge to its block index, or to ``None`` for bridges.
    """

    graph: LabeledGraph
    blocks: tuple[frozenset, ...]
    bridges: frozenset
    articulation_vertices: frozenset
    block_of: Mapping[Edge, int | None]

    @cached_property
    def block_vertices(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(v for e in b for v in e) for b in self.blocks)

    def is_bridge(self, u: int, v: int) -> bool:
        return self.block_of[edge_key(u, v)] is None

    @cached_property
    def blocks_at(self) -> Mapping[int, tuple[int, ...]]:
        at: dict[int, set[int]] = {v: set() for v in self.graph.vertices}
        for i, vs in enumerate(self.block_vertices):
            for v in vs:
                at[v].add(i)
        return {v: tuple(sorted(s)) for v, s in at.items()}


def decompose_bc(g: LabeledGraph) -> BCDecomposition:
    """Split the edges of ``g`` into blocks and bridges (per connected component)."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    components: list[list[Edge]] = []
    articulation: set[int] = set()
    counter = 0
    for root in sorted(g.vertices):
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        root_children = 0
        edge_stack: list[Edge] = []
        # frames: (vertex, parent, neighbour iterator)
        stack = [(root, None, iter(g.adjacency[root]))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    edge_stack.append(edge_key(v, w))
                    stack.append((w, v, iter(g.adjacency[w])))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    edge_stack.append(edge_key(v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent is None:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                if parent == root:
                    root_children += 1
                else:
                    articulation.add(parent)
                top = edge_key(parent, v)
                comp = []
                while True:
                    e = edge_stack.pop()
                    comp.append(e)
                    if e == top:
                        break
                components.append(comp)
        if root_children >= 2:
            articulation.add(root)

    blocks = []
    bridges = set()
    block_of: dict[Edge, int | None] = {}
    for comp in sorted(components, key=lambda c: min(c)):
        if len(comp) == 1:
            bridges.add(comp[0])
            block_of[comp[0]] = None
        else:
            for e in comp:
                block_of[e] = len(blocks)
            blocks.append(frozenset(comp))
    return BCDecomposition(g, tuple(blocks), frozenset(bridges), frozenset(articulation), block_of)


@dataclass(frozen=True)
class OuterplanarityResult:
    """Outcome of :func:`is_outerplanar`.

    ``cycles[i]`` is a Hamiltonian cycle (as a vertex tuple) of block ``i`` whose
    remaining edges are pairwise non-crossing. ``offending_block`` is set when
    the answer is negative.
    """

    outerplanar: bool
    cycles: tuple[tuple[int, ...], ...] = ()
    offending_block: int | None = None

    def __bool__(self) -> bool:
        return self.outerplanar


def _chords_cross(order: tuple[int, ...], chords: list[Edge]) -> bool:
    pos = {v: i for i, v in enumerate(order)}
    spans = [tuple(sorted((pos[u], pos[v]))) for u, v in chords]
    for i, (a, b) in enumerate(spans):
        for c, d in spans[i + 1 :]:
            if a < c < b < d or c < a < d < b:
                return True
    return False


def outer_cycle(vertices: frozenset, edges: frozenset) -> tuple[int, ...] | None:
    """Return a Hamiltonian cycle of the block whose chords do not cross, if any."""
    n = len(vertices)
    if len(edges) > 2 * n - 3:
        return None
    adj: dict[int, list[int]] = {v: [] for v in vertices}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    for v in adj:
        adj[v].sort()
    start = min(vertices)
    path = [start]
    on_path = {start}

    def search():
        if len(path) == n:
            if start not in adj[path[-1]]:
                return None
            order = tuple(path)
            cyc = {edge_key(order[i], order[(i + 1) % n]) for i in range(n)}
            chords = [e for e in edges if e not in cyc]
            return None if _chords_cross(order, chords) else order
        for w in adj[path[-1]]:
            if w in on_path:
                continue
            # fix the orientation: the second vertex is smaller than the last one
            if len(path) == n - 1 and w < path[1]:
                continue
            path.append(w)
            on_path.add(w)
            found = search()
            path.pop()
            on_path.discard(w)
            if found is not None:
                return found
        return None

    return search()


def is_outerplanar(
    g: LabeledGraph,
    bc: BCDecomposition | None = None,
    block_size_limit: int = BLOCK_SIZE_LIMIT,
) -> OuterplanarityResult:
    bc = bc or decompose_bc(g)
    cycles = []
    for i, (edges, vs) in enumerate(zip(bc.blocks, bc.block_vertices)):
        if len(vs) > block_size_limit:
            raise BlockTooLarge(f"block {i} has {len(vs)} vertices (limit {block_size_limit})")
        order = outer_cycle(vs, edges)
        if order is None:
            return OuterplanarityResult(False, tuple(cycles), i)
        cycles.append(order)
    return OuterplanarityResult(True, tuple(cycles))
