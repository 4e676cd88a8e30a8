"""Maximum common subgraphs under block-and-bridge preserving embeddings.

The engine roots ``G`` at one vertex and evaluates, for every vertex ``g`` of
``G``, every vertex ``h`` of ``H`` and every choice of one excluded direction at
``h`` (or none), the best common subgraph that maps ``g`` to ``h``, extends only
downward from ``g`` and avoids the excluded direction at ``h``. A *direction*
at a vertex is one incident bridge or one incident block. Directions at ``g``
are paired with directions at ``h`` by a maximum-weight bipartite matching.

Two blocks are paired by enumerating, inside each block, the cycles through
the anchor that respect the block's outer cycle, aligning them by rotation or
reflection, and keeping every chord present in both hosts. This is exact for
outerplanar blocks and bounded by the block size limit.

A common subgraph either has a highest vertex in rooted ``G`` or its highest
part is a block of ``G`` that it enters without the block's top vertex; the
second case is scored only when choosing the final answer.

All table entries are computed eagerly, including pairs that the final answer
never reads; the matching census in :mod:`bbpmcs.bench` depends on that.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Mapping

from .blocks import BLOCK_SIZE_LIMIT, BCDecomposition, decompose_bc, is_outerplanar
from .errors import NotOuterplanar
from .graph import DEFAULT_WEIGHTS, Edge, LabeledGraph, WeightScheme, edge_key, graph_weight
from .matching import (
    MatchingInstance,
    MatchingSolution,
    SolveLog,
    solve_family_with_base,
    solve_hungarian,
)
from .validation import check_connected, check_graph, check_tree


class Mode(str, enum.Enum):
    PLAIN = "plain"
    BBP = "bbp"


class Solver(str, enum.Enum):
    PER_INSTANCE = "per-instance"
    GROUPED = "grouped"


@dataclass
class McsResult:
    """A common subgraph ``I`` given by its embeddings into both hosts.

    ``vertex_map[i] = (g, h)``; ``edge_map[(i, j)] = (edge in G, edge in H)``.
    """

    weight: Fraction
    vertex_map: dict[int, tuple[int, int]]
    edge_map: dict[Edge, tuple[Edge, Edge]]
    mode: Mode
    graph_g: LabeledGraph = field(repr=False)
    graph_h: LabeledGraph = field(repr=False)

    def common_graph(self) -> LabeledGraph:
        g = self.graph_g
        return LabeledGraph.from_edges(
            {i: g.vertex_labels[gv] for i, (gv, _) in self.vertex_map.items()},
            [(a, b, g.edge_labels[eg]) for (a, b), (eg, _) in self.edge_map.items()],
            name="common",
        )

    def image(self, side: str) -> tuple[set[int], set[Edge]]:
        k = 0 if side == "g" else 1
        return {p[k] for p in self.vertex_map.values()}, {p[k] for p in self.edge_map.values()}


@dataclass(frozen=True)
class BbpViolation:
    kind: str  # "BridgeToBlock" or "BlocksMerged"
    edges: tuple[Edge, ...]
    host: str  # "G" or "H"


def check_structure(result: McsResult, weights: WeightScheme = DEFAULT_WEIGHTS) -> list[str]:
    """Return a list of problems with the maps of ``result`` (empty when valid)."""
    g, h = result.graph_g, result.graph_h
    problems = []
    gs = [p[0] for p in result.vertex_map.values()]
    hs = [p[1] for p in result.vertex_map.values()]
    if len(set(gs)) != len(gs) or len(set(hs)) != len(hs):
        problems.append("vertex map is not injective")
    for i, (gv, hv) in result.vertex_map.items():
        if gv not in g.vertices or hv not in h.vertices:
            problems.append(f"vertex {i} maps outside a host")
        elif g.vertex_labels[gv] != h.vertex_labels[hv]:
            problems.append(f"vertex {i} labels differ")
    for (a, b), (eg, eh) in result.edge_map.items():
        ga, gb = result.vertex_map[a][0], result.vertex_map[b][0]
        ha, hb = result.vertex_map[a][1], result.vertex_map[b][1]
        if edge_key(ga, gb) != eg or edge_key(ha, hb) != eh:
            problems.append(f"edge {(a, b)} is not the image of its endpoints")
        elif eg not in g.edge_labels or eh not in h.edge_labels:
            problems.append(f"edge {(a, b)} missing from a host")
        elif g.edge_labels[eg] != h.edge_labels[eh]:
            problems.append(f"edge {(a, b)} labels differ")
    if problems:
        return problems
    common = result.common_graph()
    if not common.is_connected():
        problems.append("common subgraph is disconnected")
    if graph_weight(common, weights) != result.weight:
        problems.append("reported weight differs from the common subgraph's weight")
    return problems


def _bbp_violation(common: LabeledGraph, host: LabeledGraph, emap: Mapping[Edge, Edge], side: str):
    inner = decompose_bc(common)
    outer = decompose_bc(host)
    for e in sorted(inner.bridges):
        if outer.block_of[emap[e]] is not None:
            return BbpViolation("BridgeToBlock", (e,), side)
    block_edges = sorted(e for e, b in inner.block_of.items() if b is not None)
    for x, e in enumerate(block_edges):
        for f in block_edges[x + 1 :]:
            if inner.block_of[e] != inner.block_of[f] and outer.block_of[emap[e]] == outer.block_of[emap[f]]:
                return BbpViolation("BlocksMerged", (e, f), side)
    return None


def check_bbp(result: McsResult, g: LabeledGraph, h: LabeledGraph) -> BbpViolation | None:
    """``None`` when both embeddings of the common subgraph are block and bridge preserving."""
    common = result.common_graph()
    for side, host, k in (("G", g, 0), ("H", h, 1)):
        emap = {e: pair[k] for e, pair in result.edge_map.items()}
        violation = _bbp_violation(common, host, emap, side)
        if violation is not None:
            return violation
    return None


# ---------------------------------------------------------------------------
# host preprocessing


@dataclass(frozen=True)
class _Cycle:
    vertices: tuple[int, ...]  # anchor first, then the host's cyclic order
    chords: tuple[tuple[int, int], ...]  # index pairs joined by a host edge


class _Host:
    """Directions at every vertex plus anchored cycles of every block."""

    def __init__(self, g: LabeledGraph, bc: BCDecomposition, cycles: tuple[tuple[int, ...], ...]):
        self.g = g
        self.bc = bc
        self.order = cycles
        self.groups: dict[int, list[Hashable]] = {}
        for v in sorted(g.vertices):
            gs: list[Hashable] = [("b", edge_key(v, w)) for w in g.adjacency[v] if bc.is_bridge(v, w)]
            gs += [("k", i) for i in bc.blocks_at[v]]
            self.groups[v] = gs
        self._anchored: dict[tuple[int, int], list[_Cycle]] = {}

    def anchored_cycles(self, block: int, anchor: int) -> list[_Cycle]:
        key = (block, anchor)
        if key not in self._anchored:
            self._anchored[key] = self._enumerate(block, anchor)
        return self._anchored[key]

    def _enumerate(self, block: int, anchor: int) -> list[_Cycle]:
        order = self.order[block]
        s = order.index(anchor)
        ring = order[s:] + order[:s]
        g = self.g
        out = []
        path = [anchor]

        def extend(pos: int):
            last = path[-1]
            if len(path) >= 3 and g.has_edge(last, anchor):
                out.append(tuple(path))
            for nxt in range(pos, len(ring)):
                if g.has_edge(last, ring[nxt]):
                    path.append(ring[nxt])
                    extend(nxt + 1)
                    path.pop()

        extend(1)
        cycles = []
        for vs in out:
            n = len(vs)
            chords = tuple(
                (i, j)
                for i in range(n)
                for j in range(i + 2, n)
                if not (i == 0 and j == n - 1) and g.has_edge(vs[i], vs[j])
            )
            cycles.append(_Cycle(vs, chords))
        return cycles


def _prepare(g: LabeledGraph, block_size_limit: int) -> _Host:
    bc = decompose_bc(g)
    res = is_outerplanar(g, bc, block_size_limit)
    if not res.outerplanar:
        raise NotOuterplanar(f"graph {g.name or '<unnamed>'}: block {res.offending_block} is not outerplanar")
    return _Host(g, bc, res.cycles)


# ---------------------------------------------------------------------------
# dynamic programme


@dataclass(frozen=True)
class _BlockChoice:
    value: Fraction
    g_cycle: tuple[int, ...]
    h_cycle: tuple[int, ...]  # aligned with g_cycle position by position
    chords: tuple[tuple[int, int], ...]  # common chords, as index pairs


class _Engine:
    def __init__(self, hg: _Host, hh: _Host, weights: WeightScheme, solver: Solver, root: int, log: SolveLog | None):
        self.G, self.H = hg, hh
        self.w = weights
        self.solver = Solver(solver)
        self.log = log
        self.root = root
        # R[(g, h, excluded H-direction or None)] -> value or None when labels clash
        self.R: dict[tuple, Fraction | None] = {}
        self.choice: dict[tuple, list[tuple[Hashable, Hashable]]] = {}
        self.block_memo: dict[tuple, _BlockChoice | None] = {}
        self._root_bc_tree()

    def _root_bc_tree(self) -> None:
        g = self.G
        self.parent_group: dict[int, Hashable] = {self.root: None}
        self.child_groups: dict[int, list[Hashable]] = {}
        self.block_top: dict[int, int] = {}
        order = []
        queue = deque([self.root])
        while queue:
            x = queue.popleft()
            order.append(x)
            kids = [grp for grp in g.groups[x] if grp != self.parent_group[x]]
            self.child_groups[x] = kids
            for kind, ident in kids:
                if kind == "b":
                    y = ident[0] if ident[1] == x else ident[1]
                    self.parent_group[y] = (kind, ident)
                    queue.append(y)
                else:
                    self.block_top[ident] = x
                    for y in sorted(g.bc.block_vertices[ident]):
                        if y != x:
                            self.parent_group[y] = (kind, ident)
                            queue.append(y)
        self.postorder = order[::-1]

    # -- pair values ------------------------------------------------------

    def _vertex_value(self, gv: int, hv: int) -> Fraction | None:
        lab = self.G.g.vertex_labels[gv]
        if lab != self.H.g.vertex_labels[hv]:
            return None
        return self.w.vertex(lab)

    def _bridge_value(self, gv: int, ge: Edge, hv: int, he: Edge) -> Fraction | None:
        lab = self.G.g.edge_labels[ge]
        if lab != self.H.g.edge_labels[he]:
            return None
        g2 = ge[0] if ge[1] == gv else ge[1]
        h2 = he[0] if he[1] == hv else he[1]
        sub = self.R[(g2, h2, ("b", he))]
        if sub is None:
            return None
        return self.w.edge(lab) + sub

    def _block_value(self, gv: int, gb: int, hv: int, hb: int, avoid: int | None = None) -> _BlockChoice | None:
        key = (gv, gb, hv, hb, avoid)
        if key in self.block_memo:
            return self.block_memo[key]
        G, H = self.G.g, self.H.g
        best: _BlockChoice | None = None
        excl = ("k", hb)
        for cg in self.G.anchored_cycles(gb, gv):
            if avoid is not None and avoid in cg.vertices:
                continue
            n = len(cg.vertices)
            for ch in self.H.anchored_cycles(hb, hv):
                if len(ch.vertices) != n:
                    continue
                forward = ch.vertices
                backward = (ch.vertices[0],) + ch.vertices[:0:-1]
                for hs in (forward, backward):
                    choice = self._align(cg, hs, excl, G, H)
                    if choice is not None and (best is None or choice.value > best.value):
                        best = choice
        self.block_memo[key] = best
        return best

    def _align(self, cg: _Cycle, hs: tuple[int, ...], excl, G: LabeledGraph, H: LabeledGraph):
        gs = cg.vertices
        n = len(gs)
        total = Fraction(0)
        for i in range(n):
            j = (i + 1) % n
            lab = G.edge_label(gs[i], gs[j])
            if lab != H.edge_label(hs[i], hs[j]):
                return None
            total += self.w.edge(lab)
        for i in range(1, n):
            sub = self.R[(gs[i], hs[i], excl)]
            if sub is None:
                return None
            total += sub
        common = []
        for i, j in cg.chords:
            he = edge_key(hs[i], hs[j])
            if he in H.edge_labels and H.edge_labels[he] == G.edge_label(gs[i], gs[j]):
                total += self.w.edge(H.edge_labels[he])
                common.append((i, j))
        return _BlockChoice(total, gs, hs, tuple(common))

    def _direction_value(self, gv: int, ggrp, hv: int, hgrp) -> Fraction | None:
        if ggrp[0] != hgrp[0]:
            return None
        if ggrp[0] == "b":
            return self._bridge_value(gv, ggrp[1], hv, hgrp[1])
        choice = self._block_value(gv, ggrp[1], hv, hgrp[1])
        return None if choice is None else choice.value

    # -- evaluation -------------------------------------------------------

    def run(self) -> None:
        for gv in self.postorder:
            for hv in sorted(self.H.g.vertices):
                self._evaluate(gv, hv)

    def _evaluate(self, gv: int, hv: int) -> None:
        right = self.H.groups[hv]
        base_value = self._vertex_value(gv, hv)
        if base_value is None:
            for excl in [None, *right]:
                self.R[(gv, hv, excl)] = None
            return
        left = self.child_groups[gv]
        weights = {}
        for i, lg in enumerate(left):
            for j, rg in enumerate(right):
                val = self._direction_value(gv, lg, hv, rg)
                if val is not None and val > 0:
                    weights[(i, j)] = val
        base = MatchingInstance(len(left), len(right), weights, id=(gv, hv))
        solutions: dict[int | None, MatchingSolution] = {}
        if self.solver is Solver.GROUPED and len(left) >= 2 and len(right) >= 2:
            solutions[None], members = solve_family_with_base(base, range(len(right)), self.log)
            solutions.update(members)
        else:
            solutions[None] = self._solve(base, compound=len(left) >= 2 and len(right) >= 2)
            for d in range(len(right)):
                member = base.without_right(d)
                sol = self._solve(member, compound=len(left) >= 2 and len(right) - 1 >= 2)
                solutions[d] = MatchingSolution(
                    frozenset((i, j + (j >= d)) for i, j in sol.pairs), sol.weight
                )
        for d, sol in solutions.items():
            excl = None if d is None else right[d]
            key = (gv, hv, excl)
            self.R[key] = base_value + sol.weight
            self.choice[key] = [(left[i], right[j]) for i, j in sorted(sol.pairs)]

    def _solve(self, inst: MatchingInstance, compound: bool) -> MatchingSolution:
        if compound:
            return solve_hungarian(inst, self.log)
        if not inst.weights:
            return MatchingSolution(frozenset(), Fraction(0))
        # one side has a single vertex: the best single pair is optimal
        pair, w = max(sorted(inst.weights.items()), key=lambda kv: kv[1])
        return MatchingSolution(frozenset([pair]), w)

    # -- answer -----------------------------------------------------------

    def _top_options(self, gv: int, hv: int):
        """Values for common subgraphs whose highest part is a block of ``G``
        that they enter without containing the block's top vertex."""
        pg = self.parent_group[gv]
        if pg is None or pg[0] != "k":
            return
        gb = pg[1]
        for hgrp in self.H.groups[hv]:
            if hgrp[0] != "k":
                continue
            rest = self.R[(gv, hv, hgrp)]
            if rest is None:
                continue
            choice = self._block_value(gv, gb, hv, hgrp[1], avoid=self.block_top[gb])
            if choice is not None:
                yield rest + choice.value, hgrp

    def best_anchor(self) -> tuple[Fraction, int, int, Hashable] | None:
        """``(weight, g, h, H-block or None)`` of the best common subgraph."""
        best = None
        for gv in sorted(self.G.g.vertices):
            for hv in sorted(self.H.g.vertices):
                val = self.R[(gv, hv, None)]
                if val is not None and (best is None or val > best[0]):
                    best = (val, gv, hv, None)
                for val, hgrp in self._top_options(gv, hv):
                    if val > best[0]:
                        best = (val, gv, hv, hgrp)
        return best

    def reconstruct(self, mode: Mode) -> McsResult:
        G, H = self.G.g, self.H.g
        best = self.best_anchor()
        if best is None:
            return McsResult(Fraction(0), {}, {}, mode, G, H)
        weight, g0, h0, top_block = best
        pairs: list[tuple[int, int]] = []
        edges: list[tuple[tuple[int, int], tuple[int, int]]] = []
        work = [(g0, h0, top_block)]
        if top_block is not None:
            gb = self.parent_group[g0][1]
            bc = self.block_memo[(g0, gb, h0, top_block[1], self.block_top[gb])]
            self._emit_block(bc, top_block, edges, work)
        while work:
            gv, hv, excl = work.pop()
            pairs.append((gv, hv))
            for ggrp, hgrp in self.choice[(gv, hv, excl)]:
                if ggrp[0] == "b":
                    ge, he = ggrp[1], hgrp[1]
                    g2 = ge[0] if ge[1] == gv else ge[1]
                    h2 = he[0] if he[1] == hv else he[1]
                    edges.append(((gv, hv), (g2, h2)))
                    work.append((g2, h2, hgrp))
                else:
                    bc = self.block_memo[(gv, ggrp[1], hv, hgrp[1], None)]
                    self._emit_block(bc, hgrp, edges, work)
        pairs.sort()
        ids = {p: i for i, p in enumerate(pairs)}
        vertex_map = {i: p for p, i in ids.items()}
        edge_map = {}
        for a, b in edges:
            ia, ib = ids[a], ids[b]
            edge_map[edge_key(ia, ib)] = (edge_key(a[0], b[0]), edge_key(a[1], b[1]))
        return McsResult(weight, vertex_map, edge_map, mode, G, H)

    @staticmethod
    def _emit_block(bc: _BlockChoice, hgrp, edges: list, work: list) -> None:
        n = len(bc.g_cycle)
        mapped = list(zip(bc.g_cycle, bc.h_cycle))
        for i in range(n):
            edges.append((mapped[i], mapped[(i + 1) % n]))
        for i, j in bc.chords:
            edges.append((mapped[i], mapped[j]))
        for i in range(1, n):
            work.append((mapped[i][0], mapped[i][1], hgrp))


def _run(g, h, weights, solver, root, log, mode, block_size_limit) -> McsResult:
    if not g.vertices or not h.vertices:
        return McsResult(Fraction(0), {}, {}, mode, g, h)
    hg = _prepare(g, block_size_limit)
    hh = _prepare(h, block_size_limit)
    root = min(g.vertices) if root is None else root
    if root not in g.vertices:
        raise ValueError(f"root {root} is not a vertex of {g.name or 'G'}")
    engine = _Engine(hg, hh, weights, solver, root, log)
    engine.run()
    return engine.reconstruct(mode)


def mcs_tree(
    g: LabeledGraph,
    h: LabeledGraph,
    weights: WeightScheme = DEFAULT_WEIGHTS,
    solver: Solver | str = Solver.PER_INSTANCE,
    *,
    root: int | None = None,
    log: SolveLog | None = None,
) -> McsResult:
    """Maximum common subtree of two trees.

    ``root`` selects the root of ``g`` (smallest id by default); the weight does
    not depend on it, the set of matching instances does.
    """
    check_connected(check_graph(g), check_graph(h))
    check_tree(g, h)
    return _run(g, h, weights, solver, root, log, Mode.PLAIN, BLOCK_SIZE_LIMIT)


def mcs_bbp(
    g: LabeledGraph,
    h: LabeledGraph,
    weights: WeightScheme = DEFAULT_WEIGHTS,
    solver: Solver | str = Solver.PER_INSTANCE,
    *,
    root: int | None = None,
    log: SolveLog | None = None,
    block_size_limit: int = BLOCK_SIZE_LIMIT,
) -> McsResult:
    """Maximum-weight connected common subgraph with BBP embeddings into both hosts."""
    check_connected(check_graph(g), check_graph(h))
    return _run(g, h, weights, solver, root, log, Mode.BBP, block_size_limit)
