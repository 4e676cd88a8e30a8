"""Exhaustive maximum common subgraph search for small graphs.

Every connected subgraph of each host is enumerated (single vertices and
connected edge sets). In BBP mode a subgraph is kept only if its identity
embedding into the host preserves blocks and bridges, checked literally: every
bridge of the subgraph is a bridge of the host, and edges from different blocks
of the subgraph lie in different host blocks. The answer is the heaviest
subgraph of ``G`` that is label-isomorphic to a kept subgraph of ``H``.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from fractions import Fraction
from typing import Iterator

import networkx as nx
from networkx.algorithms import isomorphism as iso

from .blocks import decompose_bc
from .errors import TooLarge
from .graph import DEFAULT_WEIGHTS, Edge, LabeledGraph, WeightScheme
from .mcs import McsResult, Mode, _bbp_violation
from .validation import check_connected

ORACLE_LIMIT = 20


def connected_edge_sets(g: LabeledGraph) -> Iterator[tuple[Edge, ...]]:
    """Yield every nonempty connected edge subset of ``g`` exactly once."""
    edges = sorted(g.edges)
    m = len(edges)
    nbr = [0] * m
    for i, (a, b) in enumerate(edges):
        for j in range(i + 1, m):
            if a in edges[j] or b in edges[j]:
                nbr[i] |= 1 << j
                nbr[j] |= 1 << i

    def extend(sub: int, ext: int, seen: int, above: int):
        yield sub
        while ext:
            low = ext & -ext
            ext ^= low
            w = low.bit_length() - 1
            fresh = nbr[w] & ~seen & above
            yield from extend(sub | low, ext | fresh, seen | nbr[w], above)

    for v in range(m):
        above = ~((1 << (v + 1)) - 1)
        for mask in extend(1 << v, nbr[v] & above, nbr[v] | 1 << v, above):
            yield tuple(edges[i] for i in range(m) if mask >> i & 1)


def connected_subgraphs(g: LabeledGraph) -> Iterator[tuple[frozenset, tuple[Edge, ...]]]:
    for v in sorted(g.vertices):
        yield frozenset([v]), ()
    for es in connected_edge_sets(g):
        yield frozenset(x for e in es for x in e), es


def _key(g: LabeledGraph, vs, es, weights: WeightScheme):
    deg = Counter()
    for a, b in es:
        deg[a] += 1
        deg[b] += 1
    w = sum((weights.vertex(g.vertex_labels[v]) for v in vs), Fraction(0))
    w += sum((weights.edge(g.edge_labels[e]) for e in es), Fraction(0))
    vsig = tuple(sorted((g.vertex_labels[v], deg[v]) for v in vs))
    esig = tuple(
        sorted(
            (g.edge_labels[(a, b)], *sorted(((g.vertex_labels[a], deg[a]), (g.vertex_labels[b], deg[b]))))
            for a, b in es
        )
    )
    return w, vsig, esig


def _candidates(g: LabeledGraph, weights: WeightScheme, mode: Mode):
    host_bc = decompose_bc(g) if mode is Mode.BBP else None
    out = []
    for vs, es in connected_subgraphs(g):
        if host_bc is not None and es:
            sub = g.subgraph(vs, es)
            if _bbp_violation(sub, g, {e: e for e in es}, "") is not None:
                continue
        out.append((_key(g, vs, es, weights), vs, es))
    return out


def _nx(g: LabeledGraph, vs, es) -> nx.Graph:
    x = nx.Graph()
    for v in vs:
        x.add_node(v, label=g.vertex_labels[v])
    for a, b in es:
        x.add_edge(a, b, label=g.edge_labels[(a, b)])
    return x


def mcs_oracle(
    g: LabeledGraph,
    h: LabeledGraph,
    weights: WeightScheme = DEFAULT_WEIGHTS,
    mode: Mode | str = Mode.PLAIN,
) -> McsResult:
    mode = Mode(mode)
    if g.order + h.order > ORACLE_LIMIT:
        raise TooLarge(f"{g.order} + {h.order} vertices exceed the oracle limit {ORACLE_LIMIT}")
    check_connected(g, h)
    if not g.vertices or not h.vertices:
        return McsResult(Fraction(0), {}, {}, mode, g, h)

    right = defaultdict(list)
    for key, vs, es in _candidates(h, weights, mode):
        right[key].append((vs, es))
    left = [c for c in _candidates(g, weights, mode) if c[0] in right]
    left.sort(key=lambda c: (-c[0][0], sorted(c[1]), c[2]))

    match = iso.categorical_node_match("label", None)
    ematch = iso.categorical_edge_match("label", None)
    for key, vs, es in left:
        a = _nx(g, vs, es)
        for hvs, hes in right[key]:
            gm = iso.GraphMatcher(a, _nx(h, hvs, hes), node_match=match, edge_match=ematch)
            if gm.is_isomorphic():
                phi = gm.mapping
                order = sorted(vs)
                ids = {v: i for i, v in enumerate(order)}
                vertex_map = {ids[v]: (v, phi[v]) for v in order}
                edge_map = {}
                for x, y in es:
                    i, j = sorted((ids[x], ids[y]))
                    hx, hy = sorted((phi[x], phi[y]))
                    edge_map[(i, j)] = ((x, y), (hx, hy))
                return McsResult(key[0], vertex_map, edge_map, mode, g, h)
    return McsResult(Fraction(0), {}, {}, mode, g, h)
