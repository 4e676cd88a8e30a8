"""Deterministic graph generators used by the benchmarks and the test suites."""

from __future__ import annotations

import random

from .blocks import is_outerplanar
from .graph import LabeledGraph


def gen_star(n: int) -> LabeledGraph:
    """Center 0 joined to leaves 1..n."""
    return LabeledGraph.from_edges(range(n + 1), [(0, i) for i in range(1, n + 1)], name=f"star{n}")


def gen_path(n: int) -> LabeledGraph:
    """Path with ``n`` edges on vertices 0..n."""
    return LabeledGraph.from_edges(range(n + 1), [(i, i + 1) for i in range(n)], name=f"path{n}")


def _prufer_edges(n: int, rng: random.Random) -> list[tuple[int, int]]:
    if n <= 1:
        return []
    if n == 2:
        return [(0, 1)]
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(i for i in range(n) if degree[i] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = (i for i in range(n) if degree[i] == 1)
    edges.append((u, v))
    return edges


def _labels(n: int, rng: random.Random, alphabet) -> dict[int, str]:
    return {i: (rng.choice(alphabet) if alphabet else "") for i in range(n)}


def gen_random_tree(n: int, seed: int, vertex_labels=(), edge_labels=()) -> LabeledGraph:
    """Uniform random labelled tree on ``n`` vertices from a Pruefer sequence."""
    rng = random.Random(seed)
    edges = _prufer_edges(n, rng)
    vl = _labels(n, rng, vertex_labels)
    es = [(u, v, rng.choice(edge_labels) if edge_labels else "") for u, v in edges]
    return LabeledGraph.from_edges(vl, es, name=f"tree{n}_{seed}")


def gen_random_connected(n: int, seed: int, extra: int, vertex_labels=(), edge_labels=()) -> LabeledGraph:
    """Random tree plus up to ``extra`` additional random edges."""
    rng = random.Random(seed)
    edges = {tuple(sorted(e)) for e in _prufer_edges(n, rng)}
    pool = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
    rng.shuffle(pool)
    edges |= set(pool[:extra])
    vl = _labels(n, rng, vertex_labels)
    es = [(u, v, rng.choice(edge_labels) if edge_labels else "") for u, v in sorted(edges)]
    return LabeledGraph.from_edges(vl, es, name=f"conn{n}_{seed}")


def gen_random_outerplanar(n: int, seed: int, attempts: int | None = None, vertex_labels=(), edge_labels=()) -> LabeledGraph:
    """Random connected outerplanar graph: a random tree, then random edges kept
    whenever the graph stays outerplanar."""
    rng = random.Random(seed)
    edges = {tuple(sorted(e)) for e in _prufer_edges(n, rng)}
    vl = _labels(n, rng, vertex_labels)
    pool = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
    rng.shuffle(pool)
    budget = rng.randint(0, n) if attempts is None else attempts
    for e in pool[:budget]:
        trial = LabeledGraph.from_edges(vl, sorted(edges | {e}))
        if is_outerplanar(trial).outerplanar:
            edges.add(e)
    es = [(u, v, rng.choice(edge_labels) if edge_labels else "") for u, v in sorted(edges)]
    return LabeledGraph.from_edges(vl, es, name=f"outerplanar{n}_{seed}")
