import itertools

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from bbpmcs import LabeledGraph, decompose_bc, gen_random_connected, gen_random_tree, gen_star, is_outerplanar
from bbpmcs.blocks import outer_cycle
from bbpmcs.errors import BlockTooLarge


def k(n):
    return LabeledGraph.from_edges(range(n), list(itertools.combinations(range(n), 2)))


def apex_planar(g: LabeledGraph) -> bool:
    # a graph is outerplanar iff adding one vertex joined to everything keeps it planar
    x = nx.Graph(list(g.edges))
    x.add_nodes_from(g.vertices)
    x.add_edges_from(("apex", v) for v in g.vertices)
    return nx.check_planarity(x)[0]


def test_star_has_only_bridges():
    bc = decompose_bc(gen_star(6))
    assert bc.blocks == ()
    assert len(bc.bridges) == 6
    assert bc.articulation_vertices == {0}


def test_triangle_is_one_block(fx):
    bc = decompose_bc(fx("triangle"))
    assert [len(b) for b in bc.blocks] == [3]
    assert not bc.bridges


def test_pendant_block_left_host(fx):
    g = fx("pendant_block_g")
    bc = decompose_bc(g)
    assert [len(b) for b in bc.blocks] == [10]
    assert bc.bridges == {(4, 7)}
    assert bc.block_of[(4, 7)] is None
    assert bc.is_bridge(7, 4)
    # brute-force check: every two block edges lie on a common cycle, i.e. stay
    # connected after deleting any single edge of the block
    block = sorted(bc.blocks[0])
    for e in block:
        rest = nx.Graph([f for f in block if f != e])
        assert nx.is_connected(rest) and nx.has_path(rest, *e)


def test_two_triangles_sharing_a_vertex():
    g = LabeledGraph.from_edges(range(5), [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    bc = decompose_bc(g)
    assert sorted(len(b) for b in bc.blocks) == [3, 3]
    assert bc.articulation_vertices == {2}
    assert bc.blocks_at[2] == (0, 1)


def test_disconnected_input_is_decomposed_per_component():
    g = LabeledGraph.from_edges(range(6), [(0, 1), (1, 2), (0, 2), (4, 5)])
    bc = decompose_bc(g)
    assert [len(b) for b in bc.blocks] == [3]
    assert bc.bridges == {(4, 5)}


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 12), st.integers(0, 2**32), st.integers(0, 8))
def test_blocks_match_networkx(n, seed, extra):
    g = gen_random_connected(n, seed, extra)
    bc = decompose_bc(g)
    assert sum(len(b) for b in bc.blocks) + len(bc.bridges) == g.size
    x = nx.Graph(list(g.edges))
    comps = [frozenset(tuple(sorted(e)) for e in c) for c in nx.biconnected_component_edges(x)]
    assert {c for c in comps if len(c) >= 2} == set(bc.blocks)
    assert {next(iter(c)) for c in comps if len(c) == 1} == set(bc.bridges)
    assert set(bc.articulation_vertices) == set(nx.articulation_points(x))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.integers(0, 2**32))
def test_tree_characterization(n, seed):
    t = gen_random_tree(n, seed)
    bc = decompose_bc(t)
    assert not bc.blocks and len(bc.bridges) == n - 1
    assert is_outerplanar(t)


def test_k4_is_not_outerplanar():
    res = is_outerplanar(k(4))
    assert not res and res.offending_block == 0


def test_k4_minus_edge_is_outerplanar(fx):
    res = is_outerplanar(fx("k4_minus_edge"))
    assert res
    cyc = res.cycles[0]
    assert len(cyc) == 4
    # the missing edge 2-3 joins opposite corners of the outer cycle
    assert abs(cyc.index(2) - cyc.index(3)) == 2


def test_outer_cycle_of_k23_is_missing():
    g = LabeledGraph.from_edges(range(5), [(a, b) for a in (0, 1) for b in (2, 3, 4)])
    assert outer_cycle(frozenset(g.vertices), frozenset(g.edges)) is None
    assert not is_outerplanar(g)


def test_block_size_limit():
    n = 17
    cycle = LabeledGraph.from_edges(range(n), [(i, (i + 1) % n) for i in range(n)])
    with pytest.raises(BlockTooLarge):
        is_outerplanar(cycle)
    assert is_outerplanar(cycle, block_size_limit=20)


def test_dense_block_is_rejected_fast():
    assert not is_outerplanar(k(12))


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**32), st.integers(0, 12))
def test_outerplanarity_matches_apex_planarity(n, seed, extra):
    g = gen_random_connected(n, seed, extra)
    res = is_outerplanar(g)
    assert bool(res) == apex_planar(g)
    if res:
        bc = decompose_bc(g)
        for cyc, edges in zip(res.cycles, bc.blocks):
            ring = {tuple(sorted((cyc[i], cyc[(i + 1) % len(cyc)]))) for i in range(len(cyc))}
            assert ring <= edges
