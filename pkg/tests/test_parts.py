import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from bbpmcs import (
    LabeledGraph,
    RootedGraph,
    compound_pairs,
    deletion_family,
    gen_path,
    gen_random_tree,
    gen_star,
    parts,
    parts_star,
)
from bbpmcs.errors import NotATree


def closure(g: LabeledGraph, roots) -> set:
    """Independent fixed point of the three rules on networkx graphs."""
    full = nx.Graph(list(g.edges))
    full.add_nodes_from(g.vertices)
    found = set()
    todo = [(frozenset(g.vertices), r) for r in roots]
    while todo:
        vs, r = todo.pop()
        if (vs, r) in found:
            continue
        found.add((vs, r))
        sub = full.subgraph(vs)
        kids = list(sub.neighbors(r))
        if len(kids) == 1:
            todo.append((vs - {r}, kids[0]))
        elif len(kids) >= 2:
            for c in kids:
                cut = sub.copy()
                cut.remove_edges_from((r, x) for x in kids if x != c)
                todo.append((frozenset(nx.node_connected_component(cut, r)), r))
    return found


def keys(cat):
    return {(frozenset(p.origin), p.root) for p in cat}


# path a-b-c is gen_path(2) with a=0, b=1, c=2
def test_path_rooted_at_end():
    cat = parts(RootedGraph(gen_path(2), 0))
    assert keys(cat) == {(frozenset({0, 1, 2}), 0), (frozenset({1, 2}), 1), (frozenset({2}), 2)}


def test_path_rooted_at_center():
    cat = parts(RootedGraph(gen_path(2), 1))
    assert keys(cat) == {
        (frozenset({0, 1, 2}), 1),
        (frozenset({0, 1}), 1),
        (frozenset({1, 2}), 1),
        (frozenset({0}), 0),
        (frozenset({2}), 2),
    }
    assert [len(v) for v in cat.elementary_parts_of.values()] == [2]


def test_path_all_roots():
    # the three full rooted paths, the two halves at the center, two ends after
    # peeling, and the two leaves
    cat = parts_star(gen_path(2))
    assert len(cat) == 7
    assert keys(cat) == {
        (frozenset({0, 1, 2}), 0),
        (frozenset({0, 1, 2}), 1),
        (frozenset({0, 1, 2}), 2),
        (frozenset({0, 1}), 1),
        (frozenset({1, 2}), 1),
        (frozenset({0}), 0),
        (frozenset({2}), 2),
    }


def test_single_vertex():
    g = LabeledGraph.from_edges([0], [])
    assert len(parts_star(g)) == 1


@pytest.mark.parametrize("n", [3, 4, 8, 17, 64])
def test_star_counts(n):
    s = gen_star(n)
    cat = parts(RootedGraph(s, 0))
    assert len(cat) == 2 * n + 1
    assert len(parts_star(s)) == 4 * n + 1
    fam = deletion_family(s, 0)
    assert len(fam.members) == n
    assert all(m.root == 0 and len(m.origin) == n for m in fam.members)


def test_star_elementary_parts():
    n = 6
    s = gen_star(n)
    star_cat = parts_star(s)
    top = star_cat.find(range(n + 1), 0)
    assert len(star_cat.elementary_parts_of[top.part_id]) == n
    for m in deletion_family(s, 0).members:
        assert m.part_id >= 0
        assert len(star_cat.elementary_parts_of[m.part_id]) == n - 1


def test_small_stars_by_rule():
    # two leaves: deleting one leaf leaves a single edge, which is also an edge part
    assert len(parts_star(gen_star(2))) == 7
    assert len(parts_star(gen_star(1))) == 4


def test_compound_pairs_on_stars():
    n = 5
    s = gen_star(n)
    pairs = compound_pairs(RootedGraph(s, 0), s)
    assert len(pairs) == n + 1
    assert all(p.root == 0 and len(p.origin) == n + 1 for p, _ in pairs)
    family = {frozenset(m.origin) for m in deletion_family(s, 0).members}
    assert {frozenset(q.origin) for _, q in pairs} == family | {frozenset(range(n + 1))}


def test_compound_pairs_without_compound_roots():
    e = gen_path(1)
    assert compound_pairs(RootedGraph(e, 0), e) == []


def test_compound_pairs_on_paths():
    p = gen_path(2)
    pairs = compound_pairs(RootedGraph(p, 1), p)
    assert [(q.root, len(q.origin)) for _, q in pairs] == [(1, 3)]


def test_rejects_graphs_with_blocks(fx):
    with pytest.raises(NotATree):
        parts(RootedGraph(fx("triangle"), 0))
    with pytest.raises(NotATree):
        parts_star(fx("c4"))


def test_part_rendering():
    part = parts(RootedGraph(gen_path(2), 0)).parts[1]
    assert str(part) == "root=1 vertices={1, 2}"


@settings(max_examples=120, deadline=None)
@given(st.integers(1, 11), st.integers(0, 2**32), st.data())
def test_parts_match_independent_closure(n, seed, data):
    t = gen_random_tree(n, seed)
    root = data.draw(st.integers(0, n - 1))
    cat = parts(RootedGraph(t, root))
    assert keys(cat) == closure(t, [root])
    assert len(cat) <= 2 * n
    assert keys(parts_star(t)) == closure(t, range(n))
    for p in cat:
        g = p.graph
        assert g.graph.is_connected() and p.root in g.graph.vertices
        chain = p
        while chain.derived_from is not None:
            chain = cat.parts[chain.derived_from]
        assert chain.rule == "i"
        if p.is_compound_root:
            assert len(cat.elementary_parts_of[p.part_id]) >= 2
