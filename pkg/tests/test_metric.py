from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.neighbors import KNeighborsClassifier
from sklearn.pipeline import make_pipeline

from bbpmcs import McsDistance, audit_metric, distance, gen_random_connected, gen_star
from bbpmcs.errors import CorpusTooLarge


@pytest.fixture
def corpus(fx):
    return [fx("triangle"), fx("k4_minus_edge"), fx("c4")]


@pytest.mark.parametrize(
    "a, b, d",
    [("triangle", "k4_minus_edge", Fraction(1, 3)), ("k4_minus_edge", "c4", Fraction(1, 9)), ("triangle", "c4", Fraction(7, 8))],
)
def test_bbp_distances(fx, a, b, d):
    r = distance(fx(a), fx(b), mode="bbp")
    assert r.distance == d
    assert r.pair == (a, b)
    assert r.distance == 1 - r.mcs_weight / max(r.denominators)


def test_self_distance(fx):
    assert distance(fx("pendant_block_g"), fx("pendant_block_g")).distance == 0


def test_bbp_audit_finds_one_violation(corpus):
    audit = audit_metric(corpus, mode="bbp")
    assert not audit.is_metric
    assert not audit.identity_failures and not audit.symmetry_failures
    (v,) = audit.triangle_violations
    assert (v.a, v.b, v.c) == ("triangle", "k4_minus_edge", "c4")
    assert v.slack == Fraction(31, 72)
    assert v.d_ac > v.d_ab + v.d_bc


@pytest.mark.parametrize("mode", ["plain", "oracle-plain"])
def test_plain_audit_is_clean(corpus, mode):
    audit = audit_metric(corpus, mode=mode)
    assert audit.is_metric
    assert audit.matrix[0][2] == Fraction(3, 8)


def test_single_graph_corpus(fx):
    assert audit_metric([fx("triangle")]).is_metric


def test_triple_budget(corpus):
    with pytest.raises(CorpusTooLarge):
        audit_metric(corpus, max_triples=26)


def test_unknown_mode(fx):
    with pytest.raises(ValueError):
        distance(fx("c4"), fx("c4"), mode="fuzzy")


def test_duplicate_names_are_disambiguated():
    s = gen_star(3)
    audit = audit_metric([s, s, s], mode="plain")
    assert audit.is_metric and audit.matrix == [[0] * 3] * 3


def test_transformer(corpus):
    est = McsDistance(mode="bbp").fit(corpus)
    x = est.transform(corpus)
    assert x.shape == (3, 3) and x.dtype == float
    assert np.allclose(x, [[0, 1 / 3, 7 / 8], [1 / 3, 0, 1 / 9], [7 / 8, 1 / 9, 0]])
    assert est.transform_exact(corpus[:1]) == [[0, Fraction(1, 3), Fraction(7, 8)]]
    assert clone(est).get_params() == {"mode": "bbp", "weights": None}


def test_transformer_requires_fit(corpus):
    with pytest.raises(NotFittedError):
        McsDistance().transform(corpus)
    with pytest.raises(ValueError):
        McsDistance(mode="nope").fit(corpus)
    with pytest.raises(TypeError):
        McsDistance().fit(["not a graph"])


def test_transformer_in_pipeline(corpus):
    pipe = make_pipeline(McsDistance(mode="bbp"), KNeighborsClassifier(n_neighbors=1))
    pipe.fit(corpus, [0, 1, 1])
    assert list(pipe.predict(corpus)) == [0, 1, 1]


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 7), st.integers(0, 2**32), st.integers(0, 3)), min_size=3, max_size=4))
def test_plain_distance_is_a_metric(specs):
    graphs = [gen_random_connected(n, s, e, vertex_labels=("C", "N")) for n, s, e in specs]
    audit = audit_metric(graphs, mode="plain")
    assert audit.is_metric
    for row in audit.matrix:
        assert all(0 <= d <= 1 for d in row)
