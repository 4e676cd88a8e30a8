"""Distance ``d(G, H) = 1 - w(MCS) / max(w(G), w(H))`` and a metric-axiom auditor."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .errors import CorpusTooLarge
from .graph import DEFAULT_WEIGHTS, LabeledGraph, WeightScheme, graph_weight
from .mcs import McsResult, mcs_bbp, mcs_tree
from .oracle import mcs_oracle
from .validation import check_graph, check_graphs

MODES = ("bbp", "plain", "oracle-bbp", "oracle-plain")


def compute_mcs(g: LabeledGraph, h: LabeledGraph, weights: WeightScheme = DEFAULT_WEIGHTS, mode: str = "bbp", solver="per-instance") -> McsResult:
    """Dispatch to the engine that implements ``mode``.

    ``plain`` uses the tree dynamic programme when both graphs are trees (where
    every common subtree is trivially BBP) and the exhaustive search otherwise.
    """
    if mode == "bbp":
        return mcs_bbp(g, h, weights, solver)
    if mode == "plain":
        if g.is_tree() and h.is_tree():
            return mcs_tree(g, h, weights, solver)
        return mcs_oracle(g, h, weights, "plain")
    if mode == "oracle-bbp":
        return mcs_oracle(g, h, weights, "bbp")
    if mode == "oracle-plain":
        return mcs_oracle(g, h, weights, "plain")
    raise ValueError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")


@dataclass(frozen=True)
class DistanceReport:
    pair: tuple[str, str]
    mcs_weight: Fraction
    denominators: tuple[Fraction, Fraction]
    distance: Fraction
    mode: str


def distance(g: LabeledGraph, h: LabeledGraph, weights: WeightScheme = DEFAULT_WEIGHTS, mode: str = "bbp") -> DistanceReport:
    check_graph(g)
    check_graph(h)
    res = compute_mcs(g, h, weights, mode)
    wg, wh = graph_weight(g, weights), graph_weight(h, weights)
    top = max(wg, wh)
    # two weightless graphs are indistinguishable
    d = Fraction(0) if top == 0 else 1 - res.weight / top
    return DistanceReport((g.name, h.name), res.weight, (wg, wh), d, mode)


@dataclass(frozen=True)
class TriangleViolation:
    a: str
    b: str
    c: str
    d_ab: Fraction
    d_bc: Fraction
    d_ac: Fraction

    @property
    def slack(self) -> Fraction:
        return self.d_ac - self.d_ab - self.d_bc


@dataclass
class MetricAudit:
    corpus: list[LabeledGraph]
    mode: str
    matrix: list[list[Fraction]] = field(repr=False)
    identity_failures: list[str] = field(default_factory=list)
    symmetry_failures: list[tuple[str, str]] = field(default_factory=list)
    triangle_violations: list[TriangleViolation] = field(default_factory=list)

    @property
    def is_metric(self) -> bool:
        return not (self.identity_failures or self.symmetry_failures or self.triangle_violations)


def _names(corpus: Sequence[LabeledGraph]) -> list[str]:
    names = [g.name or f"g{i}" for i, g in enumerate(corpus)]
    if len(set(names)) != len(names):
        names = [f"{n}#{i}" for i, n in enumerate(names)]
    return names


def audit_metric(
    corpus: Sequence[LabeledGraph],
    weights: WeightScheme = DEFAULT_WEIGHTS,
    mode: str = "bbp",
    max_triples: int = 10**6,
) -> MetricAudit:
    """Check identity, symmetry and every triangle inequality with exact arithmetic.

    Violations are reported once per unordered endpoint pair and middle graph.
    """
    corpus = check_graphs(corpus)
    n = len(corpus)
    if n**3 > max_triples:
        raise CorpusTooLarge(f"{n} graphs give {n**3} triples (budget {max_triples})")
    names = _names(corpus)
    d = [[distance(a, b, weights, mode).distance for b in corpus] for a in corpus]
    audit = MetricAudit(list(corpus), mode, d)
    for i in range(n):
        if d[i][i] != 0:
            audit.identity_failures.append(names[i])
        for j in range(i + 1, n):
            if d[i][j] != d[j][i]:
                audit.symmetry_failures.append((names[i], names[j]))
    for i, k in itertools.combinations(range(n), 2):
        for j in range(n):
            if j in (i, k):
                continue
            if d[i][k] > d[i][j] + d[j][k]:
                audit.triangle_violations.append(
                    TriangleViolation(names[i], names[j], names[k], d[i][j], d[j][k], d[i][k])
                )
    return audit


class McsDistance(TransformerMixin, BaseEstimator):
    """Represent graphs by their MCS distances to a reference corpus.

    ``fit`` stores the reference graphs; ``transform`` returns an
    ``(n_samples, n_references)`` float array, so the output can feed estimators
    that accept ``metric="precomputed"``. :meth:`transform_exact` returns the
    same matrix as fractions.
    """

    def __init__(self, mode: str = "bbp", weights: WeightScheme | None = None):
        self.mode = mode
        self.weights = weights

    def fit(self, X, y=None):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        self.references_ = check_graphs(X)
        self.n_references_ = len(self.references_)
        return self

    def transform_exact(self, X) -> list[list[Fraction]]:
        check_is_fitted(self, "references_")
        w = self.weights or DEFAULT_WEIGHTS
        return [[distance(g, r, w, self.mode).distance for r in self.references_] for g in check_graphs(X)]

    def transform(self, X) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.transform_exact(X)], dtype=float)
