"""Maximum-weight bipartite matching with exact rational weights.

Three solvers share one instance type:

* :func:`solve_hungarian` -- the Hungarian method (shortest augmenting paths with
  dual potentials), O(k^3) for an instance with k vertices;
* :func:`solve_family` -- one full solve of a base instance, then an O(k^2)
  repair for each variant that lacks a single right vertex;
* :func:`solve_bruteforce` -- exhaustive reference for tiny instances.

Weights are :class:`~fractions.Fraction` values. The Hungarian solvers rescale them
to integers by the least common denominator, so all arithmetic stays exact.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Hashable, Iterable, Mapping

import numpy as np

from .errors import IndexOutOfRange, TooLarge

BRUTEFORCE_LIMIT = 16


@dataclass(frozen=True)
class MatchingInstance:
    left_size: int
    right_size: int
    weights: Mapping[tuple[int, int], Fraction]
    id: Hashable = None

    def __post_init__(self):
        clean = {}
        for (i, j), w in self.weights.items():
            if not (0 <= i < self.left_size and 0 <= j < self.right_size):
                raise IndexOutOfRange(f"pair ({i}, {j}) outside {self.left_size}x{self.right_size}")
            w = Fraction(w)
            if w > 0:
                clean[(i, j)] = w
        object.__setattr__(self, "weights", clean)

    @property
    def num_vertices(self) -> int:
        return self.left_size + self.right_size

    @property
    def num_pairs(self) -> int:
        return len(self.weights)

    def without_right(self, d: int) -> "MatchingInstance":
        """Same instance with right vertex ``d`` removed (later indices shift down)."""
        if not 0 <= d < self.right_size:
            raise IndexOutOfRange(f"right index {d} outside 0..{self.right_size - 1}")
        w = {(i, j - (j > d)): x for (i, j), x in self.weights.items() if j != d}
        return MatchingInstance(self.left_size, self.right_size - 1, w, (self.id, "-", d))


@dataclass(frozen=True)
class MatchingSolution:
    pairs: frozenset
    weight: Fraction


@dataclass(frozen=True)
class SolveRecord:
    instance_id: Hashable
    k: int
    pairs: int
    kind: str  # "hungarian", "family-base" or "family-repair"

    @property
    def work(self) -> int:
        return self.k**2 if self.kind == "family-repair" else self.k**3


@dataclass
class SolveLog:
    """Collects one record per matching solve. Appends are thread-safe."""

    records: list[SolveRecord] = field(default_factory=list)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def add(self, record: SolveRecord) -> None:
        with self._lock:
            self.records.append(record)

    def extend(self, other: "SolveLog") -> None:
        with self._lock:
            self.records.extend(other.records)

    def select(self, *, k: int | None = None, pairs: int | None = None, kind: str | None = None) -> list[SolveRecord]:
        return [
            r
            for r in self.records
            if (k is None or r.k == k) and (pairs is None or r.pairs == pairs) and (kind is None or r.kind == kind)
        ]

    @property
    def calls(self) -> int:
        return len(self.records)

    @property
    def sum_k(self) -> int:
        return sum(r.k for r in self.records)

    @property
    def sum_k3(self) -> int:
        return sum(r.k**3 for r in self.records if r.kind != "family-repair")

    @property
    def sum_k2(self) -> int:
        return sum(r.k**2 for r in self.records if r.kind == "family-repair")

    @property
    def work_units(self) -> int:
        return self.sum_k3 + self.sum_k2

    @property
    def max_k(self) -> int:
        return max((r.k for r in self.records), default=0)


class _Assignment:
    """Square min-cost assignment solved row by row (1-based, row/col 0 is a sentinel)."""

    def __init__(self, inst: MatchingInstance):
        n = max(inst.left_size, inst.right_size)
        self.n = n
        scale = 1
        for w in inst.weights.values():
            scale = scale * w.denominator // math.gcd(scale, w.denominator)
        big = max((w.numerator * (scale // w.denominator) for w in inst.weights.values()), default=0)
        # potentials stay within a few multiples of n * max|cost|
        self.inf = (big + 1) * (n + 2) * 8
        dtype = np.int64 if self.inf < 2**62 else object
        a = np.zeros((n + 1, n + 1), dtype=dtype)
        for (i, j), w in inst.weights.items():
            a[i + 1, j + 1] = -(w.numerator * (scale // w.denominator))
        self.a = a
        self.u = np.zeros(n + 1, dtype=dtype)
        self.v = np.zeros(n + 1, dtype=dtype)
        self.p = np.zeros(n + 1, dtype=np.int64)

    def add_row(self, i: int) -> None:
        n, a, u, v, p = self.n, self.a, self.u, self.v, self.p
        minv = np.full(n + 1, self.inf, dtype=a.dtype)
        way = np.zeros(n + 1, dtype=np.int64)
        used = np.zeros(n + 1, dtype=bool)
        p[0] = i
        j0 = 0
        while True:
            used[j0] = True
            i0 = p[j0]
            cur = a[i0] - u[i0] - v
            better = ~used & (cur < minv)
            minv[better] = cur[better]
            way[better] = j0
            cand = np.where(used, self.inf, minv)
            cand[0] = self.inf
            j1 = int(np.argmin(cand))
            delta = cand[j1]
            u[p[used]] += delta
            v[used] -= delta
            minv[~used] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1

    def solve(self) -> None:
        # column reduction, then greedily take tight pairs; both keep the duals feasible
        a, p = self.a, self.p
        self.v[1:] = a[1:, 1:].min(axis=0)
        taken_rows = np.zeros(self.n + 1, dtype=bool)
        tight = a[1:, 1:] == self.v[1:]
        for j in range(1, self.n + 1):
            rows = np.flatnonzero(tight[:, j - 1] & ~taken_rows[1:]) + 1
            if rows.size:
                p[j] = rows[0]
                taken_rows[rows[0]] = True
        for i in range(1, self.n + 1):
            if not taken_rows[i]:
                self.add_row(i)

    def pairs(self, inst: MatchingInstance, skip_col: int | None = None) -> MatchingSolution:
        chosen = []
        total = Fraction(0)
        for j in range(1, self.n + 1):
            i = int(self.p[j])
            pair = (i - 1, j - 1)
            if i and j - 1 != skip_col and pair in inst.weights:
                chosen.append(pair)
                total += inst.weights[pair]
        return MatchingSolution(frozenset(chosen), total)


def solve_hungarian(inst: MatchingInstance, log: SolveLog | None = None) -> MatchingSolution:
    if log is not None:
        log.add(SolveRecord(inst.id, inst.num_vertices, inst.num_pairs, "hungarian"))
    if not inst.weights:
        return MatchingSolution(frozenset(), Fraction(0))
    asg = _Assignment(inst)
    asg.solve()
    return asg.pairs(inst)


def family_solutions(
    base: MatchingInstance,
    deletions: Iterable[int],
    log: SolveLog | None = None,
) -> list[tuple[int, MatchingSolution]]:
    """Optimal matchings of ``base`` minus each listed right vertex.

    Pairs in the returned solutions use the base instance's indices.
    """
    return solve_family_with_base(base, deletions, log)[1]


def solve_family_with_base(
    base: MatchingInstance,
    deletions: Iterable[int],
    log: SolveLog | None = None,
) -> tuple[MatchingSolution, list[tuple[int, MatchingSolution]]]:
    deletions = list(deletions)
    for d in deletions:
        if not 0 <= d < base.right_size:
            raise IndexOutOfRange(f"right index {d} outside 0..{base.right_size - 1}")
    if log is not None:
        log.add(SolveRecord(base.id, base.num_vertices, base.num_pairs, "family-base"))
    out = []
    if not base.weights:
        for d in deletions:
            if log is not None:
                log.add(SolveRecord((base.id, "-", d), base.num_vertices - 1, 0, "family-repair"))
            out.append((d, MatchingSolution(frozenset(), Fraction(0))))
        return MatchingSolution(frozenset(), Fraction(0)), out
    asg = _Assignment(base)
    asg.solve()
    base_solution = asg.pairs(base)
    u0, v0, p0 = asg.u.copy(), asg.v.copy(), asg.p.copy()
    for d in deletions:
        if log is not None:
            member_pairs = sum(1 for (_, j) in base.weights if j != d)
            log.add(SolveRecord((base.id, "-", d), base.num_vertices - 1, member_pairs, "family-repair"))
        col = d + 1
        asg.u, asg.v, asg.p = u0.copy(), v0.copy(), p0.copy()
        saved = asg.a[:, col].copy()
        asg.a[:, col] = 0
        # column d now costs 0 everywhere; lower its potential to stay dual feasible
        asg.v[col] = -asg.u[1:].max()
        row = int(asg.p[col])
        asg.p[col] = 0
        asg.add_row(row)
        out.append((d, asg.pairs(base, skip_col=d)))
        asg.a[:, col] = saved
    return base_solution, out


def solve_family(
    base: MatchingInstance,
    deletions: Iterable[int],
    log: SolveLog | None = None,
) -> list[tuple[int, Fraction]]:
    return [(d, sol.weight) for d, sol in family_solutions(base, deletions, log)]


def solve_bruteforce(inst: MatchingInstance) -> MatchingSolution:
    if inst.num_vertices > BRUTEFORCE_LIMIT:
        raise TooLarge(f"{inst.num_vertices} vertices exceed the brute-force limit {BRUTEFORCE_LIMIT}")
    row_pairs = [[(j, w) for (i, j), w in sorted(inst.weights.items()) if i == r] for r in range(inst.left_size)]

    @lru_cache(maxsize=None)
    def best(r: int, used: int) -> tuple[Fraction, tuple]:
        if r == inst.left_size:
            return Fraction(0), ()
        top = best(r + 1, used)
        for j, w in row_pairs[r]:
            if not used >> j & 1:
                sub, chosen = best(r + 1, used | 1 << j)
                if sub + w > top[0]:
                    top = (sub + w, ((r, j),) + chosen)
        return top

    weight, chosen = best(0, 0)
    return MatchingSolution(frozenset(chosen), weight)
