"""Matching-call census, work-unit growth and the two running-time bounds.

Work is counted, not timed: a full solve on ``k`` vertices costs ``k**3`` units
and a family repair costs ``k**2``. Wall-clock figures are reported for
information only.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .generators import gen_path, gen_random_tree, gen_star
from .graph import DEFAULT_WEIGHTS, LabeledGraph, WeightScheme
from .matching import SolveLog
from .mcs import Solver, mcs_tree

CSV_COLUMNS = ("n", "calls", "max_k", "sum_k3", "sum_k2", "ratio_prev", "t_comp", "t_comp_corrected", "wall_ms")


@dataclass
class InstrumentationLog(SolveLog):
    run_id: str = ""
    solver: str = ""
    weight: Fraction = Fraction(0)
    wall_ms: float = 0.0


def merge_logs(logs: Sequence[InstrumentationLog]) -> dict[str, InstrumentationLog]:
    """Key independent runs by run id; a repeated id concatenates records."""
    out: dict[str, InstrumentationLog] = {}
    for log in logs:
        if log.run_id in out:
            out[log.run_id].extend(log)
        else:
            out[log.run_id] = InstrumentationLog(list(log.records), run_id=log.run_id, solver=log.solver,
                                                 weight=log.weight, wall_ms=log.wall_ms)
    return out


def census(
    g: LabeledGraph,
    h: LabeledGraph,
    solver: Solver | str = Solver.PER_INSTANCE,
    root: int | None = None,
    weights: WeightScheme = DEFAULT_WEIGHTS,
    run_id: str = "",
) -> InstrumentationLog:
    solver = Solver(solver)
    log = InstrumentationLog(run_id=run_id or f"{g.name}:{h.name}:{solver.value}", solver=solver.value)
    t0 = time.perf_counter()
    res = mcs_tree(g, h, weights, solver, root=root, log=log)
    log.wall_ms = (time.perf_counter() - t0) * 1000
    log.weight = res.weight
    return log


def census_star(n: int, solver: Solver | str = Solver.PER_INSTANCE) -> InstrumentationLog:
    """Instrumented run on two stars with ``n`` leaves each, ``G`` rooted at its center."""
    if n < 3:
        raise ValueError("census_star needs n >= 3")
    s = gen_star(n)
    return census(s, s, solver, root=0, run_id=f"star{n}:{Solver(solver).value}")


def census_path(n: int, solver: Solver | str = Solver.PER_INSTANCE) -> InstrumentationLog:
    # rooted at the middle so the root has two children; an end root gives no compound pairs
    g, h, root = _pair("path", n, 0)
    return census(g, h, solver, root=root, run_id=f"path{n}:{Solver(solver).value}")


@dataclass(frozen=True)
class BoundEvaluation:
    pair: tuple[str, str]
    t_comp: int
    t_comp_corrected: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.t_comp_corrected, self.t_comp) if self.t_comp else Fraction(1)


def evaluate_bounds(g: LabeledGraph, h: LabeledGraph) -> BoundEvaluation:
    """``sum_g sum_h (deg g + deg h)**3`` and the same sum weighted by ``deg h + 1``."""
    dg = [g.degree(v) for v in g.vertices]
    dh = [h.degree(v) for v in h.vertices]
    t = tc = 0
    for a in dg:
        for b in dh:
            cube = (a + b) ** 3
            t += cube
            tc += (b + 1) * cube
    return BoundEvaluation((g.name, h.name), t, tc)


@dataclass
class GrowthFit:
    sizes: list[int]
    solver: str
    family: str
    work: list[int]
    ratios: list[float]
    slope: float
    logs: list[InstrumentationLog] = field(repr=False)
    bounds: list[BoundEvaluation] = field(repr=False)

    @property
    def wall_ms(self) -> list[float]:
        return [log.wall_ms for log in self.logs]

    def rows(self) -> list[dict]:
        out = []
        for i, (n, log, b) in enumerate(zip(self.sizes, self.logs, self.bounds)):
            out.append({
                "n": n,
                "calls": log.calls,
                "max_k": log.max_k,
                "sum_k3": log.sum_k3,
                "sum_k2": log.sum_k2,
                "ratio_prev": "" if i == 0 else f"{self.ratios[i - 1]:.6f}",
                "t_comp": b.t_comp,
                "t_comp_corrected": b.t_comp_corrected,
                "wall_ms": f"{log.wall_ms:.3f}",
            })
        return out


def _pair(family: str, n: int, seed: int) -> tuple[LabeledGraph, LabeledGraph, int | None]:
    if family == "star":
        s = gen_star(n)
        return s, s, 0
    if family == "path":
        p = gen_path(n)
        return p, p, n // 2
    if family == "random":
        return gen_random_tree(n + 1, seed), gen_random_tree(n + 1, seed + 1), None
    raise ValueError(f"unknown family {family!r}; expected star, path or random")


def fit_growth(
    sizes: Sequence[int],
    solver: Solver | str = Solver.PER_INSTANCE,
    family: str = "star",
    workers: int = 1,
    seed: int = 0,
) -> GrowthFit:
    """Work units per size, consecutive ratios ``W(n_i+1)/W(n_i)`` and the log-log slope."""
    sizes = [int(n) for n in sizes]
    if len(sizes) < 3 or any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("sizes must be strictly increasing with at least 3 entries")
    solver = Solver(solver)
    pairs = [_pair(family, n, seed) for n in sizes]

    def run(i: int) -> InstrumentationLog:
        g, h, root = pairs[i]
        return census(g, h, solver, root=root, run_id=f"{family}{sizes[i]}:{solver.value}")

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            logs = list(pool.map(run, range(len(sizes))))
    else:
        logs = [run(i) for i in range(len(sizes))]
    work = [log.work_units for log in logs]
    ratios = [b / a if a else math.inf for a, b in zip(work, work[1:])]
    if all(w > 0 for w in work):
        slope = float(np.polyfit(np.log(sizes), np.log(work), 1)[0])
    else:
        slope = math.nan
    bounds = [evaluate_bounds(g, h) for g, h, _ in pairs]
    return GrowthFit(sizes, solver.value, family, work, ratios, slope, logs, bounds)
