import random

import pytest

from bbpmcs import census, census_star, evaluate_bounds, fit_growth, gen_path, gen_random_tree, gen_star
from bbpmcs.bench import census_path, merge_logs


def test_generators():
    s = gen_star(5)
    assert (s.order, s.size) == (6, 5) and s.degree(0) == 5
    assert gen_path(1).size == 1
    t = gen_random_tree(9, 123)
    assert t.order == 9 and t.size == 8 and t.is_connected()
    assert gen_random_tree(9, 123).structurally_equal(t)


@pytest.mark.parametrize("n", [3, 8])
def test_star_census(n):
    log = census_star(n)
    big = log.select(k=2 * n - 1, pairs=n * (n - 1))
    assert len(big) >= n
    assert log.weight == 2 * n + 1


def test_grouped_star_census():
    log = census_star(8, "grouped")
    assert len(log.select(kind="family-base")) == 1
    assert len(log.select(kind="family-repair")) <= 8
    assert log.weight == census_star(8).weight


def test_census_needs_three_leaves():
    with pytest.raises(ValueError):
        census_star(2)


def test_bounds_on_single_edges():
    e = gen_path(1)
    b = evaluate_bounds(e, e)
    assert (b.t_comp, b.t_comp_corrected) == (32, 64)


def test_bounds_on_star_pair():
    # center/center, center/leaf, leaf/center and leaf/leaf terms of both sums
    n = 8
    b = evaluate_bounds(gen_star(n), gen_star(n))
    assert b.t_comp == (2 * n) ** 3 + 2 * n * (n + 1) ** 3 + n * n * 8
    assert b.t_comp_corrected == (n + 1) * (2 * n) ** 3 + n * (n + 1) ** 4 + 2 * n * (n + 1) ** 3 + 2 * n * n * 8


def test_corrected_bound_dominates():
    rng = random.Random(5)
    for _ in range(100):
        g, h = gen_random_tree(rng.randint(1, 20), rng.random()), gen_random_tree(rng.randint(1, 20), rng.random())
        b = evaluate_bounds(g, h)
        assert b.t_comp_corrected >= b.t_comp


def test_growth_on_stars():
    per = fit_growth([8, 16, 32], "per-instance")
    grp = fit_growth([8, 16, 32], "grouped")
    assert all(12 <= r <= 20 for r in per.ratios)
    assert all(6 <= r <= 10 for r in grp.ratios)
    assert [log.weight for log in per.logs] == [log.weight for log in grp.logs]
    rows = per.rows()
    assert rows[0]["ratio_prev"] == "" and rows[1]["n"] == 16


def test_growth_on_paths():
    fit = fit_growth([8, 16, 32], "per-instance", family="path")
    assert fit.slope <= 3.5


def test_growth_input_checks():
    with pytest.raises(ValueError):
        fit_growth([8, 16])
    with pytest.raises(ValueError):
        fit_growth([8, 8, 16])
    with pytest.raises(ValueError):
        fit_growth([8, 16, 32], family="cycle")


def test_determinism_and_merging():
    a, b = census_star(6), census_star(6)
    assert a.records == b.records
    merged = merge_logs([a, census_path(6), b])
    assert set(merged) == {"star6:per-instance", "path6:per-instance"}
    assert merged["star6:per-instance"].calls == 2 * a.calls


def test_parallel_sizes_match_serial():
    serial = fit_growth([4, 8, 12], "grouped")
    parallel = fit_growth([4, 8, 12], "grouped", workers=3)
    assert serial.work == parallel.work


def test_random_family_is_seeded():
    a = fit_growth([4, 8, 12], family="random", seed=9)
    b = fit_growth([4, 8, 12], family="random", seed=9)
    assert a.work == b.work


def test_census_on_arbitrary_trees():
    g, h = gen_random_tree(7, 1), gen_random_tree(7, 2)
    assert census(g, h).weight == census(g, h, "grouped").weight
