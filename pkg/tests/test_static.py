import math

import pytest
from hypothesis import given, strategies as st

from egocircles.errors import InsufficientSample, ZeroSpan
from egocircles.ingestion import build_timeline
from egocircles.static import (
    UsageStats,
    fs_ratio,
    population_summary,
    scaling_ratios,
    summarize,
    summarize_circles,
    usage_stats,
    z_value,
)

from conftest import ev
from test_model import net_from_sizes


def test_fs_ratio_cameron():
    assert fs_ratio((1.98, 87.43, 10.59)) == pytest.approx(8.26, abs=0.01)


def test_fs_ratio_duda():
    assert fs_ratio((46.59, 4.26, 49.15)) == pytest.approx(49.15 / 46.59)
    assert round(fs_ratio((46.59, 4.26, 49.15)), 2) == 1.05


def test_fs_ratio_equal_top():
    assert fs_ratio((40.0, 40.0, 20.0)) == 1.0


def test_fs_ratio_degenerate():
    assert math.isinf(fs_ratio((100.0, 0.0, 0.0)))
    assert math.isnan(fs_ratio((0.0, 0.0, 0.0)))


@given(st.lists(st.integers(1, 500), min_size=3, max_size=3), st.integers(1, 50))
def test_fs_ratio_scale_invariant(counts, c):
    assert fs_ratio(counts) == pytest.approx(fs_ratio([x * c for x in counts]))


def test_usage_stats_counts_tweets_once():
    t0 = 1420070400
    evs = [
        ev(alter="a", kind="mention", tid="m1", ts=t0),
        ev(alter="b", kind="mention", tid="m1", ts=t0),
        ev(alter="a", kind="reply", tid="r1", ts=t0 + 86400),
        ev(kind="plain", tid="p1", ts=t0 + 2 * 86400),
        ev(kind="plain", tid="p2", ts=t0 + 4 * 86400),
    ]
    u = usage_stats(build_timeline(evs))
    assert u.pct_social == pytest.approx(50.0)
    assert (u.pct_reply, u.pct_mention, u.pct_retweet) == (50.0, 50.0, 0.0)
    assert u.fs_ratio == 1.0
    assert u.tweet_freq == pytest.approx(4 / 4)


def test_usage_zero_span():
    with pytest.raises(ZeroSpan):
        usage_stats(build_timeline([ev()]))


@pytest.mark.parametrize("sizes, ratios", [
    ([1, 6, 15, 48, 107], [6.0, 2.5, 3.2, 107 / 48]),
    ([2, 4, 14, 46, 111], [2.0, 3.5, 46 / 14, 111 / 46]),
    ([1, 1, 1, 1, 1], [1.0, 1.0, 1.0, 1.0]),
])
def test_scaling_ratios(sizes, ratios):
    assert scaling_ratios(sizes) == pytest.approx(ratios)


def test_summary_closed_form():
    s = summarize("C1", [1, 2, 3])
    assert s.mean == 2 and s.sd == 1
    assert s.half_width == pytest.approx(1.959964 / math.sqrt(3), rel=1e-6)
    assert s.c_index == pytest.approx(2 * 1.959964 / math.sqrt(3) / 2, rel=1e-6)


def test_z_value():
    assert z_value(0.95) == pytest.approx(1.959964, abs=1e-6)


def test_identical_networks_have_zero_c():
    summ = population_summary([net_from_sizes([1, 4, 10, 35, 100], ego=f"e{i}") for i in range(4)])
    assert all(s.c_index == 0 for s in summ.rows())
    assert [s.mean for s in summ.sizes] == [1, 5, 15, 50, 150]


def test_population_skips_partial_networks():
    nets = [net_from_sizes([1, 4, 10, 35, 100]), net_from_sizes([2, 4, 10, 35, 100]), net_from_sizes([3, 3])]
    assert population_summary(nets).n == 2


def test_population_needs_two():
    with pytest.raises(InsufficientSample):
        population_summary([net_from_sizes([1, 2, 3, 4, 5])])


@given(st.lists(st.floats(0.5, 500), min_size=2, max_size=30), st.floats(0.1, 100))
def test_c_index_scale_invariant(values, c):
    a, b = summarize("x", values), summarize("x", [v * c for v in values])
    assert a.c_index == pytest.approx(b.c_index, rel=1e-9, abs=1e-12)


def test_summarize_circles_matches_per_row_ratios():
    s = summarize_circles([[1, 6, 15, 48, 107], [2, 4, 14, 46, 111]])
    assert s.ratios[0].mean == pytest.approx(4.0)


def test_usage_from_percentages():
    u = UsageStats.from_percentages("x", 50, 10, 60, 30, 2.0)
    assert u.fs_ratio == 2.0
