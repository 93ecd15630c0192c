import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from egocircles.hashtags import (
    activation_percentage,
    detect_activation,
    ego_hashtag_stats,
    growth_series,
    layer_hashtag_report,
    tie_hashtag_stats,
)
from egocircles.ingestion import build_timeline
from egocircles.model import FULL_SPAN, ChannelSelector, LayeredEgoNetwork, TieSeries, month_start

from conftest import ev

DAY = 86400
T0 = 1420070400  # 2015-01-01


def tie(tag_lists, alter="a", start=T0):
    return TieSeries("e", alter, tuple(ev(alter=alter, ts=start + i * DAY, tags=t) for i, t in enumerate(tag_lists)))


def test_first_tweet_hashtag_activates():
    assert detect_activation(tie([["jobs"]])) == (True, "jobs")


def test_hashtags_later_do_not_activate():
    assert detect_activation(tie([[], ["a"], ["a", "b"]])) == (False, None)


def test_activation_tie_break_by_use():
    assert detect_activation(tie([["a", "b"], ["b"], ["b"], ["b"]])) == (True, "b")
    assert detect_activation(tie([["a", "b"], ["b"], ["a"]])) == (True, "a")


def test_intensity_counts():
    main = tie([["jobs"], ["jobs"], ["jobs", "x"]], alter="a")
    others = [tie([["jobs"]], alter="b"), tie([[], ["jobs"]], alter="c")]
    s = tie_hashtag_stats(main, [main, *others])
    assert (s.n_r_hact, s.n_e_hact) == (3, 5)
    assert s.h_max == "jobs" and s.n_r_hmax == s.n_r_hact
    assert (s.d_rel, s.u_rel) == (4, 2)


def test_no_hashtags():
    t = tie([[], []])
    s = tie_hashtag_stats(t, [t])
    assert not s.activated and s.h_act is None and s.h_max is None
    assert (s.n_r_hact, s.n_e_hact, s.n_r_hmax, s.n_e_hmax, s.d_rel, s.u_rel) == (0,) * 6


def test_repeated_tag_in_one_tweet():
    t = tie([["x", "x"], ["x"]])
    s = tie_hashtag_stats(t, [t])
    assert (s.n_r_hact, s.d_rel, s.u_rel) == (2, 3, 1)


tag_lists = st.lists(st.lists(st.sampled_from(["aa", "bb", "cc", "dd"]), max_size=3), min_size=1, max_size=8)


@settings(max_examples=150)
@given(st.lists(tag_lists, min_size=1, max_size=4))
def test_index_invariants(ties_tags):
    ties = [tie(t, alter=f"x{i}") for i, t in enumerate(ties_tags)]
    for t in ties:
        s = tie_hashtag_stats(t, ties)
        assert s.activated == (s.h_act is not None)
        assert s.n_r_hact <= s.n_e_hact and s.n_r_hmax <= s.n_e_hmax and s.u_rel <= s.d_rel
        for h in {h for e in t.events for h in e.hashtags}:
            assert s.n_r_hmax >= sum(h in e.hashtags for e in t.events)


@settings(max_examples=100)
@given(st.lists(tag_lists, min_size=1, max_size=4), st.permutations(["aa", "bb", "cc", "dd"]))
def test_renaming_invariance(ties_tags, perm):
    rename = dict(zip(["aa", "bb", "cc", "dd"], [p.upper().lower() + "z" for p in perm]))
    ties = [tie(t, alter=f"x{i}") for i, t in enumerate(ties_tags)]
    renamed = [tie([[rename[h] for h in ts] for ts in t], alter=f"x{i}") for i, t in enumerate(ties_tags)]
    for a, b in zip(ties, renamed):
        sa, sb = tie_hashtag_stats(a, ties), tie_hashtag_stats(b, renamed)
        assert (sa.activated, sa.n_r_hact, sa.n_e_hact, sa.d_rel, sa.u_rel) == \
               (sb.activated, sb.n_r_hact, sb.n_e_hact, sb.d_rel, sb.u_rel)
        assert sa.n_r_hmax == sb.n_r_hmax and sa.n_e_hmax == sb.n_e_hmax
        if sa.h_act:
            assert rename[sa.h_act] == sb.h_act


def _net(rings):
    return LayeredEgoNetwork("e", ChannelSelector.ALL_DIRECT, FULL_SPAN,
                             tuple(tuple((a, f) for a, f in r) for r in rings))


def test_layer_report_partition():
    ties = {"a": tie([["x"]], "a"), "b": tie([[], ["y"]], "b"), "c": tie([["z"], []], "c")}
    stats = ego_hashtag_stats(ties)
    rows = layer_hashtag_report([_net([[("a", 10.0)], [("b", 5.0), ("c", 4.0)]])], stats, "S")
    by = {(r.ring, r.group): r for r in rows}
    assert by["R1", "activated"].pct == 100.0 and by["R1", "not_activated"].mean_freq is None
    assert by["R2", "activated"].n_ties + by["R2", "not_activated"].n_ties == 2
    assert by["ALL", "activated"].pct == pytest.approx(200 / 3)
    assert by["R2", "activated"].mean_d_rel == 1 and by["R2", "not_activated"].mean_u_rel == 1
    assert by["R3", "activated"].pct is None
    assert all(r.sample == "S" for r in rows)


def test_layer_report_no_hashtags():
    ties = {"a": tie([[]], "a"), "b": tie([[]], "b")}
    rows = layer_hashtag_report([_net([[("a", 3.0)], [("b", 1.0)]])], ego_hashtag_stats(ties))
    for r in rows:
        if r.group == "activated" and r.pct is not None:
            assert r.pct == 0 and r.mean_freq is None
    assert activation_percentage(ego_hashtag_stats(ties)) == 0


def test_layer_report_all_activated():
    ties = {a: tie([["t"]], a) for a in "abc"}
    rows = layer_hashtag_report([_net([[("a", 3.0)], [("b", 2.0)], [("c", 1.0)]])], ego_hashtag_stats(ties))
    assert all(r.pct == 100 for r in rows if r.group == "activated" and r.n_ties)


def test_growth_all_in_month_zero():
    evs = [ev(alter=a, ts=T0 + i * DAY) for i, a in enumerate("abcd")] + [ev(alter="a", ts=T0 + 100 * DAY)]
    g = growth_series(build_timeline(evs))
    assert g.new_alters[0] == 4 and sum(g.new_alters[1:]) == 0 and len(g.new_alters) == 4


def test_growth_one_new_alter_per_month():
    evs = [ev(alter=f"a{m}", ts=month_start(2015 * 12 + m) + DAY) for m in range(12)]
    g = growth_series(build_timeline(evs))
    assert g.new_alters == (1,) * 12 and g.mean_new_alters == 1.0


def test_growth_counts_new_hashtags():
    evs = [ev(alter="a", ts=T0, tags=["x", "y"]), ev(alter="a", ts=T0 + 40 * DAY, tags=["x", "z"]),
           ev(kind="plain", ts=T0 + 41 * DAY, tags=["w"])]
    g = growth_series(build_timeline(evs))
    assert g.new_hashtags == (2, 1)


def test_growth_poisson_arrivals():
    rng = np.random.default_rng(3)
    evs, k = [], 0
    for m in range(36):
        for _ in range(rng.poisson(10)):
            evs.append(ev(alter=f"n{k}", ts=month_start(2015 * 12 + m) + int(rng.integers(1, 25 * DAY))))
            k += 1
    g = growth_series(build_timeline(evs))
    assert 9 <= g.mean_new_alters <= 11
