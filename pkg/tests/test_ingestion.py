import json
from datetime import datetime, timedelta, timezone
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from egocircles.errors import EmptyInput, FatalFormat
from egocircles.ingestion import (
    FilterPolicy,
    RejectReason,
    build_timeline,
    build_timelines,
    filter_accounts,
    parse_events,
)
from egocircles.model import Channel, month_label

from conftest import ev


def line(**kw):
    rec = {"tweet_id": "1", "ego": "e", "kind": "reply", "ts": "2015-01-15T10:00:00Z", "alters": ["a"],
           "hashtags": []}
    rec.update(kw)
    for k in [k for k, v in rec.items() if v is None]:
        del rec[k]
    return (json.dumps(rec) + "\n").encode()


def test_parse_one_reply():
    events, diags = parse_events(line())
    assert len(events) == 1 and diags == []
    e = events[0]
    assert (e.ego_id, e.alter_id, e.channel) == ("e", "a", Channel.REPLY)


def test_mention_expands_per_alter():
    events, diags = parse_events(line(kind="mention", alters=["a", "b"], hashtags=["#Jobs", "x"]))
    assert [e.alter_id for e in events] == ["a", "b"]
    assert {e.tweet_id for e in events} == {"1"}
    assert all(e.hashtags == ("jobs", "x") for e in events)


def test_missing_timestamp_is_diagnosed():
    events, diags = parse_events(line(ts=None))
    assert events == []
    assert len(diags) == 1 and diags[0].line == 1 and "'ts'" in diags[0].reason


@pytest.mark.parametrize("bad, needle", [
    (dict(kind="plain"), "alters"),
    (dict(alters=[]), "alters"),
    (dict(alters=["e"]), "ego"),
    (dict(kind="like"), "kind"),
    (dict(ts="yesterday"), "ts"),
    (dict(ts="2015-01-15T10:00:00"), "ts"),
    (dict(hashtags=["two words"]), "hashtags"),
])
def test_malformed_records(bad, needle):
    events, diags = parse_events(line(**bad))
    assert events == [] and len(diags) == 1 and needle in diags[0].reason


def test_bad_json_line_keeps_going():
    data = line(tweet_id="1") + b"{not json\n" + b"\n" + line(tweet_id="3")
    events, diags = parse_events(data)
    assert [e.tweet_id for e in events] == ["1", "3"]
    assert [d.line for d in diags] == [2]


def test_non_utf8_is_fatal():
    with pytest.raises(FatalFormat):
        parse_events(line() + b"\xff\xfe\n")


def test_events_sorted_by_ego_time_id():
    data = (line(ego="z", tweet_id="1") + line(ego="b", tweet_id="2", ts="2015-03-01T00:00:00Z")
            + line(ego="b", tweet_id="1", ts="2015-02-01T00:00:00Z"))
    events, _ = parse_events(data)
    assert [(e.ego_id, e.tweet_id) for e in events] == [("b", "1"), ("b", "2"), ("z", "1")]


def test_timeline_materializes_empty_months():
    tl = build_timeline([ev(ts="2015-01-15T00:00:00Z"), ev(ts="2015-03-02T00:00:00Z")])
    assert [month_label(b.month) for b in tl.months] == ["2015-01", "2015-02", "2015-03"]
    assert [b.direct for b in tl.months] == [1, 0, 1]
    assert [b.days for b in tl.months] == [31, 28, 31]


def test_single_event_timeline():
    tl = build_timeline([ev()])
    assert len(tl.months) == 1 and tl.first_ts == tl.last_ts


def test_hundred_events_one_bucket():
    tl = build_timeline([ev(ts=f"2015-05-{1 + i % 28:02d}T00:00:00Z") for i in range(100)])
    assert [(b.direct, b.plain) for b in tl.months] == [(100, 0)]


def test_plain_counted_separately():
    tl = build_timeline([ev(kind="plain"), ev()])
    assert (tl.months[0].direct, tl.months[0].plain) == (1, 1)


def test_empty_timeline():
    with pytest.raises(EmptyInput):
        build_timeline([])


def _monthly(ego, months, per_month, start=datetime(2015, 1, 1, tzinfo=timezone.utc), kind="reply"):
    out = []
    for m in range(months):
        first = (start.replace(year=start.year + (start.month - 1 + m) // 12, month=(start.month - 1 + m) % 12 + 1))
        for i in range(per_month[m] if isinstance(per_month, list) else per_month):
            out.append(ev(ego=ego, kind=kind, ts=int((first + timedelta(hours=1 + 40 * i)).timestamp())))
    return out


def test_regular_year_is_kept():
    tl = build_timeline(_monthly("e", 12, 15))
    kept, rejected = filter_accounts([tl])
    assert kept == [tl] and rejected == []


def test_short_span_rejected():
    tl = build_timeline(_monthly("e", 3, 60))
    assert filter_accounts([tl]) == ([], [("e", RejectReason.SPAN_TOO_SHORT)])


def test_sporadic_rejected():
    counts = [15, 15, 15, 15] + [1] * 8
    tl = build_timeline(_monthly("e", 12, counts))
    assert filter_accounts([tl]) == ([], [("e", RejectReason.TOO_SPORADIC)])


def test_exactly_half_qualifying_is_kept():
    tl = build_timeline(_monthly("e", 12, [15] * 6 + [1] * 6))
    assert filter_accounts([tl])[1] == []


def test_plain_tweets_do_not_count_towards_rate():
    evs = _monthly("e", 12, 1) + _monthly("e", 12, 30, kind="plain")
    assert filter_accounts([build_timeline(evs)])[1] == [("e", RejectReason.TOO_SPORADIC)]


def test_filter_policy_validation():
    with pytest.raises(ValueError):
        FilterPolicy(min_qualifying_month_fraction=Fraction(3, 2))
    with pytest.raises(ValueError):
        FilterPolicy(min_daily_rate=0)


@st.composite
def timelines(draw):
    n_months = draw(st.integers(1, 14))
    counts = draw(st.lists(st.integers(0, 25), min_size=n_months, max_size=n_months))
    counts[0] = max(counts[0], 1)
    counts[-1] = max(counts[-1], 1)
    return build_timeline(_monthly(draw(st.sampled_from(["e1", "e2", "e3", "e4"])), n_months, counts))


@settings(max_examples=60, deadline=None)
@given(st.lists(timelines(), max_size=4), st.fractions(Fraction(1, 10), Fraction(1, 1)),
       st.fractions(Fraction(0), Fraction(1, 2)))
def test_filter_idempotent_and_monotone(tls, rate, bump):
    policy = FilterPolicy(min_daily_rate=rate)
    kept, _ = filter_accounts(tls, policy)
    assert filter_accounts(kept, policy)[0] == kept
    stricter, _ = filter_accounts(tls, FilterPolicy(min_daily_rate=rate + bump))
    assert {t.ego_id for t in stricter} <= {t.ego_id for t in kept}
    assert all(t in kept for t in stricter)


@given(timelines())
def test_buckets_partition_events(tl):
    assert sum(b.direct + b.plain for b in tl.months) == len(tl.events)


def test_build_timelines_groups_egos():
    tls = build_timelines([ev(ego="eb"), ev(ego="ea"), ev(ego="eb")])
    assert [(t.ego_id, len(t.events)) for t in tls] == [("ea", 1), ("eb", 2)]
