"""Hashtag activation of ties, hashtag intensity/diversity indices and monthly growth."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import asdict, dataclass
from typing import Iterable, Mapping, Sequence

from egocircles.ingestion import EgoTimeline
from egocircles.model import N_RINGS, LayeredEgoNetwork, TieSeries, month_index, ring_label


def tag_tweet_counts(tie: TieSeries) -> Counter:
    """Number of the tie's tweets containing each hashtag (at least once)."""
    counts: Counter = Counter()
    for e in tie.events:
        counts.update(set(e.hashtags))
    return counts


def ego_tag_counts(ties: Iterable[TieSeries]) -> Counter:
    total: Counter = Counter()
    for t in ties:
        total.update(tag_tweet_counts(t))
    return total


def detect_activation(tie: TieSeries) -> tuple[bool, str | None]:
    """Whether the first tweet on the tie carries a hashtag, and which one activated it.

    With several tags in the first tweet, the one used in most of the tie's
    tweets wins; remaining ties go to the first listed.
    """
    first = tie.first_contact.hashtags
    if not first:
        return False, None
    counts = tag_tweet_counts(tie)
    best = first[0]
    for tag in first[1:]:
        if counts[tag] > counts[best]:
            best = tag
    return True, best


def most_used_tag(tie: TieSeries) -> str | None:
    """Hashtag in the most tweets of the tie; ties broken by earliest appearance."""
    counts = tag_tweet_counts(tie)
    best = None
    for e in tie.events:
        for tag in e.hashtags:
            if best is None or counts[tag] > counts[best]:
                best = tag
    return best


@dataclass(frozen=True)
class HashtagTieStats:
    ego_id: str
    alter_id: str
    activated: bool
    h_act: str | None
    h_max: str | None
    n_r_hact: int
    n_e_hact: int
    n_r_hmax: int
    n_e_hmax: int
    d_rel: int
    u_rel: int

    def to_dict(self) -> dict:
        return asdict(self)


def tie_hashtag_stats(tie: TieSeries, ego_context: Iterable[TieSeries] | Counter) -> HashtagTieStats:
    """Activation flag and the six hashtag indices of one tie.

    :param ego_context: every tie of the ego (including ``tie``), or the
        precomputed :func:`ego_tag_counts` of those ties
    """
    ego_counts = ego_context if isinstance(ego_context, Counter) else ego_tag_counts(ego_context)
    counts = tag_tweet_counts(tie)
    activated, h_act = detect_activation(tie)
    h_max = most_used_tag(tie)
    occurrences = sum(len(e.hashtags) for e in tie.events)
    return HashtagTieStats(
        tie.ego_id, tie.alter_id, activated, h_act, h_max,
        counts[h_act] if h_act else 0,
        ego_counts[h_act] if h_act else 0,
        counts[h_max] if h_max else 0,
        ego_counts[h_max] if h_max else 0,
        occurrences,
        len(counts),
    )


def ego_hashtag_stats(ties: Mapping[str, TieSeries]) -> list[HashtagTieStats]:
    ctx = ego_tag_counts(ties.values())
    return [tie_hashtag_stats(t, ctx) for _, t in sorted(ties.items())]


@dataclass(frozen=True)
class LayerHashtagRow:
    sample: str
    ring: str
    group: str
    n_ties: int
    pct: float | None
    mean_freq: float | None
    mean_d_rel: float | None
    mean_u_rel: float | None


def _mean(xs: Sequence[float]) -> float | None:
    return math.fsum(xs) / len(xs) if xs else None


def layer_hashtag_report(networks: Iterable[LayeredEgoNetwork], stats: Iterable[HashtagTieStats],
                         sample: str = "") -> list[LayerHashtagRow]:
    """Per-ring comparison of hashtag-activated and other ties.

    For each ring (and ``ALL``) two rows are emitted, ``activated`` and
    ``not_activated``: the group's share of the ring's ties in percent, and
    the group means of contact frequency, hashtag occurrences and distinct
    hashtags.  Empty groups have ``None`` means.
    """
    by_tie = {(s.ego_id, s.alter_id): s for s in stats}
    buckets: dict[str, dict[bool, list[tuple[float, HashtagTieStats]]]] = {
        k: {True: [], False: []} for k in [*(ring_label(r) for r in range(1, N_RINGS + 1)), "ALL"]}
    for net in networks:
        for r, ring in enumerate(net.rings, start=1):
            for alter, freq in ring:
                s = by_tie.get((net.ego_id, alter))
                if s is None:
                    continue
                buckets[ring_label(r)][s.activated].append((freq, s))
                buckets["ALL"][s.activated].append((freq, s))
    rows = []
    for ring, groups in buckets.items():
        total = len(groups[True]) + len(groups[False])
        for flag, name in ((True, "activated"), (False, "not_activated")):
            g = groups[flag]
            rows.append(LayerHashtagRow(
                sample, ring, name, len(g),
                100.0 * len(g) / total if total else None,
                _mean([f for f, _ in g]),
                _mean([s.d_rel for _, s in g]),
                _mean([s.u_rel for _, s in g]),
            ))
    return rows


def activation_percentage(stats: Iterable[HashtagTieStats]) -> float | None:
    stats = list(stats)
    if not stats:
        return None
    return 100.0 * sum(s.activated for s in stats) / len(stats)


@dataclass(frozen=True)
class GrowthSeries:
    ego_id: str
    start_month: int
    new_alters: tuple[int, ...]
    new_hashtags: tuple[int, ...]

    @property
    def mean_new_alters(self) -> float:
        return _mean(self.new_alters) or 0.0

    @property
    def mean_new_hashtags(self) -> float:
        return _mean(self.new_hashtags) or 0.0


def growth_series(timeline: EgoTimeline) -> GrowthSeries:
    """New alters and new distinct hashtags per calendar month of direct activity.

    Month 0 is the month of the ego's first direct tweet; the series runs to
    the month of the last one and includes months with no novelty.
    """
    direct = timeline.direct_events
    if not direct:
        return GrowthSeries(timeline.ego_id, month_index(timeline.first_ts), (), ())
    start = month_index(direct[0].timestamp)
    length = month_index(direct[-1].timestamp) - start + 1
    alters, tags = [0] * length, [0] * length
    seen_alters: set[str] = set()
    seen_tags: set[str] = set()
    for e in direct:
        m = month_index(e.timestamp) - start
        if e.alter_id not in seen_alters:
            seen_alters.add(e.alter_id)
            alters[m] += 1
        for t in e.hashtags:
            if t not in seen_tags:
                seen_tags.add(t)
                tags[m] += 1
    return GrowthSeries(timeline.ego_id, start, tuple(alters), tuple(tags))
