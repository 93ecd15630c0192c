"""Static structure statistics: usage shares, circle sizes, scaling ratios and their variability."""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from statistics import NormalDist
from typing import Iterable, Sequence

from egocircles.errors import InsufficientSample, UndefinedC, ZeroSpan
from egocircles.ingestion import EgoTimeline
from egocircles.model import N_RINGS, Channel, LayeredEgoNetwork, circle_sizes


def fs_ratio(percents: Sequence[float]) -> float:
    """Ratio of the highest to the second highest of the direct-tweet type shares.

    Returns ``inf`` when only one type is used and ``nan`` when none is.
    """
    top = sorted(percents, reverse=True)
    if top[0] == 0:
        return math.nan
    if top[1] == 0:
        return math.inf
    return top[0] / top[1]


@dataclass(frozen=True)
class UsageStats:
    ego_id: str
    pct_social: float
    pct_reply: float
    pct_mention: float
    pct_retweet: float
    fs_ratio: float
    tweet_freq: float

    @classmethod
    def from_percentages(cls, ego_id: str, pct_social: float, pct_reply: float, pct_mention: float,
                         pct_retweet: float, tweet_freq: float) -> UsageStats:
        return cls(ego_id, pct_social, pct_reply, pct_mention, pct_retweet,
                   fs_ratio((pct_reply, pct_mention, pct_retweet)), tweet_freq)

    def to_dict(self) -> dict:
        return asdict(self)


def usage_stats(timeline: EgoTimeline) -> UsageStats:
    """Shares of direct tweets by type and overall tweeting rate.

    A tweet addressed to several alters is counted once.
    """
    kinds: dict[str, Channel] = {}
    for e in timeline.events:
        kinds.setdefault(e.tweet_id, e.channel)
    span = timeline.span_days
    if span <= 0:
        raise ZeroSpan("timeline spans zero days", ego_id=timeline.ego_id)
    n_tweets = len(kinds)
    per_type = {c: 0 for c in Channel}
    for c in kinds.values():
        per_type[c] += 1
    n_direct = n_tweets - per_type[Channel.PLAIN]

    def pct(count, total):
        return 100.0 * count / total if total else 0.0

    return UsageStats.from_percentages(
        timeline.ego_id,
        pct(n_direct, n_tweets),
        pct(per_type[Channel.REPLY], n_direct),
        pct(per_type[Channel.MENTION], n_direct),
        pct(per_type[Channel.RETWEET], n_direct),
        n_tweets / span,
    )


def mean_usage(rows: Iterable[UsageStats]) -> dict[str, float]:
    """Column means over a sample, as in a "mean for the sample" table row."""
    rows = list(rows)
    if not rows:
        raise InsufficientSample("no usage rows")
    fields = ("pct_social", "pct_reply", "pct_mention", "pct_retweet", "fs_ratio", "tweet_freq")
    return {f: math.fsum(getattr(r, f) for r in rows) / len(rows) for f in fields}


def scaling_ratios(sizes: Sequence[int]) -> list[float]:
    """``|C_{i+1}| / |C_i|`` for adjacent circles."""
    return [b / a for a, b in zip(sizes, sizes[1:])]


@dataclass(frozen=True)
class StatSummary:
    name: str
    mean: float
    sd: float
    half_width: float
    c_index: float
    n: int


def z_value(confidence: float) -> float:
    return NormalDist().inv_cdf(0.5 + confidence / 2)


def summarize(name: str, values: Sequence[float], confidence: float = 0.95) -> StatSummary:
    """Mean with a normal-approximation confidence interval and its variability index.

    The variability index is the full interval width divided by the mean.
    """
    n = len(values)
    if n < 2:
        raise InsufficientSample(f"{name}: need at least 2 values, got {n}")
    mean = math.fsum(values) / n
    sd = math.sqrt(math.fsum((v - mean) ** 2 for v in values) / (n - 1))
    half = z_value(confidence) * sd / math.sqrt(n)
    if mean == 0:
        raise UndefinedC(f"{name}: mean is zero")
    return StatSummary(name, mean, sd, half, 2 * half / mean, n)


@dataclass(frozen=True)
class PopulationSummary:
    sizes: tuple[StatSummary, ...]
    ratios: tuple[StatSummary, ...]
    n: int

    def rows(self) -> list[StatSummary]:
        return [*self.sizes, *self.ratios]


def summarize_circles(size_rows: Sequence[Sequence[int]], confidence: float = 0.95) -> PopulationSummary:
    size_rows = [list(s) for s in size_rows]
    if len(size_rows) < 2:
        raise InsufficientSample(f"need at least 2 five-circle networks, got {len(size_rows)}")
    ratio_rows = [scaling_ratios(s) for s in size_rows]
    sizes = tuple(summarize(f"C{i + 1}", [s[i] for s in size_rows], confidence) for i in range(N_RINGS))
    ratios = tuple(summarize(f"C{i + 2}/C{i + 1}", [r[i] for r in ratio_rows], confidence)
                   for i in range(N_RINGS - 1))
    return PopulationSummary(sizes, ratios, len(size_rows))


def population_summary(networks: Iterable[LayeredEgoNetwork], confidence: float = 0.95) -> PopulationSummary:
    """Circle sizes and scaling ratios averaged over the five-ring networks of a sample."""
    return summarize_circles([circle_sizes(n) for n in networks if n.k_used == N_RINGS], confidence)
