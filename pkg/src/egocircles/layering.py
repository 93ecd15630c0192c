"""Contact frequencies and ring detection by exact one-dimensional k-means."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from egocircles.errors import EmptyNetwork, TooFewDistinct, ZeroSpan
from egocircles.ingestion import EgoTimeline
from egocircles.model import (
    DAYS_PER_YEAR,
    FULL_SPAN,
    N_RINGS,
    SECONDS_PER_DAY,
    ChannelSelector,
    LayeredEgoNetwork,
    TieSeries,
    Window,
)

# relative slack under which two partition costs are considered equal
COST_RTOL = 1e-10


def contact_frequency(tie: TieSeries, window: Window | object = FULL_SPAN,
                      span: tuple[int, int] | None = None) -> float:
    """Contacts per 365-day year of ``tie`` inside ``window``.

    For ``FULL_SPAN`` the caller passes the ego's ``(first_ts, last_ts)`` as
    ``span``; all tie events fall inside it by construction.
    """
    if window is FULL_SPAN:
        if span is None:
            span = (tie.events[0].timestamp, tie.events[-1].timestamp)
        days = (span[1] - span[0]) / SECONDS_PER_DAY
        if days <= 0:
            raise ZeroSpan("full span has zero length", ego_id=tie.ego_id)
        count = sum(1 for e in tie.events if span[0] <= e.timestamp <= span[1])
    else:
        days = window.span_days
        count = sum(1 for e in tie.events if window.contains(e.timestamp))
    return count * DAYS_PER_YEAR / days


@dataclass(frozen=True)
class Partition:
    """Optimal contiguous partition of sorted data.

    ``bounds`` are the start offsets (in the ascending sorted array) of
    clusters 2..k; ``cost`` the within-cluster sum of squares.
    """

    bounds: tuple[int, ...]
    cost: float


def _segment_costs(P1, P2, W, a, bs):
    n = W[bs] - W[a]
    s = P1[bs] - P1[a]
    return np.maximum((P2[bs] - P2[a]) - s * s / n, 0.0)


def optimal_partition(sorted_values: Sequence[float], k: int) -> Partition:
    """Exact minimum-SSE split of ascending ``sorted_values`` into ``k`` runs.

    Runs never separate equal values.  Among partitions whose cost is within
    ``COST_RTOL`` of the optimum, the one with lexicographically smallest
    ``bounds`` is returned.
    """
    x = np.asarray(sorted_values, dtype=float)
    if k < 1:
        raise ValueError("k must be >= 1")
    uniq, counts = np.unique(x, return_counts=True)
    u = len(uniq)
    if u < k:
        raise TooFewDistinct(f"{u} distinct values, k={k}")
    centred = uniq - np.average(uniq, weights=counts)
    W = np.concatenate(([0], np.cumsum(counts))).astype(float)
    P1 = np.concatenate(([0.0], np.cumsum(counts * centred)))
    P2 = np.concatenate(([0.0], np.cumsum(counts * centred * centred)))
    total = float(_segment_costs(P1, P2, W, 0, np.array([u]))[0])
    tol = COST_RTOL * total + 1e-300

    # best[j][i]: cheapest split of unique groups i..u-1 into j runs
    best = np.full((k + 1, u + 1), np.inf)
    best[0, u] = 0.0
    for j in range(1, k + 1):
        for i in range(0, u - j + 1):
            ms = np.arange(i + 1, u - j + 2)
            best[j, i] = np.min(_segment_costs(P1, P2, W, i, ms) + best[j - 1, ms])

    cuts, i = [], 0
    for j in range(k, 1, -1):
        ms = np.arange(i + 1, u - j + 2)
        totals = _segment_costs(P1, P2, W, i, ms) + best[j - 1, ms]
        m = int(ms[np.argmax(totals <= best[j, i] + tol)])
        cuts.append(m)
        i = m
    bounds = tuple(int(W[m]) for m in cuts)
    return Partition(bounds, _direct_cost(x, bounds))


def _direct_cost(x: np.ndarray, bounds: tuple[int, ...]) -> float:
    edges = (0, *bounds, len(x))
    return float(sum(((x[a:b] - x[a:b].mean()) ** 2).sum() for a, b in zip(edges, edges[1:])))


def cluster_1d(values: Sequence[float], k: int) -> list[int]:
    """Assign every value to one of ``k`` clusters minimizing the within-cluster SSE.

    Labels run from 1 (cluster with the highest mean) to ``k`` and are
    returned in input order.  The result is deterministic: equal values are
    always co-clustered and cost ties resolve to the lexicographically
    smallest boundaries on the ascending sorted data.
    """
    order = sorted(range(len(values)), key=lambda i: (values[i], i))
    part = optimal_partition([values[i] for i in order], k)
    labels = [0] * len(values)
    edges = (0, *part.bounds, len(values))
    for c, (a, b) in enumerate(zip(edges, edges[1:])):
        for pos in range(a, b):
            labels[order[pos]] = k - c
    return labels


def within_ss(values: Sequence[float], labels: Sequence[int]) -> float:
    groups: dict[int, list[float]] = {}
    for v, l in zip(values, labels):
        groups.setdefault(l, []).append(v)
    return math.fsum(math.fsum((v - sum(g) / len(g)) ** 2 for v in g) for g in groups.values())


def aic_scores(values: Sequence[float], k_max: int) -> dict[int, float]:
    """``n ln(RSS/n) + 2k`` for each admissible k; RSS = 0 scores ``-inf``."""
    x = np.sort(np.asarray(values, dtype=float))
    n = len(x)
    k_top = min(k_max, len(np.unique(x)))
    spread = float(((x - x.mean()) ** 2).sum()) if n else 0.0
    scores = {}
    for k in range(1, k_top + 1):
        rss = optimal_partition(x, k).cost
        if rss <= 1e-12 * spread:
            scores[k] = -math.inf
        else:
            scores[k] = n * math.log(rss / n) + 2 * k
    return scores


def select_k_aic(values: Sequence[float], k_max: int) -> int:
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    scores = aic_scores(values, k_max)
    return min(scores, key=lambda k: (scores[k], k))


class ContactIndex:
    """Array view of one ego's ties on a channel, for fast per-window counting."""

    def __init__(self, timeline: EgoTimeline, channel: ChannelSelector):
        self.ego_id = timeline.ego_id
        self.channel = channel
        self.span = (timeline.first_ts, timeline.last_ts)
        evs = [e for e in timeline.events if channel.matches(e.channel)]
        self.alters = sorted({e.alter_id for e in evs})
        pos = {a: i for i, a in enumerate(self.alters)}
        self.alter_idx = np.fromiter((pos[e.alter_id] for e in evs), dtype=np.int64, count=len(evs))
        self.ts = np.fromiter((e.timestamp for e in evs), dtype=np.int64, count=len(evs))

    def frequency_vector(self, window=FULL_SPAN) -> list[tuple[str, float]]:
        if window is FULL_SPAN:
            lo, hi = self.span
            days = (hi - lo) / SECONDS_PER_DAY
            if days <= 0:
                raise ZeroSpan("full span has zero length", ego_id=self.ego_id)
            mask = (self.ts >= lo) & (self.ts <= hi)
        else:
            days = window.span_days
            mask = (self.ts >= window.start) & (self.ts < window.end)
        counts = np.bincount(self.alter_idx[mask], minlength=len(self.alters))
        return [(a, int(c) * DAYS_PER_YEAR / days) for a, c in zip(self.alters, counts) if c > 0]


def frequency_vector(timeline: EgoTimeline, channel: ChannelSelector = ChannelSelector.ALL_DIRECT,
                     window=FULL_SPAN) -> list[tuple[str, float]]:
    """``(alter, contacts/year)`` for alters with at least one matching event, sorted by alter."""
    return ContactIndex(timeline, channel).frequency_vector(window)


def layer_frequencies(ego_id: str, channel: ChannelSelector, window, freqs: list[tuple[str, float]],
                      k: int = N_RINGS) -> LayeredEgoNetwork:
    if not freqs:
        raise EmptyNetwork("no matching events in window", ego_id=ego_id)
    values = [f for _, f in freqs]
    k_eff = min(k, len(set(values)))
    labels = cluster_1d(values, k_eff)
    rings: list[list[tuple[str, float]]] = [[] for _ in range(k_eff)]
    for (alter, f), label in zip(freqs, labels):
        rings[label - 1].append((alter, f))
    return LayeredEgoNetwork(ego_id, channel, window, tuple(tuple(sorted(r)) for r in rings))


def build_ego_network(timeline: EgoTimeline, channel: ChannelSelector = ChannelSelector.ALL_DIRECT,
                      window=FULL_SPAN, k: int = N_RINGS, index: ContactIndex | None = None) -> LayeredEgoNetwork:
    """Cluster the ego's contact frequencies in ``window`` into at most ``k`` rings.

    :param index: a prebuilt :class:`ContactIndex` for the same timeline and
        channel, to avoid re-scanning the events for every window
    :raises EmptyNetwork: no matching events fall in ``window``
    """
    if index is None:
        index = ContactIndex(timeline, channel)
    return layer_frequencies(timeline.ego_id, channel, window, index.frequency_vector(window), k)


def empty_network(ego_id: str, channel: ChannelSelector, window) -> LayeredEgoNetwork:
    return LayeredEgoNetwork(ego_id, channel, window, ())
