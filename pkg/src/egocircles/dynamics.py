"""Windowed ego networks, ring turnover (Jaccard and jump indices) and static/dynamic correspondence."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from egocircles.errors import EmptyNetwork, SpanTooShort
from egocircles.ingestion import EgoTimeline
from egocircles.layering import ContactIndex, build_ego_network, empty_network
from egocircles.model import N_RINGS, OUT, ChannelSelector, LayeredEgoNetwork, Window, month_index


class WindowMode(str, enum.Enum):
    OVERLAPPING = "overlapping"
    DISJOINT = "disjoint"


@dataclass(frozen=True)
class WindowSeries:
    windows: tuple[Window, ...]
    mode: WindowMode


def make_windows(timeline: EgoTimeline, length_months: int = 12,
                 mode: WindowMode = WindowMode.DISJOINT, step_months: int | None = None) -> WindowSeries:
    """Month-aligned windows starting at the month of the first event.

    Overlapping series advance one month per window, disjoint ones a full
    window length (``step_months`` overrides either).  Windows reaching past
    the month of the last event are dropped.
    """
    if step_months is None:
        step_months = 1 if mode is WindowMode.OVERLAPPING else length_months
    if length_months < 1 or step_months < 1:
        raise ValueError("window length and step must be positive")
    first, last = month_index(timeline.first_ts), month_index(timeline.last_ts)
    if last - first + 1 < length_months:
        raise SpanTooShort(f"activity covers {last - first + 1} months, window needs {length_months}",
                           ego_id=timeline.ego_id)
    starts = range(first, last - length_months + 2, step_months)
    return WindowSeries(tuple(Window(s, length_months) for s in starts), mode)


def window_networks(timeline: EgoTimeline, series: WindowSeries, k: int = N_RINGS) -> list[LayeredEgoNetwork]:
    """All-direct networks for every window; inactive windows give an empty network."""
    channel = ChannelSelector.ALL_DIRECT
    index = ContactIndex(timeline, channel)
    nets = []
    for w in series.windows:
        try:
            nets.append(build_ego_network(timeline, channel, w, k, index=index))
        except EmptyNetwork:
            nets.append(empty_network(timeline.ego_id, channel, w))
    return nets


def ring_jaccard(net_a: LayeredEgoNetwork, net_b: LayeredEgoNetwork, ring: int) -> float | None:
    """Jaccard index of a ring's members in two windows; ``None`` when both are empty."""
    a, b = net_a.members(ring), net_b.members(ring)
    union = a | b
    if not union:
        return None
    return len(a & b) / len(union)


@dataclass(frozen=True)
class JumpSample:
    alter_id: str
    start: int
    end: int
    jumps: int
    normalized: float


def max_jumps(start: int) -> int:
    return max(start - 1, OUT - start)


def jump_samples(net_a: LayeredEgoNetwork, net_b: LayeredEgoNetwork) -> list[JumpSample]:
    """Ring moves of alters between two windows, with OUT at position 6.

    Alters that stay in the same ring give no sample.
    """
    out = []
    for alter in sorted(net_a.alters | net_b.alters):
        start, end = net_a.position(alter), net_b.position(alter)
        jumps = abs(start - end)
        if jumps:
            out.append(JumpSample(alter, start, end, jumps, jumps / max_jumps(start)))
    return out


@dataclass
class EgoTurnover:
    """Raw per-ring turnover samples of one ego over a disjoint window series."""

    ego_id: str
    jaccard: dict[int, list[float]] = field(default_factory=lambda: {r: [] for r in range(1, N_RINGS + 1)})
    exits: dict[int, list[JumpSample]] = field(default_factory=lambda: {r: [] for r in range(1, N_RINGS + 1)})
    entries: dict[int, list[JumpSample]] = field(default_factory=lambda: {r: [] for r in range(1, N_RINGS + 1)})

    def pooled(self, ring: int) -> list[JumpSample]:
        return self.exits[ring] + self.entries[ring]


def ego_turnover(networks: Sequence[LayeredEgoNetwork]) -> EgoTurnover:
    """Collect Jaccard and jump samples over adjacent pairs of a disjoint window series."""
    ego = networks[0].ego_id if networks else ""
    res = EgoTurnover(ego)
    for a, b in zip(networks, networks[1:]):
        for r in range(1, N_RINGS + 1):
            j = ring_jaccard(a, b, r)
            if j is not None:
                res.jaccard[r].append(j)
        for s in jump_samples(a, b):
            if s.start == OUT:
                res.entries[s.end].append(s)
            else:
                res.exits[s.start].append(s)
    return res


@dataclass(frozen=True)
class RingTurnover:
    ring: int
    jaccard: float | None
    jaccard_n: int
    exit_jumps: float | None
    exit_normalized: float | None
    exit_n: int
    entry_jumps: float | None
    entry_normalized: float | None
    entry_n: int
    pooled_jumps: float | None
    pooled_normalized: float | None
    pooled_n: int


@dataclass(frozen=True)
class TurnoverReport:
    rings: tuple[RingTurnover, ...]
    aggregation: str
    n_egos: int


def _mean(xs: Sequence[float]) -> float | None:
    return math.fsum(xs) / len(xs) if xs else None


def _aggregate(per_ego: list[list[float]], agg: str) -> tuple[float | None, int]:
    n = sum(len(x) for x in per_ego)
    if agg == "micro":
        return _mean([v for x in per_ego for v in x]), n
    return _mean([_mean(x) for x in per_ego if x]), n


def turnover_report(egos: Iterable[EgoTurnover], agg: str = "macro") -> TurnoverReport:
    """Per-ring mean Jaccard and jump indices.

    ``agg='macro'`` averages within each ego first and then across egos;
    ``'micro'`` pools every sample.  Exit moves are grouped by the ring the
    alter left, entries from OUT by the ring entered; ``pooled`` joins both.
    """
    if agg not in ("macro", "micro"):
        raise ValueError("agg must be 'macro' or 'micro'")
    egos = list(egos)
    rows = []
    for r in range(1, N_RINGS + 1):
        jac, jac_n = _aggregate([e.jaccard[r] for e in egos], agg)
        cols = []
        for pick in (lambda e: e.exits[r], lambda e: e.entries[r], lambda e: e.pooled(r)):
            samples = [pick(e) for e in egos]
            jm, n = _aggregate([[s.jumps for s in x] for x in samples], agg)
            nm, _ = _aggregate([[s.normalized for s in x] for x in samples], agg)
            cols.extend((jm, nm, n))
        rows.append(RingTurnover(r, jac, jac_n, *cols))
    return TurnoverReport(tuple(rows), agg, len(egos))


LAYER_COLUMNS = N_RINGS + 1


@dataclass(frozen=True)
class CorrespondenceMatrix:
    """Rows: static rings R1..R5.  Columns: dynamic layers R1..R5 and OUT."""

    matrix: np.ndarray
    empty_rows: tuple[bool, ...]
    counts: tuple[int, ...] = (0,) * N_RINGS

    def to_dict(self) -> dict:
        return {"matrix": self.matrix.tolist(), "empty_rows": list(self.empty_rows),
                "counts": list(self.counts)}


def correspondence(static_net: LayeredEgoNetwork, dynamic_nets: Sequence[LayeredEgoNetwork]) -> CorrespondenceMatrix:
    """Average share of windows each static-ring tie spends in each dynamic layer."""
    mat = np.zeros((N_RINGS, LAYER_COLUMNS))
    empty, counts = [], []
    n_win = len(dynamic_nets)
    for r in range(1, N_RINGS + 1):
        members = sorted(static_net.members(r))
        counts.append(len(members))
        if not members or not n_win:
            empty.append(True)
            continue
        empty.append(False)
        for alter in members:
            hist = np.zeros(LAYER_COLUMNS)
            for net in dynamic_nets:
                hist[net.position(alter) - 1] += 1
            mat[r - 1] += hist / n_win
        mat[r - 1] /= len(members)
    return CorrespondenceMatrix(mat, tuple(empty), tuple(counts))


def mean_correspondence(matrices: Iterable[CorrespondenceMatrix]) -> CorrespondenceMatrix:
    """Macro average of per-ego matrices, skipping each ego's empty rows."""
    matrices = list(matrices)
    mat = np.zeros((N_RINGS, LAYER_COLUMNS))
    empty, counts = [], []
    for r in range(N_RINGS):
        rows = [m.matrix[r] for m in matrices if not m.empty_rows[r]]
        counts.append(len(rows))
        empty.append(not rows)
        if rows:
            mat[r] = np.mean(rows, axis=0)
    return CorrespondenceMatrix(mat, tuple(empty), tuple(counts))
