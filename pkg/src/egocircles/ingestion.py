"""Reading interaction logs, monthly bucketing and account selection."""

from __future__ import annotations

import enum
import io
import json
import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Iterable

from egocircles.errors import EmptyInput, FatalFormat
from egocircles.model import (
    SECONDS_PER_DAY,
    Channel,
    InteractionEvent,
    days_in_month,
    month_index,
    normalize_hashtag,
    parse_timestamp,
)

log = logging.getLogger(__name__)

_REQUIRED = ("tweet_id", "ego", "kind", "ts", "alters", "hashtags")


@dataclass(frozen=True)
class LineDiagnostic:
    line: int
    reason: str


def _parse_record(rec: dict) -> list[InteractionEvent]:
    if not isinstance(rec, dict):
        raise ValueError("record is not a JSON object")
    for name in _REQUIRED:
        if name not in rec:
            raise ValueError(f"missing field '{name}'")
    tweet_id, ego = rec["tweet_id"], rec["ego"]
    if not isinstance(tweet_id, str) or not isinstance(ego, str) or not ego:
        raise ValueError("'tweet_id' and 'ego' must be strings")
    try:
        channel = Channel(rec["kind"])
    except ValueError:
        raise ValueError(f"field 'kind' has unknown value {rec['kind']!r}") from None
    if not isinstance(rec["ts"], str):
        raise ValueError("field 'ts' must be an RFC 3339 string")
    try:
        ts = parse_timestamp(rec["ts"])
    except ValueError as exc:
        raise ValueError(f"field 'ts' is invalid: {exc}") from None
    alters, tags = rec["alters"], rec["hashtags"]
    if not isinstance(alters, list) or not all(isinstance(a, str) and a for a in alters):
        raise ValueError("field 'alters' must be a list of non-empty strings")
    if not isinstance(tags, list) or not all(isinstance(t, str) for t in tags):
        raise ValueError("field 'hashtags' must be a list of strings")
    if channel is Channel.PLAIN and alters:
        raise ValueError("field 'alters' must be empty for plain tweets")
    if channel is not Channel.PLAIN and not alters:
        raise ValueError("field 'alters' must be non-empty for direct tweets")
    if ego in alters:
        raise ValueError("field 'alters' contains the ego itself")
    try:
        hashtags = tuple(normalize_hashtag(t) for t in tags)
    except ValueError as exc:
        raise ValueError(f"field 'hashtags': {exc}") from None
    if channel is Channel.PLAIN:
        return [InteractionEvent(tweet_id, ego, None, channel, ts, hashtags)]
    return [InteractionEvent(tweet_id, ego, a, channel, ts, hashtags) for a in dict.fromkeys(alters)]


def parse_events(stream: bytes | IO[bytes] | Iterable[bytes]) -> tuple[list[InteractionEvent], list[LineDiagnostic]]:
    """Parse newline-delimited JSON event records.

    Malformed lines never abort parsing; each yields a :class:`LineDiagnostic`
    (1-based line number and reason).  Only undecodable (non UTF-8) input is
    fatal.  Returned events are sorted by ``(ego, timestamp, tweet_id)``.
    """
    if isinstance(stream, (bytes, bytearray)):
        stream = io.BytesIO(stream)
    events: list[InteractionEvent] = []
    diagnostics: list[LineDiagnostic] = []
    for lineno, raw in enumerate(stream, start=1):
        try:
            line = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise FatalFormat(f"line {lineno} is not valid UTF-8: {exc}") from None
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
            events.extend(_parse_record(rec))
        except json.JSONDecodeError as exc:
            diagnostics.append(LineDiagnostic(lineno, f"invalid JSON: {exc.msg}"))
        except ValueError as exc:
            diagnostics.append(LineDiagnostic(lineno, str(exc)))
    events.sort(key=InteractionEvent.sort_key)
    return events, diagnostics


def split_by_ego(events: Iterable[InteractionEvent]) -> dict[str, list[InteractionEvent]]:
    out: dict[str, list[InteractionEvent]] = defaultdict(list)
    for e in events:
        out[e.ego_id].append(e)
    return dict(sorted(out.items()))


@dataclass(frozen=True)
class MonthBucket:
    month: int
    direct: int
    plain: int
    days: int


@dataclass(frozen=True)
class EgoTimeline:
    ego_id: str
    events: tuple[InteractionEvent, ...]
    months: tuple[MonthBucket, ...]

    @property
    def first_ts(self) -> int:
        return self.events[0].timestamp

    @property
    def last_ts(self) -> int:
        return self.events[-1].timestamp

    @property
    def span_days(self) -> float:
        return (self.last_ts - self.first_ts) / SECONDS_PER_DAY

    @property
    def direct_events(self) -> list[InteractionEvent]:
        return [e for e in self.events if e.channel.is_direct]

    def to_dict(self) -> dict:
        return {"ego": self.ego_id, "events": [e.to_dict() for e in self.events]}

    @classmethod
    def from_dict(cls, d: dict) -> EgoTimeline:
        return build_timeline([InteractionEvent.from_dict(e) for e in d["events"]])


def build_timeline(events: Iterable[InteractionEvent]) -> EgoTimeline:
    """Sort one ego's events and bucket them into UTC calendar months.

    Every month between the first and last event is materialized, including
    months without activity.
    """
    evs = sorted(events, key=InteractionEvent.sort_key)
    if not evs:
        raise EmptyInput("no events for timeline")
    ego = evs[0].ego_id
    if any(e.ego_id != ego for e in evs):
        raise ValueError("events of several egos passed to build_timeline")
    direct: dict[int, int] = defaultdict(int)
    plain: dict[int, int] = defaultdict(int)
    for e in evs:
        m = month_index(e.timestamp)
        if e.channel.is_direct:
            direct[m] += 1
        else:
            plain[m] += 1
    first, last = month_index(evs[0].timestamp), month_index(evs[-1].timestamp)
    months = tuple(MonthBucket(m, direct[m], plain[m], days_in_month(m)) for m in range(first, last + 1))
    return EgoTimeline(ego, tuple(evs), months)


def build_timelines(events: Iterable[InteractionEvent]) -> list[EgoTimeline]:
    return [build_timeline(evs) for evs in split_by_ego(events).values()]


class RejectReason(str, enum.Enum):
    SPAN_TOO_SHORT = "SpanTooShort"
    TOO_SPORADIC = "TooSporadic"


@dataclass(frozen=True)
class FilterPolicy:
    min_span_days: int = 183
    min_daily_rate: Fraction = Fraction(1, 3)
    min_qualifying_month_fraction: Fraction = Fraction(1, 2)

    def __post_init__(self):
        object.__setattr__(self, "min_daily_rate", Fraction(self.min_daily_rate))
        object.__setattr__(self, "min_qualifying_month_fraction", Fraction(self.min_qualifying_month_fraction))
        if self.min_span_days <= 0 or self.min_daily_rate <= 0:
            raise ValueError("filter thresholds must be strictly positive")
        if not 0 < self.min_qualifying_month_fraction <= 1:
            raise ValueError("min_qualifying_month_fraction must lie in (0, 1]")


def rejection_reason(timeline: EgoTimeline, policy: FilterPolicy) -> RejectReason | None:
    if timeline.last_ts - timeline.first_ts < policy.min_span_days * SECONDS_PER_DAY:
        return RejectReason.SPAN_TOO_SHORT
    qualifying = sum(1 for b in timeline.months if Fraction(b.direct, b.days) >= policy.min_daily_rate)
    if Fraction(qualifying, len(timeline.months)) < policy.min_qualifying_month_fraction:
        return RejectReason.TOO_SPORADIC
    return None


def filter_accounts(timelines: Iterable[EgoTimeline], policy: FilterPolicy = FilterPolicy()
                    ) -> tuple[list[EgoTimeline], list[tuple[str, RejectReason]]]:
    """Keep egos with a long enough and regular enough direct activity."""
    kept, rejected = [], []
    for tl in timelines:
        reason = rejection_reason(tl, policy)
        if reason is None:
            kept.append(tl)
        else:
            log.debug("rejecting ego %s: %s", tl.ego_id, reason.value)
            rejected.append((tl.ego_id, reason))
    return kept, rejected
