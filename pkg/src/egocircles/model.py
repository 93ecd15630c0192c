"""Core domain types: interaction events, ties, calendar windows and layered ego networks.

Timestamps are integer seconds since the Unix epoch, always UTC.  Calendar
months are addressed by a *month index* ``year * 12 + (month - 1)`` which
makes month arithmetic plain integer arithmetic.
"""

from __future__ import annotations

import calendar
import enum
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Iterable, Sequence

from egocircles.errors import DegenerateNetwork

SECONDS_PER_DAY = 86400
DAYS_PER_YEAR = 365

#: number of rings in the Dunbar model
N_RINGS = 5
#: sentinel position of an alter outside the (active) ego network
OUT = 6


class Channel(str, enum.Enum):
    REPLY = "reply"
    MENTION = "mention"
    RETWEET = "retweet"
    PLAIN = "plain"

    @property
    def is_direct(self) -> bool:
        return self is not Channel.PLAIN


DIRECT_CHANNELS = (Channel.REPLY, Channel.MENTION, Channel.RETWEET)


class ChannelSelector(str, enum.Enum):
    REPLY = "reply"
    MENTION = "mention"
    RETWEET = "retweet"
    ALL_DIRECT = "all"

    def matches(self, channel: Channel) -> bool:
        if self is ChannelSelector.ALL_DIRECT:
            return channel.is_direct
        return channel.value == self.value


def ring_label(position: int) -> str:
    """``1 -> 'R1'`` ... ``5 -> 'R5'``, ``OUT -> 'OUT'``."""
    if position == OUT:
        return "OUT"
    if not 1 <= position <= N_RINGS:
        raise ValueError(f"invalid ring position {position}")
    return f"R{position}"


# --- time helpers -----------------------------------------------------------

def parse_timestamp(text: str) -> int:
    """Parse an RFC 3339 string into UTC epoch seconds (sub-second part truncated)."""
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    dt = datetime.fromisoformat(text)
    if dt.tzinfo is None:
        raise ValueError("timestamp has no UTC offset")
    return int(dt.timestamp() // 1)


def format_timestamp(ts: int) -> str:
    return datetime.fromtimestamp(ts, tz=timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def month_index(ts: int) -> int:
    dt = datetime.fromtimestamp(ts, tz=timezone.utc)
    return dt.year * 12 + dt.month - 1


def month_start(index: int) -> int:
    year, month0 = divmod(index, 12)
    return calendar.timegm((year, month0 + 1, 1, 0, 0, 0))


def days_in_month(index: int) -> int:
    year, month0 = divmod(index, 12)
    return calendar.monthrange(year, month0 + 1)[1]


def month_label(index: int) -> str:
    year, month0 = divmod(index, 12)
    return f"{year:04d}-{month0 + 1:02d}"


# --- events and ties --------------------------------------------------------

def normalize_hashtag(tag: str) -> str:
    """Lowercase (Unicode aware) and strip a single leading ``#``."""
    if tag.startswith("#"):
        tag = tag[1:]
    tag = tag.casefold()
    if not tag or "#" in tag or any(ch.isspace() for ch in tag):
        raise ValueError(f"invalid hashtag {tag!r}")
    return tag


@dataclass(frozen=True, slots=True)
class InteractionEvent:
    tweet_id: str
    ego_id: str
    alter_id: str | None
    channel: Channel
    timestamp: int
    hashtags: tuple[str, ...] = ()

    def __post_init__(self):
        if (self.alter_id is None) != (self.channel is Channel.PLAIN):
            raise ValueError("alter_id must be present iff the channel is direct")
        if self.alter_id is not None and self.alter_id == self.ego_id:
            raise ValueError("alter_id equals ego_id")

    def sort_key(self):
        return (self.ego_id, self.timestamp, self.tweet_id, self.alter_id or "")

    def to_dict(self) -> dict:
        return {
            "tweet_id": self.tweet_id,
            "ego": self.ego_id,
            "alter": self.alter_id,
            "kind": self.channel.value,
            "ts": self.timestamp,
            "hashtags": list(self.hashtags),
        }

    @classmethod
    def from_dict(cls, d: dict) -> InteractionEvent:
        return cls(d["tweet_id"], d["ego"], d["alter"], Channel(d["kind"]), int(d["ts"]),
                   tuple(d["hashtags"]))


@dataclass(frozen=True)
class TieSeries:
    """Time-ordered interactions of one ego with one alter."""

    ego_id: str
    alter_id: str
    events: tuple[InteractionEvent, ...]

    def __post_init__(self):
        if not self.events:
            raise ValueError("a tie needs at least one event")
        for prev, nxt in zip(self.events, self.events[1:]):
            if (prev.timestamp, prev.tweet_id) > (nxt.timestamp, nxt.tweet_id):
                raise ValueError("tie events are not sorted")
        if any(e.ego_id != self.ego_id or e.alter_id != self.alter_id for e in self.events):
            raise ValueError("tie events belong to a different ego/alter")

    @property
    def first_contact(self) -> InteractionEvent:
        return self.events[0]

    def to_dict(self) -> dict:
        return {"ego": self.ego_id, "alter": self.alter_id,
                "events": [e.to_dict() for e in self.events]}

    @classmethod
    def from_dict(cls, d: dict) -> TieSeries:
        return cls(d["ego"], d["alter"], tuple(InteractionEvent.from_dict(e) for e in d["events"]))


def group_ties(events: Iterable[InteractionEvent],
               channel: ChannelSelector = ChannelSelector.ALL_DIRECT) -> dict[str, TieSeries]:
    """Split one ego's events into ties keyed by alter id."""
    by_alter: dict[str, list[InteractionEvent]] = {}
    ego = None
    for e in events:
        if not channel.matches(e.channel):
            continue
        ego = e.ego_id
        by_alter.setdefault(e.alter_id, []).append(e)
    ties = {}
    for alter in sorted(by_alter):
        evs = sorted(by_alter[alter], key=lambda e: (e.timestamp, e.tweet_id))
        ties[alter] = TieSeries(ego, alter, tuple(evs))
    return ties


# --- windows ----------------------------------------------------------------

@dataclass(frozen=True)
class Window:
    """Half-open calendar window ``[start, start + length_months)``; ``start`` is a month index."""

    start_month: int
    length_months: int = 12

    def __post_init__(self):
        if self.length_months <= 0:
            raise ValueError("length_months must be positive")

    @property
    def start(self) -> int:
        return month_start(self.start_month)

    @property
    def end(self) -> int:
        return month_start(self.start_month + self.length_months)

    @property
    def span_days(self) -> float:
        return (self.end - self.start) / SECONDS_PER_DAY

    def contains(self, ts: int) -> bool:
        return self.start <= ts < self.end

    def to_dict(self) -> dict:
        return {"start": month_label(self.start_month), "length_months": self.length_months}

    @classmethod
    def from_dict(cls, d: dict) -> Window:
        year, month = (int(x) for x in d["start"].split("-"))
        return cls(year * 12 + month - 1, int(d["length_months"]))


class _FullSpan:
    """Marker for the ego's whole observed history ``[first_ts, last_ts]``."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "FULL_SPAN"

    def __reduce__(self):
        return (_FullSpan, ())


FULL_SPAN = _FullSpan()


def window_to_json(window) -> dict | str:
    return "full" if window is FULL_SPAN else window.to_dict()


def window_from_json(obj) -> Window | _FullSpan:
    return FULL_SPAN if obj == "full" else Window.from_dict(obj)


# --- layered ego networks ---------------------------------------------------

@dataclass(frozen=True)
class LayeredEgoNetwork:
    """Alters of one ego clustered into frequency-ordered rings.

    ``rings[0]`` is R1 (highest mean frequency).  Each ring is a tuple of
    ``(alter_id, contacts_per_year)`` sorted by alter id.  A network with no
    rings represents a window in which the ego had no matching activity.
    """

    ego_id: str
    channel: ChannelSelector
    window: Window | _FullSpan
    rings: tuple[tuple[tuple[str, float], ...], ...]
    _position: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(self.rings) > N_RINGS:
            raise ValueError("at most five rings")
        position = {}
        for i, ring in enumerate(self.rings, start=1):
            if not ring:
                raise ValueError("rings must be non-empty")
            for alter, _ in ring:
                if alter in position:
                    raise ValueError(f"alter {alter} appears in two rings")
                position[alter] = i
        object.__setattr__(self, "_position", position)

    @property
    def k_used(self) -> int:
        return len(self.rings)

    def position(self, alter_id: str) -> int:
        """Ring number of ``alter_id`` or ``OUT`` when absent."""
        return self._position.get(alter_id, OUT)

    def members(self, ring: int) -> frozenset[str]:
        if ring > self.k_used:
            return frozenset()
        return frozenset(a for a, _ in self.rings[ring - 1])

    def circle(self, i: int) -> frozenset[str]:
        return frozenset(a for ring in self.rings[:i] for a, _ in ring)

    @property
    def alters(self) -> frozenset[str]:
        return frozenset(self._position)

    def frequencies(self) -> dict[str, float]:
        return {a: f for ring in self.rings for a, f in ring}

    def ring_sizes(self) -> list[int]:
        return [len(r) for r in self.rings]

    def to_dict(self) -> dict:
        return {
            "ego": self.ego_id,
            "channel": self.channel.value,
            "window": window_to_json(self.window),
            "rings": [[[a, f] for a, f in ring] for ring in self.rings],
        }

    @classmethod
    def from_dict(cls, d: dict) -> LayeredEgoNetwork:
        rings = tuple(tuple((a, float(f)) for a, f in ring) for ring in d["rings"])
        return cls(d["ego"], ChannelSelector(d["channel"]), window_from_json(d["window"]), rings)


def circle_sizes(net: LayeredEgoNetwork) -> list[int]:
    """Cumulative circle sizes ``|C1| .. |C5|`` of a five-ring network."""
    if net.k_used < N_RINGS:
        raise DegenerateNetwork(f"network has {net.k_used} rings, 5 required", ego_id=net.ego_id)
    sizes, total = [], 0
    for n in net.ring_sizes():
        total += n
        sizes.append(total)
    return sizes


def circle_sizes_from_rings(ring_sizes: Sequence[int]) -> list[int]:
    out, total = [], 0
    for n in ring_sizes:
        total += n
        out.append(total)
    return out
