"""Seeded synthetic interaction logs with planted rings, churn and hashtag behaviour.

Every ego is generated from its own ``numpy.random.SeedSequence(seed,
spawn_key=(ego_index,))`` feeding a PCG64 bit generator, so egos are
independent of each other and of generation order.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import IO, Sequence

import numpy as np

from egocircles.errors import InvalidConfig
from egocircles.model import (
    DIRECT_CHANNELS,
    N_RINGS,
    SECONDS_PER_DAY,
    Channel,
    InteractionEvent,
    days_in_month,
    format_timestamp,
    month_label,
    month_start,
)

PRNG_ALGORITHM = "numpy PCG64, per-ego SeedSequence(entropy=seed, spawn_key=(ego_index,))"
DEFAULT_START_MONTH = 2013 * 12  # 2013-01


@dataclass(frozen=True)
class SynthConfig:
    n_egos: int = 10
    ring_sizes: tuple[int, ...] = (1, 5, 15, 50, 150)
    ring_base_freq: float = 81.0
    decay: float = 3.0
    duration_months: int = 60
    start_month: int = DEFAULT_START_MONTH
    window_months: int = 12
    churn_per_ring: tuple[float, ...] = (0.0,) * N_RINGS
    activation_prob: float = 0.15
    hashtag_reuse_prob: float = 0.3
    background_hashtag_prob: float = 0.05
    hashtag_vocab_size: int = 500
    plain_per_year: float = 365.0
    bursty: bool = False
    burst_prob: float = 0.1
    burst_factor: float = 5.0
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "ring_sizes", tuple(int(s) for s in self.ring_sizes))
        churn = self.churn_per_ring
        if isinstance(churn, (int, float)):
            churn = (float(churn),) * N_RINGS
        object.__setattr__(self, "churn_per_ring", tuple(float(c) for c in churn))
        self.validate()

    def validate(self):
        def bad(msg):
            raise InvalidConfig(msg)

        if self.n_egos < 1:
            bad("n_egos must be >= 1")
        if len(self.ring_sizes) != N_RINGS or min(self.ring_sizes) < 1:
            bad("ring_sizes must be 5 positive integers")
        if len(self.churn_per_ring) != N_RINGS:
            bad("churn_per_ring must have 5 entries")
        for name in ("activation_prob", "hashtag_reuse_prob", "background_hashtag_prob", "burst_prob"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                bad(f"{name} must lie in [0, 1]")
        if not all(0.0 <= c <= 1.0 for c in self.churn_per_ring):
            bad("churn probabilities must lie in [0, 1]")
        if self.decay <= 1:
            bad("decay must be > 1")
        if self.ring_base_freq / self.decay ** (N_RINGS - 1) < 1:
            bad("outermost ring rate ring_base_freq / decay**4 must be >= 1 contact/year")
        if self.duration_months < 1 or self.window_months < 1:
            bad("duration_months and window_months must be positive")
        if self.hashtag_vocab_size < 1:
            bad("hashtag_vocab_size must be >= 1")
        if self.plain_per_year < 0 or self.burst_factor < 1:
            bad("plain_per_year must be >= 0 and burst_factor >= 1")
        if not 0 <= self.seed < 2 ** 64:
            bad("seed must be a 64-bit unsigned integer")

    def ring_rate(self, ring: int) -> float:
        """Planted contacts per year of ring 1..5."""
        return self.ring_base_freq / self.decay ** (ring - 1)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class PlantedTie:
    ring: int
    first_window: int
    last_window: int
    activated: bool = False
    h_act: str | None = None
    n_events: int = 0
    tag_counts: dict[str, int] = field(default_factory=dict)


@dataclass
class GroundTruth:
    config: SynthConfig
    ties: dict[str, dict[str, PlantedTie]]

    def planted_ring(self, ego: str, alter: str, window: int | None = None) -> int | None:
        t = self.ties.get(ego, {}).get(alter)
        if t is None:
            return None
        if window is not None and not t.first_window <= window <= t.last_window:
            return None
        return t.ring

    def to_dict(self) -> dict:
        cfg = self.config
        return {
            "prng": PRNG_ALGORITHM,
            "config": cfg.to_dict(),
            "windows": [month_label(cfg.start_month + w * cfg.window_months)
                        for w in range(_n_blocks(cfg))],
            "egos": {ego: {alter: asdict(t) for alter, t in sorted(ties.items())}
                     for ego, ties in sorted(self.ties.items())},
        }


def _n_blocks(cfg: SynthConfig) -> int:
    return -(-cfg.duration_months // cfg.window_months)


def _ego_id(i: int) -> str:
    return f"ego{i:04d}"


def _generate_ego(cfg: SynthConfig, index: int) -> tuple[list[InteractionEvent], dict[str, PlantedTie]]:
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(cfg.seed, spawn_key=(index,))))
    ego = _ego_id(index)
    counter = 0

    def new_alter():
        nonlocal counter
        counter += 1
        return f"{ego}-a{counter:05d}"

    truth: dict[str, PlantedTie] = {}
    members = []
    for r in range(1, N_RINGS + 1):
        ids = [new_alter() for _ in range(cfg.ring_sizes[r - 1])]
        members.append(ids)
        for a in ids:
            truth[a] = PlantedTie(r, 0, 0)

    # burst multipliers keep the mean rate of a tie at its ring rate
    calm = 1.0 / (1.0 - cfg.burst_prob + cfg.burst_prob * cfg.burst_factor)
    raw: list[tuple[int, str, int]] = []  # (ts, alter, channel index)
    for block in range(_n_blocks(cfg)):
        if block:
            for r in range(N_RINGS):
                p = cfg.churn_per_ring[r]
                keep = []
                for a in members[r]:
                    if p and rng.random() < p:
                        a = new_alter()
                        truth[a] = PlantedTie(r + 1, block, block)
                    keep.append(a)
                members[r] = keep
        for r in range(N_RINGS):
            for a in members[r]:
                truth[a].last_window = block
        first_m = block * cfg.window_months
        last_m = min(first_m + cfg.window_months, cfg.duration_months)
        for m in range(first_m, last_m):
            mi = cfg.start_month + m
            lo, hi = month_start(mi), month_start(mi + 1)
            years = days_in_month(mi) / 365.0
            for r in range(N_RINGS):
                ids = members[r]
                lam = np.full(len(ids), cfg.ring_rate(r + 1) * years)
                if cfg.bursty:
                    burst = rng.random(len(ids)) < cfg.burst_prob
                    lam = lam * calm * np.where(burst, cfg.burst_factor, 1.0)
                counts = rng.poisson(lam)
                total = int(counts.sum())
                if not total:
                    continue
                times = rng.integers(lo, hi, size=total)
                chans = rng.integers(0, len(DIRECT_CHANNELS), size=total)
                owners = np.repeat(np.arange(len(ids)), counts)
                raw.extend(zip(times.tolist(), (ids[o] for o in owners.tolist()), chans.tolist()))

    n_plain = int(rng.poisson(cfg.plain_per_year * (month_start(cfg.start_month + cfg.duration_months)
                                                    - month_start(cfg.start_month)) / SECONDS_PER_DAY / 365.0))
    plain_times = rng.integers(month_start(cfg.start_month), month_start(cfg.start_month + cfg.duration_months),
                               size=n_plain).tolist()

    rows = sorted([(t, 0, a, c) for t, a, c in raw] + [(t, 1, "", 0) for t in plain_times])
    vocab = [f"tag{i:04d}" for i in range(cfg.hashtag_vocab_size)]
    activated_tag: dict[str, str | None] = {}
    events = []
    for seq, (t, is_plain, alter, chan) in enumerate(rows):
        tid = f"{ego}-t{seq:08d}"
        tags: list[str] = []
        if is_plain:
            if rng.random() < cfg.background_hashtag_prob:
                tags.append(vocab[rng.integers(len(vocab))])
            events.append(InteractionEvent(tid, ego, None, Channel.PLAIN, t, tuple(tags)))
            continue
        tie = truth[alter]
        if alter not in activated_tag:
            if rng.random() < cfg.activation_prob:
                h = vocab[rng.integers(len(vocab))]
                tie.activated, tie.h_act = True, h
                tags.append(h)
            activated_tag[alter] = tie.h_act
        else:
            h = activated_tag[alter]
            if h is not None and rng.random() < cfg.hashtag_reuse_prob:
                tags.append(h)
            if rng.random() < cfg.background_hashtag_prob:
                extra = vocab[rng.integers(len(vocab))]
                if extra not in tags:
                    tags.append(extra)
        tie.n_events += 1
        for tag in tags:
            tie.tag_counts[tag] = tie.tag_counts.get(tag, 0) + 1
        events.append(InteractionEvent(tid, ego, alter, DIRECT_CHANNELS[chan], t, tuple(tags)))
    return events, truth


def generate(config: SynthConfig) -> tuple[list[InteractionEvent], GroundTruth]:
    """Generate all egos' events (sorted like :func:`parse_events` output) and the planted truth."""
    config.validate()
    events: list[InteractionEvent] = []
    ties = {}
    for i in range(config.n_egos):
        evs, truth = _generate_ego(config, i)
        events.extend(evs)
        ties[_ego_id(i)] = truth
    events.sort(key=InteractionEvent.sort_key)
    return events, GroundTruth(config, ties)


def event_record(e: InteractionEvent) -> dict:
    return {"tweet_id": e.tweet_id, "ego": e.ego_id, "kind": e.channel.value, "ts": format_timestamp(e.timestamp),
            "alters": [] if e.alter_id is None else [e.alter_id], "hashtags": list(e.hashtags)}


def write_jsonl(events: Sequence[InteractionEvent], fh: IO[str]) -> None:
    """Write events in the line-delimited ingestion format."""
    for e in events:
        fh.write(json.dumps(event_record(e), ensure_ascii=False, separators=(",", ":")))
        fh.write("\n")


def write_truth(truth: GroundTruth, fh: IO[str]) -> None:
    json.dump(truth.to_dict(), fh, indent=2, sort_keys=True)
    fh.write("\n")
