import itertools

import pytest

from egocircles.model import Channel, InteractionEvent, parse_timestamp

_ids = itertools.count()


def ev(ego="e", alter="a", kind="reply", ts="2015-01-15T00:00:00Z", tags=(), tid=None):
    channel = Channel(kind)
    if channel is Channel.PLAIN:
        alter = None
    t = parse_timestamp(ts) if isinstance(ts, str) else ts
    return InteractionEvent(tid or f"t{next(_ids):08d}", ego, alter, channel, t, tuple(tags))


@pytest.fixture
def make_event():
    return ev
