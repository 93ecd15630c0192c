# %% [markdown]
# # Reading an interaction log
#
# Events arrive as one JSON object per line. Each names the ego, the kind of
# tweet (reply, mention, retweet or plain), a UTC timestamp, the addressed
# alters and the hashtags. Every field is required. Bad lines are reported
# and skipped.

# %%
from egocircles.ingestion import build_timelines, filter_accounts, parse_events

raw = b"""\
{"tweet_id": "1", "ego": "anna", "kind": "reply", "ts": "2014-01-03T10:00:00Z", "alters": ["bob"], "hashtags": ["#EU"]}
{"tweet_id": "2", "ego": "anna", "kind": "mention", "ts": "2014-01-04T09:30:00Z", "alters": ["bob", "cy"], "hashtags": []}
{"tweet_id": "3", "ego": "anna", "kind": "plain", "ts": "2014-09-01T12:00:00Z", "alters": [], "hashtags": ["Vote"]}
{"tweet_id": "4", "ego": "anna", "kind": "reply", "alters": ["bob"], "hashtags": []}
not json at all
"""
events, problems = parse_events(raw)
for e in events:
    print(e.tweet_id, e.channel.value, e.alter_id, e.hashtags)
for p in problems:
    print("line", p.line, "->", p.reason)

# %% [markdown]
# A mention of two alters becomes two events sharing a tweet id. Hashtags are
# case-folded and lose their leading ``#``.
#
# Anna's account covers eight months but only three direct tweets, so the
# filter rejects it.
#
# Timelines bucket an ego's events by calendar month. The account filter
# keeps egos active for at least six months whose direct-tweet rate reaches
# one every three days in at least half of their months.

# %%
timelines = build_timelines(events)
kept, rejected = filter_accounts(timelines)
print("kept:", [t.ego_id for t in kept])
print("rejected:", [(ego, reason.value) for ego, reason in rejected])
