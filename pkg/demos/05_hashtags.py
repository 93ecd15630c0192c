# %% [markdown]
# # Hashtags on ties
#
# A tie is *activated* when its first direct tweet carries a hashtag; that
# hashtag is h_act. For every tie we count how often h_act and the tie's most
# used hashtag h_max appear on the tie and across the whole ego network.

# %%
from egocircles.hashtags import (
    activation_percentage,
    ego_hashtag_stats,
    growth_series,
    layer_hashtag_report,
)
from egocircles.ingestion import build_timelines
from egocircles.layering import build_ego_network
from egocircles.model import ChannelSelector, group_ties
from egocircles.synthgen import SynthConfig, generate

cfg = SynthConfig(n_egos=5, duration_months=24, activation_prob=0.2, seed=8)
timelines = build_timelines(generate(cfg)[0])

stats, nets = [], []
for tl in timelines:
    stats += ego_hashtag_stats(group_ties(tl.direct_events, ChannelSelector.ALL_DIRECT))
    nets.append(build_ego_network(tl))
print(f"activated ties: {activation_percentage(stats):.1f}% (planted 20%)")
example = next(s for s in stats if s.activated)
print(example)

# %% [markdown]
# The per-layer report splits every ring into activated and other ties.

# %%
for row in layer_hashtag_report(nets, stats, "demo"):
    if row.ring in ("R1", "R5", "ALL"):
        print(row.ring, row.group, row.n_ties, row.pct, row.mean_freq)

# %% [markdown]
# Growth series count the new alters and new hashtags an ego picks up each
# month.

# %%
g = growth_series(timelines[0])
print("new alters per month:", g.new_alters[:12], "mean", round(g.mean_new_alters, 2))
