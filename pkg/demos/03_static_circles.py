# %% [markdown]
# # Circle sizes and scaling ratios
#
# Circles are cumulative rings: C3 holds everyone in R1..R3. Across a
# population we summarise each circle size and each ratio of adjacent circles
# with a mean, a normal confidence interval and the variability index
# C = CI width / mean.

# %%
from egocircles.ingestion import build_timelines
from egocircles.layering import build_ego_network
from egocircles.static import population_summary, scaling_ratios, usage_stats
from egocircles.synthgen import SynthConfig, generate

print("ratios of 1/6/15/48/107:", [round(r, 2) for r in scaling_ratios([1, 6, 15, 48, 107])])

events, truth = generate(SynthConfig(n_egos=8, duration_months=36, seed=3))
timelines = build_timelines(events)
nets = [build_ego_network(tl) for tl in timelines]
for s in population_summary(nets).rows():
    print(f"{s.name:6s} mean {s.mean:7.2f}  ±{s.half_width:5.2f}  C={s.c_index:.3f}")

# %% [markdown]
# Usage statistics describe how an ego tweets: the share of direct tweets,
# the split between replies, mentions and retweets, and the ratio between the
# two most used kinds.

# %%
u = usage_stats(timelines[0])
print(f"social {u.pct_social:.1f}%  reply {u.pct_reply:.1f}%  mention {u.pct_mention:.1f}%  "
      f"retweet {u.pct_retweet:.1f}%  F-S {u.fs_ratio:.2f}  {u.tweet_freq:.2f} tweets/day")
