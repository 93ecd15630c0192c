# %% [markdown]
# # From contact frequencies to rings
#
# Contact frequency is the number of direct tweets to an alter per year of
# observation. Rings come from exact one-dimensional k-means on those
# frequencies: R1 holds the most contacted alters.

# %%
import numpy as np

from egocircles.layering import aic_scores, cluster_1d, optimal_partition, select_k_aic

freqs = [52.0, 48.0, 20.0, 18.5, 17.0, 6.0, 5.5, 5.0, 4.0, 1.0, 1.0, 0.8, 0.5]
print("ring labels:", cluster_1d(freqs, 5))

part = optimal_partition(sorted(freqs), 5)
print("boundaries:", part.bounds, "within-cluster SS:", round(part.cost, 4))

# %% [markdown]
# The partition is optimal, not a local search result. Equal frequencies
# always share a ring. AIC picks a cluster count; on point-mass groups it
# finds the number of distinct levels.

# %%
levels = np.repeat([40.0, 12.0, 4.0, 1.0], [2, 4, 8, 16])
print("AIC:", {k: round(v, 2) for k, v in aic_scores(levels, 6).items()})
print("chosen k:", select_k_aic(levels, 6))

# %% [markdown]
# On a real timeline, ``build_ego_network`` does both steps for one channel
# and time window.

# %%
from egocircles.layering import build_ego_network
from egocircles.ingestion import build_timelines
from egocircles.synthgen import SynthConfig, generate

events, _ = generate(SynthConfig(n_egos=1, duration_months=24, seed=1))
net = build_ego_network(build_timelines(events)[0])
print("ring sizes:", net.ring_sizes())
print("top alter:", net.rings[0])
