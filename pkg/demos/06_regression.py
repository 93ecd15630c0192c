# %% [markdown]
# # Explaining contact frequency with hashtag use
#
# ``ols_fit`` is ordinary least squares with an intercept, solved by QR.
# Constant and duplicated predictor columns are dropped and reported.

# %%
import numpy as np

from egocircles.regression import ols_fit

rng = np.random.default_rng(0)
X = rng.normal(size=(200, 3))
y = 1.5 + X @ [2.0, -1.0, 0.0] + rng.normal(scale=0.5, size=200)
m = ols_fit(X, y, ["a", "b", "c"])
print("coefficients:", np.round(m.coefficients, 3), "intercept:", round(m.intercept, 3))
print("R²:", round(m.r_squared, 4), "signs:", m.signs())

# %% [markdown]
# ``ring_regressions`` fits one model per sample, activation group and ring
# (plus all rings together) and reports R² for each cell. Cells with too few
# ties are left empty.

# %%
from egocircles.hashtags import ego_hashtag_stats
from egocircles.ingestion import build_timelines
from egocircles.layering import build_ego_network
from egocircles.model import ChannelSelector, group_ties
from egocircles.regression import RING_COLUMNS, ring_regressions, tie_observations
from egocircles.synthgen import SynthConfig, generate

timelines = build_timelines(generate(SynthConfig(n_egos=6, duration_months=24, activation_prob=0.3,
                                                 hashtag_reuse_prob=0.6, seed=2))[0])
obs = []
for tl in timelines:
    stats = ego_hashtag_stats(group_ties(tl.direct_events, ChannelSelector.ALL_DIRECT))
    obs += tie_observations([build_ego_network(tl)], stats, "synthetic")
table = ring_regressions(obs)
for group in ("activated", "not_activated"):
    cells = [table.r_squared("synthetic", group, col) for col in RING_COLUMNS]
    print(f"{group:14s}", " ".join("  -  " if v is None else f"{v:.2f}" for v in cells))
