# %% [markdown]
# # Episodic memory and the reliability screen
#
# Every executed movement lands in the memory as an (action, outcome) pair.
# The inverse model works by querying neighbors in outcome space; candidates
# are ranked by distance-to-goal plus the local outcome variance around
# them, so noisy or contradictory neighborhoods lose to reproducible ones.

# %%
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import sgim

OUT = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(OUT, exist_ok=True)

cfg = sgim.EnvConfig()
bounds = sgim.action_bounds(cfg)
rng = np.random.default_rng(1)

memory = sgim.Memory()
actions = rng.uniform(bounds.lower, bounds.upper, size=(2000, 24))
for a, o in zip(actions, sgim.simulate_batch(actions, cfg, rng)):
    memory.insert(sgim.Exemplar(a, o))
print("memory size:", len(memory))

# %% [markdown]
# ## Nearest neighbors of a goal

# %%
goal = np.array([0.3, -0.2])
neighbors = memory.nearest(goal, 6)
for ex, dist in neighbors:
    print("seq %4d  outcome %s  distance %.3f" % (ex.seq, np.round(ex.outcome, 3), dist))

# %% [markdown]
# ## Reliability ranks candidates
# The most reliable candidate is not always the closest one: a slightly
# farther exemplar sitting in a tight, reproducible neighborhood can win.

# %%
cands = memory.nearest(goal, 12)
rows = []
for ex, dist in cands:
    rel = memory.reliability(ex, goal, 6, 0.5)
    rows.append((dist, rel, ex.seq))
rows.sort(key=lambda r: r[1])
print("dist -> reliability (sorted by reliability)")
for dist, rel, seq in rows:
    print("  %.3f -> %.4f   (seq %d)" % (dist, rel, seq))

# %%
outs = memory.outcomes()
plt.figure(figsize=(5, 5))
plt.plot(outs[:, 0], outs[:, 1], ".", ms=2, alpha=0.2)
plt.plot(*goal, "r*", ms=15, label="goal")
best = min(cands, key=lambda p: memory.reliability(p[0], goal, 6, 0.5))[0]
plt.plot(*best.outcome, "gs", ms=10, label="most reliable candidate")
for ex, _ in cands:
    plt.plot(*ex.outcome, "k.", ms=6)
plt.gca().set_aspect("equal")
plt.legend()
plt.xlim(-1, 1)
plt.ylim(-1, 1)
plt.tight_layout()
plt.savefig(os.path.join(OUT, "02_reliability.png"), dpi=120)
plt.close()

# %% [markdown]
# ## Flat-file round trip
# The memory dumps to one decimal-text line per exemplar and loads back
# bit-exactly.

# %%
path = os.path.join(OUT, "02_memory_dump.txt")
memory.dump(path)
loaded = sgim.Memory.load(path)
print("round trip exact:", np.array_equal(loaded.outcomes(), memory.outcomes()))
print("first line:", open(path).readline()[:88], "...")
