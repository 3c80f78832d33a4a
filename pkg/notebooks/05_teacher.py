# %% [markdown]
# # The scripted teacher
#
# Offline, the teacher bins a large pool of random movements over the
# reachable region and keeps, per grid cell, the movement whose repeated
# noisy executions scattered least: the best replicable demonstration for
# that cell. During a run it interrupts the learner at a fixed period with
# a uniformly drawn demo; the learner registers the pair (emulation) and
# replays the action a few times with small perturbations (imitation).

# %%
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import sgim
from sgim.reaching import DirectExecutor

OUT = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(OUT, exist_ok=True)

cfg = sgim.EnvConfig()
bounds = sgim.action_bounds(cfg)
teacher_cfg = sgim.TeacherConfig()
rng = np.random.default_rng(7)

demos = sgim.build_demo_set(cfg, teacher_cfg, bounds, rng)
print("demonstrations built:", len(demos), "for a", teacher_cfg.demo_grid, "grid")

# %%
pool = rng.uniform(bounds.lower, bounds.upper, size=(20000, 24))
cloud = sgim.simulate_batch(pool, sgim.noiseless(cfg))
pts = np.array([d.outcome for d in demos])
plt.figure(figsize=(5, 5))
plt.plot(cloud[:, 0], cloud[:, 1], ".", ms=1, alpha=0.15, label="random landings")
plt.plot(pts[:, 0], pts[:, 1], "r^", ms=9, label="demonstrations")
plt.gca().set_aspect("equal")
plt.legend()
plt.xlim(-1, 1)
plt.ylim(-1, 1)
plt.title("teaching set spans the reachable region")
plt.tight_layout()
plt.savefig(os.path.join(OUT, "05_demo_set.png"), dpi=120)
plt.close()

# %% [markdown]
# ## One imitation episode
# The demonstration itself costs no movement (it is observed); the replays
# are real movements scattering around the demonstrated landing.

# %%
memory = sgim.Memory()
tree = sgim.RegionTree(sgim.InterestParams())
executor = DirectExecutor(cfg, memory, rng)
comp = sgim.CompetenceParams(origin=tuple(sgim.origin_outcome(cfg)))
demo = sgim.next_demo(demos, rng)
sgim.imitate(demo, memory, tree, executor, teacher_cfg, comp, bounds, rng)
print("memory after one episode:", memory.source_counts())
replays = memory.outcomes()[1:]
plt.figure(figsize=(4, 4))
plt.plot(replays[:, 0], replays[:, 1], "o", ms=5, alpha=0.6, label="imitation replays")
plt.plot(*demo.outcome, "r^", ms=12, label="demonstrated landing")
plt.gca().set_aspect("equal")
plt.legend()
plt.tight_layout()
plt.savefig(os.path.join(OUT, "05_imitation.png"), dpi=120)
plt.close()

# %% [markdown]
# ## Why emulation matters
# Registering the demonstrated landing as a reached goal spikes the interest
# of a region that was uniformly failing, pulling future goals toward it.

# %%
params = sgim.InterestParams(window=8)
tree = sgim.RegionTree(params)
for t in range(8):
    tree.record_attempt(sgim.GoalAttempt(demo.outcome.copy(), np.zeros(2), -1.0, t))
region = tree.leaf_for(demo.outcome)
print("interest while failing:", sgim.interest(region, params.window))
tree.record_attempt(sgim.GoalAttempt(demo.outcome.copy(), demo.outcome.copy(), 0.0, 8))
print("interest after the demonstration lands:", sgim.interest(region, params.window))
