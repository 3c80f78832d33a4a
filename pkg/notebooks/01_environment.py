# %% [markdown]
# # The synthetic throwing arm
#
# A movement is 24 numbers: six joints, each following a quadratic Bezier
# angle profile (start, mid, end, duration). The first joint swings the
# working plane around the vertical axis; the rest articulate inside it.
# The landing point is the ground projection of the end effector at the
# final time plus a velocity-proportional "fling", clamped to the task box.

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
rng = np.random.default_rng(0)
print("normalized link lengths:", np.round(cfg.link_lengths, 3))
print("origin point (rest pose lands at):", sgim.origin_outcome(cfg))

# %% [markdown]
# ## One joint profile
# The Bezier pulls the angle from its start value toward the end value,
# bending toward the middle control point.

# %%
primitive = (0.0, 1.2, -0.4, 1.5)
ts = np.linspace(0, primitive[3], 200)
qs = [sgim.bezier_eval(primitive, t) for t in ts]
plt.figure(figsize=(5, 3))
plt.plot(ts, qs)
plt.xlabel("time [s]")
plt.ylabel("joint angle [rad]")
plt.title("quadratic Bezier angle profile (0 -> 1.2 -> -0.4)")
plt.tight_layout()
plt.savefig(os.path.join(OUT, "01_bezier.png"), dpi=120)
plt.close()

# %% [markdown]
# ## Where random flailing lands
# Most random movements land in a small central blob; the far field is only
# reached by coordinated movements. That asymmetry is what makes deliberate
# goal-directed exploration pay off.

# %%
actions = rng.uniform(bounds.lower, bounds.upper, size=(20000, 24))
outs = sgim.simulate_batch(actions, sgim.noiseless(cfg))
plt.figure(figsize=(5, 5))
plt.plot(outs[:, 0], outs[:, 1], ".", ms=1, alpha=0.25)
plt.gca().set_aspect("equal")
plt.xlim(-1, 1)
plt.ylim(-1, 1)
plt.title("noiseless landings of 20k random movements")
plt.tight_layout()
plt.savefig(os.path.join(OUT, "01_random_cloud.png"), dpi=120)
plt.close()
r = np.linalg.norm(outs, axis=1)
print("landing radius quantiles (50/90/99.9%%):", np.quantile(r, [0.5, 0.9, 0.999]).round(2))

# %% [markdown]
# ## Sensor noise
# Executing the same movement repeatedly scatters the recorded landing with
# sigma = 0.073 per axis.

# %%
action = actions[0]
reps = sgim.simulate_batch(np.tile(action, (200, 1)), cfg, rng)
clean = sgim.simulate(action, sgim.noiseless(cfg))
plt.figure(figsize=(4, 4))
plt.plot(reps[:, 0], reps[:, 1], ".", ms=3, alpha=0.5, label="noisy executions")
plt.plot(*clean, "r*", ms=14, label="noiseless landing")
plt.gca().set_aspect("equal")
plt.legend()
plt.tight_layout()
plt.savefig(os.path.join(OUT, "01_noise.png"), dpi=120)
plt.close()
print("per-axis std of repeats:", reps.std(axis=0).round(3))

# %% [markdown]
# ## Redundancy
# The 24-to-2 map is heavily many-to-one: very different movements can land
# in the same spot.

# %%
target = np.array([0.25, 0.1])
d = np.linalg.norm(outs - target, axis=1)
near = np.argsort(d)[:2]
print("two movements landing within", d[near].max().round(3), "of", target)
print("distance between the two actions:",
      np.linalg.norm(actions[near[0]] - actions[near[1]]).round(2))
