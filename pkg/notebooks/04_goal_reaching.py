# %% [markdown]
# # Reaching a goal: explore, exploit, refine
#
# Per goal, the learner flips a coin weighted by how far the nearest known
# landing is: far goals trigger random exploration, close ones trigger the
# inverse model (reliability-screened neighbors, Gaussian action blend) and
# a budgeted simplex refinement where every probe is a real movement.

# %%
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import sgim
from sgim.reaching import DirectExecutor, nelder_mead

OUT = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(OUT, exist_ok=True)

cfg = sgim.EnvConfig()
bounds = sgim.action_bounds(cfg)
rng = np.random.default_rng(4)

memory = sgim.Memory()
actions = rng.uniform(bounds.lower, bounds.upper, size=(3000, 24))
for a, o in zip(actions, sgim.simulate_batch(actions, cfg, rng)):
    memory.insert(sgim.Exemplar(a, o))

comp = sgim.CompetenceParams(origin=tuple(sgim.origin_outcome(cfg)))

# %% [markdown]
# ## One reach episode with a generous budget

# %%
tree = sgim.RegionTree(sgim.InterestParams())
executor = DirectExecutor(cfg, memory, rng)
goal = np.array([0.45, 0.35])
before = len(memory)
record = sgim.reach(memory, tree, goal, executor, sgim.ReachingConfig(budget=25),
                    comp, rng, bounds)
print("movements used:", record.movements_used)
print("regimes:", "".join("E" if r == "explore" else "x" for r in record.regime_trace))
print("best landing:", np.round(record.best_final, 3), "for goal", goal)
executed = memory.outcomes()[before:]
plt.figure(figsize=(5, 5))
plt.plot(executed[:, 0], executed[:, 1], "o-", ms=4, alpha=0.6, label="executed landings")
plt.plot(*goal, "r*", ms=16, label="goal")
plt.plot(*record.best_final, "gs", ms=9, label="best landing")
plt.gca().set_aspect("equal")
plt.legend()
plt.tight_layout()
plt.savefig(os.path.join(OUT, "04_reach.png"), dpi=120)
plt.close()

# %% [markdown]
# ## The simplex search on a visible 2-D problem
# The same routine the reacher uses, on the Rosenbrock valley.

# %%
rosen = lambda x: float((1 - x[0]) ** 2 + 100 * (x[1] - x[0] ** 2) ** 2)
trace = []
def traced(x):
    trace.append(np.array(x))
    return rosen(x)
best = nelder_mead(traced, np.array([-1.2, 1.0]), [], sgim.Bounds([-2, -1], [2, 3]),
                   max_evals=300, tol=1e-14)
print("rosenbrock minimum found at", np.round(best, 4), "after", len(trace), "evaluations")
pts = np.array(trace)
xs, ys = np.meshgrid(np.linspace(-2, 2, 200), np.linspace(-1, 3, 200))
zs = (1 - xs) ** 2 + 100 * (ys - xs ** 2) ** 2
plt.figure(figsize=(5, 4))
plt.contour(xs, ys, np.log10(zs + 1e-12), levels=20, linewidths=0.5)
plt.plot(pts[:, 0], pts[:, 1], ".-", ms=3, lw=0.5, alpha=0.7)
plt.plot(1, 1, "r*", ms=14)
plt.title("simplex path to the Rosenbrock minimum")
plt.tight_layout()
plt.savefig(os.path.join(OUT, "04_simplex.png"), dpi=120)
plt.close()

# %% [markdown]
# ## Budget buys precision
# With a warm memory, reaching with a 20-movement budget lands closer than
# single-shot exploitation.

# %%
goals = np.random.default_rng(5).uniform(-0.5, 0.5, size=(60, 2))
for budget in (1, 5, 20):
    mem = sgim.Memory()
    r2 = np.random.default_rng(6)
    acts = r2.uniform(bounds.lower, bounds.upper, size=(3000, 24))
    for a, o in zip(acts, sgim.simulate_batch(acts, cfg, r2)):
        mem.insert(sgim.Exemplar(a, o))
    ex = DirectExecutor(cfg, mem, r2)
    t2 = sgim.RegionTree(sgim.InterestParams())
    dists = [np.linalg.norm(sgim.reach(mem, t2, g, ex, sgim.ReachingConfig(budget=budget),
                                       comp, r2, bounds).best_final - g)
             for g in goals]
    print("budget %2d -> mean best distance %.3f" % (budget, float(np.mean(dists))))
