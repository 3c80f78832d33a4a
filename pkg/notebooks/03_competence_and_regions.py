# %% [markdown]
# # Competence, interest, and the region tree
#
# A reaching attempt scores in [-1, 0]: the goal/landing distance normalized
# by the goal/origin distance, so near and far goals are judged fairly.
# Regions of task space accumulate attempts; their interest is the absolute
# competence progress over a sliding window, and goal sampling prefers
# interesting regions.

# %%
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import sgim

OUT = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(OUT, exist_ok=True)

params = sgim.CompetenceParams(origin=(0.0, 0.0))
goal = np.array([0.6, 0.0])
finals = np.linspace(-1, 1, 400)
scores = [sgim.competence(goal, np.array([f, 0.0]), params) for f in finals]
plt.figure(figsize=(5, 3))
plt.plot(finals, scores)
plt.axvline(goal[0], color="r", ls="--", label="goal")
plt.axvline(0.0, color="k", ls=":", label="origin")
plt.xlabel("landing x (goal on the x axis)")
plt.ylabel("competence")
plt.legend()
plt.tight_layout()
plt.savefig(os.path.join(OUT, "03_competence.png"), dpi=120)
plt.close()

# %% [markdown]
# ## Interest is progress, not performance
# A region where competences improve scores high; a region stuck at any
# constant level, good or bad, scores zero.

# %%
from sgim.regions import interest_from_competences

stuck_bad = [-1.0] * 20
stuck_good = [-0.05] * 20
improving = list(np.linspace(-1, -0.2, 20))
for name, comps in (("stuck bad", stuck_bad), ("stuck good", stuck_good),
                    ("improving", improving)):
    print("%-10s interest %.3f" % (name, interest_from_competences(comps, 20)))

# %% [markdown]
# ## Splitting separates zones of different learnability
# Feed a single region failing attempts on the left and improving attempts
# on the right: once full, it splits where the interest contrast peaks.

# %%
tree = sgim.RegionTree(sgim.InterestParams())
rng = np.random.default_rng(2)
t = 0
for i in range(26):
    tree.record_attempt(sgim.GoalAttempt(
        np.array([rng.uniform(-0.9, -0.3), rng.uniform(-1, 1)]), np.zeros(2), -1.0, t))
    t += 1
    if i < 25:
        tree.record_attempt(sgim.GoalAttempt(
            np.array([rng.uniform(0.3, 0.9), rng.uniform(-1, 1)]), np.zeros(2),
            -1.0 + (i + 1) / 25, t))
        t += 1
print("leaves after the split:")
for leaf in tree.leaves():
    print("  x in [%+.2f, %+.2f]  attempts %2d  interest %.3f" % (
        leaf.lo[0], leaf.hi[0], len(leaf.attempts),
        sgim.interest(leaf, tree.params.window)))

# %% [markdown]
# ## Goal generation on a live tree
# Goals concentrate in the improving region (mode 1), with some uniform
# coverage of the whole box (mode 2) and perturbations of the worst attempt
# (mode 3).

# %%
rng = np.random.default_rng(3)
goals = np.array([sgim.generate_goal(tree, (0.5, 0.4, 0.1), 20, rng) for _ in range(4000)])
plt.figure(figsize=(5, 5))
plt.plot(goals[:, 0], goals[:, 1], ".", ms=2, alpha=0.3)
for leaf in tree.leaves():
    plt.gca().add_patch(plt.Rectangle(leaf.lo, *(leaf.hi - leaf.lo),
                                      fill=False, ec="r"))
plt.gca().set_aspect("equal")
plt.xlim(-1, 1)
plt.ylim(-1, 1)
plt.title("4000 generated goals over the split tree")
plt.tight_layout()
plt.savefig(os.path.join(OUT, "03_goals.png"), dpi=120)
plt.close()
right = goals[:, 0] > 0
print("fraction of goals in the improving half: %.2f" % right.mean())
