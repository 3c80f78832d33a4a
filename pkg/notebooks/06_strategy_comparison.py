# %% [markdown]
# # Four strategies, one arm
#
# A reduced-scale rerun of the headline comparison: pure random exploration,
# demonstrations only, autonomous goal babbling, and goal babbling with a
# teacher. Full-scale runs (5000 movements, 12 seeds) live in the acceptance
# suite; this script trades statistical power for a quick look.

# %%
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import sgim

OUT = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(OUT, exist_ok=True)

config = sgim.ExperimentConfig(total_movements=2000, eval_every=250,
                               benchmark_pool_size=30000)
benchmark = sgim.experiment.default_benchmark(config)
demos = sgim.experiment.default_demo_set(config)
print("benchmark points:", len(benchmark.points), " demonstrations:", len(demos))

# %%
runs = {}
for strategy in sgim.STRATEGIES:
    runs[strategy] = [sgim.run_strategy(strategy, config, seed, benchmark, demos)
                      for seed in (0, 1, 2)]
    errs = [r.checkpoints[-1].mean_error for r in runs[strategy]]
    print("%-15s final mean error: %s" % (strategy, np.round(errs, 3)))

# %% [markdown]
# ## Learning curves

# %%
plt.figure(figsize=(6, 4))
for strategy, rs in runs.items():
    xs = [cp.movement_count for cp in rs[0].checkpoints]
    ys = np.median([[cp.mean_error for cp in r.checkpoints] for r in rs], axis=0)
    plt.plot(xs, ys, "o-", ms=3, label=strategy)
plt.xlabel("movements")
plt.ylabel("median mean distance to benchmark")
plt.legend()
plt.tight_layout()
plt.savefig(os.path.join(OUT, "06_curves.png"), dpi=120)
plt.close()

# %% [markdown]
# ## Where each strategy put its hook

# %%
fig, axes = plt.subplots(1, 4, figsize=(14, 3.6), sharex=True, sharey=True)
for ax, (strategy, rs) in zip(axes, runs.items()):
    outs = np.array([e.outcome for e in rs[0].events])
    ax.plot(outs[:, 0], outs[:, 1], ".", ms=1.5, alpha=0.3)
    ax.set_title("%s (%d cells)" % (strategy, int((rs[0].coverage[-1][1] > 0).sum())))
    ax.set_aspect("equal")
    ax.set_xlim(-1, 1)
    ax.set_ylim(-1, 1)
plt.tight_layout()
plt.savefig(os.path.join(OUT, "06_coverage.png"), dpi=120)
plt.close()

# %% [markdown]
# ## Exported artifacts
# The same run logs the experiment harness writes: errors.csv, events.csv,
# coverage.csv, regions.txt.

# %%
export_dir = os.path.join(OUT, "06_export")
sgim.export_runs([rs[0] for rs in runs.values()], export_dir)
print("exported:", sorted(os.listdir(export_dir)))
print(open(os.path.join(export_dir, "errors.csv")).readline().strip())
