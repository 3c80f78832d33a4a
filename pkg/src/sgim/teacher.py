"""Scripted teacher: builds a fixed demonstration set, hands out demos, imitates.

The teacher prepares its demonstrations offline by binning a large pool of
random movements over the reachable region and keeping, per grid cell, the
candidate whose repeated noisy executions showed the smallest outcome
variance (the best replicable movement for that cell). During a run it
interrupts the learner at a fixed period with a uniformly drawn demo; the
learner registers the demonstrated pair outright (emulation) and then
replays the demonstrated action a few times with small bounded perturbations
(imitation).
"""

from dataclasses import dataclass

import numpy as np

from .env import noiseless, simulate, simulate_batch
from .memory import DEMONSTRATION, Exemplar
from .regions import GoalAttempt, competence


@dataclass
class Demonstration:
    action: np.ndarray
    outcome: np.ndarray  # noiseless expected landing point

    def __post_init__(self):
        self.action = np.asarray(self.action, dtype=float)
        self.outcome = np.asarray(self.outcome, dtype=float)


@dataclass
class TeacherConfig:
    period: int = 150            # one demonstration every this many movements
    demo_grid: tuple = (7, 4)    # cells over the reachable region
    screening_reps: int = 10     # noisy executions per screened candidate
    candidates_per_cell: int = 10
    imitation_reps: int = 8      # perturbed replays per demonstration
    imitation_spread: float = 0.05  # perturbation bound, fraction of each parameter range
    demo_pool_size: int = 20000

    def __post_init__(self):
        if self.period < 1:
            raise ValueError("period must be >= 1")
        if self.imitation_spread <= 0:
            raise ValueError("imitation_spread must be positive")
        if self.imitation_reps < 0 or self.screening_reps < 1 or self.candidates_per_cell < 1:
            raise ValueError("bad teacher counts")


def build_demo_set(env_cfg, cfg, bounds, rng, reachable_box=None, pool=None,
                   return_details=False):
    """One reliability-screened demonstration per occupied grid cell.

    A pool of random actions is landed noiselessly and binned on the demo
    grid over the reachable box (by default the pool's own bounding box).
    In each nonempty cell up to candidates_per_cell actions are executed
    screening_reps times with noise; the one with the smallest mean per-axis
    outcome variance wins (ties to the earliest candidate). Cells nobody
    landed in are skipped.
    """
    if pool is None:
        pool = rng.uniform(bounds.lower, bounds.upper, size=(cfg.demo_pool_size, bounds.dim))
    else:
        pool = np.asarray(pool, dtype=float)
    clean = noiseless(env_cfg)
    outcomes = simulate_batch(pool, clean)
    if reachable_box is None:
        lo, hi = outcomes.min(axis=0), outcomes.max(axis=0)
    else:
        lo, hi = (np.asarray(v, dtype=float) for v in reachable_box)

    nx, ny = cfg.demo_grid
    width = np.maximum(hi - lo, 1e-12)
    ix = np.clip(((outcomes[:, 0] - lo[0]) / width[0] * nx).astype(int), 0, nx - 1)
    iy = np.clip(((outcomes[:, 1] - lo[1]) / width[1] * ny).astype(int), 0, ny - 1)
    inside = np.all((outcomes >= lo) & (outcomes <= hi), axis=1)
    cell = ix * ny + iy

    demos = []
    details = []
    for c in range(nx * ny):
        members = np.flatnonzero(inside & (cell == c))
        if members.size == 0:
            continue
        candidates = members[: cfg.candidates_per_cell]
        variances = np.empty(candidates.size)
        for j, pi in enumerate(candidates):
            reps = np.tile(pool[pi], (cfg.screening_reps, 1))
            landed = simulate_batch(reps, env_cfg, rng)
            # shift by the first landing: identical (noiseless) repetitions
            # then give exactly zero, keeping the lowest-index tie-break exact
            variances[j] = (landed - landed[0]).var(axis=0).mean()
        winner = int(np.argmin(variances))  # argmin keeps the earliest on ties
        action = pool[candidates[winner]].copy()
        demos.append(Demonstration(action, simulate(action, clean)))
        details.append({"cell": c, "candidates": candidates.copy(), "variances": variances, "winner": winner})
    if return_details:
        return demos, details
    return demos


def next_demo(demo_set, rng):
    """Uniform random demonstration, independent of learner state."""
    if not demo_set:
        raise ValueError("demonstration set is empty")
    return demo_set[int(rng.integers(len(demo_set)))]


def imitate(demo, memory, tree, executor, cfg, competence_params, bounds, rng):
    """Register the demonstration, then replay it with small perturbations.

    Emulation: the demonstrated pair enters the memory as-is (no movement
    spent) and its outcome is recorded in the region tree as a reached goal.
    Imitation: imitation_reps perturbed replays are executed, memorized, and
    recorded in the tree as attempts toward the demonstrated outcome. Replays
    stop early if the executor has no movements left.
    """
    memory.insert(Exemplar(demo.action.copy(), demo.outcome.copy(), DEMONSTRATION))
    if tree is not None:
        tree.record_attempt(GoalAttempt(
            goal=demo.outcome.copy(), final=demo.outcome.copy(),
            competence=0.0, t=executor.count,
        ))
    for _ in range(cfg.imitation_reps):
        if executor.remaining() <= 0:
            break
        action = perturbed_replay(demo, cfg, bounds, rng)
        outcome = executor.execute(action, goal=demo.outcome, regime="imitate", phase="imitation")
        if tree is not None:
            tree.record_attempt(GoalAttempt(
                goal=demo.outcome.copy(), final=outcome,
                competence=competence(demo.outcome, outcome, competence_params),
                t=executor.count,
            ))


def perturbed_replay(demo, cfg, bounds, rng):
    """One imitation-style perturbation of a demonstrated action."""
    spread = cfg.imitation_spread * bounds.span
    return bounds.clamp(demo.action + rng.uniform(-spread, spread))


def save_demo_set(demos, path):
    """One line per demonstration: a1..a24, y1, y2 (full precision)."""
    with open(path, "w") as fh:
        for demo in demos:
            fields = [repr(float(v)) for v in demo.action]
            fields += [repr(float(v)) for v in demo.outcome]
            fh.write(",".join(fields) + "\n")


def load_demo_set(path, action_dim=24):
    demos = []
    with open(path) as fh:
        for lineno, line in enumerate(fh):
            line = line.strip()
            if not line:
                continue
            parts = [float(v) for v in line.split(",")]
            if len(parts) != action_dim + 2:
                raise ValueError("line %d: expected %d fields" % (lineno + 1, action_dim + 2))
            demos.append(Demonstration(np.array(parts[:action_dim]), np.array(parts[action_dim:])))
    return demos
