"""Reaching a single goal: regime choice, local inverse model, simplex refinement.

Given a goal, the learner alternates two regimes. Exploration executes a
uniformly random action. Exploitation queries the memory: it short-lists the
nearest exemplars to the goal, screens them by reliability (distance plus
local outcome variance), blends the actions around the most reliable one
with Gaussian weights, executes the blend, and refines it with a
budget-capped Nelder-Mead search whose every probe is a real executed
movement. The probability of exploring equals the rescaled distance between
the goal and the closest outcome already in memory.
"""

from dataclasses import dataclass, field

import numpy as np

from .env import simulate
from .memory import AUTONOMOUS, IMITATION, EmptyMemoryError, Exemplar, Memory
from .regions import GoalAttempt, competence


@dataclass
class ReachingConfig:
    n_candidates: int = 6       # short-list size around the goal
    k_neighbors: int = 6        # local neighborhood for variance and blending
    variance_weight: float = 0.5
    kernel_width: float = 0.25  # Gaussian blend bandwidth in task space
    simplex_max_evals: int = 20
    simplex_tol: float = 1e-3
    budget: int = 2             # movements allotted per goal

    def __post_init__(self):
        if self.n_candidates < 1 or self.k_neighbors < 2:
            raise ValueError("need n_candidates >= 1 and k_neighbors >= 2")
        if self.budget < 1:
            raise ValueError("budget must be >= 1")
        if self.simplex_tol <= 0 or self.kernel_width <= 0:
            raise ValueError("simplex_tol and kernel_width must be positive")


@dataclass
class ReachingOutcomeRecord:
    goal: np.ndarray
    best_final: np.ndarray
    best_action: np.ndarray
    movements_used: int
    regime_trace: list = field(default_factory=list)


class _OutOfMovements(Exception):
    pass


class _SearchStop(Exception):
    pass


def choose_regime(memory, goal, rng, diameter):
    """'explore' with probability equal to the rescaled distance between the
    goal and the closest outcome in memory, else 'exploit'. An empty memory
    always explores."""
    if len(memory) == 0:
        return "explore"
    _, dist = memory.nearest_indices(goal, 1)
    p_explore = float(dist[0]) / diameter
    return "explore" if rng.random() < p_explore else "exploit"


def explore_action(rng, bounds):
    """Uniform random action within bounds."""
    return bounds.sample(rng)


def _exploit_with_neighbors(memory, goal, cfg, bounds):
    """Blended action for the goal plus the neighbor actions it was built from."""
    if len(memory) == 0:
        raise EmptyMemoryError("exploitation needs a nonempty memory")
    goal = np.asarray(goal, dtype=float)
    shortlist = memory.nearest(goal, cfg.n_candidates)
    best = min(
        shortlist,
        key=lambda pair: (memory.reliability(pair[0], goal, cfg.k_neighbors, cfg.variance_weight), pair[0].seq),
    )[0]
    idx, _ = memory.nearest_indices(best.outcome, cfg.k_neighbors)
    neighbor_actions = memory.actions()[idx].copy()
    neighbor_outcomes = memory.outcomes()[idx]
    d2 = ((neighbor_outcomes - goal) ** 2).sum(axis=1)
    z = (d2 - d2.min()) / (2.0 * cfg.kernel_width ** 2)
    weights = np.exp(-z)
    weights /= weights.sum()
    blended = weights @ neighbor_actions
    return bounds.clamp(blended), list(neighbor_actions)


def exploit_action(memory, goal, cfg, bounds):
    return _exploit_with_neighbors(memory, goal, cfg, bounds)[0]


def nelder_mead(objective, initial, neighbors, bounds, max_evals, tol,
                initial_value=None, stop_below=None):
    """Nelder-Mead on a box, budgeted by objective evaluations.

    The simplex starts at `initial` plus the given neighbor points, padded
    with 0.05 axis perturbations when neighbors run short; every candidate
    is clamped into bounds before evaluation. Standard coefficients
    (reflection 1, expansion 2, contraction 0.5, shrink 0.5). Stops when the
    simplex objective spread drops below tol, when max_evals evaluations
    have been spent, or when a value falls below stop_below; always returns
    the best point evaluated so far (`initial` if nothing was evaluated).

    Pass initial_value when the objective of `initial` is already known, to
    avoid re-evaluating it.
    """
    x0 = bounds.clamp(np.asarray(initial, dtype=float))
    n = x0.size
    verts = [x0]
    for i in range(n):
        if i < len(neighbors):
            v = np.asarray(neighbors[i], dtype=float)
        else:
            v = x0.copy()
            v[i] += 0.05
        verts.append(bounds.clamp(v))

    best_x = x0
    best_f = np.inf if initial_value is None else float(initial_value)
    evals = 0

    def feval(x):
        nonlocal evals, best_x, best_f
        if evals >= max_evals:
            raise _SearchStop
        value = float(objective(x))
        evals += 1
        if value < best_f:
            best_x, best_f = x, value
        if stop_below is not None and value < stop_below:
            raise _SearchStop
        return value

    try:
        fvals = []
        for j, v in enumerate(verts):
            if j == 0 and initial_value is not None:
                fvals.append(float(initial_value))
            else:
                fvals.append(feval(v))
        verts = np.array(verts)
        fvals = np.array(fvals)
        while True:
            order = np.argsort(fvals, kind="stable")
            verts = verts[order]
            fvals = fvals[order]
            if fvals[-1] - fvals[0] < tol:
                break
            centroid = verts[:-1].mean(axis=0)
            reflected = bounds.clamp(centroid + (centroid - verts[-1]))
            f_r = feval(reflected)
            if f_r < fvals[0]:
                expanded = bounds.clamp(centroid + 2.0 * (centroid - verts[-1]))
                f_e = feval(expanded)
                if f_e < f_r:
                    verts[-1], fvals[-1] = expanded, f_e
                else:
                    verts[-1], fvals[-1] = reflected, f_r
            elif f_r < fvals[-2]:
                verts[-1], fvals[-1] = reflected, f_r
            else:
                shrink = False
                if f_r < fvals[-1]:
                    contracted = bounds.clamp(centroid + 0.5 * (reflected - centroid))
                    f_c = feval(contracted)
                    if f_c <= f_r:
                        verts[-1], fvals[-1] = contracted, f_c
                    else:
                        shrink = True
                else:
                    contracted = bounds.clamp(centroid + 0.5 * (verts[-1] - centroid))
                    f_c = feval(contracted)
                    if f_c < fvals[-1]:
                        verts[-1], fvals[-1] = contracted, f_c
                    else:
                        shrink = True
                if shrink:
                    for i in range(1, n + 1):
                        verts[i] = bounds.clamp(verts[0] + 0.5 * (verts[i] - verts[0]))
                        fvals[i] = feval(verts[i].copy())
    except _SearchStop:
        pass
    return np.array(best_x, dtype=float, copy=True)


class DirectExecutor:
    """Barebones movement executor: simulate, memorize, count."""

    def __init__(self, env_cfg, memory, rng, limit=None):
        self.env_cfg = env_cfg
        self.memory = memory
        self.rng = rng
        self.limit = limit
        self.count = 0

    def remaining(self):
        if self.limit is None:
            return 1 << 30
        return self.limit - self.count

    def execute(self, action, goal=None, regime="explore", phase="autonomous"):
        action = np.asarray(action, dtype=float)
        outcome = simulate(action, self.env_cfg, self.rng)
        source = IMITATION if phase == "imitation" else AUTONOMOUS
        self.memory.insert(Exemplar(action.copy(), outcome, source))
        self.count += 1
        return outcome


def reach(memory, tree, goal, executor, cfg, competence_params, rng, bounds):
    """Spend up to cfg.budget movements trying to land on the goal.

    Each movement goes through the executor (which memorizes it); the
    attempt ends early once the goal is reached within tolerance, or when
    the executor runs out of globally allotted movements. The attempt's
    best landing point is recorded into the region tree.
    """
    if cfg.budget < 1:
        raise ValueError("budget must be >= 1")
    goal = np.asarray(goal, dtype=float)
    origin = np.asarray(competence_params.origin, dtype=float)
    reach_dist = abs(competence_params.tolerance) * float(np.linalg.norm(goal - origin))

    used = 0
    regimes = []
    best_action = None
    best_final = None
    best_dist = np.inf

    def run_one(action, regime):
        nonlocal used, best_action, best_final, best_dist
        action = np.array(action, dtype=float, copy=True)
        outcome = executor.execute(action, goal=goal, regime=regime, phase="autonomous")
        used += 1
        regimes.append(regime)
        d = float(np.linalg.norm(outcome - goal))
        if d < best_dist:
            best_action, best_final, best_dist = action, outcome, d
        return outcome, d

    while used < cfg.budget and executor.remaining() > 0:
        if best_final is not None and competence(goal, best_final, competence_params) == 0.0:
            break
        if choose_regime(memory, goal, rng, competence_params.diameter) == "explore":
            run_one(explore_action(rng, bounds), "explore")
            continue
        blended, neighbor_actions = _exploit_with_neighbors(memory, goal, cfg, bounds)
        _, d0 = run_one(blended, "exploit")
        if competence(goal, best_final, competence_params) == 0.0:
            continue
        room = min(cfg.simplex_max_evals, cfg.budget - used)
        if room <= 0:
            continue

        def objective(x):
            if executor.remaining() <= 0:
                raise _OutOfMovements
            _, d = run_one(np.asarray(x, dtype=float), "exploit")
            return d

        try:
            nelder_mead(objective, blended, neighbor_actions, bounds,
                        max_evals=room, tol=cfg.simplex_tol,
                        initial_value=d0, stop_below=reach_dist)
        except _OutOfMovements:
            pass

    if best_final is not None and tree is not None:
        tree.record_attempt(GoalAttempt(
            goal=goal.copy(),
            final=best_final.copy(),
            competence=competence(goal, best_final, competence_params),
            t=executor.count,
        ))
    return ReachingOutcomeRecord(goal, best_final, best_action, used, regimes)
