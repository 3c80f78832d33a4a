import numpy as np
import pytest
from scipy.optimize import minimize

import sgim
from sgim.env import Bounds
from sgim.reaching import DirectExecutor, _exploit_with_neighbors, nelder_mead
from conftest import warm_memory
from oracles import blend_oracle, knn_bruteforce, reliability_oracle

CFG = sgim.ReachingConfig()
COMP = sgim.CompetenceParams(tolerance=-0.05, origin=(0.0, 0.0))


def mem_with(points, actions=None):
    memory = sgim.Memory()
    for i, p in enumerate(points):
        a = np.zeros(24) if actions is None else np.asarray(actions[i], float)
        memory.insert(sgim.Exemplar(a, np.asarray(p, float)))
    return memory


# regime choice ----------------------------------------------------------


def test_choose_regime_empty_memory_explores():
    rng = np.random.default_rng(0)
    assert sgim.choose_regime(sgim.Memory(), (0, 0), rng, COMP.diameter) == "explore"


def test_choose_regime_exact_match_exploits():
    memory = mem_with([(0.2, 0.2)])
    rng = np.random.default_rng(1)
    for _ in range(50):
        assert sgim.choose_regime(memory, (0.2, 0.2), rng, COMP.diameter) == "exploit"


def test_choose_regime_frequency():
    # nearest outcome at rescaled distance 0.3 -> explore rate 0.30 +- 0.02
    dist = 0.3 * COMP.diameter
    memory = mem_with([(0.0, 0.0)])
    rng = np.random.default_rng(2)
    goal = (dist, 0.0)
    hits = sum(sgim.choose_regime(memory, goal, rng, COMP.diameter) == "explore"
               for _ in range(10000))
    assert abs(hits / 10000 - 0.3) < 0.02


# explore ----------------------------------------------------------------


def test_explore_action_collapsed_bounds():
    point = np.linspace(0.5, 2.0, 24)
    bounds = Bounds(point, point)
    rng = np.random.default_rng(3)
    assert np.array_equal(sgim.explore_action(rng, bounds), point)


def test_explore_action_uniform_means(bounds):
    rng = np.random.default_rng(4)
    draws = np.array([sgim.explore_action(rng, bounds) for _ in range(10000)])
    assert np.all(draws >= bounds.lower) and np.all(draws <= bounds.upper)
    mid = (bounds.lower + bounds.upper) / 2
    se = bounds.span / np.sqrt(12 * 10000)
    assert np.all(np.abs(draws.mean(axis=0) - mid) < 3 * se)


# exploit ----------------------------------------------------------------


def test_exploit_identical_exemplars_returns_that_action(bounds):
    action = np.linspace(-1, 1, 24) * 0.3 + 1.0
    memory = mem_with([(0.4, 0.4)] * 6, [action] * 6)
    got = sgim.exploit_action(memory, (0.4, 0.4), CFG, bounds)
    assert np.allclose(got, bounds.clamp(action), atol=1e-12)


def test_exploit_equidistant_pair_blends_midpoint(bounds):
    a1 = np.full(24, 1.0)
    a2 = np.full(24, 1.2)
    memory = mem_with([(0.1, 0.0), (-0.1, 0.0)], [a1, a2])
    got = sgim.exploit_action(memory, (0.0, 0.0), sgim.ReachingConfig(k_neighbors=2), bounds)
    assert np.allclose(got, np.full(24, 1.1), atol=1e-12)


def test_exploit_empty_memory_raises(bounds):
    with pytest.raises(sgim.EmptyMemoryError):
        sgim.exploit_action(sgim.Memory(), (0, 0), CFG, bounds)


def exploit_oracle(pts, acts, goal, cfg):
    """Steps (shortlist, screen, neighborhood, blend) written independently."""
    shortlist = knn_bruteforce(pts, goal, cfg.n_candidates)
    rels = [(reliability_oracle(pts, pts[i], goal, cfg.k_neighbors, cfg.variance_weight), i)
            for i in shortlist]
    best = min(rels)[1]
    hood = knn_bruteforce(pts, pts[best], cfg.k_neighbors)
    return blend_oracle([acts[i] for i in hood], [pts[i] for i in hood], goal,
                        cfg.kernel_width)


def test_exploit_matches_step_by_step_oracle(bounds):
    rng = np.random.default_rng(5)
    pts = rng.uniform(-1, 1, size=(200, 2)).tolist()
    acts = rng.uniform(bounds.lower, bounds.upper, size=(200, 24)).tolist()
    memory = mem_with(pts, acts)
    for _ in range(25):
        goal = rng.uniform(-1, 1, 2)
        got = sgim.exploit_action(memory, goal, CFG, bounds)
        want = np.asarray(exploit_oracle(pts, acts, goal.tolist(), CFG))
        assert np.allclose(got, bounds.clamp(want), rtol=1e-9, atol=1e-12)


def test_exploit_output_within_bounds(env_cfg, bounds):
    memory = warm_memory(env_cfg, 300, seed=6)
    rng = np.random.default_rng(7)
    for _ in range(50):
        action = sgim.exploit_action(memory, rng.uniform(-1, 1, 2), CFG, bounds)
        assert bounds.contains(action)


# nelder-mead ------------------------------------------------------------


def test_nelder_mead_quadratic_bowl():
    bounds = Bounds([-5, -5], [5, 5])
    target = np.array([1.3, -0.7])
    objective = lambda x: float(((x - target) ** 2).sum())
    got = nelder_mead(objective, np.zeros(2), [], bounds, max_evals=500, tol=1e-12)
    assert np.all(np.abs(got - target) < 1e-4)


def test_nelder_mead_budget_zero_returns_initial():
    bounds = Bounds([-5, -5], [5, 5])
    start = np.array([2.0, 2.0])
    got = nelder_mead(lambda x: float((x ** 2).sum()), start, [], bounds,
                      max_evals=0, tol=1e-8)
    assert np.array_equal(got, start)


def test_nelder_mead_rosenbrock():
    bounds = Bounds([-5, -5], [5, 5])
    rosen = lambda x: float((1 - x[0]) ** 2 + 100 * (x[1] - x[0] ** 2) ** 2)
    evals = []
    def counted(x):
        evals.append(1)
        return rosen(x)
    got = nelder_mead(counted, np.array([-1.2, 1.0]), [], bounds,
                      max_evals=300, tol=1e-14)
    assert rosen(got) < 1e-6
    assert len(evals) <= 300
    # sanity against the scipy reference on the same problem
    ref = minimize(rosen, [-1.2, 1.0], method="Nelder-Mead",
                   options=dict(maxfev=300, fatol=1e-14, xatol=1e-14))
    assert abs(rosen(got) - ref.fun) < 1e-6


def test_nelder_mead_uses_neighbors_and_respects_bounds():
    bounds = Bounds([-1, -1], [1, 1])
    target = np.array([2.0, 0.0])  # outside the box: optimum sits on the edge
    objective = lambda x: float(((x - target) ** 2).sum())
    got = nelder_mead(objective, np.array([0.0, 0.0]),
                      [np.array([0.5, 0.1]), np.array([0.1, 0.5])],
                      bounds, max_evals=200, tol=1e-10)
    assert bounds.contains(got)
    assert abs(got[0] - 1.0) < 1e-3


def test_nelder_mead_never_worse_than_best_initial_vertex():
    rng = np.random.default_rng(8)
    for _ in range(200):
        n = int(rng.integers(2, 7))
        bounds = Bounds(-np.ones(n), np.ones(n))
        w = rng.normal(size=(n, n))
        c = rng.normal(size=n)
        objective = lambda x: float(np.sin(x @ w).sum() + ((x - c) ** 2).sum())
        x0 = rng.uniform(-1, 1, n)
        neighbors = [rng.uniform(-1, 1, n) for _ in range(int(rng.integers(0, n + 1)))]
        verts = [bounds.clamp(x0)] + [bounds.clamp(v) for v in neighbors]
        for i in range(len(neighbors), n):
            v = x0.copy()
            v[i] += 0.05
            verts.append(bounds.clamp(v))
        best_initial = min(objective(v) for v in verts)
        got = nelder_mead(objective, x0, neighbors, bounds,
                          max_evals=int(rng.integers(n + 1, 120)), tol=1e-9)
        assert objective(got) <= best_initial + 1e-12


def test_nelder_mead_stop_below():
    bounds = Bounds([-5, -5], [5, 5])
    calls = []
    def objective(x):
        calls.append(1)
        return float((x ** 2).sum())
    nelder_mead(objective, np.array([3.0, 3.0]), [], bounds,
                max_evals=500, tol=1e-14, stop_below=1.0)
    assert len(calls) < 500  # ended as soon as a probe dipped below the threshold


# reach ------------------------------------------------------------------


def test_reach_goal_at_origin_with_rest_action(env_cfg, bounds):
    clean = sgim.noiseless(env_cfg)
    memory = sgim.Memory()
    rest = sgim.rest_action(env_cfg)
    memory.insert(sgim.Exemplar(rest, sgim.simulate(rest, clean)))
    tree = sgim.RegionTree(sgim.InterestParams())
    rng = np.random.default_rng(9)
    executor = DirectExecutor(clean, memory, rng)
    comp = sgim.CompetenceParams(tolerance=-0.05, origin=tuple(sgim.origin_outcome(env_cfg)))
    rec = sgim.reach(memory, tree, sgim.origin_outcome(env_cfg), executor,
                     sgim.ReachingConfig(budget=20), comp, rng, bounds)
    assert rec.movements_used == 1
    assert rec.regime_trace == ["exploit"]
    assert sgim.competence(rec.goal, rec.best_final, comp) == 0.0


def test_reach_budget_one_empty_memory(env_cfg, bounds):
    memory = sgim.Memory()
    tree = sgim.RegionTree(sgim.InterestParams())
    rng = np.random.default_rng(10)
    executor = DirectExecutor(env_cfg, memory, rng)
    rec = sgim.reach(memory, tree, np.array([0.5, 0.5]), executor,
                     sgim.ReachingConfig(budget=1), COMP, rng, bounds)
    assert rec.movements_used == 1
    assert rec.regime_trace == ["explore"]
    assert len(memory) == 1
    attempts = [a for leaf in tree.leaves() for a in leaf.attempts]
    assert len(attempts) == 1


def test_reach_movement_accounting(env_cfg, bounds):
    memory = warm_memory(env_cfg, 100, seed=11)
    tree = sgim.RegionTree(sgim.InterestParams())
    rng = np.random.default_rng(12)
    executor = DirectExecutor(env_cfg, memory, rng)
    before = len(memory)
    rec = sgim.reach(memory, tree, np.array([0.9, 0.9]), executor,
                     sgim.ReachingConfig(budget=15), COMP, rng, bounds)
    assert executor.count == rec.movements_used == len(memory) - before
    assert len(rec.regime_trace) == rec.movements_used
    assert rec.movements_used <= 15


def test_reach_best_final_is_argmin(env_cfg, bounds):
    memory = warm_memory(env_cfg, 50, seed=13)
    tree = sgim.RegionTree(sgim.InterestParams())
    rng = np.random.default_rng(14)
    executor = DirectExecutor(env_cfg, memory, rng)
    before = len(memory)
    goal = np.array([0.3, -0.2])
    rec = sgim.reach(memory, tree, goal, executor, sgim.ReachingConfig(budget=10),
                     COMP, rng, bounds)
    executed = memory.outcomes()[before:]
    dists = np.linalg.norm(executed - goal, axis=1)
    assert np.linalg.norm(rec.best_final - goal) == pytest.approx(dists.min())


def test_reach_respects_executor_limit(env_cfg, bounds):
    memory = warm_memory(env_cfg, 50, seed=15)
    tree = sgim.RegionTree(sgim.InterestParams())
    rng = np.random.default_rng(16)
    executor = DirectExecutor(env_cfg, memory, rng, limit=3)
    rec = sgim.reach(memory, tree, np.array([0.9, 0.9]), executor,
                     sgim.ReachingConfig(budget=20), COMP, rng, bounds)
    assert rec.movements_used == 3
    assert executor.remaining() == 0


def test_reach_budget_benefit(env_cfg, bounds):
    # with a warm memory, a 20-movement budget lands closer than a single
    # movement on the same goals
    memory = warm_memory(env_cfg, 2000, seed=17)
    rng_goals = np.random.default_rng(18)
    goals = rng_goals.uniform(-0.6, 0.6, size=(100, 2))

    def mean_final(budget, seed):
        mem = warm_memory(env_cfg, 2000, seed=17)
        tree = sgim.RegionTree(sgim.InterestParams())
        rng = np.random.default_rng(seed)
        executor = DirectExecutor(env_cfg, mem, rng)
        cfg = sgim.ReachingConfig(budget=budget)
        dists = []
        for goal in goals:
            rec = sgim.reach(mem, tree, goal, executor, cfg, COMP, rng, bounds)
            dists.append(np.linalg.norm(rec.best_final - goal))
        return float(np.mean(dists))

    assert mean_final(20, 19) < mean_final(1, 20)
