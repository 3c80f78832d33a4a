"""Orchestration of the four learning strategies, evaluation, and export.

Strategies, all spending exactly the same number of executed movements:

- ``random_explore``: uniform random actions throughout.
- ``demos_only``: fetches a demonstration at a fixed period and otherwise
  replays the most recent one with small perturbations.
- ``sagg_riac``: autonomous goal babbling (generate a goal, try to reach it).
- ``sgim_d``: goal babbling interrupted by the teacher at a fixed period;
  each interruption registers the demonstration and imitates it, then the
  interrupted reaching attempt resumes with its remaining budget.

Evaluation replays the inverse model (blend only, no refinement, noiseless,
no memory writes) against a fixed benchmark of reachable points at a fixed
movement cadence.
"""

import os
from dataclasses import dataclass, field, replace

import numpy as np

from .env import (EnvConfig, TASK_HIGH, TASK_LOW, action_bounds, noiseless,
                  origin_outcome, simulate, simulate_batch)
from .memory import AUTONOMOUS, DEMONSTRATION, IMITATION, Exemplar, Memory
from .reaching import ReachingConfig, exploit_action, reach
from .regions import CompetenceParams, InterestParams, RegionTree, generate_goal
from .teacher import (Demonstration, TeacherConfig, build_demo_set, imitate,
                      next_demo, perturbed_replay)

STRATEGIES = ("random_explore", "demos_only", "sagg_riac", "sgim_d")


@dataclass
class ExperimentConfig:
    total_movements: int = 5000
    eval_every: int = 250
    seeds: tuple = tuple(range(10))
    mode_weights: tuple = (0.5, 0.4, 0.1)
    mode3_sigma: float = 0.05
    env: EnvConfig = field(default_factory=EnvConfig)
    competence: CompetenceParams = field(default_factory=CompetenceParams)
    interest: InterestParams = field(default_factory=InterestParams)
    reaching: ReachingConfig = field(default_factory=ReachingConfig)
    teacher: TeacherConfig = field(default_factory=TeacherConfig)
    benchmark_grid: tuple = (26, 16)
    benchmark_pool_size: int = 70000
    benchmark_seed: int = 90001
    teacher_seed: int = 90002
    coverage_grid: tuple = (26, 16)

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.total_movements < 1:
            raise ValueError("total_movements must be >= 1")
        if self.eval_every < 1 or self.total_movements % self.eval_every != 0:
            raise ValueError("eval_every must divide total_movements")
        weights = tuple(float(w) for w in self.mode_weights)
        if len(weights) != 3 or min(weights) < 0 or abs(sum(weights) - 1.0) > 1e-9:
            raise ValueError("mode_weights must be 3 nonnegative values summing to 1")
        return self


@dataclass
class Benchmark:
    points: np.ndarray
    box_lo: np.ndarray
    box_hi: np.ndarray
    grid: tuple


@dataclass
class EvalCheckpoint:
    movement_count: int
    mean_error: float
    errors: np.ndarray


@dataclass
class MovementEvent:
    t: int
    phase: str      # autonomous | imitation
    goal: np.ndarray | None
    action: np.ndarray
    outcome: np.ndarray
    regime: str     # explore | exploit | imitate


@dataclass
class RunLog:
    strategy: str
    seed: int
    events: list
    checkpoints: list
    coverage: list            # (movement_count, occupied-cell count array)
    region_snapshots: list    # (movement_count, list of text lines)
    memory: Memory
    tree: RegionTree


def build_benchmark(env_cfg, grid, pool_size, rng):
    """Evaluation targets: one random point per grid cell that a random
    movement pool reached (grid laid over the pool's outcome bounding box)."""
    bounds = action_bounds(env_cfg)
    pool = rng.uniform(bounds.lower, bounds.upper, size=(pool_size, bounds.dim))
    outcomes = simulate_batch(pool, noiseless(env_cfg))
    lo, hi = outcomes.min(axis=0), outcomes.max(axis=0)
    nx, ny = grid
    width = np.maximum(hi - lo, 1e-12)
    ix = np.clip(((outcomes[:, 0] - lo[0]) / width[0] * nx).astype(int), 0, nx - 1)
    iy = np.clip(((outcomes[:, 1] - lo[1]) / width[1] * ny).astype(int), 0, ny - 1)
    occupied = np.unique(ix * ny + iy)
    cell_w = width / (nx, ny)
    points = np.empty((occupied.size, 2))
    for row, c in enumerate(occupied):
        corner = lo + cell_w * (c // ny, c % ny)
        points[row] = corner + rng.random(2) * cell_w
    return Benchmark(points=points, box_lo=lo, box_hi=hi, grid=grid)


def save_benchmark(benchmark, path):
    with open(path, "w") as fh:
        for p in benchmark.points:
            fh.write("%r,%r\n" % (float(p[0]), float(p[1])))


def load_benchmark(path, grid=(26, 16)):
    points = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                x, y = line.split(",")
                points.append((float(x), float(y)))
    points = np.array(points)
    return Benchmark(points=points, box_lo=points.min(axis=0), box_hi=points.max(axis=0), grid=grid)


def evaluate(memory, benchmark, env_cfg, reaching_cfg, y_org):
    """Mean distance to the benchmark points under the current inverse model.

    Each point is answered with the blended exploitation action, executed
    noiselessly; nothing is written back, so learner state is untouched. An
    empty memory scores every point at its distance from the origin point.
    """
    points = benchmark.points
    errors = np.empty(len(points))
    if len(memory) == 0:
        errors[:] = np.linalg.norm(points - y_org, axis=1)
    else:
        clean = noiseless(env_cfg)
        bounds = action_bounds(env_cfg)
        for i, point in enumerate(points):
            action = exploit_action(memory, point, reaching_cfg, bounds)
            landed = simulate(action, clean)
            errors[i] = np.linalg.norm(landed - point)
    return EvalCheckpoint(movement_count=-1, mean_error=float(errors.mean()), errors=errors)


def coverage_cell_indices(outcomes, grid):
    """Cell index pairs on a fixed grid over the task box; outcomes outside
    the box (noise spill) are dropped."""
    outcomes = np.asarray(outcomes, dtype=float)
    nx, ny = grid
    inside = np.all((outcomes >= TASK_LOW) & (outcomes <= TASK_HIGH), axis=1)
    span = TASK_HIGH - TASK_LOW
    ix = np.clip(((outcomes[:, 0] - TASK_LOW) / span * nx).astype(int), 0, nx - 1)
    iy = np.clip(((outcomes[:, 1] - TASK_LOW) / span * ny).astype(int), 0, ny - 1)
    return ix[inside], iy[inside]


class Runner:
    """Owns all mutable state of one (strategy, seed) run.

    Every executed movement flows through execute(): simulate, memorize,
    log, update coverage, fire the checkpoint hook, and (for sgim_d) let the
    teacher interrupt at multiples of its period.
    """

    def __init__(self, strategy, config, seed, benchmark=None, demo_set=None):
        if strategy not in STRATEGIES:
            raise ValueError("unknown strategy %r" % (strategy,))
        config.validate()
        self.strategy = strategy
        self.config = config
        self.seed = seed
        self.rng = np.random.default_rng(seed)
        self.bounds = action_bounds(config.env)
        self.y_org = origin_outcome(config.env)
        self.competence_params = replace(config.competence, origin=tuple(self.y_org))
        self.memory = Memory()
        self.tree = RegionTree(config.interest)
        self.benchmark = benchmark
        self.demo_set = demo_set
        self.count = 0
        self.events = []
        self.checkpoints = []
        self.coverage = []
        self.region_snapshots = []
        self._cov_counts = np.zeros(config.coverage_grid, dtype=int)
        self._in_teacher = False
        self._checkpoint()  # movement-0 baseline

    def remaining(self):
        return self.config.total_movements - self.count

    def execute(self, action, goal=None, regime="explore", phase="autonomous"):
        if self.remaining() <= 0:
            raise RuntimeError("movement budget exhausted")
        action = np.array(action, dtype=float, copy=True)
        outcome = simulate(action, self.config.env, self.rng)
        source = IMITATION if phase == "imitation" else AUTONOMOUS
        self.memory.insert(Exemplar(action.copy(), outcome.copy(), source))
        self.count += 1
        self.events.append(MovementEvent(
            t=self.count, phase=phase,
            goal=None if goal is None else np.array(goal, dtype=float, copy=True),
            action=action, outcome=outcome, regime=regime,
        ))
        ix, iy = coverage_cell_indices(outcome[None, :], self.config.coverage_grid)
        if ix.size:
            self._cov_counts[ix[0], iy[0]] += 1
        if self.count % self.config.eval_every == 0:
            self._checkpoint()
        if (self.strategy == "sgim_d" and not self._in_teacher
                and self.remaining() > 0
                and self.count % self.config.teacher.period == 0):
            self._teacher_step()
        return outcome

    def register_observation(self, demo):
        """Memorize a demonstrated pair without spending a movement."""
        self.memory.insert(Exemplar(demo.action.copy(), demo.outcome.copy(), DEMONSTRATION))

    def _checkpoint(self):
        if self.benchmark is not None:
            cp = evaluate(self.memory, self.benchmark, self.config.env,
                          self.config.reaching, self.y_org)
            cp.movement_count = self.count
            self.checkpoints.append(cp)
        self.coverage.append((self.count, self._cov_counts.copy()))
        self.region_snapshots.append((self.count, self.tree.snapshot_lines()))

    def _teacher_step(self):
        if not self.demo_set:
            return
        self._in_teacher = True
        try:
            demo = next_demo(self.demo_set, self.rng)
            imitate(demo, self.memory, self.tree, self, self.config.teacher,
                    self.competence_params, self.bounds, self.rng)
        finally:
            self._in_teacher = False

    # strategy loops ---------------------------------------------------

    def _run_random(self):
        while self.remaining() > 0:
            self.execute(self.bounds.sample(self.rng), regime="explore")

    def _run_demos_only(self):
        demo = None
        while self.remaining() > 0:
            if self.count % self.config.teacher.period == 0:
                demo = next_demo(self.demo_set, self.rng)
                self.register_observation(demo)
            action = perturbed_replay(demo, self.config.teacher, self.bounds, self.rng)
            self.execute(action, goal=demo.outcome, regime="imitate", phase="imitation")

    def _run_goal_babbling(self):
        while self.remaining() > 0:
            goal = generate_goal(self.tree, self.config.mode_weights,
                                 self.config.interest.window, self.rng,
                                 self.config.mode3_sigma)
            reach(self.memory, self.tree, goal, self, self.config.reaching,
                  self.competence_params, self.rng, self.bounds)

    def run(self):
        if self.strategy in ("demos_only", "sgim_d") and not self.demo_set:
            raise ValueError("strategy %r needs a demonstration set" % (self.strategy,))
        if self.strategy == "random_explore":
            self._run_random()
        elif self.strategy == "demos_only":
            self._run_demos_only()
        else:
            self._run_goal_babbling()
        assert self.count == self.config.total_movements
        return RunLog(
            strategy=self.strategy, seed=self.seed, events=self.events,
            checkpoints=self.checkpoints, coverage=self.coverage,
            region_snapshots=self.region_snapshots, memory=self.memory,
            tree=self.tree,
        )


def default_benchmark(config):
    return build_benchmark(config.env, config.benchmark_grid,
                           config.benchmark_pool_size,
                           np.random.default_rng(config.benchmark_seed))


def default_demo_set(config):
    return build_demo_set(config.env, config.teacher, action_bounds(config.env),
                          np.random.default_rng(config.teacher_seed))


def run_strategy(strategy, config, seed, benchmark=None, demo_set=None):
    """Execute one full run and return its log.

    Benchmark and demonstration set are built from their dedicated config
    seeds when not supplied, so every strategy and seed shares the same
    fixed teaching and evaluation sets.
    """
    if benchmark is None:
        benchmark = default_benchmark(config)
    if demo_set is None and strategy in ("demos_only", "sgim_d"):
        demo_set = default_demo_set(config)
    return Runner(strategy, config, seed, benchmark, demo_set).run()


# export -----------------------------------------------------------------


def _fmt(value):
    return repr(float(value))


def event_lines(run):
    """Per-movement log lines: t, phase, goal, action, outcome, regime."""
    for ev in run.events:
        gx, gy = ("nan", "nan") if ev.goal is None else (_fmt(ev.goal[0]), _fmt(ev.goal[1]))
        fields = [str(ev.t), ev.phase, gx, gy]
        fields.extend(_fmt(v) for v in ev.action)
        fields.extend((_fmt(ev.outcome[0]), _fmt(ev.outcome[1]), ev.regime))
        yield ",".join(fields)


def export_runs(runs, out_dir):
    """Write errors.csv, events.csv, coverage.csv and regions.txt."""
    os.makedirs(out_dir, exist_ok=True)

    with open(os.path.join(out_dir, "errors.csv"), "w") as fh:
        fh.write("seed,strategy,movement_count,mean_error\n")
        for run in runs:
            for cp in run.checkpoints:
                fh.write("%d,%s,%d,%s\n" % (run.seed, run.strategy, cp.movement_count,
                                            _fmt(cp.mean_error)))

    with open(os.path.join(out_dir, "events.csv"), "w") as fh:
        header = ["seed", "strategy", "t", "strategy_phase", "goal_x", "goal_y"]
        header += ["a%d" % i for i in range(1, 25)]
        header += ["outcome_x", "outcome_y", "regime"]
        fh.write(",".join(header) + "\n")
        for run in runs:
            prefix = "%d,%s," % (run.seed, run.strategy)
            for line in event_lines(run):
                fh.write(prefix + line + "\n")

    with open(os.path.join(out_dir, "coverage.csv"), "w") as fh:
        fh.write("seed,strategy,movement_count,cell_x,cell_y,count\n")
        for run in runs:
            for count, grid in run.coverage:
                for ix, iy in zip(*np.nonzero(grid)):
                    fh.write("%d,%s,%d,%d,%d,%d\n" % (run.seed, run.strategy, count,
                                                      ix, iy, grid[ix, iy]))

    with open(os.path.join(out_dir, "regions.txt"), "w") as fh:
        for run in runs:
            for count, lines in run.region_snapshots:
                fh.write("# seed=%d strategy=%s movements=%d\n" % (run.seed, run.strategy, count))
                for line in lines:
                    fh.write(line + "\n")
