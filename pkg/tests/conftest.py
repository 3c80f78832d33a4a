import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import sgim

ACCEPTANCE_SEEDS = tuple(range(12))


@pytest.fixture(scope="session")
def env_cfg():
    return sgim.EnvConfig()


@pytest.fixture(scope="session")
def bounds(env_cfg):
    return sgim.action_bounds(env_cfg)


@pytest.fixture(scope="session")
def default_config():
    return sgim.ExperimentConfig()


@pytest.fixture(scope="session")
def benchmark(default_config):
    return sgim.experiment.default_benchmark(default_config)


@pytest.fixture(scope="session")
def demo_set(default_config):
    return sgim.experiment.default_demo_set(default_config)


@pytest.fixture(scope="session")
def batch(default_config, benchmark, demo_set):
    """Full acceptance batch: every strategy on every acceptance seed."""
    runs = {}
    for strategy in sgim.STRATEGIES:
        for seed in ACCEPTANCE_SEEDS:
            runs[strategy, seed] = sgim.run_strategy(
                strategy, default_config, seed, benchmark, demo_set)
    return runs


def warm_memory(env_cfg, n, seed=0):
    """Memory filled with n noisy random movements."""
    rng = np.random.default_rng(seed)
    b = sgim.action_bounds(env_cfg)
    memory = sgim.Memory()
    actions = rng.uniform(b.lower, b.upper, size=(n, 24))
    outcomes = sgim.simulate_batch(actions, env_cfg, rng)
    for a, o in zip(actions, outcomes):
        memory.insert(sgim.Exemplar(a, o))
    return memory
