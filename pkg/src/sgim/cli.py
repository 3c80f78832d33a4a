"""Command line entry points: run, batch, bench-build, demo-build, write-config."""

import argparse
import os

import numpy as np

from .config import default_config, load_config, save_config
from .env import action_bounds
from .experiment import (STRATEGIES, build_benchmark, export_runs, load_benchmark,
                         run_strategy, save_benchmark)
from .teacher import build_demo_set, load_demo_set, save_demo_set

_ALIASES = {
    "random": "random_explore",
    "demos": "demos_only",
    "sagg": "sagg_riac",
    "sgim": "sgim_d",
}


def _config_from(args):
    return load_config(args.config) if args.config else default_config()


def _parse_seeds(spec):
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(v) for v in spec.split(",") if v.strip() != ""]


def _get_benchmark(config, args):
    if getattr(args, "benchmark", None):
        return load_benchmark(args.benchmark, tuple(config.benchmark_grid))
    return build_benchmark(config.env, config.benchmark_grid, config.benchmark_pool_size,
                           np.random.default_rng(config.benchmark_seed))


def _get_demo_set(config, args):
    if getattr(args, "demos", None):
        return load_demo_set(args.demos)
    return build_demo_set(config.env, config.teacher, action_bounds(config.env),
                          np.random.default_rng(config.teacher_seed))


def cmd_run(args):
    config = _config_from(args)
    strategy = _ALIASES[args.strategy]
    benchmark = _get_benchmark(config, args)
    demo_set = None
    if strategy in ("demos_only", "sgim_d"):
        demo_set = _get_demo_set(config, args)
    run = run_strategy(strategy, config, args.seed, benchmark, demo_set)
    os.makedirs(args.out, exist_ok=True)
    export_runs([run], args.out)
    save_benchmark(benchmark, os.path.join(args.out, "benchmark.txt"))
    if demo_set is not None:
        save_demo_set(demo_set, os.path.join(args.out, "demos.txt"))
    final = run.checkpoints[-1]
    print("%s seed=%d movements=%d mean_error=%.6f" % (
        strategy, args.seed, final.movement_count, final.mean_error))
    return 0


def cmd_batch(args):
    config = _config_from(args)
    seeds = _parse_seeds(args.seeds) if args.seeds else list(config.seeds)
    strategies = ([_ALIASES[s] for s in args.strategies.split(",")]
                  if args.strategies else list(STRATEGIES))
    benchmark = _get_benchmark(config, args)
    demo_set = _get_demo_set(config, args)
    runs = []
    for strategy in strategies:
        for seed in seeds:
            run = run_strategy(strategy, config, seed, benchmark, demo_set)
            runs.append(run)
            print("%s seed=%d mean_error=%.6f" % (strategy, seed,
                                                  run.checkpoints[-1].mean_error))
    os.makedirs(args.out, exist_ok=True)
    export_runs(runs, args.out)
    save_benchmark(benchmark, os.path.join(args.out, "benchmark.txt"))
    save_demo_set(demo_set, os.path.join(args.out, "demos.txt"))
    return 0


def cmd_bench_build(args):
    config = _config_from(args)
    seed = args.seed if args.seed is not None else config.benchmark_seed
    benchmark = build_benchmark(config.env, config.benchmark_grid,
                                config.benchmark_pool_size, np.random.default_rng(seed))
    save_benchmark(benchmark, args.out)
    print("wrote %d benchmark points to %s" % (len(benchmark.points), args.out))
    return 0


def cmd_demo_build(args):
    config = _config_from(args)
    seed = args.seed if args.seed is not None else config.teacher_seed
    demos = build_demo_set(config.env, config.teacher, action_bounds(config.env),
                           np.random.default_rng(seed))
    save_demo_set(demos, args.out)
    print("wrote %d demonstrations to %s" % (len(demos), args.out))
    return 0


def cmd_write_config(args):
    save_config(default_config(), args.out)
    print("wrote default config to %s" % args.out)
    return 0


def main(argv=None):
    parser = argparse.ArgumentParser(prog="sgim",
                                     description="Goal-babbling strategies on the synthetic throwing arm")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run one strategy for one seed")
    p.add_argument("--strategy", required=True, choices=sorted(_ALIASES))
    p.add_argument("--config", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--benchmark", default=None, help="benchmark.txt to reuse")
    p.add_argument("--demos", default=None, help="demos.txt to reuse")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("batch", help="run strategies x seeds and aggregate")
    p.add_argument("--config", default=None)
    p.add_argument("--seeds", default=None, help="e.g. 0..9 or 0,3,7")
    p.add_argument("--strategies", default=None, help="comma list of %s" % ",".join(sorted(_ALIASES)))
    p.add_argument("--out", required=True)
    p.add_argument("--benchmark", default=None)
    p.add_argument("--demos", default=None)
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("bench-build", help="build and save the benchmark set")
    p.add_argument("--config", default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bench_build)

    p = sub.add_parser("demo-build", help="build and save the demonstration set")
    p.add_argument("--config", default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_demo_build)

    p = sub.add_parser("write-config", help="write the default config file")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_write_config)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
