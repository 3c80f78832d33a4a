"""Flat key-value experiment configuration files.

One ``key = value`` pair per line, ``#`` comments allowed. Dotted keys group
parameters by subsystem; list values are comma-separated. Every tunable of
the library appears here, so a config file pins a whole experiment.
"""

from dataclasses import replace

from .env import EnvConfig
from .experiment import ExperimentConfig
from .reaching import ReachingConfig
from .regions import CompetenceParams, InterestParams
from .teacher import TeacherConfig


def _parse_int(s):
    return int(s)


def _parse_float(s):
    return float(s)


def _parse_ints(s):
    return tuple(int(v) for v in s.split(",") if v.strip() != "")


def _parse_floats(s):
    return tuple(float(v) for v in s.split(",") if v.strip() != "")


def _fmt_scalar(v):
    return repr(float(v)) if isinstance(v, float) else str(v)


def _fmt_seq(v):
    return ",".join(_fmt_scalar(x) for x in v)


# key -> (section, field, parser, formatter); section None = top level
_SCHEMA = {
    "total_movements": (None, "total_movements", _parse_int, _fmt_scalar),
    "eval_every": (None, "eval_every", _parse_int, _fmt_scalar),
    "seeds": (None, "seeds", _parse_ints, _fmt_seq),
    "mode_weights": (None, "mode_weights", _parse_floats, _fmt_seq),
    "mode3_sigma": (None, "mode3_sigma", _parse_float, _fmt_scalar),
    "benchmark.grid": (None, "benchmark_grid", _parse_ints, _fmt_seq),
    "benchmark.pool_size": (None, "benchmark_pool_size", _parse_int, _fmt_scalar),
    "benchmark.seed": (None, "benchmark_seed", _parse_int, _fmt_scalar),
    "teacher.seed": (None, "teacher_seed", _parse_int, _fmt_scalar),
    "coverage.grid": (None, "coverage_grid", _parse_ints, _fmt_seq),
    "env.link_lengths": ("env", "link_lengths", _parse_floats, _fmt_seq),
    "env.noise_sigma": ("env", "noise_sigma", _parse_float, _fmt_scalar),
    "env.fling_gain": ("env", "fling_gain", _parse_float, _fmt_scalar),
    "env.trajectory_samples": ("env", "trajectory_samples", _parse_int, _fmt_scalar),
    "env.rng_seed": ("env", "rng_seed", _parse_int, _fmt_scalar),
    "env.angle_range": ("env", "angle_range", _parse_floats, _fmt_seq),
    "env.duration_range": ("env", "duration_range", _parse_floats, _fmt_seq),
    "competence.tolerance": ("competence", "tolerance", _parse_float, _fmt_scalar),
    "competence.diameter": ("competence", "diameter", _parse_float, _fmt_scalar),
    "interest.window": ("interest", "window", _parse_int, _fmt_scalar),
    "interest.max_attempts": ("interest", "max_attempts", _parse_int, _fmt_scalar),
    "interest.split_candidates": ("interest", "split_candidates", _parse_int, _fmt_scalar),
    "interest.min_child": ("interest", "min_child", _parse_int, _fmt_scalar),
    "reaching.n_candidates": ("reaching", "n_candidates", _parse_int, _fmt_scalar),
    "reaching.k_neighbors": ("reaching", "k_neighbors", _parse_int, _fmt_scalar),
    "reaching.variance_weight": ("reaching", "variance_weight", _parse_float, _fmt_scalar),
    "reaching.kernel_width": ("reaching", "kernel_width", _parse_float, _fmt_scalar),
    "reaching.simplex_max_evals": ("reaching", "simplex_max_evals", _parse_int, _fmt_scalar),
    "reaching.simplex_tol": ("reaching", "simplex_tol", _parse_float, _fmt_scalar),
    "reaching.budget": ("reaching", "budget", _parse_int, _fmt_scalar),
    "teacher.period": ("teacher", "period", _parse_int, _fmt_scalar),
    "teacher.demo_grid": ("teacher", "demo_grid", _parse_ints, _fmt_seq),
    "teacher.screening_reps": ("teacher", "screening_reps", _parse_int, _fmt_scalar),
    "teacher.candidates_per_cell": ("teacher", "candidates_per_cell", _parse_int, _fmt_scalar),
    "teacher.imitation_reps": ("teacher", "imitation_reps", _parse_int, _fmt_scalar),
    "teacher.imitation_spread": ("teacher", "imitation_spread", _parse_float, _fmt_scalar),
    "teacher.demo_pool_size": ("teacher", "demo_pool_size", _parse_int, _fmt_scalar),
}

_SECTIONS = {
    "env": EnvConfig,
    "competence": CompetenceParams,
    "interest": InterestParams,
    "reaching": ReachingConfig,
    "teacher": TeacherConfig,
}


def default_config():
    return ExperimentConfig()


def load_config(path):
    top = {}
    sections = {name: {} for name in _SECTIONS}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError("%s:%d: expected 'key = value'" % (path, lineno))
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in _SCHEMA:
                raise ValueError("%s:%d: unknown key %r" % (path, lineno, key))
            section, attr, parse, _ = _SCHEMA[key]
            parsed = parse(value)
            if section is None:
                top[attr] = parsed
            else:
                sections[section][attr] = parsed
    kwargs = dict(top)
    for name, cls in _SECTIONS.items():
        kwargs[name] = cls(**sections[name])
    return ExperimentConfig(**kwargs).validate()


def save_config(config, path):
    config.validate()
    with open(path, "w") as fh:
        for key, (section, attr, _, fmt) in _SCHEMA.items():
            holder = config if section is None else getattr(config, section)
            fh.write("%s = %s\n" % (key, fmt(getattr(holder, attr))))


def config_with_overrides(config, **top_level):
    return replace(config, **top_level).validate()
