"""Synthetic throwing-arm environment.

A movement is a 24-parameter vector: six joints, each driven by a quadratic
Bezier angle profile (start, mid, end angle plus a duration). The arm is a
six-link chain whose first joint sets the azimuth of a vertical working
plane; the remaining joints articulate inside that plane. The landing point
is the ground projection of the end effector at the final time plus a
"fling" displacement proportional to the end-effector velocity, clamped to
the task box [-1, 1]^2, with optional additive Gaussian sensor noise.

The map from action to landing point is smooth, heavily redundant (24
parameters, 2 outputs) and depends on the dynamics of the movement, not
only on the final pose.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

N_JOINTS = 6
PARAMS_PER_JOINT = 4  # q_start, q_mid, q_end, duration
ACTION_DIM = N_JOINTS * PARAMS_PER_JOINT

DEFAULT_ANGLE_RANGE = (-math.pi / 2.0, math.pi / 2.0)
DEFAULT_DURATION_RANGE = (0.5, 2.0)

TASK_LOW = -1.0
TASK_HIGH = 1.0
# Diagonal of the task box; distances divided by this lie in [0, 1].
TASK_DIAMETER = 2.0 * math.sqrt(2.0)

_SIMULATE_CHUNK = 16384


class Bounds:
    """Axis-aligned box of valid parameter vectors."""

    def __init__(self, lower, upper):
        self.lower = np.array(lower, dtype=float)
        self.upper = np.array(upper, dtype=float)
        if self.lower.shape != self.upper.shape:
            raise ValueError("lower/upper shape mismatch")
        if np.any(self.lower > self.upper):
            raise ValueError("lower bound above upper bound")

    @property
    def dim(self):
        return self.lower.size

    @property
    def span(self):
        return self.upper - self.lower

    def clamp(self, x):
        return np.minimum(np.maximum(np.asarray(x, dtype=float), self.lower), self.upper)

    def contains(self, x, atol=1e-9):
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lower - atol) and np.all(x <= self.upper + atol))

    def sample(self, rng):
        return rng.uniform(self.lower, self.upper)


@dataclass
class EnvConfig:
    """Arm geometry and sensing parameters.

    link_lengths are normalized to sum to 1 on construction, so the
    noiseless reachable set always fits inside the task box. The default
    geometry puts over half the length into the base link: random flailing
    then lands in a small central blob, while coordinated movements (long
    articulated reach plus a well-timed fling) are needed to land far out.
    """

    link_lengths: tuple = (0.55, 0.15, 0.12, 0.10, 0.05, 0.03)
    noise_sigma: float = 0.073
    fling_gain: float = 0.33
    trajectory_samples: int = 20
    rng_seed: int = 0
    angle_range: tuple = DEFAULT_ANGLE_RANGE
    duration_range: tuple = DEFAULT_DURATION_RANGE

    def __post_init__(self):
        lengths = np.asarray(self.link_lengths, dtype=float)
        if lengths.shape != (N_JOINTS,) or np.any(lengths <= 0):
            raise ValueError("link_lengths must be %d positive scalars" % N_JOINTS)
        self.link_lengths = tuple(float(v) for v in lengths / lengths.sum())
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be >= 0")
        if self.fling_gain < 0:
            raise ValueError("fling_gain must be >= 0")
        if self.trajectory_samples < 2:
            raise ValueError("trajectory_samples must be >= 2")
        a_lo, a_hi = self.angle_range
        d_lo, d_hi = self.duration_range
        if not (a_lo <= a_hi) or not (0 < d_lo <= d_hi):
            raise ValueError("invalid angle or duration range")


def action_bounds(cfg):
    """Box of valid flattened actions for the given environment."""
    a_lo, a_hi = cfg.angle_range
    d_lo, d_hi = cfg.duration_range
    lower = np.tile([a_lo, a_lo, a_lo, d_lo], N_JOINTS)
    upper = np.tile([a_hi, a_hi, a_hi, d_hi], N_JOINTS)
    return Bounds(lower, upper)


def make_rng(cfg):
    return np.random.default_rng(cfg.rng_seed)


def noiseless(cfg):
    return replace(cfg, noise_sigma=0.0)


def flatten_action(per_joint):
    """(6, 4) per-joint parameters -> flat 24-vector, joint-major."""
    per_joint = np.asarray(per_joint, dtype=float)
    if per_joint.shape != (N_JOINTS, PARAMS_PER_JOINT):
        raise ValueError("expected shape (%d, %d)" % (N_JOINTS, PARAMS_PER_JOINT))
    return per_joint.reshape(ACTION_DIM).copy()


def unflatten_action(action):
    """Flat 24-vector -> (6, 4) per-joint parameters."""
    action = np.asarray(action, dtype=float)
    if action.shape != (ACTION_DIM,):
        raise ValueError("expected shape (%d,)" % ACTION_DIM)
    return action.reshape(N_JOINTS, PARAMS_PER_JOINT).copy()


def rest_action(cfg):
    """All joint angles at zero (clipped into range), mid-range durations."""
    a_lo, a_hi = cfg.angle_range
    d_lo, d_hi = cfg.duration_range
    angle = min(max(0.0, a_lo), a_hi)
    duration = 0.5 * (d_lo + d_hi)
    return np.tile([angle, angle, angle, duration], N_JOINTS)


def bezier_eval(primitive, t):
    """Quadratic Bezier angle q(t) for one joint primitive.

    primitive is (q_start, q_mid, q_end, duration); t must lie in
    [0, duration].
    """
    q_start, q_mid, q_end, duration = (float(v) for v in primitive)
    if duration <= 0:
        raise ValueError("duration must be positive")
    if t < 0 or t > duration:
        raise ValueError("t=%r outside [0, %r]" % (t, duration))
    s = t / duration
    u = 1.0 - s
    return u * u * q_start + 2.0 * s * u * q_mid + s * s * q_end


def _validate_actions(actions, cfg):
    bounds = action_bounds(cfg)
    if np.any(actions < bounds.lower - 1e-9) or np.any(actions > bounds.upper + 1e-9):
        raise ValueError("action outside configured bounds")


def simulate_batch(actions, cfg, rng=None):
    """Landing points for a batch of actions, shape (n, 2).

    Noiseless landing points are clamped into the task box; Gaussian sensor
    noise (if configured) is added afterwards, so noisy outcomes may spill
    slightly outside.
    """
    actions = np.asarray(actions, dtype=float)
    squeeze = actions.ndim == 1
    if squeeze:
        actions = actions[None, :]
    if actions.ndim != 2 or actions.shape[1] != ACTION_DIM:
        raise ValueError("actions must have %d columns" % ACTION_DIM)
    _validate_actions(actions, cfg)
    if cfg.noise_sigma > 0 and rng is None:
        raise ValueError("noisy simulation requires an rng")

    n = actions.shape[0]
    out = np.empty((n, 2))
    for start in range(0, n, _SIMULATE_CHUNK):
        block = actions[start:start + _SIMULATE_CHUNK]
        out[start:start + _SIMULATE_CHUNK] = _land(block, cfg)
    if cfg.noise_sigma > 0:
        out = out + rng.normal(0.0, cfg.noise_sigma, size=out.shape)
    return out[0] if squeeze else out


def _land(actions, cfg):
    joints = actions.reshape(-1, N_JOINTS, PARAMS_PER_JOINT)
    q_start = joints[..., 0]
    q_mid = joints[..., 1]
    q_end = joints[..., 2]
    duration = joints[..., 3]

    samples = cfg.trajectory_samples
    final_time = duration.max(axis=1)  # joints finishing early hold their end angle
    t = final_time[:, None] * np.linspace(0.0, 1.0, samples)[None, :]
    tj = np.minimum(t[:, :, None], duration[:, None, :])
    s = tj / duration[:, None, :]
    u = 1.0 - s
    q = u * u * q_start[:, None, :] + 2.0 * s * u * q_mid[:, None, :] + s * s * q_end[:, None, :]

    # Joint 1 swings the working plane about the vertical axis; joints 2..6
    # tilt the chain inside that plane (angles accumulate along the chain).
    azimuth = q[..., 0]
    tilt = np.cumsum(q[..., 1:], axis=-1)
    lengths = np.asarray(cfg.link_lengths)
    radius = np.sin(tilt) @ lengths[1:]
    ground = np.stack((radius * np.cos(azimuth), radius * np.sin(azimuth)), axis=-1)

    dt = final_time / (samples - 1)
    velocity = (ground[:, -1] - ground[:, -2]) / dt[:, None]
    land = ground[:, -1] + cfg.fling_gain * velocity * duration[:, -1:]
    return np.clip(land, TASK_LOW, TASK_HIGH)


def simulate(action, cfg, rng=None):
    """Landing point of a single action, shape (2,)."""
    return simulate_batch(action, cfg, rng)


def origin_outcome(cfg):
    """Landing point of the noiseless rest movement (the origin point)."""
    return simulate(rest_action(cfg), noiseless(cfg))
