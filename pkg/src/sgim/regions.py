"""Competence scoring and the self-adapting region tree over task space.

Competence rates a reaching attempt in [-1, 0] by the distance between goal
and landing point, normalized by the distance between goal and the origin
point (so far goals and near goals are judged on equal footing). Each region
of an axis-aligned recursive partition keeps its attempted goals in time
order; its interest is the absolute competence progress over a sliding
window of recent attempts. Goals are drawn region-first with probability
shaped by interest, and regions split where the interest contrast between
the two halves is largest.
"""

from dataclasses import dataclass

import numpy as np

from .env import TASK_DIAMETER, TASK_HIGH, TASK_LOW


@dataclass
class CompetenceParams:
    tolerance: float = -0.02        # negative; attempts scoring above count as reached
    origin: tuple = (0.0, 0.0)      # landing point of the rest movement
    diameter: float = TASK_DIAMETER  # rescales raw distances into [0, 1]

    def __post_init__(self):
        if not -1.0 < self.tolerance < 0.0:
            raise ValueError("tolerance must lie in (-1, 0)")
        if self.diameter <= 0:
            raise ValueError("diameter must be positive")


@dataclass
class GoalAttempt:
    goal: np.ndarray
    final: np.ndarray
    competence: float
    t: int

    def __post_init__(self):
        self.goal = np.asarray(self.goal, dtype=float)
        self.final = np.asarray(self.final, dtype=float)


@dataclass
class InterestParams:
    window: int = 20           # sliding window of recent attempts (even)
    max_attempts: int = 50     # a region splits once it holds more than this
    split_candidates: int = 9  # evenly spaced candidate cuts per dimension
    min_child: int = 5         # both sides of a cut must keep this many attempts

    def __post_init__(self):
        if self.window < 2 or self.window % 2 != 0:
            raise ValueError("window must be an even integer >= 2")
        if self.min_child < 1:
            raise ValueError("min_child must be >= 1")
        if self.max_attempts < self.window:
            raise ValueError("max_attempts must be >= window")
        if self.split_candidates < 1:
            raise ValueError("split_candidates must be >= 1")


def rescaled_distance(a, b, diameter=TASK_DIAMETER):
    """Euclidean distance divided by the task-space diameter, in [0, 1]."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return float(np.linalg.norm(a - b)) / diameter


def similarity(goal, final, params):
    """How close the attempt landed, in [-1, 0]; 0 means exactly on goal.

    The goal/final distance is normalized by the goal/origin distance and
    capped at -1 once the attempt is no better than staying at the origin.
    A goal sitting exactly on the origin has no normalizer: that degenerate
    case scores 0 on an exact hit and -1 otherwise.
    """
    goal = np.asarray(goal, dtype=float)
    final = np.asarray(final, dtype=float)
    origin = np.asarray(params.origin, dtype=float)
    if np.array_equal(goal, origin):
        return 0.0 if np.array_equal(final, goal) else -1.0
    ratio = float(np.linalg.norm(goal - final)) / float(np.linalg.norm(goal - origin))
    return -1.0 if ratio > 1.0 else -ratio


def competence(goal, final, params):
    """similarity, except scores within tolerance collapse to 0 (reached)."""
    sim = similarity(goal, final, params)
    return sim if sim <= params.tolerance else 0.0


def interest_from_competences(competences, window):
    """Absolute competence progress over the most recent window.

    With fewer than `window` attempts the most recent even count is used so
    the two halves stay equal-sized; fewer than two attempts give 0. The
    result is always divided by the full window length, which discounts
    sparsely visited regions.
    """
    n = min(len(competences), window)
    n -= n % 2
    if n < 2:
        return 0.0
    recent = competences[-n:]
    half = n // 2
    older = sum(recent[:half])
    newer = sum(recent[half:])
    return abs(older - newer) / window


def interest(region, window):
    return interest_from_competences([a.competence for a in region.attempts], window)


def selection_weights(interests):
    """Selection probabilities: interest above the minimum, normalized.

    All-equal interests degenerate to the uniform distribution.
    """
    interests = np.asarray(interests, dtype=float)
    w = interests - interests.min()
    total = w.sum()
    if total <= 0:
        return np.full(len(interests), 1.0 / len(interests))
    return w / total


def select_region(leaves, window, rng):
    """Sample a leaf with probability proportional to its excess interest."""
    if not leaves:
        raise ValueError("no leaves to select from")
    probs = selection_weights([interest(leaf, window) for leaf in leaves])
    return leaves[int(rng.choice(len(leaves), p=probs))]


class Region:
    __slots__ = ("lo", "hi", "attempts", "children", "cut_dim", "cut_pos")

    def __init__(self, lo, hi):
        self.lo = np.asarray(lo, dtype=float)
        self.hi = np.asarray(hi, dtype=float)
        self.attempts = []
        self.children = None
        self.cut_dim = None
        self.cut_pos = None

    @property
    def is_leaf(self):
        return self.children is None


@dataclass
class SplitRecord:
    """Inputs and outcome of one executed split, kept for auditing."""

    lo: np.ndarray
    hi: np.ndarray
    goals: np.ndarray
    competences: np.ndarray
    dim: int
    cut: float


class RegionTree:
    """Recursive axis-aligned partition of the task box.

    Leaves hold the live attempts; internal nodes only route. Points on a
    cut belong to the right child, so the leaves partition the box exactly.
    """

    def __init__(self, params, lo=(TASK_LOW, TASK_LOW), hi=(TASK_HIGH, TASK_HIGH)):
        self.params = params
        self.root = Region(lo, hi)
        self.split_log = []

    def leaves(self):
        out = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.is_leaf:
                out.append(node)
            else:
                stack.extend(reversed(node.children))
        return out

    def leaf_for(self, point):
        point = np.asarray(point, dtype=float)
        node = self.root
        while not node.is_leaf:
            node = node.children[0] if point[node.cut_dim] < node.cut_pos else node.children[1]
        return node

    def record_attempt(self, attempt):
        goal = attempt.goal
        if np.any(goal < self.root.lo) or np.any(goal > self.root.hi):
            raise ValueError("goal %r outside the task box" % (goal,))
        leaf = self.leaf_for(goal)
        leaf.attempts.append(attempt)
        if len(leaf.attempts) > self.params.max_attempts:
            self._try_split(leaf)

    def _try_split(self, leaf):
        p = self.params
        best = None  # (score, dim, cut)
        for dim in (0, 1):
            width = leaf.hi[dim] - leaf.lo[dim]
            for i in range(1, p.split_candidates + 1):
                cut = leaf.lo[dim] + width * i / (p.split_candidates + 1)
                left = [a.competence for a in leaf.attempts if a.goal[dim] < cut]
                n_left = len(left)
                n_right = len(leaf.attempts) - n_left
                if n_left < p.min_child or n_right < p.min_child:
                    continue
                right = [a.competence for a in leaf.attempts if a.goal[dim] >= cut]
                score = abs(
                    interest_from_competences(left, p.window)
                    - interest_from_competences(right, p.window)
                )
                if best is None or score > best[0]:
                    best = (score, dim, cut)
        if best is None:
            return  # no admissible cut yet; the leaf keeps accumulating
        _, dim, cut = best
        self.split_log.append(SplitRecord(
            lo=leaf.lo.copy(),
            hi=leaf.hi.copy(),
            goals=np.array([a.goal for a in leaf.attempts]),
            competences=np.array([a.competence for a in leaf.attempts]),
            dim=dim,
            cut=cut,
        ))
        lo_left, hi_left = leaf.lo.copy(), leaf.hi.copy()
        lo_right, hi_right = leaf.lo.copy(), leaf.hi.copy()
        hi_left[dim] = cut
        lo_right[dim] = cut
        left_child = Region(lo_left, hi_left)
        right_child = Region(lo_right, hi_right)
        for a in leaf.attempts:  # time order is preserved
            (left_child if a.goal[dim] < cut else right_child).attempts.append(a)
        leaf.children = (left_child, right_child)
        leaf.cut_dim = dim
        leaf.cut_pos = cut
        leaf.attempts = []

    def snapshot_lines(self):
        """Depth-first text dump: depth, kind, box, attempt count, interest."""
        lines = []

        def walk(node, depth):
            kind = "leaf" if node.is_leaf else "node"
            lines.append(" ".join([
                str(depth), kind,
                repr(float(node.lo[0])), repr(float(node.hi[0])),
                repr(float(node.lo[1])), repr(float(node.hi[1])),
                str(len(node.attempts)),
                repr(float(interest(node, self.params.window))),
            ]))
            if not node.is_leaf:
                walk(node.children[0], depth + 1)
                walk(node.children[1], depth + 1)

        walk(self.root, 0)
        return lines


def generate_goal(tree, mode_weights, window, rng, mode3_sigma=0.05):
    """Draw the next goal using one of three mixed modes.

    Mode 1 picks an interesting region and samples uniformly inside it;
    mode 2 samples uniformly over the whole task box; mode 3 picks a region
    like mode 1 and perturbs its worst-scored goal with Gaussian noise,
    clipped to the region (falling back to mode 1 in an empty region).
    """
    p1, p2, p3 = (float(w) for w in mode_weights)
    if min(p1, p2, p3) < 0 or abs(p1 + p2 + p3 - 1.0) > 1e-9:
        raise ValueError("mode weights must be nonnegative and sum to 1")
    u = rng.random()
    if u < p1 + p2 and u >= p1:
        return rng.uniform(tree.root.lo, tree.root.hi)
    leaf = select_region(tree.leaves(), window, rng)
    if u < p1 or not leaf.attempts:
        return rng.uniform(leaf.lo, leaf.hi)
    worst = min(leaf.attempts, key=lambda a: a.competence)  # earliest wins ties
    goal = worst.goal + rng.normal(0.0, mode3_sigma, size=2)
    return np.clip(goal, leaf.lo, leaf.hi)
