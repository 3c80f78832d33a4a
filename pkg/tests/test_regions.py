import numpy as np
import pytest
from scipy import stats

import sgim
from sgim.regions import interest_from_competences
from oracles import (interest_oracle, selection_probs_oracle,
                     similarity_oracle, split_argmax_oracle)

PARAMS = sgim.CompetenceParams(tolerance=-0.05, origin=(0.0, 0.0))


def attempt(goal, comp, t):
    return sgim.GoalAttempt(np.asarray(goal, float), np.zeros(2), comp, t)


def test_similarity_exact_reach():
    assert sgim.similarity((1, 0), (1, 0), PARAMS) == 0.0


def test_similarity_no_better_than_origin():
    assert sgim.similarity((1, 0), (0, 0), PARAMS) == -1.0
    assert sgim.similarity((1, 0), (-0.4, 0.2), PARAMS) == -1.0


def test_similarity_ratio():
    assert sgim.similarity((1, 0), (0.5, 0), PARAMS) == pytest.approx(-0.5)


def test_similarity_degenerate_goal_at_origin():
    assert sgim.similarity((0, 0), (0, 0), PARAMS) == 0.0
    assert sgim.similarity((0, 0), (0.3, 0), PARAMS) == -1.0


def test_similarity_matches_oracle_random():
    rng = np.random.default_rng(21)
    for _ in range(200):
        goal = rng.uniform(-1, 1, 2)
        final = rng.uniform(-1, 1, 2)
        got = sgim.similarity(goal, final, PARAMS)
        want = similarity_oracle(goal, final, (0, 0), PARAMS.diameter)
        assert got == pytest.approx(want, rel=1e-12, abs=1e-15)


def test_competence_threshold():
    p = sgim.CompetenceParams(tolerance=-0.05, origin=(0.0, 0.0))
    assert sgim.competence((1, 0), (0.5, 0), p) == pytest.approx(-0.5)
    # within tolerance: reached
    assert sgim.competence((1, 0), (0.99, 0), p) == 0.0
    # boundary keeps the similarity value
    goal, final = np.array([1.0, 0.0]), np.array([0.95, 0.0])
    s = sgim.similarity(goal, final, p)
    p_boundary = sgim.CompetenceParams(tolerance=s, origin=(0.0, 0.0))
    assert sgim.competence(goal, final, p_boundary) == s


def test_competence_always_in_range():
    rng = np.random.default_rng(22)
    for _ in range(500):
        c = sgim.competence(rng.uniform(-1, 1, 2), rng.uniform(-1, 1, 2), PARAMS)
        assert -1.0 <= c <= 0.0


def test_interest_direct_example():
    assert interest_from_competences([-1, -1, -0.5, -0.5], 4) == pytest.approx(0.25)


def test_interest_equal_competences_zero():
    assert interest_from_competences([-0.3] * 8, 8) == 0.0
    assert interest_from_competences([-0.3] * 20, 8) == 0.0


def test_interest_short_windows():
    assert interest_from_competences([], 4) == 0.0
    assert interest_from_competences([-1.0], 4) == 0.0
    # two attempts: halves are [-1], [0]
    assert interest_from_competences([-1.0, 0.0], 4) == pytest.approx(0.25)


def test_interest_shift_invariance():
    rng = np.random.default_rng(23)
    for _ in range(100):
        comp = list(rng.uniform(-1, 0, size=rng.integers(2, 40)))
        base = interest_from_competences(comp, 10)
        shifted = interest_from_competences([c - 0.2 for c in comp], 10)
        assert base == pytest.approx(shifted, abs=1e-12)
        assert base >= 0.0


def test_interest_matches_oracle():
    rng = np.random.default_rng(24)
    region = sgim.Region((-1, -1), (1, 1))
    for t in range(40):
        region.attempts.append(attempt(rng.uniform(-1, 1, 2), float(rng.uniform(-1, 0)), t))
    got = sgim.interest(region, 20)
    want = interest_oracle([a.competence for a in region.attempts], 20)
    assert got == pytest.approx(want, rel=1e-12)


def test_selection_weights_example():
    assert sgim.selection_weights([0.2, 0.4, 0.6]) == pytest.approx([0.0, 1 / 3, 2 / 3])
    assert sgim.selection_weights([0.5, 0.5, 0.5]) == pytest.approx([1 / 3] * 3)


def test_selection_weights_matches_oracle():
    rng = np.random.default_rng(25)
    for _ in range(100):
        interests = rng.uniform(0, 1, size=rng.integers(1, 12)).tolist()
        assert sgim.selection_weights(interests) == pytest.approx(
            selection_probs_oracle(interests), rel=1e-12)


def test_select_region_frequencies():
    params = sgim.InterestParams()
    regions = []
    for comps in ([0.0, 0.0, 0.0, 0.0], [-1.0, -1.0, 0.0, 0.0]):  # interest 0 and 0.5
        region = sgim.Region((-1, -1), (1, 1))
        for t, c in enumerate(comps):
            region.attempts.append(attempt((0, 0), c, t))
        regions.append(region)
    ints = [sgim.interest(r, 4) for r in regions]
    assert ints == [0.0, 0.5]
    rng = np.random.default_rng(26)
    picks = sum(sgim.select_region(regions, 4, rng) is regions[1] for _ in range(10000))
    assert picks == 10000  # the minimal-interest region has weight zero
    # all-equal interests: uniform
    rng = np.random.default_rng(27)
    picks = sum(sgim.select_region([regions[0], regions[0]], 4, rng) is regions[0]
                for _ in range(100))
    assert picks == 100


def test_select_region_proportions_monte_carlo():
    regions = []
    for comps in ([-1.0, -1.0, -1.0, -1.0], [-1.0, -1.0, 0.0, 0.0], [-1.0, -1.0, -0.5, 0.5]):
        region = sgim.Region((-1, -1), (1, 1))
        for t, c in enumerate(comps):
            region.attempts.append(attempt((0, 0), c, t))
        regions.append(region)
    probs = sgim.selection_weights([sgim.interest(r, 4) for r in regions])
    rng = np.random.default_rng(28)
    counts = np.zeros(3)
    for _ in range(10000):
        chosen = sgim.select_region(regions, 4, rng)
        counts[regions.index(chosen)] += 1
    assert np.all(np.abs(counts / 10000 - probs) < 0.02)


def make_tree(params=None):
    return sgim.RegionTree(params or sgim.InterestParams())


def test_generate_goal_mode2_uniform():
    tree = make_tree()
    rng = np.random.default_rng(29)
    goals = np.array([sgim.generate_goal(tree, (0, 1, 0), 20, rng) for _ in range(10000)])
    counts, _, _ = np.histogram2d(goals[:, 0], goals[:, 1], bins=4, range=[[-1, 1], [-1, 1]])
    p = stats.chisquare(counts.ravel()).pvalue
    assert p > 0.01
    assert np.all(np.abs(goals) <= 1.0)


def test_generate_goal_mode1_single_region_uniform():
    tree = make_tree()
    rng = np.random.default_rng(30)
    goals = np.array([sgim.generate_goal(tree, (1, 0, 0), 20, rng) for _ in range(10000)])
    counts, _, _ = np.histogram2d(goals[:, 0], goals[:, 1], bins=4, range=[[-1, 1], [-1, 1]])
    assert stats.chisquare(counts.ravel()).pvalue > 0.01


def test_generate_goal_mode3_zero_noise():
    tree = make_tree()
    center = np.array([0.0, 0.0])
    tree.record_attempt(sgim.GoalAttempt(center, np.zeros(2), -0.9, 0))
    tree.record_attempt(sgim.GoalAttempt(np.array([0.5, 0.5]), np.zeros(2), -0.1, 1))
    rng = np.random.default_rng(31)
    for _ in range(20):
        goal = sgim.generate_goal(tree, (0, 0, 1), 20, rng, mode3_sigma=1e-12)
        assert np.allclose(goal, center, atol=1e-9)


def test_generate_goal_mode3_empty_region_falls_back():
    tree = make_tree()
    rng = np.random.default_rng(32)
    goal = sgim.generate_goal(tree, (0, 0, 1), 20, rng)
    assert np.all(np.abs(goal) <= 1.0)


def test_record_attempt_split_threshold():
    params = sgim.InterestParams(window=2, max_attempts=4, split_candidates=9, min_child=1)
    tree = make_tree(params)
    rng = np.random.default_rng(33)
    for t in range(4):
        tree.record_attempt(attempt(rng.uniform(-1, 1, 2), -0.5, t))
    assert len(tree.leaves()) == 1
    tree.record_attempt(attempt(rng.uniform(-1, 1, 2), -0.5, 4))
    assert len(tree.leaves()) == 2
    assert len(tree.split_log) == 1


def test_split_conserves_attempts():
    params = sgim.InterestParams(window=2, max_attempts=4, min_child=1)
    tree = make_tree(params)
    rng = np.random.default_rng(34)
    for t in range(5):
        tree.record_attempt(attempt(rng.uniform(-1, 1, 2), float(rng.uniform(-1, 0)), t))
    left, right = tree.root.children
    assert len(left.attempts) + len(right.attempts) == 5
    assert tree.root.attempts == []


def test_split_separates_failing_and_improving_halves():
    # interleaved attempts: flat failures in x < -0.15, steep improvement in
    # x > 0.15; the chosen cut lands on the x axis inside the data gap and
    # matches the enumeration oracle.
    params = sgim.InterestParams(window=20, max_attempts=50, split_candidates=9, min_child=5)
    tree = make_tree(params)
    rng = np.random.default_rng(35)
    t = 0
    for i in range(26):
        tree.record_attempt(attempt((rng.uniform(-0.9, -0.25), rng.uniform(-1, 1)), -1.0, t))
        t += 1
        if i < 25:
            tree.record_attempt(attempt((rng.uniform(0.25, 0.9), rng.uniform(-1, 1)),
                                        -1.0 + (i + 1) / 25, t))
            t += 1
    assert len(tree.split_log) == 1
    rec = tree.split_log[0]
    failing_x = rec.goals[rec.competences == -1.0, 0]
    improving_x = rec.goals[rec.competences > -1.0, 0]
    assert rec.dim == 0
    assert failing_x.max() <= rec.cut <= improving_x.min()
    want = split_argmax_oracle(rec.lo, rec.hi, rec.goals.tolist(), rec.competences.tolist(),
                               params.split_candidates, params.min_child, params.window)
    assert (rec.dim, rec.cut) == (want[1], pytest.approx(want[2]))


def test_every_split_matches_oracle_argmax():
    params = sgim.InterestParams(window=6, max_attempts=12, min_child=2)
    tree = make_tree(params)
    rng = np.random.default_rng(36)
    for t in range(400):
        tree.record_attempt(attempt(rng.uniform(-1, 1, 2), float(rng.uniform(-1, 0)), t))
    assert len(tree.split_log) >= 5
    for rec in tree.split_log:
        want = split_argmax_oracle(rec.lo, rec.hi, rec.goals.tolist(),
                                   rec.competences.tolist(),
                                   params.split_candidates, params.min_child, params.window)
        assert rec.dim == want[1]
        assert rec.cut == pytest.approx(want[2])


def test_leaves_partition_task_box():
    params = sgim.InterestParams(window=4, max_attempts=8, min_child=2)
    tree = make_tree(params)
    rng = np.random.default_rng(37)
    for t in range(300):
        tree.record_attempt(attempt(rng.uniform(-1, 1, 2), float(rng.uniform(-1, 0)), t))
    leaves = tree.leaves()
    assert len(leaves) > 4
    pts = rng.uniform(-1, 1, size=(10000, 2))
    for p in pts:
        containing = [lf for lf in leaves
                      if lf.lo[0] <= p[0] and lf.lo[1] <= p[1]
                      and (p[0] < lf.hi[0] or lf.hi[0] == 1.0)
                      and (p[1] < lf.hi[1] or lf.hi[1] == 1.0)]
        assert len(containing) == 1
        assert tree.leaf_for(p) is containing[0]
    # areas of the leaves sum to the box area
    area = sum(float(np.prod(lf.hi - lf.lo)) for lf in leaves)
    assert area == pytest.approx(4.0)


def test_record_attempt_rejects_outside():
    tree = make_tree()
    with pytest.raises(ValueError):
        tree.record_attempt(attempt((1.5, 0.0), -0.5, 0))


def test_no_split_without_admissible_cut():
    # all goals in one tiny corner: no cut can give min_child to both sides
    params = sgim.InterestParams(window=2, max_attempts=4, split_candidates=3, min_child=2)
    tree = make_tree(params)
    for t in range(12):
        tree.record_attempt(attempt((-0.99 + t * 1e-4, -0.99), -0.5, t))
    assert len(tree.leaves()) == 1


def test_snapshot_lines_format():
    tree = make_tree(sgim.InterestParams(window=2, max_attempts=4, min_child=1))
    rng = np.random.default_rng(38)
    for t in range(9):
        tree.record_attempt(attempt(rng.uniform(-1, 1, 2), -0.5, t))
    lines = tree.snapshot_lines()
    assert lines[0].startswith("0 node") or lines[0].startswith("0 leaf")
    kinds = [line.split()[1] for line in lines]
    assert kinds.count("leaf") == len(tree.leaves())
    for line in lines:
        fields = line.split()
        assert len(fields) == 8
        float(fields[2]), int(fields[6]), float(fields[7])
