"""Indicator tests: hypervolume, IGD, OneObj state, and the generation scorer.

The hypervolume implementation is checked against an independent oracle that
counts unit grid cells dominated by the front, which is exact for
integer-coordinate points and the integer reference (-1, -1).
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gsemo.archive import Archive, Individual
from gsemo.core import Bitstring, weakly_dominates
from gsemo.indicators import (
    HV_REFERENCE,
    GenerationScorer,
    MetricKind,
    OneObjState,
    hypervolume_2d,
    igd,
    parse_metric,
    score,
    tick_oneobj,
)
from gsemo.problems import make_problem


def grid_hypervolume(front):
    """Count unit cells [x, x+1) x [y, y+1) dominated by some front point.

    Independent of the production slab-sum implementation; exact for integer
    coordinates with the reference point (-1, -1).
    """
    cells = 0
    max1 = max(y[0] for y in front)
    max2 = max(y[1] for y in front)
    for x in range(0, max1 + 1):
        for y in range(0, max2 + 1):
            if any(p[0] >= x and p[1] >= y for p in front):
                cells += 1
    return float(cells)


def random_nondominated_front(rng, max_points=20, max_coord=50):
    k = int(rng.integers(1, max_points + 1))
    pts = {
        (int(rng.integers(0, max_coord + 1)), int(rng.integers(0, max_coord + 1)))
        for _ in range(k)
    }
    # keep only the non-dominated subset so fronts are antichains
    front = [
        p
        for p in pts
        if not any(q != p and weakly_dominates(q, p) for q in pts)
    ]
    return front


class TestHypervolume:
    def test_single_point(self):
        # (3, 2) with ref (-1, -1) spans a 4 x 3 box
        assert hypervolume_2d([(3, 2)]) == 12.0

    def test_two_point_staircase(self):
        # (3, 1) and (1, 3): 4x2 + 2x2 = 12
        assert hypervolume_2d([(3, 1), (1, 3)]) == 12.0

    def test_dominated_point_ignored(self):
        assert hypervolume_2d([(3, 3), (1, 1)]) == hypervolume_2d([(3, 3)])

    def test_duplicate_points(self):
        assert hypervolume_2d([(2, 2), (2, 2)]) == 9.0

    def test_order_invariance(self):
        pts = [(0, 5), (3, 3), (5, 0)]
        expect = hypervolume_2d(pts)
        assert hypervolume_2d(list(reversed(pts))) == expect
        assert hypervolume_2d([pts[1], pts[2], pts[0]]) == expect

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            hypervolume_2d([])

    def test_rejects_point_not_dominating_reference(self):
        with pytest.raises(ValueError):
            hypervolume_2d([(3, -1)])
        with pytest.raises(ValueError):
            hypervolume_2d([(-2, 3)])

    @pytest.mark.parametrize("n", [2, 10, 100])
    def test_full_front_closed_form(self, n):
        # [DERIVED] Full front {(k, n-k)} with ref (-1, -1): the dominated
        # region is the staircase of cells x + y <= n, x, y >= 0, of size
        # (n+1)(n+2)/2.
        front = [(k, n - k) for k in range(n + 1)]
        assert hypervolume_2d(front) == (n + 1) * (n + 2) / 2

    def test_matches_grid_oracle_on_random_fronts(self):
        rng = np.random.default_rng(20260826)
        for _ in range(200):
            front = random_nondominated_front(rng)
            assert hypervolume_2d(front) == grid_hypervolume(front)


class TestIGD:
    def test_zero_when_front_attained(self):
        front = [(0, 2), (1, 1), (2, 0)]
        assert igd(front, front) == 0.0
        # extra dominated points in the obtained set do not hurt
        assert igd(front, front + [(0, 0)]) == 0.0

    def test_hand_value_single_missing_point(self):
        # [DERIVED] true front (0,2),(1,1),(2,0); obtained (0,2),(2,0).
        # Distances: 0, sqrt(2) (nearest of (0,2)/(2,0) to (1,1)), 0.
        # IGD = sqrt(0 + 2 + 0) / 3 = sqrt(2)/3.
        val = igd([(0, 2), (1, 1), (2, 0)], [(0, 2), (2, 0)])
        assert val == pytest.approx(math.sqrt(2) / 3)

    def test_hand_value_single_obtained_point(self):
        # [DERIVED] true front (0,1),(1,0); obtained {(0,0)}: both distances
        # are 1, IGD = sqrt(1 + 1) / 2.
        assert igd([(0, 1), (1, 0)], [(0, 0)]) == pytest.approx(math.sqrt(2) / 2)

    def test_rejects_empty_sets(self):
        with pytest.raises(ValueError):
            igd([], [(0, 0)])
        with pytest.raises(ValueError):
            igd([(0, 0)], [])

    def test_monotone_in_obtained_set(self):
        # adding points can only reduce nearest distances
        front = [(k, 10 - k) for k in range(11)]
        obtained = [(0, 10)]
        prev = igd(front, obtained)
        for k in range(1, 11):
            obtained.append((k, 10 - k))
            cur = igd(front, obtained)
            assert cur <= prev
            prev = cur


class TestMetricParsing:
    @pytest.mark.parametrize(
        "token, kind, period",
        [
            ("hv", "hv", 1),
            ("igd", "igd", 1),
            ("oneobj", "oneobj", 1),
            ("oneobj10", "oneobj", 10),
            ("oneobj50", "oneobj", 50),
        ],
    )
    def test_tokens(self, token, kind, period):
        mk = parse_metric(token)
        assert mk.kind == kind
        assert mk.period == period

    def test_case_insensitive(self):
        assert parse_metric("HV") == MetricKind("hv")

    def test_unknown_token(self):
        with pytest.raises(ValueError):
            parse_metric("oneobj5")

    def test_invalid_kind_and_period(self):
        with pytest.raises(ValueError):
            MetricKind("spread")
        with pytest.raises(ValueError):
            MetricKind("oneobj", 0)


class TestOneObjState:
    def test_initial_uses_rng(self):
        rng = np.random.default_rng(0)
        states = {OneObjState.initial(5, np.random.default_rng(s)).active for s in range(32)}
        assert states == {0, 1}
        s = OneObjState.initial(5, rng)
        assert s.period == 5 and s.generations_since_resample == 0

    def test_period_one_resamples_every_tick(self):
        rng = np.random.default_rng(3)
        s = OneObjState(period=1, active=0)
        seen = set()
        for _ in range(64):
            s = tick_oneobj(s, rng)
            assert s.generations_since_resample == 0
            seen.add(s.active)
        assert seen == {0, 1}

    def test_period_holds_active_objective_between_resamples(self):
        rng = np.random.default_rng(9)
        s = OneObjState(period=10, active=1)
        for tick in range(1, 10):
            s = tick_oneobj(s, rng)
            assert s.active == 1
            assert s.generations_since_resample == tick
        s = tick_oneobj(s, rng)  # 10th tick resamples
        assert s.generations_since_resample == 0

    def test_resample_frequency_statistics(self):
        # over many period-10 cycles, roughly half the resamples pick each side
        rng = np.random.default_rng(11)
        s = OneObjState(period=10, active=0)
        picks = []
        for _ in range(5000):
            prev = s.generations_since_resample
            s = tick_oneobj(s, rng)
            if s.generations_since_resample == 0 and prev == 9:
                picks.append(s.active)
        frac = np.mean(picks)
        assert 0.4 < frac < 0.6


def archive_with(problem, bitstrings):
    arch = Archive(problem)
    for text in bitstrings:
        geno = Bitstring.from_string(text)
        arch.try_insert(Individual(geno, problem.evaluate(geno.bits)))
    return arch


class TestScore:
    def setup_method(self):
        self.problem = make_problem("lotz", 6)
        # archive members (2, 2) and (1, 3)
        self.arch = archive_with(self.problem, ["110100", "101000"])
        assert self.arch.objective_vectors() == [(1, 3), (2, 2)]

    def test_hv_score_is_union_hypervolume(self):
        got = score(MetricKind("hv"), None, self.arch, (3, 2))
        assert got == hypervolume_2d([(2, 2), (1, 3), (3, 2)])

    def test_igd_score_is_negated_union_igd(self):
        got = score(MetricKind("igd"), None, self.arch, (0, 6))
        expect = -igd(
            self.problem.pareto_front(),
            self.arch.objective_vectors() + [(0, 6)],
        )
        assert got == pytest.approx(expect)

    def test_oneobj_score_is_improvement_over_best(self):
        mk = MetricKind("oneobj", 10)
        s0 = OneObjState(period=10, active=0)
        s1 = OneObjState(period=10, active=1)
        assert score(mk, s0, self.arch, (4, 0)) == 2.0  # best y1 is 2
        assert score(mk, s1, self.arch, (4, 0)) == -3.0  # best y2 is 3
        assert score(mk, s0, self.arch, (1, 1)) == -1.0

    def test_oneobj_requires_state(self):
        with pytest.raises(ValueError):
            score(MetricKind("oneobj"), None, self.arch, (1, 1))

    def test_empty_archive_rejected(self):
        with pytest.raises(ValueError):
            score(MetricKind("hv"), None, Archive(self.problem), (1, 1))


class TestGenerationScorer:
    """The incremental scorer must rank candidates exactly like score()."""

    @pytest.mark.parametrize("kind", ["hv", "igd"])
    def test_matches_reference_up_to_constant(self, kind):
        problem = make_problem("lotz", 8)
        rng = np.random.default_rng(17)
        arch = Archive(problem)
        while len(arch) < 3:
            bits = rng.integers(0, 2, 8)
            arch.try_insert(Individual(Bitstring(bits), problem.evaluate(bits)))
        mk = MetricKind(kind)
        scorer = GenerationScorer(mk, problem, rng)
        scorer.begin_generation(arch, rng)
        cands = [tuple(problem.evaluate(rng.integers(0, 2, 8))) for _ in range(12)]
        fast = scorer.score_batch(cands)
        slow = [score(mk, None, arch, y) for y in cands]
        # identical ranking: pairwise differences agree
        for i in range(len(cands)):
            for j in range(len(cands)):
                assert fast[i] - fast[j] == pytest.approx(slow[i] - slow[j], abs=1e-9)

    def test_hv_gain_zero_for_dominated_candidates(self):
        problem = make_problem("oneminmax", 6)
        rng = np.random.default_rng(5)
        arch = archive_with(problem, ["111000"])  # (3, 3)
        scorer = GenerationScorer(MetricKind("hv"), problem, rng)
        scorer.begin_generation(arch, rng)
        # (2, 4) adds the 3 x 1 strip above the incumbent's y2 = 3
        assert scorer.score_batch([(3, 3), (2, 4)]) == [0.0, 3.0]

    def test_oneobj_scorer_uses_frozen_best(self):
        problem = make_problem("lotz", 6)
        rng = np.random.default_rng(2)
        arch = archive_with(problem, ["110100"])  # (2, 1)
        scorer = GenerationScorer(MetricKind("oneobj", 50), problem, rng)
        scorer.begin_generation(arch, rng)
        a = scorer.state.active
        got = scorer.score_batch([(4, 0), (0, 6)])
        expect = [
            score(MetricKind("oneobj", 50), scorer.state, arch, (4, 0)),
            score(MetricKind("oneobj", 50), scorer.state, arch, (0, 6)),
        ]
        assert got == expect
        assert scorer.state.active == a  # scoring does not advance the clock

    @settings(max_examples=60, deadline=None)
    @given(seed=st.integers(0, 10**6))
    def test_hv_gain_matches_union_difference(self, seed):
        rng = np.random.default_rng(seed)
        front = random_nondominated_front(rng, max_points=8, max_coord=12)
        problem = make_problem("oneminmax", 12)
        scorer = GenerationScorer(MetricKind("hv"), problem, rng)
        scorer._y1s = sorted(y[0] for y in front)
        scorer._y2s = [
            y[1] for y in sorted(front, key=lambda y: y[0])
        ]
        base = hypervolume_2d(front)
        cand = (int(rng.integers(0, 13)), int(rng.integers(0, 13)))
        assert scorer._hv_gain(cand) == pytest.approx(
            hypervolume_2d(front + [cand]) - base
        )

    def test_reference_point_constant(self):
        assert HV_REFERENCE == (-1.0, -1.0)
