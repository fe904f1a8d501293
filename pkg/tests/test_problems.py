"""Tests for the benchmark problems, anchored by brute-force oracles."""

import itertools

import numpy as np
import pytest

from gsemo import COCZ, LOTZ, PROBLEMS, OneMinMax, make_problem, strictly_dominates


def brute_force_front(problem):
    """Non-dominated subset of every objective vector, by exhaustive search."""
    seen = {
        problem.evaluate(np.array(x, dtype=np.uint8))
        for x in itertools.product((0, 1), repeat=problem.n)
    }
    return {
        y for y in seen if not any(strictly_dominates(z, y) for z in seen)
    }


class TestEvaluate:
    @pytest.mark.parametrize(
        "token, x, expected",
        [
            ("oneminmax", "0110", (2, 2)),
            ("oneminmax", "1111", (4, 0)),
            ("lotz", "11010", (2, 1)),
            ("lotz", "00000", (0, 5)),
            ("lotz", "11111", (5, 0)),
            ("cocz", "1110", (3, 3)),
            ("cocz", "1100", (2, 4)),
        ],
    )
    def test_hand_values(self, token, x, expected):
        problem = make_problem(token, len(x))
        assert problem.evaluate(np.array([int(c) for c in x], np.uint8)) == expected

    @pytest.mark.parametrize("token", sorted(PROBLEMS))
    @pytest.mark.parametrize("n", [2, 6, 16, 40])
    def test_batch_matches_scalar(self, token, n):
        problem = make_problem(token, n)
        rng = np.random.default_rng(7)
        mat = rng.integers(0, 2, (200, n), dtype=np.uint8)
        batch = problem.evaluate_batch(mat)
        assert batch.shape == (200, 2)
        for row, y in zip(mat, batch):
            assert tuple(y) == problem.evaluate(row)

    def test_oneminmax_objectives_always_sum_to_n(self):
        problem = OneMinMax(30)
        rng = np.random.default_rng(0)
        for _ in range(100):
            y = problem.evaluate(rng.integers(0, 2, 30, dtype=np.uint8))
            assert y[0] + y[1] == 30

    def test_lotz_sum_bound_with_equality_iff_front_shape(self):
        problem = LOTZ(10)
        for x in itertools.product((0, 1), repeat=10):
            y = problem.evaluate(np.array(x, np.uint8))
            assert y[0] + y[1] <= 10
            is_front_shape = all(x[i] >= x[i + 1] for i in range(9))
            assert (y[0] + y[1] == 10) == is_front_shape

    def test_rejects_wrong_length(self):
        with pytest.raises(ValueError):
            OneMinMax(4).evaluate(np.zeros(5, dtype=np.uint8))


class TestParetoFront:
    @pytest.mark.parametrize("token", sorted(PROBLEMS))
    @pytest.mark.parametrize("n", [4, 8, 12])
    def test_matches_brute_force(self, token, n):
        problem = make_problem(token, n)
        assert set(problem.pareto_front()) == brute_force_front(problem)

    def test_sizes(self):
        assert len(OneMinMax(100).pareto_front()) == 101
        assert len(LOTZ(100).pareto_front()) == 101
        assert len(COCZ(100).pareto_front()) == 51

    def test_explicit_small_fronts(self):
        assert LOTZ(3).pareto_front() == {(0, 3), (1, 2), (2, 1), (3, 0)}
        assert OneMinMax(2).pareto_front() == {(0, 2), (1, 1), (2, 0)}
        assert COCZ(4).pareto_front() == {(2, 4), (3, 3), (4, 2)}

    @pytest.mark.parametrize(
        "token, n, y, expected",
        [
            ("oneminmax", 4, (2, 2), True),
            ("oneminmax", 4, (2, 1), False),
            ("lotz", 4, (2, 1), False),
            ("lotz", 4, (2, 2), True),
            ("cocz", 4, (2, 2), False),
            ("cocz", 4, (3, 3), True),
        ],
    )
    def test_is_pareto_optimal(self, token, n, y, expected):
        assert make_problem(token, n).is_pareto_optimal(y) is expected

    def test_front_is_cached(self):
        problem = LOTZ(6)
        assert problem.pareto_front() is problem.pareto_front()


class TestConstruction:
    def test_make_problem_tokens_case_insensitive(self):
        assert isinstance(make_problem("OneMinMax", 4), OneMinMax)
        assert isinstance(make_problem("LOTZ", 4), LOTZ)
        assert isinstance(make_problem("cocz", 4), COCZ)

    def test_unknown_token(self):
        with pytest.raises(ValueError, match="unknown problem"):
            make_problem("onemax", 4)

    def test_cocz_requires_even_dimension(self):
        with pytest.raises(ValueError, match="even"):
            COCZ(5)

    @pytest.mark.parametrize("n", [1, 0, -3, 2.5])
    def test_dimension_validation(self, n):
        with pytest.raises(ValueError):
            OneMinMax(n)

    def test_repr(self):
        assert repr(LOTZ(8)) == "LOTZ(n=8)"
