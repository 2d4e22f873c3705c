"""종단 간 수용 테스트

로젠브록 예제의 정확한 재현과, 무작위 다항식 문제에서 세 가지 헤세 행렬 계산 경로
(텐서 연쇄 법칙, 행렬 연쇄 법칙, 직접 대입) 및 유한 차분의 일치를 확인합니다.
"""

import random
import time
from fractions import Fraction

import numpy as np
import pytest

from src.chain import chain_second, direct_hessian, hessian_chain_matrix, product_rule_sides
from src.cli import EXIT_OK, TensorChainCLI
from src.deriv import derivative_order, eval_tensor, point_from_values
from src.expr import VarSpace, expr_equal
from src.fd_oracle import FDConfig, compare_tensors, composed_evaluable, fd_hessian
from src.generators import (
    problem_file_text,
    random_point,
    random_problem,
    random_rational_matrix,
    random_tensor_function,
)
from src.tensor import Tensor, dot, is_symmetric_in_axes

XS = VarSpace.of("x1", "x2")


def tensors_equal(a, b):
    a = getattr(a, "values", a)
    b = getattr(b, "values", b)
    return a.shape == b.shape and all(
        expr_equal(a[index], b[index]) for index in np.ndindex(*a.shape)
    )


def assert_derivative_axes_symmetric(t):
    assert is_symmetric_in_axes(t.values, t.derivative_axes), t.values


class TestRosenbrock:

    def test_exact_hessian(self, rosenbrock):
        start = time.perf_counter()
        result = chain_second(rosenbrock)
        assert tensors_equal(result, Tensor.from_nested([[2, 0], [0, 200]]).to_symbolic())
        assert time.perf_counter() - start < 1.0

    def test_value_is_constant(self, rosenbrock, rng):
        expected = Tensor.from_nested([[2, 0], [0, 200]])
        result = chain_second(rosenbrock)
        for _ in range(5):
            point = {"x1": Fraction(rng.randint(-9, 9), 7), "x2": Fraction(rng.randint(-9, 9), 5)}
            assert eval_tensor(result, point).equals(expected)

    def test_listing_comment_value_is_rejected(self):
        report = compare_tensors(
            Tensor.from_nested([[2, 0], [0, 200]]),
            Tensor.from_nested([[2, 0], [0, 100]]),
            1e-5,
        )
        assert not report.passed
        assert report.worst_index == (1, 1)


class TestRandomizedChainRule:

    @pytest.fixture(scope="class")
    def suite(self):
        rng = random.Random(7)
        return [random_problem(rng, max_m=3, max_n=3, outer_degree=3, inner_degree=3) for _ in range(200)]

    def test_matrix_form_agrees(self, suite):
        start = time.perf_counter()
        for p in suite:
            assert tensors_equal(hessian_chain_matrix(p), chain_second(p))
        assert time.perf_counter() - start < 30.0

    def test_direct_substitution_agrees(self, suite):
        for p in suite:
            assert tensors_equal(chain_second(p), direct_hessian(p))

    def test_derivative_axes_symmetric(self, suite):
        for p in suite:
            assert_derivative_axes_symmetric(chain_second(p))
            assert_derivative_axes_symmetric(hessian_chain_matrix(p))
            assert_derivative_axes_symmetric(direct_hessian(p))
            assert_derivative_axes_symmetric(derivative_order(p.outer, 2))
            assert_derivative_axes_symmetric(derivative_order(p.inner, 2))


class TestFiniteDifferenceCrossCheck:

    def test_random_problems(self, rng):
        cfg = FDConfig(h=1e-4)
        for _ in range(50):
            p = random_problem(rng)
            exact = chain_second(p)
            assert_derivative_axes_symmetric(exact)
            tolerance = 1e-6 if p.composed().polynomial.degree <= 2 else 1e-4
            evaluable = composed_evaluable(p)
            for _ in range(10):
                point = random_point(p.x_vars, rng)
                value = eval_tensor(exact, point_from_values(p.x_vars, point, as_float=True))
                approx = fd_hessian(evaluable, point, cfg)
                assert is_symmetric_in_axes(approx, (0, 1))
                assert is_symmetric_in_axes(value, (0, 1))
                report = compare_tensors(value, approx, tolerance)
                assert report.passed, f"{p.composed()} @ {point}: {report.to_json()}"


class TestMatmul:

    def test_against_triple_loop(self, rng):
        for _ in range(100):
            rows, inner, cols = (rng.randint(1, 5) for _ in range(3))
            a = random_rational_matrix(rows, inner, rng)
            b = random_rational_matrix(inner, cols, rng)
            expected = [
                [sum((a[i, k] * b[k, j] for k in range(inner)), Fraction(0)) for j in range(cols)]
                for i in range(rows)
            ]
            assert dot(a, b, [(1, 0)]).equals(Tensor.from_nested(expected))


class TestProductRule:

    def test_random_pairs(self, rng):
        for _ in range(100):
            rank_a, rank_b = rng.randint(1, 2), rng.randint(1, 2)
            shared = rng.randint(1, 3)
            shape_a = (rng.randint(1, 2),) * (rank_a - 1) + (shared,)
            shape_b = (shared,) + (rng.randint(1, 2),) * (rank_b - 1)
            a = random_tensor_function(XS, shape_a, 2, rng, max_terms=2)
            b = random_tensor_function(XS, shape_b, 2, rng, max_terms=2)
            lhs, rhs = product_rule_sides(a, b, [(rank_a - 1, 0)], XS)
            assert tensors_equal(lhs, rhs)


class TestVerifyEndToEnd:

    def test_generated_problem_files(self, tmp_path, monkeypatch, rng, capsys):
        monkeypatch.chdir(tmp_path)
        for i in range(10):
            p = random_problem(rng)
            points = [random_point(p.x_vars, rng) for _ in range(2)]
            path = tmp_path / f"problem_{i}.txt"
            path.write_text(problem_file_text(p, points), encoding="utf-8")
            code = TensorChainCLI().run(["verify", "--file", str(path), "--json"])
            assert code == EXIT_OK, capsys.readouterr().out
            capsys.readouterr()
