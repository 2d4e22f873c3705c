"""
임의 다항식 문제 생성
속성 기반 검증과 종단 간 검사에 쓰이는 무작위 다항식, 텐서 함수, 문제 파일을 만듭니다.
"""

import random
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .chain import CompositionProblem
from .deriv import VectorFunction
from .expr import Expr, Polynomial, VarSpace, to_string
from .expr.printer import format_rational
from .tensor import Domain, Tensor


def random_polynomial(
    domain_vars: VarSpace,
    degree: int,
    rng: random.Random,
    max_terms: int = 4,
    coeff_range: int = 5
) -> Expr:
    """총차수 degree 이하의 정수 계수 다항식"""
    result = Polynomial()
    for _ in range(rng.randint(1, max_terms)):
        term = Polynomial.constant(rng.randint(-coeff_range, coeff_range))
        for _ in range(rng.randint(0, degree)):
            term = term * Polynomial.variable(rng.choice(domain_vars.names))
        result = result + term
    return result.to_expr()


def random_problem(
    rng: random.Random,
    max_m: int = 3,
    max_n: int = 3,
    outer_degree: int = 3,
    inner_degree: int = 3,
    coeff_range: int = 5,
    max_terms: int = 4
) -> CompositionProblem:
    """f: R^n -> R, g: R^m -> R^n 무작위 합성 문제"""
    m = rng.randint(1, max_m)
    n = rng.randint(1, max_n)
    x_vars = VarSpace(tuple(f"x{i + 1}" for i in range(m)))
    y_vars = VarSpace(tuple(f"y{i + 1}" for i in range(n)))
    f = random_polynomial(y_vars, outer_degree, rng, max_terms, coeff_range)
    g = [random_polynomial(x_vars, inner_degree, rng, max_terms, coeff_range) for _ in range(n)]
    return CompositionProblem(
        outer=VectorFunction.of_scalar(f, y_vars),
        inner=VectorFunction(tuple(g), x_vars),
    )


def random_tensor_function(
    domain_vars: VarSpace,
    shape: Sequence[int],
    degree: int,
    rng: random.Random,
    max_terms: int = 3
) -> Tensor:
    """원소가 무작위 다항식인 수식 텐서"""
    array = np.empty(tuple(shape), dtype=object)
    for index in np.ndindex(*array.shape):
        array[index] = random_polynomial(domain_vars, degree, rng, max_terms)
    return Tensor(array, Domain.SYMBOLIC)


def random_rational_matrix(rows: int, cols: int, rng: random.Random, bound: int = 9) -> Tensor:
    """작은 유리수 원소의 행렬"""
    data = [
        [Fraction(rng.randint(-bound, bound), rng.randint(1, 4)) for _ in range(cols)]
        for _ in range(rows)
    ]
    return Tensor.from_nested(data, Domain.RATIONAL)


def random_point(domain_vars: VarSpace, rng: random.Random, radius: float = 1.0) -> list[float]:
    return [rng.uniform(-radius, radius) for _ in domain_vars]


def problem_file_text(p: CompositionProblem, points: Optional[Sequence[Sequence]] = None) -> str:
    """문제 파일 형식으로 직렬화"""
    lines = [
        f"xvars: {' '.join(p.x_vars)}",
        f"yvars: {' '.join(p.y_vars)}",
        f"f: {to_string(p.outer.components[0])}",
    ]
    for name, component in zip(p.y_vars, p.inner.components):
        lines.append(f"g {name}: {to_string(component)}")
    for point in points or ():
        lines.append("point: " + " ".join(_format_coordinate(v) for v in point))
    return "\n".join(lines) + "\n"


def _format_coordinate(value) -> str:
    if isinstance(value, Fraction):
        return format_rational(value)
    return repr(float(value)) if isinstance(value, float) else str(value)
