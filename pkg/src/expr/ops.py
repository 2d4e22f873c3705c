"""
수식 연산
평가, 기호 미분, 동시 치환, 단순화, 동치 판정을 제공합니다.
"""

import logging
import random
from fractions import Fraction
from functools import singledispatch
from typing import Mapping, Optional, Union

from ..errors import UnassignedVariableError
from .nodes import Add, Const, Expr, Mul, Neg, Pow, Var, VarSpace

logger = logging.getLogger(__name__)

Scalar = Union[int, float, Fraction]

DEFAULT_EQUALITY_POINTS = 20


def simplify(expr: Expr) -> Expr:
    """정규형 (평탄화, 단항식 정렬, 동류항 정리, 상수 접기)"""
    return expr.polynomial.to_expr()


def variables(expr: Expr) -> frozenset[str]:
    """수식에 등장하는 변수 이름"""
    return _collect_variables(expr)


@singledispatch
def _collect_variables(expr: Expr) -> frozenset[str]:
    raise TypeError(type(expr).__name__)


@_collect_variables.register
def _(expr: Const) -> frozenset[str]:
    return frozenset()


@_collect_variables.register
def _(expr: Var) -> frozenset[str]:
    return frozenset((expr.name,))


@_collect_variables.register
def _(expr: Neg) -> frozenset[str]:
    return _collect_variables(expr.operand)


@_collect_variables.register
def _(expr: Add) -> frozenset[str]:
    return frozenset().union(*map(_collect_variables, expr.terms))


@_collect_variables.register
def _(expr: Mul) -> frozenset[str]:
    return frozenset().union(*map(_collect_variables, expr.factors))


@_collect_variables.register
def _(expr: Pow) -> frozenset[str]:
    return _collect_variables(expr.base)


# === 평가 ===

def evaluate(expr: Expr, point: Mapping[str, Scalar]) -> Scalar:
    """점에서의 값 (유리수 입력이면 정확한 Fraction, 아니면 float)"""
    values = {name: _as_number(value) for name, value in point.items()}
    result = _evaluate(expr, values)
    if any(isinstance(value, float) for value in values.values()):
        return float(result)
    return result


def _as_number(value: Scalar) -> Scalar:
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return Fraction(value)
    return float(value)


@singledispatch
def _evaluate(expr: Expr, values: Mapping[str, Scalar]) -> Scalar:
    raise TypeError(type(expr).__name__)


@_evaluate.register
def _(expr: Const, values: Mapping[str, Scalar]) -> Scalar:
    return expr.value


@_evaluate.register
def _(expr: Var, values: Mapping[str, Scalar]) -> Scalar:
    try:
        return values[expr.name]
    except KeyError:
        raise UnassignedVariableError(expr.name) from None


@_evaluate.register
def _(expr: Neg, values: Mapping[str, Scalar]) -> Scalar:
    return -_evaluate(expr.operand, values)


@_evaluate.register
def _(expr: Add, values: Mapping[str, Scalar]) -> Scalar:
    total: Scalar = Fraction(0)
    for term in expr.terms:
        total = total + _evaluate(term, values)
    return total


@_evaluate.register
def _(expr: Mul, values: Mapping[str, Scalar]) -> Scalar:
    product: Scalar = Fraction(1)
    for factor in expr.factors:
        product = product * _evaluate(factor, values)
    return product


@_evaluate.register
def _(expr: Pow, values: Mapping[str, Scalar]) -> Scalar:
    return _evaluate(expr.base, values) ** expr.exponent


# === 미분 ===

def differentiate(expr: Expr, variable: str) -> Expr:
    """편미분 (결과는 정규형)"""
    return simplify(_derive(expr, variable))


@singledispatch
def _derive(expr: Expr, variable: str) -> Expr:
    raise TypeError(type(expr).__name__)


@_derive.register
def _(expr: Const, variable: str) -> Expr:
    return Const(0)


@_derive.register
def _(expr: Var, variable: str) -> Expr:
    return Const(1 if expr.name == variable else 0)


@_derive.register
def _(expr: Neg, variable: str) -> Expr:
    return Neg(_derive(expr.operand, variable))


@_derive.register
def _(expr: Add, variable: str) -> Expr:
    return Add(tuple(_derive(term, variable) for term in expr.terms))


@_derive.register
def _(expr: Mul, variable: str) -> Expr:
    # 곱의 미분법: 인자 하나씩 미분한 항들의 합
    terms = []
    for i, factor in enumerate(expr.factors):
        rest = expr.factors[:i] + (_derive(factor, variable),) + expr.factors[i + 1:]
        terms.append(Mul(rest))
    return Add(tuple(terms))


@_derive.register
def _(expr: Pow, variable: str) -> Expr:
    if expr.exponent == 0:
        return Const(0)
    return Mul((
        Const(expr.exponent),
        Pow(expr.base, expr.exponent - 1),
        _derive(expr.base, variable),
    ))


# === 치환 ===

def substitute(expr: Expr, mapping: Mapping[str, Expr]) -> Expr:
    """동시 치환 (치환된 결과를 다시 치환하지 않음)"""
    return simplify(_replace(expr, mapping))


@singledispatch
def _replace(expr: Expr, mapping: Mapping[str, Expr]) -> Expr:
    raise TypeError(type(expr).__name__)


@_replace.register
def _(expr: Const, mapping: Mapping[str, Expr]) -> Expr:
    return expr


@_replace.register
def _(expr: Var, mapping: Mapping[str, Expr]) -> Expr:
    return mapping.get(expr.name, expr)


@_replace.register
def _(expr: Neg, mapping: Mapping[str, Expr]) -> Expr:
    return Neg(_replace(expr.operand, mapping))


@_replace.register
def _(expr: Add, mapping: Mapping[str, Expr]) -> Expr:
    return Add(tuple(_replace(term, mapping) for term in expr.terms))


@_replace.register
def _(expr: Mul, mapping: Mapping[str, Expr]) -> Expr:
    return Mul(tuple(_replace(factor, mapping) for factor in expr.factors))


@_replace.register
def _(expr: Pow, mapping: Mapping[str, Expr]) -> Expr:
    return Pow(_replace(expr.base, mapping), expr.exponent)


# === 동치 판정 ===

def expr_equal(
    a: Expr,
    b: Expr,
    var_space: Optional[VarSpace] = None,
    points: int = DEFAULT_EQUALITY_POINTS,
    seed: int = 0
) -> bool:
    """정규형 비교

    정규형은 다항식에 대해 완전하므로 정규형이 다르면 곧바로 False입니다.
    정규형을 만들 수 없는 노드(to_polynomial 미등록 확장 노드)가 있을 때만
    임의 유리수 점들에서의 값 비교로 판정합니다.
    """
    try:
        return simplify(a) == simplify(b)
    except TypeError as e:
        logger.debug(f"정규형 생성 실패, 점 비교로 판정: {e}")

    if var_space is not None:
        names = list(var_space)
    else:
        names = sorted(variables(a) | variables(b))

    rng = random.Random(seed)
    for _ in range(max(points, DEFAULT_EQUALITY_POINTS)):
        point = {
            name: Fraction(rng.randint(-50, 50), rng.randint(1, 12))
            for name in names
        }
        if evaluate(a, point) != evaluate(b, point):
            return False

    return True
