"""
다항식 정규형
수식을 단항식→계수 사전으로 전개하여 정렬·동류항 정리를 수행합니다.
"""

import re
from fractions import Fraction
from functools import singledispatch
from typing import Iterable, Mapping

from .nodes import Add, Const, Expr, Mul, Neg, Pow, Var

# 단항식: 변수 이름 순으로 정렬된 (이름, 지수) 쌍
Monomial = tuple[tuple[str, int], ...]


def name_key(name: str) -> tuple:
    """자연 정렬 키 (x2 < x10)"""
    parts = tuple(
        (0, int(part)) if part.isdigit() else (1, part)
        for part in re.split(r"(\d+)", name) if part
    )
    return parts, name


def _monomial(powers: Mapping[str, int]) -> Monomial:
    return tuple(sorted(
        ((name, exp) for name, exp in powers.items() if exp),
        key=lambda item: name_key(item[0])
    ))


def _mul_monomials(a: Monomial, b: Monomial) -> Monomial:
    powers = dict(a)
    for name, exp in b:
        powers[name] = powers.get(name, 0) + exp
    return _monomial(powers)


def term_order(monomial: Monomial) -> tuple:
    """항 정렬 키: 차수 내림차순, 같은 차수는 사전식 (앞 변수의 지수가 큰 항 먼저)"""
    degree = sum(exp for _, exp in monomial)
    return -degree, tuple((name_key(name), -exp) for name, exp in monomial)


class Polynomial:
    """유리수 계수 다변수 다항식 (불변)"""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Fraction] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        collected: dict[Monomial, Fraction] = {}
        for monomial, coeff in items:
            collected[monomial] = collected.get(monomial, Fraction(0)) + Fraction(coeff)
        self._terms = {m: c for m, c in collected.items() if c != 0}
        self._hash = None

    @classmethod
    def constant(cls, value) -> "Polynomial":
        return cls({(): Fraction(value)})

    @classmethod
    def variable(cls, name: str) -> "Polynomial":
        return cls({((name, 1),): Fraction(1)})

    # === 조회 ===

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not monomial for monomial in self._terms)

    def constant_value(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    @property
    def degree(self) -> int:
        return max((sum(e for _, e in m) for m in self._terms), default=0)

    @property
    def variables(self) -> frozenset[str]:
        return frozenset(name for monomial in self._terms for name, _ in monomial)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda item: term_order(item[0]))

    # === 연산 ===

    def __add__(self, other: "Polynomial") -> "Polynomial":
        merged = dict(self._terms)
        for monomial, coeff in other._terms.items():
            merged[monomial] = merged.get(monomial, Fraction(0)) + coeff
        return Polynomial(merged)

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        product: dict[Monomial, Fraction] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                monomial = _mul_monomials(ma, mb)
                product[monomial] = product.get(monomial, Fraction(0)) + ca * cb
        return Polynomial(product)

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError(f"지수는 음이 아닌 정수여야 합니다: {exponent}")
        result = Polynomial.constant(1)
        base = self
        # 제곱 반복
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def derivative(self, name: str) -> "Polynomial":
        """한 변수에 대한 편미분"""
        result: dict[Monomial, Fraction] = {}
        for monomial, coeff in self._terms.items():
            powers = dict(monomial)
            exp = powers.get(name, 0)
            if not exp:
                continue
            powers[name] = exp - 1
            key = _monomial(powers)
            result[key] = result.get(key, Fraction(0)) + coeff * exp
        return Polynomial(result)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({self.sorted_terms()!r})"

    # === 수식 트리 변환 ===

    def to_expr(self) -> Expr:
        """정규형 수식 트리 생성

        항은 term_order 순서로 나열되고, 각 항은 계수(1이면 생략, -1이면 Neg)와
        변수 거듭제곱의 곱으로 표현됩니다.
        """
        terms = [_term_expr(monomial, coeff) for monomial, coeff in self.sorted_terms()]
        if not terms:
            expr: Expr = Const(0)
        elif len(terms) == 1:
            expr = terms[0]
        else:
            expr = Add(tuple(terms))
        expr.__dict__["polynomial"] = self
        return expr


def _term_expr(monomial: Monomial, coeff: Fraction) -> Expr:
    factors: list[Expr] = [
        Var(name) if exp == 1 else Pow(Var(name), exp)
        for name, exp in monomial
    ]
    if not factors:
        return Const(coeff)
    body = factors[0] if len(factors) == 1 else Mul(tuple(factors))
    if coeff == 1:
        return body
    if coeff == -1:
        return Neg(body)
    return Mul((Const(coeff), *factors))


# === 수식 트리 → 다항식 ===

@singledispatch
def to_polynomial(expr: Expr) -> Polynomial:
    raise TypeError(f"다항식으로 변환할 수 없는 노드: {type(expr).__name__}")


@to_polynomial.register
def _(expr: Const) -> Polynomial:
    return Polynomial.constant(expr.value)


@to_polynomial.register
def _(expr: Var) -> Polynomial:
    return Polynomial.variable(expr.name)


@to_polynomial.register
def _(expr: Neg) -> Polynomial:
    return -expr.operand.polynomial


@to_polynomial.register
def _(expr: Add) -> Polynomial:
    result = Polynomial()
    for term in expr.terms:
        result = result + term.polynomial
    return result


@to_polynomial.register
def _(expr: Mul) -> Polynomial:
    result = Polynomial.constant(1)
    for factor in expr.factors:
        result = result * factor.polynomial
    return result


@to_polynomial.register
def _(expr: Pow) -> Polynomial:
    return expr.base.polynomial ** expr.exponent
