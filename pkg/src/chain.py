"""
연쇄 법칙
합성 함수 f∘g의 1차/2차 도함수를 텐서 내적으로 계산하고,
행렬 형태의 헤세 연쇄 법칙과 직접 치환 결과로 교차 검증합니다.
"""

import logging
from dataclasses import dataclass
from typing import Sequence

from .deriv import (
    DerivativeTensor,
    VectorFunction,
    derivative_order,
    derivative_step,
    hessian,
    jacobian,
)
from .errors import DomainMismatchError, ShapeMismatchError
from .expr import Expr, VarSpace, substitute
from .tensor import Domain, Tensor, dot, matmul, permute_axes, scale, transpose

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CompositionProblem:
    """f: R^n -> R (y 변수), g: R^m -> R^n (x 변수)"""
    outer: VectorFunction
    inner: VectorFunction

    def __post_init__(self):
        if self.outer.n != 1:
            raise ShapeMismatchError(f"바깥 함수 f는 스칼라여야 합니다: 성분 {self.outer.n}개")
        if self.inner.n != self.outer.m:
            raise ShapeMismatchError(
                f"g의 성분 수({self.inner.n})가 f의 변수 수({self.outer.m})와 다릅니다"
            )

    @property
    def x_vars(self) -> VarSpace:
        return self.inner.domain_vars

    @property
    def y_vars(self) -> VarSpace:
        return self.outer.domain_vars

    @property
    def substitution(self) -> dict[str, Expr]:
        """y^k ← g^k"""
        return dict(zip(self.y_vars, self.inner.components))

    def composed(self) -> Expr:
        """f(g(x))"""
        return substitute(self.outer.components[0], self.substitution)

    def at_inner(self, t: DerivativeTensor) -> Tensor:
        """f의 도함수 텐서에 y ← g를 대입 (x 변수 수식 텐서)"""
        mapping = self.substitution
        return t.values.map(lambda e: substitute(e, mapping), Domain.SYMBOLIC)


def _scalar_outer(p: CompositionProblem) -> VectorFunction:
    f = p.outer
    return f if f.scalar else VectorFunction.of_scalar(f.components[0], f.domain_vars)


def chain_first(p: CompositionProblem) -> DerivativeTensor:
    """D(f∘g) = Df(g) · Dg, Df의 미분 축과 Dg의 성분 축을 페어링 → 형상 (m,)"""
    df_g = p.at_inner(derivative_order(_scalar_outer(p), 1))
    dg = jacobian(p.inner).values
    result = dot(df_g, dg, [(0, 0)])
    return DerivativeTensor(result, 0, 1, p.x_vars)


def chain_second_terms(p: CompositionProblem, pair_first_axis: int = 1) -> tuple[Tensor, Tensor]:
    """2차 연쇄 법칙의 두 항

    term1 = (D²f(g) · Dg) · Dg : D²f의 pair_first_axis 축을 첫 번째 Dg와,
            남은 f 미분 축을 두 번째 Dg와 페어링
    term2 = Df(g) · D²g : f 미분 축을 g의 성분 축과 페어링
    """
    if pair_first_axis not in (0, 1):
        raise ValueError(f"pair_first_axis는 0 또는 1이어야 합니다: {pair_first_axis}")
    f = _scalar_outer(p)
    d2f_g = p.at_inner(derivative_order(f, 2))
    df_g = p.at_inner(derivative_order(f, 1))
    dg = jacobian(p.inner).values
    d2g = derivative_order(p.inner, 2).values

    partial = dot(d2f_g, dg, [(pair_first_axis, 0)])  # (n, m)
    term1 = dot(partial, dg, [(0, 0)])  # (m, m)
    term2 = dot(df_g, d2g, [(0, 0)])  # (m, m)
    logger.debug(f"2차 연쇄 법칙 항: {term1.shape}, {term2.shape}")
    return term1, term2


def chain_second(p: CompositionProblem, pair_first_axis: int = 1) -> DerivativeTensor:
    """D²(f∘g) = (D²f(g)·Dg)·Dg + Df(g)·D²g → 형상 (m, m)"""
    term1, term2 = chain_second_terms(p, pair_first_axis)
    return DerivativeTensor(term1 + term2, 0, 2, p.x_vars)


def hessian_chain_matrix(p: CompositionProblem) -> DerivativeTensor:
    """H(f∘g) = Jgᵀ · Hf(g) · Jg + Σ_k ∂f/∂y^k · Hg^k (행렬곱과 전치만 사용)"""
    f = _scalar_outer(p)
    jg = jacobian(p.inner).values
    hf_g = p.at_inner(hessian(f))
    grad_f_g = p.at_inner(derivative_order(f, 1))

    result = matmul(matmul(transpose(jg), hf_g), jg)
    for k, component in enumerate(p.inner.components):
        hg_k = hessian(VectorFunction.of_scalar(component, p.x_vars)).values
        result = result + scale(hg_k, grad_f_g[k])
    return DerivativeTensor(result, 0, 2, p.x_vars)


def direct_hessian(p: CompositionProblem) -> DerivativeTensor:
    """y ← g를 먼저 대입한 뒤 헤세 행렬 계산 (기호 오라클)"""
    return hessian(VectorFunction.of_scalar(p.composed(), p.x_vars))


def compose_derivative(a: Tensor, z_vars: VarSpace, inner: VectorFunction) -> DerivativeTensor:
    """D(a∘b)[i, j] = Σ_k ∂a[i]/∂z^k |_(z=b(u)) · ∂b^k/∂u^j

    a는 z 변수의 수식 텐서, inner는 z 좌표 수만큼의 성분을 갖는 u의 함수입니다.
    """
    if a.domain is not Domain.SYMBOLIC:
        raise DomainMismatchError("합성 대상 텐서는 수식 텐서여야 합니다")
    if inner.n != len(z_vars):
        raise ShapeMismatchError(f"안쪽 함수 성분 수 {inner.n} != z 변수 수 {len(z_vars)}")
    da = derivative_step(DerivativeTensor(a, a.rank, 0, z_vars))
    mapping = dict(zip(z_vars, inner.components))
    da_b = da.values.map(lambda e: substitute(e, mapping), Domain.SYMBOLIC)
    result = dot(da_b, jacobian(inner).values, [(a.rank, 0)])
    return DerivativeTensor(result, a.rank, 1, inner.domain_vars)


def product_rule_sides(
    a: Tensor,
    b: Tensor,
    pairing: Sequence[tuple[int, int]],
    domain_vars: VarSpace
) -> tuple[DerivativeTensor, DerivativeTensor]:
    """D(a·b)와 Da·b + a·Db (미분 축은 양쪽 모두 마지막)"""
    product = dot(a, b, pairing)
    lhs = derivative_step(DerivativeTensor(product, product.rank, 0, domain_vars))

    da = derivative_step(DerivativeTensor(a, a.rank, 0, domain_vars)).values
    db = derivative_step(DerivativeTensor(b, b.rank, 0, domain_vars)).values

    # Da·b 에서는 미분 축이 a의 남은 축 바로 뒤에 오므로 맨 끝으로 옮김
    da_b = dot(da, b, pairing)
    deriv_axis = a.rank - len(pairing)
    perm = [axis for axis in range(da_b.rank) if axis != deriv_axis] + [deriv_axis]
    da_b = permute_axes(da_b, perm)

    a_db = dot(a, db, pairing)
    rhs = DerivativeTensor(da_b + a_db, product.rank, 1, domain_vars)
    return lhs, rhs
