"""
도함수 텐서
스칼라/벡터 값 함수의 임의 차수 도함수 텐서를 만듭니다.
미분 축은 항상 마지막에 추가됩니다 (기존 축이 먼저).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

import numpy as np

from .errors import ShapeMismatchError, UndeclaredVariableError
from .expr import Expr, VarSpace, differentiate, evaluate, parse, variables
from .tensor import Domain, Tensor, is_symmetric_in_axes, permute_axes

logger = logging.getLogger(__name__)

Point = Mapping[str, Union[int, float, Fraction]]


@dataclass(frozen=True)
class VectorFunction:
    """g = (g^1, ..., g^n): R^m -> R^n

    scalar=True 이면 성분이 하나인 스칼라 함수로, 도함수 텐서에서 성분 축이 생략됩니다.
    """
    components: tuple[Expr, ...]
    domain_vars: VarSpace
    scalar: bool = False

    def __post_init__(self):
        components = tuple(self.components)
        object.__setattr__(self, "components", components)
        if not components:
            raise ShapeMismatchError("성분이 하나 이상 필요합니다")
        if self.scalar and len(components) != 1:
            raise ShapeMismatchError(f"스칼라 함수는 성분이 하나여야 합니다: {len(components)}개")
        for component in components:
            for name in sorted(variables(component)):
                if name not in self.domain_vars:
                    raise UndeclaredVariableError(name)

    @classmethod
    def of_scalar(cls, expr: Expr, domain_vars: VarSpace) -> "VectorFunction":
        return cls((expr,), domain_vars, scalar=True)

    @classmethod
    def parse(cls, texts: Sequence[str], domain_vars: VarSpace, scalar: bool = False) -> "VectorFunction":
        return cls(tuple(parse(text, domain_vars) for text in texts), domain_vars, scalar)

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def m(self) -> int:
        return len(self.domain_vars)

    def value_tensor(self) -> Tensor:
        """성분 텐서 (스칼라면 랭크 0)"""
        if self.scalar:
            return Tensor.scalar(self.components[0], Domain.SYMBOLIC)
        return Tensor.from_flat((self.n,), list(self.components), Domain.SYMBOLIC)

    def evaluate(self, point: Point) -> list:
        return [evaluate(component, point) for component in self.components]


@dataclass(frozen=True)
class DerivativeTensor:
    """값 축 + 미분 축(미분 순서대로 뒤에 붙음)으로 이루어진 수식 텐서"""
    values: Tensor
    value_axes: int
    deriv_axes: int
    domain_vars: VarSpace

    def __post_init__(self):
        if self.values.domain is not Domain.SYMBOLIC:
            raise ShapeMismatchError("도함수 텐서의 원소는 수식이어야 합니다")
        if self.values.rank != self.value_axes + self.deriv_axes:
            raise ShapeMismatchError(
                f"랭크 {self.values.rank} != 값 축 {self.value_axes} + 미분 축 {self.deriv_axes}"
            )
        m = len(self.domain_vars)
        for axis in self.derivative_axes:
            if self.values.shape[axis] != m:
                raise ShapeMismatchError(f"미분 축 {axis}의 크기는 {m}이어야 합니다")

    @classmethod
    def of_function(cls, f: VectorFunction) -> "DerivativeTensor":
        """미분하기 전의 성분 텐서"""
        return cls(f.value_tensor(), 0 if f.scalar else 1, 0, f.domain_vars)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.values.shape

    @property
    def derivative_axes(self) -> tuple[int, ...]:
        return tuple(range(self.value_axes, self.value_axes + self.deriv_axes))

    def __getitem__(self, index):
        return self.values[index]

    def is_symmetric(self) -> bool:
        """미분 축 사이의 대칭성 (슈바르츠 정리)"""
        if self.deriv_axes < 2:
            return True
        return is_symmetric_in_axes(self.values, self.derivative_axes)

    def to_json(self) -> dict:
        payload = self.values.to_json()
        payload.update({
            "value_axes": self.value_axes,
            "deriv_axes": self.deriv_axes,
            "vars": list(self.domain_vars),
        })
        return payload

    @classmethod
    def from_json(cls, payload: dict) -> "DerivativeTensor":
        domain_vars = VarSpace(tuple(payload["vars"]))
        values = Tensor.from_json(payload, variables=domain_vars)
        return cls(values, payload["value_axes"], payload["deriv_axes"], domain_vars)


def derivative_step(t: DerivativeTensor) -> DerivativeTensor:
    """(D a)[i, j] = da[i]/du^j, 새 축(크기 m)을 마지막에 추가"""
    slices = [
        t.values.map(lambda e, name=name: differentiate(e, name), Domain.SYMBOLIC).array
        for name in t.domain_vars
    ]
    stacked = np.stack(slices, axis=-1)
    logger.debug(f"미분 단계: {t.shape} -> {stacked.shape}")
    return DerivativeTensor(
        Tensor(stacked, Domain.SYMBOLIC),
        t.value_axes,
        t.deriv_axes + 1,
        t.domain_vars
    )


def derivative_order(f: VectorFunction, k: int) -> DerivativeTensor:
    """k차 도함수 텐서, 형상 (n, m, ..., m) (스칼라면 (m, ..., m))"""
    if k < 1:
        raise ValueError(f"차수는 1 이상이어야 합니다: {k}")
    t = DerivativeTensor.of_function(f)
    for _ in range(k):
        t = derivative_step(t)
    return t


def jacobian(g: VectorFunction) -> DerivativeTensor:
    """(Dg)[i, j] = dg^i/dx^j, 형상 (n, m)"""
    if g.scalar:
        g = VectorFunction(g.components, g.domain_vars)
    return derivative_order(g, 1)


def hessian(f: VectorFunction) -> DerivativeTensor:
    """스칼라 함수의 헤세 행렬, 형상 (m, m)"""
    if f.n != 1:
        raise ShapeMismatchError(f"헤세 행렬은 스칼라 함수에만 정의됩니다: 성분 {f.n}개")
    if not f.scalar:
        f = VectorFunction.of_scalar(f.components[0], f.domain_vars)
    return derivative_order(f, 2)


def eval_tensor(t: Union[DerivativeTensor, Tensor], point: Point) -> Tensor:
    """원소별 평가 (유리수 점이면 정확한 값)"""
    values = t.values if isinstance(t, DerivativeTensor) else t
    return values.map(lambda e: evaluate(e, point))


def derivative_first_layout(t: DerivativeTensor) -> Tensor:
    """미분 축을 앞에 두는 배치로 변환

    가장 최근 미분 축이 맨 앞, 그 다음 이전 미분 축들, 마지막에 값 축이 옵니다.
    일부 라이브러리(예: SymPy의 derive_by_array)의 배열과 비교할 때 사용합니다.
    """
    perm = list(reversed(t.derivative_axes)) + list(range(t.value_axes))
    return permute_axes(t.values, perm)


def point_from_values(domain_vars: VarSpace, values: Sequence, as_float: bool = False) -> dict:
    """좌표 순서 값 목록 → 평가용 매핑"""
    assignment = domain_vars.assign(values)
    if as_float:
        return {name: float(value) for name, value in assignment.items()}
    return assignment
