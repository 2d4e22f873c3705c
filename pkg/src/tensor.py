"""
텐서 코어
행 우선(row-major) 다차원 배열과 텐서곱, 축약, 일반화된 내적(페어링 + 합산)을 제공합니다.
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from .errors import (
    DomainMismatchError,
    InvalidPairingError,
    InvalidPermutationError,
    ShapeMismatchError,
    TensorIndexError,
)
from .expr import Const, Expr, parse, to_string
from .expr.nodes import VarSpace
from .expr.printer import format_rational

logger = logging.getLogger(__name__)

Shape = tuple[int, ...]


class Domain(Enum):
    """원소 도메인 (텐서당 하나)"""
    RATIONAL = "rational"
    FLOAT = "float"
    SYMBOLIC = "symbolic"

    @property
    def dtype(self) -> type:
        return float if self is Domain.FLOAT else object


def _infer_domain(values: Iterable[Any]) -> Domain:
    domains = set()
    for value in values:
        if isinstance(value, Expr):
            domains.add(Domain.SYMBOLIC)
        elif isinstance(value, (int, Fraction, np.integer)) and not isinstance(value, bool):
            domains.add(Domain.RATIONAL)
        elif isinstance(value, (float, np.floating)):
            domains.add(Domain.FLOAT)
        else:
            raise DomainMismatchError(f"지원하지 않는 원소 타입: {type(value).__name__}")
    if len(domains) > 1:
        raise DomainMismatchError(f"원소 도메인이 섞여 있습니다: {sorted(d.value for d in domains)}")
    return domains.pop() if domains else Domain.RATIONAL


def _normalize(array: np.ndarray, domain: Domain) -> np.ndarray:
    if domain is Domain.FLOAT:
        return np.array(array, dtype=float)
    out = np.empty(array.shape, dtype=object)
    for index, value in np.ndenumerate(array):
        if domain is Domain.RATIONAL:
            if isinstance(value, Expr) or isinstance(value, (float, np.floating)):
                raise DomainMismatchError(f"유리수 텐서에 {type(value).__name__} 원소")
            out[index] = Fraction(int(value)) if isinstance(value, np.integer) else Fraction(value)
        else:
            if not isinstance(value, Expr):
                raise DomainMismatchError(f"수식 텐서에 {type(value).__name__} 원소")
            out[index] = value
    return out


@dataclass(frozen=True, eq=False)
class Tensor:
    """불변 밀집 텐서"""
    array: np.ndarray
    domain: Domain

    def __post_init__(self):
        array = _normalize(np.asarray(self.array, dtype=self.domain.dtype), self.domain)
        if any(extent < 1 for extent in array.shape):
            raise ShapeMismatchError(f"축 크기는 1 이상이어야 합니다: {array.shape}")
        array.setflags(write=False)
        object.__setattr__(self, "array", array)

    # === 생성 ===

    @classmethod
    def from_nested(cls, values: Any, domain: Optional[Domain] = None) -> "Tensor":
        """중첩 리스트로부터 생성 (도메인 미지정 시 원소로부터 추론)"""
        array = np.array(values, dtype=object)
        if domain is None:
            domain = _infer_domain(array.flat)
        return cls(array, domain)

    @classmethod
    def from_flat(cls, shape: Sequence[int], data: Sequence[Any], domain: Optional[Domain] = None) -> "Tensor":
        shape = tuple(shape)
        if len(data) != int(np.prod(shape, dtype=int)):
            raise ShapeMismatchError(f"데이터 길이 {len(data)}가 형상 {shape}와 맞지 않습니다")
        array = np.empty(len(data), dtype=object)
        array[:] = list(data)
        return cls.from_nested(array.reshape(shape), domain)

    @classmethod
    def scalar(cls, value: Any, domain: Optional[Domain] = None) -> "Tensor":
        array = np.empty((), dtype=object)
        array[()] = value
        return cls.from_nested(array, domain)

    @classmethod
    def zeros(cls, shape: Sequence[int], domain: Domain = Domain.RATIONAL) -> "Tensor":
        zero = {Domain.RATIONAL: Fraction(0), Domain.FLOAT: 0.0, Domain.SYMBOLIC: Const(0)}[domain]
        array = np.empty(tuple(shape), dtype=object)
        array.fill(zero)
        return cls(array, domain)

    @classmethod
    def identity(cls, n: int, domain: Domain = Domain.RATIONAL) -> "Tensor":
        one = {Domain.RATIONAL: Fraction(1), Domain.FLOAT: 1.0, Domain.SYMBOLIC: Const(1)}[domain]
        array = np.array(cls.zeros((n, n), domain).array)
        for i in range(n):
            array[i, i] = one
        return cls(array, domain)

    # === 조회 ===

    @property
    def shape(self) -> Shape:
        return tuple(self.array.shape)

    @property
    def rank(self) -> int:
        return self.array.ndim

    @property
    def size(self) -> int:
        return int(self.array.size)

    def __getitem__(self, index) -> Any:
        if not isinstance(index, tuple):
            index = (index,)
        if len(index) != self.rank:
            raise TensorIndexError(f"인덱스 길이 {len(index)} != 랭크 {self.rank}")
        for axis, (i, extent) in enumerate(zip(index, self.shape)):
            if not isinstance(i, (int, np.integer)) or not 0 <= i < extent:
                raise TensorIndexError(f"축 {axis}의 인덱스 {i}가 범위 [0, {extent})를 벗어났습니다")
        value = self.array[index]
        return float(value) if self.domain is Domain.FLOAT else value

    def flat(self) -> list:
        """행 우선 순서의 원소 목록"""
        return [self[index] for index in np.ndindex(*self.shape)]

    def to_list(self) -> Any:
        return self.array.tolist()

    def equals(self, other: "Tensor") -> bool:
        """도메인·형상·원소가 모두 정확히 같은지"""
        return (
            self.domain is other.domain
            and self.shape == other.shape
            and all(x == y for x, y in zip(self.array.flat, other.array.flat))
        )

    # === 변환 (명시적 변환만 허용) ===

    def to_symbolic(self) -> "Tensor":
        if self.domain is Domain.SYMBOLIC:
            return self
        if self.domain is Domain.FLOAT:
            raise DomainMismatchError("실수 텐서는 수식 텐서로 변환할 수 없습니다")
        return Tensor(_map(self.array, Const), Domain.SYMBOLIC)

    def to_float(self) -> "Tensor":
        if self.domain is Domain.SYMBOLIC:
            raise DomainMismatchError("수식 텐서는 먼저 평가해야 합니다")
        return Tensor(np.array(self.array, dtype=float), Domain.FLOAT)

    def map(self, fn, domain: Optional[Domain] = None) -> "Tensor":
        """원소별 함수 적용"""
        mapped = _map(self.array, fn)
        if domain is None:
            domain = _infer_domain(mapped.flat)
        return Tensor(mapped, domain)

    # === 연산자 ===

    def __add__(self, other: "Tensor") -> "Tensor":
        return add(self, other)

    def __sub__(self, other: "Tensor") -> "Tensor":
        return add(self, scale(other, -1))

    def __repr__(self) -> str:
        return f"Tensor(shape={self.shape}, domain={self.domain.value}, data={self.to_list()!r})"

    # === 직렬화 ===

    def to_json(self, precision: Optional[int] = None) -> dict:
        """{"shape": [...], "data": [...]} (행 우선)"""
        return {"shape": list(self.shape), "data": [_element_to_json(v, precision) for v in self.array.flat]}

    @classmethod
    def from_json(cls, payload: dict, variables: Optional[VarSpace] = None) -> "Tensor":
        """직렬화 형식에서 복원 (variables가 주어지면 수식 텐서로 읽음)"""
        shape = payload["shape"]
        data = payload["data"]
        if variables is not None:
            elements = [parse(str(v), variables) for v in data]
            return cls.from_flat(shape, elements, Domain.SYMBOLIC)
        elements = [Fraction(v) if isinstance(v, str) else v for v in data]
        return cls.from_flat(shape, elements)


def _element_to_json(value: Any, precision: Optional[int]) -> Any:
    if isinstance(value, Expr):
        return to_string(value)
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else format_rational(value)
    value = float(value)
    if precision is not None:
        return float(f"{value:.{precision}g}")
    return value


def _map(array: np.ndarray, fn) -> np.ndarray:
    out = np.empty(array.shape, dtype=object)
    for index, value in np.ndenumerate(array):
        out[index] = fn(value)
    return out


# === 검증 ===

def _require_same_domain(a: Tensor, b: Tensor) -> None:
    if a.domain is not b.domain:
        raise DomainMismatchError(f"원소 도메인 불일치: {a.domain.value} / {b.domain.value}")


def _check_axis(tensor: Tensor, axis: int, label: str) -> None:
    if not isinstance(axis, (int, np.integer)) or not 0 <= axis < tensor.rank:
        raise InvalidPairingError(f"{label} 축 {axis}가 랭크 {tensor.rank} 범위를 벗어났습니다")


def validate_pairing(a: Tensor, b: Tensor, pairs: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    """AxisPairing 불변식 확인 (축 중복 없음, 페어 축 크기 동일)"""
    pairs = [(int(p), int(q)) for p, q in pairs]
    for p, q in pairs:
        _check_axis(a, p, "첫 번째 텐서")
        _check_axis(b, q, "두 번째 텐서")
    firsts = [p for p, _ in pairs]
    seconds = [q for _, q in pairs]
    if len(set(firsts)) != len(firsts) or len(set(seconds)) != len(seconds):
        raise InvalidPairingError(f"페어링에 중복된 축이 있습니다: {pairs}")
    for p, q in pairs:
        if a.shape[p] != b.shape[q]:
            raise ShapeMismatchError(
                f"페어 축 크기 불일치: a[{p}]={a.shape[p]}, b[{q}]={b.shape[q]}"
            )
    return pairs


# === 연산 ===

def tensor_product(a: Tensor, b: Tensor) -> Tensor:
    """텐서곱: 형상은 a.shape ++ b.shape, result[i, j] = a[i] * b[j]"""
    _require_same_domain(a, b)
    result = np.multiply.outer(a.array, b.array)
    return Tensor(np.asarray(result, dtype=a.domain.dtype), a.domain)


def contract(a: Tensor, p: int, q: int) -> Tensor:
    """두 축을 페어링하여 합산 (랭크 2 감소, 나머지 축 순서 유지)"""
    if p == q:
        raise InvalidPairingError(f"같은 축끼리 축약할 수 없습니다: {p}")
    _check_axis(a, p, "축약")
    _check_axis(a, q, "축약")
    if a.shape[p] != a.shape[q]:
        raise ShapeMismatchError(f"축약 축 크기 불일치: {a.shape[p]} != {a.shape[q]}")

    result = np.asarray(np.trace(a.array, axis1=p, axis2=q), dtype=a.domain.dtype)
    logger.debug(f"축약 ({p}, {q}): {a.shape} -> {result.shape}")
    return Tensor(result, a.domain)


def dot(a: Tensor, b: Tensor, pairing: Sequence[tuple[int, int]] = ()) -> Tensor:
    """일반화된 내적: 텐서곱 후 모든 페어를 한 번에 축약

    결과 축 순서는 a의 남은 축(원래 순서) 다음 b의 남은 축입니다.
    빈 페어링은 텐서곱과 같습니다.
    """
    _require_same_domain(a, b)
    pairs = validate_pairing(a, b, pairing)
    axes_a = [p for p, _ in pairs]
    axes_b = [q for _, q in pairs]
    result = np.tensordot(a.array, b.array, axes=(axes_a, axes_b))
    logger.debug(f"내적 {a.shape} . {b.shape} over {pairs} -> {np.shape(result)}")
    return Tensor(np.asarray(result, dtype=a.domain.dtype), a.domain)


def multi_dot(tensors: Sequence[Tensor], pairings: Sequence[Sequence[tuple[int, int]]]) -> Tensor:
    """여러 텐서의 연속 내적 (왼쪽부터, 페어링은 누적 결과의 축 기준)"""
    if len(pairings) != len(tensors) - 1:
        raise InvalidPairingError(f"페어링 {len(pairings)}개, 텐서 {len(tensors)}개")
    result = tensors[0]
    for tensor, pairing in zip(tensors[1:], pairings):
        result = dot(result, tensor, pairing)
    return result


def permute_axes(a: Tensor, perm: Sequence[int]) -> Tensor:
    """축 순열: 결과의 축 k는 원래 축 perm[k]"""
    perm = [int(axis) for axis in perm]
    if sorted(perm) != list(range(a.rank)):
        raise InvalidPermutationError(f"랭크 {a.rank}의 순열이 아닙니다: {perm}")
    return Tensor(np.transpose(a.array, perm), a.domain)


def is_symmetric_in_axes(a: Tensor, axes: Iterable[int]) -> bool:
    """나열된 축들의 모든 순열에 대해 불변인지 (모든 호환으로 확인)"""
    axes = sorted(set(int(axis) for axis in axes))
    for axis in axes:
        if not 0 <= axis < a.rank:
            raise InvalidPermutationError(f"축 {axis}가 랭크 {a.rank} 범위를 벗어났습니다")
    extents = {a.shape[axis] for axis in axes}
    if len(extents) > 1:
        raise ShapeMismatchError(f"대칭성 검사 축의 크기가 다릅니다: {sorted(extents)}")

    for i, j in itertools.combinations(axes, 2):
        perm = list(range(a.rank))
        perm[i], perm[j] = perm[j], perm[i]
        swapped = np.transpose(a.array, perm)
        if not all(x == y for x, y in zip(a.array.flat, swapped.flat)):
            return False
    return True


def add(a: Tensor, b: Tensor) -> Tensor:
    """원소별 합"""
    _require_same_domain(a, b)
    if a.shape != b.shape:
        raise ShapeMismatchError(f"형상 불일치: {a.shape} != {b.shape}")
    return Tensor(np.asarray(a.array + b.array, dtype=a.domain.dtype), a.domain)


def scale(a: Tensor, factor: Any) -> Tensor:
    """스칼라 배 (factor는 정수/유리수, 또는 수식 텐서에 대한 Expr)"""
    if isinstance(factor, Expr) and a.domain is not Domain.SYMBOLIC:
        raise DomainMismatchError("수식 배율은 수식 텐서에만 적용할 수 있습니다")
    if a.domain is Domain.FLOAT:
        factor = float(factor)
    elif not isinstance(factor, Expr):
        factor = Fraction(factor)
        if a.domain is Domain.SYMBOLIC:
            factor = Const(factor)
    return a.map(lambda value: value * factor, a.domain)


def matmul(a: Tensor, b: Tensor) -> Tensor:
    """랭크 2 행렬곱"""
    _require_same_domain(a, b)
    if a.rank != 2 or b.rank != 2:
        raise ShapeMismatchError(f"행렬곱은 랭크 2만 지원합니다: {a.shape}, {b.shape}")
    if a.shape[1] != b.shape[0]:
        raise ShapeMismatchError(f"행렬곱 형상 불일치: {a.shape} x {b.shape}")
    return Tensor(np.asarray(np.matmul(a.array, b.array), dtype=a.domain.dtype), a.domain)


def transpose(a: Tensor) -> Tensor:
    """랭크 2 전치"""
    if a.rank != 2:
        raise ShapeMismatchError(f"전치는 랭크 2만 지원합니다: {a.shape}")
    return permute_axes(a, (1, 0))
