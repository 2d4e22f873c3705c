"""
수식 트리 노드
상수, 변수, 산술 연산, 정수 거듭제곱으로 이루어진 불변 스칼라 수식을 정의합니다.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import TYPE_CHECKING, Iterator, Union

if TYPE_CHECKING:
    from .polynomial import Polynomial

Number = Union[int, Fraction]


class Expr:
    """불변 스칼라 수식 (모든 노드의 기반 클래스)"""

    @cached_property
    def polynomial(self) -> "Polynomial":
        """정규형 다항식 (노드별로 한 번만 계산)"""
        from .polynomial import to_polynomial
        return to_polynomial(self)

    def __str__(self) -> str:
        from .printer import to_string
        return to_string(self)

    # === 산술 연산 (결과는 항상 단순화됨) ===

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self.polynomial + other.polynomial).to_expr()

    def __radd__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (other.polynomial + self.polynomial).to_expr()

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self.polynomial - other.polynomial).to_expr()

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (other.polynomial - self.polynomial).to_expr()

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self.polynomial * other.polynomial).to_expr()

    def __rmul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (other.polynomial * self.polynomial).to_expr()

    def __neg__(self):
        return (-self.polynomial).to_expr()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or isinstance(exponent, bool):
            return NotImplemented
        return (self.polynomial ** exponent).to_expr()


def _coerce(value) -> "Expr":
    if isinstance(value, Expr):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return Const(value)
    return NotImplemented


@dataclass(frozen=True, repr=False)
class Const(Expr):
    """유리수 상수"""
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))

    def __repr__(self) -> str:
        return f"Const({self.value})"


@dataclass(frozen=True, repr=False)
class Var(Expr):
    """변수"""
    name: str

    def __repr__(self) -> str:
        return f"Var({self.name!r})"


@dataclass(frozen=True, repr=False)
class Neg(Expr):
    """부호 반전"""
    operand: Expr

    def __repr__(self) -> str:
        return f"Neg({self.operand!r})"


@dataclass(frozen=True, repr=False)
class Add(Expr):
    """합 (n항)"""
    terms: tuple[Expr, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    def __repr__(self) -> str:
        return f"Add({', '.join(map(repr, self.terms))})"


@dataclass(frozen=True, repr=False)
class Mul(Expr):
    """곱 (n항)"""
    factors: tuple[Expr, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    def __repr__(self) -> str:
        return f"Mul({', '.join(map(repr, self.factors))})"


@dataclass(frozen=True, repr=False)
class Pow(Expr):
    """음이 아닌 정수 거듭제곱"""
    base: Expr
    exponent: int

    def __post_init__(self):
        if isinstance(self.exponent, bool) or not isinstance(self.exponent, int) or self.exponent < 0:
            raise ValueError(f"지수는 음이 아닌 정수여야 합니다: {self.exponent!r}")

    def __repr__(self) -> str:
        return f"Pow({self.base!r}, {self.exponent})"


ZERO = Const(0)
ONE = Const(1)


@dataclass(frozen=True)
class VarSpace:
    """순서가 있는 변수 공간 (도함수 텐서의 좌표 순서)"""
    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError(f"변수 이름이 중복되었습니다: {names}")

    @classmethod
    def of(cls, *names: str) -> "VarSpace":
        """변수 이름 목록으로 생성 ("x1 x2" 형태의 단일 문자열도 허용)"""
        if len(names) == 1 and " " in names[0]:
            names = tuple(names[0].split())
        return cls(tuple(names))

    def index(self, name: str) -> int:
        return self.names.index(name)

    def variables(self) -> list[Var]:
        return [Var(name) for name in self.names]

    def assign(self, values) -> dict:
        """좌표 순서의 값 목록을 이름→값 매핑으로 변환"""
        values = list(values)
        if len(values) != len(self.names):
            raise ValueError(
                f"좌표 개수가 맞지 않습니다: {len(values)}개 (필요: {len(self.names)}개)"
            )
        return dict(zip(self.names, values))

    def __contains__(self, name: object) -> bool:
        return name in self.names

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __len__(self) -> int:
        return len(self.names)
