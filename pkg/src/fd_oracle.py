"""
유한 차분 오라클
중심 차분으로 기울기/헤세 행렬을 추정하여 기호 도함수 텐서를 수치적으로 검증합니다.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .chain import CompositionProblem
from .errors import ConfigError, ShapeMismatchError
from .expr import Expr, VarSpace, evaluate
from .tensor import Domain, Tensor

logger = logging.getLogger(__name__)

Evaluable = Callable[[np.ndarray], float]


@dataclass(frozen=True)
class FDConfig:
    """유한 차분 설정"""
    h: float = 1e-4
    tolerance: float = 1e-6

    def __post_init__(self):
        if not self.h > 0:
            raise ConfigError(f"차분 간격 h는 양수여야 합니다: {self.h}")
        if not self.tolerance > 0:
            raise ConfigError(f"허용 오차는 양수여야 합니다: {self.tolerance}")


@dataclass
class ComparisonReport:
    """두 텐서의 원소별 비교 결과"""
    abs_errors: Tensor
    rel_errors: Tensor
    max_abs_err: float
    max_rel_err: float
    worst_index: tuple[int, ...]
    tolerance: float
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = self.max_rel_err <= self.tolerance

    def to_json(self, precision: Optional[int] = None) -> dict:
        """오차는 precision 유효 자릿수로 반올림 (None이면 그대로)"""
        return {
            "max_abs_err": _round(self.max_abs_err, precision),
            "max_rel_err": _round(self.max_rel_err, precision),
            "worst_index": list(self.worst_index),
            "pass": self.passed,
        }


def _round(value: float, precision: Optional[int]) -> float:
    if precision is None:
        return float(value)
    return float(f"{value:.{precision}g}")


def as_evaluable(expr: Expr, domain_vars: VarSpace) -> Evaluable:
    """수식 → 좌표 벡터를 받는 float 함수"""
    names = tuple(domain_vars)

    def fn(x: np.ndarray) -> float:
        return float(evaluate(expr, {name: float(v) for name, v in zip(names, x)}))

    return fn


def composed_evaluable(p: CompositionProblem) -> Evaluable:
    """f(g(x))를 평가하는 함수"""
    return as_evaluable(p.composed(), p.x_vars)


def fd_gradient(f: Evaluable, point: Sequence[float], cfg: FDConfig = FDConfig()) -> Tensor:
    """중심 차분 기울기: (f(p + h e_j) - f(p - h e_j)) / 2h"""
    p = np.asarray(point, dtype=float)
    h = cfg.h
    grad = np.zeros(p.size)
    for j in range(p.size):
        e = np.zeros(p.size)
        e[j] = h
        grad[j] = (f(p + e) - f(p - e)) / (2 * h)
    return Tensor(grad, Domain.FLOAT)


def fd_hessian(f: Evaluable, point: Sequence[float], cfg: FDConfig = FDConfig()) -> Tensor:
    """4점 중심 차분 헤세 행렬, (H + Hᵀ)/2 로 대칭화"""
    p = np.asarray(point, dtype=float)
    h = cfg.h
    m = p.size
    hess = np.zeros((m, m))
    basis = np.eye(m) * h
    for i in range(m):
        for j in range(m):
            ei, ej = basis[i], basis[j]
            hess[i, j] = (
                f(p + ei + ej) - f(p + ei - ej) - f(p - ei + ej) + f(p - ei - ej)
            ) / (4 * h * h)
    hess = (hess + hess.T) / 2
    logger.debug(f"유한 차분 헤세 행렬 @ {p.tolist()}: {hess.tolist()}")
    return Tensor(hess, Domain.FLOAT)


def compare_tensors(a: Tensor, b: Tensor, tolerance: float) -> ComparisonReport:
    """원소별 절대/상대 오차 (상대 오차 분모는 max(|a|, |b|, 1))"""
    if a.shape != b.shape:
        raise ShapeMismatchError(f"비교 형상 불일치: {a.shape} != {b.shape}")
    x = np.asarray(a.to_float().array, dtype=float)
    y = np.asarray(b.to_float().array, dtype=float)
    abs_err = np.abs(x - y)
    rel_err = abs_err / np.maximum(np.maximum(np.abs(x), np.abs(y)), 1.0)
    worst = tuple(int(i) for i in np.unravel_index(np.argmax(rel_err), rel_err.shape))
    return ComparisonReport(
        abs_errors=Tensor(abs_err, Domain.FLOAT),
        rel_errors=Tensor(rel_err, Domain.FLOAT),
        max_abs_err=float(abs_err.max()),
        max_rel_err=float(rel_err.max()),
        worst_index=worst,
        tolerance=tolerance,
    )
