"""
설정 관리 모듈
엔진 설정(차분 간격, 허용 오차, 출력 자릿수 등)과 환경 변수를 관리합니다.
"""

import logging
import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

from .errors import ConfigError
from .managers import ConfigManager

logger = logging.getLogger(__name__)

ENV_PREFIX = "TENSORCHAIN_"


@dataclass(frozen=True)
class EngineConfig:
    """엔진 설정"""
    fd_step: float = 1e-4
    tolerance: float = 1e-4  # 일반 다항식
    quadratic_tolerance: float = 1e-6  # 2차 이하 합성
    precision: int = 12  # 출력 유효 자릿수
    equality_points: int = 20  # expr_equal 대체 검사 점 개수
    seed: int = 0
    log_level: str = "WARNING"

    def __post_init__(self):
        if not self.fd_step > 0:
            raise ConfigError(f"fd_step은 양수여야 합니다: {self.fd_step}")
        if not self.tolerance > 0 or not self.quadratic_tolerance > 0:
            raise ConfigError("허용 오차는 양수여야 합니다")
        if self.precision < 1:
            raise ConfigError(f"precision은 1 이상이어야 합니다: {self.precision}")
        if self.equality_points < 20:
            raise ConfigError(f"equality_points는 20 이상이어야 합니다: {self.equality_points}")


def _convert(name: str, raw, target: type):
    try:
        if target is str:
            return str(raw).upper() if name == "log_level" else str(raw)
        return target(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"잘못된 설정값 {name}={raw!r}") from None


def load_env_overrides() -> dict:
    """TENSORCHAIN_* 환경 변수 (.env 파일 포함) 로드"""
    env_path = Path(__file__).parent.parent / ".env"
    if env_path.exists():
        load_dotenv(env_path, override=False)

    overrides = {}
    for f in fields(EngineConfig):
        raw = os.getenv(ENV_PREFIX + f.name.upper())
        if raw is not None:
            overrides[f.name] = raw
    return overrides


def load_engine_config(settings_path: Optional[str] = None, **cli_overrides) -> EngineConfig:
    """설정 로드: 기본값 → 설정 파일 → 환경 변수 → CLI 인자"""
    manager = ConfigManager(settings_path) if settings_path else ConfigManager()
    values = manager.settings
    logger.debug(f"설정 파일: {manager.path} ({len(values)}개 항목)")
    values.update(load_env_overrides())
    values.update({k: v for k, v in cli_overrides.items() if v is not None})

    types = {f.name: type(f.default) for f in fields(EngineConfig)}
    unknown = set(values) - set(types)
    if unknown:
        raise ConfigError(f"알 수 없는 설정: {sorted(unknown)}")

    config = replace(EngineConfig(), **{k: _convert(k, v, types[k]) for k, v in values.items()})
    logger.debug(f"엔진 설정: {config}")
    return config
