"""
설정 파일 관리
엔진 설정을 JSON 파일({"settings": {...}})로 관리합니다.
"""

import json
from pathlib import Path

from ..errors import ConfigError


class ConfigManager:
    """JSON 설정 파일 관리자"""

    DEFAULT_CONFIG = {
        "settings": {
            "fd_step": 1e-4,
            "tolerance": 1e-4,
            "quadratic_tolerance": 1e-6,
            "precision": 12
        }
    }

    def __init__(self, config_path: str = "tensorchain.json"):
        self._config_path = Path(config_path)
        self._config = self._load()

    def _load(self) -> dict:
        """설정 파일 로드 (없으면 기본값)"""
        if self._config_path.exists():
            try:
                with open(self._config_path, 'r', encoding='utf-8') as f:
                    config = json.load(f)
            except json.JSONDecodeError as e:
                raise ConfigError(f"{self._config_path}: JSON 형식 오류 ({e})") from None
            if not isinstance(config, dict) or not isinstance(config.get("settings", {}), dict):
                raise ConfigError(f"{self._config_path}: 'settings' 객체가 필요합니다")
            return config
        return json.loads(json.dumps(self.DEFAULT_CONFIG))

    @property
    def path(self) -> Path:
        return self._config_path

    # === 설정값 조회 ===

    @property
    def settings(self) -> dict:
        """전체 설정 사본"""
        return dict(self._config.get("settings", {}))
