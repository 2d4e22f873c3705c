"""
예외 정의 모듈
텐서 연산, 수식 파싱, 문제 파일 처리에서 사용하는 예외를 정의합니다.
"""

from typing import Optional


class TensorChainError(Exception):
    """tensorchain 공통 예외"""


# === 텐서 ===

class DomainMismatchError(TensorChainError):
    """원소 도메인(유리수/실수/수식)이 서로 다름"""


class ShapeMismatchError(TensorChainError):
    """축 크기 또는 성분 개수가 맞지 않음"""


class InvalidPairingError(TensorChainError):
    """잘못된 축 페어링 (중복 축, 같은 축끼리 축약 등)"""


class InvalidPermutationError(TensorChainError):
    """유효하지 않은 축 순열"""


class TensorIndexError(TensorChainError, IndexError):
    """범위를 벗어난 다중 인덱스"""


# === 수식 ===

class ExprSyntaxError(TensorChainError):
    """수식 문법 오류 (위치 포함)"""

    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        self.column = position + 1
        super().__init__(f"{message} (위치 {self.column}): {text!r}")


class UndeclaredVariableError(TensorChainError):
    """선언되지 않은 변수"""

    def __init__(self, name: str, position: Optional[int] = None):
        self.name = name
        self.position = position
        where = f" (위치 {position + 1})" if position is not None else ""
        super().__init__(f"선언되지 않은 변수: {name}{where}")


class UnassignedVariableError(TensorChainError):
    """평가 시 값이 주어지지 않은 변수"""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"값이 지정되지 않은 변수: {name}")


# === 입력 / 설정 ===

class ProblemFileError(TensorChainError):
    """문제 파일 오류 (파일/줄 정보 포함)"""

    def __init__(self, message: str, path: str = "<string>", line: Optional[int] = None):
        self.path = path
        self.line = line
        location = f"{path}:{line}" if line is not None else path
        super().__init__(f"{location}: {message}")


class ConfigError(TensorChainError):
    """설정값 오류"""
