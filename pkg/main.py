#!/usr/bin/env python3
"""
tensorchain - 엔트리 포인트
합성 함수의 고차 도함수 텐서를 계산하고 검증하는 명령줄 도구입니다.
"""

import logging
import sys

from src.cli import TensorChainCLI


# 로깅 설정 (표준 출력은 결과 전용, 로그는 stderr)
logging.basicConfig(
    level=logging.WARNING,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=[
        logging.StreamHandler(sys.stderr)
    ]
)


def main() -> None:
    """메인 함수"""
    try:
        sys.exit(TensorChainCLI().run())
    except KeyboardInterrupt:
        sys.exit(130)


if __name__ == "__main__":
    main()
