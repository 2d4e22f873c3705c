"""
tensorchain
텐서 내적으로 합성 함수의 고차 도함수를 계산하는 연쇄 법칙 엔진
"""

__version__ = "1.0.0"
