"""공통 픽스처"""

import random

import pytest

from src.chain import CompositionProblem
from src.deriv import VectorFunction
from src.expr import VarSpace, parse


ROSENBROCK_TEXT = """\
# 로젠브록 함수와 재매개변수화
xvars: x1 x2
yvars: y1 y2
f: (1 - y1)^2 + 100*(y1^2 - y2)^2
g y1: x1
g y2: x1^2 - x2
point: 0.5 0.5
"""


@pytest.fixture
def x_vars():
    return VarSpace.of("x1", "x2")


@pytest.fixture
def y_vars():
    return VarSpace.of("y1", "y2")


@pytest.fixture
def rosenbrock(x_vars, y_vars):
    """f(y) = (1-y1)^2 + 100(y1^2-y2)^2, g(x) = (x1, x1^2-x2)"""
    f = parse("(1 - y1)^2 + 100*(y1^2 - y2)^2", y_vars)
    g = VectorFunction.parse(["x1", "x1^2 - x2"], x_vars)
    return CompositionProblem(VectorFunction.of_scalar(f, y_vars), g)


@pytest.fixture
def rosenbrock_file(tmp_path):
    path = tmp_path / "rosenbrock.txt"
    path.write_text(ROSENBROCK_TEXT, encoding="utf-8")
    return path


@pytest.fixture
def rng():
    return random.Random(20240601)
