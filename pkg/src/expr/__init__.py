"""스칼라 수식 (다항식) 엔진"""

from .nodes import Add, Const, Expr, Mul, Neg, Pow, Var, VarSpace
from .ops import differentiate, evaluate, expr_equal, simplify, substitute, variables
from .parser import parse
from .polynomial import Polynomial
from .printer import to_string

__all__ = [
    "Add", "Const", "Expr", "Mul", "Neg", "Pow", "Var", "VarSpace",
    "Polynomial",
    "parse", "to_string",
    "differentiate", "evaluate", "expr_equal", "simplify", "substitute", "variables",
]
