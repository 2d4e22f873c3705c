"""
수식 출력
수식 트리를 파서 문법에 맞는 문자열로 변환합니다 (출력 후 재파싱하면 같은 수식).
"""

from fractions import Fraction
from functools import singledispatch

from .nodes import Add, Const, Expr, Mul, Neg, Pow, Var


def to_string(expr: Expr) -> str:
    """문법 호환 문자열"""
    return _render(expr)


def format_rational(value: Fraction) -> str:
    """유리수 리터럴 ("3", "-3", "1/3")"""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@singledispatch
def _render(expr: Expr) -> str:
    raise TypeError(f"출력할 수 없는 노드: {type(expr).__name__}")


@_render.register
def _(expr: Const) -> str:
    return format_rational(expr.value)


@_render.register
def _(expr: Var) -> str:
    return expr.name


@_render.register
def _(expr: Neg) -> str:
    # '-'는 원자에만 붙으므로 -x1^2 는 (-x1)^2 로 읽힘
    if isinstance(expr.operand, (Pow, Mul)):
        return f"-({_render(expr.operand)})"
    return "-" + _atom(expr.operand)


@_render.register
def _(expr: Add) -> str:
    parts = [_term(expr.terms[0])]
    for term in expr.terms[1:]:
        negative, body = _split_sign(term)
        parts.append(("- " if negative else "+ ") + body)
    return " ".join(parts)


@_render.register
def _(expr: Mul) -> str:
    rendered = []
    for i, factor in enumerate(expr.factors):
        if isinstance(factor, (Add, Neg)):
            rendered.append(f"({_render(factor)})")
        elif isinstance(factor, Const) and factor.value < 0 and i > 0:
            rendered.append(f"({_render(factor)})")
        else:
            rendered.append(_render(factor))
    return "*".join(rendered)


@_render.register
def _(expr: Pow) -> str:
    return f"{_atom(expr.base)}^{expr.exponent}"


def _atom(expr: Expr) -> str:
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, Const) and expr.value >= 0 and expr.value.denominator == 1:
        return _render(expr)
    return f"({_render(expr)})"


def _term(expr: Expr) -> str:
    if isinstance(expr, Add):
        return f"({_render(expr)})"
    return _render(expr)


def _split_sign(term: Expr) -> tuple[bool, str]:
    """덧셈 항의 부호를 분리 (a + -b 대신 a - b로 출력)"""
    if isinstance(term, Neg):
        return True, _term(term.operand)
    if isinstance(term, Const) and term.value < 0:
        return True, format_rational(-term.value)
    if isinstance(term, Mul) and isinstance(term.factors[0], Const) and term.factors[0].value < 0:
        coeff = -term.factors[0].value
        rest = term.factors[1:]
        if coeff != 1:
            rest = (Const(coeff), *rest)
        body = rest[0] if len(rest) == 1 else Mul(rest)
        return True, _term(body)
    return False, _term(term)
