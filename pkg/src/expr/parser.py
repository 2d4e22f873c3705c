"""
수식 파서
pyparsing 문법으로 문자열을 수식 트리로 변환한 뒤 정규형으로 단순화합니다.

문법:
    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ['^' integer]
    atom   := number | identifier | '(' expr ')' | '-' atom
    number := digits ['.' digits] | digits '/' digits
"""

import logging
from fractions import Fraction

import pyparsing as pp

from ..errors import ExprSyntaxError, UndeclaredVariableError
from .nodes import Add, Const, Expr, Mul, Neg, Pow, Var, VarSpace

logger = logging.getLogger(__name__)


def _number_action(text: str, loc: int, tokens: pp.ParseResults) -> Const:
    # "0.5", "1/3" 모두 정확한 유리수로 읽음
    try:
        return Const(Fraction(tokens[0]))
    except ZeroDivisionError:
        raise pp.ParseFatalException(text, loc, "분모가 0인 유리수") from None


def _factor_action(tokens: pp.ParseResults) -> Expr:
    if len(tokens) == 1:
        return tokens[0]
    return Pow(tokens[0], int(tokens[1]))


def _term_action(tokens: pp.ParseResults) -> Expr:
    if len(tokens) == 1:
        return tokens[0]
    return Mul(tuple(tokens))


def _expr_action(tokens: pp.ParseResults) -> Expr:
    terms = [tokens[0]]
    for op, term in zip(tokens[1::2], tokens[2::2]):
        terms.append(Neg(term) if op == "-" else term)
    if len(terms) == 1:
        return terms[0]
    return Add(tuple(terms))


def build_grammar(variables: VarSpace) -> pp.ParserElement:
    """변수 공간에 묶인 문법 생성 (미선언 식별자는 파싱 중에 거부)"""

    def identifier_action(text: str, loc: int, tokens: pp.ParseResults) -> Var:
        name = tokens[0]
        if name not in variables:
            raise UndeclaredVariableError(name, position=loc)
        return Var(name)

    expr = pp.Forward()
    atom = pp.Forward()

    number = pp.Regex(r"\d+(\.\d+|/\d+)?").set_name("number")
    number.set_parse_action(_number_action)

    identifier = pp.Word(pp.alphas, pp.alphanums + "_").set_name("identifier")
    identifier.set_parse_action(identifier_action)

    integer = pp.Regex(r"\d+").set_name("integer")
    group = pp.Suppress("(") + expr + pp.Suppress(")")
    # 단항 부호는 원자에 붙음: -x1^2 = (-x1)^2
    negation = (pp.Suppress("-") + atom).set_parse_action(lambda t: Neg(t[0]))
    atom <<= number | identifier | group | negation
    factor = (atom + pp.Optional(pp.Suppress("^") + integer)).set_parse_action(_factor_action)
    term = (factor + pp.ZeroOrMore(pp.Suppress("*") + factor)).set_parse_action(_term_action)
    expr <<= (term + pp.ZeroOrMore(pp.one_of("+ -") + term)).set_parse_action(_expr_action)
    return expr


def parse_raw(text: str, variables: VarSpace) -> Expr:
    """단순화하지 않은 수식 트리"""
    grammar = build_grammar(variables)
    try:
        result = grammar.parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        raise ExprSyntaxError(f"문법 오류: {e.msg}", text, e.loc) from None
    return result[0]


def parse(text: str, variables: VarSpace) -> Expr:
    """문자열을 정규형 수식으로 파싱"""
    if not text.strip():
        raise ExprSyntaxError("빈 수식", text, 0)
    expr = parse_raw(text, variables).polynomial.to_expr()
    logger.debug(f"파싱: {text!r} -> {expr}")
    return expr
