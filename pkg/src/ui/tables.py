"""
텍스트 표 출력
텐서와 비교 결과를 사람이 읽을 수 있는 표로 렌더링합니다.
"""

from fractions import Fraction
from itertools import product
from typing import Any, Sequence

from ..expr import Expr, to_string
from ..fd_oracle import ComparisonReport
from ..tensor import Tensor


def format_number(value: Any, precision: int = 12) -> str:
    """유효 자릿수 precision으로 숫자 출력 (정수 유리수는 그대로)"""
    if isinstance(value, Fraction) and value.denominator == 1:
        return str(value.numerator)
    if isinstance(value, int):
        return str(value)
    text = f"{float(value):.{precision}g}"
    return "0" if text == "-0" else text


def format_cell(value: Any, precision: int = 12) -> str:
    if isinstance(value, Expr):
        return to_string(value)
    return format_number(value, precision)


def _format_matrix(cells: list[list[str]]) -> str:
    widths = [max(len(row[j]) for row in cells) for j in range(len(cells[0]))]
    lines = []
    for row in cells:
        padded = "  ".join(cell.rjust(width) for cell, width in zip(row, widths))
        lines.append(f"[ {padded} ]")
    return "\n".join(lines)


def format_tensor(t: Tensor, precision: int = 12) -> str:
    """랭크별 텐서 표

    랭크 0은 값 하나, 랭크 1은 한 줄, 랭크 2는 행렬,
    그 이상은 앞쪽 인덱스별 행렬 조각으로 출력합니다.
    """
    if t.rank == 0:
        return format_cell(t[()], precision)
    if t.rank == 1:
        return _format_matrix([[format_cell(t[i], precision) for i in range(t.shape[0])]])

    rows, cols = t.shape[-2:]
    blocks = []
    for lead in product(*(range(extent) for extent in t.shape[:-2])):
        cells = [
            [format_cell(t[(*lead, i, j)], precision) for j in range(cols)]
            for i in range(rows)
        ]
        matrix = _format_matrix(cells)
        if lead:
            header = "[" + ", ".join(str(i) for i in lead) + ", :, :]"
            matrix = f"{header}\n{matrix}"
        blocks.append(matrix)
    return "\n".join(blocks)


def format_section(title: str, body: str) -> str:
    return f"== {title} ==\n{body}\n"


def format_point(values: Sequence, precision: int = 12) -> str:
    return "(" + ", ".join(format_number(v, precision) for v in values) + ")"


def format_report_table(rows: Sequence[tuple[str, ComparisonReport]], precision: int = 12) -> str:
    """비교 결과 표: 이름 | 최대 절대 오차 | 최대 상대 오차 | 최악 인덱스 | 결과"""
    header = ["비교", "max_abs_err", "max_rel_err", "worst", "결과"]
    body = [
        [
            name,
            format_number(report.max_abs_err, precision),
            format_number(report.max_rel_err, precision),
            str(tuple(report.worst_index)),
            "✅" if report.passed else "❌",
        ]
        for name, report in rows
    ]
    widths = [max(len(row[j]) for row in [header, *body]) for j in range(len(header))]
    lines = ["  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip()
             for row in [header, *body]]
    lines.insert(1, "  ".join("-" * width for width in widths))
    return "\n".join(lines)
