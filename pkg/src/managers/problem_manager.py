"""
문제 파일 관리
줄 단위 텍스트 문제 파일(xvars, yvars, f, g, point)을 읽어 합성 문제로 변환합니다.

    xvars: x1 x2
    yvars: y1 y2
    f: (1-y1)^2 + 100*(y1^2-y2)^2
    g y1: x1
    g y2: x1^2 - x2
    point: 0.5 0.5
"""

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from ..chain import CompositionProblem
from ..deriv import VectorFunction
from ..errors import ProblemFileError, TensorChainError
from ..expr import VarSpace, parse

logger = logging.getLogger(__name__)

_LINE = re.compile(r"^(?P<key>xvars|yvars|f|g\s+\S+|point)\s*:\s*(?P<value>.*)$")


@dataclass
class ProblemFile:
    """파싱된 문제 파일"""
    x_vars: VarSpace
    y_vars: VarSpace
    problem: CompositionProblem
    points: list[list[Fraction]] = field(default_factory=list)
    path: str = "<string>"


def parse_point(text: str, x_vars: VarSpace) -> list[Fraction]:
    """"0.5 0.5" 또는 "0.5,0.5" 형식의 좌표 (정확한 유리수)"""
    parts = [p for p in re.split(r"[,\s]+", text.strip()) if p]
    try:
        values = [Fraction(p) for p in parts]
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"숫자가 아닌 좌표: {text!r}") from None
    if len(values) != len(x_vars):
        raise ValueError(f"좌표 {len(values)}개, x 변수 {len(x_vars)}개")
    return values


class ProblemManager:
    """문제 파일 로더"""

    def load(self, path: str) -> ProblemFile:
        """파일에서 로드"""
        file_path = Path(path)
        if not file_path.exists():
            raise ProblemFileError("파일이 존재하지 않습니다", str(path))
        with open(file_path, 'r', encoding='utf-8') as f:
            return self.loads(f.read(), str(path))

    def loads(self, text: str, path: str = "<string>") -> ProblemFile:
        """문자열에서 로드"""
        entries: dict[str, tuple[int, str]] = {}
        g_entries: dict[str, tuple[int, str]] = {}
        point_entries: list[tuple[int, str]] = []

        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            match = _LINE.match(line)
            if not match:
                raise ProblemFileError(f"알 수 없는 줄: {raw.strip()!r}", path, lineno)
            key, value = match.group("key"), match.group("value").strip()
            if key.startswith("g"):
                name = key.split()[1]
                if name in g_entries:
                    raise ProblemFileError(f"g {name}가 중복 정의되었습니다", path, lineno)
                g_entries[name] = (lineno, value)
            elif key == "point":
                point_entries.append((lineno, value))
            else:
                if key in entries:
                    raise ProblemFileError(f"{key}가 중복 정의되었습니다", path, lineno)
                entries[key] = (lineno, value)

        for key in ("xvars", "yvars", "f"):
            if key not in entries:
                raise ProblemFileError(f"'{key}:' 줄이 필요합니다", path)

        x_vars = self._var_space(entries["xvars"], path)
        y_vars = self._var_space(entries["yvars"], path)

        # g 성분 개수 = y 변수 개수
        undeclared = [name for name in g_entries if name not in y_vars]
        if undeclared:
            lineno = g_entries[undeclared[0]][0]
            raise ProblemFileError(f"yvars에 없는 성분: g {undeclared[0]}", path, lineno)
        missing = [name for name in y_vars if name not in g_entries]
        if missing:
            raise ProblemFileError(
                f"g 성분 개수({len(g_entries)})가 y 변수 개수({len(y_vars)})와 다릅니다: "
                f"누락 {', '.join(missing)}",
                path, entries["yvars"][0]
            )

        f_line, f_text = entries["f"]
        f_expr = self._parse(f_text, y_vars, path, f_line)
        g_exprs = tuple(
            self._parse(g_entries[name][1], x_vars, path, g_entries[name][0])
            for name in y_vars
        )

        points = []
        for lineno, value in point_entries:
            try:
                points.append(parse_point(value, x_vars))
            except ValueError as e:
                raise ProblemFileError(str(e), path, lineno) from None

        problem = CompositionProblem(
            outer=VectorFunction.of_scalar(f_expr, y_vars),
            inner=VectorFunction(g_exprs, x_vars),
        )
        logger.info(f"문제 파일 로드: {path} (m={len(x_vars)}, n={len(y_vars)}, 점 {len(points)}개)")
        return ProblemFile(x_vars, y_vars, problem, points, path)

    @staticmethod
    def _var_space(entry: tuple[int, str], path: str) -> VarSpace:
        lineno, value = entry
        names = value.split()
        if not names:
            raise ProblemFileError("변수가 하나 이상 필요합니다", path, lineno)
        for name in names:
            if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", name):
                raise ProblemFileError(f"잘못된 변수 이름: {name!r}", path, lineno)
        try:
            return VarSpace(tuple(names))
        except ValueError as e:
            raise ProblemFileError(str(e), path, lineno) from None

    @staticmethod
    def _parse(text: str, variables: VarSpace, path: str, lineno: int):
        try:
            return parse(text, variables)
        except TensorChainError as e:
            raise ProblemFileError(str(e), path, lineno) from None
