"""
명령줄 인터페이스
문제 파일을 읽어 도함수 텐서를 계산(derive)하고, 헤세 행렬 계산 경로들을
교차 검증(verify)하며, 로젠브록 예제를 재현(demo)합니다.

종료 코드: 0 통과, 1 검증 실패, 2 입력 오류
"""

import argparse
import json
import logging
import sys
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .chain import (
    chain_first,
    chain_second,
    chain_second_terms,
    direct_hessian,
    hessian_chain_matrix,
)
from .config import EngineConfig, load_engine_config
from .deriv import DerivativeTensor, derivative_order, eval_tensor, hessian, jacobian, point_from_values
from .errors import ProblemFileError, ShapeMismatchError, TensorChainError
from .expr import expr_equal
from .fd_oracle import ComparisonReport, FDConfig, compare_tensors, composed_evaluable, fd_hessian
from .managers import ProblemFile, ProblemManager
from .managers.problem_manager import parse_point
from .tensor import Domain, Tensor
from .ui import format_point, format_report_table, format_section, format_tensor

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT_ERROR = 2

ROSENBROCK_PROBLEM = """\
# f(y) = (1 - y1)^2 + 100 (y1^2 - y2)^2,  g(x) = (x1, x1^2 - x2)
xvars: x1 x2
yvars: y1 y2
f: (1 - y1)^2 + 100*(y1^2 - y2)^2
g y1: x1
g y2: x1^2 - x2
"""

ROSENBROCK_HESSIAN = [[2, 0], [0, 200]]


def first_mismatch(a: Tensor, b: Tensor, config: EngineConfig) -> Optional[tuple[int, ...]]:
    """두 수식 텐서에서 처음으로 다른 원소의 인덱스 (모두 같으면 None)"""
    if a.shape != b.shape:
        raise ShapeMismatchError(f"비교 형상 불일치: {a.shape} != {b.shape}")
    for index in np.ndindex(*a.shape):
        if not expr_equal(a[index], b[index], points=config.equality_points, seed=config.seed):
            return index
    return None


def _point_payload(values: Sequence[Fraction]) -> list:
    return Tensor.from_flat((len(values),), list(values), Domain.RATIONAL).to_json()["data"]


class TensorChainCLI:
    """tensorchain 명령줄 앱"""

    def __init__(self, problem_manager: Optional[ProblemManager] = None):
        self.problem_manager = problem_manager or ProblemManager()
        self.parser = argparse.ArgumentParser(
            prog="tensorchain",
            description="텐서 내적 기반 고차 연쇄 법칙 계산기"
        )
        self.parser.add_argument("--verbose", action="store_true", help="DEBUG 로그 출력")
        self.parser.add_argument("--settings", default=None, help="설정 파일 경로 (기본: tensorchain.json)")
        self._register_commands()

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        """명령 실행 후 종료 코드 반환"""
        try:
            args = self.parser.parse_args(argv)
        except SystemExit as e:
            return EXIT_OK if e.code in (0, None) else EXIT_INPUT_ERROR

        try:
            config = load_engine_config(args.settings, fd_step=getattr(args, "h", None))
            logging.getLogger().setLevel(logging.DEBUG if args.verbose else config.log_level)
            logger.info(f"명령 시작: {args.command}")
            code = args.handler(args, config)
            logger.info(f"명령 종료: {args.command} (종료 코드 {code})")
            return code

        except TensorChainError as e:
            print(f"❌ {e}", file=sys.stderr)
            return EXIT_INPUT_ERROR

        except Exception as e:
            print(f"❌ 오류: {e}", file=sys.stderr)
            logger.exception("예기치 않은 오류 발생")
            return EXIT_INPUT_ERROR

    # === 명령어 등록 ===

    def _register_commands(self) -> None:
        """하위 명령 등록"""
        subparsers = self.parser.add_subparsers(dest="command", required=True)

        derive = subparsers.add_parser("derive", help="f∘g의 1차/2차 도함수 텐서")
        derive.add_argument("--file", required=True, help="문제 파일")
        derive.add_argument("--order", type=int, choices=(1, 2), required=True, help="도함수 차수")
        derive.add_argument("--point", default=None, help='평가 점, 예: "0.5,0.5"')
        derive.add_argument("--json", action="store_true", help="JSON 출력")
        derive.set_defaults(handler=self.cmd_derive)

        verify = subparsers.add_parser("verify", help="헤세 행렬 계산 경로 교차 검증")
        verify.add_argument("--file", required=True, help="문제 파일")
        verify.add_argument("--point", default=None, help="검증 점 (없으면 파일의 point: 줄들)")
        verify.add_argument("--h", type=float, default=None, help="유한 차분 간격")
        verify.add_argument("--tol", type=float, default=None, help="상대 오차 허용치")
        verify.add_argument("--json", action="store_true", help="JSON 출력")
        verify.set_defaults(handler=self.cmd_verify)

        demo = subparsers.add_parser("demo", help="로젠브록 예제 재현")
        demo.add_argument("--json", action="store_true", help="JSON 출력")
        demo.set_defaults(handler=self.cmd_demo)

    # === 명령어 ===

    def cmd_derive(self, args: argparse.Namespace, config: EngineConfig) -> int:
        """도함수 텐서 출력 (점이 있으면 평가값도)"""
        problem_file = self.problem_manager.load(args.file)
        p = problem_file.problem
        t = chain_first(p) if args.order == 1 else chain_second(p)

        values = self._single_point(args.point, problem_file)
        evaluated = eval_tensor(t, point_from_values(p.x_vars, values)) if values is not None else None

        if args.json:
            payload = {"order": args.order, "derivative": t.to_json()}
            if evaluated is not None:
                payload["point"] = _point_payload(values)
                payload["value"] = evaluated.to_json(config.precision)
            print(json.dumps(payload, ensure_ascii=False, indent=2))
            return EXIT_OK

        title = "기울기 D(f∘g)" if args.order == 1 else "헤세 텐서 D²(f∘g)"
        print(format_section(title, format_tensor(t.values, config.precision)))
        if evaluated is not None:
            print(format_section(
                f"값 @ {format_point(values, config.precision)}",
                format_tensor(evaluated, config.precision)
            ))
        return EXIT_OK

    def cmd_verify(self, args: argparse.Namespace, config: EngineConfig) -> int:
        """연쇄 법칙 / 행렬 연쇄 법칙 / 직접 대입 / 유한 차분 헤세 행렬 비교"""
        problem_file = self.problem_manager.load(args.file)
        p = problem_file.problem
        points = self._verify_points(args.point, problem_file)

        degree = p.composed().polynomial.degree
        tolerance = args.tol
        if tolerance is None:
            tolerance = config.quadratic_tolerance if degree <= 2 else config.tolerance
        fd_config = FDConfig(h=config.fd_step, tolerance=tolerance)
        logger.info(f"검증: 합성 차수 {degree}, h={fd_config.h}, tol={tolerance}, 점 {len(points)}개")

        hessians: dict[str, DerivativeTensor] = {
            "chain_second": chain_second(p),
            "hessian_chain_matrix": hessian_chain_matrix(p),
            "direct_hessian": direct_hessian(p),
        }

        symbolic = []
        for (name_a, a), (name_b, b) in combinations(hessians.items(), 2):
            mismatch = first_mismatch(a.values, b.values, config)
            symbolic.append({
                "comparison": f"{name_a} vs {name_b}",
                "pass": mismatch is None,
                "index": list(mismatch) if mismatch is not None else None,
            })
            if mismatch is not None:
                logger.warning(f"기호 비교 실패: {name_a} vs {name_b} @ {mismatch}")

        evaluable = composed_evaluable(p)
        numeric: list[tuple[list[Fraction], str, ComparisonReport]] = []
        for values in points:
            assignment = point_from_values(p.x_vars, values)
            numbers = {name: eval_tensor(t, assignment) for name, t in hessians.items()}
            numbers["fd_hessian"] = fd_hessian(evaluable, [float(v) for v in values], fd_config)
            for (name_a, a), (name_b, b) in combinations(numbers.items(), 2):
                report = compare_tensors(a, b, tolerance)
                logger.info(f"{name_a} vs {name_b} @ {values}: max_rel_err={report.max_rel_err:.3g}")
                if not report.passed:
                    logger.warning(f"수치 비교 실패: {name_a} vs {name_b} @ {values}")
                numeric.append((values, f"{name_a} vs {name_b}", report))

        passed = all(item["pass"] for item in symbolic) and all(r.passed for _, _, r in numeric)

        if args.json:
            payload = {
                "h": fd_config.h,
                "tolerance": tolerance,
                "symbolic": symbolic,
                "numeric": [
                    {"point": _point_payload(values), "comparison": name, **report.to_json(config.precision)}
                    for values, name, report in numeric
                ],
                "pass": passed,
            }
            print(json.dumps(payload, ensure_ascii=False, indent=2))
        else:
            self._print_verify(symbolic, numeric, passed, config)

        return EXIT_OK if passed else EXIT_VERIFY_FAILED

    def cmd_demo(self, args: argparse.Namespace, config: EngineConfig) -> int:
        """로젠브록 함수와 재매개변수화 g의 헤세 행렬 = diag(2, 200)"""
        p = self.problem_manager.loads(ROSENBROCK_PROBLEM, "<demo>").problem
        jg = jacobian(p.inner)
        hf = hessian(p.outer)
        hg = derivative_order(p.inner, 2)
        t1, t2 = chain_second_terms(p)
        total = chain_second(p)
        direct = direct_hessian(p)
        expected = Tensor.from_nested(ROSENBROCK_HESSIAN).to_symbolic()

        passed = first_mismatch(total.values, expected, config) is None
        passed = passed and first_mismatch(direct.values, expected, config) is None
        if not passed:
            logger.warning("로젠브록 헤세 행렬이 diag(2, 200)과 다릅니다")

        sections = [
            ("Jg", jg.values),
            ("Hf", hf.values),
            ("Hg", hg.values),
            ("t1 = (D²f(g)·Dg)·Dg", t1),
            ("t2 = Df(g)·D²g", t2),
            ("t1 + t2", total.values),
            ("직접 대입 헤세 행렬", direct.values),
        ]

        if args.json:
            payload = {title: tensor.to_json() for title, tensor in sections}
            payload["expected"] = expected.to_json()
            payload["pass"] = passed
            print(json.dumps(payload, ensure_ascii=False, indent=2))
        else:
            print(f"f(y) = {p.outer.components[0]}")
            print(f"g(x) = ({', '.join(str(c) for c in p.inner.components)})")
            print(f"f∘g = {p.composed()}\n")
            for title, tensor in sections:
                print(format_section(title, format_tensor(tensor, config.precision)))
            print("✅ diag(2, 200) 일치" if passed else "❌ diag(2, 200) 불일치")

        return EXIT_OK if passed else EXIT_VERIFY_FAILED

    # === 헬퍼 ===

    @staticmethod
    def _parse_cli_point(text: str, problem_file: ProblemFile) -> list[Fraction]:
        try:
            return parse_point(text, problem_file.x_vars)
        except ValueError as e:
            raise ProblemFileError(str(e), "--point") from None

    def _single_point(self, text: Optional[str], problem_file: ProblemFile) -> Optional[list[Fraction]]:
        if text is not None:
            return self._parse_cli_point(text, problem_file)
        return problem_file.points[0] if problem_file.points else None

    def _verify_points(self, text: Optional[str], problem_file: ProblemFile) -> list[list[Fraction]]:
        if text is not None:
            return [self._parse_cli_point(text, problem_file)]
        if not problem_file.points:
            raise ProblemFileError("검증 점이 필요합니다 (--point 또는 'point:' 줄)", problem_file.path)
        return problem_file.points

    @staticmethod
    def _print_verify(symbolic: list[dict], numeric: list, passed: bool, config: EngineConfig) -> None:
        print("== 기호 비교 ==")
        for item in symbolic:
            status = "✅" if item["pass"] else f"❌ (인덱스 {tuple(item['index'])})"
            print(f"{item['comparison']}: {status}")
        print()

        by_point: dict[tuple, list] = {}
        for values, name, report in numeric:
            by_point.setdefault(tuple(values), []).append((name, report))
        for values, rows in by_point.items():
            print(format_section(
                f"수치 비교 @ {format_point(values, config.precision)}",
                format_report_table(rows, config.precision)
            ))

        failures = [item["comparison"] for item in symbolic if not item["pass"]]
        failures += [
            f"{name} @ {format_point(values, config.precision)}"
            for values, name, report in numeric if not report.passed
        ]
        if passed:
            print("✅ 모든 비교 통과")
        else:
            for failure in failures:
                print(f"❌ 실패: {failure}")
