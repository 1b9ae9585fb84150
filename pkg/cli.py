#!/usr/bin/env python3
"""
命令列介面

子命令：compute、matrix、search、verify、diagram。
結果輸出到 stdout（或 --out 檔案），日誌走 stderr。
退出碼：0 成功、1 驗證失敗或內部錯誤、2 參數用法錯誤、3 參數超出定義域。
"""

import argparse
import json
import sys
from typing import Dict, List, Optional

import pandas as pd
from loguru import logger

from config import Config
from d3_invariant import compute_report, cross_validate
from exact_linalg import format_grid
from families import FamilyId, FamilyParams, get_family
from intersection_forms import chern_vector, form_invariants, intersection_matrix, matrix_to_json
from realization_search import (
    enumerate_realizations, exceptions_report, iii_coverage_report, reproduce_table1,
    verify_move_increments,
)
from splice_core import build_family_diagram, diagram_to_json, real_algebraic_representative, \
    representative_root_order
from utils.errors import D3Error, ParameterDomainError, UnsupportedFamilyError
from utils.logger import setup_logger

PARAM_NAMES = ('p', 'q', 'r', 'u', 'v', 'w')


def _family_arg(text: str) -> FamilyId:
    try:
        return FamilyId.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"需要正整數: {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=Config.OUTPUT_FORMATS, default=Config.DEFAULT_FORMAT)
    common.add_argument('--out', metavar='FILE', help='把結果寫入檔案')
    common.add_argument('--workers', type=_positive_int, help='覆蓋 D3_WORKERS')

    family_args = argparse.ArgumentParser(add_help=False)
    family_args.add_argument('--family', type=_family_arg, required=True,
                             help='I, II, III, I-I, I-I-I, II-I, III-I, II-III')
    for name in PARAM_NAMES:
        family_args.add_argument(f"-{name}", f"--{name}", type=int, default=None)

    parser = argparse.ArgumentParser(prog='d3-realize', description='實代數 Milnor 纖維化的 d3 不變量')
    sub = parser.add_subparsers(dest='command', required=True)

    sub.add_parser('compute', parents=[common, family_args], help='計算 d3 與 4-流形資料')
    sub.add_parser('matrix', parents=[common, family_args], help='輸出交叉矩陣與 Chern 向量')
    sub.add_parser('diagram', parents=[common, family_args], help='輸出拼接圖與實代數代表')

    search = sub.add_parser('search', parents=[common], help='列舉 d <= max-d 的實現')
    search.add_argument('--max-d', type=_positive_int, default=Config.DEFAULT_MAX_D)
    search.add_argument('--strict', action='store_true', help='(III-I) 使用 p >= 4')
    search.add_argument('--all-witnesses', action='store_true', help='csv/md 輸出每個見證一列')

    verify = sub.add_parser('verify', parents=[common], help='驗證發表的結論')
    checks = verify.add_mutually_exclusive_group(required=True)
    checks.add_argument('--exceptions', action='store_true')
    checks.add_argument('--moves', action='store_true')
    checks.add_argument('--iii-coverage', nargs=2, type=_positive_int, metavar=('LO', 'HI'))
    checks.add_argument('--table1', action='store_true')
    checks.add_argument('--cross-validate', action='store_true')
    verify.add_argument('--max-d', type=_positive_int, default=Config.DEFAULT_MAX_D)
    verify.add_argument('--strict', action='store_true')
    verify.add_argument('--param-bound', type=_positive_int, default=Config.DEFAULT_PARAM_BOUND)
    verify.add_argument('--grid-bound', type=_positive_int, default=Config.MOVE_GRID_BOUND)
    return parser


# ----------------------------------------------------------------------
# 輸出
# ----------------------------------------------------------------------
def _frame_to_markdown(frame: pd.DataFrame) -> str:
    columns = [str(c) for c in frame.columns]
    lines = ["| " + " | ".join(columns) + " |", "|" + "|".join("---" for _ in columns) + "|"]
    for row in frame.itertuples(index=False):
        lines.append("| " + " | ".join(str(value) for value in row) + " |")
    return "\n".join(lines)


def _render_frame(frame: pd.DataFrame, fmt: str) -> str:
    if fmt == 'csv':
        return frame.to_csv(index=False).rstrip("\n")
    if fmt == 'md':
        return _frame_to_markdown(frame)
    return frame.to_string(index=False)


def _summary_frame(report: Dict) -> pd.DataFrame:
    """報告的純量欄位組成單列表；列表欄位只保留長度"""
    row = {}
    for key, value in report.items():
        if isinstance(value, (list, tuple, set, dict)):
            row[key] = len(value) if key in ('failures', 'known_discrepancies') else json.dumps(value)
        else:
            row[key] = value
    return pd.DataFrame([row])


def _render_report(report: Dict, fmt: str) -> str:
    if fmt == 'json':
        return json.dumps(report, indent=2, ensure_ascii=False, default=str)
    if fmt == 'plain':
        return "\n".join(f"{key}: {json.dumps(value, ensure_ascii=False, default=str)}"
                         if isinstance(value, (list, dict)) else f"{key}: {value}"
                         for key, value in report.items())
    return _render_frame(_summary_frame(report), fmt)


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, 'w', encoding='utf-8') as f:
            f.write(text + "\n")
        logger.info(f"💾 結果已寫入 {out}")
    else:
        print(text)


# ----------------------------------------------------------------------
# 子命令
# ----------------------------------------------------------------------
def _family_params(args) -> FamilyParams:
    """未給的參數取最小值"""
    family_def = get_family(args.family)
    given = {name: getattr(args, name) for name in PARAM_NAMES if getattr(args, name) is not None}
    params = family_def.minimal_params(given)
    family_def.check_domain(params)
    missing = [name for name in family_def.param_names if name not in given]
    if missing:
        logger.warning(f"⚠️ 未指定 {missing}，使用最小值")
    return params


def cmd_compute(args) -> int:
    report = compute_report(args.family, _family_params(args))
    _emit(_render_report(report, args.format), args.out)
    return 0


def cmd_matrix(args) -> int:
    params = _family_params(args)
    q = intersection_matrix(args.family, params)
    det, sigma = form_invariants(q)
    w = chern_vector(args.family, params)
    if args.format == 'plain':
        text = "\n".join([format_grid(q), f"w: {w}", f"det: {det}", f"sigma: {sigma}"])
    else:
        report = {'family': str(args.family), 'params': params.as_dict(),
                  **json.loads(matrix_to_json(q)), 'w': w, 'det': str(det), 'sigma': str(sigma)}
        if args.format == 'json':
            text = json.dumps(report, indent=2, ensure_ascii=False)
        else:
            # Q 的每一列後接 w 的對應座標，再另起一個 det/sigma 表
            grid = pd.DataFrame([[int(x) for x in row] for row in q.rows],
                                columns=[f"Q{j + 1}" for j in range(q.n)])
            grid['w'] = w
            invariants = pd.DataFrame([{'det': str(det), 'sigma': sigma}])
            text = _render_frame(grid, args.format) + "\n\n" + _render_frame(invariants, args.format)
    _emit(text, args.out)
    return 0


def cmd_diagram(args) -> int:
    params = _family_params(args)
    diagram = build_family_diagram(args.family, params)
    try:
        representative = real_algebraic_representative(args.family, params)
        root_order = representative_root_order(args.family, params)
    except UnsupportedFamilyError:
        representative, root_order = None, None
    if args.format == 'json':
        text = json.dumps({'diagram': json.loads(diagram_to_json(diagram)),
                           'representative': representative, 'root_order': root_order},
                          indent=2, ensure_ascii=False)
    else:
        text = diagram_to_json(diagram)
        if representative:
            text += f"\nrepresentative: {representative}\nroot_order: {root_order}"
    _emit(text, args.out)
    return 0


def cmd_search(args) -> int:
    table = enumerate_realizations(args.max_d, strict=args.strict, workers=args.workers)
    if args.format == 'json':
        text = json.dumps(table.to_records(), indent=2, ensure_ascii=False)
    else:
        text = _render_frame(table.to_frame(all_witnesses=args.all_witnesses), args.format)
    _emit(text, args.out)
    return 0


def cmd_verify(args) -> int:
    if args.exceptions:
        report = exceptions_report(args.max_d, strict=args.strict, workers=args.workers)
    elif args.moves:
        report = verify_move_increments(args.grid_bound)
    elif args.iii_coverage:
        lo, hi = args.iii_coverage
        report = iii_coverage_report(lo, hi, workers=args.workers)
    elif args.table1:
        report = reproduce_table1(workers=args.workers)
    else:
        report = cross_validate(args.param_bound, workers=args.workers)
    _emit(_render_report(report, args.format), args.out)
    return 0 if report['success'] else 1


COMMANDS = {
    'compute': cmd_compute,
    'matrix': cmd_matrix,
    'diagram': cmd_diagram,
    'search': cmd_search,
    'verify': cmd_verify,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        return COMMANDS[args.command](args)
    except ParameterDomainError as e:
        print(f"❌ {e}", file=sys.stderr)
        return 3
    except (D3Error, ValueError) as e:
        logger.error(f"❌ {args.command} 失敗: {e}")
        return 1


if __name__ == '__main__':
    setup_logger()
    sys.exit(main())
