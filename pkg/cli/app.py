"""
niltri 命令行入口

退出码: 0 成功；1 数学上的否定结论 (非同态、搜索穷尽、不在零类等)；2 用法 / 解析 / 输入错误或预算耗尽
"""
import argparse
import logging
import sys

from core.algebra import Algebra, mul, format_element, parse_element
from core.data_loader import DataLoader
from core.errors import NilTriError, BudgetExceeded, BadSize
from core.scalar import make_field
from core.sltm import to_json as sltm_to_json, zero_matrix
from iso_analysis.hom import key_eq_failure, direct_hom_failure, make_morphism, induced_target, parse_gamma
from iso_analysis.iso_search import iso_search, DEFAULT_BUDGET
from iso_analysis.eto import parse_steps, apply_sequence
from iso_analysis.eto_search import eto_equiv_search, DEFAULT_DEPTH
from classify.leaders import leader_graph
from classify.zero_class import zero_class_report
from classify.small_n import classify_n2, n2_path, classify_n3
from classify.census import census, lower_bound_witnesses
from visualization.leader_graph import to_edge_list, to_dot
from utils.helpers import write_output
from . import report_writer

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class UsageError(Exception):
    pass


def build_parser():
    parser = argparse.ArgumentParser(prog="niltri", description="严格下三角矩阵编码的幂零分次代数计算工具")
    parser.add_argument('-v', '--verbose', action='count', default=0, help="-v 输出 INFO 日志，-vv 输出 DEBUG 日志")
    sub = parser.add_subparsers(dest='command', required=True)

    def common(p):
        p.add_argument('--field', help="域: q<p> (奇素数 p) 或 rational")
        p.add_argument('--format', choices=['json', 'text'], default='json')
        p.add_argument('--out', help="报告写入的文件 (默认标准输出)")

    def single(p):
        p.add_argument('--in', dest='input', help="矩阵文件")
        p.add_argument('--matrix', help='内联矩阵，如 "n=3;q3;rows:1|2 0"')

    def pair(p):
        p.add_argument('--t', help="源矩阵 T (文件或内联文本)")
        p.add_argument('--s', help="目标矩阵 S (文件或内联文本)")

    p = sub.add_parser('mul', help="在 A(T) 中计算 a·b")
    common(p)
    single(p)
    p.add_argument('--a', required=True, help='元素文本，如 "X1 + 2*X2X3"')
    p.add_argument('--b', required=True)

    p = sub.add_parser('check-hom', help="验证 Γ: A(T) -> A(S)；省略 --s 时由 Γ 反推 S")
    common(p)
    pair(p)
    p.add_argument('--gamma', required=True, help="Γ (文件或以 '|' 分隔行的内联文本)")

    p = sub.add_parser('iso-search', help="有限域上穷举同构")
    common(p)
    pair(p)
    p.add_argument('--budget', type=int, default=DEFAULT_BUDGET)
    p.add_argument('--jobs', type=int, default=1)

    p = sub.add_parser('eto', help="施行 ETO 序列，或用 --search 搜索 T 到 S 的路径")
    common(p)
    single(p)
    pair(p)
    p.add_argument('--steps', help='步骤序列，如 "Q 3 1 2; F 2 3; P 3 5"')
    p.add_argument('--search', action='store_true')
    p.add_argument('--depth', type=int, default=DEFAULT_DEPTH)

    p = sub.add_parser('zero-class', help="零类判定并给出证书与 ETO 路径")
    common(p)
    single(p)

    p = sub.add_parser('classify', help="n = 2 或 n = 3 的显式分类")
    common(p)
    single(p)

    p = sub.add_parser('leaders', help="主元图")
    common(p)
    single(p)
    p.add_argument('--graph', choices=['edges', 'dot'], help="以图文本格式输出")

    p = sub.add_parser('census', help="TM_n(F_q) 的同构类普查")
    common(p)
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--budget', type=int, default=DEFAULT_BUDGET)
    p.add_argument('--jobs', type=int, default=1)
    p.add_argument('--depth', type=int, default=DEFAULT_DEPTH)
    p.add_argument('--audit', type=int, default=0, help="复核的阶段 1 合并个数")
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--eto-evidence', action='store_true', help="对每次阶段 2 合并搜索 ETO 路径")

    p = sub.add_parser('lower-bound', help="用 B_{n,l} 验证类数下界")
    common(p)
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--budget', type=int, default=DEFAULT_BUDGET)
    p.add_argument('--jobs', type=int, default=1)
    return parser


# --- 输入 ---

def _field(args):
    return make_field(args.field) if args.field else None


def _single_matrix(args, loader, fld):
    if args.input and args.matrix:
        raise UsageError("--in 与 --matrix 不能同时给出")
    source = args.input or args.matrix
    if not source:
        raise UsageError("需要 --in 或 --matrix")
    return loader.load_matrix(source, fld)


def _pair(args, loader, fld, need_s=True):
    if not args.t or (need_s and not args.s):
        raise UsageError("需要 --t 与 --s")
    T = loader.load_matrix(args.t, fld)
    S = loader.load_matrix(args.s, fld or T.field) if args.s else None
    return T, S


def _emit(args, title, data, tables=None):
    write_output(report_writer.render(title, data, args.format, tables), args.out)


# --- 子命令 ---

def cmd_mul(args, loader):
    T = _single_matrix(args, loader, _field(args))
    A = Algebra(T)
    a, b = parse_element(args.a, A), parse_element(args.b, A)
    product = mul(a, b)
    _emit(args, "代数乘法", {'matrix': sltm_to_json(T), 'dimension': A.dimension(),
                            'a': format_element(a), 'b': format_element(b),
                            'product': format_element(product)})
    return EXIT_OK


def cmd_check_hom(args, loader):
    T, S = _pair(args, loader, _field(args), need_s=False)
    G = parse_gamma(loader.read_source(args.gamma), T.field)
    data = {}
    if S is None:
        S = induced_target(T, G)
        data['induced_target'] = sltm_to_json(S)
    ke = key_eq_failure(T, S, G)
    direct = direct_hom_failure(T, S, G)
    m = make_morphism(T, S, G)
    data.update({'key_eq': ke is None, 'key_eq_failure': list(ke) if ke else None,
                 'direct': direct is None, 'direct_failure': direct,
                 'hom': m.hom, 'iso': m.iso})
    _emit(args, "同态验证", data)
    return EXIT_OK if m.hom else EXIT_NEGATIVE


def cmd_iso_search(args, loader):
    T, S = _pair(args, loader, _field(args))
    res = iso_search(T, S, budget=args.budget, jobs=args.jobs)
    _emit(args, "同构搜索", res.to_json())
    if res.status == 'budget_exceeded':
        return EXIT_ERROR
    return EXIT_OK if res.found else EXIT_NEGATIVE


def cmd_eto(args, loader):
    fld = _field(args)
    if args.search:
        T, S = _pair(args, loader, fld)
        res = eto_equiv_search(T, S, depth=args.depth)
        _emit(args, "ETO 路径搜索", res.to_json())
        return EXIT_OK if res.found else EXIT_NEGATIVE
    if not args.steps:
        raise UsageError("需要 --steps 或 --search")
    T = _single_matrix(args, loader, fld)
    final, seq = apply_sequence(T, parse_steps(args.steps, T.field))
    m = make_morphism(T, final, seq.gamma)
    data = {'source': sltm_to_json(T), 'target': sltm_to_json(final), **seq.to_json(),
            'iso': m.iso}
    _emit(args, "ETO 变换", data)
    return EXIT_OK


def cmd_zero_class(args, loader):
    U = _single_matrix(args, loader, _field(args))
    data = zero_class_report(U)
    _emit(args, "零类判定", data)
    return EXIT_OK if data['verdict']['member'] else EXIT_NEGATIVE


def cmd_classify(args, loader):
    U = _single_matrix(args, loader, _field(args))
    if U.n == 2:
        target = zero_matrix(2, U.field)
        m = classify_n2(U, target)
        data = {'class': 'ZeroClass', 'representative': sltm_to_json(target),
                'certificate': m.to_json(), 'path': n2_path(U, target).to_json()}
    elif U.n == 3:
        data = classify_n3(U).to_json()
    else:
        raise BadSize(f"classify 只支持 n = 2 或 3，收到 n={U.n}")
    _emit(args, "小尺寸分类", data)
    return EXIT_OK


def cmd_leaders(args, loader):
    U = _single_matrix(args, loader, _field(args))
    graph = leader_graph(U)
    if args.graph == 'edges':
        write_output(to_edge_list(graph), args.out)
    elif args.graph == 'dot':
        write_output(to_dot(graph), args.out)
    else:
        _emit(args, "主元图", graph.to_json())
    return EXIT_OK


def _require_field(args):
    if not args.field:
        raise UsageError("需要 --field")
    return make_field(args.field)


def cmd_census(args, loader):
    fld = _require_field(args)
    config = {'budget': args.budget, 'jobs': args.jobs, 'depth': args.depth, 'audit': args.audit,
              'seed': args.seed, 'eto_evidence': args.eto_evidence}
    try:
        report = census(args.n, fld, config)
    except BudgetExceeded as e:
        if e.partial is not None:
            _emit(args, "同构类普查 (不完整)", e.partial.to_json(), {'类': e.partial.summary_frame()})
        raise
    _emit(args, "同构类普查", report.to_json(), {'类': report.summary_frame()})
    return EXIT_OK


def cmd_lower_bound(args, loader):
    fld = _require_field(args)
    try:
        report = lower_bound_witnesses(args.n, fld, budget=args.budget, jobs=args.jobs)
    except BudgetExceeded as e:
        if e.partial is not None:
            _emit(args, "类数下界 (不完整)", e.partial.to_json())
        raise
    _emit(args, "类数下界", report.to_json(), {'两两搜索': report.summary_frame()})
    return EXIT_OK if report.verified else EXIT_NEGATIVE


COMMANDS = {
    'mul': cmd_mul,
    'check-hom': cmd_check_hom,
    'iso-search': cmd_iso_search,
    'eto': cmd_eto,
    'zero-class': cmd_zero_class,
    'classify': cmd_classify,
    'leaders': cmd_leaders,
    'census': cmd_census,
    'lower-bound': cmd_lower_bound,
}


def _configure_logging(verbose):
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)


def run(argv=None):
    """
    :param argv: 参数列表 (不含程序名)
    :return: 退出码
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_ERROR
    _configure_logging(args.verbose)

    try:
        if args.field:
            # 先校验域描述 (特征不为 2)
            make_field(args.field)
        return COMMANDS[args.command](args, DataLoader())
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"错误: {e}", file=sys.stderr)
    except NilTriError as e:
        print(f"错误: {e}", file=sys.stderr)
    except (OSError, ValueError) as e:
        print(f"错误: {e}", file=sys.stderr)
    return EXIT_ERROR
