"""
有限域上 TM_n(F_q) 的同构类普查

阶段 1: 每个矩阵与它的全部单步 ETO 像合并 (并查集，按序号)
阶段 2: 对剩余代表元两两做完备的同构搜索，found 则合并，exhausted 则记录分离证书
"""
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

import pandas as pd

from core.errors import InfiniteField, BudgetExceeded
from core.scalar import make_field
from core.sltm import (count_sltm, serial_index, from_serial, b_matrix,
                       to_json as sltm_to_json, from_json as sltm_from_json)
from iso_analysis.iso_search import iso_search, DEFAULT_BUDGET
from iso_analysis.eto import admissible_moves
from iso_analysis.eto_search import eto_equiv_search, DEFAULT_DEPTH
from utils.helpers import chunk_evenly
from .union_find import UnionFind
from .zero_class import zero_class_check

logger = logging.getLogger(__name__)

MEMBERS_SAMPLE = 5


def compact_rows(T):
    """一行文本: 第 2..n 行以 '|' 分隔"""
    if T.n == 1:
        return "-"
    f = T.field
    return " | ".join(" ".join(f.format(x) for x in T.row(i)) for i in range(2, T.n + 1))


@dataclass
class ClassInfo:
    representative: object
    size: int
    members_sample: list = dc_field(default_factory=list)
    certificates: list = dc_field(default_factory=list)

    def to_json(self):
        return {'representative': sltm_to_json(self.representative), 'size': self.size,
                'members_sample': [sltm_to_json(m) for m in self.members_sample],
                'certificates': self.certificates}


@dataclass
class ClassReport:
    n: int
    field: object
    classes: list
    stats: dict = dc_field(default_factory=dict)
    complete: bool = True
    separations: list = dc_field(default_factory=list)
    conjecture_evidence: list = dc_field(default_factory=list)
    audit: list = dc_field(default_factory=list)
    logs: list = dc_field(default_factory=list)

    @property
    def class_count(self):
        return len(self.classes)

    @property
    def representatives(self):
        return [c.representative for c in self.classes]

    def to_json(self):
        return {
            'n': self.n,
            'field': self.field.name,
            'class_count': self.class_count,
            'complete': self.complete,
            'classes': [c.to_json() for c in self.classes],
            'stats': self.stats,
            'separations': self.separations,
            'conjecture_evidence': self.conjecture_evidence,
            'audit': self.audit,
            'logs': self.logs,
        }

    @classmethod
    def from_json(cls, data):
        fld = make_field(data['field'])
        classes = [ClassInfo(sltm_from_json(c['representative'], fld), c['size'],
                             [sltm_from_json(m, fld) for m in c.get('members_sample', [])],
                             c.get('certificates', []))
                   for c in data['classes']]
        return cls(data['n'], fld, classes, data.get('stats', {}), data.get('complete', True),
                   data.get('separations', []), data.get('conjecture_evidence', []),
                   data.get('audit', []), data.get('logs', []))

    def summary_frame(self):
        """每个类一行的汇总表"""
        return pd.DataFrame([
            {'类': idx + 1, '代表元': compact_rows(c.representative), '大小': c.size,
             '阶段2合并': sum(1 for cert in c.certificates if cert.get('kind') == 'iso_search')}
            for idx, c in enumerate(self.classes)
        ], columns=['类', '代表元', '大小', '阶段2合并'])


class _Budget:
    """所有搜索共享的节点预算"""

    def __init__(self, total):
        self.total = total
        self.used = 0
        self.pruned_key_eq = 0
        self.pruned_rank = 0

    @property
    def remaining(self):
        return self.total - self.used

    def charge(self, result):
        self.used += result.nodes
        self.pruned_key_eq += result.pruned_key_eq
        self.pruned_rank += result.pruned_rank


def _phase1_chunk(args):
    n, fld, serials = args
    edges = []
    for idx in serials:
        T = from_serial(n, fld, idx)
        for step in admissible_moves(T):
            target = serial_index(step.apply(T))
            if target != idx:
                edges.append((idx, target, step))
    return edges


def _phase1(n, fld, jobs):
    total = count_sltm(n, fld)
    uf = UnionFind(total)
    merges = []
    if jobs > 1:
        chunks = chunk_evenly(range(total), jobs * 4)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_phase1_chunk, [(n, fld, c) for c in chunks]))
    else:
        outcomes = [_phase1_chunk((n, fld, range(total)))]
    moves = 0
    for edges in outcomes:
        for a, b, step in edges:
            moves += 1
            if uf.union(a, b):
                merges.append((a, b, step))
    return uf, merges, moves


def census(n, field, config=None):
    """
    计算 TM_n(F_q) 在 ∼ 下的划分
    :param config: 选项字典: budget, jobs, eto_evidence, depth, audit, seed, members_sample
    :return: ClassReport (代表元为每类中字典序最小的矩阵)
    """
    if not field.is_finite:
        raise InfiniteField("普查只支持有限域")
    config = config or {}
    budget = _Budget(config.get('budget', DEFAULT_BUDGET))
    jobs = config.get('jobs', 1)
    depth = config.get('depth', DEFAULT_DEPTH)
    sample = config.get('members_sample', MEMBERS_SAMPLE)
    logs = []

    # 1. ETO 合并
    uf, merges, moves = _phase1(n, field, jobs)
    groups = sorted(uf.groups().values())
    total = count_sltm(n, field)
    logs.append(f"✅ 阶段 1: {total} 个矩阵，{moves} 个单步变换，合并为 {len(groups)} 组")
    logger.info("census n=%d %s phase 1: %d groups", n, field.name, len(groups))

    # 2. 代表元之间的完备搜索
    final = []
    separations = []
    evidence = []
    searches = 0
    report = ClassReport(n, field, [], {}, False, separations, evidence, [], logs)

    def finish(pending):
        classes = []
        for members, certs in final + [(g, []) for g in pending]:
            reps = [from_serial(n, field, m) for m in members[:sample]]
            classes.append(ClassInfo(reps[0], len(members), reps, certs))
        report.classes = classes
        report.stats = {
            'matrices': total, 'eto_moves': moves, 'phase1_unions': uf.unions,
            'phase1_groups': len(groups), 'phase2_searches': searches,
            'nodes': budget.used, 'pruned_key_eq': budget.pruned_key_eq,
            'pruned_rank': budget.pruned_rank,
        }
        return report

    for pos, group in enumerate(groups):
        R = from_serial(n, field, group[0])
        merged = False
        for members, certs in final:
            F = from_serial(n, field, members[0])
            if budget.remaining <= 0:
                logs.append(f"⚠️ 预算耗尽，剩余 {len(groups) - pos} 组未比较")
                raise BudgetExceeded("普查节点预算耗尽", partial=finish(groups[pos:]))
            res = iso_search(F, R, budget=budget.remaining, jobs=jobs)
            budget.charge(res)
            searches += 1
            if res.status == 'budget_exceeded':
                logs.append(f"⚠️ 预算耗尽，剩余 {len(groups) - pos} 组未比较")
                raise BudgetExceeded("普查节点预算耗尽", partial=finish(groups[pos:]))
            if res.found:
                certs.append({'kind': 'iso_search', 'member': sltm_to_json(R), 'group_size': len(group),
                              'gamma': res.gamma.to_json(), 'stats': res.stats()})
                members.extend(group)
                members.sort()
                merged = True
                if config.get('eto_evidence'):
                    evidence.append(_eto_evidence(F, R, depth, logs))
                break
            separations.append({'a': sltm_to_json(F), 'b': sltm_to_json(R), 'status': res.status,
                                'stats': res.stats()})
        if not merged:
            final.append((list(group), [{'kind': 'eto', 'unions': len(group) - 1}]))

    report.complete = True
    logs.append(f"✅ 阶段 2: {searches} 次同构搜索，共 {len(final)} 个类")
    logger.info("census n=%d %s phase 2: %d classes, %d nodes", n, field.name, len(final), budget.used)

    k = config.get('audit', 0)
    if k and merges:
        report.audit = _audit(merges, n, field, k, config.get('seed', 0), budget, logs)
    return finish([])


def _eto_evidence(F, R, depth, logs):
    res = eto_equiv_search(F, R, depth=depth)
    if not res.found:
        logs.append(f"⚠️ 同构但在深度 {depth} 内未找到 ETO 路径: {compact_rows(F)} ~ {compact_rows(R)}")
        logger.warning("eto path not found within depth %d", depth)
    return {'a': sltm_to_json(F), 'b': sltm_to_json(R), 'found': res.found,
            'length': len(res.path) if res.found else None, 'visited': res.visited}


def _audit(merges, n, fld, k, seed, budget, logs):
    """随机抽取阶段 1 的合并，用完备搜索复核"""
    picked = random.Random(seed).sample(merges, min(k, len(merges)))
    out = []
    for a, b, step in picked:
        A, B = from_serial(n, fld, a), from_serial(n, fld, b)
        res = iso_search(A, B, budget=max(budget.remaining, 0))
        budget.charge(res)
        out.append({'a': sltm_to_json(A), 'b': sltm_to_json(B), 'step': step.text(), 'status': res.status})
        if res.status == 'exhausted':
            logs.append(f"⚠️ 阶段 1 合并未通过复核: {step.text()}")
            logger.warning("phase-1 merge %s refuted by exhaustive search", step.text())
    ok = sum(1 for x in out if x['status'] == 'found')
    logs.append(f"✅ 复核 {len(out)} 个阶段 1 合并，{ok} 个确认")
    return out


@dataclass
class LowerBoundReport:
    n: int
    field: object
    witnesses: list
    pairs: list = dc_field(default_factory=list)
    zero_class: dict = None
    verified: bool = False

    def to_json(self):
        return {'n': self.n, 'field': self.field.name,
                'witnesses': [sltm_to_json(w) for w in self.witnesses],
                'pairs': self.pairs, 'zero_class': self.zero_class, 'verified': self.verified}

    def summary_frame(self):
        return pd.DataFrame([
            {'l': p['l'], 'm': p['m'], '结果': p['status'], '节点数': p['stats']['nodes']}
            for p in self.pairs
        ], columns=['l', 'm', '结果', '节点数'])


def lower_bound_witnesses(n, field, budget=DEFAULT_BUDGET, jobs=1):
    """
    用 B_{n,1}, ..., B_{n,n-1} 证明 TM_n(F_q) 至少有 n-1 个类:
      两两之间的同构搜索必须 exhausted，且 B_{n,1} 属于零类
    :return: LowerBoundReport
    """
    if not field.is_finite:
        raise InfiniteField("下界证明只支持有限域")
    witnesses = [b_matrix(n, l, field) for l in range(1, n)]
    report = LowerBoundReport(n, field, witnesses)
    if witnesses:
        verdict = zero_class_check(witnesses[0])
        report.zero_class = verdict.to_json()
    tracker = _Budget(budget)
    for a in range(len(witnesses)):
        for b in range(a + 1, len(witnesses)):
            res = iso_search(witnesses[a], witnesses[b], budget=max(tracker.remaining, 0), jobs=jobs)
            tracker.charge(res)
            report.pairs.append({'l': a + 1, 'm': b + 1, 'status': res.status, 'stats': res.stats()})
            if res.status == 'budget_exceeded':
                raise BudgetExceeded(f"B_{{{n},{a + 1}}} 与 B_{{{n},{b + 1}}} 的搜索预算耗尽", partial=report)
    report.verified = (all(p['status'] == 'exhausted' for p in report.pairs)
                       and (not witnesses or report.zero_class['member']))
    logger.info("lower bound n=%d %s verified=%s", n, field.name, report.verified)
    return report
