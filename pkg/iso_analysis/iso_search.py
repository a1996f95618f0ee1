"""
有限域上的同构穷举搜索

按列回溯 Γ 的第 1..n 列。放下第 r 列后，Key-EQ 中以 r 为下标的方程只涉及前 r 列:
    E_ik(g) = 2 g_i g_k + s_ki g_k (g_k - c_k) - c_k g_i - c_i g_k = 0   (i < k)
其中 g 为候选列，c = Σ_{j<r} t_rj γ_{·j}。候选列用 numpy 一次性整体过滤，
再用增量消元保证已选列线性无关 (即行列式非零)。
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from core.errors import InfiniteField, DimensionMismatch, FieldMismatch
from utils.helpers import chunk_evenly
from .hom import GammaMatrix, make_morphism

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 10 ** 8
MAX_CANDIDATES = 2 ** 22


@dataclass
class IsoSearchResult:
    """status: 'found' / 'exhausted' / 'budget_exceeded'"""
    status: str
    gamma: GammaMatrix = None
    morphism: object = None
    nodes: int = 0
    pruned_key_eq: int = 0
    pruned_rank: int = 0
    note: str = ''

    @property
    def found(self):
        return self.status == 'found'

    def stats(self):
        return {'nodes': self.nodes, 'pruned_key_eq': self.pruned_key_eq,
                'pruned_rank': self.pruned_rank}

    def to_json(self):
        out = {'status': self.status, 'gamma': self.gamma.to_json() if self.gamma else None,
               'stats': self.stats()}
        if self.note:
            out['note'] = self.note
        return out


@lru_cache(maxsize=16)
def _candidate_table(p, m):
    # 全部非零向量，字典序 (第一个坐标为最高位)
    table = np.indices((p,) * m, dtype=np.int64).reshape(m, -1).T
    return np.ascontiguousarray(table[1:])


_OVER_BUDGET = object()


class _BudgetHit(Exception):
    pass


class _Searcher:
    def __init__(self, T, S, budget):
        self.p = T.field.p
        self.n = T.n
        self.budget = budget
        self.t = [list(T.row(r)) for r in range(1, T.n + 1)]
        self.cands = _candidate_table(self.p, self.n)
        ii, kk = [], []
        for k in range(2, S.n + 1):
            for i in range(1, k):
                ii.append(i - 1)
                kk.append(k - 1)
        self.I = np.array(ii, dtype=np.int64)
        self.K = np.array(kk, dtype=np.int64)
        self.s_ki = np.array([S.raw(k + 1, i + 1) for i, k in zip(ii, kk)], dtype=np.int64)
        self.nodes = 0
        self.pruned_key_eq = 0
        self.pruned_rank = 0

    def _c_vector(self, r, cols):
        p = self.p
        c = [0] * self.n
        for j in range(1, r):
            t_rj = self.t[r - 1][j - 1]
            if t_rj:
                col = cols[j - 1]
                c = [(ci + t_rj * int(x)) % p for ci, x in zip(c, col)]
        return np.array(c, dtype=np.int64)

    def key_eq_survivors(self, r, cols):
        """满足第 r 列全部 Key-EQ 方程的候选下标 (保持字典序)"""
        G = self.cands
        if not len(self.I):
            return np.arange(len(G))
        p = self.p
        c = self._c_vector(r, cols)
        gi = G[:, self.I]
        gk = G[:, self.K]
        e = (gi * gk % p) * 2 % p
        e = (e + (self.s_ki * gk % p) * ((gk - c[self.K]) % p) % p) % p
        e = (e - c[self.K] * gi % p - c[self.I] * gk % p) % p
        return np.nonzero(~e.any(axis=1))[0]

    def _reduce(self, rows, basis):
        p = self.p
        R = rows.copy()
        for piv, b in basis:
            R = (R - R[:, piv:piv + 1] * b) % p
        return R

    def _extend(self, r, cols, basis, idx):
        """依次尝试第 r 列的候选 idx (已通过 Key-EQ)"""
        R = self._reduce(self.cands[idx], basis)
        indep = R.any(axis=1)
        self.pruned_rank += int(len(idx) - indep.sum())
        for pos in np.nonzero(indep)[0]:
            self.nodes += 1
            if self.nodes > self.budget:
                raise _BudgetHit()
            vec = self.cands[idx[pos]]
            red = R[pos]
            piv = int(np.nonzero(red)[0][0])
            b = red * pow(int(red[piv]), -1, self.p) % self.p
            found = self._search(r + 1, cols + [vec], basis + [(piv, b)])
            if found is not None:
                return found
        return None

    def _search(self, r, cols, basis):
        if r > self.n:
            return cols
        idx = self.key_eq_survivors(r, cols)
        self.pruned_key_eq += len(self.cands) - len(idx)
        return self._extend(r, cols, basis, idx)

    def run(self, first=None):
        """first: 限定第 1 列只在这些候选下标中取 (并行切分时使用)"""
        try:
            if first is None:
                return self._search(1, [], [])
            return self._extend(1, [], [], np.asarray(first, dtype=np.int64))
        except _BudgetHit:
            return _OVER_BUDGET


def _to_gamma(T, cols):
    n = len(cols)
    return GammaMatrix(T.field, [[int(cols[j][i]) for j in range(n)] for i in range(n)])


def _search_chunk(args):
    T, S, budget, first = args
    searcher = _Searcher(T, S, budget)
    out = searcher.run(first)
    if out is _OVER_BUDGET:
        status, cols = 'budget_exceeded', None
    elif out is None:
        status, cols = 'exhausted', None
    else:
        status, cols = 'found', [[int(x) for x in col] for col in out]
    return status, cols, searcher.nodes, searcher.pruned_key_eq, searcher.pruned_rank


def iso_search(T, S, field=None, budget=DEFAULT_BUDGET, jobs=1):
    """
    穷举搜索同构 Γ: A(T) -> A(S)
    :param field: 可选，给出时必须与 T、S 的域一致
    :param budget: 访问的部分列节点上限
    :param jobs: 进程数；>1 时按第 1 列候选切分，结果与单进程一致
    :return: IsoSearchResult
    """
    fld = T.field
    if field is not None and field != fld:
        raise FieldMismatch(f"搜索域 {field.name} 与矩阵的域 {fld.name} 不一致")
    if S.field != fld:
        raise FieldMismatch("T 与 S 必须定义在同一个域上")
    if not fld.is_finite:
        raise InfiniteField("同构穷举只支持有限域")
    if T.n != S.n:
        raise DimensionMismatch(f"T 的尺寸 {T.n} 与 S 的尺寸 {S.n} 不同")
    if fld.p ** T.n > MAX_CANDIDATES:
        return IsoSearchResult('budget_exceeded', note=f"候选列数 {fld.p}^{T.n} 超过上限 {MAX_CANDIDATES}")

    if jobs <= 1:
        searcher = _Searcher(T, S, budget)
        out = searcher.run()
        result = IsoSearchResult('exhausted', nodes=searcher.nodes,
                                 pruned_key_eq=searcher.pruned_key_eq, pruned_rank=searcher.pruned_rank)
        if out is _OVER_BUDGET:
            result.status = 'budget_exceeded'
        elif out is not None:
            result.status = 'found'
            result.gamma = _to_gamma(T, out)
    else:
        result = _parallel_search(T, S, budget, jobs)

    if result.found:
        result.morphism = make_morphism(T, S, result.gamma)
        assert result.morphism.iso, "搜索得到的 Γ 未通过同构验证"
    logger.debug("iso_search n=%d %s: %s nodes=%d", T.n, fld.name, result.status, result.nodes)
    return result


def _parallel_search(T, S, budget, jobs):
    head = _Searcher(T, S, budget)
    first = head.key_eq_survivors(1, [])
    pruned_first = len(head.cands) - len(first)
    chunks = chunk_evenly([int(x) for x in first], jobs)
    if not chunks:
        return IsoSearchResult('exhausted', pruned_key_eq=pruned_first)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        outcomes = list(pool.map(_search_chunk, [(T, S, budget, c) for c in chunks]))

    # 按顺序合并，等价于单进程依次搜索各块
    result = IsoSearchResult('exhausted', pruned_key_eq=pruned_first)
    for status, cols, nodes, pk, pr in outcomes:
        result.nodes += nodes
        result.pruned_key_eq += pk
        result.pruned_rank += pr
        if status == 'budget_exceeded' or result.nodes > budget:
            result.status = 'budget_exceeded'
            return result
        if status == 'found':
            result.status = 'found'
            result.gamma = _to_gamma(T, [np.array(c) for c in cols])
            return result
    return result
