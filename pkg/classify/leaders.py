"""
主元 (leader) 与主元图

主元: 非零行 k 中最右侧非零元素的位置 (k, j)；主元图对每个主元连一条 k -> j 的弧。
"""
from dataclasses import dataclass, field as dc_field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components


def leaders(U):
    """按行号升序返回全部主元 (k, j)"""
    f = U.field
    out = []
    for k in range(2, U.n + 1):
        row = U.row(k)
        for j in range(k - 1, 0, -1):
            if not f.is_zero(row[j - 1]):
                out.append((k, j))
                break
    return out


@dataclass
class Chain:
    """极大链: kind 为 'simple' 或 'ramified'，pairs 为该连通分支中的主元"""
    kind: str
    pairs: list
    vertices: list

    def to_json(self):
        return {'kind': self.kind, 'pairs': [list(p) for p in self.pairs], 'vertices': self.vertices}


@dataclass
class LeaderGraph:
    n: int
    arrows: list
    minimal_vertices: list
    components: list
    chains: list = dc_field(default_factory=list)
    isolated: list = dc_field(default_factory=list)

    def __post_init__(self):
        self._out = dict(self.arrows)

    def successor(self, k):
        return self._out.get(k)

    def root_of(self, k):
        """沿弧一直走到的唯一极小顶点"""
        while k in self._out:
            k = self._out[k]
        return k

    def simple_chain(self, k):
        """C_k: 从 k 出发到极小顶点的主元序列"""
        pairs = []
        while k in self._out:
            pairs.append((k, self._out[k]))
            k = self._out[k]
        return pairs

    def to_json(self):
        return {
            'n': self.n,
            'arrows': [list(a) for a in self.arrows],
            'minimal_vertices': self.minimal_vertices,
            'components': self.components,
            'chains': [c.to_json() for c in self.chains],
            'isolated': self.isolated,
            'simple_chains': {str(k): [list(p) for p in self.simple_chain(k)]
                              for k, _ in self.arrows},
        }


def _is_simple(pairs):
    # 按 k 升序排列后相邻主元首尾相接: k_r = j_{r+1} (1 <= r <= l-1)
    pairs = sorted(pairs)
    return all(pairs[r][0] == pairs[r + 1][1] for r in range(len(pairs) - 1))


def leader_graph(U):
    """
    构造主元图及其链分解
    :return: LeaderGraph
    """
    n = U.n
    arrows = leaders(U)
    sources = {k for k, _ in arrows}
    minimal = [v for v in range(1, n + 1) if v not in sources]

    if arrows:
        rows = np.array([k - 1 for k, _ in arrows])
        cols = np.array([j - 1 for _, j in arrows])
        adj = csr_matrix((np.ones(len(arrows)), (rows, cols)), shape=(n, n))
    else:
        adj = csr_matrix((n, n))
    _, labels = connected_components(adj, directed=True, connection='weak')

    groups = {}
    for v in range(1, n + 1):
        groups.setdefault(int(labels[v - 1]), []).append(v)
    components = sorted(groups.values())

    chains = []
    isolated = []
    for comp in components:
        members = set(comp)
        pairs = [a for a in arrows if a[0] in members]
        if not pairs:
            isolated.extend(comp)
            continue
        chains.append(Chain('simple' if _is_simple(pairs) else 'ramified', pairs, comp))
    return LeaderGraph(n, arrows, minimal, components, chains, isolated)
