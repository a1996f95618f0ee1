"""
ETO 等价的有界双向广度优先搜索 (仅有限域)
"""
import logging
from dataclasses import dataclass, field as dc_field

from core.errors import InfiniteField, FieldMismatch, DimensionMismatch
from .eto import admissible_moves, apply_sequence, format_steps

logger = logging.getLogger(__name__)

DEFAULT_DEPTH = 8


@dataclass
class EtoSearchResult:
    found: bool
    path: list = dc_field(default_factory=list)
    depth: int = 0
    visited: int = 0

    def to_json(self):
        return {'found': self.found, 'length': len(self.path) if self.found else None,
                'path': [s.to_json() for s in self.path], 'text': format_steps(self.path),
                'depth_limit': self.depth, 'visited': self.visited}


def _forward_steps(parents, node):
    steps = []
    while parents[node] is not None:
        prev, step = parents[node]
        steps.append(step)
        node = prev
    return steps[::-1]


def _backward_steps(parents, node):
    # parents[node] = (靠近 S 的矩阵, 由它到 node 的步骤)；回到 S 需要逆步骤
    steps = []
    while parents[node] is not None:
        prev, step = parents[node]
        steps.append(step.inverse())
        node = prev
    return steps


def eto_equiv_search(T, S, field=None, depth=DEFAULT_DEPTH):
    """
    在 ETO 移动图上从 T 与 S 两端同时做 BFS，前沿相遇即返回路径
    路径长度最短；同一层有多个相遇点时取拼接后按规范顺序最小的一条。
    两半各自沿 BFS 父指针回溯，不保证是全部最短路径中字典序最小的。
    :param depth: 路径总长度上限
    :return: EtoSearchResult；found 时 apply_sequence(T, path) 的终点为 S
    """
    fld = T.field
    if field is not None and field != fld:
        raise FieldMismatch(f"搜索域 {field.name} 与矩阵的域 {fld.name} 不一致")
    if S.field != fld:
        raise FieldMismatch("T 与 S 必须定义在同一个域上")
    if not fld.is_finite:
        raise InfiniteField("ETO 等价搜索只支持有限域")
    if T.n != S.n:
        raise DimensionMismatch(f"T 的尺寸 {T.n} 与 S 的尺寸 {S.n} 不同")
    if T == S:
        return EtoSearchResult(True, [], depth, 1)

    sides = {
        'fwd': {'parents': {T: None}, 'frontier': [T], 'dist': 0},
        'bwd': {'parents': {S: None}, 'frontier': [S], 'dist': 0},
    }
    while sides['fwd']['dist'] + sides['bwd']['dist'] < depth:
        # 先扩展较小的前沿 (相同时扩展正向)
        name = 'fwd' if len(sides['fwd']['frontier']) <= len(sides['bwd']['frontier']) else 'bwd'
        other = sides['bwd' if name == 'fwd' else 'fwd']
        side = sides[name]
        parents = side['parents']
        new_frontier = []
        meetings = []
        for node in side['frontier']:
            for step in admissible_moves(node):
                nxt = step.apply(node)
                if nxt in parents:
                    continue
                parents[nxt] = (node, step)
                new_frontier.append(nxt)
                if nxt in other['parents']:
                    meetings.append(nxt)
        side['frontier'] = new_frontier
        side['dist'] += 1
        logger.debug("eto bfs %s level %d: %d new", name, side['dist'], len(new_frontier))

        if meetings:
            fwd, bwd = sides['fwd']['parents'], sides['bwd']['parents']
            paths = [_forward_steps(fwd, m) + _backward_steps(bwd, m) for m in meetings]
            best = min(paths, key=lambda p: (len(p), [s.sort_key() for s in p]))
            final, _ = apply_sequence(T, best)
            assert final == S, "双向搜索拼接的路径没有到达 S"
            return EtoSearchResult(True, best, depth, len(fwd) + len(bwd))
        if not new_frontier:
            break
    visited = len(sides['fwd']['parents']) + len(sides['bwd']['parents'])
    return EtoSearchResult(False, [], depth, visited)
