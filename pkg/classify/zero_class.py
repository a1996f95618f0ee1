"""
零类判定: U ∼ 0_n 当且仅当
  条件 1: u_kj = 0 (1 < j < k <= n)，或
  条件 2: 对每个 j > 1 的主元 (k, j)，Δ^(2)_{i,j,k}(U) = 0 (i < j)
"""
from dataclasses import dataclass

from core.errors import NotInZeroClass
from core.sltm import zero_matrix, delta_raw
from core.scalar import Scalar
from iso_analysis.hom import GammaMatrix, make_morphism
from iso_analysis.eto import QStep, apply_sequence
from .leaders import leaders, leader_graph


@dataclass
class ZeroClassVerdict:
    """condition: 0 (零矩阵)、1、2；不在零类中时为 None"""
    member: bool
    condition: int = None

    def __bool__(self):
        return self.member

    def to_json(self):
        return {'member': self.member, 'condition': self.condition}


def _condition_one(U):
    f = U.field
    return all(f.is_zero(U.raw(k, j)) for k in range(3, U.n + 1) for j in range(2, k))


def _condition_two(U):
    f = U.field
    two = f.canonical(2)
    for k, j in leaders(U):
        if j == 1:
            continue
        for i in range(1, j):
            if not f.is_zero(delta_raw(U, two, i, j, k)):
                return False
    return True


def zero_class_check(U):
    if U.is_zero():
        return ZeroClassVerdict(True, 0)
    if _condition_one(U):
        return ZeroClassVerdict(True, 1)
    if _condition_two(U):
        return ZeroClassVerdict(True, 2)
    return ZeroClassVerdict(False, None)


def _require_member(U):
    if not zero_class_check(U):
        raise NotInZeroClass("矩阵不满足零类判据")


def zero_class_certificate(U):
    """
    构造 A(0_n) -> A(U) 的同构:
      极小顶点 k: γ(X_k) = Y_k
      主元 (k, j): γ(X_k) = -(u_kj / 2) γ(X_j) + Y_k
    """
    _require_member(U)
    f = U.field
    n = U.n
    half = f.inv(f.canonical(2))
    out = dict(leaders(U))
    cols = []
    for k in range(1, n + 1):
        col = [f.canonical(0)] * n
        if k in out:
            j = out[k]
            factor = f.neg(f.mul(U.raw(k, j), half))
            col = [f.mul(factor, x) for x in cols[j - 1]]
        col[k - 1] = f.add(col[k - 1], f.canonical(1))
        cols.append(col)
    G = GammaMatrix(f, [[cols[c][r] for c in range(n)] for r in range(n)])
    return make_morphism(zero_matrix(n, f), U, G)


def zero_eto_path(U):
    """
    反复取最小的非零行 r0 及其主元 (r0, c0)，施行 Q_(r0,c0)(u_{r0c0}/2)，直到得到 0_n
    :return: EtoSequence
    """
    _require_member(U)
    f = U.field
    half = f.inv(f.canonical(2))
    steps = []
    current = U
    while not current.is_zero():
        r0 = next(k for k in range(2, current.n + 1)
                  if any(not f.is_zero(x) for x in current.row(k)))
        c0 = dict(leaders(current))[r0]
        step = QStep(r0, c0, Scalar(f, f.mul(current.raw(r0, c0), half)))
        current = step.apply(current)
        steps.append(step)
    final, seq = apply_sequence(U, steps)
    assert final.is_zero()
    return seq


def delta_propagation_violations(U):
    """
    满足条件 2 的矩阵中，每个 c > 1 的非主元非零元素 u_rc 也应满足 Δ^(2)_{i,c,r} = 0 (i < c)
    :return: 不满足的 (i, c, r) 列表
    """
    f = U.field
    two = f.canonical(2)
    lead = set(leaders(U))
    bad = []
    for r, c in U.nonzero_positions():
        if c == 1 or (r, c) in lead:
            continue
        for i in range(1, c):
            if not f.is_zero(delta_raw(U, two, i, c, r)):
                bad.append((i, c, r))
    return bad


def zero_class_report(U):
    """零类判定的完整结果 (供命令行输出)"""
    verdict = zero_class_check(U)
    out = {'verdict': verdict.to_json(), 'leader_graph': leader_graph(U).to_json()}
    if verdict:
        cert = zero_class_certificate(U)
        path = zero_eto_path(U)
        out['certificate'] = cert.to_json()
        out['path'] = path.to_json()
    return out
