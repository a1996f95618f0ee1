"""
n = 2 与 n = 3 的显式分类
"""
from dataclasses import dataclass

from core.errors import BadSize
from core.scalar import Scalar
from core.sltm import b_matrix, zero_matrix
from iso_analysis.hom import GammaMatrix, make_morphism
from iso_analysis.eto import PStep, QStep, apply_sequence, EtoSequence
from .zero_class import zero_eto_path


@dataclass
class N3Classification:
    """class_name: 'ZeroClass' 或 'B32Class'；certificate: A(U) -> A(代表元)"""
    class_name: str
    representative: object
    certificate: object
    path: EtoSequence

    def __iter__(self):
        return iter((self.class_name, self.certificate))

    def to_json(self):
        from core.sltm import to_json
        return {'class': self.class_name, 'representative': to_json(self.representative),
                'certificate': self.certificate.to_json(), 'path': self.path.to_json()}


def classify_n2(T, S):
    """TM_2 只有一个类: Γ = [[1, (t-s)/2], [0, 1]] 给出 A(T) -> A(S)"""
    if T.n != 2 or S.n != 2:
        raise BadSize("classify_n2 只接受 2×2 矩阵")
    f = T.field
    beta = f.div(f.sub(T.raw(2, 1), S.raw(2, 1)), f.canonical(2))
    G = GammaMatrix(f, [[f.canonical(1), beta], [f.canonical(0), f.canonical(1)]])
    return make_morphism(T, S, G)


def n2_path(T, S):
    """对应的单步变换 Q_(2,1)((t-s)/2)"""
    if T.n != 2 or S.n != 2:
        raise BadSize("n2_path 只接受 2×2 矩阵")
    f = T.field
    beta = f.div(f.sub(T.raw(2, 1), S.raw(2, 1)), f.canonical(2))
    return apply_sequence(T, [QStep(2, 1, Scalar(f, beta))])[1]


def _step3_gamma(U):
    """Δ = 0 或 u32 = 0 时到 0_3 的证书 (按情形表)"""
    f = U.field
    u21, u31, u32 = U.raw(2, 1), U.raw(3, 1), U.raw(3, 2)
    half = f.inv(f.canonical(2))
    one, zero = f.canonical(1), f.canonical(0)
    rows = [[one, zero, zero], [zero, one, zero], [zero, zero, one]]
    nz = (not f.is_zero(u21), not f.is_zero(u31), not f.is_zero(u32))
    if nz == (True, False, False):
        rows[0][1] = f.mul(u21, half)
    elif nz == (False, True, False):
        rows[0][2] = f.mul(u31, half)
    elif nz == (False, False, True):
        rows[1][2] = f.mul(u32, half)
    elif nz == (True, True, False):
        rows[0][1] = f.mul(u21, half)
        rows[0][2] = f.mul(u31, half)
    elif nz == (True, True, True):
        # Δ = 0 即 u31 = -u32·u21/2
        assert u31 == f.neg(f.mul(half, f.mul(u32, u21)))
        rows[0][1] = f.mul(u21, half)
        rows[1][2] = f.mul(u32, half)
    else:
        assert nz == (False, False, False), f"情形表未覆盖 {nz}"
    return GammaMatrix(f, rows)


def classify_n3(U):
    """
    TM_3 恰有两个类:
      u32 ≠ 0 且 Δ = 2u31 + u32·u21 ≠ 0 时属于 B_{3,2} 的类，否则属于零类
    :return: N3Classification (可解包为 (类名, 证书))
    """
    if U.n != 3:
        raise BadSize("classify_n3 只接受 3×3 矩阵")
    f = U.field
    u21, u31, u32 = U.raw(2, 1), U.raw(3, 1), U.raw(3, 2)
    d = f.add(f.mul(f.canonical(2), u31), f.mul(u32, u21))
    if not f.is_zero(u32) and not f.is_zero(d):
        zero, one = f.canonical(0), f.canonical(1)
        G = GammaMatrix(f, [[f.div(f.canonical(2), d), f.div(u21, d), zero],
                            [zero, f.inv(u32), zero],
                            [zero, zero, one]])
        target = b_matrix(3, 2, f)
        steps = [QStep(2, 1, Scalar(f, f.div(u21, f.canonical(2)))),
                 PStep(2, Scalar(f, f.inv(u32))),
                 PStep(1, Scalar(f, f.div(f.canonical(2), d)))]
        final, path = apply_sequence(U, steps)
        assert final == target
        return N3Classification('B32Class', target, make_morphism(U, target, G), path)
    target = zero_matrix(3, f)
    return N3Classification('ZeroClass', target, make_morphism(U, target, _step3_gamma(U)),
                            zero_eto_path(U))
