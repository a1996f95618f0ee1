"""
初等三角变换 (ETO): P (行列互逆缩放)、F (受限下标交换)、Q (受限剪切)

每个变换 E 都附带初等矩阵 Γ_E，使 Γ_E: A(T) -> A(E(T)) 为同构。
"""
from dataclasses import dataclass
from typing import ClassVar

from core import linalg
from core.errors import ZeroScalar, BadIndex, RestrictionViolated, ParseError
from core.scalar import Scalar
from core.sltm import SLTM, delta_raw
from .hom import GammaMatrix, identity_gamma


def _check_index(n, *indices):
    for x in indices:
        if not 1 <= x <= n:
            raise BadIndex(f"下标 {x} 超出 1..{n}")


class EtoStep:
    """三种变换的公共接口"""

    kind: ClassVar[str] = ''

    def violation(self, T):
        """第一个不满足的限制 (condition, index)；可施行时返回 None"""
        return None

    def admissible(self, T):
        return self.violation(T) is None

    def apply(self, T):
        raise NotImplementedError

    def gamma(self, n, field=None):
        return step_gamma(self, n, field)

    def inverse(self):
        return invert_step(self)

    def sort_key(self):
        raise NotImplementedError

    def text(self):
        raise NotImplementedError

    def __str__(self):
        return self.text()


@dataclass(frozen=True)
class PStep(EtoStep):
    """P_r(α): 第 r 行除以 α，第 r 列乘以 α"""
    r: int
    alpha: Scalar
    kind: ClassVar[str] = 'P'

    def __post_init__(self):
        if self.alpha.is_zero():
            raise ZeroScalar("P 变换的 α 不能为零")

    def apply(self, T):
        return apply_p(T, self.r, self.alpha)

    def sort_key(self):
        return (0, self.r, 0, self.alpha.value)

    def text(self):
        return f"P {self.r} {self.alpha}"

    def to_json(self):
        return {'kind': 'P', 'r': self.r, 'alpha': str(self.alpha)}


@dataclass(frozen=True)
class FStep(EtoStep):
    """F_(r1,r2): 在限制条件下交换下标 r1 与 r2 的角色"""
    r1: int
    r2: int
    kind: ClassVar[str] = 'F'

    def __post_init__(self):
        if not self.r1 < self.r2:
            raise BadIndex(f"F 变换要求 r1 < r2，收到 ({self.r1},{self.r2})")

    def violation(self, T):
        return f_violation(T, self.r1, self.r2)

    def apply(self, T):
        return apply_f(T, self.r1, self.r2)

    def sort_key(self):
        return (1, self.r1, self.r2, 0)

    def text(self):
        return f"F {self.r1} {self.r2}"

    def to_json(self):
        return {'kind': 'F', 'r1': self.r1, 'r2': self.r2}


@dataclass(frozen=True)
class QStep(EtoStep):
    """Q_(r0,k0)(β): 第 k0 列的受限剪切"""
    r0: int
    k0: int
    beta: Scalar
    kind: ClassVar[str] = 'Q'

    def __post_init__(self):
        if not self.k0 < self.r0:
            raise BadIndex(f"Q 变换要求 k0 < r0，收到 ({self.r0},{self.k0})")

    def violation(self, T):
        return q_violation(T, self.r0, self.k0, self.beta)

    def apply(self, T):
        return apply_q(T, self.r0, self.k0, self.beta)

    def sort_key(self):
        return (2, self.r0, self.k0, self.beta.value)

    def text(self):
        return f"Q {self.r0} {self.k0} {self.beta}"

    def to_json(self):
        return {'kind': 'Q', 'r0': self.r0, 'k0': self.k0, 'beta': str(self.beta)}


@dataclass
class EtoSequence:
    """步骤列表、累积矩阵 Γ_m···Γ_1 以及途经的矩阵 (含起点与终点)"""
    steps: list
    gamma: GammaMatrix
    matrices: list

    @property
    def source(self):
        return self.matrices[0]

    @property
    def target(self):
        return self.matrices[-1]

    def __len__(self):
        return len(self.steps)

    def to_json(self):
        return {'steps': [s.to_json() for s in self.steps], 'text': format_steps(self.steps),
                'accumulated_gamma': self.gamma.to_json()}


# --- P ---

def apply_p(T, r1, alpha):
    """
    s_{r1,k} = t_{r1,k} / α (k < r1)，s_{k,r1} = α · t_{k,r1} (k > r1)，其余不变
    """
    f = T.field
    a = f.raw(alpha)
    if f.is_zero(a):
        raise ZeroScalar("P 变换的 α 不能为零")
    _check_index(T.n, r1)
    updates = {}
    for k in range(1, r1):
        updates[(r1, k)] = f.div(T.raw(r1, k), a)
    for k in range(r1 + 1, T.n + 1):
        updates[(k, r1)] = f.mul(a, T.raw(k, r1))
    return T.with_entries(updates) if updates else T


# --- F ---

def f_violation(T, r1, r2):
    """
    条件 1: t_{r2,j} = 0 (r1 <= j < r2)
    条件 2: t_{r,r1} = 0 (r1 < r < r2)
    """
    _check_index(T.n, r1, r2)
    if not r1 < r2:
        raise BadIndex(f"F 变换要求 r1 < r2，收到 ({r1},{r2})")
    f = T.field
    for j in range(r1, r2):
        if not f.is_zero(T.raw(r2, j)):
            return (1, j)
    for r in range(r1 + 1, r2):
        if not f.is_zero(T.raw(r, r1)):
            return (2, r)
    return None


def f_well_defined(T, r1, r2):
    return f_violation(T, r1, r2) is None


def apply_f(T, r1, r2):
    bad = f_violation(T, r1, r2)
    if bad is not None:
        condition, index = bad
        raise RestrictionViolated(f"F_({r1},{r2}) 的条件 {condition} 在下标 {index} 处不成立",
                                  condition=condition, index=index)
    n = T.n
    data = []
    for r in range(2, n + 1):
        for k in range(1, r):
            if r == r1:
                value = T.raw(r2, k)
            elif r == r2:
                value = T.raw(r1, k)
            elif k == r1:
                value = T.raw(r, r2)
            elif k == r2:
                value = T.raw(r, r1)
            else:
                value = T.raw(r, k)
            data.append(value)
    # 行规则与列规则重叠的位置只有 (r2, r1)，两种规则都给出 0
    assert T.field.is_zero(data[(r2 - 1) * (r2 - 2) // 2 + r1 - 1])
    return SLTM(n, T.field, data)


# --- Q ---

def q_violation(T, r0, k0, beta):
    """
    条件 1: t_{r0,j} = 0 (k0 < j < r0)
    条件 2: k0 = 1，或 Δ^(1)_{i,k0,r0}(T) = β · t_{k0,i} (i < k0)
    """
    _check_index(T.n, r0, k0)
    if not k0 < r0:
        raise BadIndex(f"Q 变换要求 k0 < r0，收到 ({r0},{k0})")
    f = T.field
    b = f.raw(beta)
    one = f.canonical(1)
    for j in range(k0 + 1, r0):
        if not f.is_zero(T.raw(r0, j)):
            return (1, j)
    for i in range(1, k0):
        if delta_raw(T, one, i, k0, r0) != f.mul(b, T.raw(k0, i)):
            return (2, i)
    return None


def q_well_defined(T, r0, k0, beta):
    return q_violation(T, r0, k0, beta) is None


def apply_q(T, r0, k0, beta):
    """s_{r0,k0} = t_{r0,k0} - 2β；s_{r,k0} = t_{r,k0} + β t_{r,r0} (r > r0)"""
    bad = q_violation(T, r0, k0, beta)
    if bad is not None:
        condition, index = bad
        raise RestrictionViolated(f"Q_({r0},{k0}) 的条件 {condition} 在下标 {index} 处不成立",
                                  condition=condition, index=index)
    f = T.field
    b = f.raw(beta)
    updates = {(r0, k0): f.sub(T.raw(r0, k0), f.mul(f.canonical(2), b))}
    for r in range(r0 + 1, T.n + 1):
        updates[(r, k0)] = f.add(T.raw(r, k0), f.mul(b, T.raw(r, r0)))
    return T.with_entries(updates)


# --- 初等矩阵 ---

def step_gamma(step, n, field=None):
    """
    P_r(α): 单位阵，(r,r) 处为 α
    F_(r1,r2): 交换 r1、r2 的置换阵
    Q_(r0,k0)(β): 单位阵，第 k0 行第 r0 列为 β
    """
    if isinstance(step, PStep):
        fld = step.alpha.field
        _check_index(n, step.r)
        rows = linalg.identity(fld, n)
        rows[step.r - 1][step.r - 1] = step.alpha.value
    elif isinstance(step, FStep):
        if field is None:
            raise ValueError("F 的初等矩阵需要指定域")
        fld = field
        _check_index(n, step.r1, step.r2)
        rows = linalg.identity(fld, n)
        a, b = step.r1 - 1, step.r2 - 1
        rows[a][a] = rows[b][b] = fld.canonical(0)
        rows[a][b] = rows[b][a] = fld.canonical(1)
    elif isinstance(step, QStep):
        fld = step.beta.field
        _check_index(n, step.r0, step.k0)
        rows = linalg.identity(fld, n)
        rows[step.k0 - 1][step.r0 - 1] = step.beta.value
    else:
        raise TypeError(f"未知的变换类型: {step!r}")
    return GammaMatrix(fld, rows)


def invert_step(step):
    """P(α)→P(1/α)；F 自逆；Q(β)→Q(-β)"""
    if isinstance(step, PStep):
        return PStep(step.r, step.alpha.inverse())
    if isinstance(step, FStep):
        return step
    if isinstance(step, QStep):
        return QStep(step.r0, step.k0, -step.beta)
    raise TypeError(f"未知的变换类型: {step!r}")


def apply_sequence(T, steps):
    """
    依次施行变换
    :return: (最终矩阵, EtoSequence)；第 idx 步不可施行时抛出 RestrictionViolated
    """
    current = T
    gamma = identity_gamma(T.n, T.field)
    matrices = [T]
    steps = list(steps)
    for idx, step in enumerate(steps):
        bad = step.violation(current)
        if bad is not None:
            condition, index = bad
            raise RestrictionViolated(f"第 {idx + 1} 步 {step.text()} 不可施行: 条件 {condition} 在下标 {index} 处不成立",
                                      condition=condition, index=index, step_index=idx)
        current = step.apply(current)
        gamma = step_gamma(step, T.n, T.field) @ gamma
        matrices.append(current)
    return current, EtoSequence(steps, gamma, matrices)


def admissible_moves(T):
    """
    按规范顺序列出 T 上全部可施行的单步变换 (仅有限域):
    P (α ∈ F^×, α ≠ 1)、F (全部可施行的下标对)、Q (β 取遍整个域)
    """
    f = T.field
    elements = [Scalar(f, v) for v in f.raw_elements()]
    units = [a for a in elements if not a.is_zero() and a != 1]
    n = T.n
    for r in range(1, n + 1):
        for a in units:
            yield PStep(r, a)
    for r1 in range(1, n + 1):
        for r2 in range(r1 + 1, n + 1):
            if f_violation(T, r1, r2) is None:
                yield FStep(r1, r2)
    for r0 in range(2, n + 1):
        for k0 in range(1, r0):
            for b in elements:
                if q_violation(T, r0, k0, b) is None:
                    yield QStep(r0, k0, b)


# --- Q 的转置: 五步分解 ---

def q_transpose_gamma(n, r0, k0, beta):
    """单位阵，第 r0 行第 k0 列为 β"""
    fld = beta.field
    rows = linalg.identity(fld, n)
    rows[r0 - 1][k0 - 1] = beta.value
    return GammaMatrix(fld, rows)


def q_transpose_violation(T, r0, k0, beta):
    """
    Γ = Q_(r0,k0)(β)^t 定义同构所需的限制:
      t_{r,k0} = 0 (k0 < r < r0)，t_{r0,k} = 0 (k0 < k < r0)，
      t_{k0,j} = -β t_{r0,j} (j < k0)，t_{r0,k0} = 2/β
    """
    f = T.field
    b = f.raw(beta)
    if f.is_zero(b):
        raise ZeroScalar("转置剪切要求 β ≠ 0")
    for r in range(k0 + 1, r0):
        if not f.is_zero(T.raw(r, k0)):
            return (1, r)
    for k in range(k0 + 1, r0):
        if not f.is_zero(T.raw(r0, k)):
            return (2, k)
    for j in range(1, k0):
        if T.raw(k0, j) != f.neg(f.mul(b, T.raw(r0, j))):
            return (3, j)
    if T.raw(r0, k0) != f.div(f.canonical(2), b):
        return (4, k0)
    return None


def q_transpose_admissible(T, r0, k0, beta):
    return q_transpose_violation(T, r0, k0, beta) is None


def q_transpose_steps(r0, k0, beta):
    """
    Q_(r0,k0)(β)^t = P_k0(-1/β) · Q_(r0,k0)(-1) · P_r0(β) · F_(k0,r0) · Q_(r0,k0)(1/β)
    按施行顺序返回五个步骤
    """
    if beta.is_zero():
        raise ZeroScalar("转置剪切要求 β ≠ 0")
    inv_b = beta.inverse()
    return [QStep(r0, k0, inv_b), FStep(k0, r0), PStep(r0, beta),
            QStep(r0, k0, -beta.field.one()), PStep(k0, -inv_b)]


# --- 文本 ---

def parse_steps(text, field):
    """
    解析 "P r alpha; F r1 r2; Q r0 k0 beta" 形式的步骤序列
    """
    steps = []
    offset = 0
    for chunk in text.split(';'):
        col = offset + len(chunk) - len(chunk.lstrip()) + 1
        offset += len(chunk) + 1
        parts = chunk.split()
        if not parts:
            continue
        kind = parts[0].upper()
        arity = {'P': 3, 'F': 3, 'Q': 4}.get(kind)
        if arity is None or len(parts) != arity:
            raise ParseError(f"无法识别的步骤 '{chunk.strip()}'", 1, col)
        n_idx = 2 if kind in ('F', 'Q') else 1
        if not all(x.isdigit() for x in parts[1:1 + n_idx]):
            raise ParseError(f"步骤 '{chunk.strip()}' 中的下标不是正整数", 1, col)
        idx = [int(x) for x in parts[1:1 + n_idx]]
        if kind == 'P':
            steps.append(PStep(idx[0], Scalar(field, field.parse(parts[2], 1, col))))
        elif kind == 'F':
            steps.append(FStep(idx[0], idx[1]))
        else:
            steps.append(QStep(idx[0], idx[1], Scalar(field, field.parse(parts[3], 1, col))))
    return steps


def steps_from_json(items, field):
    text = []
    for item in items:
        if item['kind'] == 'P':
            text.append(f"P {item['r']} {item['alpha']}")
        elif item['kind'] == 'F':
            text.append(f"F {item['r1']} {item['r2']}")
        else:
            text.append(f"Q {item['r0']} {item['k0']} {item['beta']}")
    return parse_steps("; ".join(text), field)


def format_steps(steps):
    return "; ".join(s.text() for s in steps)
