"""
保次数同态的矩阵表示与 Key-EQ 判定

γ: A(T) -> A(S)，γ(X_j) = Σ_i γ_{ij} Y_i，Γ 为 m×n 矩阵 (m = S 的尺寸, n = T 的尺寸)。
"""
import json
from dataclasses import dataclass

from core import linalg
from core.algebra import Algebra, Element, mul, add, scale, support
from core.errors import (DimensionMismatch, FieldMismatch, UnverifiedMorphism, Singular,
                         SourceTargetMismatch, AlgebraMismatch, RestrictionViolated,
                         NotDetermined, ParseError)
from core.scalar import Scalar, make_field
from core.sltm import SLTM, zero_matrix, to_json as sltm_to_json


class GammaMatrix:
    """m×n 系数矩阵，元素为原始值，创建后不可变"""

    __slots__ = ('rows', 'cols', 'field', 'entries')

    def __init__(self, field, entries):
        entries = tuple(tuple(field.canonical(x) if not isinstance(x, Scalar) else field.raw(x)
                              for x in row) for row in entries)
        if not entries or any(len(row) != len(entries[0]) for row in entries):
            raise DimensionMismatch("Γ 必须是非空的矩形矩阵")
        self.rows = len(entries)
        self.cols = len(entries[0])
        self.field = field
        self.entries = entries

    def raw(self, i, j):
        return self.entries[i - 1][j - 1]

    def entry(self, i, j):
        return Scalar(self.field, self.entries[i - 1][j - 1])

    def column(self, j):
        return [row[j - 1] for row in self.entries]

    def as_lists(self):
        return [list(row) for row in self.entries]

    def is_square(self):
        return self.rows == self.cols

    def det(self):
        if not self.is_square():
            raise DimensionMismatch(f"{self.rows}×{self.cols} 矩阵没有行列式")
        return Scalar(self.field, linalg.det(self.field, self.as_lists()))

    def rank(self):
        return linalg.rank(self.field, self.as_lists())

    def inverse(self):
        return GammaMatrix(self.field, linalg.inverse(self.field, self.as_lists()))

    def transpose(self):
        return GammaMatrix(self.field, linalg.transpose(self.as_lists()))

    def __matmul__(self, other):
        if other.field != self.field:
            raise FieldMismatch("不同域上的矩阵不能相乘")
        return GammaMatrix(self.field, linalg.matmul(self.field, self.as_lists(), other.as_lists()))

    def __eq__(self, other):
        return (isinstance(other, GammaMatrix) and self.field == other.field
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.field, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in row) for row in self.entries)
        return f"GammaMatrix([{body}], {self.field.name})"

    def to_json(self):
        f = self.field
        cells = [[x if f.is_finite else f.format(x) for x in row] for row in self.entries]
        return {'rows': self.rows, 'cols': self.cols, 'field': f.name, 'entries': cells}


def gamma_from_rows(rows, field):
    """由行列表构造 Γ，元素可为 int / Fraction / Scalar / 标量文本"""
    return GammaMatrix(field, [[field.parse(x) if isinstance(x, str) else field.raw(x) for x in row]
                               for row in rows])


def identity_gamma(n, field):
    return GammaMatrix(field, linalg.identity(field, n))


def gamma_from_json(data, field=None):
    try:
        rows, cols, cells = int(data['rows']), int(data['cols']), data['entries']
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"Γ 的 JSON 缺少字段或类型错误: {e}")
    declared = make_field(data['field']) if 'field' in data else None
    if declared is not None and field is not None and declared != field:
        raise FieldMismatch(f"Γ 声明域 {declared.name}，但要求 {field.name}")
    fld = declared or field
    if fld is None:
        raise ParseError("Γ 的 JSON 未声明域")
    if len(cells) != rows or any(len(row) != cols for row in cells):
        raise ParseError(f"Γ 的形状与声明的 {rows}×{cols} 不一致")
    return GammaMatrix(fld, [[fld.parse(str(x), i + 1, j + 1) for j, x in enumerate(row)]
                             for i, row in enumerate(cells)])


def parse_gamma(text, field):
    """
    Γ 的写法: JSON ({"rows", "cols", "entries"}) 或每行一行、以空格分隔 (内联时用 '|' 分隔行)
    :return: GammaMatrix
    """
    text = text.strip()
    if text.startswith('{'):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"JSON 格式错误: {e.msg}", e.lineno, e.colno)
        return gamma_from_json(data, field)
    rows = []
    for line_no, line in enumerate(text.replace('|', '\n').splitlines(), start=1):
        if not line.strip():
            continue
        rows.append([field.parse(tok, line_no, col) for col, tok in enumerate(line.split(), start=1)])
    if not rows:
        raise ParseError("Γ 文本为空")
    if any(len(r) != len(rows[0]) for r in rows):
        raise ParseError("Γ 各行长度不一致")
    return gamma_from_rows(rows, field)


def _check_shapes(T, S, G):
    if not (T.field == S.field == G.field):
        raise FieldMismatch("T、S 与 Γ 必须定义在同一个域上")
    if G.rows != S.n or G.cols != T.n:
        raise DimensionMismatch(f"Γ 是 {G.rows}×{G.cols}，但 S 的尺寸为 {S.n}、T 的尺寸为 {T.n}")


# --- Key-EQ ---

def key_eq_failure(T, S, G):
    """
    逐条检查 Key-EQ:
        2γ_ir γ_kr + γ_kr² s_ki = Σ_{j<r} t_rj (γ_kj γ_kr s_ki + γ_kj γ_ir + γ_ij γ_kr)
    :return: 第一个不成立的 (r, i, k)，全部成立时返回 None
    """
    _check_shapes(T, S, G)
    f = T.field
    g = G.entries
    two = f.canonical(2)
    for r in range(1, T.n + 1):
        t_row = T.row(r)
        nz = [(j, t_row[j - 1]) for j in range(1, r) if not f.is_zero(t_row[j - 1])]
        for k in range(2, S.n + 1):
            g_kr = g[k - 1][r - 1]
            s_row = S.row(k)
            for i in range(1, k):
                s_ki = s_row[i - 1]
                g_ir = g[i - 1][r - 1]
                lhs = f.add(f.mul(two, f.mul(g_ir, g_kr)), f.mul(f.mul(g_kr, g_kr), s_ki))
                rhs = f.canonical(0)
                for j, t_rj in nz:
                    g_kj, g_ij = g[k - 1][j - 1], g[i - 1][j - 1]
                    inner = f.add(f.add(f.mul(f.mul(g_kj, g_kr), s_ki), f.mul(g_kj, g_ir)),
                                  f.mul(g_ij, g_kr))
                    rhs = f.add(rhs, f.mul(t_rj, inner))
                if lhs != rhs:
                    return (r, i, k)
    return None


def key_eq_check(T, S, G):
    return key_eq_failure(T, S, G) is None


def generator_images(S, G):
    """γ(X_j) = Σ_i γ_ij Y_i，j = 1..n"""
    A = Algebra(S)
    return [A.element({1 << (i - 1): G.raw(i, j) for i in range(1, G.rows + 1)})
            for j in range(1, G.cols + 1)]


def direct_hom_failure(T, S, G):
    """
    在 A(S) 中直接验证 (γ(X_r))² = Σ_{j<r} t_rj γ(X_j) γ(X_r)
    :return: 第一个不成立的 r，全部成立时返回 None
    """
    _check_shapes(T, S, G)
    images = generator_images(S, G)
    f = T.field
    for r in range(1, T.n + 1):
        x_r = images[r - 1]
        lhs = mul(x_r, x_r)
        rhs = x_r.algebra.zero()
        for j in range(1, r):
            t_rj = T.raw(r, j)
            if not f.is_zero(t_rj):
                rhs = add(rhs, scale(mul(images[j - 1], x_r), t_rj))
        if lhs != rhs:
            return r
    return None


def direct_hom_check(T, S, G):
    return direct_hom_failure(T, S, G) is None


def is_isomorphism(T, S, G):
    """Γ 可逆且满足 Key-EQ"""
    if not G.is_square() or T.n != S.n:
        raise DimensionMismatch(f"同构需要方阵，收到 {G.rows}×{G.cols}")
    if G.det().is_zero():
        return False
    return key_eq_check(T, S, G)


# --- 态射 ---

@dataclass(frozen=True)
class Morphism:
    """γ: A(source) -> A(target)；hom / iso 标记只由 make_morphism 或复合得到"""
    source: SLTM
    target: SLTM
    gamma: GammaMatrix
    hom: bool = False
    iso: bool = False

    @property
    def verified(self):
        return {'hom': self.hom, 'iso': self.iso}

    def to_json(self):
        return {'source': sltm_to_json(self.source), 'target': sltm_to_json(self.target),
                'gamma': self.gamma.to_json(), 'hom': self.hom, 'iso': self.iso}


def make_morphism(T, S, G):
    """重新计算验证标记后构造态射"""
    hom = key_eq_check(T, S, G)
    iso = hom and G.is_square() and not G.det().is_zero()
    return Morphism(T, S, G, hom, iso)


def identity_morphism(T):
    return Morphism(T, T, identity_gamma(T.n, T.field), True, True)


def apply_morphism(f, a):
    """把 A(T) 中的元素映到 A(S): 单项式映为生成元像的乘积"""
    if not f.hom:
        raise UnverifiedMorphism("态射未通过 Key-EQ 验证，不能作用于元素")
    if not isinstance(a, Element) or a.algebra.T != f.source:
        raise AlgebraMismatch("元素不属于态射的源代数")
    images = generator_images(f.target, f.gamma)
    B = Algebra(f.target)
    result = B.zero()
    for mask, c in a.terms.items():
        term = B.scalar(c)
        for i in support(mask):
            term = mul(term, images[i - 1])
        result = add(result, term)
    return result


def invert_isomorphism(f):
    """Θ = Γ^{-1}，源与目标互换"""
    if not f.hom:
        raise UnverifiedMorphism("态射未通过 Key-EQ 验证")
    if not f.iso:
        raise Singular("Γ 不可逆，无法求逆同构")
    theta = f.gamma.inverse()
    return make_morphism(f.target, f.source, theta)


def compose(g, f):
    """g ∘ f，矩阵为 Γ_g · Γ_f"""
    if f.target != g.source:
        raise SourceTargetMismatch("f 的目标与 g 的源不一致")
    return Morphism(f.source, g.target, g.gamma @ f.gamma, f.hom and g.hom, f.iso and g.iso)


# --- 由 Γ 反推目标矩阵 ---

def induced_target(T, G):
    """
    求使 Γ: A(T) -> A(S) 成为同态的 S
    对每个位置 (k,i)，Key-EQ 只含 s_ki 一个未知量:
        s_ki · γ_kr (γ_kr - c_k) = c_k γ_ir + c_i γ_kr - 2 γ_ir γ_kr,  c = Σ_{j<r} t_rj γ_{·j}
    :return: SLTM；T 不满足导出的限制时抛出 RestrictionViolated，某位置不受约束时抛出 NotDetermined
    """
    if G.cols != T.n or G.field != T.field:
        raise DimensionMismatch(f"Γ 有 {G.cols} 列，T 的尺寸为 {T.n}")
    f = T.field
    m = G.rows
    two = f.canonical(2)
    # 每一列的 (g, c)
    columns = []
    for r in range(1, T.n + 1):
        g = G.column(r)
        c = [f.canonical(0)] * m
        for j in range(1, r):
            t_rj = T.raw(r, j)
            if f.is_zero(t_rj):
                continue
            col_j = G.column(j)
            c = [f.add(ci, f.mul(t_rj, x)) for ci, x in zip(c, col_j)]
        columns.append((g, c))

    values = {}
    for k in range(2, m + 1):
        for i in range(1, k):
            solution = None
            pending = []
            for r, (g, c) in enumerate(columns, start=1):
                gi, gk, ci, ck = g[i - 1], g[k - 1], c[i - 1], c[k - 1]
                a = f.mul(gk, f.sub(gk, ck))
                b = f.sub(f.add(f.mul(ck, gi), f.mul(ci, gk)), f.mul(two, f.mul(gi, gk)))
                if f.is_zero(a):
                    if not f.is_zero(b):
                        raise RestrictionViolated(f"T 不满足 Γ 导出的限制 (r={r}, i={i}, k={k})",
                                                  condition='key-eq', index=(r, i, k))
                    continue
                value = f.div(b, a)
                if solution is None:
                    solution = value
                elif value != solution:
                    pending.append(r)
            if pending:
                raise RestrictionViolated(f"位置 ({k},{i}) 的方程互相矛盾 (r={pending[0]})",
                                          condition='key-eq', index=(pending[0], i, k))
            if solution is None:
                raise NotDetermined(f"位置 ({k},{i}) 不受 Key-EQ 约束", position=(k, i))
            values[(k, i)] = solution
    return zero_matrix(m, f).with_entries(values) if values else zero_matrix(m, f)
