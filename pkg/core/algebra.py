"""
代数 A(T) 的运算

基: 2^n 个无平方单项式 X_S (S ⊆ {1..n})，单项式用位集表示 (第 i-1 位对应 X_i)。
乘法通过改写规则 X_i^2 = Σ_{j<i} t_{ij} X_j X_i 化为正规形。
"""
import re

from .errors import AlgebraMismatch, BadDegree, BadIndex, ParseError
from .scalar import Scalar
from .sltm import MAX_N

_TERM_SPLIT = re.compile(r"\s*([+-])\s*")
_MONOMIAL = re.compile(r"^(?:X\d+)+$")


def support(mask):
    """位集 -> 下标元组 (升序)"""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def mask_of(indices):
    mask = 0
    for i in indices:
        mask |= 1 << (i - 1)
    return mask


def monomial_degree(mask):
    return 2 * bin(mask).count('1')


def _support_key(mask):
    # 基的排列: 先按下标元组字典序 (空集最前)
    return support(mask)


class Algebra:
    """由严格下三角矩阵 T 确定的交换幺代数 A(T)"""

    __slots__ = ('T', 'field', 'n')

    def __init__(self, T):
        if T.n > MAX_N:
            raise BadIndex(f"单项式位集最多支持 n={MAX_N}")
        self.T = T
        self.field = T.field
        self.n = T.n

    def __eq__(self, other):
        return isinstance(other, Algebra) and self.T == other.T

    def __hash__(self):
        return hash(('A', self.T))

    def __repr__(self):
        return f"Algebra(n={self.n}, field={self.field.name})"

    def element(self, terms):
        """由 {位集: 原始系数} 构造元素，自动去掉零系数"""
        return Element(self, terms)

    def zero(self):
        return Element(self, {})

    def unit(self):
        return Element(self, {0: self.field.canonical(1)})

    def scalar(self, c):
        return Element(self, {0: self.field.raw(c)})

    def monomial(self, indices, coeff=1):
        indices = tuple(indices)
        for i in indices:
            self._check_index(i)
        if len(set(indices)) != len(indices):
            raise BadIndex(f"单项式 {indices} 含重复下标，请使用乘法")
        return Element(self, {mask_of(indices): self.field.raw(coeff)})

    def generator(self, i):
        """X_i"""
        self._check_index(i)
        return Element(self, {1 << (i - 1): self.field.canonical(1)})

    def _check_index(self, i):
        if not 1 <= i <= self.n:
            raise BadIndex(f"生成元下标 {i} 超出 1..{self.n}")

    def dimension(self):
        return 1 << self.n

    def basis(self):
        return sorted(range(1 << self.n), key=_support_key)


class Element:
    """A(T) 中的元素: {单项式位集: 非零原始系数}，按支撑字典序存放"""

    __slots__ = ('algebra', 'terms')

    def __init__(self, algebra, terms):
        f = algebra.field
        clean = {m: c for m, c in terms.items() if not f.is_zero(c)}
        self.algebra = algebra
        self.terms = {m: clean[m] for m in sorted(clean, key=_support_key)}

    @property
    def field(self):
        return self.algebra.field

    def _same(self, other):
        if not isinstance(other, Element):
            raise TypeError(f"不能与 {type(other).__name__} 运算")
        if other.algebra != self.algebra:
            raise AlgebraMismatch("两个元素属于不同的代数")

    def _lift(self, other):
        if isinstance(other, Element):
            self._same(other)
            return other
        if isinstance(other, Scalar) or isinstance(other, int):
            return self.algebra.scalar(other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return sub(self, other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return sub(other, self)

    def __neg__(self):
        return scale(self, self.field.canonical(-1))

    def __mul__(self, other):
        if isinstance(other, Element):
            return mul(self, other)
        if isinstance(other, (Scalar, int)):
            return scale(self, self.field.raw(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int)):
            return scale(self, self.field.raw(other))
        return NotImplemented

    def __pow__(self, e):
        if e < 0:
            raise ValueError("A(T) 中只定义非负整数次幂")
        result = self.algebra.unit()
        base = self
        while e:
            if e & 1:
                result = mul(result, base)
            base = mul(base, base)
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.algebra == other.algebra and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.algebra, tuple(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def coefficient(self, indices):
        return Scalar(self.field, self.terms.get(mask_of(indices), self.field.canonical(0)))

    def constant_term(self):
        return Scalar(self.field, self.terms.get(0, self.field.canonical(0)))

    def degrees(self):
        return sorted({monomial_degree(m) for m in self.terms})

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def degree(self):
        """齐次元素的次数；零元素返回 None"""
        degs = self.degrees()
        if len(degs) > 1:
            raise BadDegree(f"元素不是齐次的，含次数 {degs}")
        return degs[0] if degs else None

    def __repr__(self):
        return f"Element({format_element(self)!r})"

    def __str__(self):
        return format_element(self)


# --- 乘法 ---

def _accumulate(field, acc, mask, coeff):
    if mask in acc:
        value = field.add(acc[mask], coeff)
        if field.is_zero(value):
            del acc[mask]
        else:
            acc[mask] = value
    elif not field.is_zero(coeff):
        acc[mask] = coeff


def _mul_gen(T, M, i, memo):
    bit = 1 << (i - 1)
    f = T.field
    if not M & bit:
        return {M | bit: f.canonical(1)}
    if memo is not None:
        key = (M, i)
        if key in memo:
            return memo[key]
    result = {}
    row = T.row(i)
    for j in range(1, i):
        t = row[j - 1]
        if f.is_zero(t):
            continue
        for mask, c in _mul_gen(T, M, j, memo).items():
            _accumulate(f, result, mask, f.mul(t, c))
    if memo is not None:
        memo[(M, i)] = result
    return result


def mul_monomial_generator(A, M, i, memo=None):
    """
    X_i · X_M 的正规形
    :param M: 单项式位集
    :param i: 生成元下标 1..n
    :return: Element
    """
    A._check_index(i)
    if M >> A.n:
        raise BadIndex(f"单项式 {support(M)} 超出 1..{A.n}")
    return Element(A, _mul_gen(A.T, M, i, memo))


def _fold(A, mask, coeff, gens, memo):
    f = A.field
    current = {mask: coeff}
    for i in gens:
        nxt = {}
        for m, c in current.items():
            for m2, c2 in _mul_gen(A.T, m, i, memo).items():
                _accumulate(f, nxt, m2, f.mul(c, c2))
        current = nxt
        if not current:
            break
    return current


def mul(a, b, fold='ascending', memoize=True):
    """
    双线性乘法: b 的每个单项式按生成元逐个折叠到 a 上
    :param fold: 'ascending' 或 'descending'，折叠生成元的顺序
    :param memoize: 是否在本次乘法内缓存 (M, i) 的改写结果
    """
    if a.algebra != b.algebra:
        raise AlgebraMismatch("两个元素属于不同的代数")
    A = a.algebra
    f = A.field
    memo = {} if memoize else None
    result = {}
    for mb, cb in b.terms.items():
        gens = support(mb)
        if fold == 'descending':
            gens = gens[::-1]
        for ma, ca in a.terms.items():
            for m, c in _fold(A, ma, f.mul(ca, cb), gens, memo).items():
                _accumulate(f, result, m, c)
    return Element(A, result)


def add(a, b):
    if a.algebra != b.algebra:
        raise AlgebraMismatch("两个元素属于不同的代数")
    f = a.field
    result = dict(a.terms)
    for m, c in b.terms.items():
        _accumulate(f, result, m, c)
    return Element(a.algebra, result)


def sub(a, b):
    return add(a, scale(b, b.field.canonical(-1)))


def scale(a, c):
    """c · a，c 为原始值或 Scalar"""
    f = a.field
    c = f.raw(c)
    return Element(a.algebra, {m: f.mul(c, x) for m, x in a.terms.items()})


def generator(A, i):
    return A.generator(i)


def dimension(A):
    return A.dimension()


def basis(A):
    return [Element(A, {m: A.field.canonical(1)}) for m in A.basis()]


def degree_component(a, d):
    """次数为 d 的齐次分量 (deg X_i = 2)"""
    if d % 2:
        raise BadDegree(f"A(T) 只有偶数次分量，收到 d={d}")
    return Element(a.algebra, {m: c for m, c in a.terms.items() if monomial_degree(m) == d})


# --- 文本 ---

def format_element(a):
    """例如 '1*X1X2 + 2/3*X3'；零元素输出 '0'"""
    if not a.terms:
        return "0"
    f = a.field
    parts = []
    for m, c in a.terms.items():
        text = f.format(c)
        sign = '+'
        if text.startswith('-'):
            sign, text = '-', text[1:]
        mono = "".join(f"X{i}" for i in support(m))
        parts.append((sign, f"{text}*{mono}" if mono else text))
    out = parts[0][1] if parts[0][0] == '+' else f"-{parts[0][1]}"
    for sign, text in parts[1:]:
        out += f" {sign} {text}"
    return out


def parse_element(text, A):
    """解析元素文本: 项之间用 + / - 连接，每项为 'coeff*Xi1Xi2...'、'Xi...' 或纯系数"""
    src = text.strip()
    if not src:
        raise ParseError("元素文本为空")
    f = A.field
    pieces = _TERM_SPLIT.split(src)
    # split 结果: [首项, 符号, 项, 符号, 项, ...]
    signed = []
    head = pieces[0]
    if head:
        signed.append(('+', head))
    for k in range(1, len(pieces), 2):
        signed.append((pieces[k], pieces[k + 1] if k + 1 < len(pieces) else ''))
    result = A.zero()
    column = 1
    for sign, term in signed:
        term = term.strip()
        col = src.find(term, column - 1) + 1 if term else column
        if not term:
            raise ParseError(f"符号 '{sign}' 之后缺少项", 1, col)
        if '*' in term:
            coeff_text, mono = term.split('*', 1)
        elif term.startswith('X'):
            coeff_text, mono = '1', term
        else:
            coeff_text, mono = term, ''
        coeff = f.parse(coeff_text, 1, col)
        if sign == '-':
            coeff = f.neg(coeff)
        mono = mono.replace(' ', '')
        if mono in ('', '1'):
            value = A.scalar(coeff)
        else:
            if not _MONOMIAL.match(mono):
                raise ParseError(f"无法解析单项式 '{mono}'", 1, col)
            value = A.scalar(coeff)
            for idx in re.findall(r"X(\d+)", mono):
                i = int(idx)
                if not 1 <= i <= A.n:
                    raise ParseError(f"生成元 X{i} 超出 1..{A.n}", 1, col)
                value = mul(value, A.generator(i))
        result = add(result, value)
        column = col + len(term)
    return result
