"""
精确标量运算: 奇素数域 F_p 与有理数域

FieldSpec 负责在 "原始值" (raw) 上做运算: 素数域中是 0..p-1 的整数，有理数域中是 Fraction。
热循环 (代数乘法、Key-EQ、搜索) 直接使用原始值；Scalar 是面向调用者的不可变包装。
"""
import re
from fractions import Fraction

from sympy import isprime

from .errors import (CharTwo, NotPrime, FieldTooLarge, DivisionByZero, FieldMismatch,
                     InfiniteField, ParseError)

PRIME_LIMIT = 2 ** 31

_SCALAR_RE = re.compile(r"^([+-]?)(\d+)(?:/(\d+))?$")


class FieldSpec:
    """域句柄基类"""

    name = None
    characteristic = None
    order = None
    is_finite = False

    # --- 包装 ---

    def element(self, x):
        """把 int / Fraction / Scalar 转为本域的 Scalar"""
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatch(f"标量属于 {x.field.name}，期望 {self.name}")
            return x
        return Scalar(self, self.canonical(x))

    def zero(self):
        return Scalar(self, self.canonical(0))

    def one(self):
        return Scalar(self, self.canonical(1))

    def raw(self, x):
        """取原始值；接受 Scalar、int、Fraction"""
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatch(f"标量属于 {x.field.name}，期望 {self.name}")
            return x.value
        return self.canonical(x)

    # --- 原始值运算 (子类实现) ---

    def canonical(self, x):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a == 0

    def raw_elements(self):
        raise InfiniteField(f"{self.name} 是无限域，无法枚举元素")

    def format(self, a):
        return str(a)

    def parse(self, text, line=1, column=1):
        raise NotImplementedError

    def __repr__(self):
        return f"FieldSpec({self.name})"


class PrimeField(FieldSpec):
    """有限域 F_p，p 为奇素数且 p < 2^31"""

    is_finite = True

    def __init__(self, p):
        self.p = p
        self.name = f"q{p}"
        self.characteristic = p
        self.order = p

    def canonical(self, x):
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DivisionByZero(f"分母 {x.denominator} 在 F_{self.p} 中为零")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a == 0:
            raise DivisionByZero(f"F_{self.p} 中零元没有逆元")
        return pow(a, -1, self.p)

    def raw_elements(self):
        return range(self.p)

    def parse(self, text, line=1, column=1):
        m = _SCALAR_RE.match(text.strip())
        if not m:
            raise ParseError(f"无法解析标量 '{text}'", line, column)
        if m.group(3) is not None:
            raise ParseError(f"素数域 {self.name} 中不允许分数写法 '{text}'", line, column)
        value = int(m.group(2))
        if m.group(1) == '-':
            value = -value
        return value % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(('prime', self.p))

    def __reduce__(self):
        return (PrimeField, (self.p,))


class RationalField(FieldSpec):
    """有理数域 Q (特征 0)，元素为约分后分母为正的 Fraction"""

    name = 'rational'
    characteristic = 0

    def canonical(self, x):
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("有理数 0 没有逆元")
        return 1 / a

    def parse(self, text, line=1, column=1):
        m = _SCALAR_RE.match(text.strip())
        if not m:
            raise ParseError(f"无法解析标量 '{text}'", line, column)
        num = int(m.group(2))
        den = int(m.group(3)) if m.group(3) is not None else 1
        if den == 0:
            raise ParseError(f"分母为零 '{text}'", line, column)
        value = Fraction(num, den)
        return -value if m.group(1) == '-' else value

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash('rational')

    def __reduce__(self):
        return (RationalField, ())


RATIONAL = RationalField()


class Scalar:
    """不可变的域元素；相等性是结构相等 (同域且规范代表元相同)"""

    __slots__ = ('field', 'value')

    def __init__(self, field, value):
        object.__setattr__(self, 'field', field)
        object.__setattr__(self, 'value', value)

    def __setattr__(self, key, value):
        raise AttributeError("Scalar 是不可变对象")

    def __reduce__(self):
        return (Scalar, (self.field, self.value))

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field.name} 与 {other.field.name} 的标量不能混合运算")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field.canonical(other)
        return None

    def __add__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return Scalar(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return Scalar(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return Scalar(self.field, self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return Scalar(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return Scalar(self.field, self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return Scalar(self.field, self.field.div(b, self.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __pow__(self, e):
        if e < 0:
            return Scalar(self.field, self.field.inv(self.value)) ** (-e)
        result = self.field.canonical(1)
        base = self.value
        while e:
            if e & 1:
                result = self.field.mul(result, base)
            base = self.field.mul(base, base)
            e >>= 1
        return Scalar(self.field, result)

    def inverse(self):
        return Scalar(self.field, self.field.inv(self.value))

    def is_zero(self):
        return self.field.is_zero(self.value)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self.field.canonical(other)
        return NotImplemented

    def __hash__(self):
        # 与规范代表元 (int / Fraction) 的哈希一致
        return hash(self.value)

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"Scalar({self.field.format(self.value)}, {self.field.name})"


def make_field(spec):
    """
    根据描述构造域句柄
    :param spec: 奇素数 p (int)，或字符串 'q5' / 'F5' / '5' / 'rational' / 'Q'，或已有的 FieldSpec
    :return: FieldSpec
    """
    if isinstance(spec, FieldSpec):
        return spec
    if isinstance(spec, str):
        text = spec.strip()
        if text.lower() in ('rational', 'q', 'qq'):
            return RATIONAL
        if text[:1] in ('q', 'F', 'f'):
            text = text[1:]
        if not text.isdigit():
            raise NotPrime(f"无法识别的域描述: '{spec}'")
        spec = int(text)
    if isinstance(spec, bool) or not isinstance(spec, int):
        raise NotPrime(f"无法识别的域描述: {spec!r}")
    if spec == 2:
        raise CharTwo("不支持特征为 2 的域")
    if spec >= PRIME_LIMIT:
        raise FieldTooLarge(f"素数 {spec} 超出上限 2^31")
    if not isprime(spec):
        raise NotPrime(f"{spec} 不是素数")
    return PrimeField(spec)


def arith(a, b, op):
    """
    同域标量的四则运算
    :param op: 'add' / 'sub' / 'mul' / 'div'
    """
    if a.field != b.field:
        raise FieldMismatch(f"{a.field.name} 与 {b.field.name} 的标量不能混合运算")
    f = a.field
    if op == 'add':
        return Scalar(f, f.add(a.value, b.value))
    if op == 'sub':
        return Scalar(f, f.sub(a.value, b.value))
    if op == 'mul':
        return Scalar(f, f.mul(a.value, b.value))
    if op == 'div':
        return Scalar(f, f.div(a.value, b.value))
    raise ValueError(f"未知运算: {op}")


def neg(a):
    return -a


def inv(a):
    return a.inverse()


def is_zero(a):
    return a.is_zero()


def enumerate_elements(field):
    """按代表元顺序 0..p-1 列出有限域的全部元素"""
    return [Scalar(field, v) for v in field.raw_elements()]


def parse_scalar(text, field, line=1, column=1):
    """按标量文本语法解析: 可选符号、十进制整数、可选 '/分母' (仅有理数域)"""
    return Scalar(field, field.parse(text, line, column))
