"""
严格下三角矩阵 (SLTM)

存储: 稠密下三角按行展开，t_{ij} (1 <= j < i <= n) 位于下标 (i-1)(i-2)/2 + (j-1)。
全局规范序 = 该展开元组的字典序 (素数域按代表元 0..p-1 比较)。
"""
import itertools
import json
import re

from .errors import BadIndex, IndexOrder, ParseError, FieldMismatch, BadSize, InfiniteField
from .scalar import Scalar, RATIONAL, make_field

MAX_N = 32

_HEADER_N = re.compile(r"^n\s*=\s*(\d+)$")


def _pos(i, j):
    return (i - 1) * (i - 2) // 2 + (j - 1)


def triangle_size(n):
    return n * (n - 1) // 2


class SLTM:
    """n×n 严格下三角矩阵，创建后不可变"""

    __slots__ = ('n', 'field', 'entries', '_hash')

    def __init__(self, n, field, entries):
        if n < 1 or n > MAX_N:
            raise BadSize(f"矩阵尺寸 n={n} 超出范围 1..{MAX_N}")
        entries = tuple(entries)
        if len(entries) != triangle_size(n):
            raise BadSize(f"n={n} 需要 {triangle_size(n)} 个下三角元素，收到 {len(entries)} 个")
        self.n = n
        self.field = field
        self.entries = entries
        self._hash = None

    # --- 访问 ---

    def _check(self, i, j):
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise BadIndex(f"下标 ({i},{j}) 超出 1..{self.n}")

    def raw(self, i, j):
        """t_{ij} 的原始值；j >= i 时为零"""
        self._check(i, j)
        if j >= i:
            return self.field.canonical(0)
        return self.entries[_pos(i, j)]

    def entry(self, i, j):
        return Scalar(self.field, self.raw(i, j))

    def row(self, i):
        """第 i 行的 t_{i1}..t_{i,i-1} (原始值)"""
        if not 1 <= i <= self.n:
            raise BadIndex(f"行号 {i} 超出 1..{self.n}")
        start = _pos(i, 1)
        return self.entries[start:start + i - 1]

    def rows(self):
        """第 2..n 行"""
        return [list(self.row(i)) for i in range(2, self.n + 1)]

    def nonzero_positions(self):
        return [(i, j) for i in range(2, self.n + 1) for j in range(1, i)
                if not self.field.is_zero(self.entries[_pos(i, j)])]

    def is_zero(self):
        return all(self.field.is_zero(x) for x in self.entries)

    def with_entries(self, updates):
        """返回替换若干元素后的新矩阵: updates = {(i, j): 值}"""
        data = list(self.entries)
        for (i, j), value in updates.items():
            if not 1 <= j < i <= self.n:
                raise BadIndex(f"({i},{j}) 不是严格下三角位置")
            data[_pos(i, j)] = self.field.raw(value)
        return SLTM(self.n, self.field, data)

    # --- 比较 ---

    def sort_key(self):
        return self.entries

    def __eq__(self, other):
        if not isinstance(other, SLTM):
            return NotImplemented
        return self.n == other.n and self.field == other.field and self.entries == other.entries

    def __lt__(self, other):
        return (self.n, self.entries) < (other.n, other.entries)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.field, self.entries))
        return self._hash

    def __getstate__(self):
        return (self.n, self.field, self.entries)

    def __setstate__(self, state):
        self.n, self.field, self.entries = state
        self._hash = None

    def __repr__(self):
        return f"SLTM({serialize_sltm(self)!r})"

    def __str__(self):
        return serialize_sltm(self)


# --- 构造 ---

def from_rows(rows, field=RATIONAL):
    """
    由第 2..n 行构造矩阵
    :param rows: [[t21], [t31, t32], ...]，元素可为 int / Fraction / Scalar / 标量文本
    """
    n = len(rows) + 1
    data = []
    for idx, row in enumerate(rows):
        i = idx + 2
        if len(row) != i - 1:
            raise BadSize(f"第 {i} 行应有 {i - 1} 个元素，收到 {len(row)} 个")
        for x in row:
            data.append(field.parse(x) if isinstance(x, str) else field.raw(x))
    return SLTM(n, field, data)


def zero_matrix(n, field=RATIONAL):
    """0_n"""
    return SLTM(n, field, [field.canonical(0)] * triangle_size(n))


def b_matrix(n, l, field=RATIONAL):
    """B_{n,l}: 位置 (n,1)..(n,l) 为 1，其余为零"""
    if not 1 <= l < n:
        raise BadIndex(f"B_(n,l) 需要 1 <= l < n，收到 n={n}, l={l}")
    one = field.canonical(1)
    return zero_matrix(n, field).with_entries({(n, j): one for j in range(1, l + 1)})


def delta_raw(U, alpha, i, j, k):
    f = U.field
    return f.add(f.mul(alpha, U.raw(k, i)), f.mul(U.raw(k, j), U.raw(j, i)))


def delta(U, alpha, i, j, k):
    """
    Δ^(α)_{i,j,k}(U) = α·u_{ki} + u_{kj}·u_{ji}
    :param alpha: Scalar 或 int / Fraction
    """
    if not (i < j < k):
        raise IndexOrder(f"Δ 要求 i < j < k，收到 ({i},{j},{k})")
    if i < 1 or k > U.n:
        raise BadIndex(f"下标 ({i},{j},{k}) 超出 1..{U.n}")
    return Scalar(U.field, delta_raw(U, U.field.raw(alpha), i, j, k))


def restrict(T, k):
    """T|_k: 保留前 k 行 k 列"""
    if not 1 <= k < T.n:
        raise BadIndex(f"限制需要 1 <= k < n，收到 k={k}, n={T.n}")
    return SLTM(k, T.field, T.entries[:triangle_size(k)])


def embed(T, field):
    """把矩阵的元素换到另一个域 (例如把有理数例子嵌入 F_7)"""
    return SLTM(T.n, field, [field.canonical(x) for x in T.entries])


# --- 枚举 ---

def count_sltm(n, field):
    return field.order ** triangle_size(n) if field.is_finite else None


def enumerate_sltm(n, field):
    """按规范字典序生成 TM_n(F_q) 中的全部矩阵 (迭代器)"""
    elements = list(field.raw_elements())
    return (SLTM(n, field, data)
            for data in itertools.product(elements, repeat=triangle_size(n)))


def serial_index(T):
    """矩阵在字典序中的序号 (以 q 为基的数字，第一个元素为最高位)"""
    q = T.field.order
    if q is None:
        raise InfiniteField("有理数域上的矩阵没有序号")
    idx = 0
    for x in T.entries:
        idx = idx * q + x
    return idx


def from_serial(n, field, idx):
    q = field.order
    if q is None:
        raise InfiniteField("有理数域上的矩阵没有序号")
    size = triangle_size(n)
    data = [0] * size
    for pos in range(size - 1, -1, -1):
        idx, data[pos] = divmod(idx, q)
    return SLTM(n, field, data)


# --- 文本 / JSON ---

def serialize_sltm(T):
    """
    标准文本格式:
        n=<n>; field=<q<p>|rational>
        第 2..n 行各占一行，元素以空格分隔
    """
    lines = [f"n={T.n}; field={T.field.name}"]
    for i in range(2, T.n + 1):
        lines.append(" ".join(T.field.format(x) for x in T.row(i)))
    return "\n".join(lines)


def _parse_row(row_text, i, field, line, base_col):
    tokens = [(m.group(0), m.start()) for m in re.finditer(r"\S+", row_text)]
    if len(tokens) != i - 1:
        raise ParseError(f"第 {i} 行应有 {i - 1} 个元素，实际 {len(tokens)} 个", line, base_col + 1)
    return [field.parse(tok, line, base_col + start + 1) for tok, start in tokens]


def parse_sltm(text, field=None):
    """
    解析矩阵文本，支持三种写法:
      1. 标准多行格式 (见 serialize_sltm)
      2. 单行紧凑格式: "n=3;q3;rows:1|2 0" 或 "n=2; field=q5; rows: 1"
      3. JSON: {"n": 3, "field": "q3", "rows": [[1], [2, 0]]}
    :param field: 调用方期望的域；与文本声明不一致时抛出 FieldMismatch
    """
    stripped = text.strip()
    if not stripped:
        raise ParseError("矩阵文本为空")
    if stripped.startswith('{'):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as e:
            raise ParseError(f"JSON 格式错误: {e.msg}", e.lineno, e.colno)
        return from_json(data, field)

    lines = text.splitlines()
    # 跳过开头空行
    first = 0
    while not lines[first].strip():
        first += 1
    header = lines[first]
    header_line = first + 1

    n = None
    declared = None
    inline_rows = None
    offset = 0
    for part in header.split(';'):
        col = offset + len(part) - len(part.lstrip()) + 1
        offset += len(part) + 1
        token = part.strip()
        if not token:
            continue
        if token.lower().startswith('rows'):
            body = token[4:].lstrip()
            if not body.startswith(':'):
                raise ParseError("rows 段缺少 ':'", header_line, col)
            inline_rows = (body[1:], col + len(token) - len(body) + 1)
            continue
        m = _HEADER_N.match(token)
        if m:
            n = int(m.group(1))
            continue
        desc = token.split('=', 1)[1].strip() if token.lower().startswith('field') else token
        try:
            declared = make_field(desc)
        except Exception as e:
            raise ParseError(f"无法识别的域 '{desc}': {e}", header_line, col)

    if n is None:
        raise ParseError("缺少 n=<n> 头部", header_line, 1)
    if n < 1:
        raise ParseError(f"矩阵尺寸必须为正，收到 n={n}", header_line, 1)
    if declared is None and field is None:
        raise ParseError("未声明域 (field=...)", header_line, 1)
    if declared is not None and field is not None and declared != field:
        raise FieldMismatch(f"文本声明域 {declared.name}，但要求 {field.name}")
    fld = declared or field

    data = []
    if inline_rows is not None:
        body, base = inline_rows
        rest = [l for l in lines[first + 1:] if l.strip()]
        if rest:
            raise ParseError("紧凑格式之后不应再有行", header_line + 1, 1)
        parts = body.split('|') if body.strip() else []
        if len(parts) != n - 1:
            raise ParseError(f"n={n} 需要 {n - 1} 行，实际 {len(parts)} 行", header_line, base)
        col = base
        for idx, part in enumerate(parts):
            data.extend(_parse_row(part, idx + 2, fld, header_line, col - 1))
            col += len(part) + 1
    else:
        body = [(no + 1, l) for no, l in enumerate(lines) if no > first and l.strip()]
        if len(body) != n - 1:
            line = body[-1][0] if body else header_line
            raise ParseError(f"n={n} 需要 {n - 1} 行，实际 {len(body)} 行", line, 1)
        for idx, (line_no, row_text) in enumerate(body):
            data.extend(_parse_row(row_text, idx + 2, fld, line_no, 0))
    return SLTM(n, fld, data)


def to_json(T):
    """JSON 镜像: 素数域输出整数，有理数域输出标量文本"""
    if T.field.is_finite:
        rows = [list(T.row(i)) for i in range(2, T.n + 1)]
    else:
        rows = [[T.field.format(x) for x in T.row(i)] for i in range(2, T.n + 1)]
    return {'n': T.n, 'field': T.field.name, 'rows': rows}


def from_json(data, field=None):
    try:
        n = int(data['n'])
        declared = make_field(data['field']) if 'field' in data else None
        rows = data['rows']
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"矩阵 JSON 缺少字段或类型错误: {e}")
    if declared is not None and field is not None and declared != field:
        raise FieldMismatch(f"JSON 声明域 {declared.name}，但要求 {field.name}")
    fld = declared or field
    if fld is None:
        raise ParseError("矩阵 JSON 未声明域")
    if len(rows) != n - 1:
        raise ParseError(f"n={n} 需要 {n - 1} 行，实际 {len(rows)} 行")
    data_out = []
    for idx, row in enumerate(rows):
        i = idx + 2
        if len(row) != i - 1:
            raise ParseError(f"第 {i} 行应有 {i - 1} 个元素，实际 {len(row)} 个", idx + 1, 1)
        for col, x in enumerate(row):
            data_out.append(fld.parse(str(x), idx + 1, col + 1))
    return SLTM(n, fld, data_out)
