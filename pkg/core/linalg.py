"""
精确线性代数 (原始值上的高斯消元)
矩阵用行列表表示，元素为 FieldSpec 的原始值
"""
from .errors import Singular, DimensionMismatch


def _clone_mat(mat):
    return [list(row) for row in mat]


def identity(field, n):
    one, zero = field.canonical(1), field.canonical(0)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zeros(field, m, n):
    zero = field.canonical(0)
    return [[zero] * n for _ in range(m)]


def transpose(mat):
    if not mat:
        return []
    return [[mat[i][j] for i in range(len(mat))] for j in range(len(mat[0]))]


def matmul(field, a, b):
    """a (m×k) · b (k×n)"""
    if a and len(a[0]) != len(b):
        raise DimensionMismatch(f"矩阵乘法维数不匹配: {len(a)}×{len(a[0])} 与 {len(b)}×{len(b[0]) if b else 0}")
    n = len(b[0]) if b else 0
    zero = field.canonical(0)
    res = []
    for row in a:
        out = []
        for j in range(n):
            acc = zero
            for k, x in enumerate(row):
                if x != 0:
                    y = b[k][j]
                    if y != 0:
                        acc = field.add(acc, field.mul(x, y))
            out.append(acc)
        res.append(out)
    return res


def _eliminate(field, mat):
    """
    前向消元，返回 (行阶梯矩阵, 主元列列表, 行交换次数)
    """
    mat = _clone_mat(mat)
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    pivots = []
    swaps = 0
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        pivot = r
        while pivot < rows and field.is_zero(mat[pivot][c]):
            pivot += 1
        if pivot == rows:
            continue
        if pivot != r:
            mat[r], mat[pivot] = mat[pivot], mat[r]
            swaps += 1
        factor = field.inv(mat[r][c])
        for row in range(r + 1, rows):
            if field.is_zero(mat[row][c]):
                continue
            f = field.mul(mat[row][c], factor)
            mat[row] = [field.sub(x, field.mul(f, y)) for x, y in zip(mat[row], mat[r])]
        pivots.append(c)
        r += 1
    return mat, pivots, swaps


def rank(field, mat):
    if not mat:
        return 0
    _, pivots, _ = _eliminate(field, mat)
    return len(pivots)


def det(field, mat):
    """方阵行列式"""
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise DimensionMismatch("行列式只对方阵定义")
    if n == 0:
        return field.canonical(1)
    ech, pivots, swaps = _eliminate(field, mat)
    if len(pivots) < n:
        return field.canonical(0)
    result = field.canonical(1)
    for i in range(n):
        result = field.mul(result, ech[i][i])
    return field.neg(result) if swaps % 2 else result


def inverse(field, mat):
    """Gauss-Jordan 求逆；不可逆时抛出 Singular"""
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise DimensionMismatch("只有方阵可以求逆")
    aug = [list(row) + ident for row, ident in zip(mat, identity(field, n))]
    for k in range(n):
        pivot = k
        while pivot < n and field.is_zero(aug[pivot][k]):
            pivot += 1
        if pivot == n:
            raise Singular("矩阵不可逆 (行列式为零)")
        aug[k], aug[pivot] = aug[pivot], aug[k]
        factor = field.inv(aug[k][k])
        aug[k] = [field.mul(x, factor) for x in aug[k]]
        for row in range(n):
            if row == k or field.is_zero(aug[row][k]):
                continue
            f = aug[row][k]
            aug[row] = [field.sub(x, field.mul(f, y)) for x, y in zip(aug[row], aug[k])]
    return [row[n:] for row in aug]
