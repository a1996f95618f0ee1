"""
统一异常定义
所有模块抛出的错误都继承自 NilTriError，命令行入口据此区分 "计算错误" 与 "数学否定结论"
"""


class NilTriError(Exception):
    """niltri 所有异常的基类"""


# --- 标量 / 域 ---

class CharTwo(NilTriError, ValueError):
    """特征为 2 的域不被支持"""


class NotPrime(NilTriError, ValueError):
    """域描述中的 p 不是素数"""


class FieldTooLarge(NilTriError, ValueError):
    """素数超出机器字长上限 (p >= 2^31)"""


class DivisionByZero(NilTriError, ZeroDivisionError):
    """除以零或对零求逆"""


class FieldMismatch(NilTriError, ValueError):
    """参与运算的对象不属于同一个域"""


class InfiniteField(NilTriError, ValueError):
    """需要有限域的操作收到了有理数域"""


# --- 下标 / 尺寸 ---

class IndexOrder(NilTriError, ValueError):
    """下标不满足 i < j < k"""


class BadIndex(NilTriError, IndexError):
    """下标越界或不满足前置条件"""


class BadSize(NilTriError, ValueError):
    """矩阵尺寸不被该操作支持"""


class DimensionMismatch(NilTriError, ValueError):
    """Γ 的形状与源/目标矩阵尺寸不一致"""


class ParseError(NilTriError, ValueError):
    """文本解析失败，附带行号与列号 (从 1 开始)"""

    def __init__(self, message, line=1, column=1):
        self.line = line
        self.column = column
        super().__init__(f"第 {line} 行第 {column} 列: {message}")


# --- 代数 / 同态 ---

class AlgebraMismatch(NilTriError, ValueError):
    """元素属于不同的代数 A(T)"""


class BadDegree(NilTriError, ValueError):
    """次数必须为偶数"""


class UnverifiedMorphism(NilTriError, ValueError):
    """态射未通过同态验证，不能作用于元素"""


class Singular(NilTriError, ValueError):
    """矩阵不可逆"""


class SourceTargetMismatch(NilTriError, ValueError):
    """复合时 f 的目标与 g 的源不一致"""


class NotDetermined(NilTriError, ValueError):
    """由 Γ 反推目标矩阵时某个位置不受约束"""

    def __init__(self, message, position=None):
        self.position = position
        super().__init__(message)


# --- 初等三角变换 / 分类 ---

class ZeroScalar(NilTriError, ValueError):
    """P 变换的缩放因子为零"""


class RestrictionViolated(NilTriError, ValueError):
    """初等三角变换的限制条件不满足

    condition: 失败的条件编号 (或名称)
    index: 出错的行/列下标
    step_index: 在变换序列中的位置 (从 0 开始)
    """

    def __init__(self, message, condition=None, index=None, step_index=None):
        self.condition = condition
        self.index = index
        self.step_index = step_index
        super().__init__(message)


class NotInZeroClass(NilTriError, ValueError):
    """矩阵不在零类中"""


class BudgetExceeded(NilTriError, RuntimeError):
    """搜索节点预算耗尽，partial 中保存不完整的结果"""

    def __init__(self, message, partial=None):
        self.partial = partial
        super().__init__(message)
