import os

from core.sltm import parse_sltm

SUPPORTED_EXTENSIONS = ['.txt', '.json', '.sltm', '.gamma']


class DataLoader:
    """读取矩阵 / Γ 文件，或直接接受内联文本"""

    def load_text(self, file_path):
        """
        读取文本文件
        :param file_path: 文件路径
        :return: 文件内容
        """
        if not os.path.exists(file_path):
            raise FileNotFoundError(f"文件未找到: {file_path}")

        ext = os.path.splitext(file_path)[1].lower()
        if ext not in SUPPORTED_EXTENSIONS:
            raise ValueError(f"不支持的文件格式: {ext}")

        with open(file_path, encoding='utf-8') as fh:
            text = fh.read()
        if not text.strip():
            raise ValueError("文件为空")
        return text

    def read_source(self, source):
        """
        已存在的路径按文件读取，否则视为内联文本
        :return: 文本内容
        """
        if os.path.isfile(source):
            return self.load_text(source)
        if os.path.splitext(source)[1].lower() in SUPPORTED_EXTENSIONS and '\n' not in source:
            raise FileNotFoundError(f"文件未找到: {source}")
        return source

    def load_matrix(self, source, field=None):
        """
        :param source: 文件路径或矩阵文本 (多行 / 紧凑 / JSON)
        :return: SLTM
        """
        return parse_sltm(self.read_source(source), field)

