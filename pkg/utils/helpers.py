import os


def chunk_evenly(items, parts):
    """
    把序列按原顺序切成至多 parts 段连续块 (用于把候选分给多个进程)
    :return: 非空子列表的列表
    """
    items = list(items)
    parts = max(1, min(parts, len(items)))
    size, extra = divmod(len(items), parts)
    chunks = []
    start = 0
    for k in range(parts):
        end = start + size + (1 if k < extra else 0)
        if end > start:
            chunks.append(items[start:end])
        start = end
    return chunks


def write_output(text, path=None):
    """
    输出报告: path 为空时写到标准输出，否则写入文件 (自动创建目录)
    """
    if not path:
        print(text)
        return
    folder = os.path.dirname(os.path.abspath(path))
    os.makedirs(folder, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as fh:
        fh.write(text)
        if not text.endswith('\n'):
            fh.write('\n')
