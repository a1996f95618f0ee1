"""
报告输出: JSON 为机器接口，文本格式由同一份字典派生
"""
import json


def to_json_text(data):
    return json.dumps(data, ensure_ascii=False, indent=2)


def _format_value(value, indent):
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            return " {}"
        lines = [""]
        for k, v in value.items():
            lines.append(f"{pad}{k}:{_format_value(v, indent + 1)}")
        return "\n".join(lines)
    if isinstance(value, list):
        if not value:
            return " []"
        if all(not isinstance(v, (dict, list)) for v in value):
            return " " + ", ".join(str(v) for v in value)
        if all(isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v) for v in value):
            return "\n" + "\n".join(f"{pad}" + " ".join(str(x) for x in v) for v in value)
        lines = [""]
        for v in value:
            lines.append(f"{pad}-{_format_value(v, indent + 1)}")
        return "\n".join(lines)
    return f" {value}"


def to_text(title, data, tables=None, logs=None):
    """
    文本报告
    :param title: 标题
    :param data: 报告字典
    :param tables: {小标题: DataFrame}，按 to_string 输出
    :param logs: 操作日志行
    """
    report = f"=== {title} ===\n\n"
    for key, value in data.items():
        if key == 'logs':
            continue
        report += f"{key}:{_format_value(value, 1)}\n"
    for name, frame in (tables or {}).items():
        report += f"\n--- {name} ---\n"
        report += frame.to_string(index=False) if len(frame) else "(空)"
        report += "\n"
    if logs:
        report += "\n--- 执行日志 ---\n" + "\n".join(logs) + "\n"
    return report


def render(title, data, fmt='json', tables=None):
    """
    :param fmt: 'json' 或 'text'
    :return: str
    """
    if fmt == 'json':
        return to_json_text(data)
    return to_text(title, data, tables, data.get('logs'))

