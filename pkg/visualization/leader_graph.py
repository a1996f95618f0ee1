"""
主元图的文本导出 (供 Graphviz 等工具使用)
"""


def to_edge_list(graph):
    """每条弧一行 "k -> j"，按主元顺序"""
    return "\n".join(f"{k} -> {j}" for k, j in graph.arrows)


def to_dot(graph, name="leaders"):
    """
    Graphviz DOT 格式
    :param graph: LeaderGraph
    :return: str
    """
    lines = [f"digraph {name} {{", "    rankdir=BT;"]
    for v in range(1, graph.n + 1):
        shape = "doublecircle" if v in graph.minimal_vertices else "circle"
        lines.append(f"    {v} [shape={shape}];")
    for idx, chain in enumerate(graph.chains):
        lines.append(f"    subgraph cluster_{idx} {{")
        lines.append(f'        label="{chain.kind}";')
        lines.append("        " + " ".join(f"{v};" for v in chain.vertices))
        lines.append("    }")
    for k, j in graph.arrows:
        lines.append(f"    {k} -> {j};")
    lines.append("}")
    return "\n".join(lines)
