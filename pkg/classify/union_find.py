class UnionFind:
    """并查集，元素为矩阵序号；带路径压缩与按秩合并"""

    def __init__(self, size):
        self.parent = list(range(size))
        self.rank = [0] * size
        self.unions = 0

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x
        self.unions += 1
        return True

    def groups(self):
        """{根: 升序成员列表}"""
        out = {}
        for x in range(len(self.parent)):
            out.setdefault(self.find(x), []).append(x)
        return out

    def __len__(self):
        return sum(1 for x in range(len(self.parent)) if self.parent[x] == x)
