#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
并查集模块

定长整数元素 {0..n-1} 上的并查集（按秩合并 + 路径压缩），
用于交换图分支、素数图分支和共轭类的划分。

Author: CommGraph Team
Version: 1.0.0
"""

from typing import Iterable, List

import numpy as np


class UnionFind:
    """{0..n-1} 上的不相交集合

    Examples
    --------
    >>> uf = UnionFind(6)
    >>> uf.union(1, 2)
    >>> uf.union(2, 3)
    >>> uf.union(4, 5)
    >>> uf.find(3) == uf.find(1)
    True
    >>> uf.labels().tolist()
    [0, 1, 1, 1, 2, 2]
    """

    def __init__(self, size: int):
        self.parent = np.arange(size, dtype=np.int64)
        self.rank = np.zeros(size, dtype=np.int8)

    def __len__(self) -> int:
        return len(self.parent)

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        # 路径压缩
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return int(root)

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        if self.rank[rx] < self.rank[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        if self.rank[rx] == self.rank[ry]:
            self.rank[rx] += 1

    def union_all(self, x: int, others: Iterable[int]) -> None:
        for y in others:
            self.union(x, int(y))

    def labels(self) -> np.ndarray:
        """每个元素所在集合的编号；编号按集合最小元素的先后顺序从 0 开始"""
        roots = np.fromiter((self.find(x) for x in range(len(self))), dtype=np.int64, count=len(self))
        _, first_index, inverse = np.unique(roots, return_index=True, return_inverse=True)
        # np.unique 按根排序，这里改为按首次出现位置排序
        order = np.argsort(first_index, kind='stable')
        rank_of = np.empty_like(order)
        rank_of[order] = np.arange(len(order))
        return rank_of[inverse.ravel()]

    def groups(self) -> List[np.ndarray]:
        """按 labels() 的编号顺序返回各集合的成员（升序）"""
        labels = self.labels()
        if len(labels) == 0:
            return []
        order = np.argsort(labels, kind='stable')
        boundaries = np.flatnonzero(np.diff(labels[order])) + 1
        return np.split(order, boundaries)
