#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
置换运算模块

有限集合 {0, ..., n-1} 上的置换及其循环记号编码。

主要功能：
- 右作用约定下的乘法：(p·q)(i) = q(p(i))
- 逆、阶、交换性判断、共轭 x^g = g⁻¹xg
- 循环记号的解析与格式化（文本中的点从 1 开始编号）

Author: CommGraph Team
Version: 1.0.0
"""

import re
from math import lcm
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from .errors import DegreeMismatchError, PermutationParseError


class Permutation:
    """不可变置换，以像序列存储，可哈希"""

    __slots__ = ('_images',)

    def __init__(self, images: Sequence[int]):
        """
        Args:
            images: 长度为 n 的像序列，必须是 {0..n-1} 的双射

        Raises:
            ValueError: 像序列不是双射
        """
        images = tuple(int(i) for i in images)
        n = len(images)
        if n == 0:
            raise ValueError("置换次数必须为正整数")
        if sorted(images) != list(range(n)):
            raise ValueError(f"像序列不是 {{0..{n - 1}}} 上的双射: {images}")
        self._images = images

    @classmethod
    def identity(cls, degree: int) -> 'Permutation':
        """次数为 degree 的恒等置换"""
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> 'Permutation':
        """由 0 起始编号的循环列表构造置换（循环不得相交）"""
        images = list(range(degree))
        for cycle in cycles:
            for i, point in enumerate(cycle):
                images[point] = cycle[(i + 1) % len(cycle)]
        return cls(images)

    @classmethod
    def from_array(cls, array: np.ndarray) -> 'Permutation':
        """由 numpy 行向量构造（不再次校验双射）"""
        perm = cls.__new__(cls)
        perm._images = tuple(int(i) for i in array)
        return perm

    @property
    def degree(self) -> int:
        return len(self._images)

    @property
    def images(self) -> Tuple[int, ...]:
        return self._images

    def to_array(self, dtype=np.intp) -> np.ndarray:
        return np.asarray(self._images, dtype=dtype)

    def __call__(self, point: int) -> int:
        return self._images[point]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._images == other._images

    def __hash__(self) -> int:
        return hash(self._images)

    def __mul__(self, other: 'Permutation') -> 'Permutation':
        return compose(self, other)

    def __pow__(self, exponent: int) -> 'Permutation':
        return power(self, exponent)

    def __invert__(self) -> 'Permutation':
        return inverse(self)

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r}, degree={self.degree})"

    def __str__(self) -> str:
        return format_cycles(self)

    def is_identity(self) -> bool:
        return all(i == image for i, image in enumerate(self._images))

    def cycles(self, include_fixed: bool = False) -> List[Tuple[int, ...]]:
        """循环分解；每个循环以其最小点开头，按最小点排序"""
        seen = [False] * self.degree
        result = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            point = self._images[start]
            while point != start:
                cycle.append(point)
                seen[point] = True
                point = self._images[point]
            if len(cycle) > 1 or include_fixed:
                result.append(tuple(cycle))
        return result

    def cycle_type(self) -> Tuple[int, ...]:
        """循环型（含不动点的循环长度，降序）"""
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True))


def _check_degrees(p: Permutation, q: Permutation) -> None:
    if p.degree != q.degree:
        raise DegreeMismatchError(p.degree, q.degree)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """乘积 p·q，先作用 p 再作用 q：i ↦ q(p(i))

    Raises:
        DegreeMismatchError: 次数不一致
    """
    _check_degrees(p, q)
    q_images = q.images
    perm = Permutation.__new__(Permutation)
    perm._images = tuple(q_images[i] for i in p.images)
    return perm


def inverse(p: Permutation) -> Permutation:
    images = [0] * p.degree
    for i, image in enumerate(p.images):
        images[image] = i
    perm = Permutation.__new__(Permutation)
    perm._images = tuple(images)
    return perm


def power(p: Permutation, exponent: int) -> Permutation:
    """p 的 exponent 次幂，负指数取逆"""
    base = p if exponent >= 0 else inverse(p)
    result = Permutation.identity(p.degree)
    exponent = abs(exponent)
    while exponent:
        if exponent & 1:
            result = compose(result, base)
        base = compose(base, base)
        exponent >>= 1
    return result


def element_order(p: Permutation) -> int:
    """元素阶 = 各循环长度的最小公倍数"""
    return lcm(1, *(len(c) for c in p.cycles()))


def commutes(p: Permutation, q: Permutation) -> bool:
    """判断 p·q == q·p

    Raises:
        DegreeMismatchError: 次数不一致
    """
    _check_degrees(p, q)
    p_images, q_images = p.images, q.images
    return all(q_images[p_images[i]] == p_images[q_images[i]] for i in range(p.degree))


def conjugate(x: Permutation, g: Permutation) -> Permutation:
    """x^g = g⁻¹·x·g"""
    return compose(compose(inverse(g), x), g)


# 词法单元：左括号、右括号、逗号、非负整数；其余非空白字符均为非法
_TOKEN_PATTERN = re.compile(r'\s*(?:(?P<open>\()|(?P<close>\))|(?P<comma>,)|(?P<int>\d+)|(?P<bad>\S))')


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    position = 0
    while position < len(text):
        match = _TOKEN_PATTERN.match(text, position)
        if match is None:
            # 只剩空白
            break
        kind = match.lastgroup
        start = match.start(kind)
        if kind == 'bad':
            raise PermutationParseError(f"非法字符 {match.group(kind)!r}", text, start)
        tokens.append((kind, match.group(kind), start))
        position = match.end()
    return tokens


def parse_cycles(text: str, degree: int) -> Permutation:
    """解析循环记号，例如 "(1,2,3)(4,5)"；"()" 表示恒等置换

    文本中的点从 1 开始编号，内部转换为从 0 开始。

    Args:
        text: 循环记号文本，词法单元之间允许空白
        degree: 置换次数

    Returns:
        Permutation: 解析得到的置换

    Raises:
        PermutationParseError: 点越界、点重复或括号不匹配，附带出错位置
    """
    tokens = _tokenize(text)
    cycles: List[List[int]] = []
    seen = set()
    index = 0

    if [kind for kind, _, _ in tokens] == ['open', 'close']:
        return Permutation.identity(degree)

    while index < len(tokens):
        kind, value, position = tokens[index]
        if kind != 'open':
            raise PermutationParseError(f"期望 '('，得到 {value!r}", text, position)
        index += 1
        cycle = []
        expect_int = True
        while True:
            if index >= len(tokens):
                raise PermutationParseError("括号未闭合", text, len(text))
            kind, value, position = tokens[index]
            index += 1
            if expect_int:
                if kind != 'int':
                    raise PermutationParseError(f"期望点编号，得到 {value!r}", text, position)
                point = int(value)
                if not 1 <= point <= degree:
                    raise PermutationParseError(f"点 {point} 超出范围 1..{degree}", text, position)
                if point in seen:
                    raise PermutationParseError(f"点 {point} 重复出现", text, position)
                seen.add(point)
                cycle.append(point - 1)
                expect_int = False
            elif kind == 'comma':
                expect_int = True
            elif kind == 'close':
                break
            else:
                raise PermutationParseError(f"期望 ',' 或 ')'，得到 {value!r}", text, position)
        cycles.append(cycle)

    return Permutation.from_cycles(cycles, degree)


def format_cycles(p: Permutation) -> str:
    """格式化为从 1 开始编号的循环记号；恒等置换输出 "()" """
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + ",".join(str(point + 1) for point in cycle) + ")" for cycle in cycles)
