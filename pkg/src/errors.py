#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
异常定义模块

定义交换图分析流程中使用的异常层次结构。
所有异常均继承自 CommGraphError，命令行入口统一捕获后返回退出码 1。

Author: CommGraph Team
Version: 1.0.0
"""

from typing import Iterable, Optional


class CommGraphError(Exception):
    """项目异常基类"""


class DegreeMismatchError(CommGraphError, ValueError):
    """两个置换的次数（作用点数）不一致"""

    def __init__(self, left: int, right: int):
        self.left = left
        self.right = right
        super().__init__(f"置换次数不一致: {left} != {right}")


class PermutationParseError(CommGraphError, ValueError):
    """循环记号解析失败

    Attributes:
        position: 出错字符在输入文本中的位置（从 0 开始）
    """

    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} (位置 {position}: {text!r})")


class GroupTooLargeError(CommGraphError):
    """群阶超过元素枚举上限"""

    def __init__(self, order: int, cap: int):
        self.order = order
        self.cap = cap
        super().__init__(f"群太大: |G| = {order} 超过枚举上限 {cap}")


class NonTrivialCentreError(CommGraphError):
    """需要平凡中心的计算遇到了非平凡中心"""

    def __init__(self, centre_size: int, requirement: str = "该计算要求 Z(G) = 1"):
        self.centre_size = centre_size
        super().__init__(f"{requirement}，但 |Z(G)| = {centre_size}")


class NotNormalError(CommGraphError):
    """给定子群不是正规子群"""


class NotAMemberError(CommGraphError):
    """置换不属于该群"""


class CentralElementError(CommGraphError):
    """中心元素不是交换图的顶点"""

    def __init__(self, label: str):
        self.label = label
        super().__init__(f"{label} 是中心元素；交换图的顶点只包含 G 的非中心元素")


class UnsupportedGroupError(CommGraphError):
    """目录中不支持的群或参数"""

    def __init__(self, spec: str, supported: Optional[Iterable[str]] = None):
        self.spec = spec
        self.supported = list(supported or [])
        message = f"不支持的群: {spec}"
        if self.supported:
            message += f"；支持的范围: {', '.join(self.supported)}"
        super().__init__(message)


class CatalogOrderError(CommGraphError):
    """目录群构造后阶或中心与登记值不符"""

    def __init__(self, name: str, expected: int, actual: int, what: str = "阶"):
        self.name = name
        self.expected = expected
        self.actual = actual
        super().__init__(f"{name} 的{what}应为 {expected}，实际为 {actual}")
