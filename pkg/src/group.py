#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
置换群模块

有限置换群的阶、成员判定、元素枚举、中心、中心化子与共轭类。

主要功能：
- 确定性 Schreier–Sims 稳定子链（基点取当前生成元移动的第一个点）
- 广度优先闭包枚举全部元素，得到以整数编号的元素表
- 基于元素表的向量化中心化子扫描与共轭类轨道闭包
- 子群、正规子集判定以及子群/正规闭包

元素表中第 i 行是编号为 i 的元素的像序列，编号 0 是恒等元。
所有批量乘法都按右作用约定：行 x 与固定元素 s 的积 x·s 为 s[x]。

Author: CommGraph Team
Version: 1.0.0
"""

from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .config import Config
from .errors import (
    CommGraphError,
    DegreeMismatchError,
    GroupTooLargeError,
    NotAMemberError,
    NotNormalError,
    PermutationParseError,
)
from .logger import get_logger
from .perm import Permutation, parse_cycles


# ---------------------------------------------------------------------------
# 稳定子链
# ---------------------------------------------------------------------------

@dataclass
class ChainLevel:
    """稳定子链的一层

    Attributes:
        base_point: 本层基点
        generators: 本层强生成元（均固定此前所有基点）
        transversal: 轨道点 → 把基点映到该点的陪集代表
        inverses: 轨道点 → 对应陪集代表的逆
    """
    base_point: int
    generators: List[np.ndarray] = field(default_factory=list)
    transversal: Dict[int, np.ndarray] = field(default_factory=dict)
    inverses: Dict[int, np.ndarray] = field(default_factory=dict)

    def rebuild_orbit(self, identity: np.ndarray) -> None:
        """用当前生成元重新计算基点轨道与陪集代表"""
        self.transversal = {self.base_point: identity}
        queue = [self.base_point]
        for point in queue:
            u = self.transversal[point]
            for s in self.generators:
                image = int(s[point])
                if image not in self.transversal:
                    self.transversal[image] = s[u]
                    queue.append(image)
        self.inverses = {point: np.argsort(u) for point, u in self.transversal.items()}

    @property
    def orbit_size(self) -> int:
        return len(self.transversal)


class StabilizerChain:
    """基、强生成集与各层陪集代表"""

    def __init__(self, degree: int, levels: List[ChainLevel]):
        self.degree = degree
        self.levels = levels

    @property
    def base(self) -> List[int]:
        return [level.base_point for level in self.levels]

    @property
    def order(self) -> int:
        order = 1
        for level in self.levels:
            order *= level.orbit_size
        return order

    def sift(self, g: np.ndarray, start: int = 0) -> Tuple[np.ndarray, int]:
        """从第 start 层开始筛选

        Returns:
            (残差, 停止的层号)；全部层通过时层号等于链长
        """
        return _strip(self.levels, g, start)

    def contains(self, g: Union[Permutation, np.ndarray]) -> bool:
        array = g.to_array() if isinstance(g, Permutation) else np.asarray(g, dtype=np.intp)
        if len(array) != self.degree:
            return False
        residue, level = self.sift(array)
        return level == len(self.levels) and _is_identity(residue)


def _is_identity(g: np.ndarray) -> bool:
    return bool(np.all(g == np.arange(len(g))))


def _first_moved_point(g: np.ndarray) -> int:
    return int(np.flatnonzero(g != np.arange(len(g)))[0])


def _strip(levels: List[ChainLevel], g: np.ndarray, start: int) -> Tuple[np.ndarray, int]:
    for i in range(start, len(levels)):
        level = levels[i]
        beta = int(g[level.base_point])
        if beta not in level.transversal:
            return g, i
        g = level.inverses[beta][g]
    return g, len(levels)


def build_chain(generators: Sequence[Permutation], degree: Optional[int] = None) -> StabilizerChain:
    """确定性 Schreier–Sims 算法

    基点按需追加：取尚未被强生成元固定的第一个移动点。
    每层用全部 Schreier 生成元做筛选检验，残差非平凡时加入下层。

    Args:
        generators: 生成元列表（允许只有恒等元）
        degree: 生成元为空时必须给出次数

    Returns:
        StabilizerChain: 稳定子链
    """
    if degree is None:
        degree = generators[0].degree
    identity = np.arange(degree)
    gens = [g.to_array() for g in generators if not g.is_identity()]

    base: List[int] = []
    for g in gens:
        if all(g[b] == b for b in base):
            base.append(_first_moved_point(g))

    levels = []
    for i, point in enumerate(base):
        level = ChainLevel(point, [g for g in gens if all(g[b] == b for b in base[:i])])
        level.rebuild_orbit(identity)
        levels.append(level)

    i = len(levels) - 1
    while i >= 0:
        level = levels[i]
        extended = False
        for beta, u in list(level.transversal.items()):
            for s in level.generators:
                image = int(s[beta])
                # u_beta · s · u_image⁻¹ 固定当前基点
                schreier = level.inverses[image][s[u]]
                if _is_identity(schreier):
                    continue
                residue, j = _strip(levels, schreier, i + 1)
                if _is_identity(residue):
                    continue
                if j == len(levels):
                    levels.append(ChainLevel(_first_moved_point(residue)))
                for target in range(i + 1, j + 1):
                    levels[target].generators.append(residue)
                    levels[target].rebuild_orbit(identity)
                i = j
                extended = True
                break
            if extended:
                break
        if not extended:
            i -= 1

    return StabilizerChain(degree, levels)


# ---------------------------------------------------------------------------
# 群
# ---------------------------------------------------------------------------

class Group:
    """有限置换群：生成元 + 惰性构造的稳定子链"""

    def __init__(self, generators: Sequence[Permutation], name: Optional[str] = None,
                 degree: Optional[int] = None):
        """
        Args:
            generators: 生成元；为空时视为平凡群，须给出 degree
            name: 群的显示名称
            degree: 次数

        Raises:
            DegreeMismatchError: 生成元次数不一致
        """
        generators = list(generators)
        if degree is None:
            if not generators:
                raise ValueError("空生成元列表必须给出次数")
            degree = generators[0].degree
        for g in generators:
            if g.degree != degree:
                raise DegreeMismatchError(degree, g.degree)
        if not generators:
            generators = [Permutation.identity(degree)]

        self.degree = degree
        self.generators = generators
        self.name = name or f"<{len(generators)} 个生成元, 次数 {degree}>"

    def __repr__(self) -> str:
        return f"Group({self.name!r}, degree={self.degree})"

    @cached_property
    def chain(self) -> StabilizerChain:
        chain = build_chain(self.generators, self.degree)
        get_logger().debug(f"{self.name}: 稳定子链基 {chain.base}, 阶 {chain.order}")
        return chain

    @property
    def order(self) -> int:
        return self.chain.order

    def contains(self, p: Permutation) -> bool:
        return p.degree == self.degree and self.chain.contains(p)

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)


def load_group_file(path: Union[str, Path], name: Optional[str] = None) -> Group:
    """读取生成元文件

    文件格式：第一行 `degree n`；之后每个非空、非注释行是一个循环记号生成元；
    `#` 开头的行是注释。

    Raises:
        CommGraphError: 文件格式错误
        PermutationParseError: 生成元解析失败（消息中带行号）
    """
    path = Path(path)
    degree = None
    generators = []
    with open(path, 'r', encoding='utf-8') as f:
        for line_number, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith('#'):
                continue
            if degree is None:
                parts = line.split()
                if len(parts) != 2 or parts[0] != 'degree' or not parts[1].isdigit() or int(parts[1]) < 1:
                    raise CommGraphError(f"{path}:{line_number}: 第一行必须是 'degree n'")
                degree = int(parts[1])
                continue
            try:
                generators.append(parse_cycles(line, degree))
            except PermutationParseError as e:
                raise PermutationParseError(f"{path}:{line_number}: {e}", line, e.position) from e
    if degree is None:
        raise CommGraphError(f"{path}: 缺少 'degree n' 行")
    return Group(generators, name=name or path.stem, degree=degree)


# ---------------------------------------------------------------------------
# 元素表
# ---------------------------------------------------------------------------

class ElementTable:
    """全部元素的编号表

    Attributes:
        group: 所属群
        elements: 形状 (|G|, n) 的像矩阵，第 i 行是编号 i 的元素
        index: 像序列字节串 → 编号
    """

    def __init__(self, group: Group, elements: np.ndarray, index: Dict[bytes, int]):
        self.group = group
        self.elements = elements
        self.index = index
        self.dtype = elements.dtype
        self._row_bytes = elements.shape[1] * elements.dtype.itemsize

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def degree(self) -> int:
        return self.elements.shape[1]

    def perm(self, element_id: int) -> Permutation:
        return Permutation.from_array(self.elements[element_id])

    def id_of(self, p: Permutation) -> int:
        """置换的编号

        Raises:
            NotAMemberError: 置换不在群中
        """
        if p.degree != self.degree:
            raise NotAMemberError(f"{p} 的次数 {p.degree} 与群的次数 {self.degree} 不一致")
        key = np.asarray(p.images, dtype=self.dtype).tobytes()
        try:
            return self.index[key]
        except KeyError:
            raise NotAMemberError(f"{p} 不属于 {self.group.name}") from None

    def lookup(self, rows: np.ndarray) -> np.ndarray:
        """批量查找像矩阵各行的编号"""
        rows = np.ascontiguousarray(rows, dtype=self.dtype)
        block = rows.tobytes()
        width = self._row_bytes
        index = self.index
        return np.fromiter(
            (index[block[i * width:(i + 1) * width]] for i in range(len(rows))),
            dtype=np.int64,
            count=len(rows),
        )

    def multiply(self, a: int, b: int) -> int:
        """编号形式的乘积 a·b"""
        return int(self.lookup(self.elements[b][self.elements[a]][None, :])[0])

    def right_multiply(self, ids: np.ndarray, b: int) -> np.ndarray:
        """批量右乘：ids 中每个 x 对应 x·b 的编号"""
        return self.lookup(self.elements[b][self.elements[ids]])

    def conjugate(self, x: int, g: int) -> int:
        """x^g = g⁻¹·x·g 的编号"""
        x_row, g_row = self.elements[x], self.elements[g]
        return int(self.lookup(g_row[x_row[np.argsort(g_row)]][None, :])[0])

    @cached_property
    def inverses(self) -> np.ndarray:
        return self.lookup(np.argsort(self.elements, axis=1))

    @cached_property
    def generator_ids(self) -> List[int]:
        return [self.id_of(g) for g in self.group.generators]

    @cached_property
    def conjugation_maps(self) -> List[np.ndarray]:
        """每个生成元 s 对应的映射 编号 x ↦ 编号 x^s"""
        maps = []
        for s in self.group.generators:
            s_row = s.to_array()
            s_inv = np.argsort(s_row)
            maps.append(self.lookup(s_row[self.elements[:, s_inv]]))
        return maps

    @cached_property
    def orders(self) -> np.ndarray:
        """各元素的阶"""
        table = self.elements.astype(np.intp)
        identity = np.arange(self.degree)
        orders = np.zeros(len(table), dtype=np.int64)
        pending = np.arange(len(table))
        current = table.copy()
        k = 1
        while pending.size:
            done = np.all(current == identity, axis=1)
            orders[pending[done]] = k
            pending = pending[~done]
            current = np.take_along_axis(table[pending], current[~done], axis=1)
            k += 1
        return orders

    @cached_property
    def cyclic_keys(self) -> np.ndarray:
        """每个元素 x 对应 ⟨x⟩ 全部生成元中的最小编号

        两个元素的键相同当且仅当它们生成同一个循环子群。
        """
        table = self.elements.astype(np.intp)
        orders = self.orders
        keys = np.arange(len(table), dtype=np.int64)
        pending = np.flatnonzero(orders > 2)
        current = table[pending]
        k = 1
        while pending.size:
            k += 1
            current = np.take_along_axis(table[pending], current, axis=1)
            ids = self.lookup(current)
            o = orders[pending]
            generates = np.gcd(k, o) == 1
            keys[pending[generates]] = np.minimum(keys[pending[generates]], ids[generates])
            keep = k + 1 < o
            pending, current = pending[keep], current[keep]
        return keys

    def power_ids(self, x: int) -> np.ndarray:
        """x^0, x^1, ..., x^(o-1) 的编号"""
        order = int(self.orders[x])
        row = self.elements[x]
        powers = np.empty((order, self.degree), dtype=self.dtype)
        powers[0] = np.arange(self.degree)
        for k in range(1, order):
            powers[k] = row[powers[k - 1]]
        return self.lookup(powers)


def enumerate_elements(g: Group, cap: Optional[int] = None) -> ElementTable:
    """广度优先闭包枚举全部元素

    Args:
        g: 置换群
        cap: 元素个数上限，缺省取 Config.ELEMENT_CAP

    Returns:
        ElementTable: 元素表，编号 0 为恒等元

    Raises:
        GroupTooLargeError: |G| 超过上限
    """
    logger = get_logger()
    cap = Config.ELEMENT_CAP if cap is None else cap
    order = g.order
    if order > cap:
        raise GroupTooLargeError(order, cap)

    dtype = np.uint8 if g.degree <= 256 else np.uint16
    identity = np.arange(g.degree, dtype=dtype)
    generators = []
    seen_generators = set()
    for s in g.generators:
        row = s.to_array(dtype)
        if not s.is_identity() and row.tobytes() not in seen_generators:
            seen_generators.add(row.tobytes())
            generators.append(row)

    width = g.degree * identity.itemsize
    index = {identity.tobytes(): 0}
    chunks = [identity[None, :]]
    frontier = identity[None, :]
    while len(frontier):
        fresh = []
        for s in generators:
            products = s[frontier]
            block = products.tobytes()
            for r in range(len(products)):
                key = block[r * width:(r + 1) * width]
                if key not in index:
                    index[key] = len(index)
                    fresh.append(products[r])
        frontier = np.array(fresh, dtype=dtype).reshape(-1, g.degree)
        if len(frontier):
            chunks.append(frontier)

    elements = np.vstack(chunks)
    if len(elements) != order:
        raise CommGraphError(f"{g.name}: 枚举得到 {len(elements)} 个元素，与稳定子链的阶 {order} 不一致")
    logger.debug(f"{g.name}: 枚举 {len(elements)} 个元素")
    return ElementTable(g, elements, index)


# ---------------------------------------------------------------------------
# 中心、中心化子、共轭类
# ---------------------------------------------------------------------------

def _commuting_mask(t: ElementTable, row: np.ndarray) -> np.ndarray:
    table = t.elements
    return np.all(table[:, row] == row[table], axis=1)


def center(g: Group, t: ElementTable) -> np.ndarray:
    """与全部生成元交换的元素编号（升序，含 0）"""
    mask = np.ones(len(t), dtype=bool)
    for s in g.generators:
        mask &= _commuting_mask(t, s.to_array(t.dtype))
    return np.flatnonzero(mask)


def centralizer(g: Group, t: ElementTable, x: int) -> np.ndarray:
    """C_G(x)：与 x 交换的元素编号（升序）"""
    return np.flatnonzero(_commuting_mask(t, t.elements[x]))


@dataclass
class ConjugacyClass:
    representative: int
    members: np.ndarray

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass
class ConjugacyClassSet:
    """共轭类划分；classes 按代表元编号升序，代表元是类中最小编号"""
    classes: List[ConjugacyClass]
    class_of: np.ndarray

    def __len__(self) -> int:
        return len(self.classes)

    def sizes(self) -> List[int]:
        return [c.size for c in self.classes]

    def class_containing(self, x: int) -> ConjugacyClass:
        return self.classes[int(self.class_of[x])]


def conjugation_orbit(maps: Sequence[np.ndarray], seeds: Iterable[int], size: int) -> np.ndarray:
    """编号集合在共轭映射下的轨道闭包（升序）"""
    visited = np.zeros(size, dtype=bool)
    frontier = np.unique(np.fromiter(seeds, dtype=np.int64))
    visited[frontier] = True
    while frontier.size:
        images = np.unique(np.concatenate([m[frontier] for m in maps]))
        frontier = images[~visited[images]]
        visited[frontier] = True
    return np.flatnonzero(visited)


def conjugacy_classes(g: Group, t: ElementTable) -> ConjugacyClassSet:
    """共轭类：对每个未访问元素在生成元共轭作用下做轨道闭包"""
    maps = t.conjugation_maps
    class_of = np.full(len(t), -1, dtype=np.int64)
    classes = []
    for x in range(len(t)):
        if class_of[x] >= 0:
            continue
        members = conjugation_orbit(maps, [x], len(t))
        class_of[members] = len(classes)
        classes.append(ConjugacyClass(x, members))
    get_logger().debug(f"{g.name}: {len(classes)} 个共轭类")
    return ConjugacyClassSet(classes, class_of)


# ---------------------------------------------------------------------------
# 子群与正规性
# ---------------------------------------------------------------------------

def subgroup_closure(t: ElementTable, generator_ids: Iterable[int],
                     allowed: Optional[np.ndarray] = None) -> Optional[np.ndarray]:
    """生成元编号生成的子群（升序编号）

    Args:
        t: 元素表
        generator_ids: 生成元编号
        allowed: 可选的布尔掩码；闭包一旦产生掩码外的元素立即返回 None

    Returns:
        子群元素编号；越出 allowed 时为 None
    """
    generators = sorted(set(int(s) for s in generator_ids) - {0})
    members = np.zeros(len(t), dtype=bool)
    members[0] = True
    frontier = np.array([0], dtype=np.int64)
    while frontier.size:
        found = []
        for s in generators:
            products = t.right_multiply(frontier, s)
            fresh = np.unique(products[~members[products]])
            if allowed is not None and fresh.size and not allowed[fresh].all():
                return None
            members[fresh] = True
            found.append(fresh)
        frontier = np.concatenate(found) if found else np.empty(0, dtype=np.int64)
    return np.flatnonzero(members)


def is_subgroup(t: ElementTable, s: Iterable[int]) -> bool:
    """s ∪ {1} 是否对乘法与取逆封闭

    依次把尚未生成的元素加入生成元并做闭包，越出 s ∪ {1} 即返回 False。
    """
    ids = np.union1d(np.fromiter((int(x) for x in s), dtype=np.int64), [0])
    if len(t) % len(ids):
        return False
    allowed = np.zeros(len(t), dtype=bool)
    allowed[ids] = True

    generated = np.zeros(len(t), dtype=bool)
    generated[0] = True
    generators: List[int] = []
    for x in ids:
        if generated[x]:
            continue
        generators.append(int(x))
        closure = subgroup_closure(t, generators, allowed)
        if closure is None:
            return False
        generated[closure] = True
    return True


def is_normal_subset(g: Group, t: ElementTable, s: Iterable[int]) -> bool:
    """s 是否在全部生成元的共轭作用下封闭"""
    ids = np.unique(np.fromiter((int(x) for x in s), dtype=np.int64))
    members = np.zeros(len(t), dtype=bool)
    members[ids] = True
    return all(members[m[ids]].all() for m in t.conjugation_maps)


def is_abelian_subset(t: ElementTable, s: Iterable[int]) -> bool:
    """s 中元素两两交换"""
    ids = np.fromiter((int(x) for x in s), dtype=np.int64)
    rows = t.elements[ids]
    for row in rows:
        if not np.all(rows[:, row] == row[rows]):
            return False
    return True


@dataclass
class Subgroup:
    """以编号集合表示的子群，附带一组生成元编号"""
    members: np.ndarray
    generators: List[int]

    @property
    def order(self) -> int:
        return len(self.members)

    def mask(self, size: int) -> np.ndarray:
        result = np.zeros(size, dtype=bool)
        result[self.members] = True
        return result


def normal_closure(g: Group, t: ElementTable, ids: Iterable[int]) -> Subgroup:
    """包含 ids 的最小正规子群 ⟨ids^G⟩"""
    generators = sorted(set(int(x) for x in ids) - {0})
    members = subgroup_closure(t, generators)
    while True:
        inside = np.zeros(len(t), dtype=bool)
        inside[members] = True
        outside = [int(m[members][~inside[m[members]]][0]) for m in t.conjugation_maps
                   if not inside[m[members]].all()]
        if not outside:
            return Subgroup(members, generators)
        generators.extend(x for x in outside if x not in generators)
        members = subgroup_closure(t, generators)


def require_normal(g: Group, t: ElementTable, k: Union[Subgroup, Iterable[int]]) -> Subgroup:
    """校验 k 是正规子群并返回 Subgroup 形式

    Raises:
        NotNormalError: k 不是子群或不正规
    """
    if not isinstance(k, Subgroup):
        members = np.union1d(np.fromiter((int(x) for x in k), dtype=np.int64), [0])
        k = Subgroup(members, [int(x) for x in members if x != 0])
    if not is_subgroup(t, k.members):
        raise NotNormalError(f"给定集合（{k.order} 个元素）不是 {g.name} 的子群")
    if not is_normal_subset(g, t, k.members):
        raise NotNormalError(f"给定子群（阶 {k.order}）在 {g.name} 中不正规")
    return k
