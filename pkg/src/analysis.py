#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
结构性结论校验模块

在具体群上机械地检验交换图的各项结构性结论，每项检验返回一个 LemmaVerdict。

主要功能：
- 孤立子群与强 p-嵌入稳定子（分支在共轭作用下的稳定子）
- 对合距离界、正规子集性质、素数阶路径约化
- 正规子群外元素到共轭类的距离界（两种形式，带实例扫描）
- Frobenius 判别（核形式与补形式互相校验）
- 非可解群中不含 2 的分支直径为 1 且为交换 Hall 子群
- 直径上界：中心平凡时所有分支直径不超过 10
- 目录中特定族（PSL₂、PGL₂、PSL₃(4)、Sz）的直径界

Author: CommGraph Team
Version: 1.0.0
"""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import factorint, primefactors

from .commgraph import (
    CommGraph,
    build_commuting_graph,
    element_distances,
    raw_element_graph,
)
from .config import Config
from .errors import CommGraphError, NonTrivialCentreError
from .group import (
    ConjugacyClassSet,
    ElementTable,
    Group,
    Subgroup,
    center,
    centralizer,
    conjugacy_classes,
    enumerate_elements,
    is_abelian_subset,
    is_normal_subset,
    is_subgroup,
    normal_closure,
    require_normal,
    subgroup_closure,
)
from .logger import get_logger
from .primegraph import build_prime_graph, verify_bijection


class Status(str, Enum):
    PASS = 'PASS'
    FAIL = 'FAIL'
    NOT_APPLICABLE = 'NOT_APPLICABLE'


@dataclass
class LemmaVerdict:
    """一项检验的结论

    FAIL 必须带反例 witness；PASS 与 NOT_APPLICABLE 不带 witness（可带说明 note）。
    """
    lemma_id: str
    group_name: str
    status: Status
    witness: Optional[Dict[str, Any]] = None
    note: str = ''

    def __post_init__(self):
        self.status = Status(self.status)
        if self.status is Status.FAIL and not self.witness:
            raise ValueError(f"{self.lemma_id}: FAIL 结论必须带反例")
        if self.status is not Status.FAIL and self.witness is not None:
            raise ValueError(f"{self.lemma_id}: 只有 FAIL 结论可以带反例")

    @property
    def failed(self) -> bool:
        return self.status is Status.FAIL

    def to_dict(self) -> Dict[str, Any]:
        result = {'id': self.lemma_id, 'status': self.status.value}
        if self.witness is not None:
            result['witness'] = self.witness
        if self.note:
            result['note'] = self.note
        return result


# ---------------------------------------------------------------------------
# 分析上下文
# ---------------------------------------------------------------------------

@dataclass
class ComponentStabilizer:
    """分支 Ψ 的共轭轨道、陪集代表与稳定子 M = Stab_G(Ψ)

    transversal[i] 把 orbit[0] 共轭到 orbit[i]；transversal[0] 是恒等元。
    """
    orbit: List[int]
    transversal: List[int]
    members: np.ndarray

    @property
    def index(self) -> int:
        return len(self.orbit)

    @property
    def order(self) -> int:
        return len(self.members)


class GroupContext:
    """一个群的完整分析数据：元素表、中心、共轭类、交换图，外加目录元数据"""

    def __init__(self, group: Group, table: ElementTable, central: np.ndarray,
                 classes: ConjugacyClassSet, graph: CommGraph,
                 soluble: Optional[bool] = None, simple: Optional[bool] = None,
                 family: Optional[Tuple[str, int]] = None,
                 isolated_sylow_primes: Sequence[int] = ()):
        self.group = group
        self.table = table
        self.central = central
        self.classes = classes
        self.graph = graph
        self.soluble = soluble
        self.simple = simple
        self.family = family
        self.isolated_sylow_primes = tuple(isolated_sylow_primes)
        self._stabilizers: Dict[int, ComponentStabilizer] = {}
        self._class_distances: Dict[int, np.ndarray] = {}

    @classmethod
    def build(cls, group: Group, cap: Optional[int] = None, mode: Optional[str] = None,
              **metadata) -> 'GroupContext':
        """枚举 → 中心 → 共轭类 → 压缩交换图"""
        table = enumerate_elements(group, cap)
        central = center(group, table)
        classes = conjugacy_classes(group, table)
        graph = build_commuting_graph(group, table, central, mode)
        return cls(group, table, central, classes, graph, **metadata)

    @property
    def name(self) -> str:
        return self.group.name

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def has_trivial_centre(self) -> bool:
        return len(self.central) == 1

    @cached_property
    def central_mask(self) -> np.ndarray:
        mask = np.zeros(self.order, dtype=bool)
        mask[self.central] = True
        return mask

    @cached_property
    def normal_subgroups(self) -> List[Subgroup]:
        """各共轭类正规闭包中互不相同的真非平凡正规子群（按阶排序）"""
        seen = {}
        for c in self.classes.classes[1:]:
            closure = normal_closure(self.group, self.table, [c.representative])
            if 1 < closure.order < self.order:
                seen.setdefault(closure.members.tobytes(), closure)
        return sorted(seen.values(), key=lambda k: (k.order, k.members.tolist()))

    def class_distances(self, class_index: int) -> np.ndarray:
        """共轭类到每个元素的距离（按元素编号，带缓存）"""
        if class_index not in self._class_distances:
            members = self.classes.classes[class_index].members
            self._class_distances[class_index] = element_distances(self.graph, members)
        return self._class_distances[class_index]

    def component_stabilizer(self, c: int) -> ComponentStabilizer:
        if c not in self._stabilizers:
            self._stabilizers[c] = _component_stabilizer(self, c)
        return self._stabilizers[c]


def _conjugate_ids(t: ElementTable, ids: np.ndarray, g: int) -> np.ndarray:
    """ids 中每个元素在 g 共轭下的像 x^g"""
    g_row = t.elements[g]
    g_inverse = np.argsort(g_row)
    return t.lookup(g_row[t.elements[ids][:, g_inverse]])


def _component_stabilizer(ctx: GroupContext, c: int) -> ComponentStabilizer:
    """由分支上的共轭作用求轨道、陪集代表和稳定子（Schreier 生成元）"""
    t = ctx.table
    action = ctx.graph.component_action()
    generator_ids = t.generator_ids

    transversal = {c: 0}
    orbit = [c]
    for component in orbit:
        for j, image_map in enumerate(action):
            image = int(image_map[component])
            if image not in transversal:
                transversal[image] = t.multiply(transversal[component], generator_ids[j])
                orbit.append(image)

    inside = np.zeros(ctx.order, dtype=bool)
    inside[0] = True
    generators: List[int] = []
    members = np.array([0], dtype=np.int64)
    for component in orbit:
        for j, image_map in enumerate(action):
            image = int(image_map[component])
            schreier = t.multiply(t.multiply(transversal[component], generator_ids[j]),
                                  int(t.inverses[transversal[image]]))
            if not inside[schreier]:
                generators.append(schreier)
                members = subgroup_closure(t, generators)
                inside[members] = True

    if len(members) * len(orbit) != ctx.order:
        raise CommGraphError(
            f"{ctx.name}: 稳定子阶 {len(members)} 与轨道长 {len(orbit)} 之积不等于 |G|"
        )
    return ComponentStabilizer(orbit, [transversal[o] for o in orbit], members)


def _require_trivial_centre(ctx: GroupContext, what: str) -> None:
    if not ctx.has_trivial_centre:
        raise NonTrivialCentreError(len(ctx.central), f"{what}要求 Z(G) = 1")


def _not_applicable(lemma_id: str, ctx: GroupContext, note: str) -> LemmaVerdict:
    return LemmaVerdict(lemma_id, ctx.name, Status.NOT_APPLICABLE, note=note)


def _fail(lemma_id: str, ctx: GroupContext, **witness) -> LemmaVerdict:
    return LemmaVerdict(lemma_id, ctx.name, Status.FAIL, witness=witness)


def _pass(lemma_id: str, ctx: GroupContext, note: str = '') -> LemmaVerdict:
    return LemmaVerdict(lemma_id, ctx.name, Status.PASS, note=note)


def _label(ctx: GroupContext, x: int) -> str:
    return str(ctx.table.perm(int(x)))


# ---------------------------------------------------------------------------
# 孤立子群与强嵌入
# ---------------------------------------------------------------------------

def check_isolated(ctx: GroupContext, c: int) -> Dict[str, Any]:
    """分支 Ψ 是否形如 H#，且 H 满足孤立子群的定义

    当 Ψ ∪ {1} 是子群时直接验证：H# 中每个元素的中心化子含于 H，
    且 H 与其不同共轭的交平凡。两者必须一致。

    Returns:
        dict: is_subgroup、is_isolated_subgroup，不一致时附 witness
    """
    _require_trivial_centre(ctx, "孤立子群检验")
    t = ctx.table
    elements = ctx.graph.component_elements(c)
    if not is_subgroup(t, elements):
        return {'is_subgroup': False, 'is_isolated_subgroup': False}

    h = np.union1d(elements, [0])
    inside = np.zeros(ctx.order, dtype=bool)
    inside[h] = True

    for v in ctx.graph.partition.vertices[c]:
        rep = int(ctx.graph.vertices.representative[v])
        outside = centralizer(ctx.group, t, rep)
        outside = outside[~inside[outside]]
        if outside.size:
            return {
                'is_subgroup': True,
                'is_isolated_subgroup': False,
                'witness': {'element': _label(ctx, rep), 'centralizing': _label(ctx, outside[0])},
            }

    stabilizer = ctx.component_stabilizer(c)
    for g in stabilizer.transversal[1:]:
        conjugate = _conjugate_ids(t, h, g)
        common = conjugate[inside[conjugate]]
        if len(common) > 1:
            return {
                'is_subgroup': True,
                'is_isolated_subgroup': False,
                'witness': {'conjugator': _label(ctx, g), 'intersection_size': int(len(common))},
            }
    return {'is_subgroup': True, 'is_isolated_subgroup': True}


def is_isolated_by_definition(ctx: GroupContext, h: Sequence[int]) -> bool:
    """逐个 g ∈ G 与 h ∈ H# 直接按定义检验 H 是否孤立（只用于小群）"""
    t = ctx.table
    h = np.union1d(np.asarray(h, dtype=np.int64), [0])
    inside = np.zeros(ctx.order, dtype=bool)
    inside[h] = True
    for x in h[1:]:
        if not inside[centralizer(ctx.group, t, int(x))].all():
            return False
    for g in range(ctx.order):
        conjugate = _conjugate_ids(t, h, g)
        common = int(inside[conjugate].sum())
        if common != len(h) and common > 1:
            return False
    return True


def check_isolated_components(ctx: GroupContext) -> LemmaVerdict:
    """所有分支：Ψ = H# 当且仅当 H 孤立；小群上再与定义逐元素比对"""
    lemma_id = 'isolated_subgroup'
    if not ctx.has_trivial_centre:
        return _not_applicable(lemma_id, ctx, "中心非平凡")
    brute_force = ctx.order <= Config.ORACLE_ORDER_CAP
    for orbit in ctx.graph.component_orbits():
        c = int(orbit[0])
        result = check_isolated(ctx, c)
        if result['is_subgroup'] and not result['is_isolated_subgroup']:
            return _fail(lemma_id, ctx, component=c, **result['witness'])
        if brute_force and result['is_subgroup']:
            if not is_isolated_by_definition(ctx, ctx.graph.component_elements(c)):
                return _fail(lemma_id, ctx, component=c, reason="按定义逐元素检验不孤立")
    return _pass(lemma_id, ctx)


def check_strongly_embedded(ctx: GroupContext, c: int) -> LemmaVerdict:
    """M = Stab_G(Ψ) 对 π(Ψ) 中每个素数 p 都是强 p-嵌入的"""
    lemma_id = 'strongly_embedded'
    if not ctx.has_trivial_centre:
        return _not_applicable(lemma_id, ctx, "中心非平凡")
    stabilizer = ctx.component_stabilizer(c)
    if stabilizer.index == 1:
        return _not_applicable(lemma_id, ctx, f"分支 {c} 的稳定子是整个群")

    primes = ctx.graph.partition.reports[c].prime_set
    t = ctx.table
    inside = np.zeros(ctx.order, dtype=bool)
    inside[stabilizer.members] = True
    for p in primes:
        if stabilizer.order % p:
            return _fail(lemma_id, ctx, component=c, prime=p, stabilizer_order=stabilizer.order)
    for g in stabilizer.transversal[1:]:
        intersection = int(inside[_conjugate_ids(t, stabilizer.members, g)].sum())
        for p in primes:
            if intersection % p == 0:
                return _fail(lemma_id, ctx, component=c, prime=p, conjugator=_label(ctx, g),
                             intersection_order=intersection)
    return _pass(lemma_id, ctx)


def check_strongly_embedded_components(ctx: GroupContext) -> LemmaVerdict:
    """每个分支轨道的代表上运行强嵌入检验"""
    lemma_id = 'strongly_embedded'
    if not ctx.has_trivial_centre:
        return _not_applicable(lemma_id, ctx, "中心非平凡")
    applicable = False
    for orbit in ctx.graph.component_orbits():
        verdict = check_strongly_embedded(ctx, int(orbit[0]))
        if verdict.failed:
            return verdict
        applicable |= verdict.status is Status.PASS
    if not applicable:
        return _not_applicable(lemma_id, ctx, "所有分支都是正规子集")
    return _pass(lemma_id, ctx)


# ---------------------------------------------------------------------------
# 对合、正规分支、素数阶路径约化
# ---------------------------------------------------------------------------

def check_involution_lemma(ctx: GroupContext) -> LemmaVerdict:
    """至少两个对合共轭类时：全部对合在同一分支，对合诱导子图中两两距离 ≤ 3，
    偶数阶元素都在该分支"""
    lemma_id = 'involution_distance'
    if not ctx.has_trivial_centre:
        return _not_applicable(lemma_id, ctx, "中心非平凡")
    t, graph = ctx.table, ctx.graph
    involution_classes = [c for c in ctx.classes.classes if t.orders[c.representative] == 2]
    if len(involution_classes) < 2:
        return _not_applicable(lemma_id, ctx, f"对合共轭类只有 {len(involution_classes)} 个")

    vertex_of = graph.vertices.vertex_of
    involutions = np.concatenate([c.members for c in involution_classes])
    involution_vertices = np.unique(vertex_of[involutions])
    labels = graph.partition.labels
    involution_components = np.unique(labels[involution_vertices])
    if len(involution_components) > 1:
        a = involutions[labels[vertex_of[involutions]] == involution_components[0]][0]
        b = involutions[labels[vertex_of[involutions]] == involution_components[1]][0]
        return _fail(lemma_id, ctx, first=_label(ctx, a), second=_label(ctx, b), distance='disconnected')

    allowed = np.zeros(graph.vertex_count, dtype=bool)
    allowed[involution_vertices] = True
    for c in involution_classes:
        distances = graph.bfs_distances([vertex_of[c.representative]], allowed)[involution_vertices]
        worst = int(np.argmax(np.where(distances < 0, np.iinfo(np.int64).max, distances)))
        if distances[worst] < 0 or distances[worst] > 3:
            other = graph.vertices.representative[involution_vertices[worst]]
            return _fail(lemma_id, ctx, first=_label(ctx, c.representative), second=_label(ctx, other),
                         distance=int(distances[worst]) if distances[worst] >= 0 else 'disconnected')

    even = np.flatnonzero(graph.vertices.orders % 2 == 0)
    stray = even[labels[even] != involution_components[0]]
    if stray.size:
        return _fail(lemma_id, ctx, element=_label(ctx, graph.vertices.representative[stray[0]]),
                     reason="偶数阶元素不在对合所在分支")
    return _pass(lemma_id, ctx)


def check_normal_components(ctx: GroupContext) -> LemmaVerdict:
    """包含整个共轭类的分支是正规子集"""
    lemma_id = 'normal_components'
    if not ctx.has_trivial_centre:
        return _not_applicable(lemma_id, ctx, "中心非平凡")
    graph = ctx.graph
    vertex_of, labels = graph.vertices.vertex_of, graph.partition.labels
    checked = set()
    for c in ctx.classes.classes[1:]:
        components = np.unique(labels[vertex_of[c.members]])
        if len(components) != 1 or int(components[0]) in checked:
            continue
        component = int(components[0])
        checked.add(component)
        if not is_normal_subset(ctx.group, ctx.table, graph.component_elements(component)):
            return _fail(lemma_id, ctx, component=component, contained_class=_label(ctx, c.representative))
    if not checked:
        return _not_applicable(lemma_id, ctx, "没有分支包含整个共轭类")
    return _pass(lemma_id, ctx)


def check_prime_reduction(ctx: GroupContext) -> LemmaVerdict:
    """小群上素数阶路径约化与完整 BFS 在所有顶点对上一致"""
    lemma_id = 'prime_path_reduction'
    if not ctx.has_trivial_centre:
        return _not_applicable(lemma_id, ctx, "中心非平凡")
    if ctx.order > Config.ORACLE_ORDER_CAP:
        return _not_applicable(lemma_id, ctx, f"|G| > {Config.ORACLE_ORDER_CAP}")
    graph = ctx.graph
    _, sources = np.unique(graph.vertex_orbit_of, return_index=True)
    for s in sources:
        full = graph.bfs_distances([int(s)])
        reduced = graph.reduced_distances(int(s))
        mismatch = np.flatnonzero(full != reduced)
        if mismatch.size:
            v = int(mismatch[0])
            return _fail(lemma_id, ctx,
                         source=_label(ctx, graph.vertices.representative[s]),
                         target=_label(ctx, graph.vertices.representative[v]),
                         full=int(full[v]), reduced=int(reduced[v]))
    return _pass(lemma_id, ctx)


def check_collapse_equivalence(ctx: GroupContext) -> LemmaVerdict:
    """小群上压缩图的分支、直径与距离和原始元素图一致"""
    lemma_id = 'collapse_equivalence'
    if ctx.order > Config.ORACLE_ORDER_CAP:
        return _not_applicable(lemma_id, ctx, f"|G| > {Config.ORACLE_ORDER_CAP}")
    graph = ctx.graph
    if graph.vertex_count == 0:
        return _not_applicable(lemma_id, ctx, "群是交换群")
    raw = raw_element_graph(ctx.group, ctx.table, ctx.central)
    vertex_of = graph.vertices.vertex_of
    collapsed_labels = graph.partition.labels[vertex_of[raw.noncentral]]

    # 两个划分相同当且仅当标签对一一对应
    pairs = set(zip(raw.labels.tolist(), collapsed_labels.tolist()))
    if len(pairs) != len(set(raw.labels.tolist())) or len(pairs) != len(graph.partition):
        return _fail(lemma_id, ctx, reason="分支划分不一致")

    engine = 'reduced' if ctx.has_trivial_centre else 'full'
    diameters = graph.diameters(engine, show_progress=False)
    for raw_label, collapsed_label in pairs:
        if raw.diameters[raw_label] != diameters[collapsed_label]:
            return _fail(lemma_id, ctx, component=collapsed_label,
                         raw_diameter=raw.diameters[raw_label], collapsed_diameter=diameters[collapsed_label])

    _, first = np.unique(graph.vertex_orbit_of[vertex_of[raw.noncentral]], return_index=True)
    for i in first:
        expected = raw.distances[i]
        actual = element_distances(graph, [raw.noncentral[i]])[raw.noncentral]
        expected = np.where(np.isinf(expected), -1, expected).astype(np.int64)
        mismatch = np.flatnonzero(expected != actual)
        if mismatch.size:
            j = int(mismatch[0])
            return _fail(lemma_id, ctx, source=_label(ctx, raw.noncentral[i]),
                         target=_label(ctx, raw.noncentral[j]),
                         raw=int(expected[j]), collapsed=int(actual[j]))
    return _pass(lemma_id, ctx)


# ---------------------------------------------------------------------------
# 正规子群外的元素
# ---------------------------------------------------------------------------

def _conjugation_orbit_under(t: ElementTable, seed: int, generators: Sequence[int]) -> np.ndarray:
    """seed 在 generators 生成的子群共轭作用下的轨道"""
    found = np.zeros(len(t), dtype=bool)
    found[seed] = True
    frontier = np.array([seed], dtype=np.int64)
    while frontier.size:
        images = np.unique(np.concatenate([_conjugate_ids(t, frontier, g) for g in generators]))
        frontier = images[~found[images]]
        found[frontier] = True
    return np.flatnonzero(found)


def check_outside_lemma(ctx: GroupContext, k: Union[Subgroup, Sequence[int]], a: int) -> LemmaVerdict:
    """K 正规且 a^G = a^K 时，K 外每个非中心元素到 a^G 的距离 ≤ 4

    Raises:
        NotNormalError: k 不是正规子群
    """
    lemma_id = 'outside_class_distance'
    if not ctx.has_trivial_centre:
        return _not_applicable(lemma_id, ctx, "中心非平凡")
    k = require_normal(ctx.group, ctx.table, k)
    a = int(a)
    if ctx.central_mask[a]:
        return _not_applicable(lemma_id, ctx, "a 是中心元素")
    class_index = int(ctx.classes.class_of[a])
    a_class = ctx.classes.classes[class_index]
    a_under_k = _conjugation_orbit_under(ctx.table, a, k.generators) if k.generators else np.array([a])
    if len(a_under_k) != a_class.size:
        return _not_applicable(lemma_id, ctx, f"|a^K| = {len(a_under_k)} ≠ |a^G| = {a_class.size}")

    outside = ~k.mask(ctx.order) & ~ctx.central_mask
    if not outside.any():
        return _pass(lemma_id, ctx, "K 外没有非中心元素")
    distances = ctx.class_distances(class_index)
    bad = np.flatnonzero(outside & ((distances < 0) | (distances > 4)))
    if bad.size:
        x = int(bad[0])
        return _fail(lemma_id, ctx, x=_label(ctx, x), a=_label(ctx, a),
                     distance=int(distances[x]) if distances[x] >= 0 else 'disconnected')
    return _pass(lemma_id, ctx)


def _p_element_mask(orders: np.ndarray, p: int) -> np.ndarray:
    """阶为 p 的正整数次幂的元素"""
    reduced = orders.copy()
    divisible = reduced % p == 0
    while divisible.any():
        reduced[divisible] //= p
        divisible = reduced % p == 0
    return (orders > 1) & (reduced == 1)


def _kernel_p_power(ctx: GroupContext, k_mask: np.ndarray, x: int, p: int) -> Optional[int]:
    """⟨x⟩ ∩ K 中的 p 阶元素 x_p，要求 C_K(x_p) 循环；不存在时 None"""
    t = ctx.table
    powers = t.power_ids(x)
    candidates = powers[k_mask[powers] & (t.orders[powers] == p)]
    if not candidates.size:
        return None
    x_p = int(candidates[0])
    c_k = centralizer(ctx.group, t, x_p)
    c_k = c_k[k_mask[c_k]]
    if not (t.orders[c_k] == len(c_k)).any():
        return None
    return x_p


def _outside2_hypotheses(ctx: GroupContext, k_mask: np.ndarray, a: int, x: int, p: int,
                         g0_mask: np.ndarray, a_centralizer: np.ndarray) -> Optional[Dict[str, str]]:
    """检查一个实例的前提；满足时返回 (f, x_p) 描述，否则 None"""
    t = ctx.table
    in_g0 = a_centralizer[g0_mask[a_centralizer]]
    f_candidates = in_g0[_p_element_mask(t.orders[in_g0], p)]
    if not f_candidates.size:
        return None
    x_p = _kernel_p_power(ctx, k_mask, x, p)
    if x_p is None:
        return None
    return {'f': _label(ctx, f_candidates[0]), 'x_p': _label(ctx, x_p)}


def check_outside2_lemma(ctx: GroupContext, k: Union[Subgroup, Sequence[int]], a: int, x: int,
                         p: int) -> LemmaVerdict:
    """单个实例：前提成立时 d(x, a^G) ≤ 3

    前提：G₀ = ⟨x⟩K，C_{G₀}(a) 含非平凡 p-元素 f；⟨x⟩ ∩ K 含 p 阶元素 x_p；C_K(x_p) 循环。
    """
    lemma_id = 'outside_cyclic_centralizer'
    t = ctx.table
    if not ctx.has_trivial_centre:
        return _not_applicable(lemma_id, ctx, "中心非平凡")
    k = require_normal(ctx.group, t, k)
    k_mask = k.mask(ctx.order)
    a, x = int(a), int(x)
    if ctx.central_mask[a] or ctx.central_mask[x] or k_mask[x]:
        return _not_applicable(lemma_id, ctx, "a、x 必须非中心且 x ∉ K")
    g0_mask = np.zeros(ctx.order, dtype=bool)
    g0_mask[subgroup_closure(t, list(k.generators) + [x])] = True
    hypotheses = _outside2_hypotheses(ctx, k_mask, a, x, p, g0_mask, centralizer(ctx.group, t, a))
    if hypotheses is None:
        return _not_applicable(lemma_id, ctx, "前提不成立")
    distance = int(ctx.class_distances(int(ctx.classes.class_of[a]))[x])
    if distance < 0 or distance > 3:
        return _fail(lemma_id, ctx, x=_label(ctx, x), a=_label(ctx, a), p=p,
                     distance=distance if distance >= 0 else 'disconnected', **hypotheses)
    return _pass(lemma_id, ctx)


def scan_outside_lemma(ctx: GroupContext) -> LemmaVerdict:
    """对每个正规闭包 K 与每个类代表 a 检验 outside 距离界"""
    lemma_id = 'outside_class_distance'
    if not ctx.has_trivial_centre:
        return _not_applicable(lemma_id, ctx, "中心非平凡")
    if ctx.order > Config.HYPOTHESIS_SCAN_CAP:
        return _not_applicable(lemma_id, ctx, f"|G| > {Config.HYPOTHESIS_SCAN_CAP}，不做实例扫描")
    instances = 0
    for k in ctx.normal_subgroups:
        for c in ctx.classes.classes[1:]:
            verdict = check_outside_lemma(ctx, k, c.representative)
            if verdict.failed:
                return verdict
            instances += verdict.status is Status.PASS
    if not instances:
        return _not_applicable(lemma_id, ctx, "没有满足前提的 (K, a)")
    return _pass(lemma_id, ctx, f"{instances} 个实例")


def _class_transversal(ctx: GroupContext, class_index: int) -> Dict[int, int]:
    """共轭类中每个成员 y 对应一个 g，使代表元 r 满足 r^g = y"""
    t = ctx.table
    representative = ctx.classes.classes[class_index].representative
    transversal = {representative: 0}
    queue = [representative]
    for y in queue:
        for s, conjugation_map in zip(t.generator_ids, t.conjugation_maps):
            image = int(conjugation_map[y])
            if image not in transversal:
                transversal[image] = t.multiply(transversal[y], s)
                queue.append(image)
    return transversal


def scan_outside2_lemma(ctx: GroupContext) -> LemmaVerdict:
    """枚举 (K, a, x, p) 实例并检验 d(x, a^G) ≤ 3

    a 取类代表，x 取遍其共轭类：(a, x^g) 与 (a^{g⁻¹}, x) 共轭，距离相同，
    所以这等价于 a、x 各自取遍整个共轭类。每对 (x 的类, a 的类, p) 找到一个满足前提的实例即可。
    """
    lemma_id = 'outside_cyclic_centralizer'
    if not ctx.has_trivial_centre:
        return _not_applicable(lemma_id, ctx, "中心非平凡")
    if ctx.order > Config.HYPOTHESIS_SCAN_CAP:
        return _not_applicable(lemma_id, ctx, f"|G| > {Config.HYPOTHESIS_SCAN_CAP}，不做实例扫描")
    t = ctx.table
    representatives = [c.representative for c in ctx.classes.classes if not ctx.central_mask[c.representative]]
    centralizers = {a: centralizer(ctx.group, t, a) for a in representatives}
    p_masks: Dict[int, np.ndarray] = {}
    instances = 0
    for k in ctx.normal_subgroups:
        k_mask = k.mask(ctx.order)
        for x_rep in representatives:
            if k_mask[x_rep]:
                continue
            # x_p 与 C_K(x_p) 的循环性在 x 的共轭下不变，只需对代表元判断
            kernel_powers = {}
            for p in primefactors(k.order):
                x_p = _kernel_p_power(ctx, k_mask, x_rep, int(p))
                if x_p is not None:
                    kernel_powers[int(p)] = x_p
                    if int(p) not in p_masks:
                        p_masks[int(p)] = _p_element_mask(t.orders, int(p))
            pending = {(p, a) for p in kernel_powers for a in representatives}
            g0 = subgroup_closure(t, list(k.generators) + [x_rep])
            for x, g in _class_transversal(ctx, int(ctx.classes.class_of[x_rep])).items():
                if not pending:
                    break
                g0_mask = np.zeros(ctx.order, dtype=bool)
                g0_mask[_conjugate_ids(t, g0, g) if g else g0] = True
                for p, a in sorted(pending):
                    c_a = centralizers[a]
                    f_candidates = c_a[g0_mask[c_a] & p_masks[p][c_a]]
                    if not f_candidates.size:
                        continue
                    pending.discard((p, a))
                    instances += 1
                    distance = int(ctx.class_distances(int(ctx.classes.class_of[a]))[x])
                    if distance < 0 or distance > 3:
                        return _fail(lemma_id, ctx, k_order=k.order, x=_label(ctx, x), a=_label(ctx, a),
                                     p=p, distance=distance if distance >= 0 else 'disconnected',
                                     f=_label(ctx, f_candidates[0]),
                                     x_p=_label(ctx, t.conjugate(kernel_powers[p], g)))
    if not instances:
        return _not_applicable(lemma_id, ctx, "没有满足前提的 (K, a, x, p)")
    return _pass(lemma_id, ctx, f"{instances} 个实例")


# ---------------------------------------------------------------------------
# Frobenius 判别
# ---------------------------------------------------------------------------

def _centralizers_inside(ctx: GroupContext, ids: np.ndarray, mask: np.ndarray) -> bool:
    """ids 中每个非平凡元素的中心化子都含于 mask"""
    graph = ctx.graph
    vertex_of = graph.vertices.vertex_of
    ids = ids[ids != 0]
    if ctx.central_mask[ids].any():
        return bool(mask.all())
    for v in np.unique(vertex_of[ids]):
        rep = int(graph.vertices.representative[v])
        if not mask[centralizer(ctx.group, ctx.table, rep)].all():
            return False
    return True


def check_frobenius(ctx: GroupContext, j: Union[Subgroup, Sequence[int]],
                    complement: Optional[Sequence[int]] = None) -> bool:
    """核形式判别：对所有 j ∈ J#，C_X(j) ≤ J

    给出补 K 时同时计算补形式（对所有 k ∈ K#，C_X(k) ≤ K），两者不一致时抛出异常。

    Raises:
        NotNormalError: j 不是正规子群
        CommGraphError: 给定的补不是补，或两种判别不一致
    """
    t = ctx.table
    j = require_normal(ctx.group, t, j)
    j_mask = j.mask(ctx.order)
    predicate = _centralizers_inside(ctx, j.members, j_mask)

    if complement is not None:
        k = np.union1d(np.asarray(complement, dtype=np.int64), [0])
        if not is_subgroup(t, k) or len(k) * j.order != ctx.order or j_mask[k].sum() != 1:
            raise CommGraphError(f"{ctx.name}: 给定集合不是 J 的补")
        k_mask = np.zeros(ctx.order, dtype=bool)
        k_mask[k] = True
        complement_predicate = _centralizers_inside(ctx, k, k_mask)
        if complement_predicate != predicate:
            raise CommGraphError(f"{ctx.name}: 核形式 ({predicate}) 与补形式 ({complement_predicate}) 不一致")
    return predicate


def _cyclic_complement(ctx: GroupContext, j: Subgroup) -> Optional[np.ndarray]:
    """在类代表中找阶为 |G:J| 且与 J 交平凡的循环子群"""
    t = ctx.table
    index = ctx.order // j.order
    j_mask = j.mask(ctx.order)
    for c in ctx.classes.classes:
        y = c.representative
        if t.orders[y] != index:
            continue
        powers = t.power_ids(y)
        if j_mask[powers].sum() == 1:
            return np.sort(powers)
    return None


def scan_frobenius(ctx: GroupContext) -> LemmaVerdict:
    """对每个真非平凡正规闭包 J 计算核形式判别；存在循环补时与补形式互相校验"""
    lemma_id = 'frobenius_criterion'
    if not ctx.normal_subgroups:
        return _not_applicable(lemma_id, ctx, "没有真非平凡正规子群")
    kernels = []
    for j in ctx.normal_subgroups:
        complement = _cyclic_complement(ctx, j)
        try:
            predicate = check_frobenius(ctx, j, complement)
        except CommGraphError as e:
            return _fail(lemma_id, ctx, kernel_order=j.order, reason=str(e))
        if predicate:
            kernels.append(j.order)
            # Frobenius 补的阶整除 |J| - 1
            if complement is not None and (j.order - 1) % len(complement):
                return _fail(lemma_id, ctx, kernel_order=j.order, complement_order=len(complement),
                             reason="补的阶不整除 |J| - 1")
    note = f"Frobenius 核的阶: {kernels}" if kernels else "没有 Frobenius 核"
    return _pass(lemma_id, ctx, note)


# ---------------------------------------------------------------------------
# 分支直径
# ---------------------------------------------------------------------------

def default_engine(ctx: GroupContext, engine: Optional[str] = None) -> str:
    """平凡中心时默认用素数阶路径约化，否则只能完整 BFS"""
    engine = engine or Config.DEFAULT_ENGINE
    return engine if ctx.has_trivial_centre else 'full'


def verify_main_theorem(ctx: Union[GroupContext, Group], engine: Optional[str] = None) -> Dict[str, Any]:
    """所有分支直径不超过 10

    Raises:
        NonTrivialCentreError: 中心非平凡
        GroupTooLargeError: 超过枚举上限
    """
    if isinstance(ctx, Group):
        ctx = GroupContext.build(ctx)
    _require_trivial_centre(ctx, "直径上界检验")
    lemma_id = 'main_diameter_bound'
    diameters = ctx.graph.diameters(default_engine(ctx, engine))
    maximum = max(diameters.values(), default=0)
    if maximum > Config.DIAMETER_BOUND:
        worst = max(diameters, key=diameters.get)
        verdict = _fail(lemma_id, ctx, component=worst, diameter=maximum)
    else:
        verdict = _pass(lemma_id, ctx)
    return {'max_component_diameter': maximum, 'verdict': verdict}


def check_williams(ctx: GroupContext, engine: Optional[str] = None) -> LemmaVerdict:
    """非可解群中不含素数 2 的分支：直径 ≤ 1，Ψ ∪ {1} 是交换 Hall π(Ψ)-子群"""
    lemma_id = 'odd_component_abelian'
    if ctx.soluble is None or ctx.soluble:
        return _not_applicable(lemma_id, ctx, "群可解或未标注可解性")
    if not ctx.has_trivial_centre:
        return _not_applicable(lemma_id, ctx, "中心非平凡")
    graph, t = ctx.graph, ctx.table
    diameters = graph.diameters(default_engine(ctx, engine))
    factorization = factorint(ctx.order)
    for orbit in graph.component_orbits():
        c = int(orbit[0])
        report = graph.partition.reports[c]
        if 2 in report.prime_set:
            continue
        if diameters[c] > 1:
            return _fail(lemma_id, ctx, component=c, diameter=diameters[c])
        elements = graph.component_elements(c)
        if not is_subgroup(t, elements) or not is_abelian_subset(t, elements):
            return _fail(lemma_id, ctx, component=c, reason="Ψ ∪ {1} 不是交换子群")
        hall_order = 1
        for p in report.prime_set:
            hall_order *= p ** factorization[p]
        if len(elements) + 1 != hall_order:
            return _fail(lemma_id, ctx, component=c, subgroup_order=len(elements) + 1,
                         hall_order=hall_order)
    return _pass(lemma_id, ctx)


def check_isolated_classification(ctx: GroupContext) -> LemmaVerdict:
    """非交换单群中的真孤立子群是奇数阶循环群，或登记在目录中的 Sylow r-子群"""
    lemma_id = 'isolated_classification'
    if not ctx.simple:
        return _not_applicable(lemma_id, ctx, "群不是非交换单群或未标注")
    graph, t = ctx.graph, ctx.table
    factorization = factorint(ctx.order)
    for orbit in graph.component_orbits():
        c = int(orbit[0])
        if not check_isolated(ctx, c)['is_isolated_subgroup']:
            continue
        elements = graph.component_elements(c)
        size = len(elements) + 1
        if size % 2 and (t.orders[elements] == size).any():
            continue
        primes = graph.partition.reports[c].prime_set
        if (len(primes) == 1 and primes[0] in ctx.isolated_sylow_primes
                and size == primes[0] ** factorization[primes[0]]):
            continue
        return _fail(lemma_id, ctx, component=c, subgroup_order=size, primes=primes)
    return _pass(lemma_id, ctx)


def _components_with_prime(ctx: GroupContext, p: int) -> List[int]:
    return [r.id for r in ctx.graph.partition.reports if p in r.prime_set]


def check_family_bounds(ctx: GroupContext, engine: Optional[str] = None) -> LemmaVerdict:
    """目录族的已知直径界

    PSL₂(q)，q 奇：含 2 的分支直径 ≤ 6（5 < q ≤ 13，q = 9、13 时恰为 6）或 ≤ 5；
    PSL₂(5) 所有分支直径为 1。PSL₂(q)/PGL₂(q)：含特征 r 的分支直径为 1，
    r 为奇数时不含 2。PGL₂(q)，q 奇：含 2 的分支直径 ≤ 5。
    Sz(q)：含 2 的分支直径为 2。PSL₃(4)：含 2 的分支直径 ≤ 5。
    """
    lemma_id = 'family_diameter_bound'
    if ctx.family is None or not ctx.has_trivial_centre:
        return _not_applicable(lemma_id, ctx, "没有族信息")
    family, q = ctx.family
    diameters = ctx.graph.diameters(default_engine(ctx, engine))
    reports = ctx.graph.partition.reports
    problems = []

    def bound(components, limit, exact=None):
        for c in components:
            if diameters[c] > limit or (exact is not None and diameters[c] != exact):
                problems.append({'component': c, 'diameter': diameters[c], 'limit': limit, 'exact': exact})

    if family in ('psl2', 'pgl2'):
        r = int(primefactors(q)[0])
        bound(_components_with_prime(ctx, r), 1)
        if r % 2:
            for c in _components_with_prime(ctx, r):
                if 2 in reports[c].prime_set:
                    problems.append({'component': c, 'reason': "特征分支含偶数阶元素"})
            two = _components_with_prime(ctx, 2)
            if family == 'pgl2':
                bound(two, 5)
            elif q == 5:
                bound(range(len(reports)), 1)
            elif q in (9, 13):
                bound(two, 6, exact=6)
            elif q < 13:
                bound(two, 6)
            else:
                bound(two, 5)
    elif family == 'sz':
        bound(_components_with_prime(ctx, 2), 2, exact=2)
    elif family == 'psl3':
        bound(_components_with_prime(ctx, 2), 5)
    else:
        return _not_applicable(lemma_id, ctx, f"未知族 {family}")

    if problems:
        return _fail(lemma_id, ctx, family=f"{family}({q})", problems=problems[:5])
    return _pass(lemma_id, ctx)


# ---------------------------------------------------------------------------
# 全部检验
# ---------------------------------------------------------------------------

def check_component_bijection(ctx: GroupContext) -> LemmaVerdict:
    """分支共轭轨道与素数图分支一一对应"""
    lemma_id = 'component_bijection'
    if not ctx.has_trivial_centre:
        return _not_applicable(lemma_id, ctx, "中心非平凡")
    prime_graph = build_prime_graph(ctx.group, ctx.table, ctx.classes)
    result = verify_bijection(ctx.group, ctx.graph, prime_graph)
    if not result.passed:
        return _fail(lemma_id, ctx, reason=result.detail, mapping=result.mapping)
    return _pass(lemma_id, ctx)


def run_all_checks(ctx: GroupContext, engine: Optional[str] = None) -> List[LemmaVerdict]:
    """依次运行所有适用的检验；中心非平凡时依赖平凡中心的检验记为 NOT_APPLICABLE"""
    logger = get_logger()
    engine = default_engine(ctx, engine)
    verdicts: List[LemmaVerdict] = []

    if ctx.has_trivial_centre:
        verdicts.append(verify_main_theorem(ctx, engine)['verdict'])
    else:
        verdicts.append(_not_applicable('main_diameter_bound', ctx, "中心非平凡"))

    checks = [
        check_component_bijection,
        check_isolated_components,
        check_strongly_embedded_components,
        check_involution_lemma,
        check_normal_components,
        check_prime_reduction,
        check_collapse_equivalence,
        scan_outside_lemma,
        scan_outside2_lemma,
        scan_frobenius,
        lambda c: check_williams(c, engine),
        check_isolated_classification,
        lambda c: check_family_bounds(c, engine),
    ]
    for check in checks:
        verdict = check(ctx)
        logger.debug(f"{ctx.name}: {verdict.lemma_id} → {verdict.status.value}")
        if verdict.failed:
            logger.error(f"{ctx.name}: {verdict.lemma_id} 失败，反例 {verdict.witness}")
        verdicts.append(verdict)
    return verdicts
