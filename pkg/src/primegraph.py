#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
素数图模块

素数图 π(G)：顶点为整除 |G| 的素数，r ~ s 当且仅当 G 含阶被 rs 整除的元素。
并校验交换图分支的共轭轨道与素数图分支之间的一一对应。

Author: CommGraph Team
Version: 1.0.0
"""

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from sympy import primefactors

from .commgraph import CommGraph
from .errors import NonTrivialCentreError
from .group import ConjugacyClassSet, ElementTable, Group
from .utils.union_find import UnionFind


@dataclass
class PrimeGraph:
    """素数图

    Attributes:
        primes: 整除 |G| 的素数（升序）
        edges: 无序素数对 (r, s)，r < s
    """
    primes: List[int]
    edges: List[Tuple[int, int]]

    def components(self) -> List[List[int]]:
        """连通分支，每个分支升序，按最小素数排序"""
        position = {p: i for i, p in enumerate(self.primes)}
        union_find = UnionFind(len(self.primes))
        for r, s in self.edges:
            union_find.union(position[r], position[s])
        return [[self.primes[i] for i in group] for group in union_find.groups()]

    @property
    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def to_dict(self) -> Dict:
        return {
            'primes': self.primes,
            'edges': [list(edge) for edge in self.edges],
            'components': self.components(),
        }


def build_prime_graph(g: Group, t: ElementTable, classes: ConjugacyClassSet) -> PrimeGraph:
    """由共轭类代表元的阶构造素数图

    {r, s} 是边当且仅当 rs 整除某个代表元的阶。
    """
    primes = [int(p) for p in primefactors(g.order)]
    orders = sorted({int(t.orders[c.representative]) for c in classes.classes})
    edges = []
    for i, r in enumerate(primes):
        for s in primes[i + 1:]:
            if any(o % (r * s) == 0 for o in orders):
                edges.append((r, s))
    return PrimeGraph(primes, edges)


@dataclass
class ComponentClassPartition:
    """交换图分支的共轭轨道

    Attributes:
        orbits: 每个轨道包含的分支编号（升序）
        pi_sets: 每个轨道的 π(Ψ)
    """
    orbits: List[List[int]]
    pi_sets: List[List[int]]

    def orbit_of(self) -> Dict[int, int]:
        return {c: i for i, orbit in enumerate(self.orbits) for c in orbit}


def _require_trivial_centre(cg: CommGraph) -> None:
    if not cg.has_trivial_centre:
        raise NonTrivialCentreError(cg.centre_size, "分支轨道与素数图的对应要求 Z(G) = 1")


def conjugation_orbits_of_components(g: Group, cg: CommGraph) -> ComponentClassPartition:
    """分支在生成元共轭作用下的轨道闭包

    Raises:
        NonTrivialCentreError: 中心非平凡
    """
    _require_trivial_centre(cg)
    reports = cg.partition.reports
    orbits = [[int(c) for c in orbit] for orbit in cg.component_orbits()]
    pi_sets = [list(reports[orbit[0]].prime_set) for orbit in orbits]
    return ComponentClassPartition(orbits, pi_sets)


@dataclass
class BijectionVerdict:
    """一一对应校验结果；status 为 PASS 或 FAIL"""
    status: str
    detail: str = ''
    mapping: List[Dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == 'PASS'


def verify_bijection(g: Group, cg: CommGraph, pg: PrimeGraph) -> BijectionVerdict:
    """校验 Γ/G 与 π(G) 分支之间的一一对应

    (a) 轨道数等于素数图分支数；(b) Ψ ↦ π(Ψ) 把各轨道映到互不相同的素数图分支且恰好覆盖；
    (c) Γ 连通当且仅当 π 连通。

    Raises:
        NonTrivialCentreError: 中心非平凡
    """
    _require_trivial_centre(cg)
    partition = conjugation_orbits_of_components(g, cg)
    prime_components = pg.components()
    mapping = [{'orbit': i, 'components': orbit, 'primes': pi}
               for i, (orbit, pi) in enumerate(zip(partition.orbits, partition.pi_sets))]

    reports = cg.partition.reports
    for orbit in partition.orbits:
        first = reports[orbit[0]].prime_set
        for c in orbit[1:]:
            if reports[c].prime_set != first:
                return BijectionVerdict('FAIL', f"同一轨道中分支 {orbit[0]} 与 {c} 的 π(Ψ) 不同", mapping)

    if len(partition.orbits) != len(prime_components):
        return BijectionVerdict(
            'FAIL',
            f"分支轨道数 {len(partition.orbits)} 与素数图分支数 {len(prime_components)} 不一致",
            mapping,
        )

    images = [tuple(pi) for pi in partition.pi_sets]
    targets = {tuple(component) for component in prime_components}
    for i, image in enumerate(images):
        if image not in targets:
            return BijectionVerdict('FAIL', f"轨道 {i} 的 π(Ψ) = {list(image)} 不是素数图的分支", mapping)
    if len(set(images)) != len(images):
        return BijectionVerdict('FAIL', "两个不同轨道映到同一个素数图分支", mapping)
    if set(images) != targets:
        missing = sorted(targets - set(images))
        return BijectionVerdict('FAIL', f"素数图分支 {missing} 没有对应的交换图分支", mapping)

    gamma_connected = len(cg.partition) <= 1
    if gamma_connected != pg.is_connected:
        return BijectionVerdict('FAIL', "Γ 的连通性与 π 的连通性不一致", mapping)

    return BijectionVerdict('PASS', '', mapping)
