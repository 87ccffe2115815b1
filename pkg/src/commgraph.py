#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
交换图模块

交换图 Γ(G)：顶点为 G 的非中心元素，两个不同顶点相邻当且仅当它们交换。

主要功能：
- 循环压缩：生成同一循环子群的元素合并为一个顶点（中心化子相同）
- 邻接：顶点数不超过阈值时用位图矩阵，否则按需扫描中心化子
- 并查集求连通分支，BFS 求距离、离心率与分支直径
- 素数阶路径约化：只允许素数阶元素作为路径内点的快速 BFS
- 小群上不做压缩的原始元素图（scipy 稀疏图），用于交叉校验

Author: CommGraph Team
Version: 1.0.0
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Set

import numpy as np
import psutil
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path
from sympy import isprime, primefactors
from tqdm import tqdm

from .config import Config
from .errors import CentralElementError, NonTrivialCentreError
from .group import ElementTable, Group, center, centralizer, conjugation_orbit
from .logger import get_logger
from .utils.union_find import UnionFind


ENGINES = ('full', 'reduced')


@dataclass
class CollapsedVertexSet:
    """循环压缩后的顶点集

    Attributes:
        vertex_of: 元素编号 → 顶点编号；中心元素为 -1
        members: 每个顶点包含的元素编号（升序）
        representative: 每个顶点的最小成员编号
        orders: 每个顶点上元素的阶
    """
    vertex_of: np.ndarray
    members: List[np.ndarray]
    representative: np.ndarray
    orders: np.ndarray

    def __len__(self) -> int:
        return len(self.members)

    @property
    def sizes(self) -> np.ndarray:
        return np.array([len(m) for m in self.members], dtype=np.int64)


def collapse(t: ElementTable, central: Sequence[int]) -> CollapsedVertexSet:
    """按生成的循环子群划分非中心元素

    Args:
        t: 元素表
        central: 中心 Z(G) 的元素编号

    Returns:
        CollapsedVertexSet: 顶点按代表元编号升序排列
    """
    is_central = np.zeros(len(t), dtype=bool)
    is_central[np.asarray(central, dtype=np.int64)] = True
    noncentral = np.flatnonzero(~is_central)

    keys = t.cyclic_keys[noncentral]
    representatives, inverse = np.unique(keys, return_inverse=True)
    inverse = inverse.ravel()

    vertex_of = np.full(len(t), -1, dtype=np.int64)
    vertex_of[noncentral] = inverse

    order = np.argsort(inverse, kind='stable')
    boundaries = np.flatnonzero(np.diff(inverse[order])) + 1
    members = np.split(noncentral[order], boundaries) if len(order) else []

    return CollapsedVertexSet(
        vertex_of=vertex_of,
        members=members,
        representative=representatives.astype(np.int64),
        orders=t.orders[representatives],
    )


class BitsetAdjacency:
    """按行打包的位图邻接矩阵"""

    mode = 'bitset'

    def __init__(self, count: int):
        self.count = count
        self.bits = np.zeros((count, (count + 7) // 8), dtype=np.uint8)

    def set_row(self, v: int, neighbors: np.ndarray) -> None:
        row = np.zeros(self.count, dtype=bool)
        row[neighbors] = True
        self.bits[v] = np.packbits(row)

    def neighbors(self, v: int) -> np.ndarray:
        return np.flatnonzero(np.unpackbits(self.bits[v], count=self.count))

    def expand(self, frontier: np.ndarray) -> np.ndarray:
        """frontier 中顶点的全部邻居（布尔掩码）"""
        if len(frontier) == 0:
            return np.zeros(self.count, dtype=bool)
        merged = np.bitwise_or.reduce(self.bits[frontier], axis=0)
        return np.unpackbits(merged, count=self.count).astype(bool)


class OracleAdjacency:
    """按需邻接：扫描代表元的中心化子，结果带 LRU 缓存"""

    mode = 'oracle'

    def __init__(self, count: int, neighbor_function, cache_size: int):
        self.count = count
        self.neighbors = lru_cache(maxsize=cache_size)(neighbor_function)

    def set_row(self, v: int, neighbors: np.ndarray) -> None:
        pass

    def expand(self, frontier: np.ndarray) -> np.ndarray:
        mask = np.zeros(self.count, dtype=bool)
        for v in frontier:
            mask[self.neighbors(int(v))] = True
        return mask


@dataclass
class ComponentReport:
    """交换图一个连通分支的摘要

    diameter 是原始元素图中的直径；is_subgroup_with_identity、stabilizer_index
    和 orbit_id 由后续分析阶段填写。
    """
    id: int
    element_count: int
    vertex_count: int
    prime_set: List[int]
    diameter: Optional[int] = None
    is_subgroup_with_identity: Optional[bool] = None
    is_isolated_subgroup: Optional[bool] = None
    stabilizer_index: Optional[int] = None
    orbit_id: Optional[int] = None


@dataclass
class ComponentPartition:
    """连通分支划分

    Attributes:
        labels: 顶点 → 分支编号（按分支中最小顶点排序）
        vertices: 每个分支的顶点（升序）
        reports: 每个分支的摘要骨架
    """
    labels: np.ndarray
    vertices: List[np.ndarray]
    reports: List[ComponentReport] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.vertices)


class CommGraph:
    """压缩交换图；构造完成后不再修改（距离缓存除外）"""

    def __init__(self, group: Group, table: ElementTable, central: np.ndarray,
                 vertices: CollapsedVertexSet, adjacency, partition: ComponentPartition,
                 vertex_maps: List[np.ndarray], vertex_orbit_of: np.ndarray):
        self.group = group
        self.table = table
        self.central = central
        self.vertices = vertices
        self.adjacency = adjacency
        self.partition = partition
        self.vertex_maps = vertex_maps
        self.vertex_orbit_of = vertex_orbit_of
        self.prime_mask = np.array([isprime(int(o)) for o in vertices.orders], dtype=bool)
        self._diameters: Dict[str, Dict[int, int]] = {}

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def centre_size(self) -> int:
        return len(self.central)

    @property
    def has_trivial_centre(self) -> bool:
        return len(self.central) == 1

    def neighbors(self, v: int) -> np.ndarray:
        return self.adjacency.neighbors(int(v))

    def component_of_element(self, x: int) -> int:
        v = int(self.vertices.vertex_of[x])
        if v < 0:
            raise CentralElementError(f"元素 {self.table.perm(x)}")
        return int(self.partition.labels[v])

    def component_elements(self, c: int) -> np.ndarray:
        """分支 c 的全部元素编号（升序）"""
        members = self.vertices.members
        return np.sort(np.concatenate([members[v] for v in self.partition.vertices[c]]))

    def component_action(self) -> List[np.ndarray]:
        """每个生成元在分支集合上诱导的置换（分支编号 → 分支编号）"""
        labels = self.partition.labels
        firsts = np.array([verts[0] for verts in self.partition.vertices], dtype=np.int64)
        return [labels[m[firsts]] for m in self.vertex_maps]

    def component_orbits(self) -> List[np.ndarray]:
        """分支在共轭作用下的轨道，按最小分支编号排序"""
        action = self.component_action()
        seen = np.zeros(len(self.partition), dtype=bool)
        orbits = []
        for c in range(len(self.partition)):
            if seen[c]:
                continue
            orbit = conjugation_orbit(action, [c], len(self.partition))
            seen[orbit] = True
            orbits.append(orbit)
        return orbits

    # ------------------------------------------------------------------
    # BFS
    # ------------------------------------------------------------------

    def bfs_distances(self, sources: Sequence[int], allowed: Optional[np.ndarray] = None) -> np.ndarray:
        """多源 BFS；返回每个顶点到源集合的距离，不可达为 -1

        Args:
            sources: 源顶点
            allowed: 可选布尔掩码，限制可以被访问的顶点
        """
        distances = np.full(self.vertex_count, -1, dtype=np.int64)
        frontier = np.unique(np.asarray(sources, dtype=np.int64))
        distances[frontier] = 0
        depth = 0
        while frontier.size:
            depth += 1
            reach = self.adjacency.expand(frontier) & (distances < 0)
            if allowed is not None:
                reach &= allowed
            frontier = np.flatnonzero(reach)
            distances[frontier] = depth
        return distances

    def reduced_distances(self, source: int) -> np.ndarray:
        """素数阶路径约化下从 source 出发的距离

        路径的内点只取素数阶顶点；在平凡中心的群中结果与完整 BFS 相同。

        Raises:
            NonTrivialCentreError: 中心非平凡
        """
        if not self.has_trivial_centre:
            raise NonTrivialCentreError(self.centre_size, "素数阶路径约化要求 Z(G) = 1")
        prime = self.prime_mask
        source = int(source)

        distances = np.full(self.vertex_count, -1, dtype=np.int64)
        distances[source] = 0
        direct = self.neighbors(source)
        distances[direct] = 1

        # 内点全为素数阶、终点为素数阶顶点的最短路长度
        prime_distances = np.full(self.vertex_count, -1, dtype=np.int64)
        if prime[source]:
            prime_distances[source] = 0
        frontier = direct[prime[direct]]
        prime_distances[frontier] = 1
        levels = [frontier]
        if prime[source]:
            levels[0] = np.concatenate([[source], frontier])
        depth = 1
        while frontier.size:
            depth += 1
            reach = self.adjacency.expand(frontier) & prime & (prime_distances < 0)
            frontier = np.flatnonzero(reach)
            prime_distances[frontier] = depth
            if frontier.size:
                levels.append(frontier)

        unset = (distances < 0) & (prime_distances >= 0)
        distances[unset] = prime_distances[unset]

        # 非素数阶顶点：1 + 与之相邻的素数阶顶点的最小距离
        nonprime = ~prime
        for depth, level in enumerate(levels, start=1):
            reach = self.adjacency.expand(level) & nonprime & (distances < 0)
            distances[reach] = depth + 1
        return distances

    def distances_from(self, v: int, engine: str = 'full') -> np.ndarray:
        if engine == 'reduced':
            return self.reduced_distances(v)
        return self.bfs_distances([v])

    def diameters(self, engine: str = 'full', show_progress: Optional[bool] = None) -> Dict[int, int]:
        """全部分支的原始元素图直径（按分支编号）

        同一共轭轨道中的分支只计算一次；每个分支只从每个顶点共轭轨道取一个源点。
        """
        if engine in self._diameters:
            return self._diameters[engine]

        if show_progress is None:
            show_progress = Config.PROGRESS_CONFIG['show_progress_bar']
        partition = self.partition
        sizes = self.vertices.sizes
        result: Dict[int, int] = {}

        jobs = []
        for orbit in self.component_orbits():
            c = int(orbit[0])
            jobs.append((orbit, c, _orbit_sources(self.vertex_orbit_of, partition.vertices[c])))
        total_sources = sum(len(sources) for _, _, sources in jobs)
        progress = tqdm(
            total=total_sources,
            desc=f"{self.group.name} 直径",
            unit="源点",
            disable=not show_progress or total_sources < Config.PROGRESS_CONFIG['min_sources_for_bar'],
            leave=False,
        )
        with progress:
            for orbit, c, sources in jobs:
                verts = partition.vertices[c]
                element_count = int(sizes[verts].sum())
                if element_count == 1:
                    diameter = 0
                elif len(verts) == 1:
                    diameter = 1
                    progress.update(len(sources))
                else:
                    eccentricity = 0
                    for s in sources:
                        eccentricity = max(eccentricity, int(self.distances_from(s, engine)[verts].max()))
                        progress.update(1)
                    diameter = max(eccentricity, 1)
                for member in orbit:
                    result[int(member)] = diameter

        self._diameters[engine] = result
        return result


def _orbit_sources(vertex_orbit_of: np.ndarray, verts: np.ndarray) -> np.ndarray:
    """每个与 verts 相交的顶点轨道取一个（最小的）顶点"""
    _, first = np.unique(vertex_orbit_of[verts], return_index=True)
    return verts[np.sort(first)]


def _choose_adjacency_mode(count: int) -> str:
    if count > Config.BITSET_MAX_VERTICES:
        return 'oracle'
    needed = count * ((count + 7) // 8)
    budget = psutil.virtual_memory().available * Config.PERFORMANCE_CONFIG['bitset_memory_fraction']
    return 'bitset' if needed <= budget else 'oracle'


def build_commuting_graph(g: Group, t: ElementTable, central: Optional[np.ndarray] = None,
                          mode: Optional[str] = None) -> CommGraph:
    """构造压缩交换图并求连通分支

    Args:
        g: 置换群
        t: 元素表
        central: 中心元素编号，缺省时计算
        mode: 'bitset' 或 'oracle'，缺省按顶点数与可用内存选择

    Returns:
        CommGraph: 压缩交换图
    """
    logger = get_logger()
    if central is None:
        central = center(g, t)
    central = np.asarray(central, dtype=np.int64)
    vertices = collapse(t, central)
    count = len(vertices)
    mode = mode or _choose_adjacency_mode(count)
    logger.debug(f"{g.name}: {len(t) - len(central)} 个非中心元素压缩为 {count} 个顶点，邻接模式 {mode}")

    vertex_of = vertices.vertex_of
    vertex_maps = [vertex_of[m[vertices.representative]] for m in t.conjugation_maps]
    vertex_orbit_of = np.full(count, -1, dtype=np.int64)
    orbit_representatives = []
    for v in range(count):
        if vertex_orbit_of[v] < 0:
            vertex_orbit_of[conjugation_orbit(vertex_maps, [v], count)] = len(orbit_representatives)
            orbit_representatives.append(v)

    def scan_neighbors(v: int) -> np.ndarray:
        adjacent = vertex_of[centralizer(g, t, int(vertices.representative[v]))]
        adjacent = np.unique(adjacent[adjacent >= 0])
        return adjacent[adjacent != v]

    if mode == 'bitset':
        adjacency = BitsetAdjacency(count)
    else:
        adjacency = OracleAdjacency(count, scan_neighbors, Config.PERFORMANCE_CONFIG['neighbor_cache_size'])

    # 轨道代表扫描中心化子，其余顶点用共轭映射搬运邻居集合
    union_find = UnionFind(count)
    done = np.zeros(count, dtype=bool)
    for root in orbit_representatives:
        queue = [(root, scan_neighbors(root))]
        done[root] = True
        while queue:
            v, neighbors = queue.pop()
            adjacency.set_row(v, neighbors)
            union_find.union_all(v, neighbors[neighbors > v])
            for m in vertex_maps:
                image = int(m[v])
                if not done[image]:
                    done[image] = True
                    queue.append((image, np.sort(m[neighbors])))

    graph = CommGraph(g, t, central, vertices, adjacency, ComponentPartition(np.empty(0), []),
                      vertex_maps, vertex_orbit_of)
    graph.partition = _build_partition(graph, union_find)
    logger.debug(f"{g.name}: {len(graph.partition)} 个连通分支")
    return graph


def _build_partition(graph: CommGraph, union_find: UnionFind) -> ComponentPartition:
    labels = union_find.labels()
    groups = union_find.groups()
    vertices = graph.vertices
    reports = []
    for c, verts in enumerate(groups):
        orders = np.unique(vertices.orders[verts])
        primes: Set[int] = set()
        for o in orders:
            primes.update(primefactors(int(o)))
        reports.append(ComponentReport(
            id=c,
            element_count=int(vertices.sizes[verts].sum()),
            vertex_count=len(verts),
            prime_set=sorted(primes),
        ))
    return ComponentPartition(labels, groups, reports)


def components(cg: CommGraph) -> ComponentPartition:
    """连通分支划分与摘要骨架"""
    return cg.partition


def bfs_eccentricity(cg: CommGraph, v: int) -> Dict[int, int]:
    """从顶点 v 出发的 BFS 距离（只含可达顶点）"""
    distances = cg.bfs_distances([v])
    reachable = np.flatnonzero(distances >= 0)
    return {int(u): int(distances[u]) for u in reachable}


def component_diameter(cg: CommGraph, c: int, engine: str = 'full') -> int:
    """分支 c 在原始元素图中的直径

    单元素分支为 0；多于一个元素时取 max(压缩图直径, 1)。
    """
    return cg.diameters(engine, show_progress=False)[int(c)]


def _vertex_pair(cg: CommGraph, x: int, y: int):
    vertex_of = cg.vertices.vertex_of
    vx, vy = int(vertex_of[x]), int(vertex_of[y])
    if vx < 0:
        raise CentralElementError(str(cg.table.perm(x)))
    if vy < 0:
        raise CentralElementError(str(cg.table.perm(y)))
    return vx, vy


def distance(cg: CommGraph, x: int, y: int, engine: str = 'full') -> Optional[int]:
    """元素 x, y 在交换图中的距离；不连通时返回 None

    Raises:
        CentralElementError: x 或 y 是中心元素
    """
    vx, vy = _vertex_pair(cg, x, y)
    if x == y:
        return 0
    if vx == vy:
        return 1
    labels = cg.partition.labels
    if labels[vx] != labels[vy]:
        return None
    return int(cg.distances_from(vx, engine)[vy])


def prime_reduced_distance(cg: CommGraph, x: int, y: int) -> Optional[int]:
    """只经过素数阶内点的距离；在平凡中心的群中等于 distance

    Raises:
        NonTrivialCentreError: 中心非平凡
        CentralElementError: x 或 y 是中心元素
    """
    if not cg.has_trivial_centre:
        raise NonTrivialCentreError(cg.centre_size, "素数阶路径约化要求 Z(G) = 1")
    vx, vy = _vertex_pair(cg, x, y)
    if x == y:
        return 0
    if vx == vy:
        return 1
    value = int(cg.reduced_distances(vx)[vy])
    return None if value < 0 else value


def element_distances(cg: CommGraph, sources: Sequence[int]) -> np.ndarray:
    """元素集合到每个元素的距离（按元素编号，中心元素与不可达为 -1）

    同一顶点上的其他元素距离为 1。
    """
    vertex_of = cg.vertices.vertex_of
    sources = np.asarray(sources, dtype=np.int64)
    if cg.vertex_count == 0:
        return np.full(len(vertex_of), -1, dtype=np.int64)
    vertex_distances = cg.bfs_distances(vertex_of[sources])
    result = np.where(vertex_of >= 0, vertex_distances[vertex_of], -1)
    result[vertex_of < 0] = -1
    zero_vertices = vertex_of[sources]
    on_source_vertex = np.isin(vertex_of, zero_vertices) & (vertex_of >= 0)
    result[on_source_vertex] = 1
    result[sources] = 0
    return result


# ---------------------------------------------------------------------------
# 原始元素图（不压缩），仅用于小群的交叉校验
# ---------------------------------------------------------------------------

@dataclass
class RawGraphSummary:
    labels: np.ndarray              # 非中心元素 → 分支编号
    noncentral: np.ndarray          # 非中心元素编号
    distances: np.ndarray           # 非中心元素两两距离，不连通为 inf
    diameters: Dict[int, int]       # 分支编号 → 直径


def raw_element_graph(g: Group, t: ElementTable, central: Sequence[int]) -> RawGraphSummary:
    """直接用交换关系构造元素图并求分支、全对最短路

    只用于阶不超过 Config.ORACLE_ORDER_CAP 的群。
    """
    is_central = np.zeros(len(t), dtype=bool)
    is_central[np.asarray(central, dtype=np.int64)] = True
    noncentral = np.flatnonzero(~is_central)
    position = np.full(len(t), -1, dtype=np.int64)
    position[noncentral] = np.arange(len(noncentral))

    rows, cols = [], []
    for i, x in enumerate(noncentral):
        neighbors = position[centralizer(g, t, int(x))]
        neighbors = neighbors[(neighbors >= 0) & (neighbors != i)]
        rows.append(np.full(len(neighbors), i, dtype=np.int64))
        cols.append(neighbors)
    row_index = np.concatenate(rows) if rows else np.empty(0, dtype=np.int64)
    col_index = np.concatenate(cols) if cols else np.empty(0, dtype=np.int64)
    matrix = csr_matrix((np.ones(len(row_index)), (row_index, col_index)),
                        shape=(len(noncentral), len(noncentral)))

    _, labels = connected_components(matrix, directed=False)
    distances = shortest_path(matrix, directed=False, unweighted=True)
    diameters = {}
    for c in np.unique(labels):
        members = np.flatnonzero(labels == c)
        diameters[int(c)] = int(distances[np.ix_(members, members)].max())
    return RawGraphSummary(labels, noncentral, distances, diameters)
