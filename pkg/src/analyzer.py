#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
群分析流水线模块

协调单个群的完整分析流程并支持语料库批量验证。

流程：
    目录解析 → 构造（阶断言）→ 元素枚举 → 中心（断言）→ 共轭类
    → 压缩交换图与分支 → 分支直径 → 素数图与一一对应 → 全部结构检验

Author: CommGraph Team
Version: 1.0.0
"""

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime
from typing import Any, Dict, List, Optional, Sequence, Union

from .analysis import GroupContext, check_isolated, default_engine, run_all_checks
from .catalog import CatalogEntry, resolve_group
from .commgraph import ENGINES, distance
from .config import Config
from .errors import CommGraphError, NotAMemberError
from .logger import get_logger
from .perm import parse_cycles
from .primegraph import build_prime_graph
from .report import AnalysisReport

GroupSpec = Union[str, CatalogEntry]


class _StageTimer:
    """记录各阶段耗时（毫秒）"""

    def __init__(self):
        self.timings: Dict[str, float] = {}
        self._last = time.perf_counter()

    def lap(self, stage: str) -> None:
        now = time.perf_counter()
        self.timings[stage] = (now - self._last) * 1000
        self._last = now


class GroupAnalyzer:
    """群分析器

    负责协调整个分析流程：
    - 目录解析与群构造
    - 交换图、分支直径、素数图
    - 结构性检验
    - 批量验证与统计
    """

    def __init__(self, engine: Optional[str] = None, show_progress: Optional[bool] = None):
        """
        Args:
            engine: 距离引擎 'full' 或 'reduced'，缺省取 Config.DEFAULT_ENGINE
            show_progress: 是否显示直径计算进度条
        """
        engine = engine or Config.DEFAULT_ENGINE
        if engine not in ENGINES:
            raise ValueError(f"未知的距离引擎: {engine}，可选 {', '.join(ENGINES)}")
        self.engine = engine
        self.show_progress = show_progress
        self.logger = get_logger()

        self.stats = {
            'groups_analyzed': 0,
            'groups_passed': 0,
            'groups_failed': 0,
            'errors': 0,
            'total_processing_time': 0.0,
        }
        self._stats_lock = threading.Lock()

    @staticmethod
    def _entry(spec: GroupSpec) -> CatalogEntry:
        return spec if isinstance(spec, CatalogEntry) else resolve_group(spec)

    def build_context(self, spec: GroupSpec) -> GroupContext:
        """构造群并建立分析上下文（阶与中心均已断言）"""
        entry = self._entry(spec)
        group = entry.build()
        ctx = GroupContext.build(group, **entry.metadata())
        entry.check_centre(len(ctx.central))
        return ctx

    def analyze(self, spec: GroupSpec) -> AnalysisReport:
        """分析单个群

        Raises:
            UnsupportedGroupError: 群描述无法解析
            GroupTooLargeError: 超过枚举上限
            CatalogOrderError: 阶或中心与登记值不符
        """
        entry = self._entry(spec)
        timer = _StageTimer()
        self.logger.info(f"开始分析: {entry.name}")

        group = entry.build()
        timer.lap('build')
        ctx = GroupContext.build(group, **entry.metadata())
        entry.check_centre(len(ctx.central))
        timer.lap('graph')

        engine = default_engine(ctx, self.engine)
        if engine != self.engine:
            self.logger.info(f"{entry.name}: 中心非平凡，改用 full 引擎")
        graph = ctx.graph
        diameters = graph.diameters(engine, self.show_progress)
        timer.lap('diameters')

        reports = graph.partition.reports
        for orbit_id, orbit in enumerate(graph.component_orbits()):
            isolation = check_isolated(ctx, int(orbit[0])) if ctx.has_trivial_centre else None
            for c in orbit:
                report = reports[int(c)]
                report.diameter = diameters[int(c)]
                report.orbit_id = orbit_id
                report.stabilizer_index = len(orbit)
                if isolation is not None:
                    report.is_subgroup_with_identity = isolation['is_subgroup']
                    report.is_isolated_subgroup = isolation['is_isolated_subgroup']
        element_total = sum(r.element_count for r in reports)
        if element_total != ctx.order - len(ctx.central):
            raise CommGraphError(
                f"{entry.name}: 分支元素总数 {element_total} 不等于 |G| - |Z(G)| = {ctx.order - len(ctx.central)}"
            )
        timer.lap('components')

        prime_graph = build_prime_graph(group, ctx.table, ctx.classes)
        lemmas = run_all_checks(ctx, engine)
        timer.lap('checks')

        bijection = next(v for v in lemmas if v.lemma_id == 'component_bijection').status.value
        report = AnalysisReport(
            group=entry.name,
            order=ctx.order,
            degree=group.degree,
            centre_size=len(ctx.central),
            components=list(reports),
            prime_graph=prime_graph,
            bijection=bijection,
            lemmas=lemmas,
            timing_ms=timer.timings,
        )
        self.logger.info(
            f"{entry.name}: |G| = {ctx.order}, {len(reports)} 个分支, "
            f"最大直径 {report.max_component_diameter}, {sum(timer.timings.values()) / 1000:.2f} 秒"
        )
        return report

    def analyze_safe(self, spec: GroupSpec) -> Dict[str, Any]:
        """分析单个群，异常记录在结果字典中而不向上抛出

        Returns:
            dict: success, group, report, error, processing_time
        """
        start = datetime.now()
        name = spec.name if isinstance(spec, CatalogEntry) else str(spec)
        result = {'success': False, 'group': name, 'report': None, 'error': None, 'processing_time': 0.0}
        try:
            report = self.analyze(spec)
            result['report'] = report
            result['group'] = report.group
            result['success'] = report.passed
            if not report.passed:
                failed = ', '.join(v.lemma_id for v in report.failures) or '直径超过上界'
                self.logger.error(f"{report.group}: 检验失败 ({failed})")
        except CommGraphError as e:
            result['error'] = str(e)
            self.logger.error(f"{name}: {e}")
        except Exception as e:
            result['error'] = f"分析过程异常: {type(e).__name__}: {e}"
            self.logger.exception(f"{name}: {result['error']}")

        result['processing_time'] = (datetime.now() - start).total_seconds()
        with self._stats_lock:
            self.stats['groups_analyzed'] += 1
            self.stats['errors'] += result['error'] is not None
            self.stats['groups_passed' if result['success'] else 'groups_failed'] += 1
            self.stats['total_processing_time'] += result['processing_time']
        return result

    def verify_corpus(self, specs: Sequence[GroupSpec], workers: Optional[int] = None) -> List[Dict[str, Any]]:
        """批量验证；结果按输入顺序返回

        Args:
            specs: 群描述或目录条目
            workers: 并发线程数，缺省取 Config.PERFORMANCE_CONFIG['max_workers']
        """
        workers = workers or Config.PERFORMANCE_CONFIG['max_workers']
        self.logger.info(f"开始批量验证 {len(specs)} 个群（{workers} 个线程）")
        if workers <= 1:
            results = []
            for spec in specs:
                results.append(self.analyze_safe(spec))
                if results[-1]['error'] and not Config.ERROR_CONFIG['continue_on_error']:
                    self.logger.warning("continue_on_error 关闭，停止批量验证")
                    break
            return results
        with ThreadPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(self.analyze_safe, specs))

    def max_diameter(self, spec: GroupSpec) -> int:
        """全部分支的最大直径"""
        ctx = self.build_context(spec)
        diameters = ctx.graph.diameters(default_engine(ctx, self.engine), self.show_progress)
        return max(diameters.values(), default=0)

    def reference_table(self, reference: Optional[Dict[str, int]] = None) -> List[Dict[str, Any]]:
        """计算参考群的最大分支直径并与参考值对照"""
        reference = reference or Config.REFERENCE_DIAMETERS
        rows = []
        for name, expected in reference.items():
            try:
                actual = self.max_diameter(name)
            except CommGraphError as e:
                self.logger.error(f"{name}: {e}")
                actual = None
            rows.append({'group': name, 'expected': expected, 'actual': actual, 'match': actual == expected})
            self.logger.info(f"{name}: 参考值 {expected}, 实际值 {actual}")
        return rows

    def distance(self, spec: GroupSpec, first: str, second: str) -> Optional[int]:
        """两个置换（循环记号）在交换图中的距离；不连通时为 None

        Raises:
            PermutationParseError: 循环记号无效
            NotAMemberError: 置换不在群中
            CentralElementError: 置换是中心元素
        """
        entry = self._entry(spec)
        group = entry.build()
        x, y = parse_cycles(first, group.degree), parse_cycles(second, group.degree)
        # 先用稳定子链判定成员关系，不在群中时不必枚举
        for p in (x, y):
            if not group.contains(p):
                raise NotAMemberError(f"{p} 不属于 {group.name}")
        ctx = GroupContext.build(group, **entry.metadata())
        t = ctx.table
        return distance(ctx.graph, t.id_of(x), t.id_of(y), default_engine(ctx, self.engine))

    def get_stats(self) -> Dict[str, Any]:
        return dict(self.stats)
