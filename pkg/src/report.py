#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
分析报告模块

AnalysisReport 的 JSON 结构、报告写出与命令行汇总表格。

JSON 结构（键稳定）：
    group, order, degree, centre_size,
    components: [{id, elements, vertices, diameter, primes, is_isolated_subgroup, orbit_id}],
    prime_graph: {primes, edges, components}, bijection: "PASS|FAIL|NOT_APPLICABLE",
    lemmas: [{id, status, witness?, note?}], max_component_diameter, timing_ms

除 timing_ms 外，同一输入两次运行得到的 JSON 逐字节相同。

Author: CommGraph Team
Version: 1.0.0
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from .analysis import LemmaVerdict, Status
from .commgraph import ComponentReport
from .config import Config
from .primegraph import PrimeGraph


@dataclass
class AnalysisReport:
    """单个群的完整分析结果"""
    group: str
    order: int
    degree: int
    centre_size: int
    components: List[ComponentReport]
    prime_graph: PrimeGraph
    bijection: str
    lemmas: List[LemmaVerdict]
    timing_ms: Dict[str, float] = field(default_factory=dict)

    @property
    def max_component_diameter(self) -> int:
        return max((c.diameter for c in self.components if c.diameter is not None), default=0)

    @property
    def failures(self) -> List[LemmaVerdict]:
        return [v for v in self.lemmas if v.status is Status.FAIL]

    @property
    def passed(self) -> bool:
        """所有适用检验通过且分支直径不超过上界"""
        return not self.failures and self.max_component_diameter <= Config.DIAMETER_BOUND

    def verdict_counts(self) -> Dict[str, int]:
        counts = {status.value: 0 for status in Status}
        for verdict in self.lemmas:
            counts[verdict.status.value] += 1
        return counts

    def to_dict(self) -> Dict[str, Any]:
        return {
            'group': self.group,
            'order': self.order,
            'degree': self.degree,
            'centre_size': self.centre_size,
            'components': [
                {
                    'id': c.id,
                    'elements': c.element_count,
                    'vertices': c.vertex_count,
                    'diameter': c.diameter,
                    'primes': list(c.prime_set),
                    'is_isolated_subgroup': c.is_isolated_subgroup,
                    'orbit_id': c.orbit_id,
                }
                for c in self.components
            ],
            'prime_graph': self.prime_graph.to_dict(),
            'bijection': self.bijection,
            'lemmas': [v.to_dict() for v in self.lemmas],
            'max_component_diameter': self.max_component_diameter,
            'timing_ms': {k: round(v, 1) for k, v in self.timing_ms.items()},
        }


def _json_default(value):
    # numpy 整数与布尔
    if hasattr(value, 'item'):
        return value.item()
    raise TypeError(f"无法序列化的类型: {type(value).__name__}")


def to_json(data: Union[Dict, List]) -> str:
    return json.dumps(data, ensure_ascii=False, indent=2, default=_json_default)


def write_json(data: Union[Dict, List], path: Union[str, Path]) -> Path:
    """写出 JSON 报告（自动创建父目录）"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(to_json(data))
        f.write('\n')
    return path


def _table(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    cells = [[str(h) for h in headers]] + [[str(v) for v in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]
    lines = ['  '.join(value.ljust(width) for value, width in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, '  '.join('-' * width for width in widths))
    return '\n'.join(lines)


def _inapplicable_note(report: AnalysisReport) -> Optional[str]:
    """全部检验都不适用时给出原因"""
    if not report.lemmas or any(v.status is not Status.NOT_APPLICABLE for v in report.lemmas):
        return None
    if report.centre_size > 1:
        return f"{report.group}: 全部检验不适用，|Z(G)| = {report.centre_size}（检验要求中心平凡）"
    return f"{report.group}: 全部检验不适用"


def render_report(report: AnalysisReport) -> str:
    """analyze 命令的文本输出"""
    lines = [
        f"群: {report.group}",
        f"阶: {report.order}    次数: {report.degree}    |Z(G)|: {report.centre_size}",
        f"分支数: {len(report.components)}    分支轨道数: "
        f"{len({c.orbit_id for c in report.components if c.orbit_id is not None})}",
        f"最大分支直径: {report.max_component_diameter}",
        f"素数图分支: {report.prime_graph.components()}",
        f"一一对应: {report.bijection}",
        "",
    ]
    rows = [
        (c.id, c.element_count, c.vertex_count, c.diameter,
         ','.join(map(str, c.prime_set)), c.is_isolated_subgroup, c.orbit_id)
        for c in report.components
    ]
    lines.append(_table(['分支', '元素', '顶点', '直径', '素数', '孤立子群', '轨道'], rows))
    lines.append("")
    lemma_rows = [(v.lemma_id, v.status.value, v.note or (v.witness or '')) for v in report.lemmas]
    lines.append(_table(['检验', '结论', '说明'], lemma_rows))
    note = _inapplicable_note(report)
    if note:
        lines.append(note)
    return '\n'.join(lines)


def render_summary(results: Sequence[Dict[str, Any]]) -> str:
    """verify-all 的汇总表；results 为 GroupAnalyzer.analyze_safe 的结果字典"""
    rows = []
    for result in results:
        report: Optional[AnalysisReport] = result.get('report')
        if report is None:
            rows.append((result['group'], '-', '-', '-', '-', '-', f"错误: {result['error']}"))
            continue
        counts = report.verdict_counts()
        rows.append((
            report.group, report.order, len(report.components), report.max_component_diameter,
            counts['PASS'], counts['NOT_APPLICABLE'],
            counts['FAIL'] if counts['FAIL'] else report.bijection,
        ))
    notes = [_inapplicable_note(r['report']) for r in results if r.get('report') is not None]
    table = _table(['群', '阶', '分支', '最大直径', 'PASS', 'N/A', 'FAIL/对应'], rows)
    return '\n'.join([table] + [note for note in notes if note])


def render_reference_table(rows: Sequence[Dict[str, Any]]) -> str:
    """table 命令：实际最大直径与参考值对照"""
    body = [
        (row['group'], row['expected'], row['actual'] if row['actual'] is not None else '-',
         '✓' if row['match'] else '✗')
        for row in rows
    ]
    return _table(['群', '参考值', '实际值', ''], body)
