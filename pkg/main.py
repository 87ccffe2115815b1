#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
交换图分析工具主程序

有限置换群的交换图与素数图分析工具。
主要功能：
- 单个群的完整分析（分支、直径、素数图、结构检验），可输出 JSON 报告
- 参考群最大分支直径对照表
- 两个元素在交换图中的距离
- 语料库批量验证（可并发）
- 内置群目录列表

作者: CommGraph Team
版本: 1.0.0
"""

import argparse
import logging
import os
import sys
from datetime import datetime
from typing import Any, Dict, List

from dotenv import load_dotenv

# 加载环境变量（必须在读取 Config 之前）
load_dotenv()

# 添加 src 目录到 Python 路径
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from src.analyzer import GroupAnalyzer
from src.catalog import default_catalog, load_corpus
from src.commgraph import ENGINES
from src.config import Config
from src.errors import CommGraphError
from src.logger import get_logger_manager, setup_logger
from src.path_manager import PathManager
from src.report import render_reference_table, render_report, render_summary, write_json

VERSION = '1.0.0'


def command_analyze(args, analyzer: GroupAnalyzer, logger: logging.Logger) -> int:
    report = analyzer.analyze(args.group)
    print(render_report(report))
    if args.json is not None:
        path = write_json(report.to_dict(), args.json or PathManager().report_path(report.group))
        logger.info(f"报告已保存: {path}")
    return 0 if report.passed else 1


def command_table(args, analyzer: GroupAnalyzer, logger: logging.Logger) -> int:
    rows = analyzer.reference_table()
    print(render_reference_table(rows))
    matched = sum(row['match'] for row in rows)
    print(f"\n{matched}/{len(rows)} 一致")
    return 0 if matched == len(rows) else 1


def command_distance(args, analyzer: GroupAnalyzer, logger: logging.Logger) -> int:
    value = analyzer.distance(args.group, args.first, args.second)
    print('disconnected' if value is None else value)
    return 0


def command_catalog(args, analyzer: GroupAnalyzer, logger: logging.Logger) -> int:
    rows = []
    for entry in default_catalog():
        group = entry.build()
        rows.append((entry.name, entry.expected_order, group.degree, entry.soluble, entry.trivial_centre))
    width = max(len(name) for name, *_ in rows)
    print(f"{'群'.ljust(width)}  {'阶':>8}  {'次数':>4}  可解   中心平凡")
    for name, order, degree, soluble, trivial in rows:
        print(f"{name.ljust(width)}  {order:>8}  {degree:>4}  {str(soluble):<5}  {trivial}")
    group_files = PathManager().list_group_files()
    if group_files:
        print(f"\n{Config.GROUPS_DIR}/ 下的生成元文件:")
        for path in group_files:
            print(f"  {path.name}")
    return 0


def print_summary(results: List[Dict[str, Any]], logger: logging.Logger) -> None:
    """
    打印批量验证摘要

    Args:
        results: GroupAnalyzer.analyze_safe 的结果列表
        logger: 日志记录器
    """
    passed = [r for r in results if r['success']]
    errors = [r for r in results if r['error']]
    failed = [r for r in results if not r['success'] and not r['error']]

    logger.info("=" * 60)
    logger.info("📊 验证完成摘要")
    logger.info("=" * 60)
    logger.info(f"📁 总群数: {len(results)}")
    logger.info(f"✅ 全部通过: {len(passed)}")
    logger.info(f"❌ 检验失败: {len(failed)}")
    logger.info(f"💥 处理出错: {len(errors)}")
    for result in failed + errors:
        logger.warning(f"   • {result['group']}: {result['error'] or '检验失败'}")
    logger.info("=" * 60)


def command_verify_all(args, analyzer: GroupAnalyzer, logger: logging.Logger) -> int:
    specs = load_corpus(args.corpus) if args.corpus else default_catalog()
    start = datetime.now()
    results = analyzer.verify_corpus(specs, workers=args.workers)
    print(render_summary(results))
    print_summary(results, logger)
    get_logger_manager().log_verification_metrics(start, datetime.now(), results)
    if args.json:
        path = write_json([r['report'].to_dict() for r in results if r['report'] is not None], args.json)
        logger.info(f"报告已保存: {path}")

    succeeded = sum(r['success'] for r in results)
    if succeeded == len(results):
        logger.info("🎉 所有群验证通过！")
        return 0
    if succeeded > 0:
        logger.warning("⚠️  部分群验证失败")
        return 2
    logger.error("❌ 所有群验证失败")
    return 1


COMMANDS = {
    'analyze': command_analyze,
    'table': command_table,
    'distance': command_distance,
    'verify-all': command_verify_all,
    'catalog': command_catalog,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="交换图分析工具 - 有限置换群的交换图与素数图",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
📖 示例用法:
  python main.py analyze "alt(5)"                     # 分析单个群
  python main.py analyze "sym(6)" --json out.json     # 输出 JSON 报告
  python main.py table                                # 参考群最大直径对照
  python main.py distance "sym(4)" "(1,2)" "(3,4)"    # 两个元素的距离
  python main.py verify-all --workers 4               # 批量验证默认语料库
  python main.py verify-all --corpus corpus.yaml      # 批量验证自定义语料库
  python main.py catalog                              # 列出内置群
        """
    )
    parser.add_argument('--verbose', '-v', action='store_true', help='启用详细输出模式')
    parser.add_argument('--version', action='version', version=f'交换图分析工具 v{VERSION}')
    parser.add_argument('--show-config', action='store_true', help='打印当前配置后再执行命令')

    engine_options = argparse.ArgumentParser(add_help=False)
    engine_options.add_argument('--engine', choices=ENGINES, default=None,
                                help=f'距离引擎（默认 {Config.DEFAULT_ENGINE}；中心非平凡时总是 full）')

    subparsers = parser.add_subparsers(dest='command', required=True)

    analyze = subparsers.add_parser('analyze', parents=[engine_options], help='分析单个群')
    analyze.add_argument('group', help='群描述（如 "psl2(7)"）或生成元文件路径')
    analyze.add_argument('--json', nargs='?', const='',
                         help='JSON 报告输出路径（只给选项时写到 OUTPUT_DIR/<群名>.json）')

    subparsers.add_parser('table', parents=[engine_options], help='参考群最大分支直径对照表')

    distance = subparsers.add_parser('distance', parents=[engine_options], help='两个元素在交换图中的距离')
    distance.add_argument('group', help='群描述或生成元文件路径')
    distance.add_argument('first', help='第一个置换（循环记号）')
    distance.add_argument('second', help='第二个置换（循环记号）')

    verify = subparsers.add_parser('verify-all', parents=[engine_options], help='批量验证语料库')
    verify.add_argument('--corpus', help='YAML 语料库文件（默认使用内置语料库）')
    verify.add_argument('--workers', type=int, default=None, help='并发线程数')
    verify.add_argument('--json', help='全部报告的 JSON 输出路径')

    subparsers.add_parser('catalog', help='列出内置群')
    return parser


def main(argv=None):
    """
    主程序入口
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        logger = setup_logger(logging.DEBUG if args.verbose else
                              getattr(logging, Config.LOG_CONFIG['level'].upper()))
        if args.verbose:
            get_logger_manager().log_system_info()
        logger.info(f"🚀 启动参数: {' '.join(sys.argv[1:])}")
        get_logger_manager().log_config_info()
        if args.show_config:
            Config.print_config()

        config_errors = Config.validate_config()
        if config_errors:
            for error in config_errors:
                logger.error(f"配置错误: {error}")
            return 1

        analyzer = GroupAnalyzer(engine=getattr(args, 'engine', None))
        return COMMANDS[args.command](args, analyzer, logger)

    except KeyboardInterrupt:
        print("\n⏹️  用户中断操作")
        return 130
    except CommGraphError as e:
        print(f"💥 {e}", file=sys.stderr)
        return 1
    except Exception as e:
        print(f"💥 程序执行出错: {str(e)}", file=sys.stderr)
        if args.verbose:
            import traceback
            traceback.print_exc()
        return 1


if __name__ == '__main__':
    sys.exit(main())
