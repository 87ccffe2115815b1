#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
配置管理模块

定义项目的全局配置参数，包括目录路径、枚举上限、
邻接模式阈值、日志与并发设置等配置项。

Author: CommGraph Team
Version: 1.0.0
"""

import os
from pathlib import Path
from typing import List, Dict, Any


class Config:
    """项目配置类

    包含所有项目相关的配置参数，支持环境变量覆盖。
    """

    # 基础目录配置
    PROJECT_ROOT = Path(__file__).parent.parent
    GROUPS_DIR = os.getenv('COMMGRAPH_GROUPS_DIR', 'groups')
    OUTPUT_DIR = os.getenv('COMMGRAPH_OUTPUT_DIR', 'output')
    LOGS_DIR = os.getenv('COMMGRAPH_LOGS_DIR', 'logs')

    # 元素枚举上限（群阶超过该值时拒绝枚举）
    ELEMENT_CAP = int(os.getenv('COMMGRAPH_ELEMENT_CAP', 2_000_000))

    # outside 类检验的实例扫描只在 |G| 不超过该值时进行
    HYPOTHESIS_SCAN_CAP = int(os.getenv('COMMGRAPH_SCAN_CAP', 10_000))

    # 原始元素图校验（不做循环压缩）的群阶上限
    ORACLE_ORDER_CAP = int(os.getenv('COMMGRAPH_ORACLE_CAP', 2_000))

    # 顶点数不超过该值时使用位图邻接矩阵，否则按需扫描中心化子
    BITSET_MAX_VERTICES = int(os.getenv('COMMGRAPH_BITSET_MAX_VERTICES', 65_536))

    # 中心平凡时的分支直径上界
    DIAMETER_BOUND = 10

    # 默认距离引擎：reduced（素数阶路径约化）或 full（完整 BFS）
    DEFAULT_ENGINE = os.getenv('COMMGRAPH_ENGINE', 'reduced')

    # 日志配置
    LOG_CONFIG = {
        'level': os.getenv('COMMGRAPH_LOG_LEVEL', 'INFO'),
        'file_max_size': 10 * 1024 * 1024,  # 10MB
        'backup_count': 5,
        'console_output': True,
        'file_output': os.getenv('COMMGRAPH_LOG_TO_FILE', 'false').lower() == 'true',
    }

    # 进度显示配置
    PROGRESS_CONFIG = {
        'show_progress_bar': os.getenv('COMMGRAPH_PROGRESS', 'true').lower() == 'true',
        'min_sources_for_bar': 200,  # BFS 源点少于该值时不显示进度条
    }

    # 错误处理配置
    ERROR_CONFIG = {
        'continue_on_error': os.getenv('COMMGRAPH_CONTINUE_ON_ERROR', 'true').lower() == 'true',  # 仅对单线程批量验证生效
    }

    # 性能配置
    PERFORMANCE_CONFIG = {
        'max_workers': int(os.getenv('COMMGRAPH_MAX_WORKERS', 1)),  # verify-all 并发处理的群数
        'bitset_memory_fraction': 0.5,  # 位图最多占用可用内存的比例
        'neighbor_cache_size': 4096,    # 按需邻接模式下的邻居缓存条目数
    }

    # 默认语料库（均为平凡中心的群）
    DEFAULT_CORPUS = [
        'sym(3)', 'sym(4)', 'sym(5)', 'sym(6)', 'sym(7)',
        'alt(4)', 'alt(5)', 'alt(6)', 'alt(7)',
        'dihedral(5)', 'frobenius_20', 'agl1(7)', 'sz(2)',
        'psl2(7)', 'psl2(8)', 'psl2(9)', 'psl2(11)', 'psl2(13)',
        'pgl2(7)', 'pgl2(9)', 'pgl2(11)',
        'm10', 'aut(alt(6))',
        'm11', 'm12', 'psl3(4)', 'pgl3(4)', 'sz(8)', 'sz(8):3',
    ]

    # 最大分支直径参考值（table 命令的黄金数据）
    REFERENCE_DIAMETERS = {
        'alt(5)': 1,
        'sym(5)': 5,
        'alt(6)': 6,
        'sym(6)': 4,
        'm10': 6,
        'pgl2(9)': 5,
        'aut(alt(6))': 4,
        'alt(7)': 5,
        'sym(7)': 5,
    }

    @classmethod
    def get_absolute_path(cls, relative_path: str) -> Path:
        """获取相对于项目根目录的绝对路径

        Args:
            relative_path: 相对路径

        Returns:
            Path: 绝对路径对象
        """
        return cls.PROJECT_ROOT / relative_path

    @classmethod
    def get_config_dict(cls) -> Dict[str, Any]:
        """获取所有配置的字典表示

        Returns:
            Dict[str, Any]: 配置字典
        """
        config_dict = {}

        for attr_name in dir(cls):
            if not attr_name.startswith('_') and not callable(getattr(cls, attr_name)):
                attr_value = getattr(cls, attr_name)
                if not attr_name.startswith('get_') and not attr_name.startswith('is_'):
                    config_dict[attr_name] = attr_value

        return config_dict

    @classmethod
    def validate_config(cls) -> List[str]:
        """验证配置的有效性

        Returns:
            List[str]: 验证错误信息列表
        """
        errors = []

        if cls.ELEMENT_CAP <= 0:
            errors.append("ELEMENT_CAP 必须大于 0")

        if cls.HYPOTHESIS_SCAN_CAP < 0:
            errors.append("HYPOTHESIS_SCAN_CAP 不能为负数")

        if cls.BITSET_MAX_VERTICES <= 0:
            errors.append("BITSET_MAX_VERTICES 必须大于 0")

        if cls.DEFAULT_ENGINE not in ('full', 'reduced'):
            errors.append("DEFAULT_ENGINE 只能是 full 或 reduced")

        if not (0 < cls.PERFORMANCE_CONFIG['bitset_memory_fraction'] <= 1):
            errors.append("bitset_memory_fraction 必须在 (0, 1] 之间")

        if cls.PERFORMANCE_CONFIG['max_workers'] <= 0:
            errors.append("max_workers 必须大于 0")

        if not cls.DEFAULT_CORPUS:
            errors.append("DEFAULT_CORPUS 不能为空")

        return errors

    @classmethod
    def print_config(cls) -> None:
        """打印当前配置信息"""
        print("当前配置信息:")
        print("=" * 50)

        config_dict = cls.get_config_dict()
        for key, value in config_dict.items():
            if isinstance(value, dict):
                print(f"{key}:")
                for sub_key, sub_value in value.items():
                    print(f"  {sub_key}: {sub_value}")
            elif isinstance(value, list):
                print(f"{key}: {', '.join(map(str, value[:5]))}{'...' if len(value) > 5 else ''}")
            else:
                print(f"{key}: {value}")

        print("=" * 50)


# 创建全局配置实例
config = Config()


if __name__ == '__main__':
    config.print_config()

    errors = config.validate_config()
    if errors:
        print("\n配置验证错误:")
        for error in errors:
            print(f"- {error}")
    else:
        print("\n✅ 配置验证通过")
