#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
日志管理模块

控制台日志走 stderr（终端下由 coloredlogs 着色），stdout 只留给命令结果；
可选的轮转文件日志写到 LOGS_DIR。

Author: CommGraph Team
Version: 1.0.0
"""

import logging
import logging.handlers
import platform
import sys
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

import coloredlogs
import psutil

from .config import Config


CONSOLE_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'
FILE_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(module)s.%(funcName)s:%(lineno)d - %(message)s'
DATE_FORMAT = '%H:%M:%S'

LEVEL_STYLES = {
    'debug': {'color': 'cyan'},
    'info': {'color': 'green'},
    'warning': {'color': 'yellow'},
    'error': {'color': 'red'},
    'critical': {'color': 'magenta', 'bold': True},
}

GIB = 1024 ** 3


class _StderrHandler(logging.StreamHandler):
    """每次写入时取当前的 sys.stderr（它可能在运行中被替换）"""

    @property
    def stream(self):
        return sys.stderr

    @stream.setter
    def stream(self, value):
        pass


class CommGraphLogger:
    """交换图分析的日志管理器

    每个名字只配置一次处理器；重复构造不会叠加输出。
    """

    def __init__(self, name: str = 'commgraph', log_config: Optional[Dict[str, Any]] = None):
        """
        Args:
            name: 日志器名称
            log_config: 形如 Config.LOG_CONFIG 的字典，缺省时读取 Config
        """
        self.name = name
        self.log_config = dict(Config.LOG_CONFIG if log_config is None else log_config)
        self.logger = logging.getLogger(name)
        self.logger.setLevel(self.log_config['level'].upper())
        self.logger.propagate = False

        if not self.logger.handlers:
            if self.log_config.get('console_output', True):
                self.logger.addHandler(self._console_handler())
            if self.log_config.get('file_output', False):
                self.logger.addHandler(self._file_handler())

    def _console_handler(self) -> logging.Handler:
        handler = _StderrHandler()
        handler.setLevel(self.logger.level)
        if getattr(sys.stderr, 'isatty', lambda: False)():
            handler.setFormatter(coloredlogs.ColoredFormatter(
                fmt=CONSOLE_FORMAT, datefmt=DATE_FORMAT, level_styles=LEVEL_STYLES,
            ))
        else:
            handler.setFormatter(logging.Formatter(fmt=CONSOLE_FORMAT, datefmt=DATE_FORMAT))
        return handler

    def _file_handler(self) -> logging.Handler:
        """轮转文件日志，总是记录 DEBUG 级别"""
        path = Path(self.log_config.get('file') or Config.get_absolute_path(Config.LOGS_DIR) / f'{self.name}.log')
        path.parent.mkdir(parents=True, exist_ok=True)
        handler = logging.handlers.RotatingFileHandler(
            filename=path,
            maxBytes=self.log_config.get('file_max_size', 10 * 1024 * 1024),
            backupCount=self.log_config.get('backup_count', 5),
            encoding='utf-8',
        )
        handler.setLevel(logging.DEBUG)
        handler.setFormatter(logging.Formatter(fmt=FILE_FORMAT, datefmt='%Y-%m-%d %H:%M:%S'))
        return handler

    def get_logger(self) -> logging.Logger:
        return self.logger

    def set_level(self, level: int) -> None:
        """调整日志器与控制台处理器的级别；文件处理器保持 DEBUG"""
        self.logger.setLevel(level)
        for handler in self.logger.handlers:
            if not isinstance(handler, logging.FileHandler):
                handler.setLevel(level)

    def log_system_info(self) -> None:
        """记录运行环境以及位图邻接矩阵可用的内存预算"""
        memory = psutil.virtual_memory()
        budget = memory.available * Config.PERFORMANCE_CONFIG['bitset_memory_fraction']
        self.logger.info("=" * 50)
        self.logger.info(f"操作系统: {platform.system()} {platform.release()}")
        self.logger.info(f"Python版本: {platform.python_version()}")
        self.logger.info(f"CPU核心数: {psutil.cpu_count()}")
        self.logger.info(f"可用内存: {memory.available / GIB:.1f} / {memory.total / GIB:.1f} GB")
        self.logger.info(f"位图邻接预算: {budget / GIB:.2f} GB，"
                         f"顶点上限 {Config.BITSET_MAX_VERTICES}")
        self.logger.info(f"元素枚举上限: {Config.ELEMENT_CAP}")
        self.logger.info("=" * 50)

    def log_config_info(self, config_dict: Optional[Dict[str, Any]] = None) -> None:
        """以 DEBUG 级别逐项记录配置"""
        for section, settings in (config_dict or Config.get_config_dict()).items():
            if isinstance(settings, dict):
                self.logger.debug(f"[{section}] " + ', '.join(f"{k}={v}" for k, v in settings.items()))
            else:
                self.logger.debug(f"{section}: {settings}")

    def log_verification_metrics(self, start_time: datetime, end_time: datetime,
                                 results: Sequence[Dict[str, Any]]) -> None:
        """记录批量验证的耗时与规模

        Args:
            start_time: 开始时间
            end_time: 结束时间
            results: GroupAnalyzer.analyze_safe 的结果列表
        """
        duration = (end_time - start_time).total_seconds()
        reports = [r['report'] for r in results if r['report'] is not None]
        passed = sum(r['success'] for r in results)

        self.logger.info("性能指标:")
        self.logger.info(f"总耗时: {duration:.2f} 秒")
        self.logger.info(f"群数: {len(results)}，通过 {passed}，"
                         f"通过率 {passed / len(results) * 100 if results else 0:.1f}%")
        if reports:
            self.logger.info(f"枚举元素总数: {sum(r.order for r in reports)}")
            self.logger.info(f"分支总数: {sum(len(r.components) for r in reports)}")
        if results:
            slowest = max(results, key=lambda r: r['processing_time'])
            self.logger.info(f"最慢: {slowest['group']} ({slowest['processing_time']:.2f} 秒)")


_logger_instance: Optional[CommGraphLogger] = None


def get_logger_manager() -> CommGraphLogger:
    """全局日志管理器（首次调用时创建）"""
    global _logger_instance
    if _logger_instance is None:
        _logger_instance = CommGraphLogger()
    return _logger_instance


def setup_logger(level: int = logging.INFO) -> logging.Logger:
    """设置全局日志级别并返回日志器"""
    manager = get_logger_manager()
    manager.set_level(level)
    return manager.get_logger()


def get_logger() -> logging.Logger:
    return get_logger_manager().get_logger()
