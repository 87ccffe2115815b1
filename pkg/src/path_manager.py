#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
路径管理模块

统一处理生成元文件查找、报告输出路径与目录创建。

Author: CommGraph Team
Version: 1.0.0
"""

import re
from pathlib import Path
from typing import List, Optional, Union

from .config import Config
from .logger import get_logger


class PathManager:
    """
    路径管理器

    提供统一的路径管理功能，包括：
    - 路径规范化与目录创建
    - 生成元文件查找（原路径优先，其次 GROUPS_DIR）
    - 由群名生成安全的报告文件名
    """

    def __init__(self, base_dir: Union[str, Path] = None):
        """
        Args:
            base_dir: 基础目录，缺省为项目根目录
        """
        self.base_dir = Path(base_dir) if base_dir else Config.PROJECT_ROOT
        self.base_dir = self.base_dir.resolve()
        self.logger = get_logger()

    def normalize_path(self, path: Union[str, Path]) -> Path:
        """相对路径按基础目录解析"""
        path = Path(path)
        if not path.is_absolute():
            path = self.base_dir / path
        return path.resolve()

    def ensure_dir(self, dir_path: Union[str, Path]) -> Path:
        dir_path = self.normalize_path(dir_path)
        dir_path.mkdir(parents=True, exist_ok=True)
        self.logger.debug(f"目录已确保存在: {dir_path}")
        return dir_path

    @staticmethod
    def safe_filename(name: str) -> str:
        """群名转为文件名，例如 aut(alt(6)) → aut_alt_6"""
        safe = re.sub(r'[^0-9A-Za-z_.-]+', '_', name).strip('_')
        return safe or 'group'

    def find_group_file(self, spec: Union[str, Path]) -> Optional[Path]:
        """按原样查找生成元文件，找不到时再到 GROUPS_DIR 下查找"""
        candidates = [Path(spec), self.normalize_path(Config.GROUPS_DIR) / spec]
        for candidate in candidates:
            if candidate.is_file():
                return candidate
        return None

    def list_group_files(self, pattern: str = '*.txt') -> List[Path]:
        directory = self.normalize_path(Config.GROUPS_DIR)
        if not directory.is_dir():
            return []
        return sorted(f for f in directory.glob(pattern) if f.is_file())

    def report_path(self, group_name: str, output_dir: Union[str, Path] = None) -> Path:
        """群的默认 JSON 报告路径：OUTPUT_DIR/<安全文件名>.json"""
        directory = self.ensure_dir(output_dir or Config.OUTPUT_DIR)
        return directory / f"{self.safe_filename(group_name)}.json"

    def __str__(self) -> str:
        return f"PathManager(base_dir={self.base_dir})"

    def __repr__(self) -> str:
        return self.__str__()
