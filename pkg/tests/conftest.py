# -*- coding: utf-8 -*-
"""
测试公共夹具

分析上下文的构造代价较高，同一会话内按群描述缓存。
"""

import pytest

from src.analysis import GroupContext
from src.catalog import resolve_group
from src.config import Config
from src.perm import parse_cycles

_CONTEXTS = {}


@pytest.fixture(scope='session', autouse=True)
def quiet_progress():
    """测试中关闭直径进度条"""
    original = Config.PROGRESS_CONFIG['show_progress_bar']
    Config.PROGRESS_CONFIG['show_progress_bar'] = False
    yield
    Config.PROGRESS_CONFIG['show_progress_bar'] = original


def build_context(spec: str) -> GroupContext:
    if spec not in _CONTEXTS:
        entry = resolve_group(spec)
        _CONTEXTS[spec] = GroupContext.build(entry.build(), **entry.metadata())
    return _CONTEXTS[spec]


@pytest.fixture(scope='session')
def context():
    """按群描述返回缓存的 GroupContext"""
    return build_context


@pytest.fixture(scope='session')
def element_id():
    """循环记号 → 元素编号"""
    def lookup(ctx: GroupContext, text: str) -> int:
        return ctx.table.id_of(parse_cycles(text, ctx.group.degree))
    return lookup
