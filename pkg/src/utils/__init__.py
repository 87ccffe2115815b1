# -*- coding: utf-8 -*-
"""工具包：并查集与有限域算术"""

from .finite_field import GaloisField, galois_field, prime_power
from .union_find import UnionFind

__all__ = ['GaloisField', 'galois_field', 'prime_power', 'UnionFind']
