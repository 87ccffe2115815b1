#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
有限域模块

GF(p^k)（q ≤ 32）的表格化算术，用于构造射影直线、射影平面
和 Suzuki 卵形线上的置换群。

域元素编码为整数 0..q-1：p 进制第 i 位是 x^i 的系数。
0 和 1 分别是加法与乘法单位元。

Author: CommGraph Team
Version: 1.0.0
"""

from functools import lru_cache
from typing import Dict, List, Tuple

import numpy as np
from sympy import factorint


# 首一不可约多项式，系数从低次到高次
IRREDUCIBLE_POLYNOMIALS: Dict[int, Tuple[int, ...]] = {
    4: (1, 1, 1),            # x^2 + x + 1
    8: (1, 1, 0, 1),         # x^3 + x + 1
    9: (1, 0, 1),            # x^2 + 1
    16: (1, 1, 0, 0, 1),     # x^4 + x + 1
    25: (3, 0, 1),           # x^2 - 2
    27: (1, 2, 0, 1),        # x^3 + 2x + 1
    32: (1, 0, 1, 0, 0, 1),  # x^5 + x^2 + 1
}

MAX_FIELD_SIZE = 32


def prime_power(q: int) -> Tuple[int, int]:
    """把 q 分解为 p^k；q 不是素数幂时抛出 ValueError"""
    if q < 2:
        raise ValueError(f"{q} 不是素数幂")
    factors = factorint(q)
    if len(factors) != 1:
        raise ValueError(f"{q} 不是素数幂")
    (p, k), = factors.items()
    return int(p), int(k)


class GaloisField:
    """有限域 GF(q)，q = p^k ≤ 32

    Attributes:
        p: 特征
        k: 扩张次数
        q: 域的大小
        primitive: 乘法群的一个生成元
    """

    def __init__(self, q: int):
        p, k = prime_power(q)
        if q > MAX_FIELD_SIZE:
            raise ValueError(f"只支持 q ≤ {MAX_FIELD_SIZE} 的有限域，得到 {q}")
        self.p, self.k, self.q = p, k, q
        self.modulus = IRREDUCIBLE_POLYNOMIALS.get(q, (0, 1))

        digits = [self._digits(a) for a in range(q)]
        self.add_table = np.array(
            [[self._encode([(x + y) % p for x, y in zip(da, db)]) for db in digits] for da in digits],
            dtype=np.int64,
        )
        self.mul_table = np.array(
            [[self._poly_mul(da, db) for db in digits] for da in digits],
            dtype=np.int64,
        )
        self.neg_table = np.array([self._encode([(-x) % p for x in da]) for da in digits], dtype=np.int64)

        self.primitive = self._find_primitive()
        self.exp_table = np.ones(q - 1, dtype=np.int64)
        for i in range(1, q - 1):
            self.exp_table[i] = self.mul_table[self.exp_table[i - 1], self.primitive]
        self.log_table = np.full(q, -1, dtype=np.int64)
        self.log_table[self.exp_table] = np.arange(q - 1)

    def __repr__(self) -> str:
        return f"GaloisField({self.q})"

    def _digits(self, a: int) -> List[int]:
        result = []
        for _ in range(self.k):
            result.append(a % self.p)
            a //= self.p
        return result

    def _encode(self, digits: List[int]) -> int:
        value = 0
        for d in reversed(digits):
            value = value * self.p + d
        return value

    def _poly_mul(self, da: List[int], db: List[int]) -> int:
        p, k = self.p, self.k
        product = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                product[i + j] = (product[i + j] + x * y) % p
        # 用首一模多项式约化高次项
        for degree in range(2 * k - 2, k - 1, -1):
            c = product[degree]
            if c:
                for i, m in enumerate(self.modulus):
                    product[degree - k + i] = (product[degree - k + i] - c * m) % p
        return self._encode(product[:k])

    def _find_primitive(self) -> int:
        for candidate in range(1, self.q):
            value, order = candidate, 1
            while value != 1:
                value = int(self.mul_table[value, candidate])
                order += 1
            if order == self.q - 1:
                return candidate
        raise ValueError(f"GF({self.q}) 中找不到本原元")

    @property
    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 在有限域中没有逆元")
        return int(self.exp_table[(-self.log_table[a]) % (self.q - 1)])

    def pow(self, a: int, exponent: int) -> int:
        if a == 0:
            return 0 if exponent > 0 else 1
        return int(self.exp_table[(self.log_table[a] * exponent) % (self.q - 1)])

    def frobenius(self, a: int) -> int:
        """Frobenius 自同构 a ↦ a^p"""
        return self.pow(a, self.p)


@lru_cache(maxsize=None)
def galois_field(q: int) -> GaloisField:
    """带缓存的有限域构造"""
    return GaloisField(q)
