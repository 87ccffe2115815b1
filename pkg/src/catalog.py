#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
群目录模块

内置群的构造、群描述字符串的解析以及目录元数据（可解、单、中心平凡等）。

支持的群描述：
- sym(n), alt(n)（n ≤ 9），dihedral(n)，agl1(p)，frobenius_20
- psl2(q), pgl2(q)（q ≤ 32 的素数幂，作用在射影直线上）
- m10, aut(alt(6))（PSL₂(9) 的扩张，射影直线上）
- psl3(4), pgl3(4)（PG(2,4) 的 21 个点上）
- sz(2), sz(8), sz(8):3（Suzuki 卵形线上）
- m11, m12（固定生成元）
- 生成元文件路径（先按原样查找，再到 GROUPS_DIR 下查找）

PGL₂(9)、M10、Aut(A6)、PSL₃(4)、PGL₃(4) 与 Sz(8) 由 GF(p^k) 的运算表现场构造，不使用固定生成元。

所有内置群在构造后断言阶；中心平凡性在枚举元素后由 check_centre 校验。

Author: CommGraph Team
Version: 1.0.0
"""

import re
from dataclasses import dataclass, field
from math import factorial, gcd
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import yaml
from sympy import isprime

from .config import Config
from .errors import CatalogOrderError, CommGraphError, UnsupportedGroupError
from .group import Group, load_group_file
from .logger import get_logger
from .path_manager import PathManager
from .perm import Permutation
from .utils.finite_field import MAX_FIELD_SIZE, GaloisField, galois_field, prime_power


MAX_SYMMETRIC_DEGREE = 9

SUPPORTED_SPECS = [
    'sym(n), alt(n) (n ≤ 9)',
    'dihedral(n) (n ≥ 3)',
    'agl1(p) (p ≤ 31)',
    'frobenius_20',
    'psl2(q), pgl2(q) (q ≤ 32)',
    'm10', 'aut(alt(6))',
    'psl3(4)', 'pgl3(4)',
    'sz(2)', 'sz(8)', 'sz(8):3',
    'm11', 'm12',
    '生成元文件路径',
]


@dataclass
class CatalogEntry:
    """目录中的一个群

    Attributes:
        name: 规范化的群描述
        construction: 构造方式（'builtin:族名' 或生成元文件路径）
        expected_order: 登记的阶；文件群为 None
        soluble: 是否可解；文件群为 None（依赖可解性的检验记为 NOT_APPLICABLE）
        trivial_centre: 中心是否平凡；文件群为 None
        simple: 是否为非交换单群
        family: 族信息，如 ('psl2', 9)
        isolated_sylow_primes: 单群中可能以 Sylow 子群形式孤立的素数
    """
    name: str
    construction: str
    expected_order: Optional[int]
    soluble: Optional[bool]
    trivial_centre: Optional[bool]
    simple: Optional[bool] = None
    family: Optional[Tuple[str, int]] = None
    isolated_sylow_primes: Tuple[int, ...] = ()
    builder: Optional[Callable[[], Group]] = field(default=None, repr=False, compare=False)

    def build(self) -> Group:
        """构造群并断言阶

        Raises:
            CatalogOrderError: 阶与登记值不符
        """
        if self.builder is not None:
            group = self.builder()
            group.name = self.name
        else:
            group = load_group_file(self.construction, name=self.name)
        if self.expected_order is not None and group.order != self.expected_order:
            raise CatalogOrderError(self.name, self.expected_order, group.order)
        get_logger().debug(f"{self.name}: 次数 {group.degree}, 阶 {group.order}")
        return group

    def check_centre(self, centre_size: int) -> None:
        """校验中心平凡性与登记值一致

        Raises:
            CatalogOrderError: 不一致
        """
        if self.trivial_centre is None:
            return
        if self.trivial_centre and centre_size != 1:
            raise CatalogOrderError(self.name, 1, centre_size, what="中心阶")
        if not self.trivial_centre and centre_size == 1:
            raise CatalogOrderError(self.name, "大于 1", centre_size, what="中心阶")

    def metadata(self) -> Dict:
        """传给分析上下文的元数据"""
        return {
            'soluble': self.soluble,
            'simple': self.simple,
            'family': self.family,
            'isolated_sylow_primes': self.isolated_sylow_primes,
        }

    def to_dict(self) -> Dict:
        return {
            'name': self.name,
            'construction': self.construction,
            'order': self.expected_order,
            'soluble': self.soluble,
            'trivial_centre': self.trivial_centre,
            'simple': self.simple,
        }


# ---------------------------------------------------------------------------
# 射影空间上的作用
# ---------------------------------------------------------------------------

Vector = Tuple[int, ...]
Matrix = Sequence[Sequence[int]]


def _normalize(gf: GaloisField, vector: Sequence[int]) -> Vector:
    """射影点的规范代表：第一个非零坐标为 1"""
    for c in vector:
        if c:
            scale = gf.inv(c)
            return tuple(gf.mul(scale, x) for x in vector)
    raise ValueError("零向量不是射影点")


def _apply(gf: GaloisField, matrix: Matrix, vector: Vector) -> Vector:
    """列向量作用 v ↦ Mv"""
    result = []
    for row in matrix:
        total = 0
        for a, x in zip(row, vector):
            total = gf.add(total, gf.mul(a, x))
        result.append(total)
    return tuple(result)


def _projective_points(gf: GaloisField, dimension: int) -> List[Vector]:
    """PG(dimension-1, q) 的全部规范点（字典序）"""
    points = []
    for index in range(gf.q ** dimension):
        vector = []
        for _ in range(dimension):
            vector.append(index % gf.q)
            index //= gf.q
        vector = tuple(reversed(vector))
        if any(vector) and _normalize(gf, vector) == vector:
            points.append(vector)
    return points


def _point_map(gf: GaloisField, matrix: Matrix) -> Callable[[Vector], Vector]:
    return lambda v: _normalize(gf, _apply(gf, matrix, v))


def _frobenius_map(gf: GaloisField, then: Optional[Matrix] = None) -> Callable[[Vector], Vector]:
    """坐标逐个取 p 次幂，可再接一个矩阵"""
    def act(v: Vector) -> Vector:
        image = tuple(gf.frobenius(x) for x in v)
        return _normalize(gf, _apply(gf, then, image)) if then is not None else image
    return act


def _orbit(seed: Vector, maps: Sequence[Callable[[Vector], Vector]]) -> List[Vector]:
    orbit = [seed]
    seen = {seed}
    for point in orbit:
        for m in maps:
            image = m(point)
            if image not in seen:
                seen.add(image)
                orbit.append(image)
    return sorted(orbit)


def _permutations_on(points: List[Vector], maps: Sequence[Callable[[Vector], Vector]],
                     name: str) -> List[Permutation]:
    """把点映射转换为点列表上的置换

    Raises:
        CatalogOrderError: 某个映射把点映出点集
    """
    index = {p: i for i, p in enumerate(points)}
    permutations = []
    for m in maps:
        images = [index.get(m(p)) for p in points]
        if None in images:
            raise CatalogOrderError(name, len(points), sum(i is not None for i in images), what="点集大小")
        permutations.append(Permutation(images))
    return permutations


def _diagonal(*entries: int) -> List[List[int]]:
    n = len(entries)
    return [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)]


def _elementary(n: int, i: int, j: int, value: int) -> List[List[int]]:
    matrix = _diagonal(*([1] * n))
    matrix[i][j] = value
    return matrix


# ---------------------------------------------------------------------------
# 构造函数
# ---------------------------------------------------------------------------

def symmetric_group(n: int) -> Group:
    if n == 1:
        return Group([], degree=1)
    generators = [Permutation.from_cycles([[0, 1]], n)]
    if n > 2:
        generators.append(Permutation.from_cycles([list(range(n))], n))
    return Group(generators)


def alternating_group(n: int) -> Group:
    return Group([Permutation.from_cycles([[0, 1, k]], n) for k in range(2, n)])


def dihedral_group(n: int) -> Group:
    rotation = Permutation.from_cycles([list(range(n))], n)
    reflection = Permutation([(n - i) % n for i in range(n)])
    return Group([rotation, reflection])


def affine_group(p: int) -> Group:
    """AGL₁(p)：z ↦ az + b"""
    gf = galois_field(p)
    translation = Permutation([gf.add(z, 1) for z in gf.elements])
    scaling = Permutation([gf.mul(gf.primitive, z) for z in gf.elements])
    return Group([translation, scaling])


def _line_generators(q: int, projective: bool, extension: Optional[str] = None) -> List[Permutation]:
    """PSL₂(q)/PGL₂(q) 在射影直线上的生成元，可附加域自同构"""
    gf = galois_field(q)
    xi = gf.primitive
    maps = [
        _point_map(gf, [[1, 1], [0, 1]]),
        _point_map(gf, [[0, gf.neg(1)], [1, 0]]),
        _point_map(gf, _diagonal(xi, 1) if projective else _diagonal(xi, gf.inv(xi))),
    ]
    if extension == 'frobenius':
        maps.append(_frobenius_map(gf))
    elif extension == 'twisted':
        # 对角非平方元与 Frobenius 的乘积
        maps.append(_frobenius_map(gf, _diagonal(xi, 1)))
    return _permutations_on(_projective_points(gf, 2), maps, f"L2({q})")


def psl2(q: int) -> Group:
    return Group(_line_generators(q, projective=False))


def pgl2(q: int) -> Group:
    return Group(_line_generators(q, projective=True))


def mathieu_10() -> Group:
    return Group(_line_generators(9, projective=False, extension='twisted'))


def aut_alt6() -> Group:
    """PΓL₂(9) ≅ Aut(Alt(6))"""
    return Group(_line_generators(9, projective=True, extension='frobenius'))


def _plane_generators(projective: bool) -> List[Permutation]:
    gf = galois_field(4)
    omega = gf.primitive
    maps = [
        _point_map(gf, _elementary(3, i, j, value))
        for i in range(3) for j in range(3) if i != j
        for value in (1, omega)
    ]
    if projective:
        maps.append(_point_map(gf, _diagonal(omega, 1, 1)))
    return _permutations_on(_projective_points(gf, 3), maps, "L3(4)")


def psl3_4() -> Group:
    return Group(_plane_generators(projective=False))


def pgl3_4() -> Group:
    return Group(_plane_generators(projective=True))


def _suzuki_matrix(gf: GaloisField, sigma: int, a: int, b: int) -> List[List[int]]:
    """Suzuki 单位下三角矩阵 T(a, b)，σ(x) = x^sigma"""
    a_sigma, b_sigma = gf.pow(a, sigma), gf.pow(b, sigma)
    a_2_sigma = gf.mul(gf.mul(a, a), a_sigma)
    return [
        [1, 0, 0, 0],
        [a, 1, 0, 0],
        [b, a_sigma, 1, 0],
        [gf.add(gf.add(a_2_sigma, gf.mul(a, b)), b_sigma), gf.add(gf.mul(a, a_sigma), b), a, 1],
    ]


def suzuki(q: int, with_field_automorphism: bool = False) -> Group:
    """Sz(q) 在 q² + 1 个卵形线点上的作用；可附加 Frobenius 得到 Sz(q):m"""
    _, m = prime_power(q)
    gf = galois_field(q)
    sigma = 2 ** ((m + 1) // 2)
    xi = gf.primitive
    mu = 2 ** ((m - 1) // 2)
    maps = [
        _point_map(gf, _suzuki_matrix(gf, sigma, 1, 0)),
        _point_map(gf, _suzuki_matrix(gf, sigma, 0, 1)),
        _point_map(gf, _suzuki_matrix(gf, sigma, xi, 0)),
        _point_map(gf, _diagonal(gf.pow(xi, 1 + mu), gf.pow(xi, mu), gf.pow(xi, -mu), gf.pow(xi, -1 - mu))),
        _point_map(gf, [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]),
    ]
    ovoid = _orbit((0, 0, 0, 1), maps)
    if len(ovoid) != q * q + 1:
        raise CatalogOrderError(f"sz({q})", q * q + 1, len(ovoid), what="卵形线点数")
    if with_field_automorphism:
        maps.append(_frobenius_map(gf))
    return Group(_permutations_on(ovoid, maps, f"sz({q})"))


def _cycles(text: str, degree: int) -> Permutation:
    cycles = [[int(p) - 1 for p in c.split(',')] for c in re.findall(r'\(([^)]*)\)', text)]
    return Permutation.from_cycles(cycles, degree)


def mathieu_11() -> Group:
    return Group([
        _cycles('(1,2,3,4,5,6,7,8,9,10,11)', 11),
        _cycles('(3,7,11,8)(4,10,5,6)', 11),
    ])


def mathieu_12() -> Group:
    return Group([
        _cycles('(1,2,3,4,5,6,7,8,9,10,11)', 12),
        _cycles('(3,7,11,8)(4,10,5,6)', 12),
        _cycles('(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)', 12),
    ])


# ---------------------------------------------------------------------------
# 群描述解析
# ---------------------------------------------------------------------------

_PARAMETRIC = re.compile(r'^(sym|alt|dihedral|agl1|psl2|pgl2|psl3|pgl3|sz)\((\d+)\)$')
_SUZUKI_EXTENSION = re.compile(r'^sz\((\d+)\):3$')


def _unsupported(spec: str) -> UnsupportedGroupError:
    return UnsupportedGroupError(spec, SUPPORTED_SPECS)


def _field_order(spec: str, q: int) -> int:
    try:
        prime_power(q)
    except ValueError:
        raise _unsupported(spec) from None
    if q > MAX_FIELD_SIZE:
        raise _unsupported(spec)
    return q


def _symmetric_entry(name: str, n: int) -> CatalogEntry:
    if not 1 <= n <= MAX_SYMMETRIC_DEGREE:
        raise _unsupported(name)
    return CatalogEntry(
        name, 'builtin:sym', factorial(n),
        soluble=n <= 4, trivial_centre=n != 2, simple=False,
        builder=lambda: symmetric_group(n),
    )


def _alternating_entry(name: str, n: int) -> CatalogEntry:
    if not 3 <= n <= MAX_SYMMETRIC_DEGREE:
        raise _unsupported(name)
    isolated = {5: (2, 5), 6: (3,)}.get(n, ())
    family = {5: ('psl2', 5), 6: ('psl2', 9)}.get(n)
    return CatalogEntry(
        name, 'builtin:alt', factorial(n) // 2,
        soluble=n <= 4, trivial_centre=n != 3, simple=n >= 5,
        family=family, isolated_sylow_primes=isolated,
        builder=lambda: alternating_group(n),
    )


def _line_entry(name: str, family: str, q: int) -> CatalogEntry:
    q = _field_order(name, q)
    p, _ = prime_power(q)
    projective = family == 'pgl2'
    order = q * (q * q - 1) // (1 if projective else gcd(2, q - 1))
    if projective:
        isolated = ()
    elif q in (4, 5):
        isolated = (2, 5)
    else:
        isolated = (p,)
    return CatalogEntry(
        name, f'builtin:{family}', order,
        soluble=q <= 3, trivial_centre=True, simple=not projective and q >= 4,
        family=(family, q) if q >= 4 else None,
        isolated_sylow_primes=isolated if q >= 4 else (),
        builder=(lambda: pgl2(q)) if projective else (lambda: psl2(q)),
    )


def _suzuki_entry(name: str, q: int, extended: bool) -> CatalogEntry:
    if q not in (2, 8) or (extended and q != 8):
        raise _unsupported(name)
    order = q * q * (q * q + 1) * (q - 1) * (3 if extended else 1)
    return CatalogEntry(
        name, 'builtin:sz', order,
        soluble=q == 2, trivial_centre=True, simple=q == 8 and not extended,
        family=('sz', q) if q == 8 and not extended else None,
        isolated_sylow_primes=(2,) if q == 8 and not extended else (),
        builder=lambda: suzuki(q, with_field_automorphism=extended),
    )


_FIXED: Dict[str, Callable[[str], CatalogEntry]] = {
    'frobenius_20': lambda name: CatalogEntry(
        name, 'builtin:agl1', 20, soluble=True, trivial_centre=True, simple=False,
        builder=lambda: affine_group(5)),
    'm10': lambda name: CatalogEntry(
        name, 'builtin:m10', 720, soluble=False, trivial_centre=True, simple=False,
        builder=mathieu_10),
    'aut(alt(6))': lambda name: CatalogEntry(
        name, 'builtin:aut_alt6', 1440, soluble=False, trivial_centre=True, simple=False,
        builder=aut_alt6),
    'm11': lambda name: CatalogEntry(
        name, 'builtin:m11', 7920, soluble=False, trivial_centre=True, simple=True,
        builder=mathieu_11),
    'm12': lambda name: CatalogEntry(
        name, 'builtin:m12', 95040, soluble=False, trivial_centre=True, simple=True,
        builder=mathieu_12),
}


def _builtin_entry(name: str) -> Optional[CatalogEntry]:
    if name in _FIXED:
        return _FIXED[name](name)

    match = _SUZUKI_EXTENSION.match(name)
    if match:
        return _suzuki_entry(name, int(match.group(1)), extended=True)

    match = _PARAMETRIC.match(name)
    if not match:
        return None
    family, n = match.group(1), int(match.group(2))
    if family == 'sym':
        return _symmetric_entry(name, n)
    if family == 'alt':
        return _alternating_entry(name, n)
    if family == 'dihedral':
        if n < 3:
            raise _unsupported(name)
        return CatalogEntry(name, 'builtin:dihedral', 2 * n, soluble=True, trivial_centre=n % 2 == 1,
                            simple=False, builder=lambda: dihedral_group(n))
    if family == 'agl1':
        if not isprime(n) or not 3 <= n <= 31:
            raise _unsupported(name)
        return CatalogEntry(name, 'builtin:agl1', n * (n - 1), soluble=True, trivial_centre=True,
                            simple=False, builder=lambda: affine_group(n))
    if family in ('psl2', 'pgl2'):
        return _line_entry(name, family, n)
    if family in ('psl3', 'pgl3'):
        if n != 4:
            raise _unsupported(name)
        if family == 'psl3':
            return CatalogEntry(name, 'builtin:psl3', 20160, soluble=False, trivial_centre=True,
                                simple=True, family=('psl3', 4), isolated_sylow_primes=(3,),
                                builder=psl3_4)
        return CatalogEntry(name, 'builtin:pgl3', 60480, soluble=False, trivial_centre=True,
                            simple=False, builder=pgl3_4)
    return _suzuki_entry(name, n, extended=False)


def resolve_group(spec: str) -> CatalogEntry:
    """把群描述解析为目录条目

    Args:
        spec: 目录名（大小写与空白不敏感）或生成元文件路径

    Raises:
        UnsupportedGroupError: 既不是目录中的群也不是存在的文件
    """
    name = re.sub(r'\s+', '', spec).lower()
    entry = _builtin_entry(name)
    if entry is not None:
        return entry
    path = PathManager().find_group_file(spec)
    if path is None:
        raise _unsupported(spec)
    return CatalogEntry(path.stem, str(path), None, soluble=None, trivial_centre=None)


def load_group(spec: str) -> Group:
    """解析并构造群（带阶断言）"""
    return resolve_group(spec).build()


def default_catalog() -> List[CatalogEntry]:
    """默认语料库中的全部条目"""
    return [resolve_group(spec) for spec in Config.DEFAULT_CORPUS]


def load_corpus(path: Union[str, Path]) -> List[CatalogEntry]:
    """读取 YAML 语料库文件

    文件内容是一个列表，每项是群描述字符串，或形如
    {name, file, soluble, simple} 的映射（file 缺省时按 name 解析）。

    Raises:
        CommGraphError: 文件格式错误
        UnsupportedGroupError: 条目无法解析
    """
    path = Path(path)
    with open(path, 'r', encoding='utf-8') as f:
        data = yaml.safe_load(f)
    if isinstance(data, dict):
        data = data.get('groups')
    if not isinstance(data, list):
        raise CommGraphError(f"{path}: 语料库必须是群的列表")

    entries = []
    for item in data:
        if isinstance(item, str):
            entries.append(resolve_group(item))
            continue
        if not isinstance(item, dict) or 'name' not in item:
            raise CommGraphError(f"{path}: 无效的语料库条目 {item!r}")
        if 'file' not in item:
            entries.append(resolve_group(str(item['name'])))
            continue
        file_path = PathManager().find_group_file(item['file'])
        if file_path is None:
            raise UnsupportedGroupError(str(item['file']), SUPPORTED_SPECS)
        entries.append(CatalogEntry(
            str(item['name']), str(file_path), item.get('order'),
            soluble=item.get('soluble'), trivial_centre=item.get('trivial_centre'),
            simple=item.get('simple'),
        ))
    get_logger().debug(f"{path}: 读取 {len(entries)} 个群")
    return entries
