# -*- coding: utf-8 -*-
"""置换运算与循环记号"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import DegreeMismatchError, PermutationParseError
from src.perm import (
    Permutation,
    commutes,
    compose,
    conjugate,
    element_order,
    format_cycles,
    inverse,
    parse_cycles,
    power,
)


def permutations(max_degree=7):
    return st.integers(min_value=1, max_value=max_degree).flatmap(
        lambda n: st.permutations(list(range(n))).map(Permutation)
    )


def permutation_pairs(max_degree=7):
    return st.integers(min_value=1, max_value=max_degree).flatmap(
        lambda n: st.tuples(st.permutations(list(range(n))), st.permutations(list(range(n))))
    ).map(lambda pair: (Permutation(pair[0]), Permutation(pair[1])))


def test_compose_applies_left_factor_first():
    p = parse_cycles("(1,2)", 3)
    q = parse_cycles("(2,3)", 3)
    assert compose(p, q).images == (2, 0, 1)
    assert format_cycles(p * q) == "(1,3,2)"
    assert format_cycles(q * p) == "(1,2,3)"


def test_parse_cycles():
    p = parse_cycles("(1,2,3)(4,5)", 5)
    assert p.images == (1, 2, 0, 4, 3)
    assert parse_cycles(" ( 1 , 2 ) ", 3).images == (1, 0, 2)


def test_parse_identity():
    assert parse_cycles("()", 4).is_identity()
    assert format_cycles(Permutation.identity(4)) == "()"


@pytest.mark.parametrize("text, position", [
    ("(1,2,2)", 5),   # 重复
    ("(1,6)", 3),     # 越界
    ("(1,2", 4),      # 未闭合
    ("(1,a)", 3),     # 非法字符
    ("1,2)", 0),      # 缺少左括号
])
def test_parse_errors_report_position(text, position):
    with pytest.raises(PermutationParseError) as info:
        parse_cycles(text, 5)
    assert info.value.position == position
    assert isinstance(info.value, ValueError)


def test_invalid_images_rejected():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])


def test_degree_mismatch():
    with pytest.raises(DegreeMismatchError):
        compose(Permutation.identity(3), Permutation.identity(4))
    with pytest.raises(DegreeMismatchError):
        commutes(Permutation.identity(3), Permutation.identity(4))


def test_element_order_and_cycle_type():
    p = parse_cycles("(1,2)(3,4,5)", 6)
    assert element_order(p) == 6
    assert p.cycle_type() == (3, 2, 1)
    assert element_order(Permutation.identity(3)) == 1


def test_power():
    p = parse_cycles("(1,2,3,4)", 4)
    assert format_cycles(power(p, 2)) == "(1,3)(2,4)"
    assert power(p, -1) == inverse(p)
    assert power(p, 4).is_identity()


def test_conjugate_relabels_cycles():
    x = parse_cycles("(1,2,3)", 4)
    g = parse_cycles("(3,4)", 4)
    assert format_cycles(conjugate(x, g)) == "(1,2,4)"


@given(permutations())
def test_inverse_cancels(p):
    assert compose(p, inverse(p)).is_identity()
    assert compose(inverse(p), p).is_identity()


@given(permutations())
def test_order_is_smallest_identity_power(p):
    n = element_order(p)
    assert power(p, n).is_identity()
    assert all(not power(p, k).is_identity() for k in range(1, n))


@given(permutation_pairs())
def test_commutes_matches_products(pair):
    p, q = pair
    assert commutes(p, q) == (p * q == q * p)
    assert commutes(p, q) == commutes(q, p)


@given(permutation_pairs())
def test_conjugate_is_g_inverse_x_g(pair):
    x, g = pair
    assert conjugate(x, g) == inverse(g) * x * g
    assert conjugate(x, g).cycle_type() == x.cycle_type()


@settings(max_examples=50)
@given(permutations(9))
def test_format_parses_back(p):
    assert parse_cycles(format_cycles(p), p.degree) == p
