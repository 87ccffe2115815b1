# -*- coding: utf-8 -*-
"""稳定子链、元素表、中心、共轭类与子群"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.combinatorics import Permutation as SympyPermutation
from sympy.combinatorics import PermutationGroup

from src.catalog import load_group
from src.errors import CommGraphError, GroupTooLargeError, NotAMemberError, NotNormalError, PermutationParseError
from src.group import (
    Group,
    center,
    centralizer,
    conjugacy_classes,
    enumerate_elements,
    is_abelian_subset,
    is_normal_subset,
    is_subgroup,
    load_group_file,
    normal_closure,
    require_normal,
)
from src.perm import Permutation, conjugate, element_order, parse_cycles


def sympy_order(group: Group) -> int:
    return PermutationGroup([SympyPermutation(list(g.images)) for g in group.generators]).order()


@pytest.mark.parametrize("spec", ['sym(5)', 'alt(6)', 'dihedral(7)', 'agl1(11)', 'psl2(7)', 'psl2(8)', 'm11'])
def test_chain_order_matches_sympy(spec):
    group = load_group(spec)
    assert group.order == sympy_order(group)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=2, max_value=7).flatmap(
    lambda n: st.lists(st.permutations(list(range(n))), min_size=1, max_size=3)))
def test_random_generators_match_sympy(images):
    group = Group([Permutation(p) for p in images])
    assert group.order == sympy_order(group)
    assert len(enumerate_elements(group)) == group.order


def test_membership():
    group = load_group('alt(5)')
    assert group.contains(parse_cycles("(1,2,3)", 5))
    assert group.contains(parse_cycles("(1,2)(3,4)", 5))
    assert not group.contains(parse_cycles("(1,2)", 5))
    assert not group.contains(Permutation.identity(6))


def test_trivial_group():
    group = Group([], degree=3)
    assert group.order == 1
    table = enumerate_elements(group)
    assert len(table) == 1
    assert center(group, table).tolist() == [0]


def test_element_table():
    group = load_group('sym(4)')
    table = enumerate_elements(group)
    assert len(table) == 24
    assert table.perm(0).is_identity()
    for x in range(len(table)):
        p = table.perm(x)
        assert table.id_of(p) == x
        assert table.orders[x] == element_order(p)
        assert table.perm(int(table.inverses[x])) == ~p
    a, b = table.id_of(parse_cycles("(1,2)", 4)), table.id_of(parse_cycles("(2,3,4)", 4))
    assert table.perm(table.multiply(a, b)) == table.perm(a) * table.perm(b)
    assert table.perm(table.conjugate(a, b)) == conjugate(table.perm(a), table.perm(b))
    with pytest.raises(NotAMemberError):
        enumerate_elements(load_group('alt(4)')).id_of(parse_cycles("(1,2)", 4))


def test_enumeration_cap():
    with pytest.raises(GroupTooLargeError) as info:
        enumerate_elements(load_group('sym(6)'), cap=100)
    assert info.value.order == 720


def test_cyclic_keys_identify_generators_of_same_subgroup():
    table = enumerate_elements(load_group('sym(4)'))
    key = table.cyclic_keys
    four, four_inverse = (table.id_of(parse_cycles(s, 4)) for s in ("(1,2,3,4)", "(1,4,3,2)"))
    square = table.id_of(parse_cycles("(1,3)(2,4)", 4))
    assert key[four] == key[four_inverse]
    assert key[four] != key[square]
    three, three_inverse = (table.id_of(parse_cycles(s, 4)) for s in ("(1,2,3)", "(1,3,2)"))
    assert key[three] == key[three_inverse]
    assert sorted(table.power_ids(four).tolist()) == sorted([0, four, square, four_inverse])


@pytest.mark.parametrize("spec, centre_size", [
    ('sym(3)', 1), ('sym(5)', 1), ('alt(5)', 1), ('dihedral(4)', 2), ('dihedral(5)', 1), ('psl2(7)', 1),
])
def test_center(spec, centre_size):
    group = load_group(spec)
    table = enumerate_elements(group)
    assert len(center(group, table)) == centre_size


def test_centralizer():
    group = load_group('sym(5)')
    table = enumerate_elements(group)
    x = table.id_of(parse_cycles("(1,2,3)", 5))
    assert len(centralizer(group, table, x)) == 6
    five = table.id_of(parse_cycles("(1,2,3,4,5)", 5))
    assert len(centralizer(group, table, five)) == 5


def test_conjugacy_classes_of_sym5():
    group = load_group('sym(5)')
    table = enumerate_elements(group)
    classes = conjugacy_classes(group, table)
    assert sorted(classes.sizes()) == [1, 10, 15, 20, 20, 24, 30]
    assert classes.classes[0].representative == 0
    for c in classes.classes:
        assert c.representative == c.members.min()
        assert classes.class_containing(int(c.members[-1])) is c


def test_alt5_has_five_classes():
    group = load_group('alt(5)')
    classes = conjugacy_classes(group, enumerate_elements(group))
    assert sorted(classes.sizes()) == [1, 12, 12, 15, 20]


def test_subgroup_predicates():
    group = load_group('sym(4)')
    table = enumerate_elements(group)
    even = [x for x in range(len(table)) if table.perm(x).cycle_type() in ((1, 1, 1, 1), (3, 1), (2, 2))]
    assert is_subgroup(table, even)
    assert is_normal_subset(group, table, even)

    transpositions = [table.id_of(parse_cycles(s, 4)) for s in ("(1,2)", "(1,3)")]
    assert not is_subgroup(table, transpositions)

    klein = [table.id_of(parse_cycles(s, 4)) for s in ("(1,2)(3,4)", "(1,3)(2,4)", "(1,4)(2,3)")]
    assert is_subgroup(table, klein)
    assert is_abelian_subset(table, klein)
    assert not is_abelian_subset(table, transpositions)


def test_normal_closure_and_require_normal():
    group = load_group('sym(4)')
    table = enumerate_elements(group)
    three = table.id_of(parse_cycles("(1,2,3)", 4))
    assert normal_closure(group, table, [three]).order == 12
    double = table.id_of(parse_cycles("(1,2)(3,4)", 4))
    klein = normal_closure(group, table, [double])
    assert klein.order == 4
    assert require_normal(group, table, klein) is klein
    assert normal_closure(group, table, [table.id_of(parse_cycles("(1,2)", 4))]).order == 24

    with pytest.raises(NotNormalError):
        require_normal(group, table, [table.id_of(parse_cycles("(1,2)", 4))])
    with pytest.raises(NotNormalError):
        require_normal(group, table, [three])


def test_load_group_file(tmp_path):
    path = tmp_path / "s4.txt"
    path.write_text("# 对称群 S4\ndegree 4\n(1,2,3,4)\n\n(1,2)\n", encoding='utf-8')
    group = load_group_file(path)
    assert group.name == "s4"
    assert group.degree == 4
    assert group.order == 24


def test_load_group_file_errors(tmp_path):
    missing_degree = tmp_path / "bad.txt"
    missing_degree.write_text("(1,2)\n", encoding='utf-8')
    with pytest.raises(CommGraphError):
        load_group_file(missing_degree)

    bad_generator = tmp_path / "bad_generator.txt"
    bad_generator.write_text("degree 3\n(1,4)\n", encoding='utf-8')
    with pytest.raises(PermutationParseError) as info:
        load_group_file(bad_generator)
    assert ":2:" in str(info.value)
    assert info.value.position == 3


def test_mask_helpers():
    group = load_group('sym(3)')
    table = enumerate_elements(group)
    a3 = normal_closure(group, table, [table.id_of(parse_cycles("(1,2,3)", 3))])
    mask = a3.mask(len(table))
    assert mask.sum() == 3
    assert np.array_equal(np.flatnonzero(mask), a3.members)
