# -*- coding: utf-8 -*-
"""结构性结论校验"""

import numpy as np
import pytest
from sympy import primefactors

from src.analysis import (
    _class_transversal,
    LemmaVerdict,
    Status,
    check_collapse_equivalence,
    check_component_bijection,
    check_family_bounds,
    check_frobenius,
    check_involution_lemma,
    check_isolated,
    check_isolated_classification,
    check_isolated_components,
    check_normal_components,
    check_outside2_lemma,
    check_outside_lemma,
    check_prime_reduction,
    check_strongly_embedded,
    check_williams,
    is_isolated_by_definition,
    run_all_checks,
    scan_frobenius,
    scan_outside2_lemma,
    scan_outside_lemma,
    verify_main_theorem,
)
from src.catalog import load_group
from src.errors import NonTrivialCentreError, NotNormalError
from src.group import normal_closure


def component_of(ctx, element):
    return ctx.graph.component_of_element(element)


def closure(ctx, element):
    return normal_closure(ctx.group, ctx.table, [element])


def assert_no_failures(verdicts):
    failures = [v for v in verdicts if v.failed]
    assert not failures, [(v.lemma_id, v.witness) for v in failures]


# ---------------------------------------------------------------------------
# LemmaVerdict
# ---------------------------------------------------------------------------

def test_fail_requires_witness():
    with pytest.raises(ValueError):
        LemmaVerdict('x', 'g', Status.FAIL)
    verdict = LemmaVerdict('x', 'g', 'FAIL', witness={'element': '(1,2)'})
    assert verdict.failed
    assert verdict.to_dict() == {'id': 'x', 'status': 'FAIL', 'witness': {'element': '(1,2)'}}


def test_only_fail_carries_witness():
    with pytest.raises(ValueError):
        LemmaVerdict('x', 'g', Status.PASS, witness={'a': 1})
    with pytest.raises(ValueError):
        LemmaVerdict('x', 'g', Status.NOT_APPLICABLE, witness={'a': 1})
    assert LemmaVerdict('x', 'g', Status.NOT_APPLICABLE, note='n').to_dict() == {
        'id': 'x', 'status': 'NOT_APPLICABLE', 'note': 'n'}


# ---------------------------------------------------------------------------
# 孤立子群与强嵌入
# ---------------------------------------------------------------------------

def test_klein_component_of_alt5_is_isolated(context, element_id):
    ctx = context('alt(5)')
    c = component_of(ctx, element_id(ctx, "(1,2)(3,4)"))
    result = check_isolated(ctx, c)
    assert result == {'is_subgroup': True, 'is_isolated_subgroup': True}
    assert is_isolated_by_definition(ctx, ctx.graph.component_elements(c))


def test_transposition_in_sym3_is_isolated(context, element_id):
    ctx = context('sym(3)')
    c = component_of(ctx, element_id(ctx, "(1,2)"))
    assert ctx.graph.component_elements(c).tolist() == [element_id(ctx, "(1,2)")]
    assert check_isolated(ctx, c)['is_isolated_subgroup']


def test_involution_component_of_sym5_is_not_a_subgroup(context, element_id):
    ctx = context('sym(5)')
    c = component_of(ctx, element_id(ctx, "(1,2)"))
    assert set(ctx.graph.partition.reports[c].prime_set) == {2, 3}
    assert check_isolated(ctx, c) == {'is_subgroup': False, 'is_isolated_subgroup': False}


def test_isolated_requires_trivial_centre(context):
    with pytest.raises(NonTrivialCentreError):
        check_isolated(context('dihedral(4)'), 0)


@pytest.mark.parametrize("spec", ['sym(3)', 'sym(4)', 'alt(5)', 'sym(5)', 'psl2(7)', 'frobenius_20'])
def test_isolated_components_agree_with_definition(context, spec):
    assert check_isolated_components(context(spec)).status is Status.PASS


def test_strongly_embedded_klein_stabilizer(context, element_id):
    ctx = context('alt(5)')
    c = component_of(ctx, element_id(ctx, "(1,2)(3,4)"))
    stabilizer = ctx.component_stabilizer(c)
    assert stabilizer.order == 12
    assert stabilizer.index == 5
    assert check_strongly_embedded(ctx, c).status is Status.PASS


def test_strongly_embedded_not_applicable_for_normal_components(context, element_id):
    ctx = context('sym(5)')
    c = component_of(ctx, element_id(ctx, "(1,2)"))
    assert check_strongly_embedded(ctx, c).status is Status.NOT_APPLICABLE

    ctx = context('sym(3)')
    c = component_of(ctx, element_id(ctx, "(1,2,3)"))
    assert check_strongly_embedded(ctx, c).status is Status.NOT_APPLICABLE


# ---------------------------------------------------------------------------
# 对合、正规分支、素数阶路径约化、压缩
# ---------------------------------------------------------------------------

def test_involution_lemma(context):
    assert check_involution_lemma(context('sym(5)')).status is Status.PASS
    assert check_involution_lemma(context('sym(6)')).status is Status.PASS
    assert check_involution_lemma(context('alt(5)')).status is Status.NOT_APPLICABLE


@pytest.mark.parametrize("spec", ['sym(4)', 'sym(5)', 'alt(6)', 'psl2(7)'])
def test_normal_components(context, spec):
    assert check_normal_components(context(spec)).status is Status.PASS


def test_normal_components_without_whole_class(context):
    # Alt(5) 的每个共轭类都分散在多个分支中
    assert check_normal_components(context('alt(5)')).status is Status.NOT_APPLICABLE


@pytest.mark.parametrize("spec", ['sym(4)', 'sym(5)', 'alt(6)', 'psl2(11)'])
def test_prime_reduction_matches_full_bfs(context, spec):
    assert check_prime_reduction(context(spec)).status is Status.PASS


@pytest.mark.parametrize("spec", ['sym(3)', 'sym(4)', 'dihedral(4)', 'alt(5)', 'sym(5)'])
def test_collapse_equivalence(context, spec):
    assert check_collapse_equivalence(context(spec)).status is Status.PASS


# ---------------------------------------------------------------------------
# 正规子群外的元素
# ---------------------------------------------------------------------------

def test_outside_lemma_sym5(context, element_id):
    ctx = context('sym(5)')
    alt5 = closure(ctx, element_id(ctx, "(1,2,3)"))
    assert alt5.order == 60
    assert check_outside_lemma(ctx, alt5, element_id(ctx, "(1,2,3)")).status is Status.PASS
    # 5-循环在 Alt(5) 中分裂为两个共轭类
    assert check_outside_lemma(ctx, alt5, element_id(ctx, "(1,2,3,4,5)")).status is Status.NOT_APPLICABLE


def test_outside_lemma_whole_group_is_vacuous(context, element_id):
    ctx = context('alt(5)')
    whole = np.arange(ctx.order)
    verdict = check_outside_lemma(ctx, whole, element_id(ctx, "(1,2,3)"))
    assert verdict.status is Status.PASS
    assert verdict.note


def test_outside_lemma_rejects_non_normal(context, element_id):
    ctx = context('alt(5)')
    cyclic = ctx.table.power_ids(element_id(ctx, "(1,2,3)"))
    with pytest.raises(NotNormalError):
        check_outside_lemma(ctx, cyclic, element_id(ctx, "(1,2,3)"))


@pytest.mark.parametrize("spec", ['sym(4)', 'sym(5)', 'frobenius_20', 'pgl2(7)'])
def test_outside_scans(context, spec):
    ctx = context(spec)
    assert scan_outside_lemma(ctx).status is not Status.FAIL
    assert scan_outside2_lemma(ctx).status is not Status.FAIL


def test_outside_scans_find_instances_in_sym5(context):
    verdict = scan_outside_lemma(context('sym(5)'))
    assert verdict.status is Status.PASS
    assert "实例" in verdict.note


def test_outside2_single_instance(context, element_id):
    ctx = context('sym(4)')
    klein = closure(ctx, element_id(ctx, "(1,2)(3,4)"))
    verdict = check_outside2_lemma(ctx, klein, element_id(ctx, "(1,2)"), element_id(ctx, "(1,2,3,4)"), 2)
    assert verdict.status is not Status.FAIL
    assert check_outside2_lemma(ctx, klein, element_id(ctx, "(1,2)"),
                                element_id(ctx, "(1,2)(3,4)"), 2).status is Status.NOT_APPLICABLE


def test_class_transversal_reaches_every_member(context):
    ctx = context('sym(5)')
    t = ctx.table
    for index, c in enumerate(ctx.classes.classes):
        transversal = _class_transversal(ctx, index)
        assert set(transversal) == {int(y) for y in np.flatnonzero(ctx.classes.class_of == index)}
        assert all(t.conjugate(c.representative, g) == y for y, g in transversal.items())


@pytest.mark.parametrize("spec", ['sym(4)', 'alt(4)'])
def test_outside2_scan_matches_exhaustive_search(context, spec):
    ctx = context(spec)
    found = False
    for k in ctx.normal_subgroups:
        k_mask = k.mask(ctx.order)
        for a in range(1, ctx.order):
            for x in np.flatnonzero(~k_mask):
                for p in primefactors(k.order):
                    verdict = check_outside2_lemma(ctx, k, a, int(x), int(p))
                    assert not verdict.failed, verdict.witness
                    found = found or verdict.status is Status.PASS
    expected = Status.PASS if found else Status.NOT_APPLICABLE
    assert scan_outside2_lemma(ctx).status is expected


def test_outside_checks_not_applicable_with_centre(context, element_id):
    ctx = context('dihedral(4)')
    rotations = closure(ctx, element_id(ctx, "(1,2,3,4)"))
    assert check_outside_lemma(ctx, rotations, element_id(ctx, "(2,4)")).status is Status.NOT_APPLICABLE
    assert scan_outside_lemma(ctx).status is Status.NOT_APPLICABLE
    assert scan_outside2_lemma(ctx).status is Status.NOT_APPLICABLE


# ---------------------------------------------------------------------------
# Frobenius 判别
# ---------------------------------------------------------------------------

def test_frobenius_sym3(context, element_id):
    ctx = context('sym(3)')
    kernel = closure(ctx, element_id(ctx, "(1,2,3)"))
    assert kernel.order == 3
    assert check_frobenius(ctx, kernel)
    assert check_frobenius(ctx, kernel, complement=[element_id(ctx, "(1,2)")])


def test_frobenius_alt4(context, element_id):
    ctx = context('alt(4)')
    klein = closure(ctx, element_id(ctx, "(1,2)(3,4)"))
    assert klein.order == 4
    assert check_frobenius(ctx, klein)
    assert check_frobenius(ctx, klein, complement=ctx.table.power_ids(element_id(ctx, "(1,2,3)")))


def test_frobenius_sym4_fails(context, element_id):
    ctx = context('sym(4)')
    klein = closure(ctx, element_id(ctx, "(1,2)(3,4)"))
    assert not check_frobenius(ctx, klein)


def test_frobenius_rejects_non_normal(context, element_id):
    ctx = context('sym(4)')
    with pytest.raises(NotNormalError):
        check_frobenius(ctx, [element_id(ctx, "(1,2)")])


@pytest.mark.parametrize("spec", ['sym(3)', 'alt(4)', 'sym(4)', 'frobenius_20', 'agl1(7)', 'dihedral(5)'])
def test_frobenius_scan(context, spec):
    assert scan_frobenius(context(spec)).status is Status.PASS


def test_frobenius_scan_simple_group(context):
    assert scan_frobenius(context('alt(5)')).status is Status.NOT_APPLICABLE


# ---------------------------------------------------------------------------
# 直径与族
# ---------------------------------------------------------------------------

def test_main_theorem_accepts_bare_group():
    result = verify_main_theorem(load_group('psl2(7)'))
    assert result['verdict'].status is Status.PASS
    assert result['max_component_diameter'] <= 5


def test_main_theorem_requires_trivial_centre(context):
    with pytest.raises(NonTrivialCentreError):
        verify_main_theorem(context('dihedral(4)'))


def test_williams(context):
    assert check_williams(context('alt(5)')).status is Status.PASS
    assert check_williams(context('sym(5)')).status is Status.PASS
    assert check_williams(context('psl2(7)')).status is Status.PASS
    assert check_williams(context('sym(4)')).status is Status.NOT_APPLICABLE


@pytest.mark.parametrize("spec", ['alt(5)', 'alt(6)', 'psl2(7)', 'psl2(8)', 'psl2(11)'])
def test_isolated_classification(context, spec):
    assert check_isolated_classification(context(spec)).status is Status.PASS


def test_isolated_classification_needs_simple_group(context):
    assert check_isolated_classification(context('sym(5)')).status is Status.NOT_APPLICABLE


@pytest.mark.parametrize("spec", ['alt(5)', 'psl2(7)', 'psl2(8)', 'psl2(11)', 'alt(6)', 'pgl2(7)'])
def test_family_bounds(context, spec):
    assert check_family_bounds(context(spec)).status is Status.PASS


def test_psl2_small_field_diameters(context):
    assert all(d == 1 for d in context('alt(5)').graph.diameters('reduced').values())
    for spec in ('psl2(7)', 'psl2(11)'):
        assert max(context(spec).graph.diameters('reduced').values()) <= 5


@pytest.mark.slow
def test_psl2_13_involution_component_has_diameter_six(context):
    ctx = context('psl2(13)')
    diameters = ctx.graph.diameters('reduced')
    two = [r.id for r in ctx.graph.partition.reports if 2 in r.prime_set]
    assert two
    assert all(diameters[c] == 6 for c in two)
    assert check_family_bounds(ctx).status is Status.PASS


@pytest.mark.slow
def test_suzuki_involution_component(context):
    ctx = context('sz(8)')
    assert ctx.order == 29120
    diameters = ctx.graph.diameters('reduced')
    assert max(diameters.values()) <= 2
    two = [r.id for r in ctx.graph.partition.reports if 2 in r.prime_set]
    assert all(diameters[c] == 2 for c in two)


def test_component_bijection(context):
    assert check_component_bijection(context('sym(5)')).status is Status.PASS
    assert check_component_bijection(context('dihedral(4)')).status is Status.NOT_APPLICABLE


# ---------------------------------------------------------------------------
# 全部检验
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("spec", ['sym(3)', 'sym(4)', 'alt(4)', 'alt(5)', 'sym(5)', 'dihedral(5)',
                                  'frobenius_20', 'sz(2)', 'psl2(7)', 'psl2(8)', 'alt(6)', 'sym(6)'])
def test_run_all_checks_has_no_failures(context, spec):
    verdicts = run_all_checks(context(spec))
    assert len(verdicts) == 14
    assert verdicts[0].lemma_id == 'main_diameter_bound'
    assert_no_failures(verdicts)


def test_run_all_checks_with_nontrivial_centre(context):
    verdicts = run_all_checks(context('dihedral(4)'))
    assert_no_failures(verdicts)
    by_id = {v.lemma_id: v.status for v in verdicts}
    assert by_id['main_diameter_bound'] is Status.NOT_APPLICABLE
    assert by_id['component_bijection'] is Status.NOT_APPLICABLE
    assert by_id['involution_distance'] is Status.NOT_APPLICABLE
