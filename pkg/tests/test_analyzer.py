# -*- coding: utf-8 -*-
"""分析流水线与报告"""

import json

import pytest

from src.analyzer import GroupAnalyzer
from src.analysis import Status
from src.config import Config
from src.errors import CentralElementError, NotAMemberError, PermutationParseError, UnsupportedGroupError
from src.report import render_reference_table, render_report, render_summary, to_json, write_json


@pytest.fixture(scope='module')
def analyzer():
    return GroupAnalyzer(show_progress=False)


@pytest.fixture(scope='module')
def alt5_report(analyzer):
    return analyzer.analyze('alt(5)')


def test_unknown_engine():
    with pytest.raises(ValueError):
        GroupAnalyzer(engine='dijkstra')


def test_alt5_report(alt5_report):
    report = alt5_report
    assert report.order == 60
    assert report.degree == 5
    assert report.centre_size == 1
    assert len(report.components) == 21
    assert report.max_component_diameter == 1
    assert len({c.orbit_id for c in report.components}) == 3
    assert all(c.is_isolated_subgroup for c in report.components)
    assert report.bijection == 'PASS'
    assert report.passed
    assert not report.failures
    assert report.prime_graph.components() == [[2], [3], [5]]


def test_stabilizer_index_matches_orbit_size(alt5_report):
    sizes = {}
    for c in alt5_report.components:
        sizes[c.orbit_id] = sizes.get(c.orbit_id, 0) + 1
    assert all(c.stabilizer_index == sizes[c.orbit_id] for c in alt5_report.components)


def test_report_json_schema(alt5_report):
    data = alt5_report.to_dict()
    assert list(data) == ['group', 'order', 'degree', 'centre_size', 'components', 'prime_graph',
                          'bijection', 'lemmas', 'max_component_diameter', 'timing_ms']
    assert set(data['components'][0]) == {'id', 'elements', 'vertices', 'diameter', 'primes',
                                          'is_isolated_subgroup', 'orbit_id'}
    assert set(data['prime_graph']) == {'primes', 'edges', 'components'}
    assert all(set(v) <= {'id', 'status', 'witness', 'note'} for v in data['lemmas'])
    json.loads(to_json(data))


def test_report_is_deterministic(analyzer, alt5_report):
    first = alt5_report.to_dict()
    second = analyzer.analyze('alt(5)').to_dict()
    first.pop('timing_ms')
    second.pop('timing_ms')
    assert to_json(first) == to_json(second)


def test_write_json(tmp_path, alt5_report):
    path = write_json(alt5_report.to_dict(), tmp_path / "nested" / "alt5.json")
    assert json.loads(path.read_text(encoding='utf-8'))['group'] == 'alt(5)'


def test_render_report(alt5_report):
    text = render_report(alt5_report)
    assert "分支数: 21" in text
    assert "main_diameter_bound" in text


def test_nontrivial_centre_report(analyzer):
    report = analyzer.analyze('dihedral(4)')
    assert report.centre_size == 2
    assert sum(c.element_count for c in report.components) == 6
    assert report.bijection == Status.NOT_APPLICABLE.value
    assert report.passed


def test_analyze_safe_records_errors(analyzer):
    result = analyzer.analyze_safe('sz(32)')
    assert not result['success']
    assert result['report'] is None
    assert 'sz(32)' in result['error']
    assert analyzer.get_stats()['errors'] >= 1


def test_verify_corpus_keeps_order():
    analyzer = GroupAnalyzer(show_progress=False)
    specs = ['sym(3)', 'sym(4)', 'dihedral(5)', 'alt(4)']
    results = analyzer.verify_corpus(specs, workers=2)
    assert [r['group'] for r in results] == specs
    assert all(r['success'] for r in results)
    stats = analyzer.get_stats()
    assert stats['groups_analyzed'] == 4
    assert stats['groups_passed'] == 4
    summary = render_summary(results)
    assert 'sym(3)' in summary and 'alt(4)' in summary


def test_reference_table(analyzer):
    rows = analyzer.reference_table({'alt(5)': 1, 'sym(5)': 5, 'sym(4)': 99})
    assert [row['match'] for row in rows] == [True, True, False]
    assert rows[1]['actual'] == 5
    assert '✗' in render_reference_table(rows)


def test_distance(analyzer):
    assert analyzer.distance('sym(4)', "(1,2)", "(3,4)") == 1
    assert analyzer.distance('sym(3)', "(1,2)", "(1,2,3)") is None
    assert analyzer.distance('sym(5)', "(1,2)", "(1,2,3,4,5)") is None


def test_distance_errors(analyzer):
    with pytest.raises(NotAMemberError):
        analyzer.distance('alt(4)', "(1,2)", "(1,2,3)")
    with pytest.raises(CentralElementError):
        analyzer.distance('sym(4)', "()", "(1,2)")
    with pytest.raises(PermutationParseError):
        analyzer.distance('sym(4)', "(1,5)", "(1,2)")
    with pytest.raises(UnsupportedGroupError):
        analyzer.distance('sym(42)', "(1,2)", "(1,2)")


def test_verify_corpus_stops_on_error(monkeypatch):
    from src.config import Config
    monkeypatch.setitem(Config.ERROR_CONFIG, 'continue_on_error', False)
    results = GroupAnalyzer(show_progress=False).verify_corpus(['sym(3)', 'sz(32)', 'sym(4)'], workers=1)
    assert [r['group'] for r in results] == ['sym(3)', 'sz(32)']
    assert results[1]['error']


def test_verify_corpus_survives_unexpected_exception(monkeypatch):
    analyzer = GroupAnalyzer(show_progress=False)
    original = analyzer.analyze

    def flaky(spec):
        if spec == 'sym(4)':
            raise RuntimeError("boom")
        return original(spec)

    monkeypatch.setattr(analyzer, 'analyze', flaky)
    results = analyzer.verify_corpus(['sym(3)', 'sym(4)', 'alt(4)'], workers=2)
    assert [r['group'] for r in results] == ['sym(3)', 'sym(4)', 'alt(4)']
    assert results[1]['report'] is None
    assert 'RuntimeError' in results[1]['error'] and 'boom' in results[1]['error']
    assert results[0]['report'] is not None and results[0]['success']
    assert results[2]['report'] is not None and results[2]['success']
    assert analyzer.get_stats()['errors'] == 1


@pytest.mark.slow
@pytest.mark.parametrize("spec", Config.DEFAULT_CORPUS)
def test_default_corpus_passes(analyzer, spec):
    report = analyzer.analyze(spec)
    assert not report.failures
    assert report.bijection in (Status.PASS.value, Status.NOT_APPLICABLE.value)
    if report.centre_size == 1:
        assert report.bijection == Status.PASS.value
    assert report.max_component_diameter <= Config.DIAMETER_BOUND
    assert report.passed


@pytest.mark.slow
@pytest.mark.parametrize("spec, expected", [('sz(8)', 2), ('m11', 5), ('psl3(4)', 5), ('sz(8):3', 7)])
def test_large_group_diameters(analyzer, spec, expected):
    report = analyzer.analyze(spec)
    assert report.max_component_diameter == expected
    assert report.bijection == Status.PASS.value


@pytest.mark.slow
def test_suzuki_sylow_two_is_isolated(analyzer):
    report = analyzer.analyze('sz(8)')
    two = [c for c in report.components if 2 in c.prime_set]
    # 65 个 Sylow 2-子群，每个阶为 64
    assert len(two) == 65
    assert all(list(c.prime_set) == [2] for c in two)
    assert all(c.element_count == 63 and c.is_isolated_subgroup for c in two)
    verdicts = {v.lemma_id: v.status for v in report.lemmas}
    assert verdicts['isolated_classification'] is Status.PASS


@pytest.mark.slow
def test_suzuki_field_extension_joins_two_and_three(analyzer):
    report = analyzer.analyze('sz(8):3')
    two = [c for c in report.components if 2 in c.prime_set]
    # 域自同构中心化 Sz(2)，出现 6 阶元素
    assert any(3 in c.prime_set for c in two)
    assert not report.failures


def test_abelian_group_explains_inapplicable_checks(analyzer):
    report = analyzer.analyze('alt(3)')
    assert report.centre_size == 3
    assert all(v.status is Status.NOT_APPLICABLE for v in report.lemmas)
    assert "全部检验不适用，|Z(G)| = 3" in render_report(report)
    summary = render_summary([{'group': 'alt(3)', 'report': report, 'error': None}])
    assert "alt(3): 全部检验不适用，|Z(G)| = 3" in summary


def test_summary_has_no_note_when_some_check_applies(alt5_report):
    summary = render_summary([{'group': 'alt(5)', 'report': alt5_report, 'error': None}])
    assert "全部检验不适用" not in summary
