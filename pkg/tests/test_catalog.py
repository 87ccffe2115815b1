# -*- coding: utf-8 -*-
"""目录群构造、群描述解析与语料库读取"""

import pytest

from src.catalog import (
    CatalogEntry,
    default_catalog,
    load_corpus,
    load_group,
    psl2,
    resolve_group,
    suzuki,
)
from src.config import Config
from src.errors import CatalogOrderError, CommGraphError, UnsupportedGroupError
from src.group import Group
from src.perm import parse_cycles


@pytest.mark.parametrize("spec, order, degree", [
    ('sym(5)', 120, 5),
    ('alt(4)', 12, 4),
    ('dihedral(5)', 10, 5),
    ('frobenius_20', 20, 5),
    ('agl1(7)', 42, 7),
    ('psl2(7)', 168, 8),
    ('psl2(8)', 504, 9),
    ('psl2(9)', 360, 10),
    ('psl2(13)', 1092, 14),
    ('pgl2(7)', 336, 8),
    ('pgl2(9)', 720, 10),
    ('m10', 720, 10),
    ('aut(alt(6))', 1440, 10),
    ('sz(2)', 20, 5),
    ('m11', 7920, 11),
])
def test_catalog_orders(spec, order, degree):
    group = load_group(spec)
    assert group.order == order
    assert group.degree == degree
    assert group.name == spec


@pytest.mark.slow
@pytest.mark.parametrize("spec, order, degree", [
    ('psl3(4)', 20160, 21),
    ('pgl3(4)', 60480, 21),
    ('sz(8)', 29120, 65),
    ('sz(8):3', 87360, 65),
    ('m12', 95040, 12),
])
def test_large_catalog_orders(spec, order, degree):
    group = load_group(spec)
    assert group.order == order
    assert group.degree == degree


def test_spec_normalisation():
    assert resolve_group(' PSL2( 7 ) ').name == 'psl2(7)'
    assert resolve_group('Aut(Alt(6))').name == 'aut(alt(6))'


def test_psl2_acts_on_projective_line():
    group = psl2(5)
    assert group.degree == 6
    assert group.order == 60


def test_suzuki_ovoid_has_q_squared_plus_one_points():
    assert suzuki(2).degree == 5


@pytest.mark.parametrize("spec", [
    'sym(10)', 'alt(2)', 'dihedral(2)', 'agl1(9)', 'psl2(6)', 'psl2(64)', 'psl3(3)', 'sz(32)', 'sz(2):3',
    'foo(3)', 'no_such_group.txt',
])
def test_unsupported_specs(spec):
    with pytest.raises(UnsupportedGroupError) as info:
        resolve_group(spec)
    assert info.value.supported


def test_entry_metadata():
    entry = resolve_group('alt(6)')
    assert entry.expected_order == 360
    assert entry.simple and not entry.soluble and entry.trivial_centre
    assert entry.metadata()['family'] == ('psl2', 9)
    assert resolve_group('sym(4)').soluble
    assert resolve_group('pgl2(9)').family == ('pgl2', 9)
    assert resolve_group('sz(8)').isolated_sylow_primes == (2,)
    assert not resolve_group('dihedral(4)').trivial_centre
    assert resolve_group('psl2(7)').to_dict()['order'] == 168


def test_order_assertion():
    entry = CatalogEntry('fake', 'builtin:test', 7, soluble=True, trivial_centre=True,
                         builder=lambda: Group([parse_cycles("(1,2)", 3)]))
    with pytest.raises(CatalogOrderError) as info:
        entry.build()
    assert info.value.expected == 7
    assert info.value.actual == 2


def test_centre_assertion():
    entry = resolve_group('dihedral(4)')
    entry.check_centre(2)
    with pytest.raises(CatalogOrderError):
        entry.check_centre(1)
    with pytest.raises(CatalogOrderError):
        resolve_group('sym(5)').check_centre(2)


def test_default_catalog():
    entries = default_catalog()
    assert [e.name for e in entries] == Config.DEFAULT_CORPUS
    assert len(entries) >= 20
    assert all(e.trivial_centre for e in entries)


def test_generator_file_spec(tmp_path):
    path = tmp_path / "d4.txt"
    path.write_text("degree 4\n(1,2,3,4)\n(2,4)\n", encoding='utf-8')
    entry = resolve_group(str(path))
    assert entry.name == 'd4'
    assert entry.expected_order is None and entry.soluble is None
    assert entry.build().order == 8


def test_load_corpus(tmp_path):
    generators = tmp_path / "d4.txt"
    generators.write_text("degree 4\n(1,2,3,4)\n(2,4)\n", encoding='utf-8')
    corpus = tmp_path / "corpus.yaml"
    corpus.write_text(
        "groups:\n"
        "  - sym(4)\n"
        "  - name: psl2(7)\n"
        f"  - name: D4\n    file: {generators}\n    soluble: true\n    order: 8\n    trivial_centre: false\n",
        encoding='utf-8',
    )
    entries = load_corpus(corpus)
    assert [e.name for e in entries] == ['sym(4)', 'psl2(7)', 'D4']
    assert entries[2].soluble is True
    assert entries[2].trivial_centre is False
    assert entries[2].build().order == 8


def test_load_corpus_rejects_bad_files(tmp_path):
    corpus = tmp_path / "corpus.yaml"
    corpus.write_text("just a string\n", encoding='utf-8')
    with pytest.raises(CommGraphError):
        load_corpus(corpus)

    corpus.write_text("- {order: 3}\n", encoding='utf-8')
    with pytest.raises(CommGraphError):
        load_corpus(corpus)

    corpus.write_text("- name: x\n  file: missing.txt\n", encoding='utf-8')
    with pytest.raises(UnsupportedGroupError):
        load_corpus(corpus)
