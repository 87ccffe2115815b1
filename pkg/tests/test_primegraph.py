# -*- coding: utf-8 -*-
"""素数图与分支轨道的一一对应"""

import pytest

from src.errors import NonTrivialCentreError
from src.primegraph import PrimeGraph, build_prime_graph, conjugation_orbits_of_components, verify_bijection


def prime_graph(ctx):
    return build_prime_graph(ctx.group, ctx.table, ctx.classes)


@pytest.mark.parametrize("spec, edges, components", [
    ('alt(5)', [], [[2], [3], [5]]),
    ('sym(5)', [(2, 3)], [[2, 3], [5]]),
    ('psl2(7)', [], [[2], [3], [7]]),
    ('sym(6)', [(2, 3)], [[2, 3], [5]]),
    ('frobenius_20', [], [[2], [5]]),
    ('agl1(7)', [(2, 3)], [[2, 3], [7]]),
])
def test_prime_graph(context, spec, edges, components):
    pg = prime_graph(context(spec))
    assert pg.edges == edges
    assert pg.components() == components
    assert not pg.is_connected


def test_prime_graph_of_sym7_is_connected_except_seven(context):
    pg = prime_graph(context('sym(7)'))
    assert pg.primes == [2, 3, 5, 7]
    assert pg.edges == [(2, 3), (2, 5)]
    assert pg.components() == [[2, 3, 5], [7]]


def test_prime_graph_to_dict():
    pg = PrimeGraph([2, 3, 5], [(2, 3)])
    assert pg.to_dict() == {'primes': [2, 3, 5], 'edges': [[2, 3]], 'components': [[2, 3], [5]]}
    assert PrimeGraph([2, 3], [(2, 3)]).is_connected
    assert PrimeGraph([], []).is_connected


def test_component_orbits_of_alt5(context):
    ctx = context('alt(5)')
    partition = conjugation_orbits_of_components(ctx.group, ctx.graph)
    assert sorted(map(len, partition.orbits)) == [5, 6, 10]
    assert sorted(partition.pi_sets) == [[2], [3], [5]]
    assert len(partition.orbit_of()) == 21


@pytest.mark.parametrize("spec", ['sym(3)', 'sym(4)', 'alt(5)', 'sym(5)', 'psl2(7)', 'psl2(8)', 'frobenius_20', 'sz(2)'])
def test_bijection_holds(context, spec):
    ctx = context(spec)
    verdict = verify_bijection(ctx.group, ctx.graph, prime_graph(ctx))
    assert verdict.passed, verdict.detail
    assert len(verdict.mapping) == len(prime_graph(ctx).components())


def test_bijection_detects_mismatch(context):
    ctx = context('alt(5)')
    wrong = PrimeGraph([2, 3, 5], [(2, 3)])
    verdict = verify_bijection(ctx.group, ctx.graph, wrong)
    assert verdict.status == 'FAIL'
    assert verdict.detail


def test_bijection_requires_trivial_centre(context):
    ctx = context('dihedral(4)')
    with pytest.raises(NonTrivialCentreError):
        verify_bijection(ctx.group, ctx.graph, prime_graph(ctx))
