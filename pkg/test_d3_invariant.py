#!/usr/bin/env python3
"""
d3 不變量測試
"""

from fractions import Fraction

import pytest

from d3_invariant import (
    D3Value, compute_report, cross_validate, d3_closed_form, d3_from_matrix, d3_published_form,
    matrix_components,
)
from families import FAMILIES, FamilyId, FamilyParams, get_family
from utils.errors import ParameterDomainError


def _grid(bound):
    for family_id, family_def in FAMILIES.items():
        for params in family_def.grid(bound):
            yield family_id, params


@pytest.mark.parametrize("family,params,d", [
    ('I', FamilyParams(p=2, u=1), 3),
    ('III', FamilyParams(u=0), 2),
    ('II-III', FamilyParams(u=1, v=0), 5),
    ('II', FamilyParams(q=2, u=1), 1),
    ('I-I-I', FamilyParams(p=2, q=3, r=4, u=1, v=1, w=1), 53),
    ('I-I-I', FamilyParams(p=5, q=6, r=8, u=1, v=2, w=1), 520),
])
def test_closed_form_examples(family, params, d):
    assert d3_closed_form(family, params).d == d
    assert d3_from_matrix(family, params).d == d


@pytest.mark.parametrize("family,params,parts", [
    ('I', FamilyParams(p=2, u=1), {'c2': 8, 'chi': 3, 'sigma': 0, 'k': 2}),
    ('III', FamilyParams(u=0), {'c2': 6, 'chi': 5, 'sigma': -2, 'k': 1}),
    ('II', FamilyParams(q=2, u=1), {'c2': 2, 'chi': 3, 'sigma': 2, 'k': 3}),
])
def test_matrix_components(family, params, parts):
    components = matrix_components(family, params)
    for key, value in parts.items():
        assert components[key] == value


def test_d3_value():
    value = D3Value(3)
    assert value.d3 == Fraction(5, 2)
    assert (value.numerator, value.denominator) == (5, 2)
    assert str(value) == "d=3 (d3=5/2)"
    assert D3Value(2) < D3Value(3)


@pytest.mark.parametrize("family_id,params", list(_grid(6)))
def test_closed_form_equals_matrix(family_id, params):
    closed = d3_closed_form(family_id, params)
    assert closed == d3_from_matrix(family_id, params)
    assert closed.d >= 1
    parts = matrix_components(family_id, params)
    # 4(d3 - k) + 2χ + 3σ = c²
    assert 4 * (closed.d3 - parts['k']) + 2 * parts['chi'] + 3 * parts['sigma'] == parts['c2']
    assert (2 * closed.d3).denominator == 1 and (2 * closed.d3).numerator % 2 == 1


@pytest.mark.parametrize("family_id", [f for f in FAMILIES if f != FamilyId.II_I])
def test_monotone_in_each_parameter(family_id):
    family_def = get_family(family_id)
    for params in family_def.grid(6):
        base = d3_closed_form(family_id, params).d
        for name in family_def.param_names:
            bumped = params.replace(**{name: getattr(params, name) + 1})
            try:
                value = d3_closed_form(family_id, bumped).d
            except ParameterDomainError:
                continue
            assert value >= base


def test_ii_i_monotone_in_domain():
    for params in get_family('II-I').grid(7):
        base = d3_closed_form('II-I', params).d
        for name in ('p', 'u', 'v'):
            assert d3_closed_form('II-I', params.replace(**{name: getattr(params, name) + 1})).d > base


def test_relaxed_iii_i_domain():
    with pytest.raises(ParameterDomainError):
        d3_closed_form('III-I', FamilyParams(p=2, u=1, v=0))
    assert d3_closed_form('III-I', FamilyParams(p=2, u=1, v=0), relaxed=True).d == 9


def test_published_forms():
    # II-III 的印刷式把 uv 項寫成 4uv
    params = FamilyParams(u=1, v=1)
    assert d3_closed_form('II-III', params).d == 2 + 6 + 8 + 3 + 3
    assert d3_published_form('II-III', params).d == 2 + 6 + 4 + 3 + 3
    # v = 0 時兩者一致
    assert d3_published_form('II-III', FamilyParams(u=1, v=0)).d == 5
    assert d3_published_form('I', FamilyParams(p=3, u=2)) == d3_closed_form('I', FamilyParams(p=3, u=2))


def test_compute_report():
    report = compute_report('I', FamilyParams(p=2, u=1))
    assert report['d'] == '3'
    assert (report['d3_numerator'], report['d3_denominator']) == ('5', '2')
    assert report['chi'] == '3'
    assert report['sigma'] == '0'
    assert report['det'] == '-1'
    assert report['c2'] == '8'
    assert report['k'] == '2'
    assert report['punctures'] == '4'
    assert report['monodromy'] == "a^2 · b^-1 · c1^-1 · d1^1"


def test_cross_validate_small_grid():
    report = cross_validate(2, workers=1)
    assert report['success']
    assert report['failures'] == []
    assert report['checked']['I'] == 2
    assert report['checked']['II'] == 2
    assert report['checked']['III'] == 3
    assert report['checked']['II-III'] == 6


def test_cross_validate_reports_known_discrepancies():
    report = cross_validate(4, workers=1)
    assert report['success']
    families = {item['family'] for item in report['known_discrepancies']}
    assert {'III-I', 'II-III'} <= families
    quantities = {(item['family'], item['quantity']) for item in report['known_discrepancies']}
    assert ('III-I', 'sigma') in quantities
    assert ('II-III', 'd') in quantities


def test_cross_validate_rejects_small_bound():
    with pytest.raises(ValueError):
        cross_validate(1)
