#!/usr/bin/env python3
"""
交叉形式測試
"""

import json

import pytest
import sympy

from exact_linalg import RationalMatrix, determinant, quadratic_form_inverse, rank, signature
from families import FAMILIES, FamilyId, FamilyParams, get_family
from intersection_forms import (
    PUBLISHED_TABLE_ROWS, c_squared, chain_boundary_matrix, chain_homology_ranks, check_handle_lattice,
    chern_vector, euler_characteristic, expected_invariants, form_invariants, handle_data,
    handle_lattice_chern_vector, handle_lattice_matrix, intersection_matrix, matrix_to_json,
    published_discrepancies, trailing_inverse_block,
)
from utils.errors import ParameterDomainError, UnsupportedFamilyError


def _grid(bound):
    for family_id, family_def in FAMILIES.items():
        for params in family_def.grid(bound):
            yield family_id, params


GRID = list(_grid(6))


def test_euler_characteristic_examples():
    assert euler_characteristic('I', FamilyParams(p=4, u=1)) == 7
    assert euler_characteristic('III', FamilyParams(u=3)) == 5
    assert euler_characteristic('I-I-I', FamilyParams(p=2, q=3, r=5, u=1, v=1, w=1)) == 9


def test_form_invariant_examples():
    assert form_invariants(intersection_matrix('I', FamilyParams(p=5, u=3))) == (1, 0)
    assert form_invariants(intersection_matrix('II', FamilyParams(q=4, u=2))) == (1, 4)
    assert form_invariants(intersection_matrix('III', FamilyParams(u=0))) == (-1, -2)


def test_c_squared_examples():
    assert c_squared('I', FamilyParams(p=3, u=2)) == 96
    assert c_squared('III', FamilyParams(u=1)) == 54
    # 4u²p(p-1)+4v²q(q-1)+4w²r(r-1)+8uvq(p-1)+8uwr(p-1)+8vwr(q-1)
    assert c_squared('I-I-I', FamilyParams(p=2, q=3, r=4, u=1, v=1, w=1)) == 8 + 24 + 48 + 24 + 32 + 64


def test_degenerate_matrices():
    assert intersection_matrix('I', FamilyParams(p=2, u=1)).to_lists() == [[-2, -1], [-1, 0]]
    q = intersection_matrix('II', FamilyParams(q=2, u=1))
    assert q.shape == (2, 2)
    assert determinant(q) == 1
    assert intersection_matrix('III', FamilyParams(u=0)).shape == (4, 4)


@pytest.mark.parametrize("family_id,params", GRID)
def test_invariants_match_closed_forms(family_id, params):
    q = intersection_matrix(family_id, params)
    assert q.is_symmetric()
    det, sigma = form_invariants(q)
    expected = expected_invariants(family_id, params)
    assert det == expected['det']
    assert sigma == expected['sigma']
    assert c_squared(family_id, params) == expected['c2']
    assert q.n == expected['dim'] == expected['chi'] - 1
    assert len(chern_vector(family_id, params)) == q.n


@pytest.mark.parametrize("family_id,params", GRID)
def test_handle_lattice_agrees(family_id, params):
    assert handle_lattice_matrix(family_id, params) == intersection_matrix(family_id, params)
    w = chern_vector(family_id, params)
    lattice_w = handle_lattice_chern_vector(family_id, params)
    assert lattice_w in (w, [-x for x in w])
    assert check_handle_lattice(family_id, params) is None


@pytest.mark.parametrize("family_id,params", GRID)
def test_trailing_inverse_blocks(family_id, params):
    family_def = get_family(family_id)
    values = params.as_dict()
    block = trailing_inverse_block(family_id, params)
    assert block == [[x for x in row] for row in family_def.trailing_inverse(values)]


def test_trailing_block_matches_sympy():
    params = FamilyParams(p=2, q=4, r=6, u=1, v=1, w=1)
    q = intersection_matrix('I-I-I', params)
    inv = sympy.Matrix(q.to_lists()).inv()
    n = q.n
    expected = [[int(inv[i, j]) for j in range(n - 3, n)] for i in range(n - 3, n)]
    assert trailing_inverse_block('I-I-I', params) == expected
    assert expected == [[2, 4, 6], [4, 12, 18], [6, 18, 30]]


def test_i_i_trailing_block_is_cofactor_block():
    p, q = 3, 5
    params = FamilyParams(p=p, q=q, u=1, v=1)
    det = determinant(intersection_matrix('I-I', params))
    block = trailing_inverse_block('I-I', params)
    scaled = [[det * x for x in row] for row in block]
    target = [[p * (p - 1), q * (p - 1)], [q * (p - 1), q * (q - 1)]]
    assert scaled in (target, [[-x for x in row] for row in target])


def test_c_squared_invariant_under_negation():
    for family_id, params in _grid(4):
        q = intersection_matrix(family_id, params)
        w = chern_vector(family_id, params)
        assert quadratic_form_inverse(q, w) == quadratic_form_inverse(q, [-x for x in w])


def test_chain_boundary_small():
    m = chain_boundary_matrix('I', FamilyParams(p=2, u=1))
    # 列 X, Y, Z1；行 a1, a2, b1, c1, d1
    assert m.to_lists() == [
        [1, 1, 0, -1, 0],
        [0, 0, 1, 0, 1],
        [0, 0, 0, 1, -1],
    ]


def test_chain_boundary_c1_column():
    m = chain_boundary_matrix('I', FamilyParams(p=3, u=2))
    c1 = 3 + 2
    column = [m[i, c1] for i in range(m.shape[0])]
    assert column == [-1, 0, 1, 0, 0]
    assert rank(m) == 5


@pytest.mark.parametrize("p", range(2, 9))
@pytest.mark.parametrize("u", range(1, 5))
def test_chain_homology_ranks(p, u):
    ranks = chain_homology_ranks('I', FamilyParams(p=p, u=u))
    assert ranks == {'H2': 2 * p - 2, 'H1': 0}


def test_chain_boundary_other_family():
    with pytest.raises(UnsupportedFamilyError):
        chain_boundary_matrix('II', FamilyParams(q=2, u=1))


def test_domain_error():
    with pytest.raises(ParameterDomainError):
        intersection_matrix('II-I', FamilyParams(p=2, u=1, v=1))


def test_published_rows_are_reported():
    params = FamilyParams(p=4, u=1, v=0)
    q = intersection_matrix('III-I', params)
    det, sigma = form_invariants(q)
    measured = {'sigma': sigma, 'det': int(det), 'c2': c_squared('III-I', params)}
    issues = published_discrepancies('III-I', params, measured)
    assert {item['quantity'] for item in issues} == {'sigma', 'c2'}
    assert FamilyId.I_I_I in PUBLISHED_TABLE_ROWS


def test_i_i_i_determinant_follows_r():
    for r in (4, 5, 6, 7):
        params = FamilyParams(p=2, q=3, r=r, u=1, v=1, w=1)
        assert determinant(intersection_matrix('I-I-I', params)) == (-1) ** (r - 1)


def test_handle_data():
    data = handle_data('I', FamilyParams(p=3, u=2))
    assert data.chi == 5
    assert data.k == 4
    assert data.dimension == 4
    assert data.w == [0, 0, 0, 4]
    assert sum(1 for _, square, _ in data.handles if square == 1) == data.k


def test_matrix_json():
    q = intersection_matrix('III', FamilyParams(u=0))
    document = json.loads(matrix_to_json(q))
    assert document['dim'] == 4
    assert RationalMatrix(document['rows']) == q
    assert signature(q) == (1, 3, 0)
