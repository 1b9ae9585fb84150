#!/usr/bin/env python3
"""
精確線性代數測試
"""

from fractions import Fraction

import numpy as np
import pytest
import sympy

from exact_linalg import (
    RationalMatrix, d_matrix, determinant, format_grid, inverse, j_block, j_tilde_block,
    quadratic_form_inverse, rank, s_matrix, signature, solve,
)
from utils.errors import SingularMatrixError


def _random_unimodular(rng, n, steps=12):
    """由初等列運算組成的整數幺模矩陣"""
    u = np.eye(n, dtype=object)
    for _ in range(steps):
        i, j = rng.choice(n, size=2, replace=False)
        u[i] = u[i] + int(rng.integers(-2, 3)) * u[j]
    return u


def _random_symmetric(rng, n):
    a = rng.integers(-4, 5, size=(n, n))
    return (a + a.T).astype(object)


def _sympy_det(m: RationalMatrix) -> Fraction:
    return Fraction(str(sympy.Matrix(m.to_lists()).det()))


@pytest.mark.parametrize("n", range(0, 31))
def test_j_block_determinants(n):
    assert determinant(j_block(n)) == n + 1
    assert determinant(j_tilde_block(n)) == (-1) ** n * (n + 1)


@pytest.mark.parametrize("n", range(1, 13))
def test_s_d_factorization(n):
    s = s_matrix(n)
    assert s @ d_matrix(n) @ s.transpose() == j_block(n)


@pytest.mark.parametrize("n", range(1, 9))
def test_s_inverse_is_dense_ratio_matrix(n):
    dense = RationalMatrix([[Fraction(j + 1, i + 1) if j <= i else 0 for j in range(n)] for i in range(n)])
    assert inverse(s_matrix(n)) == dense
    assert inverse(dense) @ d_matrix(n) @ inverse(dense).transpose() == j_block(n)


def test_s_d_small_case():
    assert s_matrix(2).to_lists() == [[1, 0], [Fraction(-1, 2), 1]]
    assert (s_matrix(2) @ d_matrix(2) @ s_matrix(2).transpose()).to_lists() == [[2, -1], [-1, 2]]


@pytest.mark.parametrize("n", range(1, 9))
def test_j_blocks_are_definite(n):
    assert signature(j_block(n)) == (n, 0, 0)
    assert signature(j_tilde_block(n)) == (0, n, 0)


def test_examples():
    assert determinant(RationalMatrix([[2, -1], [-1, 2]])) == 3
    assert signature(RationalMatrix([[0, 1], [1, 0]])) == (1, 1, 0)
    assert quadratic_form_inverse(RationalMatrix([[-2, 1], [1, 0]]), [0, 2]) == 8
    assert quadratic_form_inverse(RationalMatrix([[2]]), [1]) == Fraction(1, 2)


def test_identity_and_zero():
    assert determinant(RationalMatrix.identity(3)) == 1
    assert rank(RationalMatrix.identity(5)) == 5
    assert signature(RationalMatrix.zero(4)) == (0, 0, 4)
    assert rank(RationalMatrix.zero(3, 4)) == 0
    assert RationalMatrix.zero(3, 4).shape == (3, 4)
    assert determinant(RationalMatrix.zero(2)) == 0


def test_empty_matrix():
    empty = RationalMatrix([])
    assert determinant(empty) == 1
    assert signature(empty) == (0, 0, 0)
    assert rank(empty) == 0
    assert format_grid(empty) == "(empty)"


def test_zero_pivot_pairs():
    # 對角全零的 4x4 雙曲形式
    m = RationalMatrix([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 2], [0, 0, 2, 0]])
    assert signature(m) == (2, 2, 0)
    degenerate = RationalMatrix([[0, 0, 0], [0, 0, 1], [0, 1, 0]])
    assert signature(degenerate) == (1, 1, 1)


def test_signature_rejects_asymmetric():
    with pytest.raises(ValueError):
        signature(RationalMatrix([[1, 2], [0, 1]]))


def test_determinant_rejects_rectangular():
    with pytest.raises(ValueError):
        determinant(RationalMatrix([[1, 2, 3], [4, 5, 6]]))


def test_singular_inverse():
    singular = RationalMatrix([[1, 2], [2, 4]])
    with pytest.raises(SingularMatrixError):
        quadratic_form_inverse(singular, [1, 0])
    with pytest.raises(SingularMatrixError):
        quadratic_form_inverse(singular, [0, 0])
    with pytest.raises(SingularMatrixError):
        inverse(singular)


def test_rank_rectangular():
    m = RationalMatrix([[1, 0, -1], [0, 1, -1], [1, 1, -2]])
    assert rank(m) == 2
    assert rank(RationalMatrix([[1, 2, 3, 4]])) == 1


def test_rational_entries():
    m = RationalMatrix([[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 3), Fraction(1, 4)]])
    assert determinant(m) == Fraction(1, 8) - Fraction(1, 9)
    assert solve(m, [1, 0]) == [Fraction(1, 4) / determinant(m), -Fraction(1, 3) / determinant(m)]


@pytest.mark.parametrize("n", range(2, 9))
def test_signature_invariant_under_congruence(n):
    rng = np.random.default_rng(1000 + n)
    for _ in range(20):
        a = _random_symmetric(rng, n)
        u = _random_unimodular(rng, n)
        b = u.dot(a).dot(u.T)
        assert signature(RationalMatrix(a.tolist())) == signature(RationalMatrix(b.tolist()))


@pytest.mark.parametrize("seed", range(10))
def test_determinant_and_inverse_match_sympy(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 7))
    m = RationalMatrix(_random_symmetric(rng, n).tolist())
    assert determinant(m) == _sympy_det(m)
    if determinant(m) != 0:
        expected = sympy.Matrix(m.to_lists()).inv()
        assert inverse(m).to_lists() == [[Fraction(str(x)) for x in row] for row in expected.tolist()]


@pytest.mark.parametrize("seed", range(20))
def test_determinant_sign_follows_inertia(seed):
    rng = np.random.default_rng(200 + seed)
    n = int(rng.integers(1, 8))
    m = RationalMatrix(_random_symmetric(rng, n).tolist())
    n_plus, n_minus, n_zero = signature(m)
    det = determinant(m)
    if n_zero == 0:
        assert det != 0
        assert (det > 0) == (n_minus % 2 == 0)
    else:
        assert det == 0


@pytest.mark.parametrize("seed", range(10))
def test_quadratic_form_cofactor_identity(seed):
    """w^T M^{-1} w · det(M) 為整數"""
    rng = np.random.default_rng(50 + seed)
    n = int(rng.integers(1, 7))
    m = RationalMatrix(_random_symmetric(rng, n).tolist())
    det = determinant(m)
    if det == 0:
        return
    w = [int(x) for x in rng.integers(-5, 6, size=n)]
    value = quadratic_form_inverse(m, w)
    assert (value * det).denominator == 1


def test_format_grid_alignment():
    grid = format_grid(RationalMatrix([[-2, 1], [1, 10]]))
    assert grid.splitlines() == ["-2  1", " 1 10"]
