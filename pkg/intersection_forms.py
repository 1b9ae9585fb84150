#!/usr/bin/env python3
"""
交叉形式

八個參數族的交叉矩陣 Q、Chern 取值向量 w、Euler 示性數、
(I) 族的鏈複形邊界映射，以及 det/σ/c² 的計算與閉式對照。
Q 有兩條獨立的推導：J/J̃ 區塊佈局，以及由單值化字的 handle 格點
計算 M·diag·M^T；兩者應完全一致。
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from loguru import logger

from exact_linalg import (
    RationalMatrix, determinant, inverse, quadratic_form_inverse, rank, signature,
)
from families import FamilyId, FamilyParams, get_family
from splice_core import monodromy_word, negative_twist_count
from utils.errors import ConsistencyError, UnsupportedFamilyError

# 發表的表格中與推導結果不一致的條目
PUBLISHED_TABLE_ROWS = {
    FamilyId.III_I: {
        'sigma': lambda values: 0,
        'det': lambda values: 1,
        'c2': lambda values: (8 * values['u'] ** 2 + 24 * values['v'] ** 2 + 32 * values['u'] * values['v']
                              + 8 * values['u'] + 8 * values['v']),
    },
    FamilyId.I_I_I: {
        'det': lambda values: (-1) ** (values['q'] - 1),
    },
}


@dataclass
class HandleData:
    """單一參數組的 4-流形資料"""

    family: FamilyId
    params: FamilyParams
    chi: int
    k: int
    Q: RationalMatrix
    w: List[int]
    handles: List[Tuple[str, int, int]] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return self.Q.n


def intersection_matrix(family, params: FamilyParams) -> RationalMatrix:
    """J/J̃ 區塊組成的交叉矩陣，基底順序與 Chern 向量一致"""
    family_def = get_family(family)
    values = family_def.check_domain(params)
    return RationalMatrix(family_def.displayed_matrix(values))


def chern_vector(family, params: FamilyParams) -> List[int]:
    """PD(c(W)) 在 H2 基底上的取值，只有最後 1 到 3 個座標非零"""
    family_def = get_family(family)
    values = family_def.check_domain(params)
    return family_def.chern_vector(values)


def euler_characteristic(family, params: FamilyParams) -> int:
    family_def = get_family(family)
    values = family_def.check_domain(params)
    return family_def.euler_characteristic(values)


def _lattice(family, params: FamilyParams):
    family_def = get_family(family)
    values = family_def.check_domain(params)
    handles = family_def.handles(values)
    index = {name: i for i, (name, _, _) in enumerate(handles)}
    basis = family_def.homology_basis(values)
    for vector in basis:
        unknown = [name for name in vector if name not in index]
        if unknown:
            raise ConsistencyError(f"({family_def.family_id}) 基底引用了不存在的 handle: {unknown}")
    return handles, index, basis


def handle_lattice_matrix(family, params: FamilyParams) -> RationalMatrix:
    """Q = M·diag(handle 自交數)·M^T，不同 handle 互相正交"""
    handles, index, basis = _lattice(family, params)
    squares = [square for _, square, _ in handles]

    def pair(x: Dict[str, int], y: Dict[str, int]) -> int:
        return sum(cx * y[name] * squares[index[name]] for name, cx in x.items() if name in y)

    return RationalMatrix([[pair(x, y) for y in basis] for x in basis])


def handle_lattice_chern_vector(family, params: FamilyParams) -> List[int]:
    """w = M·r，r 為各 handle 附著曲線的旋轉數"""
    handles, index, basis = _lattice(family, params)
    rotations = [rotation for _, _, rotation in handles]
    return [sum(c * rotations[index[name]] for name, c in vector.items()) for vector in basis]


def handle_data(family, params: FamilyParams) -> HandleData:
    family_def = get_family(family)
    values = family_def.check_domain(params)
    word = monodromy_word(family_def.family_id, params)
    return HandleData(
        family=family_def.family_id,
        params=params,
        chi=family_def.euler_characteristic(values),
        k=negative_twist_count(word),
        Q=RationalMatrix(family_def.displayed_matrix(values)),
        w=family_def.chern_vector(values),
        handles=family_def.handles(values),
    )


def chain_boundary_matrix(family, params: FamilyParams) -> RationalMatrix:
    """(I) 族的邊界映射 C2 -> C1

    列為 X, Y, Z_1..Z_{2u-1}，行為 a_1..a_p, b_1..b_{p-1}, c_1..c_u, d_1..d_u。
    """
    family_def = get_family(family)
    if family_def.family_id != FamilyId.I:
        raise UnsupportedFamilyError(family_def.family_id, 'chain_boundary_matrix')
    values = family_def.check_domain(params)
    p, u = values['p'], values['u']

    row_names = ['X', 'Y'] + [f"Z{i}" for i in range(1, 2 * u)]
    row = {name: i for i, name in enumerate(row_names)}
    columns: List[Dict[str, int]] = []
    columns += [{'X': 1} for _ in range(p)]
    columns += [{'Y': 1} for _ in range(p - 1)]
    for i in range(1, u + 1):
        previous = 'X' if i == 1 else f"Z{i - 1}"
        columns.append({f"Z{i}": 1, previous: -1})
    for i in range(1, u + 1):
        target = 'Y' if i == u else f"Z{u + i}"
        columns.append({target: 1, f"Z{u + i - 1}": -1})

    matrix = [[0] * len(columns) for _ in row_names]
    for j, column in enumerate(columns):
        for name, coefficient in column.items():
            matrix[row[name]][j] += coefficient
    return RationalMatrix(matrix)


def chain_homology_ranks(family, params: FamilyParams) -> Dict[str, int]:
    """由邊界映射算 rank H2 與 rank H1（0-handle 一個、1-handle 2u+1 個）"""
    boundary = chain_boundary_matrix(family, params)
    rows, cols = boundary.shape
    image = rank(boundary)
    return {'H2': cols - image, 'H1': rows - image}


def form_invariants(q: RationalMatrix) -> Tuple[Fraction, int]:
    """(det, σ = n_plus - n_minus)"""
    n_plus, n_minus, _ = signature(q)
    return determinant(q), n_plus - n_minus


def c_squared(family, params: FamilyParams) -> int:
    """c² = w^T Q^{-1} w（精確求解）"""
    q = intersection_matrix(family, params)
    value = quadratic_form_inverse(q, chern_vector(family, params))
    if value.denominator != 1:
        raise ConsistencyError(f"({family}) {params.as_dict()} 的 c² 不是整數: {value}")
    return int(value)


def trailing_inverse_block(family, params: FamilyParams) -> List[List[Fraction]]:
    """Q^{-1} 右下角與 Chern 尾端對齊的區塊"""
    family_def = get_family(family)
    values = family_def.check_domain(params)
    size = len(family_def.chern_tail(values))
    inv = inverse(intersection_matrix(family, params))
    return [list(row[-size:]) for row in inv.rows[-size:]]


def expected_invariants(family, params: FamilyParams) -> Dict[str, int]:
    """推導得到的閉式 (χ, k, σ, det, c², dim)"""
    family_def = get_family(family)
    values = family_def.check_domain(params)
    return {
        'chi': family_def.euler_characteristic(values),
        'k': family_def.negative_twists(values),
        'sigma': family_def.expected_signature(values),
        'det': family_def.expected_determinant(values),
        'c2': family_def.closed_form_c2(values),
        'dim': family_def.dimension(values),
    }


def published_discrepancies(family, params: FamilyParams, measured: Dict[str, int]) -> List[Dict]:
    """把實測的 σ/det/c² 與發表表格中的衝突條目比對，列出不一致之處"""
    family_id = FamilyId.parse(family)
    rows = PUBLISHED_TABLE_ROWS.get(family_id)
    if not rows:
        return []
    values = params.as_dict()
    result = []
    for key, formula in rows.items():
        published = formula(values)
        if published != measured[key]:
            result.append({'family': str(family_id), 'params': values, 'quantity': key,
                           'published': published, 'computed': measured[key]})
    return result


def matrix_to_json(q: RationalMatrix) -> str:
    rows = [[int(x) if x.denominator == 1 else str(x) for x in row] for row in q.rows]
    return json.dumps({'dim': q.shape[0], 'rows': rows})


def check_handle_lattice(family, params: FamilyParams) -> Optional[str]:
    """兩條推導一致時回傳 None，否則回傳差異說明"""
    displayed = intersection_matrix(family, params)
    lattice = handle_lattice_matrix(family, params)
    if displayed != lattice:
        logger.error(f"❌ ({family}) {params.as_dict()} 區塊矩陣與 handle 格點不一致")
        return 'matrix'
    w = chern_vector(family, params)
    lattice_w = handle_lattice_chern_vector(family, params)
    if lattice_w != w and [-x for x in lattice_w] != w:
        logger.error(f"❌ ({family}) {params.as_dict()} Chern 向量不一致: {w} vs {lattice_w}")
        return 'chern'
    return None
