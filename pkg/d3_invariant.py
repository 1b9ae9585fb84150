#!/usr/bin/env python3
"""
d3 不變量

兩條獨立路徑：各族的閉式公式，以及由交叉矩陣算出
d3 = (c² - 2χ - 3σ)/4 + k。d = d3 + 1/2 一律以整數保存。
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional

from loguru import logger

from config import Config
from families import FAMILY_ORDER, FamilyParams, get_family
from intersection_forms import (
    chern_vector, check_handle_lattice, euler_characteristic, expected_invariants,
    form_invariants, intersection_matrix, published_discrepancies,
)
from exact_linalg import quadratic_form_inverse
from splice_core import monodromy_word, negative_twist_count, word_twist_report
from utils.errors import ConsistencyError
from utils.parallel import run_tasks


@dataclass(frozen=True, order=True)
class D3Value:
    """d = d3 + 1/2"""

    d: int

    @property
    def d3(self) -> Fraction:
        return Fraction(2 * self.d - 1, 2)

    @property
    def numerator(self) -> int:
        return 2 * self.d - 1

    @property
    def denominator(self) -> int:
        return 2

    def __str__(self):
        return f"d={self.d} (d3={self.numerator}/2)"


def d3_closed_form(family, params: FamilyParams, relaxed: bool = False) -> D3Value:
    family_def = get_family(family)
    values = family_def.check_domain(params, relaxed)
    return D3Value(family_def.closed_form_d(values))


def d3_published_form(family, params: FamilyParams, relaxed: bool = False) -> D3Value:
    """按發表的印刷形式計算（II-I、III-I、II-III 的印刷式與推導式寫法不同）"""
    family_def = get_family(family)
    values = family_def.check_domain(params, relaxed)
    return D3Value(family_def.published_d(values))


def matrix_components(family, params: FamilyParams) -> Dict:
    """矩陣路徑的所有中間量"""
    q = intersection_matrix(family, params)
    w = chern_vector(family, params)
    det, sigma = form_invariants(q)
    c2 = quadratic_form_inverse(q, w)
    word = monodromy_word(family, params)
    return {
        'chi': euler_characteristic(family, params),
        'sigma': sigma,
        'det': det,
        'c2': c2,
        'k': negative_twist_count(word),
        'dim': q.n,
        'word': word,
    }


def _assemble(family, params: FamilyParams, parts: Dict) -> D3Value:
    four_d3 = parts['c2'] - 2 * parts['chi'] - 3 * parts['sigma'] + 4 * parts['k']
    d3 = Fraction(four_d3) / 4
    if (2 * d3).denominator != 1 or (2 * d3).numerator % 2 == 0:
        raise ConsistencyError(f"({family}) {params.as_dict()} 的 d3 = {d3} 不是半整數")
    return D3Value(int(d3 + Fraction(1, 2)))


def d3_from_matrix(family, params: FamilyParams) -> D3Value:
    """d3 = (c² - 2χ - 3σ)/4 + k，c² 以精確求解得到"""
    return _assemble(family, params, matrix_components(family, params))


def compute_report(family, params: FamilyParams) -> Dict:
    """CLI compute 的輸出；數值一律為十進位字串"""
    family_def = get_family(family)
    parts = matrix_components(family, params)
    value = _assemble(family, params, parts)
    closed = d3_closed_form(family, params)
    if closed != value:
        raise ConsistencyError(f"({family_def.family_id}) {params.as_dict()} 閉式 {closed.d} 與矩陣 {value.d} 不一致")
    return {
        'family': str(family_def.family_id),
        'params': params.as_dict(),
        'd': str(value.d),
        'd3_numerator': str(value.numerator),
        'd3_denominator': str(value.denominator),
        'chi': str(parts['chi']),
        'sigma': str(parts['sigma']),
        'det': str(parts['det']),
        'c2': str(parts['c2']),
        'k': str(parts['k']),
        'monodromy': parts['word'].render(),
        'punctures': str(parts['word'].page_punctures),
    }


def _validate_family(task) -> Dict:
    """單一族的網格驗證（進程池任務）"""
    family, param_bound = task
    family_def = get_family(family)
    checked = 0
    mismatches: List[Dict] = []
    known: List[Dict] = []

    for params in family_def.grid(param_bound):
        checked += 1
        where = {'family': str(family_def.family_id), 'params': params.as_dict()}
        parts = matrix_components(family_def.family_id, params)
        matrix_d = _assemble(family_def.family_id, params, parts)
        closed_d = d3_closed_form(family_def.family_id, params)
        if matrix_d != closed_d:
            mismatches.append({**where, 'quantity': 'd', 'closed_form': closed_d.d, 'matrix': matrix_d.d})

        expected = expected_invariants(family_def.family_id, params)
        measured = {'chi': parts['chi'], 'k': parts['k'], 'sigma': parts['sigma'],
                    'det': int(parts['det']), 'c2': int(parts['c2']), 'dim': parts['dim']}
        for key, value in expected.items():
            if measured[key] != value:
                mismatches.append({**where, 'quantity': key, 'closed_form': value, 'matrix': measured[key]})
        if measured['dim'] != measured['chi'] - 1:
            mismatches.append({**where, 'quantity': 'dim', 'closed_form': measured['chi'] - 1,
                               'matrix': measured['dim']})

        lattice = check_handle_lattice(family_def.family_id, params)
        if lattice:
            mismatches.append({**where, 'quantity': f"handle_lattice_{lattice}"})

        twists = word_twist_report(family_def.family_id, params)
        if not twists['success']:
            mismatches.append({**where, 'quantity': 'twists', 'details': twists['mismatches']})

        published = d3_published_form(family_def.family_id, params)
        if published != matrix_d:
            known.append({**where, 'quantity': 'd', 'published': published.d, 'computed': matrix_d.d})
        known += published_discrepancies(family_def.family_id, params, measured)

    logger.debug(f"({family_def.family_id}) 檢查 {checked} 組參數，不一致 {len(mismatches)} 項")
    return {'family': str(family_def.family_id), 'checked': checked, 'mismatches': mismatches, 'known': known}


def cross_validate(param_bound: int = None, workers: Optional[int] = None) -> Dict:
    """所有族、所有參數 <= param_bound 的參數組上比對閉式與矩陣路徑

    已知的發表式差異列在 known_discrepancies，不算失敗。
    """
    param_bound = Config.DEFAULT_PARAM_BOUND if param_bound is None else param_bound
    if param_bound < 2:
        raise ValueError("param_bound 必須 >= 2")

    logger.info(f"🚀 開始交叉驗證，參數上界 {param_bound}")
    parts = run_tasks(_validate_family, [(family, param_bound) for family in FAMILY_ORDER], workers)

    mismatches = [item for part in parts for item in part['mismatches']]
    known = [item for part in parts for item in part['known']]
    checked = {part['family']: part['checked'] for part in parts}

    if mismatches:
        logger.error(f"❌ 交叉驗證發現 {len(mismatches)} 項不一致")
    else:
        logger.info(f"✅ 交叉驗證通過，共 {sum(checked.values())} 組參數")
    if known:
        families = sorted({item['family'] for item in known})
        logger.warning(f"⚠️ 發表式有 {len(known)} 項已知差異，涉及 {families}")

    return {
        'success': not mismatches,
        'param_bound': param_bound,
        'checked': checked,
        'failures': mismatches,
        'known_discrepancies': known,
    }
