#!/usr/bin/env python3
"""
實現搜尋測試
"""

import pytest

from config import Config
from d3_invariant import d3_closed_form
from families import FamilyId, FamilyParams
from realization_search import (
    EXTRA_OPERATIONS, MOVES, QUOTED_INCREMENTS, SPORADIC_STATES, TABLE1, MoveState, Witness, apply_move,
    enumerate_realizations, even_initial_d, exceptions_report, iii_coverage_report, odd_initial_d,
    reproduce_table1, verify_exceptions, verify_iii_coverage, verify_move_increments,
)
from utils.errors import InvalidMoveError, ParameterDomainError

EXCEPTIONS = {4, 11, 17, 19, 47, 61, 79, 95, 109}


@pytest.fixture(scope='module')
def table_120():
    return enumerate_realizations(120, workers=1)


@pytest.fixture(scope='module')
def table_500():
    return enumerate_realizations(500, workers=1)


def test_small_table():
    table = enumerate_realizations(10, workers=1)
    assert Witness(FamilyId.I, FamilyParams(p=2, u=1)) in table.witnesses(3)
    assert table.witnesses(4) == []
    assert table.missing() == [4]


def test_minimal_iii_witness():
    table = enumerate_realizations(60, families=['I-I-I'], workers=1)
    realized = sorted(table.realized())
    assert realized[0] == 53
    assert table.minimal_witness(53) == Witness(FamilyId.I_I_I, FamilyParams(p=2, q=3, r=4, u=1, v=1, w=1))


def test_exceptions_120(table_120):
    assert set(table_120.missing()) == EXCEPTIONS


def test_every_witness_recomputes(table_120):
    for d, witnesses in table_120.entries.items():
        assert d <= 120
        for witness in witnesses:
            assert d3_closed_form(witness.family, witness.params, relaxed=True).d == d
            if not witness.relaxed:
                assert d3_closed_form(witness.family, witness.params).d == d


def test_relaxed_witnesses_are_marked(table_120):
    witness = table_120.minimal_witness(9)
    assert witness.family == FamilyId.III_I
    assert witness.relaxed
    assert witness.as_dict()['relaxed'] is True
    with pytest.raises(ParameterDomainError):
        d3_closed_form(witness.family, witness.params)
    assert table_120.certificate['III-I']['relaxed_witnesses'] > 0
    assert table_120.certificate['I']['relaxed_witnesses'] == 0
    relaxed_families = {w.family for ws in table_120.entries.values() for w in ws if w.relaxed}
    assert relaxed_families == {FamilyId.III_I}
    strict = enumerate_realizations(60, strict=True, workers=1)
    assert all(not w.relaxed for ws in strict.entries.values() for w in ws)


def test_witness_order(table_120):
    for witnesses in table_120.entries.values():
        keys = [w.sort_key() for w in witnesses]
        assert keys == sorted(keys)
    assert table_120.minimal_witness(1) == Witness(FamilyId.II, FamilyParams(q=2, u=1))


def test_certificate(table_120):
    certificate = table_120.certificate
    assert set(certificate) == {str(f) for f in FamilyId}
    assert certificate['II']['ceiling_hits'] == ['q']
    assert certificate['I']['ceiling_hits'] == []
    assert certificate['I-I-I']['boundary_checks'] > 0


def test_enumeration_is_deterministic():
    first = enumerate_realizations(80, workers=1)
    second = enumerate_realizations(80, workers=1)
    assert first.to_records() == second.to_records()


def test_parallel_matches_serial():
    serial = enumerate_realizations(90, workers=1)
    parallel = enumerate_realizations(90, workers=2)
    assert serial.to_records() == parallel.to_records()
    assert serial.certificate == parallel.certificate


def test_exceptions_500(table_500):
    assert set(table_500.missing()) == EXCEPTIONS
    assert table_500.realized() == set(range(1, 501)) - EXCEPTIONS


def test_verify_exceptions_small():
    assert verify_exceptions(3, workers=1) == set()


def test_strict_domain_loses_values():
    report = exceptions_report(120, strict=True, workers=1)
    assert report['success']
    assert set(report['exceptions']) == EXCEPTIONS | {9, 49}
    assert report['expected'] == report['exceptions']


def test_strict_report_detects_mismatch(monkeypatch):
    monkeypatch.setattr(Config, 'STRICT_EXTRA_EXCEPTIONS', ())
    report = exceptions_report(60, strict=True, workers=1)
    assert not report['success']
    assert report['failures'] == [{'unexpected': [9, 49], 'not_found': []}]


def test_exceptions_report():
    report = exceptions_report(120, workers=1)
    assert report['success']
    assert report['exceptions'] == sorted(EXCEPTIONS)


def test_summaries(table_120):
    by_family = table_120.by_family()
    assert 3 in by_family['I']
    assert 5 in by_family['II-III']
    frame = table_120.to_frame()
    assert list(frame.columns) == ['d', 'd3', 'family', 'params', 'witnesses']
    assert len(frame) == 120 - len(EXCEPTIONS)
    assert frame.iloc[0]['d3'] == "1/2"
    assert len(table_120.to_frame(all_witnesses=True)) > len(frame)


def test_closed_under_moves(table_500):
    states = [witness for witnesses in table_500.entries.values() for witness in witnesses
              if witness.family == FamilyId.I_I_I]
    assert states
    moved = 0
    for witness in states:
        state = MoveState(**witness.params.as_dict())
        for move in MOVES:
            try:
                after, _ = apply_move(state, move)
            except InvalidMoveError:
                continue
            if after.d <= 500:
                moved += 1
                assert Witness(FamilyId.I_I_I, after.as_params()) in table_500.witnesses(after.d, 'I-I-I')
    assert moved > 0


@pytest.mark.parametrize("move,after,delta", [
    ('i', (2, 4, 19, 1, 1, 1), 2),
    ('ii', (2, 3, 18, 3, 1, 1), 16),
    ('iii', (2, 3, 21, 1, 1, 1), 46),
])
def test_apply_move_examples(move, after, delta):
    state = MoveState(2, 3, 20, 1, 1, 1)
    new_state, increment = apply_move(state, move)
    assert new_state.as_tuple() == after
    assert increment == delta
    assert increment == QUOTED_INCREMENTS[move](state)


def test_apply_move_leaves_domain():
    with pytest.raises(InvalidMoveError):
        apply_move(MoveState(2, 3, 5, 1, 1, 1), 'i')
    with pytest.raises(InvalidMoveError):
        apply_move(MoveState(2, 3, 5, 1, 1, 1), 'ii')
    with pytest.raises(InvalidMoveError):
        apply_move(MoveState(2, 3, 5, 1, 1, 1), 'iv')


def test_move_state_validates():
    with pytest.raises(ParameterDomainError):
        MoveState(2, 3, 3, 1, 1, 1)


def test_move_ii_increment_at_u_3():
    state = MoveState(2, 3, 30, 3, 1, 1)
    _, delta = apply_move(state, 'ii')
    assert delta == 24


@pytest.mark.parametrize("r,d", [(18, 431), (19, 473), (4, 53)])
def test_odd_initial_states(r, d):
    assert odd_initial_d(r) == d
    assert MoveState(2, 3, r, 1, 1, 1).d == d


def test_even_initial_state():
    assert even_initial_d(17) == 438
    assert MoveState(2, 3, 17, 2, 1, 1).d == 438
    _, delta = apply_move(MoveState(2, 3, 17, 2, 1, 1), 'iii')
    assert delta == 2 * 17 + 8


def test_extra_operations():
    r = 30
    for operation in EXTRA_OPERATIONS:
        if operation.increment is not None:
            continue
        initial = odd_initial_d if operation.parity == 'odd' else even_initial_d
        start, end = MoveState.of(operation.start(r)), MoveState.of(operation.end(r))
        assert start.d == initial(r) + operation.start_offset
        assert end.d == initial(r) + operation.end_offset


@pytest.mark.parametrize("state,d", list(SPORADIC_STATES.items()))
def test_sporadic_states(state, d):
    assert MoveState.of(state).d == d


def test_verify_move_increments():
    report = verify_move_increments(12)
    assert report['success'], report['failures']
    assert report['checked'] > 0


def test_verify_move_increments_default_grid():
    report = verify_move_increments()
    assert report['grid_bound'] == Config.MOVE_GRID_BOUND
    assert report['success'], report['failures'][:5]


def test_verify_move_increments_bound():
    with pytest.raises(ValueError):
        verify_move_increments(5)


def test_iii_coverage():
    assert verify_iii_coverage(432, 500, workers=1) == [461]
    assert verify_iii_coverage(462, 1000, workers=1) == []


def test_iii_coverage_report():
    report = iii_coverage_report(432, 2000, workers=1)
    assert report['success'], report['failures']
    assert report['missing'] == [461]


def test_461_realized_by_i_i(table_500):
    assert table_500.witnesses(461, 'I-I')
    assert not table_500.witnesses(461, 'I-I-I')


def test_table1_rows(table_500):
    for family, values in TABLE1.items():
        for d in values:
            assert table_500.witnesses(d, family), (family, d)
    assert table_500.witnesses(347, 'III-I')
    assert table_500.witnesses(5, 'II-III')


def test_reproduce_table1():
    report = reproduce_table1(workers=1)
    assert report['success'], report['failures']
