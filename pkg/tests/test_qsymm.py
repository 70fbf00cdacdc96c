# coding: utf-8
import math

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from ..kernel.qkernel import DeformationParams
from ..symmetric import qsymm
from ..symmetric.qsymm import DEFAULT_CONVENTION, Convention, build_qsym_state
from ..tools.errors import ArgumentError, ConventionError

words = st.lists(st.integers(1, 4), min_size=1, max_size=6).map(tuple)
grid = st.sampled_from([(0.3, math.pi / 2), (0.7, math.pi / 7), (1.5, math.pi / 5)])


def test_inversion_count_and_epsilon():
    assert qsymm.inversion_count((1, 2, 3)) == 0
    assert qsymm.inversion_count((2, 1)) == 1
    assert qsymm.inversion_count((3, 1, 2)) == 2
    assert qsymm.inversion_count((2, 2, 1)) == 2
    assert [qsymm.epsilon(2, 1), qsymm.epsilon(1, 2), qsymm.epsilon(1, 1)] == [1, -1, 0]


def test_two_letter_example(params):
    # |2,1>_q = q |1,2>_q
    assert build_qsym_state((2, 1), params).formally_equals(build_qsym_state((1, 2), params).shifted(1))


def test_amplitudes(params):
    state = build_qsym_state((1, 2), params)
    norm = 1 / math.sqrt(1 + 0.7 ** 2)
    assert params.realize(state.amplitude((1, 2))) == pytest.approx(norm)
    assert params.realize(state.amplitude((2, 1))) == pytest.approx(0.7 * norm)
    assert state.words() == [(1, 2), (2, 1)]


def test_exchange_property_exhaustive():
    for p, theta in [(0.7, math.pi / 7), (1.5, math.pi / 5)]:
        params = DeformationParams(p=p, theta=theta)
        states = {}
        for word in qsymm.enumerate_words(5, 4):
            for k in range(1, len(word)):
                verdict = qsymm.exchange_check(word, k, params, states=states)
                assert verdict.holds, verdict


@given(words.filter(lambda w: len(w) > 1), grid, st.data())
@settings(max_examples=40, deadline=None)
def test_exchange_property_long_words(word, point, data):
    k = data.draw(st.integers(1, len(word) - 1))
    assert qsymm.exchange_check(word, k, DeformationParams(*point)).holds


@given(words, grid)
@settings(max_examples=60, deadline=None)
def test_unit_norm(word, point):
    assert qsymm.unit_norm_residual(build_qsym_state(word, DeformationParams(*point))) < 1e-12


def test_unit_norm_exact(exact_params):
    for word in [(1,), (2, 1), (3, 1, 2, 1), (2, 2, 1, 3)]:
        assert qsymm.unit_norm_residual(build_qsym_state(word, exact_params)) == 0.
        assert qsymm.qsym_norm(build_qsym_state(word, exact_params)) == pytest.approx(1.)


@given(words.filter(lambda w: len(w) > 1), st.data())
@settings(deadline=None)
def test_transition_operators(word, data):
    params = DeformationParams(p=0.7, theta=math.pi / 7)
    k = data.draw(st.integers(1, len(word) - 1))
    state = build_qsym_state(word, params)
    moved = qsymm.transition_apply(k, state)
    assert moved.formally_equals(state.shifted(-qsymm.epsilon(word[k - 1], word[k])))
    assert qsymm.transition_inverse(k, moved).formally_equals(state)


def test_sort_to_fundamental(params):
    state = build_qsym_state((3, 1, 2), params)
    fundamental, accumulated = qsymm.sort_to_fundamental(state)
    assert fundamental.input_word == (1, 2, 3)
    assert accumulated == -2


@pytest.mark.parametrize('p', [0.3, 0.7, 1.5])
def test_identity_for_all_profiles(p):
    float_params = DeformationParams(p=p)
    exact_params = DeformationParams(p=p, exact=True)
    for profile in qsymm.enumerate_profiles(7):
        assert qsymm.multinomial_identity_check(profile, float_params).passed
        report = qsymm.multinomial_identity_check(profile, exact_params)
        assert report.passed
        assert isinstance(report.rhs, sympy.Basic)


def test_literal_identity_reading_fails(params):
    literal = Convention(p_exponent_scale=1)
    report = qsymm.multinomial_identity_check((1, 1), params, literal)
    assert not report.passed
    assert report.lhs == pytest.approx(1.7)
    assert report.rhs == pytest.approx(1.49)


def test_identity_length_bound(params):
    with pytest.raises(ArgumentError):
        qsymm.multinomial_identity_check((5, 4), params)


def test_resolve_convention():
    report = qsymm.resolve_convention(5, 3)
    assert report.satisfying == [DEFAULT_CONVENTION]
    assert report.convention == DEFAULT_CONVENTION
    assert len(report.evidence) == 8
    for evidence in report.evidence:
        if evidence.convention != DEFAULT_CONVENTION:
            assert evidence.counterexamples
    literal = [ev for ev in report.evidence if ev.convention == Convention(p_exponent_scale=1)][0]
    assert not literal.identity_pass
    assert any(c['requirement'] == 'identity' for c in literal.counterexamples)


def test_resolve_without_candidates(monkeypatch):
    monkeypatch.setattr(qsymm, 'all_conventions', lambda: [Convention(p_exponent_scale=1)])
    with pytest.raises(ConventionError) as info:
        qsymm.resolve_convention(3, 2)
    assert info.value.evidence['satisfying'] == []


def test_classical_limit(classical_params):
    for word in [(2, 1, 1), (3, 1, 2), (1, 1)]:
        state = build_qsym_state(word, classical_params)
        oracle = qsymm.classical_symmetrizer(word)
        assert set(state.words()) == set(oracle)
        for w, value in oracle.items():
            assert classical_params.realize(state.amplitude(w)) == pytest.approx(value, abs=1e-12)


def test_word_validation(params):
    with pytest.raises(ArgumentError):
        build_qsym_state((), params)
    with pytest.raises(ArgumentError):
        build_qsym_state((0, 1), params)
    with pytest.raises(ArgumentError):
        qsymm.swap((1, 2), 2)


def test_profiles_and_records(params):
    assert qsymm.profile_of((3, 1, 3)) == (1, 0, 2)
    assert len(list(qsymm.enumerate_profiles(4))) == 1 + 2 + 3 + 5
    records = build_qsym_state((2, 1), params).as_records()
    assert records[0]['word'] == [1, 2]
    assert records[0]['terms'] == [{'qPower': 1, 'pPower': 0, 'multiplicity': 1}]
