# coding: utf-8
import itertools
import math

import pytest
from hypothesis import given, strategies as st

from ..fock import fockspace, relcheck
from ..fock.fockspace import ModeConfig
from ..fock.relcheck import RelationExpr, a, adag, e
from ..kernel.graded import QGraded
from ..kernel.qkernel import DeformationParams
from ..tools.errors import ArgumentError, ConfigurationError, DomainError
from .conftest import PARAMETER_GRID


def assert_all_pass(reports, tolerance=1e-10):
    failing = [(r.label, r.max_residual) for r in reports if not r.passed]
    assert not failing
    assert all(r.max_residual < tolerance for r in reports)


@pytest.mark.parametrize('p, theta', PARAMETER_GRID)
def test_oscillator_suite(p, theta):
    config = ModeConfig(3, 5, DeformationParams(p=p, theta=theta))
    reports = relcheck.run_suite('oscillator', config)
    assert len(reports) == 33
    assert all(r.domain_size > 0 for r in reports)
    assert_all_pass(reports)


@pytest.mark.parametrize('p, theta', PARAMETER_GRID)
def test_conjugate_and_subhamiltonian_suites(p, theta):
    config = ModeConfig(3, 4, DeformationParams(p=p, theta=theta))
    assert_all_pass(relcheck.run_suite('conjugates', config))
    assert_all_pass(relcheck.run_suite('subhamiltonian', config))


@pytest.mark.parametrize('p, theta', PARAMETER_GRID)
def test_gl_suite_per_sector(p, theta):
    config = ModeConfig(3, 4, DeformationParams(p=p, theta=theta), max_total=4)
    reports = relcheck.run_suite('gl', config)
    assert_all_pass(reports)
    skipped = [r for r in reports if r.skipped]
    assert [r.family for r in skipped] == ['gl-four-index']


def test_hermiticity_suite(params):
    assert_all_pass(relcheck.run_suite('hermiticity', ModeConfig(3, 2, params, max_total=3)))


def test_four_index_relations_with_four_modes(params):
    reports = relcheck.run_suite('gl', ModeConfig(4, 2, params, max_total=2))
    four_index = [r for r in reports if r.family == 'gl-four-index']
    assert len(four_index) == 24
    assert not any(r.skipped for r in four_index)
    assert_all_pass(reports)


def test_exact_mode_residuals_vanish(exact_params):
    config = ModeConfig(2, 3, exact_params)
    for suite in ('oscillator', 'conjugates', 'subhamiltonian'):
        assert all(r.max_residual == 0. for r in relcheck.run_suite(suite, config))
    gl = relcheck.run_suite('gl', ModeConfig(3, 2, exact_params, max_total=2))
    assert all(r.max_residual == 0. for r in gl)


def test_exact_oscillator_suite_at_full_size(exact_params):
    reports = relcheck.run_suite('oscillator', ModeConfig(3, 5, exact_params))
    assert len(reports) == 33
    assert all(r.passed and r.max_residual == 0. for r in reports)


def test_classical_limit(classical_params):
    config = ModeConfig(3, 3, classical_params, max_total=3)
    assert_all_pass(relcheck.run_suite('classical', config))
    # p = q = 1 turns the deformed suites into the undeformed ones
    assert_all_pass(relcheck.run_suite('gl', config))


def test_all_suites_skip_subhamiltonian_at_p_one(classical_params):
    reports = relcheck.run_suite('all', ModeConfig(2, 3, classical_params))
    skipped = [r for r in reports if r.label == 'subhamiltonian suite']
    assert skipped and skipped[0].skipped
    assert [r.label for r in reports] == sorted(r.label for r in reports)


def test_subhamiltonian_suite_at_p_one(classical_params):
    with pytest.raises(DomainError):
        relcheck.run_suite('subhamiltonian', ModeConfig(2, 3, classical_params))


def test_unknown_suite(params):
    with pytest.raises(ArgumentError):
        relcheck.run_suite('virasoro', ModeConfig(2, 3, params))


def test_parallel_run_matches_serial(params):
    config = ModeConfig(2, 3, params)
    serial = relcheck.run_suite('oscillator', config, n_jobs=1)
    parallel = relcheck.run_suite('oscillator', config, n_jobs=2)
    assert [r.as_record() for r in serial] == [r.as_record() for r in parallel]


@pytest.mark.parametrize('phase', ['annihilation_phase_exponent', 'creation_phase_exponent'])
def test_flipped_ladder_phase_is_detected(monkeypatch, phase):
    original = getattr(fockspace, phase)
    monkeypatch.setattr(fockspace, phase, lambda occ, mode: -original(occ, mode))
    config = ModeConfig(3, 3, DeformationParams(p=0.7, theta=math.pi / 7))
    reports = relcheck.run_suite('oscillator', config)
    assert max(r.max_residual for r in reports) > 0.1


def test_printed_shared_row_phase():
    for i, j, k in itertools.permutations(range(1, 5), 3):
        printed = -1 if j < k else 1
        between = j < i < k or k < i < j
        assert (relcheck.shared_row_exponent(i, j, k) != printed) == between


def test_printed_shared_row_phase_fails_numerically():
    config = ModeConfig(3, 4, DeformationParams(p=0.7, theta=math.pi / 7), max_total=4)
    # i = 2 lies between j = 1 and k = 3; the printed rule gives q^-1
    printed = RelationExpr('E21 E23 = q^-1 E23 E21', 'gl-shared-row',
                           ((QGraded.monomial(1.), (e(2, 1), e(2, 3))),
                            (QGraded.monomial(-1., -1), (e(2, 3), e(2, 1)))))
    report = relcheck.check_relation(printed, config)
    assert not report.passed
    assert report.max_residual > 0.1


@given(st.permutations([1, 2, 3, 4, 5]))
def test_shared_row_exponent_is_skew(modes):
    i, j, k = modes[:3]
    assert relcheck.shared_row_exponent(i, j, k) == -relcheck.shared_row_exponent(i, k, j)


def test_creation_depth():
    assert relcheck.creation_depth((a(1), adag(1)), 1) == ((1,), 1)
    assert relcheck.creation_depth((adag(1), a(1)), 1) == ((0,), 0)
    assert relcheck.creation_depth((e(1, 2), e(2, 1)), 2) == ((0, 1), 0)


def test_empty_interior_domain():
    config = ModeConfig(1, 1)
    rel = RelationExpr('a+1 a+1 = 0', 'test', ((QGraded.monomial(1.), (adag(1), adag(1))),))
    with pytest.raises(ConfigurationError):
        relcheck.check_relation(rel, config)


@pytest.mark.parametrize('kind, indices', [('X', (1,)), ('A', (0,)), ('E', (1,)), ('Num', (1, 2))])
def test_token_validation(kind, indices):
    with pytest.raises(ArgumentError):
        relcheck.GeneratorToken(kind, indices)


def test_report_record(params):
    report = relcheck.run_suite('conjugates', ModeConfig(2, 2, params))[0]
    record = report.as_record()
    assert set(record) == {'label', 'family', 'domainSize', 'maxResidual', 'pass', 'skipped'}
    assert str(e(1, 2)) == 'E12'
