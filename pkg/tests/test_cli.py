# coding: utf-8
import json
import logging

import pytest

from ..cli.cli import PACKAGE_LOGGER, run
from ..cli.report import check_report, to_text
from ..config import config as defaults
from ..kernel.qkernel import bilateral_psi01
from ..symmetric.qsymm import DEFAULT_CONVENTION


def run_to_file(tmp_path, *argv):
    out = tmp_path / 'reports' / 'report.json'
    code, report = run(list(argv) + ['--out', str(out)])
    return code, report, json.loads(out.read_text())


def test_verify_oscillator(tmp_path):
    code, report, written = run_to_file(tmp_path, 'verify', '--suite', 'oscillator', '--modes', '3',
                                        '--p', '0.7', '--theta', '0.4488', '--cutoff', '5')
    assert code == 0
    assert written['overallPass'] is True
    assert written['version'] == defaults.TOOL_VERSION
    assert all(r['maxResidual'] < 1e-10 for r in written['results'])
    assert [r['label'] for r in written['results']] == sorted(r['label'] for r in written['results'])
    assert check_report(written) == []


def test_reports_are_deterministic(tmp_path):
    argv = ['verify', '--suite', 'gl', '--modes', '3', '--cutoff', '2', '--total-cutoff', '3', '--theta-pi-over', '7']
    first = run_to_file(tmp_path, *argv)[2]
    second = run_to_file(tmp_path, *argv)[2]
    first.pop('timestamp'), second.pop('timestamp')
    assert first == second


def test_eval_psi01(capsys):
    code, report = run(['eval', '--fn', 'psi01', '--a', '-2', '--p', '0.5', '--x', '-4'])
    assert code == 0
    record, = report['results']
    assert record['value'] == pytest.approx(bilateral_psi01(-2., 0.5, -4.), rel=1e-12)
    assert record['window'][0] == -record['window'][1]
    assert json.loads(capsys.readouterr().out)['overallPass'] is True


def test_eval_psi01_divergent():
    code, report = run(['eval', '--fn', 'psi01', '--a', '-2', '--p', '0.5', '--x', '-0.1'])
    assert code == 3
    assert report['error']['type'] == 'DomainError'
    assert report['overallPass'] is False
    assert check_report(report) == []


def test_eval_exp_is_complex_pair():
    code, report = run(['eval', '--fn', 'exp', '--p', '0.5', '--x', '1'])
    assert code == 0
    value = report['results'][0]['value']
    assert len(value) == 2 and value[1] == 0.


def test_eval_gaussian_exact():
    code, report = run(['eval', '--fn', 'gaussian', '--profile', '1,1', '--base', '2', '--exact'])
    assert code == 0
    assert report['results'][0]['value'] == 3.


def test_flag_errors_exit_2():
    assert run(['verify', '--p', 'abc'])[0] == 2
    assert run(['unknown'])[0] == 2
    code, report = run(['qsym'])
    assert code == 2
    assert report['error']['type'] == 'ConfigurationError'


def test_failed_check_exits_1(tmp_path):
    # a two-level truncation is far from normalised
    code, report, _ = run_to_file(tmp_path, 'coherent', '--r', '0.5,0.5', '--cutoff', '2', '--p', '0.5')
    assert code == 1
    failing = [r['label'] for r in report['results'] if not r['pass']]
    assert failing == ['coherent normalization']


def test_coherent(tmp_path):
    code, report, written = run_to_file(tmp_path, 'coherent', '--r', '0.3,0.3', '--cutoff', '30', '--p', '0.5',
                                        '--theta-pi-over', '7')
    assert code == 0
    assert {r['family'] for r in written['results']} == {'coherent-normalization', 'coherent-construction',
                                                         'coherent-eigenvalue'}


def test_positive(tmp_path):
    code, report, written = run_to_file(tmp_path, 'positive', '--p', '0.5', '--r', '12', '--lambda', '1',
                                        '--window', '30')
    assert code == 0
    assert written['warnings'] == []
    normalization = [r for r in written['results'] if r['family'] == 'positive-normalization'][0]
    assert normalization['maxResidual'] < 1e-8


def test_positive_below_nu_exits_3():
    code, report = run(['positive', '--p', '0.5', '--r', '1.5'])
    assert code == 3
    assert report['error']['type'] == 'DomainError'


def test_qsym_word(capsys):
    code, report = run(['qsym', '--word', '2,1,3,1', '--theta-pi-over', '5', '--p', '0.7', '--format', 'text'])
    assert code == 0
    assert report['convention']['label'] == DEFAULT_CONVENTION.label
    labels = {r['label'] for r in report['results']}
    assert {'unit norm', 'exchange k=1', 'transition inverse k=3', 'sort to fundamental',
            'permutation-sum identity'} <= labels
    out = capsys.readouterr().out
    assert out == to_text(report)
    assert out.endswith('overallPass: true\n')


def test_qsym_resolve():
    code, report = run(['qsym', '--resolve', '--nmax', '3', '--alphabet', '2', '--word', '2,1'])
    assert code == 0
    resolution = [r for r in report['results'] if r['label'] == 'convention resolution'][0]
    assert resolution['value'] == [DEFAULT_CONVENTION.label]
    rejected = [ev for ev in resolution['evidence'] if not ev['pass']]
    assert len(rejected) == 7
    assert all(ev['counterexamples'] for ev in rejected)


def test_resolve_command():
    code, report = run(['resolve', '--nmax', '3', '--alphabet', '2'])
    assert code == 0
    assert report['convention']['permSet'] == DEFAULT_CONVENTION.perm_set


@pytest.mark.parametrize('verbosity', [[], ['-vv']])
def test_run_restores_the_package_log_level(verbosity):
    package_logger = logging.getLogger(PACKAGE_LOGGER)
    previous = package_logger.level
    package_logger.setLevel(logging.INFO)
    try:
        run(['eval', '--fn', 'bracket', '--x', '3'] + verbosity)
        assert package_logger.level == logging.INFO
    finally:
        package_logger.setLevel(previous)


def test_report_types_are_validated():
    code, report = run(['eval', '--fn', 'factorial', '--n', '4'])
    assert code == 0
    assert check_report(report) == []
    report['results'][0]['pass'] = 'yes'
    report['overallPass'] = 1
    problems = check_report(report)
    assert len(problems) == 2
    assert any(problem.startswith('results/0/pass') for problem in problems)
    assert any(problem.startswith('overallPass') for problem in problems)


def test_flag_error_report_is_valid():
    code, report = run(['positive'])
    assert code == 2
    assert report['config'] is None
    assert check_report(report) == []


def test_every_record_carries_a_relation_reference():
    code, report = run(['verify', '--suite', 'oscillator', '--modes', '2', '--p', '0.5', '--cutoff', '3'])
    assert code == 0
    assert all(r['paperRef'] == r['family'] for r in report['results'])
    assert 'p-commutator' in {r['paperRef'] for r in report['results']}
    del report['results'][0]['paperRef']
    assert check_report(report) == ["results/0: 'paperRef' is a required property"]
