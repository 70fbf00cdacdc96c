# coding: utf-8
"""Batch command line interface

    python -m pq_oscillators verify --suite oscillator --modes 3 --p 0.7 --theta 0.4488 --cutoff 5
    python -m pq_oscillators eval --fn psi01 --a -2 --p 0.5 --x -4
    python -m pq_oscillators qsym --resolve --nmax 5 --alphabet 3

Exit codes: 0 every check passed, 1 a check failed, 2 bad flags or run
configuration, 3 a library error during the run (surfaced in the report).
"""

import argparse
import functools
import logging
import sys

from ..coherent import posenergy, zcoherent
from ..config import config as defaults
from ..config.run_config import RunConfig
from ..fock.relcheck import run_suite
from ..kernel import qkernel
from ..symmetric import qsymm
from ..tools import misc
from ..tools.errors import ArgumentError, ConfigurationError, Error
from ..tools.timing import Timer
from .report import build_report, check_report, result_record, scalar, write_report

logger = logging.getLogger(__name__)

VERBOSITY = {0: logging.WARNING, 1: logging.INFO}


def _eval(run_config):
    params = run_config.params
    fn = run_config.fn
    base = params.number(run_config.base) if run_config.base is not None else params.base
    x, a, n = run_config.x, run_config.a, run_config.n
    if fn == 'bracket':
        record = result_record(f'[{x}]', 'p-bracket', True, value=scalar(qkernel.q_bracket(x, base)))
    elif fn == 'factorial':
        record = result_record(f'[{n}]!', 'p-factorial', True, value=scalar(qkernel.q_bracket_factorial(n, base)))
    elif fn == 'pochhammer':
        record = result_record(f'({a};p)_{n}', 'q-pochhammer', True,
                               value=scalar(qkernel.q_pochhammer(a, float(base), n)))
    elif fn == 'gaussian':
        profile = run_config.profile
        record = result_record(f'gaussian multinomial {list(profile)}', 'gaussian-multinomial', True,
                               value=scalar(qkernel.gaussian_multinomial(profile, base)))
    elif fn == 'exp':
        series = qkernel.deformed_exp(x, float(base), full_output=True)
        record = result_record(f'e_p({x})', 'deformed-exponential', True,
                               value=[series.value.real, series.value.imag],
                               terms=series.terms, tailBound=series.tail_bound)
    else:
        series = qkernel.bilateral_psi01(a, float(base), x, full_output=True)
        record = result_record(f'0psi1({a}; p, {x})', 'bilateral-series', True, value=series.value,
                               terms=series.terms, window=[series.lower, series.upper],
                               tailBound=series.tail_bound)
    record['base'] = float(base)
    return [record], {}


def _verify(run_config):
    reports = run_suite(run_config.suite, run_config.mode_config(), run_config.tolerance, run_config.jobs)
    return [r.as_record() for r in reports], {}


def _coherent(run_config):
    config = run_config.mode_config()
    exact = config.params.exact
    tolerance = defaults.RELATION_TOLERANCE if run_config.tolerance is None else run_config.tolerance
    state = zcoherent.build_coherent_state(config, run_config.r, run_config.method)
    other_method = 'exponential' if run_config.method == 'series' else 'series'
    other = zcoherent.build_coherent_state(config, run_config.r, other_method)

    residual = zcoherent.normalization_residual(state)
    results = [result_record('coherent normalization', 'coherent-normalization', residual <= tolerance, residual,
                             value=state.normalization)]
    occupations = set(state.amplitudes) | set(other.amplitudes)
    deviation = max(state.amplitude(occ).residual(other.amplitude(occ), exact) for occ in occupations)
    results.append(result_record('series = exponential construction', 'coherent-construction',
                                 deviation <= (0. if exact else tolerance), deviation,
                                 amplitudes=state.as_records()))
    for mode in range(1, config.n_modes + 1):
        eigen = zcoherent.check_lowering_eigenproblem(state, mode, tolerance)
        results.append({**eigen.as_record(), 'family': 'coherent-eigenvalue'})
    return results, {}


def _positive(run_config):
    params = run_config.params
    n_modes = run_config.n_modes
    lambdas = run_config.lambdas or (1.,) * n_modes
    config = posenergy.PositiveEnergyConfig(params, lambdas, run_config.window)
    state = posenergy.build_positive_coherent(config, run_config.r)
    tolerance = run_config.tolerance

    normalization = state.normalization
    residual = abs(state.magnitude_sum() * normalization ** 2 - 1)
    bound = defaults.POSITIVE_NORMALIZATION_TOLERANCE if tolerance is None else tolerance
    results = [result_record('positive normalization', 'positive-normalization', residual <= bound, residual,
                             value=normalization, window=state.window, lattice=state.as_records())]
    for mode in range(1, n_modes + 1):
        eigen = posenergy.check_raising_eigenproblem(state, mode, tolerance)
        results.append({**eigen.as_record(), 'family': 'positive-eigenvalue'})
        results += [r.as_record() for r in posenergy.ladder_consistency_check(config, mode, tolerance=tolerance)]
    return results, {'warnings': list(state.warnings)}


def _resolution_record(resolution):
    return result_record('convention resolution', 'qsym-convention', bool(resolution.satisfying),
                         value=[c.label for c in resolution.satisfying], **resolution.as_record())


def _convention_record(convention):
    return {'label': convention.label, **convention.describe()}


def _qsym_checks(word, params, convention, tolerance):
    state = qsymm.build_qsym_state(word, params, convention)
    norm_tolerance = defaults.TOLERANCE if tolerance is None else tolerance
    residual = qsymm.unit_norm_residual(state)
    results = [result_record('unit norm', 'qsym-norm', residual <= norm_tolerance, residual,
                             state=state.as_records())]
    states = {}
    for k in range(1, len(word)):
        verdict = qsymm.exchange_check(word, k, params, convention, states)
        results.append(result_record(f'exchange k={k}', 'qsym-exchange', verdict.holds, verdict.deviation,
                                     epsilon=verdict.epsilon, formal=verdict.formal))
        back = qsymm.transition_inverse(k, qsymm.transition_apply(k, state))
        deviation = back.numeric_deviation(state)
        results.append(result_record(f'transition inverse k={k}', 'qsym-transition',
                                     back.formally_equals(state) and deviation <= defaults.PHASE_TOLERANCE,
                                     deviation))
    fundamental, accumulated = qsymm.sort_to_fundamental(state)
    results.append(result_record('sort to fundamental', 'qsym-transition', True, value=accumulated,
                                 fundamentalWord=list(fundamental.input_word)))
    identity = qsymm.multinomial_identity_check(qsymm.profile_of(word), params, convention)
    results.append(result_record('permutation-sum identity', 'qsym-identity', identity.passed,
                                 abs(float(identity.lhs) - float(identity.rhs)),
                                 profile=list(identity.profile), lhs=float(identity.lhs), rhs=float(identity.rhs)))
    return results


def _qsym(run_config):
    convention = qsymm.DEFAULT_CONVENTION
    results = []
    if run_config.resolve:
        resolution = qsymm.resolve_convention(run_config.nmax, run_config.alphabet, n_jobs=run_config.jobs)
        convention = resolution.convention
        results.append(_resolution_record(resolution))
    if run_config.word:
        results += _qsym_checks(run_config.word, run_config.params, convention, run_config.tolerance)
    return results, {'convention': _convention_record(convention)}


def _resolve(run_config):
    resolution = qsymm.resolve_convention(run_config.nmax, run_config.alphabet, n_jobs=run_config.jobs)
    return [_resolution_record(resolution)], {'convention': _convention_record(resolution.convention)}


COMMANDS = {'eval': _eval,
            'verify': _verify,
            'coherent': _coherent,
            'positive': _positive,
            'qsym': _qsym,
            'resolve': _resolve}


def build_parser():
    int_list = functools.partial(misc.to_list, cast=int)
    float_list = functools.partial(misc.to_list, cast=float)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--p', type=float, help='real deformation parameter p > 0 (0.5 by default)')
    common.add_argument('--theta', type=float, help='angle of q = exp(i theta), radians (0 by default)')
    common.add_argument('--theta-pi-over', metavar='K', type=int, help='set theta = pi / K')
    common.add_argument('--modes', type=int, help='number of modes')
    common.add_argument('--cutoff', type=int_list, help='maximum occupation, one value or one per mode')
    common.add_argument('--total-cutoff', type=int, help='maximum total occupation')
    common.add_argument('--exact', action='store_true', default=None, help='exact rational arithmetic')
    common.add_argument('--tolerance', type=float, help='pass threshold of the checks')
    common.add_argument('--jobs', metavar='N', type=int, help='number of jobs (1 by default)')
    common.add_argument('--out', type=str, help='report path (standard output by default)')
    common.add_argument('--format', choices=defaults.OUTPUT_FORMATS, help='report format (json by default)')
    common.add_argument('--config', type=str, help='key = value run-config file, flags override it')
    common.add_argument('-v', '--verbose', action='count', default=None, help='-v info, -vv debug')

    parser = argparse.ArgumentParser(prog=defaults.TOOL_NAME,
                                     description='(p,q)-deformed multimode oscillator engine')
    subparsers = parser.add_subparsers(dest='command', required=True)

    evaluate = subparsers.add_parser('eval', parents=[common], help='evaluate a deformed special function')
    evaluate.add_argument('--fn', choices=defaults.EVAL_FUNCTIONS)
    evaluate.add_argument('--x', type=float, help='argument of bracket, exp and psi01')
    evaluate.add_argument('--a', type=float, help='parameter of pochhammer and psi01')
    evaluate.add_argument('--n', type=int, help='order of factorial and pochhammer')
    evaluate.add_argument('--base', type=float, help='base of the bracket (p by default)')
    evaluate.add_argument('--profile', type=int_list, help='letter counts of the gaussian multinomial')

    verify = subparsers.add_parser('verify', parents=[common], help='check a relation suite on a truncated space')
    verify.add_argument('--suite', choices=defaults.SUITES + ('all',))

    coherent = subparsers.add_parser('coherent', parents=[common], help='covariant coherent states')
    coherent.add_argument('--r', type=float_list, help='|z_i|^2, one per mode')
    coherent.add_argument('--method', choices=defaults.COHERENT_METHODS)

    positive = subparsers.add_parser('positive', parents=[common], help='positive-energy coherent states')
    positive.add_argument('--r', type=float_list, help='|z_i|^2 > 1/(1-p), one per mode')
    positive.add_argument('--lambda', dest='lambdas', type=float_list, help='lambda_i > 0, one per mode')
    positive.add_argument('--window', type=int, help='half width of the label window (automatic by default)')

    qsym = subparsers.add_parser('qsym', parents=[common], help='q-symmetric states')
    qsym.add_argument('--word', type=int_list, help='input word, letters 1..n')
    qsym.add_argument('--resolve', action='store_true', default=None, help='resolve the convention first')
    qsym.add_argument('--nmax', type=int, help='probe word length bound')
    qsym.add_argument('--alphabet', type=int, help='probe alphabet bound')

    resolve = subparsers.add_parser('resolve', parents=[common], help='resolve the q-symmetrisation convention')
    resolve.add_argument('--nmax', type=int, help='probe word length bound')
    resolve.add_argument('--alphabet', type=int, help='probe alphabet bound')
    return parser


PACKAGE_LOGGER = __name__.split('.')[0]


def run(argv=None):
    """Parse argv, run the command and write the report

    The package log level follows --verbose for the duration of the run only.

    Returns:
        (int, dict): exit code and report (None when the flags could not be parsed)
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (2 if exc.code else 0), None

    package_logger = logging.getLogger(PACKAGE_LOGGER)
    previous = package_logger.level
    package_logger.setLevel(VERBOSITY.get(args.verbose or 0, logging.DEBUG))
    try:
        return _execute(parser, args)
    finally:
        package_logger.setLevel(previous)


def _execute(parser, args):
    try:
        run_config = RunConfig.from_args(args)
    except (ArgumentError, ConfigurationError) as error:
        parser.print_usage(sys.stderr)
        logger.error(f'[run] {error}')
        return 2, build_report(None, [], error=error)

    with Timer(run_config.command):
        try:
            results, extra = COMMANDS[run_config.command](run_config)
            report = build_report(run_config, results, **extra)
        except Error as error:
            logger.error(f'[run] {type(error).__name__}: {error}')
            report = build_report(run_config, [], error=error)
    logger.debug(f'[run] timers: {Timer.summary()}')

    problems = check_report(report)
    if problems:
        logger.warning(f'[run] report does not match the schema: {problems}')
    write_report(report, run_config.out, run_config.format)

    if 'error' in report:
        return 3, report
    return (0 if report['overallPass'] else 1), report


def main(argv=None):
    logging.basicConfig(format='%(asctime)s %(levelname)s %(name)s: %(message)s')
    code, _ = run(argv)
    sys.exit(code)


if __name__ == '__main__':
    main()
