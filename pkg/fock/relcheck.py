# coding: utf-8
"""Word evaluation and relation verification on the truncated Fock space

A relation is a formal linear combination of generator words
sum_t c_t W_t = c * Identity. It is evaluated on every interior basis state of
a ModeConfig (states for which no intermediate creation can cross a cutoff) and
the largest residual norm is reported.
"""

import dataclasses
import itertools
import logging
import numbers

from joblib import Parallel, delayed

from ..config import config as defaults
from ..kernel.graded import QGraded
from ..kernel.qkernel import step_indicator
from ..tools.errors import ArgumentError, ConfigurationError, ConsistencyError, DomainError
from ..tools.timing import Timer
from . import fockspace

logger = logging.getLogger(__name__)

TOKEN_KINDS = ('A', 'Adag', 'Num', 'Ham', 'E', 'BracketNum')


@dataclasses.dataclass(frozen=True)
class GeneratorToken:
    """One generator of the algebra: a_i, a+_i, N_i, H_i, [N_i] or E_ij"""
    kind: str
    indices: tuple

    def __post_init__(self):
        if self.kind not in TOKEN_KINDS:
            raise ArgumentError(f'unknown generator kind {self.kind!r}, expected one of {TOKEN_KINDS}')
        expected = 2 if self.kind == 'E' else 1
        if len(self.indices) != expected:
            raise ArgumentError(f'{self.kind} takes {expected} index(es), got {self.indices}')
        if any(not isinstance(i, numbers.Integral) or i < 1 for i in self.indices):
            raise ArgumentError(f'mode indices are 1-based integers, got {self.indices}')

    def __str__(self):
        return self.kind + ''.join(str(i) for i in self.indices)

    def steps(self):
        """Elementary (kind, mode) actions in application order"""
        if self.kind == 'E':
            i, j = self.indices
            return (('A', j), ('Adag', i))
        return ((self.kind, self.indices[0]),)


def a(i):
    return GeneratorToken('A', (i,))


def adag(i):
    return GeneratorToken('Adag', (i,))


def num(i):
    return GeneratorToken('Num', (i,))


def ham(i):
    return GeneratorToken('Ham', (i,))


def bracket_num(i):
    return GeneratorToken('BracketNum', (i,))


def e(i, j):
    return GeneratorToken('E', (i, j))


_ACTIONS = {
    'A': fockspace.apply_annihilation,
    'Adag': fockspace.apply_creation,
    'Num': fockspace.apply_number,
    'Ham': fockspace.apply_subhamiltonian,
    'BracketNum': fockspace.apply_bracket_number,
}


def evaluate_word(word, state):
    """Apply a word of generators to a state, rightmost token first

    Raises:
        ArgumentError: a token index is outside 1..n_modes
    """
    for token in reversed(tuple(word)):
        for kind, mode in token.steps():
            state = _ACTIONS[kind](mode, state)
    return state


def creation_depth(word, n_modes):
    """Largest running net number of creations, per mode and in total

    The word is scanned right to left, as it acts. A basis state |n> can be
    evaluated without overflow iff n_i + depth_i <= cutoff_i for every mode and
    sum(n) + total depth <= max_total.
    """
    running = [0] * n_modes
    depth = [0] * n_modes
    total = total_depth = 0
    for token in reversed(tuple(word)):
        for kind, mode in token.steps():
            if not 1 <= mode <= n_modes:
                raise ArgumentError(f'mode index {mode} outside 1..{n_modes}')
            if kind in ('A', 'Adag'):
                delta = 1 if kind == 'Adag' else -1
                running[mode - 1] += delta
                total += delta
                depth[mode - 1] = max(depth[mode - 1], running[mode - 1])
                total_depth = max(total_depth, total)
    return tuple(depth), total_depth


def interior_states(words, config):
    """Basis occupations on which every word evaluates without overflow"""
    depth = [0] * config.n_modes
    total_depth = 0
    for word in words:
        word_depth, word_total = creation_depth(word, config.n_modes)
        depth = [max(d, w) for d, w in zip(depth, word_depth)]
        total_depth = max(total_depth, word_total)
    states = []
    for occ in fockspace.basis_states(config):
        if any(n + d > c for n, d, c in zip(occ, depth, config.cutoff)):
            continue
        if config.max_total is not None and sum(occ) + total_depth > config.max_total:
            continue
        states.append(occ)
    return states


@dataclasses.dataclass(frozen=True)
class RelationExpr:
    """sum_t coeff_t * word_t = constant * Identity

    Attributes:
        label (str): human readable identifier, e.g. 'a1 a+2 = q a+2 a1'
        family (str): relation family the instance belongs to
        terms (tuple): (QGraded coefficient, tuple of GeneratorToken) pairs
        constant (QGraded): right-hand side multiple of the identity
    """
    label: str
    family: str
    terms: tuple
    constant: QGraded = dataclasses.field(default_factory=QGraded.zero)

    def words(self):
        return [word for _, word in self.terms]

    def residual_vector(self, state):
        result = state.scale(-1).scale(self.constant)
        for coeff, word in self.terms:
            result = result + evaluate_word(word, state).scale(coeff)
        return result


@dataclasses.dataclass(frozen=True)
class AdjointPair:
    """Claim <X u, v> = <u, Y v> for all interior basis states u, v"""
    label: str
    family: str
    word: tuple
    adjoint_word: tuple


@dataclasses.dataclass(frozen=True)
class VerificationReport:
    label: str
    family: str
    parameter_set: dict
    domain_size: int
    max_residual: float
    tolerance: float
    passed: bool
    skipped: bool = False
    worst_state: tuple = None

    def as_record(self):
        return {'label': self.label,
                'family': self.family,
                'domainSize': int(self.domain_size),
                'maxResidual': float(self.max_residual),
                'pass': bool(self.passed),
                'skipped': self.skipped}


def _tolerance(tolerance):
    if tolerance is not None:
        return tolerance
    return defaults.RELATION_TOLERANCE


def check_relation(rel, config, tolerance=None):
    """Evaluate a relation on every interior basis state

    Args:
        rel (RelationExpr): relation to verify
        config (ModeConfig): truncated space
        tolerance (float, optional): pass threshold on the max residual norm

    Raises:
        ConfigurationError: no basis state is interior for this relation

    Returns:
        VerificationReport
    """
    tolerance = _tolerance(tolerance)
    domain = interior_states(rel.words(), config)
    if not domain:
        raise ConfigurationError(f'[check_relation] empty interior domain for {rel.label!r}: '
                                 f'increase the cutoffs {config.cutoff} (max_total={config.max_total})')
    max_residual = 0.
    worst = None
    for occ in domain:
        residual = rel.residual_vector(fockspace.basis_state(occ, config))
        if residual.overflow:
            raise ConsistencyError(f'[check_relation] overflow on interior state {occ} for {rel.label!r}')
        value = residual.norm()
        if worst is None or value > max_residual:
            max_residual, worst = value, occ
    logger.debug(f'[check_relation] {rel.label}: {len(domain)} states, max residual {max_residual:.3e}')
    return VerificationReport(label=rel.label, family=rel.family, parameter_set=config.describe(),
                              domain_size=len(domain), max_residual=float(max_residual),
                              tolerance=tolerance, passed=max_residual <= tolerance, worst_state=worst)


def check_adjoint_pair(pair, config, tolerance=None):
    """Verify <X u, v> = <u, Y v> on all pairs of interior basis states

    <X u, v> is conj((X u)_v) and <u, Y v> is (Y v)_u, so one evaluation per
    basis state and per word is enough.
    """
    tolerance = _tolerance(tolerance)
    domain = interior_states([pair.word, pair.adjoint_word], config)
    if not domain:
        raise ConfigurationError(f'[check_adjoint_pair] empty interior domain for {pair.label!r}')
    params = config.params
    forward = {occ: evaluate_word(pair.word, fockspace.basis_state(occ, config)) for occ in domain}
    backward = {occ: evaluate_word(pair.adjoint_word, fockspace.basis_state(occ, config)) for occ in domain}
    max_residual = 0.
    worst = None
    for u, v in itertools.product(domain, repeat=2):
        difference = forward[u].amplitude(v).conjugate() - backward[v].amplitude(u)
        if params.exact and difference.is_zero():
            continue
        value = abs(params.realize(difference))
        if value > max_residual:
            max_residual, worst = value, (u, v)
    return VerificationReport(label=pair.label, family=pair.family, parameter_set=config.describe(),
                              domain_size=len(domain), max_residual=float(max_residual),
                              tolerance=tolerance, passed=max_residual <= tolerance, worst_state=worst)


def skipped_report(label, family, config, tolerance=None):
    return VerificationReport(label=label, family=family, parameter_set=config.describe(), domain_size=0,
                              max_residual=0., tolerance=_tolerance(tolerance), passed=True,
                              skipped=True)


# relation builders -----------------------------------------------------------------------------------------------


def _c(params, value=1, q_power=0):
    return QGraded.monomial(params.number(value), q_power)


def _relation(label, family, params, *terms, constant=0):
    """terms: (value, q_power, word) triples"""
    graded = tuple((_c(params, value, q_power), tuple(word)) for value, q_power, word in terms)
    return RelationExpr(label=label, family=family, terms=graded, constant=_c(params, constant))


def _commutation(label, family, params, left, right, q_power=0, value=1):
    """left = value * q^q_power * right"""
    return _relation(label, family, params, (1, 0, left), (-value, q_power, right))


def _pairs(n):
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def oscillator_relations(config):
    params = config.params
    n = config.n_modes
    base = params.base
    relations = []
    for i in range(1, n + 1):
        relations.append(_relation(f'a{i} a+{i} - p a+{i} a{i} = 1', 'p-commutator', params,
                                   (1, 0, [a(i), adag(i)]), (-base, 0, [adag(i), a(i)]), constant=1))
        relations.append(_relation(f'a+{i} a{i} = [N{i}]', 'bracket-number', params,
                                   (1, 0, [adag(i), a(i)]), (-1, 0, [bracket_num(i)])))
        top = config.cutoff[i - 1]
        series = [(fockspace.number_series_coefficient(k, params), 0, [adag(i)] * k + [a(i)] * k)
                  for k in range(1, top + 1)]
        relations.append(_relation(f'N{i} = sum_k (1-p)^k/(1-p^k) a+{i}^k a{i}^k', 'number-series', params,
                                   *series, (-1, 0, [num(i)])))
        for j in range(1, n + 1):
            delta = 1 if i == j else 0
            relations.append(_relation(f'[N{i}, a{j}] = -{delta} a{j}', 'number-commutator', params,
                                       (1, 0, [num(i), a(j)]), (-1, 0, [a(j), num(i)]),
                                       (delta, 0, [a(j)])))
            relations.append(_relation(f'[N{i}, a+{j}] = {delta} a+{j}', 'number-commutator', params,
                                       (1, 0, [num(i), adag(j)]), (-1, 0, [adag(j), num(i)]),
                                       (-delta, 0, [adag(j)])))
    for i, j in _pairs(n):
        relations.append(_commutation(f'a{i} a+{j} = q a+{j} a{i}', 'mixed-exchange', params,
                                      [a(i), adag(j)], [adag(j), a(i)], q_power=1))
        relations.append(_commutation(f'a{i} a{j} = q^-1 a{j} a{i}', 'annihilator-exchange', params,
                                      [a(i), a(j)], [a(j), a(i)], q_power=-1))
    return relations


def conjugate_relations(config):
    """Daggered consequences of the exchange relations, i < j"""
    params = config.params
    relations = []
    for i, j in _pairs(config.n_modes):
        relations.append(_commutation(f'a{j} a+{i} = q^-1 a+{i} a{j}', 'mixed-exchange-conjugate', params,
                                      [a(j), adag(i)], [adag(i), a(j)], q_power=-1))
        relations.append(_commutation(f'a+{j} a+{i} = q a+{i} a+{j}', 'creator-exchange', params,
                                      [adag(j), adag(i)], [adag(i), adag(j)], q_power=1))
    return relations


def subhamiltonian_relations(config):
    """Raises DomainError at p = 1"""
    params = config.params
    nu = params.nu
    n = config.n_modes
    relations = []
    for i in range(1, n + 1):
        relations.append(_relation(f'H{i} = a+{i} a{i} - nu', 'subhamiltonian-definition', params,
                                   (1, 0, [ham(i)]), (-1, 0, [adag(i), a(i)]), constant=-nu))
        for j in range(1, n + 1):
            factor = params.base if i == j else params.number(1)
            relations.append(_commutation(f'H{i} a+{j} = {"p" if i == j else "1"} a+{j} H{i}',
                                          'subhamiltonian-creator', params,
                                          [ham(i), adag(j)], [adag(j), ham(i)], value=factor))
    for i, j in _pairs(n):
        relations.append(_commutation(f'[H{i}, H{j}] = 0', 'subhamiltonian-commutator', params,
                                      [ham(i), ham(j)], [ham(j), ham(i)]))
    return relations


def _sign(x, y):
    return 1 if x < y else -1


def shared_row_exponent(i, j, k):
    """E_ij E_ik = q^s E_ik E_ij for distinct i, j, k

    s = s(i,k) + s(j,i) - s(j,k) with s(x,y) = +1 if x < y else -1. This equals
    -1 (j < k) or +1 (j > k) unless i lies strictly between j and k.
    """
    return _sign(i, k) + _sign(j, i) - _sign(j, k)


def four_index_exponent(i, j, k, l):
    """E_ij E_kl = q^F E_kl E_ij, F = 2(R(i,k) + R(j,l) - R(j,k) - R(i,l))"""
    return 2 * (step_indicator(i, k) + step_indicator(j, l) - step_indicator(j, k) - step_indicator(i, l))


def gl_relations(config):
    params = config.params
    n = config.n_modes
    modes = range(1, n + 1)
    relations = []
    for i, j in _pairs(n):
        relations.append(_commutation(f'[E{i}{i}, E{j}{j}] = 0', 'gl-cartan', params,
                                      [e(i, i), e(j, j)], [e(j, j), e(i, i)]))
    for i, j, k in itertools.permutations(modes, 3):
        relations.append(_commutation(f'[E{i}{i}, E{j}{k}] = 0', 'gl-cartan-offdiagonal', params,
                                      [e(i, i), e(j, k)], [e(j, k), e(i, i)]))
    for i, j in itertools.permutations(modes, 2):
        relations.append(_relation(f'[E{i}{j}, E{j}{i}] = E{i}{i} - E{j}{j}', 'gl-commutator', params,
                                   (1, 0, [e(i, j), e(j, i)]), (-1, 0, [e(j, i), e(i, j)]),
                                   (-1, 0, [e(i, i)]), (1, 0, [e(j, j)])))
        relations.append(_relation(f'E{i}{i} E{i}{j} - p E{i}{j} E{i}{i} = E{i}{j}', 'gl-p-commutator', params,
                                   (1, 0, [e(i, i), e(i, j)]), (-params.base, 0, [e(i, j), e(i, i)]),
                                   (-1, 0, [e(i, j)])))
    for i, j, k in itertools.permutations(modes, 3):
        s = shared_row_exponent(i, j, k)
        relations.append(_commutation(f'E{i}{j} E{i}{k} = q^{s} E{i}{k} E{i}{j}', 'gl-shared-row', params,
                                      [e(i, j), e(i, k)], [e(i, k), e(i, j)], q_power=s))
    for i, j, k, l in itertools.permutations(modes, 4):
        f = four_index_exponent(i, j, k, l)
        relations.append(_commutation(f'E{i}{j} E{k}{l} = q^{f} E{k}{l} E{i}{j}', 'gl-four-index', params,
                                      [e(i, j), e(k, l)], [e(k, l), e(i, j)], q_power=f))
    return relations


def hermiticity_pairs(config):
    modes = range(1, config.n_modes + 1)
    pairs = [AdjointPair(f'a+{i} = (a{i})^+', 'ladder-adjoint', (adag(i),), (a(i),)) for i in modes]
    pairs += [AdjointPair(f'E{i}{j}^+ = E{j}{i}', 'gl-adjoint', (e(i, j),), (e(j, i),))
              for i, j in itertools.product(modes, repeat=2)]
    return pairs


def classical_relations(config):
    """Ordinary boson and gl(n) relations, built on the p = q = 1 parameters"""
    params = config.params
    n = config.n_modes
    modes = range(1, n + 1)
    relations = []
    for i in modes:
        relations.append(_relation(f'[a{i}, a+{i}] = 1', 'boson-commutator', params,
                                   (1, 0, [a(i), adag(i)]), (-1, 0, [adag(i), a(i)]), constant=1))
    for i, j in itertools.permutations(modes, 2):
        relations.append(_commutation(f'[a{i}, a+{j}] = 0', 'boson-commutator', params,
                                      [a(i), adag(j)], [adag(j), a(i)]))
    for i, j in _pairs(n):
        relations.append(_commutation(f'[a{i}, a{j}] = 0', 'boson-commutator', params,
                                      [a(i), a(j)], [a(j), a(i)]))
        relations.append(_commutation(f'[a+{i}, a+{j}] = 0', 'boson-commutator', params,
                                      [adag(i), adag(j)], [adag(j), adag(i)]))
    for i, j, k, l in itertools.product(modes, repeat=4):
        terms = [(1, 0, [e(i, j), e(k, l)]), (-1, 0, [e(k, l), e(i, j)])]
        if j == k:
            terms.append((-1, 0, [e(i, l)]))
        if l == i:
            terms.append((1, 0, [e(k, j)]))
        relations.append(_relation(f'[E{i}{j}, E{k}{l}] = d{j}{k} E{i}{l} - d{l}{i} E{k}{j}', 'gl-classical',
                                   params, *terms))
    return relations


SUITE_BUILDERS = {
    'oscillator': oscillator_relations,
    'conjugates': conjugate_relations,
    'subhamiltonian': subhamiltonian_relations,
    'gl': gl_relations,
    'hermiticity': hermiticity_pairs,
    'classical': classical_relations,
}


def _run_check(item, config, tolerance):
    if isinstance(item, AdjointPair):
        return check_adjoint_pair(item, config, tolerance)
    return check_relation(item, config, tolerance)


def run_suite(suite_id, config, tolerance=None, n_jobs=defaults.N_JOBS):
    """Instantiate every relation of a suite for the configured modes and check them

    Args:
        suite_id (str): one of config.SUITES or 'all'
        config (ModeConfig): truncated space
        tolerance (float, optional): pass threshold. Defaults to config.RELATION_TOLERANCE
        n_jobs (int, optional): joblib workers

    Raises:
        ArgumentError: unknown suite
        DomainError: subhamiltonian suite at p = 1

    Returns:
        list of VerificationReport, sorted by label
    """
    if suite_id == 'all':
        reports = []
        for name in defaults.SUITES:
            if name == 'subhamiltonian' and config.params.base == 1:
                logger.warning('[run_suite] subhamiltonians are undefined at p = 1, suite skipped')
                reports.append(skipped_report('subhamiltonian suite', 'subhamiltonian', config, tolerance))
                continue
            reports.extend(run_suite(name, config, tolerance, n_jobs))
        return sorted(reports, key=lambda r: r.label)

    if suite_id not in SUITE_BUILDERS:
        raise ArgumentError(f'unknown suite {suite_id!r}, expected one of {defaults.SUITES + ("all",)}')
    if suite_id == 'classical':
        config = config.with_params(config.params.classical())
    if suite_id == 'subhamiltonian' and config.params.base == 1:
        raise DomainError('the subhamiltonian suite requires p != 1')

    items = SUITE_BUILDERS[suite_id](config)
    with Timer(f'suite {suite_id}', logging.DEBUG):
        reports = Parallel(n_jobs=n_jobs, verbose=0)(delayed(_run_check)(item, config, tolerance) for item in items)
    if suite_id == 'gl' and config.n_modes < 4:
        reports.append(skipped_report('E_ij E_kl four-index relation', 'gl-four-index', config, tolerance))

    failed = [r.label for r in reports if not r.passed]
    logger.info(f'[run_suite] {suite_id}: {len(reports)} checks, {len(failed)} failed')
    if failed:
        logger.info(f'[run_suite] failing: {failed[:defaults.MAX_COUNTEREXAMPLES]}')
    return sorted(reports, key=lambda r: r.label)
