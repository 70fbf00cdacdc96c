# coding: utf-8
"""q-symmetric N-particle states over an n-letter alphabet

A word (i_1,...,i_N) labels the tensor basis state |i_1> x ... x |i_N>. The
q-symmetric state of a word is a signature-weighted sum over its
rearrangements, normalised by a Gaussian multinomial in base p^2.

Three readings of the signature and of the permutation-sum identity are
possible. They are enumerated as Convention objects and settled by
resolve_convention, which checks every candidate against the exchange
property, unit norm and the permutation-sum identity.
"""

import collections
import dataclasses
import itertools
import logging
import math

import numpy as np
from joblib import Parallel, delayed
from sympy.utilities.iterables import multiset_permutations, partitions

from ..config import config as defaults
from ..kernel.graded import QGraded
from ..kernel.qkernel import DeformationParams, gaussian_multinomial, step_indicator
from ..tools.errors import ArgumentError, ConsistencyError, ConventionError

logger = logging.getLogger(__name__)

ALL_PERMUTATIONS = 'allPermutations'
DISTINCT_REARRANGEMENTS = 'distinctRearrangements'
INPUT_WORD_GLOBAL = 'inputWordGlobal'
PER_TERM_WORD = 'perTermWord'

PERM_SETS = (ALL_PERMUTATIONS, DISTINCT_REARRANGEMENTS)
P_EXPONENT_SCALES = (1, 2)
Q_PHASE_SOURCES = (INPUT_WORD_GLOBAL, PER_TERM_WORD)


@dataclasses.dataclass(frozen=True, order=True)
class Convention:
    """Reading of the signature sgn_q(sigma) = q^A p^B and of the permutation-sum identity

    Attributes:
        perm_set (str): sum over all N! positional permutations or over distinct rearrangements
        p_exponent_scale (int): the identity is read as sum p^(scale * B) = [N]_{p^2}! / prod [n_k]_{p^2}!
        q_phase_source (str): A is the inversion count of the input word or of each term word
    """
    perm_set: str = DISTINCT_REARRANGEMENTS
    p_exponent_scale: int = 2
    q_phase_source: str = INPUT_WORD_GLOBAL

    def __post_init__(self):
        if self.perm_set not in PERM_SETS:
            raise ArgumentError(f'unknown permutation set {self.perm_set!r}')
        if self.p_exponent_scale not in P_EXPONENT_SCALES:
            raise ArgumentError(f'p exponent scale must be 1 or 2, got {self.p_exponent_scale}')
        if self.q_phase_source not in Q_PHASE_SOURCES:
            raise ArgumentError(f'unknown q phase source {self.q_phase_source!r}')

    @property
    def label(self):
        return f'{self.perm_set}/scale{self.p_exponent_scale}/{self.q_phase_source}'

    def describe(self):
        return {'permSet': self.perm_set,
                'pExponentScale': self.p_exponent_scale,
                'qPhaseSource': self.q_phase_source}


DEFAULT_CONVENTION = Convention()


def all_conventions():
    return [Convention(*c) for c in itertools.product(PERM_SETS, P_EXPONENT_SCALES, Q_PHASE_SOURCES)]


def check_word(word, alphabet=None):
    word = tuple(int(i) for i in word)
    if not word:
        raise ArgumentError('a word needs at least one letter')
    if min(word) < 1 or (alphabet is not None and max(word) > alphabet):
        raise ArgumentError(f'letters of {word} must lie in 1..{alphabet or "n"}')
    return word


def inversion_count(word):
    """Number of pairs k < l with w_k > w_l"""
    return sum(step_indicator(x, y) for x, y in itertools.combinations(word, 2))


def epsilon(i, j):
    """+1 if i > j, -1 if i < j, 0 for equal letters"""
    return step_indicator(i, j) - step_indicator(j, i)


def profile_of(word, alphabet=None):
    """Letter counts (n_1,...,n_n)"""
    alphabet = alphabet or max(word)
    counts = collections.Counter(word)
    return tuple(counts.get(letter, 0) for letter in range(1, alphabet + 1))


def enumerate_words(max_length, alphabet):
    """Every word of length 1..max_length over 1..alphabet, shortest first"""
    for length in range(1, max_length + 1):
        yield from itertools.product(range(1, alphabet + 1), repeat=length)


def enumerate_profiles(max_length):
    """Letter-count profiles, one per integer partition of N = 1..max_length"""
    for total in range(1, max_length + 1):
        for part in partitions(total):
            yield tuple(sorted((k for k, m in part.items() for _ in range(m)), reverse=True))


def swap(word, k):
    """Word with letters k and k+1 (1-based) exchanged"""
    if not 1 <= k < len(word):
        raise ArgumentError(f'transition index {k} outside 1..{len(word) - 1}')
    word = list(word)
    word[k - 1], word[k] = word[k], word[k - 1]
    return tuple(word)


@dataclasses.dataclass(frozen=True)
class Signature:
    q_power: int
    p_power: int

    def value(self, params):
        return QGraded.monomial(params.base ** self.p_power, self.q_power)


def _terms(word, convention):
    """(term, term word) pairs of the convention's permutation set"""
    if convention.perm_set == DISTINCT_REARRANGEMENTS:
        return [(tuple(u), tuple(u)) for u in multiset_permutations(sorted(word))]
    return [(tuple(s + 1 for s in sigma), tuple(word[s] for s in sigma))
            for sigma in itertools.permutations(range(len(word)))]


def signature(term, input_word, convention):
    """sgn_q of one term

    term is the rearranged word for distinct rearrangements and the 1-based
    positional permutation for all permutations.
    """
    if convention.perm_set == DISTINCT_REARRANGEMENTS:
        term_word = tuple(term)
    else:
        term_word = tuple(input_word[s - 1] for s in term)
    source = input_word if convention.q_phase_source == INPUT_WORD_GLOBAL else term_word
    return Signature(inversion_count(source), inversion_count(term))


def prefactor(word, params):
    """sqrt(prod [n_k]_{p^2}! / [N]_{p^2}!)"""
    base = params.base ** 2
    profile = profile_of(word)
    return params.sqrt(1 / gaussian_multinomial(profile, base))


@dataclasses.dataclass
class QSymState:
    """q-symmetric state: prefactor * sum over words of q^a p^b multiplicities

    Attributes:
        input_word (tuple): word the state was built from
        convention (Convention): signature reading
        params (DeformationParams): realisation of p and q
        prefactor (float or sympy number): Gaussian multinomial normalisation
        terms (dict): tensor word -> {(q_power, p_power): multiplicity}
    """
    input_word: tuple
    convention: Convention
    params: DeformationParams
    prefactor: object
    terms: dict

    def amplitude(self, word):
        """Amplitude of one tensor word as a q-graded scalar"""
        graded = QGraded.zero()
        for (q_power, p_power), count in self.terms.get(tuple(word), {}).items():
            graded = graded + QGraded.monomial(count * self.params.base ** p_power, q_power)
        return graded.scale(self.prefactor)

    def words(self):
        return sorted(self.terms)

    def shifted(self, q_power):
        """q^q_power times this state, formally"""
        terms = {word: {(a + q_power, b): m for (a, b), m in stats.items()} for word, stats in self.terms.items()}
        return dataclasses.replace(self, terms=terms)

    def formally_equals(self, other):
        return self.terms == other.terms and profile_of(self.input_word) == profile_of(other.input_word)

    def numeric_deviation(self, other):
        params = self.params
        words = set(self.terms) | set(other.terms)
        return max((abs(params.realize(self.amplitude(w) - other.amplitude(w))) for w in words), default=0.)

    def as_records(self):
        return [{'word': list(w), 'terms': [{'qPower': a, 'pPower': b, 'multiplicity': m}
                                            for (a, b), m in sorted(stats.items())]}
                for w, stats in sorted(self.terms.items())]


def build_qsym_state(input_word, params, convention=DEFAULT_CONVENTION):
    """q-symmetric state of input_word under a convention

    Returns:
        QSymState
    """
    input_word = check_word(input_word)
    terms = collections.defaultdict(collections.Counter)
    for term, term_word in _terms(input_word, convention):
        sig = signature(term, input_word, convention)
        terms[term_word][sig.q_power, sig.p_power] += 1
    return QSymState(input_word, convention, params, prefactor(input_word, params),
                     {word: dict(stats) for word, stats in terms.items()})


def qsym_norm_squared(state):
    """<state, state> as a q-graded scalar (tensor words orthonormal)"""
    total = QGraded.zero()
    for word in state.terms:
        amplitude = state.amplitude(word)
        total = total + amplitude.conjugate() * amplitude
    return total


def qsym_norm(state):
    return float(np.sqrt(abs(state.params.realize(qsym_norm_squared(state)))))


def unit_norm_residual(state):
    """|<state, state> - 1|, exactly 0. in exact mode when the norm is exactly 1"""
    difference = qsym_norm_squared(state) - QGraded.monomial(state.params.number(1))
    if state.params.exact and difference.is_zero():
        return 0.
    return abs(state.params.realize(difference))


@dataclasses.dataclass(frozen=True)
class ExchangeVerdict:
    word: tuple
    k: int
    epsilon: int
    formal: bool
    deviation: float
    holds: bool

    def as_record(self):
        return {'word': list(self.word), 'k': self.k, 'epsilon': self.epsilon,
                'formal': self.formal, 'deviation': self.deviation, 'pass': bool(self.holds)}


def exchange_check(input_word, k, params, convention=DEFAULT_CONVENTION, states=None):
    """build(..i_k, i_k+1..) = q^eps(i_k, i_k+1) build(..i_k+1, i_k..)

    Both sides are compared formally (integer q and p exponents) and
    numerically at params.

    Args:
        states (dict, optional): cache word -> QSymState shared between calls
    """
    input_word = check_word(input_word)
    swapped = swap(input_word, k)
    states = {} if states is None else states
    for w in (input_word, swapped):
        if w not in states:
            states[w] = build_qsym_state(w, params, convention)
    eps = epsilon(input_word[k - 1], input_word[k])
    left, right = states[input_word], states[swapped].shifted(eps)
    formal = left.formally_equals(right)
    deviation = left.numeric_deviation(right)
    return ExchangeVerdict(input_word, k, eps, formal, float(deviation),
                           formal and deviation <= defaults.PHASE_TOLERANCE)


def transition_apply(k, state):
    """P_{k,k+1}: the state built from the input word with letters k, k+1 exchanged"""
    return build_qsym_state(swap(state.input_word, k), state.params, state.convention)


def transition_inverse(k, state):
    """P_{k+1,k} = P_{k,k+1}^-1"""
    return transition_apply(k, state)


def sort_to_fundamental(state):
    """Bubble-sort the input word with transition operators

    Each swap of a descent multiplies the state by q^-1, so the fundamental
    state with sorted letters equals q^-R(w) times the original.

    Raises:
        ConsistencyError: accumulated phase or amplitudes disagree with the inversion count

    Returns:
        (QSymState, int): fundamental state and accumulated q exponent
    """
    current = state
    accumulated = 0
    word = list(state.input_word)
    changed = True
    while changed:
        changed = False
        for k in range(1, len(word)):
            if word[k - 1] > word[k]:
                eps = epsilon(word[k - 1], word[k])
                current = transition_apply(k, current)
                word = list(current.input_word)
                accumulated -= eps
                changed = True
    expected = -inversion_count(state.input_word)
    if accumulated != expected:
        raise ConsistencyError(f'[sort_to_fundamental] accumulated q^{accumulated}, expected q^{expected}')
    if not current.formally_equals(state.shifted(accumulated)):
        raise ConsistencyError('[sort_to_fundamental] fundamental state differs from the phased input state')
    return current, accumulated


@dataclasses.dataclass(frozen=True)
class IdentityReport:
    profile: tuple
    convention: Convention
    lhs: object
    rhs: object
    passed: bool

    def as_record(self):
        return {'profile': list(self.profile), 'convention': self.convention.label,
                'lhs': float(self.lhs), 'rhs': float(self.rhs), 'pass': bool(self.passed)}


def multinomial_identity_check(profile, params, convention=DEFAULT_CONVENTION, max_length=None):
    """sum over the permutation set of p^(scale * B) against [N]_{p^2}! / prod [n_k]_{p^2}!

    Exact comparison in exact mode, relative 1e-12 in float mode.

    Raises:
        ArgumentError: N above max_length (default config.IDENTITY_MAX_WORD_LENGTH)
    """
    max_length = max_length or defaults.IDENTITY_MAX_WORD_LENGTH
    profile = tuple(int(n) for n in profile)
    if sum(profile) > max_length:
        raise ArgumentError(f'N = {sum(profile)} above the enumeration bound {max_length}')
    word = tuple(letter for letter, n in enumerate(profile, 1) for _ in range(n))
    base = params.base
    lhs = 0
    for term, _ in _terms(word, convention):
        lhs += base ** (convention.p_exponent_scale * inversion_count(term))
    rhs = gaussian_multinomial(profile, base ** 2)
    if params.exact:
        passed = bool(lhs - rhs == 0)
    else:
        passed = math.isclose(lhs, rhs, rel_tol=1e-12, abs_tol=0.)
    return IdentityReport(profile, convention, lhs, rhs, passed)


@dataclasses.dataclass
class ConventionEvidence:
    convention: Convention
    exchange_pass: bool = True
    norm_pass: bool = True
    identity_pass: bool = True
    counterexamples: list = dataclasses.field(default_factory=list)

    @property
    def satisfied(self):
        return self.exchange_pass and self.norm_pass and self.identity_pass

    def add(self, requirement, record):
        if sum(1 for c in self.counterexamples if c['requirement'] == requirement) < defaults.MAX_COUNTEREXAMPLES:
            self.counterexamples.append({'requirement': requirement, **record})

    def as_record(self):
        return {'convention': self.convention.describe(), 'label': self.convention.label,
                'exchange': self.exchange_pass, 'unitNorm': self.norm_pass, 'identity': self.identity_pass,
                'pass': bool(self.satisfied), 'counterexamples': self.counterexamples}


@dataclasses.dataclass
class ResolutionReport:
    satisfying: list
    evidence: list
    probe: dict

    @property
    def convention(self):
        return self.satisfying[0]

    def as_record(self):
        return {'satisfying': [c.label for c in self.satisfying],
                'probe': self.probe,
                'evidence': [e.as_record() for e in self.evidence]}


def _grid_params(grid):
    return [DeformationParams(p=p, theta=theta) for p, theta in grid]


def probe_convention(convention, max_length, alphabet, grid):
    """Evidence of one convention on every probe word and grid point"""
    evidence = ConventionEvidence(convention)
    words = list(enumerate_words(max_length, alphabet))
    for params in _grid_params(grid):
        states = {}
        for word in words:
            for k in range(1, len(word)):
                verdict = exchange_check(word, k, params, convention, states)
                if not verdict.holds:
                    evidence.exchange_pass = False
                    evidence.add('exchange', {'p': params.p, 'theta': params.theta, **verdict.as_record()})
            state = states.get(word) or build_qsym_state(word, params, convention)
            residual = unit_norm_residual(state)
            if residual > defaults.TOLERANCE:
                evidence.norm_pass = False
                evidence.add('unitNorm', {'p': params.p, 'theta': params.theta, 'word': list(word),
                                          'deviation': float(residual)})
        for profile in enumerate_profiles(max_length):
            report = multinomial_identity_check(profile, params, convention)
            if not report.passed:
                evidence.identity_pass = False
                evidence.add('identity', {'p': params.p, **report.as_record()})
    return evidence


def resolve_convention(max_length=defaults.PROBE_MAX_WORD_LENGTH, alphabet=defaults.PROBE_MAX_ALPHABET,
                       grid=defaults.CONVENTION_GRID, n_jobs=defaults.N_JOBS):
    """Probe every convention; keep those satisfying exchange, unit norm and the identity

    Raises:
        ConventionError: no convention passes, evidence attached

    Returns:
        ResolutionReport
    """
    conventions = all_conventions()
    evidence = Parallel(n_jobs=n_jobs, verbose=0)(
        delayed(probe_convention)(c, max_length, alphabet, grid) for c in conventions)
    evidence = sorted(evidence, key=lambda e: e.convention)
    satisfying = [e.convention for e in evidence if e.satisfied]
    probe = {'maxLength': max_length, 'alphabet': alphabet, 'grid': [list(point) for point in grid]}
    report = ResolutionReport(satisfying, evidence, probe)
    for e in evidence:
        logger.info(f'[resolve_convention] {e.convention.label}: '
                    f'{"pass" if e.satisfied else "fail"} ({len(e.counterexamples)} counterexamples)')
    if not satisfying:
        raise ConventionError('[resolve_convention] no convention satisfies the probes', report.as_record())
    return report


def classical_symmetrizer(word):
    """(N! / prod n_k!)^(-1/2) sum over distinct rearrangements, the undeformed oracle"""
    profile = profile_of(word)
    weight = 1 / math.sqrt(math.factorial(len(word)) / math.prod(math.factorial(n) for n in profile))
    return {tuple(u): weight for u in multiset_permutations(sorted(word))}