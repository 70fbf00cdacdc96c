# coding: utf-8
"""Truncated n-mode Fock space of the (p,q)-deformed oscillators

Basis kets |n_1,...,n_n> are keyed by occupation tuples. Amplitudes are
q-graded scalars (kernel.graded.QGraded), so the integer powers of q produced
by the ladder operators are carried exactly. Mode indices are 1-based.

    a_i  |n> = q^( sum_{k>i} n_k) sqrt([n_i])   |n - e_i>
    a+_i |n> = q^(-sum_{k>i} n_k) sqrt([n_i+1]) |n + e_i>
"""

import dataclasses
import itertools
import logging
import numbers
from types import MappingProxyType

import numpy as np

from ..kernel.graded import QGraded
from ..kernel.qkernel import DeformationParams, q_bracket, q_bracket_factorial
from ..tools.errors import ArgumentError, ConfigurationError

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class ModeConfig:
    """Truncated n-mode space

    Attributes:
        n_modes (int): number of modes n >= 1
        cutoff (tuple): maximum occupation of each mode (an int is broadcast)
        params (DeformationParams): deformation constants
        max_total (int, optional): maximum total occupation, None for no limit
    """
    n_modes: int
    cutoff: tuple
    params: DeformationParams = dataclasses.field(default_factory=DeformationParams)
    max_total: int = None

    def __post_init__(self):
        if not isinstance(self.n_modes, numbers.Integral) or self.n_modes < 1:
            raise ConfigurationError(f'n_modes must be a positive integer, got {self.n_modes}')
        cutoff = self.cutoff
        if isinstance(cutoff, numbers.Integral):
            cutoff = (cutoff,) * self.n_modes
        cutoff = tuple(int(c) for c in cutoff)
        if len(cutoff) != self.n_modes:
            raise ConfigurationError(f'{len(cutoff)} cutoffs given for {self.n_modes} modes')
        if min(cutoff) < 1:
            raise ConfigurationError(f'every cutoff must be >= 1, got {cutoff}')
        if self.max_total is not None and self.max_total < 1:
            raise ConfigurationError(f'max_total must be >= 1, got {self.max_total}')
        object.__setattr__(self, 'cutoff', cutoff)

    def contains(self, occ):
        if len(occ) != self.n_modes:
            return False
        if any(n < 0 or n > c for n, c in zip(occ, self.cutoff)):
            return False
        return self.max_total is None or sum(occ) <= self.max_total

    def with_params(self, params):
        return dataclasses.replace(self, params=params)

    def describe(self):
        return {'nModes': self.n_modes,
                'cutoff': list(self.cutoff),
                'maxTotal': self.max_total,
                **self.params.describe()}


def basis_states(config):
    """All in-cutoff occupations, in canonical lexicographic order"""
    ranges = [range(c + 1) for c in config.cutoff]
    return [occ for occ in itertools.product(*ranges)
            if config.max_total is None or sum(occ) <= config.max_total]


class FockVector(object):
    """Sparse vector of the truncated Fock space

    Attributes:
        config (ModeConfig): space the vector lives in
        amplitudes (mapping): occupation tuple -> QGraded, zero amplitudes pruned
        overflow (bool): a creation crossed a cutoff and a component was dropped
    """

    __slots__ = ('config', 'amplitudes', 'overflow')

    def __init__(self, config, amplitudes=None, overflow=False):
        self.config = config
        kept = {}
        for occ, amp in (amplitudes or {}).items():
            if not isinstance(amp, QGraded):
                amp = QGraded.monomial(amp)
            if amp:
                kept[tuple(occ)] = amp
        self.amplitudes = MappingProxyType(dict(sorted(kept.items())))
        self.overflow = bool(overflow)

    def __repr__(self):
        return f'<FockVector of {len(self.amplitudes)} components, overflow={self.overflow}>'

    def __len__(self):
        return len(self.amplitudes)

    def items(self):
        return self.amplitudes.items()

    def amplitude(self, occ):
        return self.amplitudes.get(tuple(occ), QGraded.zero())

    def __add__(self, other):
        out = dict(self.amplitudes)
        for occ, amp in other.items():
            out[occ] = out[occ] + amp if occ in out else amp
        return FockVector(self.config, out, self.overflow or other.overflow)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, coeff):
        """Multiply by a scalar or by a QGraded"""
        return FockVector(self.config, {occ: amp * coeff for occ, amp in self.items()}, self.overflow)

    def is_zero(self, atol=0.):
        return all(amp.is_zero(atol) for amp in self.amplitudes.values())

    def norm(self):
        """Euclidean norm with q realised; exactly 0. for exactly vanishing vectors"""
        params = self.config.params
        if params.exact and self.is_zero():
            return 0.
        return float(np.sqrt(sum(abs(params.realize(amp)) ** 2 for amp in self.amplitudes.values())))


def _check_mode(mode, config):
    if not isinstance(mode, numbers.Integral) or not 1 <= mode <= config.n_modes:
        raise ArgumentError(f'mode index {mode} outside 1..{config.n_modes}')


def _check_occupation(occ, config):
    if not config.contains(tuple(occ)):
        raise ArgumentError(f'occupation {tuple(occ)} outside the cutoffs {config.cutoff} '
                            f'(max_total={config.max_total})')


def annihilation_phase_exponent(occ, mode):
    return sum(occ[mode:])


def creation_phase_exponent(occ, mode):
    return -sum(occ[mode:])


def ladder_coefficient(occ, mode, params):
    """Annihilation coefficient f_i(n) = q^(sum_{k>i} n_k) sqrt([n_i])"""
    bracket = q_bracket(occ[mode - 1], params.base)
    return QGraded.monomial(params.sqrt(bracket), annihilation_phase_exponent(occ, mode))


def vacuum(config):
    return FockVector(config, {(0,) * config.n_modes: config.params.number(1)})


def basis_state(occ, config):
    """Unit ket |n_1,...,n_n>

    Raises:
        ArgumentError: occupation outside the cutoffs
    """
    _check_occupation(occ, config)
    return FockVector(config, {tuple(occ): config.params.number(1)})


def build_basis_state(occ, config):
    """|n> built from the vacuum as (a+_n)^{n_n}...(a+_1)^{n_1}|0> / sqrt([n_n]!...[n_1]!)"""
    _check_occupation(occ, config)
    params = config.params
    v = vacuum(config)
    norm = 1
    for mode in range(1, config.n_modes + 1):
        for _ in range(occ[mode - 1]):
            v = apply_creation(mode, v)
        norm *= q_bracket_factorial(occ[mode - 1], params.base)
    return v.scale(1 / params.sqrt(norm))


def apply_annihilation(mode, v):
    config = v.config
    _check_mode(mode, config)
    params = config.params
    out = {}
    for occ, amp in v.items():
        n_i = occ[mode - 1]
        if n_i == 0:
            continue
        coeff = params.sqrt(q_bracket(n_i, params.base))
        new = occ[:mode - 1] + (n_i - 1,) + occ[mode:]
        term = amp.scale(coeff).shift(annihilation_phase_exponent(occ, mode))
        out[new] = out[new] + term if new in out else term
    return FockVector(config, out, v.overflow)


def apply_creation(mode, v):
    """a+_i v; components pushed past a cutoff are dropped and flag overflow"""
    config = v.config
    _check_mode(mode, config)
    params = config.params
    out = {}
    overflow = v.overflow
    for occ, amp in v.items():
        n_i = occ[mode - 1]
        new = occ[:mode - 1] + (n_i + 1,) + occ[mode:]
        if not config.contains(new):
            overflow = True
            continue
        coeff = params.sqrt(q_bracket(n_i + 1, params.base))
        term = amp.scale(coeff).shift(creation_phase_exponent(occ, mode))
        out[new] = out[new] + term if new in out else term
    return FockVector(config, out, overflow)


def _apply_diagonal(v, eigenvalue):
    return FockVector(v.config, {occ: amp.scale(eigenvalue(occ)) for occ, amp in v.items()}, v.overflow)


def apply_number(mode, v):
    _check_mode(mode, v.config)
    params = v.config.params
    return _apply_diagonal(v, lambda occ: params.number(occ[mode - 1]))


def apply_bracket_number(mode, v):
    """[N_i] v, the diagonal p-bracket of the number operator"""
    _check_mode(mode, v.config)
    base = v.config.params.base
    return _apply_diagonal(v, lambda occ: q_bracket(occ[mode - 1], base))


def subhamiltonian_eigenvalue(n, params):
    """-p^n / (1 - p), equal to [n] - nu"""
    return -params.base ** n * params.nu


def apply_subhamiltonian(mode, v):
    """H_i v with H_i = a+_i a_i - nu

    Raises:
        DomainError: p = 1
    """
    _check_mode(mode, v.config)
    params = v.config.params
    params.nu  # raises at p = 1
    return _apply_diagonal(v, lambda occ: subhamiltonian_eigenvalue(occ[mode - 1], params))


def number_series_coefficient(k, params):
    """(1-p)^k / (1-p^k); in the p -> 1 limit 1 for k = 1 and 0 beyond"""
    base = params.base
    if base == 1:
        return params.number(1 if k == 1 else 0)
    return (1 - base) ** k / (1 - base ** k)


def number_from_ladder(mode, v):
    """N_i v evaluated as sum_k (1-p)^k/(1-p^k) (a+_i)^k a_i^k v

    The series stops at k = max n_i of v since a_i^k annihilates beyond.
    """
    _check_mode(mode, v.config)
    params = v.config.params
    top = max((occ[mode - 1] for occ in v.amplitudes), default=0)
    result = FockVector(v.config, {}, v.overflow)
    lowered = v
    for k in range(1, top + 1):
        lowered = apply_annihilation(mode, lowered)
        raised = lowered
        for _ in range(k):
            raised = apply_creation(mode, raised)
        result = result + raised.scale(number_series_coefficient(k, params))
    return result


def inner_product_graded(v, w):
    """<v, w> as a q-graded scalar, conjugate-linear in v"""
    total = QGraded.zero()
    for occ, amp in v.items():
        other = w.amplitudes.get(occ)
        if other is not None:
            total = total + amp.conjugate() * other
    return total


def inner_product(v, w):
    return v.config.params.realize(inner_product_graded(v, w))
