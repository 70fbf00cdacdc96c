# coding: utf-8
"""Positive-energy representation on the lattice |lambda_1 p^m_1, ..., lambda_n p^m_n>

    H_i  |m> = lambda_i p^m_i |m>
    a+_i |m> = q^(-sum_{k>i} m_k) sqrt(lambda_i p^(m_i+1) + nu) |m + e_i>
    a_i  |m> = q^( sum_{k>i} m_k) sqrt(lambda_i p^m_i + nu)     |m - e_i>

with nu = 1/(1-p), 0 < p < 1. The a+ eigenstates

    |z>_+ = C sum_n prod_k p^(n_k(n_k-1)/4) / sqrt((-nu/lambda_k; p)_n_k) lambda_k^(-n_k/2)
            z_n^n_n ... z_1^n_1 |lambda_1 p^-n_1, ..., lambda_n p^-n_n>

run over n in Z^n and are normalisable iff |z_k|^2 > nu for every mode.
"""

import dataclasses
import itertools
import logging
import math

import numpy as np

from ..config import config as defaults
from ..fock.relcheck import VerificationReport
from ..kernel.graded import QGraded
from ..kernel.qkernel import DeformationParams, bilateral_psi01
from ..tools.errors import ArgumentError, ConsistencyError, DomainError
from .zcoherent import Z, EigenReport, ZMonomial, ZPolynomial

logger = logging.getLogger(__name__)

LADDER_KINDS = ('creation', 'annihilation', 'hamiltonian')


@dataclasses.dataclass(frozen=True)
class PositiveEnergyConfig:
    """Parameters of the positive-energy series

    Attributes:
        params (DeformationParams): 0 < p < 1, float arithmetic
        lambdas (tuple): lambda_i > 0, one per mode
        window (int, optional): half width W of the label window [-W, W]; None for automatic expansion
        covariant_z (bool, optional): the z_i of the + states obey the same exchange relations as the - states
    """
    params: DeformationParams
    lambdas: tuple
    window: int = None
    covariant_z: bool = True

    def __post_init__(self):
        if self.params.classical_limit or not 0 < self.params.p < 1:
            raise DomainError(f'the positive-energy representation requires 0 < p < 1, got p = {self.params.p}')
        if self.params.exact:
            raise ArgumentError('the positive-energy representation is evaluated in float arithmetic')
        lambdas = tuple(float(x) for x in np.atleast_1d(self.lambdas))
        if not lambdas or min(lambdas) <= 0:
            raise ArgumentError(f'every lambda must be positive, got {lambdas}')
        if self.window is not None and self.window < 1:
            raise ArgumentError(f'window half width must be >= 1, got {self.window}')
        object.__setattr__(self, 'lambdas', lambdas)

    @property
    def n_modes(self):
        return len(self.lambdas)

    @property
    def nu(self):
        return float(self.params.nu)

    def describe(self):
        return {'lambdas': list(self.lambdas),
                'nu': self.nu,
                'window': self.window,
                'covariantZ': self.covariant_z,
                **self.params.describe()}


@dataclasses.dataclass
class LatticeVector:
    """Sparse vector over lattice labels (m_1,...,m_n)

    Amplitudes are QGraded scalars, or ZPolynomial coefficients for coherent
    families. window is the half width W of the stored label range, None for an
    unbounded lattice.
    """
    config: PositiveEnergyConfig
    amplitudes: dict
    window: int = None
    window_clipped: bool = False

    def inside(self, label):
        return self.window is None or all(-self.window <= m <= self.window for m in label)

    def items(self):
        return sorted(self.amplitudes.items())


def lattice_state(label, config, window=None):
    label = tuple(int(m) for m in label)
    if len(label) != config.n_modes:
        raise ArgumentError(f'label {label} does not have {config.n_modes} entries')
    return LatticeVector(config, {label: QGraded.monomial(1.)}, window)


def apply_positive_ladder(kind, mode, v):
    """Creation, annihilation or subhamiltonian of one mode on a lattice vector

    Components leaving the window are dropped and set window_clipped.
    """
    config = v.config
    if kind not in LADDER_KINDS:
        raise ArgumentError(f'unknown ladder kind {kind!r}, expected one of {LADDER_KINDS}')
    if not 1 <= mode <= config.n_modes:
        raise ArgumentError(f'mode index {mode} outside 1..{config.n_modes}')
    p, nu = config.params.p, config.nu
    lam = config.lambdas[mode - 1]
    out = {}
    clipped = v.window_clipped
    for label, amp in v.amplitudes.items():
        m = label[mode - 1]
        higher = sum(label[mode:])
        if kind == 'hamiltonian':
            target, factor = label, QGraded.monomial(lam * p ** m)
        elif kind == 'creation':
            target = label[:mode - 1] + (m + 1,) + label[mode:]
            factor = QGraded.monomial(math.sqrt(lam * p ** (m + 1) + nu), -higher)
        else:
            target = label[:mode - 1] + (m - 1,) + label[mode:]
            factor = QGraded.monomial(math.sqrt(lam * p ** m + nu), higher)
        if not v.inside(target):
            clipped = True
            continue
        term = amp.scale(factor)
        out[target] = out[target] + term if target in out else term
    return LatticeVector(config, out, v.window, clipped)


def energy_spectrum(config, mode, window):
    """H_i eigenvalues lambda_i p^m for m = -window..window"""
    m = np.arange(-window, window + 1)
    return config.lambdas[mode - 1] * config.params.p ** m


def ladder_consistency_check(config, mode, window=3, tolerance=None):
    """a a+ = lambda p^(m+1) + nu, a+ a = lambda p^m + nu and a a+ - p a+ a = 1 on the window interior"""
    tolerance = config.params.tolerance if tolerance is None else tolerance
    p, nu = config.params.p, config.nu
    lam = config.lambdas[mode - 1]
    interior = range(-window + 1, window)
    labels = list(itertools.product(interior, repeat=config.n_modes))
    checks = {'a a+ = lambda p^(m+1) + nu': [], 'a+ a = lambda p^m + nu': [], 'a a+ - p a+ a = 1': []}
    for label in labels:
        v = lattice_state(label, config, window)
        m = label[mode - 1]
        up_down = apply_positive_ladder('annihilation', mode, apply_positive_ladder('creation', mode, v))
        down_up = apply_positive_ladder('creation', mode, apply_positive_ladder('annihilation', mode, v))
        one = up_down.amplitudes[label].realize(0.)
        other = down_up.amplitudes[label].realize(0.)
        checks['a a+ = lambda p^(m+1) + nu'].append(abs(one - (lam * p ** (m + 1) + nu)))
        checks['a+ a = lambda p^m + nu'].append(abs(other - (lam * p ** m + nu)))
        checks['a a+ - p a+ a = 1'].append(abs(one - p * other - 1))
    reports = []
    for label, residuals in checks.items():
        worst = max(residuals)
        reports.append(VerificationReport(label=f'{label} (mode {mode})', family='positive-energy-ladder',
                                          parameter_set=config.describe(), domain_size=len(labels),
                                          max_residual=float(worst), tolerance=tolerance,
                                          passed=worst <= tolerance))
    return reports


def _log_pochhammer(a, p, n_values):
    """log (a;p)_n for a < 0, where every factor is positive"""
    out = np.zeros(len(n_values))
    for idx, n in enumerate(n_values):
        if n >= 0:
            out[idx] = np.sum(np.log1p(-a * p ** np.arange(n)))
        else:
            out[idx] = -np.sum(np.log1p(-a * p ** -np.arange(1, -n + 1, dtype=float)))
    return out


def log_coefficients(config, mode, n_values):
    """log of p^(n(n-1)/4) / sqrt((-nu/lambda;p)_n) lambda^(-n/2) for the given n"""
    n = np.asarray(n_values, dtype=float)
    p = config.params.p
    lam = config.lambdas[mode - 1]
    a = -config.nu / lam
    return n * (n - 1) / 4 * np.log(p) - 0.5 * _log_pochhammer(a, p, n_values) - n / 2 * np.log(lam)


def _check_magnitudes(config, magnitudes):
    magnitudes = tuple(float(r) for r in np.atleast_1d(magnitudes))
    if len(magnitudes) != config.n_modes:
        raise ArgumentError(f'{len(magnitudes)} magnitudes given for {config.n_modes} modes')
    nu = config.nu
    for r in magnitudes:
        if r <= nu:
            raise DomainError(f'|z|^2 = {r} <= nu = {nu}: the positive-energy coherent state is not normalisable')
    return magnitudes


def _tail_ratio(config, magnitudes, window):
    """Largest boundary term of the magnitude series relative to its sum, over modes"""
    worst = 0.
    n_values = np.arange(-window, window + 1)
    for mode, r in enumerate(magnitudes, 1):
        log_terms = 2 * log_coefficients(config, mode, n_values) + n_values * np.log(r)
        terms = np.exp(log_terms - log_terms.max())
        worst = max(worst, max(terms[0], terms[-1]) / terms.sum())
    return worst


def choose_window(config, magnitudes, threshold=defaults.WINDOW_TAIL_THRESHOLD):
    """Smallest symmetric window whose two boundary terms are below threshold"""
    window = config.window or 8
    while _tail_ratio(config, magnitudes, window) > threshold:
        if window >= defaults.MAX_POSITIVE_WINDOW:
            logger.warning(f'[choose_window] tails still above {threshold:.1e} at window {window}')
            return window
        window = min(defaults.MAX_POSITIVE_WINDOW, window + 4)
    return window


def positive_normalization(config, magnitudes):
    """C = prod_k 0psi1(-nu/lambda_k; p, -r_k/lambda_k)^(-1/2)

    Raises:
        DomainError: r_k <= nu for some mode
        ConsistencyError: a series value is not positive
    """
    magnitudes = _check_magnitudes(config, magnitudes)
    p, nu = config.params.p, config.nu
    inverse_square = 1.
    for lam, r in zip(config.lambdas, magnitudes):
        value = bilateral_psi01(-nu / lam, p, -r / lam)
        if not value > 0:
            raise ConsistencyError(f'[positive_normalization] 0psi1(-nu/lambda; p, -r/lambda) = {value} <= 0')
        inverse_square *= value
    return 1 / math.sqrt(inverse_square)


@dataclasses.dataclass
class PositiveCoherentState:
    config: PositiveEnergyConfig
    vector: LatticeVector
    magnitudes: tuple
    normalization: float
    window: int
    warnings: list = dataclasses.field(default_factory=list)

    def magnitude_sum(self):
        """sum over labels of |coefficient|^2 prod r^n, without C"""
        total = 0.
        for poly in self.vector.amplitudes.values():
            for (z_powers, _), c in poly.items():
                weight = math.prod(r ** k for r, k in zip(self.magnitudes, z_powers))
                total += abs(c.realize(0.)) ** 2 * weight
        return total

    def as_records(self):
        records = []
        for label, poly in self.vector.items():
            for (z_powers, _), c in poly.items():
                for q_power, coeff in c.items():
                    records.append({'exponents': list(label), 'zPowers': list(z_powers),
                                    'qPower': int(q_power), 'coefficient': float(coeff)})
        return records


def build_positive_coherent(config, magnitudes, window=None):
    """Formal |z>_+ on the window [-W, W] of every mode

    Args:
        config (PositiveEnergyConfig): representation parameters
        magnitudes (sequence): r_k = |z_k|^2 > nu
        window (int, optional): half width; defaults to config.window, then to automatic expansion

    Raises:
        DomainError: r_k <= nu

    Returns:
        PositiveCoherentState
    """
    magnitudes = _check_magnitudes(config, magnitudes)
    window = window or config.window or choose_window(config, magnitudes)
    warnings = []
    tail = _tail_ratio(config, magnitudes, window)
    if tail > defaults.WINDOW_TAIL_THRESHOLD:
        message = f'window {window} too small: boundary term {tail:.2e} of the magnitude series'
        logger.warning(f'[build_positive_coherent] {message}')
        warnings.append(message)

    n_values = list(range(-window, window + 1))
    per_mode = [np.exp(log_coefficients(config, mode, n_values)) for mode in range(1, config.n_modes + 1)]
    zeros = (0,) * config.n_modes
    amplitudes = {}
    for idx in itertools.product(range(len(n_values)), repeat=config.n_modes):
        n = tuple(n_values[k] for k in idx)
        coeff = math.prod(float(per_mode[mode][k]) for mode, k in enumerate(idx))
        label = tuple(-x for x in n)
        amplitudes[label] = ZPolynomial.from_monomial(ZMonomial(n, zeros, 0, coeff))
    vector = LatticeVector(config, amplitudes, window)
    normalization = positive_normalization(config, magnitudes)
    logger.debug(f'[build_positive_coherent] window {window}, {len(amplitudes)} labels, C = {normalization:.6g}')
    return PositiveCoherentState(config, vector, magnitudes, normalization, window, warnings)


def _weighted_residual(poly, magnitudes, normalization):
    # coefficient size once |z_k| = sqrt(r_k) is substituted
    worst = 0.
    for (z_powers, _), c in poly.items():
        weight = math.prod(r ** (k / 2) for r, k in zip(magnitudes, z_powers))
        worst = max(worst, normalization * weight * c.max_abs())
    return worst


def check_raising_eigenproblem(state, mode, tolerance=None):
    """a+_i |z>_+ = z_i |z>_+ compared formally, label by label

    Labels whose a_i neighbour lies outside the window, and components pushed
    out of the window by a+_i, make up the boundary residue.
    """
    config = state.config
    if not 1 <= mode <= config.n_modes:
        raise ArgumentError(f'mode index {mode} outside 1..{config.n_modes}')
    tolerance = config.params.tolerance if tolerance is None else tolerance
    unbounded = LatticeVector(config, state.vector.amplitudes, None)
    raised = apply_positive_ladder('creation', mode, unbounded).amplitudes
    multiplied = {label: poly.left_multiply((Z, mode), commuting=not config.covariant_z)
                  for label, poly in state.vector.amplitudes.items()}

    empty = ZPolynomial(config.n_modes)
    max_residual = boundary = 0.
    phase_mismatches = 0
    domain_size = 0
    for label in sorted(set(raised) | set(multiplied)):
        left, right = raised.get(label, empty), multiplied.get(label, empty)
        residual = _weighted_residual(left - right, state.magnitudes, state.normalization)
        source = label[:mode - 1] + (label[mode - 1] - 1,) + label[mode:]
        if state.vector.inside(label) and state.vector.inside(source):
            domain_size += 1
            max_residual = max(max_residual, residual)
            if left.q_exponents() != right.q_exponents():
                phase_mismatches += 1
        else:
            boundary = max(boundary, residual)
    passed = max_residual <= tolerance and phase_mismatches == 0
    logger.debug(f'[check_raising_eigenproblem] mode {mode}: residual {max_residual:.3e}, boundary {boundary:.3e}')
    return EigenReport(f'a+{mode} |z>+ = z{mode} |z>+', mode, domain_size, float(max_residual), float(boundary),
                       phase_mismatches, tolerance, passed)
