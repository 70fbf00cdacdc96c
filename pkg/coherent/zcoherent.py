# coding: utf-8
"""gl_q(n)-covariant coherent states with noncommuting parameters z_i

The z_i obey

    z_i z_j   = q      z_j z_i     (i < j)
    z*_i z*_j = q^-1   z*_j z*_i   (i < j)
    z*_i z_j  = q      z_j z*_i    (i != j)
    z*_i z_i  =        z_i z*_i

and commute with every mode operator. Monomials are kept in normal order: the
z* block left of the z block, each block by decreasing mode index. The integer
power of q picked up while reordering is stored exactly.
"""

import dataclasses
import logging
import math
import numbers

import numpy as np
from scipy.special import factorial

from ..fock import fockspace
from ..kernel.graded import QGraded
from ..kernel.qkernel import deformed_exp, q_bracket_factorial
from ..tools.errors import ArgumentError, DomainError

logger = logging.getLogger(__name__)

Z = 'z'
Z_STAR = 'z*'


def symbol(kind, mode):
    if kind not in (Z, Z_STAR):
        raise ArgumentError(f'unknown symbol kind {kind!r}')
    if not isinstance(mode, numbers.Integral) or mode < 1:
        raise ArgumentError(f'mode indices are 1-based integers, got {mode}')
    return kind, mode


def _order_key(sym):
    kind, mode = sym
    return (0 if kind == Z_STAR else 1, -mode)


def commutation_exponent(x, y):
    """c such that x y = q^c y x"""
    (kx, i), (ky, j) = x, y
    if i == j:
        return 0
    if kx == ky == Z:
        return 1 if i < j else -1
    if kx == ky == Z_STAR:
        return -1 if i < j else 1
    return 1 if kx == Z_STAR else -1


@dataclasses.dataclass(frozen=True)
class ZMonomial:
    """coeff * q^q_power * (z*_n)^{m_n}...(z*_1)^{m_1} (z_n)^{n_n}...(z_1)^{n_1}"""
    z_powers: tuple
    z_star_powers: tuple
    q_power: int = 0
    coeff: complex = 1

    @property
    def key(self):
        return self.z_powers, self.z_star_powers

    def word(self):
        return monomial_word(self.key)


def monomial_word(key):
    z_powers, z_star_powers = key
    word = []
    for mode in range(len(z_star_powers), 0, -1):
        word += [(Z_STAR, mode)] * z_star_powers[mode - 1]
    for mode in range(len(z_powers), 0, -1):
        word += [(Z, mode)] * z_powers[mode - 1]
    return word


def normal_order(word, n_modes=None, coeff=1):
    """Rewrite a word in z, z* into normal order

    Every adjacent swap multiplies by a fixed power of q and the exponents are
    skew-symmetric, so the result only depends on which pairs end up
    exchanged: the total exponent is the sum of c(x, y) over inverted pairs.

    Args:
        word (list): (kind, mode) symbols, leftmost first
        n_modes (int, optional): length of the exponent vectors. Defaults to the largest mode in the word
        coeff (optional): scalar coefficient of the word

    Returns:
        ZMonomial
    """
    word = [symbol(*s) for s in word]
    if n_modes is None:
        n_modes = max((mode for _, mode in word), default=0)
    q_power = 0
    for s, x in enumerate(word):
        for y in word[s + 1:]:
            if _order_key(x) > _order_key(y):
                q_power += commutation_exponent(x, y)
    z_powers = [0] * n_modes
    z_star_powers = [0] * n_modes
    for kind, mode in word:
        if mode > n_modes:
            raise ArgumentError(f'symbol of mode {mode} in a {n_modes}-mode monomial')
        (z_powers if kind == Z else z_star_powers)[mode - 1] += 1
    return ZMonomial(tuple(z_powers), tuple(z_star_powers), q_power, coeff)


def _passing_exponent(sym, key):
    # symbols of the monomial sorting before sym must be passed when sym is moved into place
    exponent = 0
    for kind, powers in ((Z, key[0]), (Z_STAR, key[1])):
        for mode, k in enumerate(powers, 1):
            if k and _order_key((kind, mode)) < _order_key(sym):
                exponent += k * commutation_exponent(sym, (kind, mode))
    return exponent


class ZPolynomial(object):
    """Sum of normal-ordered monomials with q-graded coefficients

    Maps (z_powers, z_star_powers) -> QGraded; zero coefficients are dropped.
    """

    __slots__ = ('n_modes', 'terms')

    def __init__(self, n_modes, terms=None):
        self.n_modes = n_modes
        self.terms = {key: c for key, c in (terms or {}).items() if c}

    @classmethod
    def from_monomial(cls, monomial):
        n_modes = len(monomial.z_powers)
        return cls(n_modes, {monomial.key: QGraded.monomial(monomial.coeff, monomial.q_power)})

    def __repr__(self):
        return f'<ZPolynomial of {len(self.terms)} monomials>'

    def __bool__(self):
        return bool(self.terms)

    def items(self):
        return sorted(self.terms.items())

    def __add__(self, other):
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms[key] + c if key in terms else c
        return ZPolynomial(self.n_modes, terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, coeff):
        """Multiply by a scalar or by a QGraded (central)"""
        return ZPolynomial(self.n_modes, {key: c * coeff for key, c in self.terms.items()})

    def left_multiply(self, sym, power=1, commuting=False):
        """sym^power * self, renormal-ordered

        Exponent vectors may be negative (Laurent monomials): moving sym past
        y^k costs q^(k c(sym, y)) for any integer k.
        """
        kind, mode = symbol(*sym)
        terms = {}
        for key, c in self.terms.items():
            q_power = 0 if commuting else power * _passing_exponent(sym, key)
            z_powers, z_star_powers = list(key[0]), list(key[1])
            (z_powers if kind == Z else z_star_powers)[mode - 1] += power
            new_key = tuple(z_powers), tuple(z_star_powers)
            shifted = c.shift(q_power)
            terms[new_key] = terms[new_key] + shifted if new_key in terms else shifted
        return ZPolynomial(self.n_modes, terms)

    def is_zero(self, atol=0.):
        return all(c.is_zero(atol) for c in self.terms.values())

    def equals(self, other, atol=0.):
        return (self - other).is_zero(atol)

    def residual(self, other, exact=False):
        """Largest coefficient magnitude of self - other"""
        difference = self - other
        if exact and difference.is_zero():
            return 0.
        return max((c.max_abs() for c in difference.terms.values()), default=0.)

    def q_exponents(self):
        return {key: tuple(c.exponents()) for key, c in self.terms.items()}

    def contract(self, other, magnitudes, theta):
        """Formal <self, other>: |z_i|^2 = r_i is central, mismatched monomials give 0"""
        total = 0j
        for key, c in self.terms.items():
            d = other.terms.get(key)
            if d is None:
                continue
            weight = math.prod(r ** n for r, n in zip(magnitudes, key[0]))
            weight *= math.prod(r ** n for r, n in zip(magnitudes, key[1]))
            total += weight * (c.conjugate() * d).realize(theta)
        return total


@dataclasses.dataclass
class FormalCoherentState:
    """Occupation -> ZPolynomial amplitudes of a truncated coherent state

    Attributes:
        config (ModeConfig): truncated space the state was expanded in
        amplitudes (dict): occupation tuple -> ZPolynomial
        magnitudes (tuple): r_i = |z_i|^2
        normalization (float): overall factor c(z) multiplying every amplitude
    """
    config: object
    amplitudes: dict
    magnitudes: tuple
    normalization: float = 1.

    def amplitude(self, occ):
        return self.amplitudes.get(tuple(occ), ZPolynomial(self.config.n_modes))

    def equals(self, other, atol=0.):
        keys = set(self.amplitudes) | set(other.amplitudes)
        return all(self.amplitude(k).equals(other.amplitude(k), atol) for k in keys)

    def instantiate(self, z):
        """Numeric amplitudes for commuting complex z, only meaningful at q = 1

        Raises:
            DomainError: q != 1
        """
        params = self.config.params
        if not math.isclose(math.cos(params.angle), 1., abs_tol=1e-15):
            raise DomainError('noncommuting z cannot be instantiated by numbers unless q = 1')
        z = np.asarray(z, dtype=complex)
        out = {}
        for occ, poly in self.amplitudes.items():
            value = 0j
            for (z_powers, z_star_powers), c in poly.items():
                value += c.realize(0.) * np.prod(z ** np.array(z_powers)) * np.prod(
                    np.conj(z) ** np.array(z_star_powers))
            out[occ] = complex(self.normalization * value)
        return out

    def as_records(self):
        records = []
        for occ, poly in sorted(self.amplitudes.items()):
            for (z_powers, z_star_powers), c in poly.items():
                for q_power, coeff in c.items():
                    coeff = complex(coeff)
                    records.append({'occupation': list(occ),
                                    'zPowers': list(z_powers),
                                    'zStarPowers': list(z_star_powers),
                                    'qPower': int(q_power),
                                    'coefficient': [coeff.real, coeff.imag]})
        return records


def _check_magnitudes(magnitudes, config):
    magnitudes = tuple(float(r) for r in magnitudes)
    if len(magnitudes) != config.n_modes:
        raise ArgumentError(f'{len(magnitudes)} magnitudes given for {config.n_modes} modes')
    if any(r < 0 for r in magnitudes):
        raise ArgumentError(f'magnitudes |z_i|^2 must be non-negative, got {magnitudes}')
    return magnitudes


def coherent_normalization(magnitudes, params):
    """1 / sqrt(prod_i e_p(r_i))

    Raises:
        DomainError: some r_i lies outside the convergence disc of e_p
    """
    base = float(params.base)
    product = math.prod(deformed_exp(r, base).real for r in magnitudes)
    return 1 / math.sqrt(product)


def _series_amplitudes(config):
    params = config.params
    amplitudes = {}
    for occ in fockspace.basis_states(config):
        norm = math.prod((q_bracket_factorial(n, params.base) for n in occ), start=1)
        monomial = ZMonomial(tuple(occ), (0,) * config.n_modes, 0, 1 / params.sqrt(norm))
        amplitudes[occ] = ZPolynomial.from_monomial(monomial)
    return amplitudes


def _exponential_amplitudes(config):
    # e_p(z_n a+_n) ... e_p(z_1 a+_1)|0>, rightmost factor first
    params = config.params
    n = config.n_modes
    amplitudes = {(0,) * n: ZPolynomial.from_monomial(ZMonomial((0,) * n, (0,) * n, 0, params.number(1)))}
    for mode in range(1, n + 1):
        expanded = {}
        for occ, poly in amplitudes.items():
            ket = fockspace.basis_state(occ, config)
            for power in range(config.cutoff[mode - 1] + 1):
                if power:
                    ket = fockspace.apply_creation(mode, ket)
                if not len(ket):
                    break
                (target, amp), = ket.items()
                term = poly.left_multiply((Z, mode), power).scale(amp).scale(
                    params.number(1) / q_bracket_factorial(power, params.base))
                expanded[target] = expanded[target] + term if target in expanded else term
        amplitudes = expanded
    return amplitudes


def build_coherent_state(config, magnitudes, method='series'):
    """Truncated coherent state |z_1,...,z_n>_- with the e_p normalisation

    Args:
        config (ModeConfig): truncation of the expansion
        magnitudes (sequence): r_i = |z_i|^2
        method (str, optional): 'series' (closed form coefficients) or 'exponential'
            (product of deformed exponentials of z_i a+_i applied to the vacuum)

    Raises:
        ArgumentError: unknown method or bad magnitudes
        DomainError: r_i >= 1/(1-p) for 0 < p < 1

    Returns:
        FormalCoherentState
    """
    magnitudes = _check_magnitudes(magnitudes, config)
    normalization = coherent_normalization(magnitudes, config.params)
    if method == 'series':
        amplitudes = _series_amplitudes(config)
    elif method == 'exponential':
        amplitudes = _exponential_amplitudes(config)
    else:
        raise ArgumentError(f"unknown method {method!r}, expected 'series' or 'exponential'")
    logger.debug(f'[build_coherent_state] {method}: {len(amplitudes)} occupations, c = {normalization:.6g}')
    return FormalCoherentState(config, amplitudes, magnitudes, normalization)


@dataclasses.dataclass(frozen=True)
class EigenReport:
    """Formal comparison of an operator image with a left z multiplication"""
    label: str
    mode: int
    domain_size: int
    max_residual: float
    boundary_residue: float
    phase_mismatches: int
    tolerance: float
    passed: bool

    def as_record(self):
        return {'label': self.label,
                'mode': self.mode,
                'domainSize': int(self.domain_size),
                'maxResidual': float(self.max_residual),
                'boundaryResidue': float(self.boundary_residue),
                'phaseMismatches': int(self.phase_mismatches),
                'pass': bool(self.passed)}


def compare_images(label, mode, lhs, rhs, interior, n_modes, exact, tolerance):
    """Compare two occupation -> ZPolynomial maps on the interior, report the rest as boundary residue"""
    empty = ZPolynomial(n_modes)
    max_residual = boundary = 0.
    phase_mismatches = 0
    domain_size = 0
    for occ in sorted(set(lhs) | set(rhs)):
        left, right = lhs.get(occ, empty), rhs.get(occ, empty)
        residual = left.residual(right, exact)
        if interior(occ):
            domain_size += 1
            max_residual = max(max_residual, residual)
            if left.q_exponents() != right.q_exponents():
                phase_mismatches += 1
        else:
            boundary = max(boundary, residual)
    passed = max_residual <= tolerance and phase_mismatches == 0
    return EigenReport(label, mode, domain_size, float(max_residual), float(boundary), phase_mismatches,
                       tolerance, passed)


def check_lowering_eigenproblem(state, mode, tolerance=None):
    """a_i |z>_- = z_i |z>_-, compared formally on occupations whose a+_i neighbour is stored"""
    config = state.config
    if not 1 <= mode <= config.n_modes:
        raise ArgumentError(f'mode index {mode} outside 1..{config.n_modes}')
    params = config.params
    tolerance = params.tolerance if tolerance is None else tolerance
    lowered = {}
    for occ, poly in state.amplitudes.items():
        image = fockspace.apply_annihilation(mode, fockspace.basis_state(occ, config))
        for target, amp in image.items():
            term = poly.scale(amp)
            lowered[target] = lowered[target] + term if target in lowered else term
    multiplied = {occ: poly.left_multiply((Z, mode)) for occ, poly in state.amplitudes.items()}

    def interior(occ):
        return config.contains(occ[:mode - 1] + (occ[mode - 1] + 1,) + occ[mode:])

    report = compare_images(f'a{mode} |z> = z{mode} |z>', mode, lowered, multiplied, interior,
                            config.n_modes, params.exact, tolerance)
    logger.debug(f'[check_lowering_eigenproblem] mode {mode}: residual {report.max_residual:.3e}, '
                 f'boundary {report.boundary_residue:.3e}')
    return report


def inner_product(state_a, state_b):
    """<a|b> with |z_i|^2 = r_i central; both states must share magnitudes"""
    if state_a.magnitudes != state_b.magnitudes:
        raise ArgumentError('overlaps are only defined for equal parameter magnitudes')
    theta = state_a.config.params.angle
    total = 0j
    for occ, poly in state_a.amplitudes.items():
        other = state_b.amplitudes.get(occ)
        if other is not None:
            total += poly.contract(other, state_a.magnitudes, theta)
    return complex(state_a.normalization * state_b.normalization * total)


def normalization_residual(state):
    return abs(inner_product(state, state) - 1)


def classical_amplitudes(config, z):
    """prod_k z_k^{n_k} / sqrt(n_k!) * exp(-sum |z_k|^2 / 2), the undeformed coherent state"""
    z = np.asarray(z, dtype=complex)
    scale = np.exp(-np.sum(np.abs(z) ** 2) / 2)
    return {occ: complex(scale * np.prod(z ** np.array(occ) / np.sqrt(factorial(np.array(occ)))))
            for occ in fockspace.basis_states(config)}