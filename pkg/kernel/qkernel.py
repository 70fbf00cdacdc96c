# coding: utf-8
"""Scalar kernel: deformation parameters, p-brackets and deformed special functions

The deformation is a pair (p, q) with p > 0 real and q = exp(i theta) on the
unit circle. q never appears as a rounded complex number in bookkeeping: it is
carried as an integer exponent (QPhase, kernel.graded.QGraded) and realised at
the last numeric step.
"""

import dataclasses
import logging
import math
import numbers

import numpy as np
import sympy

from ..config import config
from ..tools.errors import ArgumentError, ConsistencyError, DomainError, PoleError
from .graded import QGraded, is_exact

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class DeformationParams:
    """Deformation constants (p, theta) shared by every module

    Attributes:
        p (float): real deformation parameter, p > 0 and p != 1 unless classical_limit
        theta (float): angle of q = exp(i theta), radians
        tolerance (float): default absolute tolerance for float comparisons
        classical_limit (bool): p = q = 1 limit mode, brackets return their undeformed values
        exact (bool): use sympy rationals and radicals instead of floats
    """
    p: float = 0.5
    theta: float = 0.
    tolerance: float = config.TOLERANCE
    classical_limit: bool = False
    exact: bool = False

    def __post_init__(self):
        if not self.p > 0:
            raise ArgumentError(f'p must be positive, got {self.p}')
        if self.p == 1 and not self.classical_limit:
            raise ArgumentError('p = 1 requires classical_limit=True')
        if not self.tolerance > 0:
            raise ArgumentError(f'tolerance must be positive, got {self.tolerance}')

    @property
    def base(self):
        """p as a field scalar (1 in the classical limit)"""
        if self.classical_limit:
            return self.number(1)
        return self.number(self.p)

    @property
    def angle(self):
        """theta actually used to realise q (0 in the classical limit)"""
        return 0. if self.classical_limit else float(self.theta)

    @property
    def nu(self):
        """Ground energy offset 1 / (1 - p)"""
        base = self.base
        if base == 1:
            raise DomainError('nu = 1/(1-p) is undefined at p = 1')
        return 1 / (1 - base)

    def number(self, value):
        """Convert a real number to the scalar field of this parameter set"""
        if self.exact:
            if is_exact(value):
                return value
            if isinstance(value, numbers.Integral):
                return sympy.Integer(value)
            return sympy.Rational(repr(float(value)))
        if is_exact(value):
            value = complex(sympy.N(value))
            return value.real if value.imag == 0 else value
        return value

    def sqrt(self, value):
        if self.exact:
            return sympy.sqrt(self.number(value))
        # factorials overflow int64 past 20!, so no numpy here
        return math.sqrt(float(value))

    def q_power(self, k):
        """Numeric value of q^k"""
        return complex(np.exp(1j * k * self.angle))

    def realize(self, graded):
        """Numeric value of a q-graded scalar"""
        return graded.realize(self.angle)

    def classical(self):
        """Same tolerances and arithmetic, p = q = 1"""
        return dataclasses.replace(self, p=1., theta=0., classical_limit=True)

    def describe(self):
        return {'p': float(self.p),
                'theta': float(self.theta),
                'tolerance': float(self.tolerance),
                'classicalLimit': bool(self.classical_limit),
                'exact': bool(self.exact)}


@dataclasses.dataclass(frozen=True)
class QPhase:
    """Integer power q^exponent; composition adds exponents"""
    exponent: int = 0

    def __mul__(self, other):
        return QPhase(self.exponent + other.exponent)

    def inverse(self):
        return QPhase(-self.exponent)

    def realize(self, params):
        return params.q_power(self.exponent)

    def graded(self, coeff=1):
        return QGraded.monomial(coeff, self.exponent)


@dataclasses.dataclass(frozen=True)
class SeriesValue:
    """Truncated series value with its truncation metadata"""
    value: complex
    terms: int
    tail_bound: float
    lower: int = 0
    upper: int = 0


def q_bracket(x, base):
    """Deformed number [x] = (base^x - 1) / (base - 1), equal to x when base = 1

    Args:
        x (float, int or sympy number): argument
        base (float or sympy number): positive base (p, or p**2 for symmetric states)

    Returns:
        same kind as the inputs: the p-bracket
    """
    if is_exact(base) or is_exact(x):
        base = sympy.nsimplify(base)
        if base == 1:
            return sympy.nsimplify(x)
        return (base ** x - 1) / (base - 1)
    if base == 1:
        return x
    return float(np.expm1(x * np.log(base)) / (base - 1))


def q_bracket_factorial(n, base):
    """[n]! = [n][n-1]...[1], [0]! = 1

    Raises:
        ArgumentError: n is not a non-negative integer
    """
    if not isinstance(n, numbers.Integral) or n < 0:
        raise ArgumentError(f'factorial order must be a non-negative integer, got {n}')
    return math.prod((q_bracket(k, base) for k in range(1, n + 1)), start=1)


def gaussian_multinomial(profile, base):
    """[N]! / ([n_1]! ... [n_n]!) with N = sum(profile)"""
    denominator = math.prod((q_bracket_factorial(int(n), base) for n in profile), start=1)
    return q_bracket_factorial(int(sum(profile)), base) / denominator


def q_pochhammer(a, p, n):
    """Shifted factorial (a;p)_n for any integer n

    n >= 0: prod_{k=0}^{n-1} (1 - a p^k)
    n < 0 : 1 / prod_{k=1}^{-n} (1 - a p^-k)
    This is the only extension for which (a;p)_{n+1} = (a;p)_n (1 - a p^n) holds for every integer n.

    Raises:
        PoleError: a factor of the negative-index denominator vanishes
    """
    if not isinstance(n, numbers.Integral):
        raise ArgumentError(f'Pochhammer index must be an integer, got {n}')
    if n >= 0:
        return math.prod((1 - a * p ** k for k in range(n)), start=1)
    denominator = 1
    for k in range(1, -n + 1):
        factor = 1 - a * p ** (-k)
        if factor == 0:
            raise PoleError(f'(a;p)_{n} has a pole: 1 - a p^-{k} = 0', k)
        denominator *= factor
    return 1 / denominator


def deformed_exp(x, p, tail_tolerance=config.SERIES_TAIL_TOLERANCE, full_output=False):
    """Deformed exponential e_p(x) = sum_n x^n / [n]!

    The partial sum stops once the current term is below tail_tolerance times
    the accumulated sum and the remaining terms are dominated by a geometric
    series; the bound of that geometric tail is returned with full_output.

    Args:
        x (complex): argument
        p (float): positive base
        tail_tolerance (float, optional): relative stopping threshold
        full_output (bool, optional): return a SeriesValue instead of the value

    Raises:
        DomainError: 0 < p < 1 and |x| >= 1/(1-p), outside the convergence disc

    Returns:
        complex or SeriesValue
    """
    x = complex(x)
    p = float(p)
    if p < 1 and abs(x) >= 1 / (1 - p):
        raise DomainError(f'e_p(x) diverges for |x| = {abs(x)} >= 1/(1-p) = {1 / (1 - p)}')

    total = 1 + 0j
    term = 1 + 0j
    n = 0
    tail_bound = 0.
    while True:
        n += 1
        if n > config.MAX_SERIES_TERMS:
            raise ConsistencyError(f'[deformed_exp] no convergence after {n - 1} terms')
        term = term * x / q_bracket(n, p)
        total += term
        # term ratios |x| / [m+1] decrease with m since [m] increases
        ratio = abs(x) / q_bracket(n + 1, p)
        if abs(term) <= tail_tolerance * abs(total) and ratio < 1:
            tail_bound = abs(term) * ratio / (1 - ratio)
            break

    if full_output:
        return SeriesValue(value=total, terms=n + 1, tail_bound=tail_bound, lower=0, upper=n)
    return total


def bilateral_psi01_term(a, p, x, n):
    """Single term (-1)^n p^(n(n-1)/2) x^n / (a;p)_n"""
    return (-1) ** n * p ** (n * (n - 1) / 2) * x ** n / q_pochhammer(a, p, n)


def _check_psi01_poles(a, p):
    # (a;p)_n vanishes for some n >= 1 iff a = p^-k, k >= 0; a negative-index
    # denominator vanishes iff a = p^k, k >= 1
    if a <= 0:
        return
    k = int(round(math.log(a) / math.log(p)))
    if math.isclose(p ** k, a, rel_tol=1e-15, abs_tol=0.):
        raise PoleError(f'bilateral series hits a Pochhammer pole at a = p^{k}', abs(k))


def bilateral_psi01(a, p, x, term_tolerance=config.PSI_TERM_TOLERANCE, full_output=False):
    """Bilateral series 0psi1(a; p, x) = sum_{n in Z} (-1)^n p^(n(n-1)/2) x^n / (a;p)_n

    The window [-M, M] grows symmetrically until both boundary terms are below
    term_tolerance times the partial sum and both tails are dominated by
    geometric series. For 0 < p < 1 the negative tail decays like (a/x)^m, so
    the series converges iff a = 0 or |x| > |a|.

    Raises:
        DomainError: x = 0, p outside (0, 1) or |x| <= |a| (divergent)
        PoleError: a Pochhammer factor vanishes
    """
    a, p, x = float(a), float(p), float(x)
    if not 0 < p < 1:
        raise DomainError(f'bilateral series requires 0 < p < 1, got p = {p}')
    if x == 0:
        raise DomainError('bilateral series is undefined at x = 0')
    if a != 0 and abs(x) <= abs(a):
        raise DomainError(f'bilateral series diverges: |x| = {abs(x)} <= |a| = {abs(a)}')
    _check_psi01_poles(a, p)

    positive = [1.]  # T_0, T_1, ...
    negative = []  # T_-1, T_-2, ...
    m = 0
    while True:
        # T_{m+1} = -T_m p^m x / (1 - a p^m)
        positive.append(-positive[-1] * p ** m * x / (1 - a * p ** m))
        # T_{-m-1} = -T_{-m} (p^(m+1) - a) / x
        previous = negative[-1] if negative else 1.
        negative.append(-previous * (p ** (m + 1) - a) / x)
        m += 1

        total = math.fsum(positive) + math.fsum(negative)
        rho_plus = p ** m * abs(x) / (1 - abs(a) * p ** m) if abs(a) * p ** m < 1 else np.inf
        rho_minus = (p ** (m + 1) + abs(a)) / abs(x)
        small = max(abs(positive[-1]), abs(negative[-1])) <= term_tolerance * abs(total)
        if small and rho_plus < 1 and rho_minus < 1:
            tail_bound = (abs(positive[-1]) * rho_plus / (1 - rho_plus)
                          + abs(negative[-1]) * rho_minus / (1 - rho_minus))
            break
        if m > config.MAX_PSI_WINDOW:
            raise ConsistencyError(f'[bilateral_psi01] window exceeded {config.MAX_PSI_WINDOW}')

    logger.debug(f'[bilateral_psi01] a={a} p={p} x={x}: window [-{m}, {m}], tail <= {tail_bound:.3e}')
    if full_output:
        return SeriesValue(value=total, terms=2 * m + 1, tail_bound=tail_bound, lower=-m, upper=m)
    return total


def step_indicator(i, j):
    """R(i, j) = 1 if i > j else 0"""
    return 1 if i > j else 0
