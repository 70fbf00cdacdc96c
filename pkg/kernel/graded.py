# coding: utf-8
# q-graded scalars: finite sums  sum_k c_k q^k  with integer exponents k
#
# Every power of q met by the engine is an integer power, so amplitudes keep q
# symbolic and only realise it as exp(i k theta) when a number is needed.
# Coefficients are python floats/complexes (float mode) or sympy numbers
# (exact mode); both kinds support +, *, conjugate().

import numpy as np
import sympy


def is_exact(value):
    return isinstance(value, sympy.Basic)


def is_zero(value, atol=0.):
    """Zero test working for floats and sympy expressions

    Args:
        value (float, complex or sympy.Expr): scalar to test
        atol (float, optional): absolute tolerance for floats. Defaults to 0.

    Returns:
        bool: True if the value is zero (exactly for sympy values)
    """
    if is_exact(value):
        if value == 0:
            return True
        return sympy.simplify(sympy.expand(value)) == 0
    return abs(value) <= atol


def magnitude(value):
    if is_exact(value):
        return float(abs(complex(sympy.N(value))))
    return abs(value)


class QGraded(object):
    """Laurent polynomial in q with scalar coefficients

    Instances are immutable; all operations return new objects. Exactly-zero
    coefficients are never stored.
    """

    __slots__ = ('_terms',)

    def __init__(self, terms=None):
        self._terms = {}
        if terms:
            for k, c in terms.items():
                if c != 0:
                    self._terms[int(k)] = c

    @classmethod
    def monomial(cls, coeff, q_power=0):
        return cls({q_power: coeff})

    @classmethod
    def zero(cls):
        return cls()

    def __repr__(self):
        body = ' + '.join(f'({c})q^{k}' for k, c in self.items())
        return f'<QGraded {body or "0"}>'

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coefficient(self, q_power):
        return self._terms.get(q_power, 0)

    def exponents(self):
        return sorted(self._terms)

    def _combine(self, other, sign):
        terms = dict(self._terms)
        for k, c in other._terms.items():
            terms[k] = terms.get(k, 0) + sign * c
        return QGraded(terms)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return QGraded({k: -c for k, c in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, QGraded):
            return self.scale(other)
        terms = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                terms[k1 + k2] = terms.get(k1 + k2, 0) + c1 * c2
        return QGraded(terms)

    __rmul__ = __mul__

    def scale(self, coeff):
        if isinstance(coeff, QGraded):
            return self * coeff
        return QGraded({k: coeff * c for k, c in self._terms.items()})

    def shift(self, q_power):
        return QGraded({k + q_power: c for k, c in self._terms.items()})

    def conjugate(self):
        # |q| = 1, so conj(q^k) = q^-k
        return QGraded({-k: c.conjugate() for k, c in self._terms.items()})

    def realize(self, theta):
        """Numeric value with q = exp(i theta)"""
        return complex(sum(complex(c) * np.exp(1j * k * theta) for k, c in self._terms.items()))

    def is_zero(self, atol=0.):
        return all(is_zero(c, atol) for c in self._terms.values())

    def equals(self, other, atol=0.):
        return (self - other).is_zero(atol)

    def max_abs(self):
        if not self._terms:
            return 0.
        return max(magnitude(c) for c in self._terms.values())
