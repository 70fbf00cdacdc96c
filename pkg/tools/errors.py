# coding: utf-8
# exceptions shared by every sub-package


class Error(Exception):
    """Base class for exceptions in this package."""
    pass


class ArgumentError(Error, ValueError):
    """Raised for invalid arguments: mode indices, orders, occupations, names."""
    pass


class DomainError(Error, ValueError):
    """Raised when a value lies outside the domain where a quantity is defined.

    Typical cases: deformed exponential outside its convergence disc,
    divergent bilateral series, subhamiltonians at p = 1.
    """
    pass


class PoleError(DomainError):
    """Raised when a q-Pochhammer factor vanishes.

    Attributes:
        k -- index of the vanishing factor 1 - a p^(-k)
    """

    def __init__(self, message, k):
        super().__init__(message)
        self.k = k


class ConfigurationError(Error):
    """Raised for invalid mode configurations or run-config files."""
    pass


class ConsistencyError(Error):
    """Raised when an internal invariant is broken."""
    pass


class ConventionError(Error):
    """Raised when no q-symmetrisation convention satisfies the probes.

    Attributes:
        evidence -- the full evidence report of the probe
    """

    def __init__(self, message, evidence):
        super().__init__(message)
        self.evidence = evidence
