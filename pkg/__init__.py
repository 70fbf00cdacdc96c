"""
Python package for (p,q)-deformed multimode oscillators: Fock-space
representation, relation checks, coherent states and q-symmetric states
"""

from . import cli, coherent, config, fock, kernel, symmetric, tools
from .coherent import posenergy, zcoherent
from .fock import fockspace, relcheck
from .kernel import qkernel
from .symmetric import qsymm

__title__ = "pq_oscillators"
__status__ = "Development"
__version__ = config.config.TOOL_VERSION
