# -*- coding: utf-8 -*-
"""
Default constants for the deformed oscillator engine.

Every tolerance, probe bound and default grid used by the library lives here,
the command line interface and the run-config reader take their defaults from
this module.
"""

import math
import os

TOOL_NAME = 'pq_oscillators'
TOOL_VERSION = '0.3.0'

# tolerances
TOLERANCE = 1e-12  # default DeformationParams tolerance
RELATION_TOLERANCE = 1e-10  # relation residuals in float mode
SERIES_TAIL_TOLERANCE = 1e-16  # relative stopping threshold of the deformed exponential
PSI_TERM_TOLERANCE = 1e-17  # relative boundary-term threshold of the bilateral series
WINDOW_TAIL_THRESHOLD = 1e-14  # positive-energy window auto-expansion
PHASE_TOLERANCE = 1e-14  # numeric comparison of q-symmetric amplitudes
POSITIVE_NORMALIZATION_TOLERANCE = 1e-8  # series normalisation against the direct magnitude sum

# hard limits on series and windows
MAX_SERIES_TERMS = 100000
MAX_PSI_WINDOW = 2000
MAX_POSITIVE_WINDOW = 400

# q-symmetric state probes
PROBE_MAX_WORD_LENGTH = 5
PROBE_MAX_ALPHABET = 3
IDENTITY_MAX_WORD_LENGTH = 8
MAX_COUNTEREXAMPLES = 5

# (p, theta) points where convention probes are realised numerically
CONVENTION_GRID = ((0.7, math.pi / 7),
                   (1.5, math.pi / 5),
                   (0.3, math.pi / 2))

# parallelism (joblib)
N_JOBS = 1

# relation suites known to the verification engine
SUITES = ('oscillator', 'conjugates', 'subhamiltonian', 'gl', 'hermiticity', 'classical')

# command line interface
COMMANDS = ('eval', 'verify', 'coherent', 'positive', 'qsym', 'resolve')
EVAL_FUNCTIONS = ('bracket', 'factorial', 'pochhammer', 'exp', 'psi01', 'gaussian')
OUTPUT_FORMATS = ('json', 'text')
COHERENT_METHODS = ('series', 'exponential')

# JSON schema of the reports written by the CLI
REPORT_SCHEMA = os.path.join(os.path.split(os.path.abspath(__file__))[0], "report_schema.json")
