"""Chow groups of zero-cycles on rational surfaces over local fields.

The :mod:`~zerocycles.chowcore` layer computes the degree-0 Chow group from
regular-model data; :mod:`~zerocycles.depezzo` re-checks the two-blow-up
regular model of a quartic del Pezzo surface over small finite fields.
"""

from .chowcore import (
    ChowGroupResult,
    DivisorGenerator,
    LaurentPoly,
    ModelValidationError,
    RegularModelData,
    chatelet_coefficients,
    chow_zero_cycles,
    paper_fixture,
    validate,
)
from .galmod import ComponentOrbit, InvariantHom, SpecialFiber, degree_zero_check, evaluate_xi, xi_weights
from .intlat import CokernelStructure, IntMatrix, SnfResult, cokernel, hnf, snf

__version__ = "0.1.0"
