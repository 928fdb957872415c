"""Exact counting of cascade-free words for stateful digit-wise operations,
with Chebyshev spectra, state-avoidance universality and carry-chain
dispersion."""

from __future__ import annotations

from .avoidance import (
    StatefulOperation,
    char_poly,
    count_avoiding,
    gpk_classify,
    lift_gpk,
    restrict,
    universality_equal,
)
from .core import (
    GpkDecomposition,
    build_transfer_matrix,
    count_cascade_free,
    parse_gpk,
    spectral_data,
    verify_chebyshev_representation,
)
from .errors import CascadeError
from .instances import (
    InstanceDescriptor,
    InstanceKind,
    addition_instance,
    doubling_instance,
    kummer_carry_count,
)
from .markov import asymptotic_dispersion, markov_chain, stationary_moments, transient_moments
from .poisson import poisson_root, symmetric_dispersion

__version__ = "0.1.0"

__all__ = [
    "CascadeError",
    "GpkDecomposition",
    "InstanceDescriptor",
    "InstanceKind",
    "StatefulOperation",
    "addition_instance",
    "asymptotic_dispersion",
    "build_transfer_matrix",
    "char_poly",
    "count_avoiding",
    "count_cascade_free",
    "doubling_instance",
    "gpk_classify",
    "kummer_carry_count",
    "lift_gpk",
    "markov_chain",
    "parse_gpk",
    "poisson_root",
    "restrict",
    "spectral_data",
    "stationary_moments",
    "symmetric_dispersion",
    "transient_moments",
    "universality_equal",
    "verify_chebyshev_representation",
]
