"""Continuous-variable CHSH toolkit.

Bell tests with quadrature homodyne measurements: root binning of
continuous outcomes, overlap integrals and correlators for two-mode
even/odd superpositions, multi-peak cat-state families, number-basis
decompositions, and an exact simulator for the conditional preparation
protocols.
"""

from .binning import SignedPartition, classify, positive_negative_binning, root_binning
from .bell import (
    CorrelatorReport,
    TwoModeState,
    brute_force_correlator,
    brute_force_probabilities,
    chsh_max,
    chsh_value,
    correlators,
    momentum_overlap,
    momentum_pair,
    position_overlap,
)
from .catstates import (
    CatFamilySpec,
    cat2,
    envelope_cat,
    flat_cat,
    min_paws,
    optimize_alpha,
    state_chsh,
    table1,
    table2,
)
from .fock import FockExpansion, fock_decompose, fock_pair_chsh, hermite_function
from .prepsim import (
    HybridState,
    prepare_entangled_cats,
    prepare_odd_cat,
)
from .wavefunc import (
    GaussianTerm,
    Wavefunction,
    evaluate,
    fourier_transform,
    inner_product,
    normalize,
    superpose,
)

__version__ = "0.1.0"

__all__ = [
    "CatFamilySpec",
    "CorrelatorReport",
    "FockExpansion",
    "GaussianTerm",
    "HybridState",
    "SignedPartition",
    "TwoModeState",
    "Wavefunction",
    "brute_force_correlator",
    "brute_force_probabilities",
    "cat2",
    "chsh_max",
    "chsh_value",
    "classify",
    "correlators",
    "envelope_cat",
    "evaluate",
    "flat_cat",
    "fock_decompose",
    "fock_pair_chsh",
    "fourier_transform",
    "hermite_function",
    "inner_product",
    "min_paws",
    "momentum_overlap",
    "momentum_pair",
    "normalize",
    "optimize_alpha",
    "position_overlap",
    "positive_negative_binning",
    "prepare_entangled_cats",
    "prepare_odd_cat",
    "root_binning",
    "state_chsh",
    "superpose",
    "table1",
    "table2",
]
