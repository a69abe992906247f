"""Superadditive coding with qubit trine states.

Submodules: ``qmath`` (linear algebra kernel), ``measurement`` (ensembles,
POVMs, channels, Naimark extension), ``trine`` (letter and code-word
states), ``infotheory`` (mutual information and coding gains),
``circuits`` (two-level decomposition and gate compilation),
``reliability`` (error exponents, code lengths), ``expsim`` (optics and
photon-counting simulation) and ``cli``.
"""

from .infotheory import (
    InfoResult,
    accessible_info_optimize,
    binary_block_gain,
    c1_trine,
    mutual_information,
    offset_sweep,
    superadditivity_report,
)
from .measurement import (
    ChannelMatrix,
    Ensemble,
    LabeledState,
    Povm,
    born_channel,
    factorization_check,
    naimark_extend,
    sqrt_measurement,
    validate_povm,
)
from .trine import CONSTANTS, codeword_state, ideal_channel, letter_state

__version__ = "0.1.0"

__all__ = [
    "CONSTANTS",
    "ChannelMatrix",
    "Ensemble",
    "InfoResult",
    "LabeledState",
    "Povm",
    "accessible_info_optimize",
    "binary_block_gain",
    "born_channel",
    "c1_trine",
    "codeword_state",
    "factorization_check",
    "ideal_channel",
    "letter_state",
    "mutual_information",
    "naimark_extend",
    "offset_sweep",
    "sqrt_measurement",
    "superadditivity_report",
    "validate_povm",
]
