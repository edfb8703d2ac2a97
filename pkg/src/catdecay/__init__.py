"""Decoherence of two-component Schrodinger-cat states in a zero-temperature cavity."""

from catdecay._backend import BACKEND
from catdecay.cat_states import CatState, DegenerateNormError, ecs, new_cat, ocs, yss
from catdecay.dynamics import DecayedCat, FockDensityMatrix, decay, density_matrix, lindblad_evolve, mixture_reference
from catdecay.observables import (
    interference_decay_factor,
    photon_number_distribution,
    squeezing_ecs_closed,
    squeezing_factors,
)
from catdecay.truncation import TruncationWarning
from catdecay.wigner import PhasePoint, wigner_closed, wigner_grid, wigner_parity_oracle, wigner_series

__all__ = [
    "BACKEND",
    "CatState",
    "DecayedCat",
    "DegenerateNormError",
    "FockDensityMatrix",
    "PhasePoint",
    "TruncationWarning",
    "decay",
    "density_matrix",
    "ecs",
    "interference_decay_factor",
    "lindblad_evolve",
    "mixture_reference",
    "new_cat",
    "ocs",
    "photon_number_distribution",
    "squeezing_ecs_closed",
    "squeezing_factors",
    "wigner_closed",
    "wigner_grid",
    "wigner_parity_oracle",
    "wigner_series",
    "yss",
]
