"""Squeezing of formation, Gaussian entanglement of formation and EOF maximization
for two-mode Gaussian states."""

from .config import AlgorithmConfig, SolverConfig, Tolerances
from .gaussian_core import CovarianceMatrix, load_state, save_state
from .max_eof import AlgorithmTrace, maximize_eof
from .resources import gaussian_eof, h0, resource_report, sof_mixed, sof_pure
from .special_states import SpecialStateParams, make_special

__all__ = [
    "AlgorithmConfig", "AlgorithmTrace", "CovarianceMatrix", "SolverConfig", "SpecialStateParams",
    "Tolerances", "gaussian_eof", "h0", "load_state", "make_special", "maximize_eof", "resource_report",
    "save_state", "sof_mixed", "sof_pure",
]
