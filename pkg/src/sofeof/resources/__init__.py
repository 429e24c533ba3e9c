"""Squeezing and entanglement of formation for two-mode Gaussian states."""

from .auxiliary import entropy_g, h, h0
from .eof import EofResult, eof_pure, gaussian_eof, standard_form
from .report import ResourceReport, eof_potential_bound, resource_report
from .sof import SofResult, sof_mixed, sof_pure
from .witness import PureDecomposition

__all__ = [
    "EofResult", "PureDecomposition", "ResourceReport", "SofResult",
    "entropy_g", "eof_potential_bound", "eof_pure", "gaussian_eof", "h", "h0",
    "resource_report", "sof_mixed", "sof_pure", "standard_form",
]
