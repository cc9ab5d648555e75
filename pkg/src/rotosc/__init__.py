"""Exact and variational spectra of the rotating harmonic oscillator."""

from rotosc.eigenfunction import WaveForm, count_nodes, expectation_q, residual
from rotosc.errors import (
    ConditioningError,
    DegenerateTruncation,
    DomainError,
    NumericalError,
    RealnessViolation,
    VerificationFailure,
)
from rotosc.model import ConversionContext, ModelParams, lambda_from_w, potential_value
from rotosc.oracle import FdGrid, fd_spectrum
from rotosc.polynomial import RationalPolynomial
from rotosc.recurrence import RecurrenceTable, build_table
from rotosc.ritz import GaussianBasis, ritz_expectation_q, ritz_spectrum
from rotosc.sweep import SpectrumDataset, build_dataset, verify_intersections
from rotosc.truncation import ExactSolution, exact_solutions, truncation_roots

__version__ = "0.1.0"

__all__ = [
    "ConditioningError", "ConversionContext", "DegenerateTruncation", "DomainError",
    "ExactSolution", "FdGrid", "GaussianBasis", "ModelParams", "NumericalError",
    "RationalPolynomial", "RealnessViolation", "RecurrenceTable", "SpectrumDataset",
    "VerificationFailure", "WaveForm", "build_dataset", "build_table", "count_nodes",
    "exact_solutions", "expectation_q", "fd_spectrum", "lambda_from_w", "potential_value",
    "residual", "ritz_expectation_q", "ritz_spectrum", "truncation_roots",
    "verify_intersections",
]
