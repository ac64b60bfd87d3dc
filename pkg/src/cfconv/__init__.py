"""Continued fraction evaluation, contraction and convergence-criterion checking."""

from .cf_core import (
    ApproximantState,
    TraceEntry,
    approximant,
    determinant_residual,
    equivalence_to_unit,
    evaluate_trace,
    iter_states,
    nested_value,
    step,
    tail_ratio,
)
from .contraction import ContractionKind, contract, even_part, odd_part, verify_contraction
from .criteria import Certificate, Status, Verdict, certificate_search, check, check_certificate
from .errors import CFError
from .numerics import ConvergenceReport, b_ratio_scan, convergence_report, even_odd_gap, limit_estimate
from .scalars import EXACT, INFINITY, FloatBackend, RationalComplex
from .sequence import SequenceSpec
from .speclang import eval_term, load_spec, parse_spec, pretty

__version__ = "0.1.0"

__all__ = [
    "ApproximantState", "TraceEntry", "approximant", "determinant_residual", "equivalence_to_unit",
    "evaluate_trace", "iter_states", "nested_value", "step", "tail_ratio",
    "ContractionKind", "contract", "even_part", "odd_part", "verify_contraction",
    "Certificate", "Status", "Verdict", "certificate_search", "check", "check_certificate",
    "CFError", "ConvergenceReport", "b_ratio_scan", "convergence_report", "even_odd_gap", "limit_estimate",
    "EXACT", "INFINITY", "FloatBackend", "RationalComplex", "SequenceSpec",
    "eval_term", "load_spec", "parse_spec", "pretty",
]
