"""Boolean fragments of ALC: clone identification, complexity classification,
reductions and decision procedures."""
from ._kernels import BACKEND
from .boolfun import (CloneDescriptor, NamedOperator, OperatorSet, TruthTable,
                      contains_function, identify_clone, nary_closure)
from .classifier import ComplexityVerdict, classify, classify_instance
from .solvers import SolveResult, dispatch
from .syntax import ProblemInstance, check_model, format_instance, parse

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "TruthTable", "NamedOperator", "OperatorSet", "CloneDescriptor",
    "identify_clone", "nary_closure", "contains_function", "ComplexityVerdict",
    "classify", "classify_instance", "SolveResult", "dispatch", "ProblemInstance",
    "parse", "format_instance", "check_model",
]
