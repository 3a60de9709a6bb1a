"""Decision procedures for every fragment plus the dispatcher."""
from .bruteforce import solve_bruteforce
from .dispatch import METHODS, choose_method, dispatch
from .el import solve_el_exists
from .forall_v import solve_forall_V
from .nlgraph import solve_nl_graph
from .propsat import solve_prop_sat
from .result import SAT, UNKNOWN, UNSAT, SolveResult
from .saturation import solve_saturation_forall
from .typeelim import TypeSystem, solve_typeelim

__all__ = [
    "SAT", "UNSAT", "UNKNOWN", "SolveResult", "METHODS", "choose_method", "dispatch",
    "solve_bruteforce", "solve_typeelim", "solve_nl_graph", "solve_saturation_forall",
    "solve_el_exists", "solve_forall_V", "solve_prop_sat", "TypeSystem",
]
