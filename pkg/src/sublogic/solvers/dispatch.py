"""Pick a decision procedure by signature and optionally cross-check it."""
from __future__ import annotations

from ..errors import DiscrepancyError, DispatchError, LimitError
from ..syntax import EXISTS, FORALL, check_model
from .bruteforce import solve_bruteforce
from .common import quantifiers, used_clone
from .el import solve_el_exists
from .forall_v import solve_forall_V
from .nlgraph import solve_nl_graph
from .propsat import solve_prop_sat
from .result import UNKNOWN
from .saturation import solve_saturation_forall
from .typeelim import solve_typeelim

METHODS = {
    "typeelim": solve_typeelim,
    "brute": solve_bruteforce,
    "nlgraph": solve_nl_graph,
    "saturation": solve_saturation_forall,
    "el": solve_el_exists,
    "forallv": solve_forall_V,
    "propsat": solve_prop_sat,
}


def choose_method(instance) -> str:
    Q = quantifiers(instance)
    within = used_clone(instance).within
    if not Q:
        return "nlgraph" if "N" in within else "propsat"
    if Q == {EXISTS} and "E" in within:
        return "el"
    if Q == {FORALL}:
        if "V" in within:
            return "forallv"
        if "E" in within and instance.kind == "tsat":
            return "saturation"
    return "typeelim"


def _run(name, instance, model):
    return METHODS[name](instance, model=model)


def dispatch(instance, method: str = "auto", cross_check: bool = False,
             model: bool = False):
    """Solve ``instance``; ``stats["cross_check"]`` lists the other verdicts."""
    if method == "auto":
        method = choose_method(instance)
    if method not in METHODS:
        raise DispatchError(f"unknown method {method!r}")
    result = _run(method, instance, model or cross_check)
    if not cross_check:
        return result
    results = {method: result}
    for other in ("typeelim", "brute"):
        if other in results:
            continue
        try:
            results[other] = _run(other, instance, True)
        except LimitError:
            continue
    verdicts = {k: r.status for k, r in results.items() if r.status != UNKNOWN}
    if len(set(verdicts.values())) > 1:
        raise DiscrepancyError(f"methods disagree: {verdicts}", results)
    for k, r in results.items():
        if r.model is not None and not check_model(r.model, instance):
            raise DiscrepancyError(f"{k} returned a model that fails the instance", results)
    result.stats = dict(result.stats, cross_check={k: r.status for k, r in results.items()})
    if not model:
        result.model = None
    return result
