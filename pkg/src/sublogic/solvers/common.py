"""Helpers shared by the solvers."""
from __future__ import annotations

from .. import boolfun
from ..errors import DispatchError
from ..syntax import EXISTS, FORALL, ProblemInstance, signature


def quantifiers(instance: ProblemInstance):
    return signature(instance).quantifiers


def used_clone(instance: ProblemInstance):
    """Clone descriptor of the operators that actually occur."""
    return boolfun.identify_clone(signature(instance).operators)


def within(instance, clone):
    return clone in used_clone(instance).within


def require(cond, message):
    if not cond:
        raise DispatchError(message)


def only(instance, allowed):
    """Quantifiers used by ``instance`` are a subset of ``allowed``."""
    return quantifiers(instance) <= frozenset(allowed)


__all__ = ["quantifiers", "used_clone", "within", "require", "only", "EXISTS", "FORALL"]
