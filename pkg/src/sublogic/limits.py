"""Runtime size caps, overridable through ``SUBLOGIC_LIMITS``.

The variable holds comma separated ``key=value`` pairs, for example
``SUBLOGIC_LIMITS="closure=14,domain=3"``.
"""
import os
from dataclasses import dataclass, fields, replace

ARITY_CAP = 6
CLOSURE_ARITY_CAP = 4


@dataclass(frozen=True)
class Limits:
    closure: int = 20          # subconcepts handled by type elimination
    domain: int = 3            # default brute-force domain bound
    brute_budget: int = 1 << 22  # candidate interpretations per brute-force run


def _parse(text):
    values = {}
    known = {f.name for f in fields(Limits)}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        key, _, value = part.partition("=")
        key = key.strip()
        if key not in known:
            raise ValueError(f"unknown limit {key!r} in SUBLOGIC_LIMITS")
        values[key] = int(value)
    return values


def current():
    """Return the limits in effect, reading the environment each call."""
    text = os.environ.get("SUBLOGIC_LIMITS", "")
    return replace(Limits(), **_parse(text)) if text else Limits()
