"""Complexity of TBox and ontology satisfiability for Boolean ALC fragments.

The verdict depends only on the problem, the quantifier set and the clone
``[B]``.  Rules are evaluated top down and the first match wins; the final
"otherwise" rows are reached by exclusion.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import boolfun
from .errors import ClassificationError, InconclusiveError
from .syntax import EXISTS, FORALL, ProblemInstance, signature

TRIVIAL = "Trivial"
NL = "NLComplete"
P = "PComplete"
NP = "NPComplete"
EXPTIME = "ExpTimeComplete"
OPEN = "Open"

ORDER = {TRIVIAL: 0, NL: 1, P: 2, NP: 3, OPEN: 3, EXPTIME: 4}
LABELS = {TRIVIAL: "trivial", NL: "NL-complete", P: "P-complete",
          NP: "NP-complete", EXPTIME: "EXPTIME-complete", OPEN: "open"}
SHORT = {TRIVIAL: "triv", NL: "NL", P: "P", NP: "NP", EXPTIME: "EXP", OPEN: "OPEN"}

CLASSIFIED_KINDS = ("tsat", "tcsat", "osat", "ocsat")


@dataclass(frozen=True)
class ComplexityVerdict:
    cls: str
    provenance: tuple
    open_bounds: tuple | None = None

    def __post_init__(self):
        if (self.cls == OPEN) != (self.open_bounds is not None):
            raise ValueError("open_bounds must be given exactly for open verdicts")

    def label(self):
        if self.cls == OPEN:
            lower, upper = self.open_bounds
            return f"open: {lower}, {upper}"
        return LABELS[self.cls]

    def __str__(self):
        return f"{self.label()} per {'; '.join(self.provenance)}"


def _quantifier_key(Q):
    Q = frozenset(Q)
    bad = Q - {EXISTS, FORALL}
    if bad:
        raise ValueError(f"unknown quantifiers {sorted(bad)}")
    if not Q:
        return "none"
    if len(Q) == 2:
        return "both"
    return "exists" if EXISTS in Q else "forall"


def _rule(kind, qkey, named, within):
    """Return (class, tag) for a clone given by name and upward closure."""
    in_ = lambda *names: named in names  # noqa: E731
    if kind == "tsat":
        if "R0" in within or "R1" in within:
            return TRIVIAL, "tsat-reproducing-trivial"
        if qkey == "none":
            if in_("I", "N2", "N"):
                return NL, "tsat-none-I/N-NL"
            if in_("E", "V"):
                return P, "tsat-none-E/V-P"
            return NP, "tsat-none-NP"
        if qkey in ("exists", "forall"):
            if in_("I", "E", "V"):
                return P, "tsat-one-quantifier-I/E/V-P"
            return EXPTIME, "tsat-one-quantifier-EXPTIME"
        return EXPTIME, "tsat-both-EXPTIME"

    if "R1" in within:
        return TRIVIAL, f"{kind}-1-reproducing-trivial"
    if qkey == "none":
        if in_("I0", "I", "N2", "N"):
            return NL, f"{kind}-none-I/N-NL"
        if in_("E0", "E", "V0", "V"):
            return P, f"{kind}-none-E/V-P"
        return NP, f"{kind}-none-NP"
    if qkey == "forall":
        if in_("I0", "I", "V0", "V"):
            return P, f"{kind}-forall-I/V-P"
        return EXPTIME, f"{kind}-forall-EXPTIME"
    if qkey == "exists":
        if in_("I0", "I", "E0", "E"):
            return P, f"{kind}-exists-I/E-P"
        if in_("V0", "V"):
            if kind == "tcsat":
                return P, "tcsat-exists-V-P"
            return OPEN, f"{kind}-exists-V-open"
        return EXPTIME, f"{kind}-exists-EXPTIME"
    return EXPTIME, f"{kind}-both-EXPTIME"


def _verdict(cls, tag):
    bounds = ("P-hard", "in EXPTIME") if cls == OPEN else None
    return ComplexityVerdict(cls, (tag,), bounds)


def classify_clone(kind: str, Q, named: str) -> ComplexityVerdict:
    """Verdict for a named clone, without going through operator tables."""
    kind = _check_kind(kind)
    within = frozenset(c for c in boolfun.CLONES if boolfun.clone_subset(named, c))
    return _verdict(*_rule(kind, _quantifier_key(Q), named, within))


def _check_kind(kind):
    kind = kind.lower()
    if kind == "csat":
        raise ClassificationError("concept satisfiability without a TBox is not classified")
    if kind not in CLASSIFIED_KINDS:
        raise ClassificationError(f"unknown problem kind {kind!r}")
    return kind


def classify(kind: str, Q, B) -> ComplexityVerdict:
    """Complexity of ``kind`` restricted to quantifiers ``Q`` and operators ``B``."""
    kind = _check_kind(kind)
    qkey = _quantifier_key(Q)
    desc = boolfun.identify_clone(B)
    if desc.named is not None or desc.exact:
        return _verdict(*_rule(kind, qkey, desc.named, desc.within))
    # [B] was not pinned down; collect every verdict consistent with what is known
    candidates = {_rule(kind, qkey, None, desc.within)}
    for c in desc.within:
        if all(boolfun.clone_subset(d, c) for d in desc.contains):
            candidates.add(_rule(kind, qkey, c, desc.within))
    if len({cls for cls, _ in candidates}) == 1:
        return _verdict(*sorted(candidates)[0])
    raise InconclusiveError(
        "operators of high arity left the clone ambiguous",
        sorted(LABELS[cls] for cls in {cls for cls, _ in candidates}))


def classify_instance(instance: ProblemInstance) -> ComplexityVerdict:
    sig = signature(instance)
    return classify(instance.kind, sig.quantifiers, sig.operators)


# ---------------------------------------------------------------------------
# Overview table

TABLE_COLUMNS = {
    "tsat": [("I", "I"), ("V", "V"), ("E", "E"), ("N/N2", "N"), ("M", "M"),
             ("L3 to BF", "L3"), ("otherwise", "R0")],
    "cstar": [("I/I0", "I0"), ("V/V0", "V0"), ("E/E0", "E0"), ("N/N2", "N2"),
              ("S11 to M", "S11"), ("L3/L0 to BF", "L0"), ("otherwise", "R1")],
}
QUANTIFIER_ROWS = [("{}", frozenset()), ("{E}", frozenset({EXISTS})),
                   ("{A}", frozenset({FORALL})), ("{E,A}", frozenset({EXISTS, FORALL}))]


def overview_table():
    """Rows of ``(problem, quantifier label, column label, verdict)``."""
    rows = []
    for kind, cols in (("tsat", TABLE_COLUMNS["tsat"]),
                       ("tcsat", TABLE_COLUMNS["cstar"]),
                       ("osat", TABLE_COLUMNS["cstar"]),
                       ("ocsat", TABLE_COLUMNS["cstar"])):
        for qlabel, Q in QUANTIFIER_ROWS:
            for clabel, rep in cols:
                rows.append((kind, qlabel, clabel, classify_clone(kind, Q, rep)))
    return rows


def format_overview():
    lines = []
    rows = overview_table()
    for kind in ("tsat", "tcsat", "osat", "ocsat"):
        cols = TABLE_COLUMNS["tsat" if kind == "tsat" else "cstar"]
        lines.append(f"{kind.upper():<8}" + "".join(f"{c:>14}" for c, _ in cols))
        for qlabel, _ in QUANTIFIER_ROWS:
            cells = [v for k, q, _, v in rows if k == kind and q == qlabel]
            lines.append(f"{qlabel:<8}" + "".join(f"{SHORT[v.cls]:>14}" for v in cells))
        lines.append("")
    return "\n".join(lines).rstrip() + "\n"
