"""Published reference data used by ``sublogic selftest``.

``STANDARD_BASES`` are the named clones whose standard bases the selftest
must identify.  ``OVERVIEW`` transcribes the overview table: for each problem
group and quantifier row, one verdict per column, where each column stands
for the listed clones.
"""
from __future__ import annotations

from . import boolfun, classifier
from .classifier import EXPTIME, NL, NP, OPEN, P, TRIVIAL
from .syntax import EXISTS, FORALL

STANDARD_BASES = ("BF", "R0", "R1", "M", "S1", "S11", "D", "L", "L0", "L3",
                  "E0", "E", "V0", "V", "N2", "N", "I0", "I")

TSAT_COLUMNS = (
    ("I", ("I",)),
    ("V", ("V",)),
    ("E", ("E",)),
    ("N/N2", ("N", "N2")),
    ("M", ("M",)),
    ("L3 to BF", ("L3", "L", "D", "BF")),
    ("otherwise", ("R0", "R1", "R2", "I0", "I1", "E0", "V0", "L0", "S11", "M0", "M1")),
)
STAR_COLUMNS = (
    ("I/I0", ("I", "I0")),
    ("V/V0", ("V", "V0")),
    ("E/E0", ("E", "E0")),
    ("N/N2", ("N", "N2")),
    ("S11 to M", ("S11", "M0", "M")),
    ("L3/L0 to BF", ("L3", "L0", "L", "D", "R0", "S1", "BF")),
    ("otherwise", ("R1", "R2", "M1", "M2", "E1", "V1", "L1", "I1", "I2")),
)

_E, _A = frozenset({EXISTS}), frozenset({FORALL})
_QROWS = (frozenset(), _E, _A, _E | _A)
_EXP6 = (EXPTIME,) * 6 + (TRIVIAL,)

# FOOTNOTED marks the cell that is P for TCSAT and open for OSAT/OCSAT.
FOOTNOTED = "footnoted"
OVERVIEW = {
    "tsat": (
        (frozenset(), (NL, P, P, NL, NP, NP, TRIVIAL)),
        (_E, (P, P, P, EXPTIME, EXPTIME, EXPTIME, TRIVIAL)),
        (_A, (P, P, P, EXPTIME, EXPTIME, EXPTIME, TRIVIAL)),
        (_E | _A, _EXP6),
    ),
    "star": (
        (frozenset(), (NL, P, P, NL, NP, NP, TRIVIAL)),
        (_E, (P, FOOTNOTED, P, EXPTIME, EXPTIME, EXPTIME, TRIVIAL)),
        (_A, (P, P, EXPTIME, EXPTIME, EXPTIME, EXPTIME, TRIVIAL)),
        (_E | _A, _EXP6),
    ),
}


def expected_cells():
    """Yield ``(kind, Q, clone, expected class)`` for every clone in every cell."""
    for kind in ("tsat", "tcsat", "osat", "ocsat"):
        group = "tsat" if kind == "tsat" else "star"
        cols = TSAT_COLUMNS if kind == "tsat" else STAR_COLUMNS
        for Q, row in OVERVIEW[group]:
            for (_, clones), want in zip(cols, row):
                if want == FOOTNOTED:
                    want = P if kind == "tcsat" else OPEN
                for clone in clones:
                    yield kind, Q, clone, want


def check_bases():
    """Mismatches between the standard bases and their identification."""
    bad = []
    for name in STANDARD_BASES:
        got = boolfun.identify_clone(boolfun.CLONES[name].base).named
        if got != name:
            bad.append((name, got))
    return bad


def check_overview():
    bad = []
    for kind, Q, clone, want in expected_cells():
        got = classifier.classify(kind, Q, boolfun.CLONES[clone].base).cls
        if got != want:
            bad.append((kind, sorted(Q), clone, want, got))
    return bad


__all__ = ["STANDARD_BASES", "OVERVIEW", "expected_cells", "check_bases", "check_overview"]
