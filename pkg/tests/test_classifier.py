import random

import pytest

import oracles
from sublogic import classifier, generators
from sublogic.boolfun import AND, BOT, CLONES, DUAL_CLONE, NOT, OR, TOP, XOR
from sublogic.classifier import EXPTIME, NL, NP, OPEN, P, TRIVIAL, classify, classify_instance
from sublogic.errors import ClassificationError
from sublogic.syntax import EXISTS, FORALL, Ontology, ProblemInstance

E, A = frozenset({EXISTS}), frozenset({FORALL})
QROWS = (frozenset(), E, A, E | A)


@pytest.mark.parametrize("kind,Q,ops,want", [
    ("tsat", (), [AND, TOP, BOT], P),
    ("ocsat", E, [OR, BOT], OPEN),
    ("tsat", E | A, [XOR], TRIVIAL),
    ("tcsat", (), [NOT], NL),
    ("ocsat", E | A, [BOT], EXPTIME),
])
def test_examples(kind, Q, ops, want):
    assert classify(kind, Q, ops).cls == want


def test_open_case_has_bounds_and_a_tag():
    v = classify("ocsat", E, [OR, BOT])
    assert v.open_bounds == ("P-hard", "in EXPTIME")
    assert str(v) == "open: P-hard, in EXPTIME per ocsat-exists-V-open"
    assert classify("tcsat", E, [OR, BOT]).cls == P


def test_instances():
    g = generators.Digraph(range(3), ((0, 1), (1, 2)))
    assert classify_instance(generators.gen_gap(g, 0, 2)).cls == NL
    assert classify_instance(generators.gen_one_in_three([(1, 2, 3)])).cls == NP
    assert classify_instance(ProblemInstance("tsat", (), Ontology())).cls == TRIVIAL


def test_unclassified_kinds():
    with pytest.raises(ClassificationError):
        classify("csat", (), [AND])
    with pytest.raises(ClassificationError):
        classify("xsat", (), [AND])


@pytest.mark.parametrize("name", sorted(DUAL_CLONE))
def test_tbox_contraposition_symmetry(name):
    # contraposition maps TSAT_Q(B) to TSAT_Q'(dual B), swapping the quantifiers
    dual = DUAL_CLONE[name]
    swap = {frozenset(): frozenset(), E: A, A: E, E | A: E | A}
    for Q in QROWS:
        assert classify("tsat", Q, CLONES[name].base).cls == \
            classify("tsat", swap[Q], CLONES[dual].base).cls


def test_otherwise_completeness():
    for name in CLONES:
        if not (oracles.oracle_included(name, "R0") or oracles.oracle_included(name, "R1")):
            assert oracles.oracle_included("N2", name) or oracles.oracle_included("I", name)
        if not oracles.oracle_included(name, "R1"):
            assert oracles.oracle_included("N2", name) or oracles.oracle_included("I0", name)


def test_more_operators_never_lowers_hardness():
    # adding operators only enlarges [B]; ignore the trivial and open cells
    rng = random.Random(7)
    rank = {NL: 1, P: 2, NP: 3, EXPTIME: 4}
    names = sorted(CLONES)
    for _ in range(300):
        a, b = rng.sample(names, 2)
        if not oracles.oracle_included(a, b):
            continue
        kind = rng.choice(classifier.CLASSIFIED_KINDS)
        Q = rng.choice(QROWS)
        va, vb = classify(kind, Q, CLONES[a].base), classify(kind, Q, CLONES[b].base)
        if va.cls in rank and vb.cls in rank:
            assert rank[va.cls] <= rank[vb.cls], (kind, Q, a, b)


def test_overview_text():
    text = classifier.format_overview()
    assert text.splitlines()[0].startswith("TSAT")
    assert "OPEN" in text
    assert len(classifier.overview_table()) == 4 * 4 * 7
