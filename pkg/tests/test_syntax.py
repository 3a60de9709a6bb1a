import itertools

import pytest
from hypothesis import given, settings, strategies as st

from sublogic import generators
from sublogic.boolfun import AND, BOT, NOT, OR, TOP
from sublogic.errors import ArityError, ParseError
from sublogic.syntax import (EXISTS, Apply, Atomic, Axiom, Exists, Forall,
                             Interpretation, Ontology, ProblemInstance, check_model,
                             evaluate_concept, format_instance, nnf_dualize, parse,
                             parse_operators, signature)

A, B, C = Atomic("A"), Atomic("B"), Atomic("C")


def test_minimal_instance():
    inst = parse("operator bot 0 0\nproblem tsat\ntbox\n  (bot) <= A\n")
    assert inst.kind == "tsat"
    assert inst.tbox == (Axiom(Apply(BOT), A),)


def test_wrong_arity_is_rejected():
    with pytest.raises((ArityError, ParseError)):
        parse("operator and 2 0001\nproblem tsat\ntbox\n  (and A) <= B\n")


@pytest.mark.parametrize("text,line", [
    ("tbox\n  A <= B\n", None),                                   # no problem line
    ("problem tsat\ntbox\n  A B\n", 3),                           # no separator
    ("problem tsat\ntbox\n  (foo A) <= B\n", 3),                  # unknown operator
    ("operator f 1 10\noperator f 1 01\nproblem tsat\n", 2),      # duplicate operator
    ("problem tsat\ntbox\n  _A <= B\n", 3),                       # reserved name
    ("problem nope\n", 1),
    ("problem tcsat\ntbox\n  A <= B\n", None),                    # query missing
])
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse(text)
    if line is not None:
        assert info.value.line == line


def test_reserved_names_need_the_pragma():
    text = "problem tsat\ntbox\n  _A <= B\n"
    assert parse("# sublogic: generated\n" + text).tbox[0].lhs == Atomic("_A")
    assert parse(text, allow_reserved=True).tbox[0].lhs == Atomic("_A")


def test_equivalence_shorthand():
    inst = parse("problem tsat\ntbox\n  A == (some r B)\n")
    assert inst.tbox == (Axiom(A, Exists("r", B)), Axiom(Exists("r", B), A))


def test_operators_file(fixtures):
    ops = parse_operators((fixtures / "ops_and_not.txt").read_text())
    assert [o.name for o in ops] == ["and", "not"]
    with pytest.raises(ParseError):
        parse_operators("problem tsat\n")


@pytest.mark.parametrize("name", ["tbox", "ontology", "generated"])
def test_golden_printer(fixtures, name):
    src = (fixtures / "golden" / f"{name}.in").read_text()
    want = (fixtures / "golden" / f"{name}.out").read_text()
    assert format_instance(parse(src)) == want
    assert format_instance(parse(want)) == want


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(["ocsat/both/BF", "tcsat/exists/E", "osat/forall/V", "tsat/none/*",
                        "csat/both/N", "ocsat/none/L"]),
       st.integers(0, 10 ** 6))
def test_round_trip(profile, seed):
    inst = generators.gen_random(profile, seed)
    assert parse(format_instance(inst)) == inst


def test_instance_validation():
    with pytest.raises(ValueError):
        ProblemInstance("tsat", (AND,), Ontology((Axiom(Apply(OR, (A, B)), C),)))
    with pytest.raises(ValueError):
        ProblemInstance("tsat", (), Ontology((), ((A, "a"),)))
    with pytest.raises(ValueError):
        ProblemInstance("csat", (), Ontology((Axiom(A, B),)), A)


def test_signature(fixtures):
    sig = signature(parse((fixtures / "ocsat_exists.dl").read_text()))
    assert [o.name for o in sig.operators] == ["and", "bot"]
    assert sig.quantifiers == {EXISTS}
    assert sig.atoms == ("A", "B", "C")
    assert sig.roles == ("r",)
    assert sig.individuals == ("a", "b")
    sig = signature(parse((fixtures / "gap_unsat.dl").read_text()))
    assert sig.quantifiers == frozenset() and len(sig.atoms) == 4


# -- semantics -------------------------------------------------------------

def test_evaluation_examples():
    i = Interpretation((1, 2), {"A": {1}})
    assert evaluate_concept(i, Apply(NOT, (A,))) == {2}
    i = Interpretation((1, 2), {"A": {2}}, {"R": {(1, 2)}})
    assert evaluate_concept(i, Exists("R", A)) == {1}
    assert evaluate_concept(i, Forall("R", A)) == {1, 2}


def test_check_model_examples(fixtures):
    single = Interpretation((0,), {"A": {0}})
    assert check_model(single, ProblemInstance("tsat", (), Ontology((Axiom(A, A),))))
    bad = ProblemInstance("tsat", (TOP, BOT), Ontology((Axiom(Apply(TOP), Apply(BOT)),)))
    assert not check_model(single, bad)


def interpretations(atoms, roles, size):
    dom = tuple(range(size))
    subsets = [frozenset(s) for k in range(size + 1) for s in itertools.combinations(dom, k)]
    pairs = list(itertools.product(dom, dom))
    rels = [frozenset(s) for k in range(len(pairs) + 1) for s in itertools.combinations(pairs, k)]
    for ext in itertools.product(subsets, repeat=len(atoms)):
        for rext in itertools.product(rels, repeat=len(roles)):
            yield Interpretation(dom, dict(zip(atoms, ext)), dict(zip(roles, rext)))


def test_gap_tbox_has_no_small_model(fixtures):
    inst = parse((fixtures / "gap_unsat.dl").read_text())
    for size in (1, 2):
        assert not any(check_model(i, inst) for i in interpretations(signature(inst).atoms,
                                                                    (), size))


def complement(i, c):
    return set(i.domain) - evaluate_concept(i, c)


@pytest.mark.parametrize("concept", [
    Exists("R", Apply(AND, (A, B))),
    Forall("R", Apply(OR, (A, Apply(NOT, (B,))))),
    Apply(TOP),
    A,
])
def test_nnf_dualize_denotes_the_complement(concept):
    dual = nnf_dualize(concept, (AND, OR, NOT, TOP, BOT))
    for size in (1, 2):
        for i in interpretations(("A", "B"), ("R",), size):
            primed = Interpretation(i.domain, {f"_d_{k}": set(i.domain) - v
                                               for k, v in i.concept_ext.items()},
                                    i.role_ext)
            assert evaluate_concept(primed, dual) == complement(i, concept)


def test_nnf_dualize_shapes():
    assert nnf_dualize(A) == Atomic("_d_A")
    assert nnf_dualize(Apply(TOP), (TOP, BOT)) == Apply(BOT)
    assert nnf_dualize(Exists("R", Apply(AND, (A, B))), (AND, OR)) == \
        Forall("R", Apply(OR, (Atomic("_d_A"), Atomic("_d_B"))))
