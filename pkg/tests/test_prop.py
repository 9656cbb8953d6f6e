import random

import pytest

from termweave import parse_term, replace_all
from termweave.prop import (ATOMS, FALSE, TRUE, anf_rules, evaluate, generate_formula, is_anf, prop_signature,
                            random_formula, truth_table)
from termweave.rewrite import ENGINES, make_engine

SIG = prop_signature()
RULES = anf_rules(SIG)


def anf(text):
    return replace_all(parse_term(text, SIG), RULES, SIG).result


def test_ten_rules():
    assert len(RULES) == 10


@pytest.mark.parametrize('text, expected', [
    ('Not(a)', 'Xor(T, a)'),
    ('Not(Not(a))', 'a'),
    ('Or(a, b)', 'Xor(a, b, And(a, b))'),
    ('Implies(a, a)', 'T'),
    ('Iff(a, a)', 'T'),
    ('And(a, Not(a))', 'F'),
    ('Xor(a, b, a)', 'b'),
    ('And(a, b, a)', 'And(a, b)'),
])
def test_small_normal_forms(text, expected):
    assert anf(text) == parse_term(expected, SIG)


def test_evaluate():
    assert evaluate(parse_term('Implies(a, b)', SIG), {'a': True, 'b': False}) is False
    assert truth_table(parse_term('Xor(a, T)', SIG), ATOMS[:1]) == (True, False)


def test_random_formulas_normalize_to_equivalent_anf():
    rng = random.Random(21)
    for _ in range(200):
        # depth 3 stays well inside the default step limit; deeper formulas can need far
        # more steps because outermost distribution copies unsimplified subterms
        formula = random_formula(rng, SIG, depth=3)
        report = replace_all(formula, RULES, SIG)
        assert report.normal_form
        assert is_anf(report.result)
        assert truth_table(report.result) == truth_table(formula)


def test_backward_generated_formulas_normalize_to_seed():
    rng = random.Random(8)
    for _ in range(100):
        formula = generate_formula(rng, SIG)
        table = truth_table(formula)
        assert all(table) or not any(table)
        expected = TRUE if all(table) else FALSE
        assert replace_all(formula, RULES, SIG).result == expected


def test_engines_agree_on_prop():
    rng = random.Random(3)
    engines = {name: make_engine(RULES, SIG, name) for name in ENGINES}
    for _ in range(30):
        formula = generate_formula(rng, SIG, depth=8)
        traces = {name: replace_all(formula, RULES, SIG, engine=e, trace=True).trace for name, e in engines.items()}
        assert traces['one2one'] == traces['net'] == traces['codegen']
