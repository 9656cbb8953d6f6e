import random

import pytest

from termweave import (Compound, Integer, ReplacementRule, SignatureTable, Substitution, TermweaveError, apply_once,
                       match_all_positions, parse_pattern, parse_rule, parse_signature_file, parse_term, replace_all)
from termweave.rewrite import ENGINES

SIG = SignatureTable(strict=False)
BUBBLE = '[h___, a_, b_, t___] -> [h___, b_, a_, t___] ; where a > b'


def bubble_rules():
    return [parse_rule(BUBBLE, SIG)]


def int_list(values):
    return Compound('List', [Integer(v) for v in values])


@pytest.mark.parametrize('engine', sorted(ENGINES))
def test_bubble_sort(engine):
    report = replace_all(parse_term('[1, 4, 3, 2]', SIG), bubble_rules(), SIG, engine=engine)
    assert str(report.result) == '[1, 2, 3, 4]'
    assert report.normal_form


def test_bubble_sort_first_step():
    term, position, index, sigma = apply_once(parse_term('[1, 4, 3, 2]', SIG), bubble_rules(), SIG)
    assert str(term) == '[1, 3, 4, 2]'
    assert (position, index) == ((), 0)
    assert str(sigma) == '{a -> 4, b -> 3, h -> (1), t -> (2)}'


def test_sorted_list_is_a_fixpoint():
    report = replace_all(parse_term('[1, 2, 3]', SIG), bubble_rules(), SIG)
    assert report.steps == 0 and str(report.result) == '[1, 2, 3]'


def test_bubble_sort_random_lists():
    rng = random.Random(13)
    rules = bubble_rules()
    for _ in range(100):
        values = [rng.randrange(10) for _ in range(rng.randint(0, 8))]
        for engine in ENGINES:
            assert replace_all(int_list(values), rules, SIG, engine=engine).result == int_list(sorted(values))


def test_double_negation():
    sig = parse_signature_file('op Not fixed:1')
    rules = [parse_rule('Not(Not(x_)) -> x_', sig)]
    assert apply_once(parse_term('Not(Not(a))', sig), rules, sig)[:3] == (parse_term('a', sig), (), 0)
    assert apply_once(parse_term('Not(a)', sig), rules, sig) is None


def test_leftmost_outermost_and_rule_priority():
    sig = parse_signature_file('op f fixed:2\nop g fixed:1')
    rules = [parse_rule('g(x_) -> x_', sig), parse_rule('g(g(x_)) -> b', sig)]
    # the outer g(...) is rewritten before the inner one, and rule 0 wins over rule 1 there
    term, position, index, _ = apply_once(parse_term('f(g(g(a)), g(c))', sig), rules, sig)
    assert (str(term), position, index) == ('f(g(a), g(c))', (0,), 0)


def test_step_limit():
    report = replace_all(parse_term('[3, 2, 1]', SIG), bubble_rules(), SIG, max_steps=1)
    assert report.steps == 1 and not report.normal_form
    with pytest.raises(ValueError):
        replace_all(parse_term('[1]', SIG), bubble_rules(), SIG, max_steps=0)


def test_trace_is_deterministic():
    subject = parse_term('[5, 1, 4, 2, 3]', SIG)
    first = replace_all(subject, bubble_rules(), SIG, trace=True)
    second = replace_all(subject, bubble_rules(), SIG, trace=True)
    assert first.trace == second.trace
    assert len(first.trace) == first.steps


def test_engines_agree_on_traces():
    subject = parse_term('[5, 1, 4, 2, 3]', SIG)
    traces = {e: replace_all(subject, bubble_rules(), SIG, trace=True, engine=e).trace for e in ENGINES}
    assert traces['net'] == traces['one2one'] == traces['codegen']


def test_rewriting_recanonicalizes():
    sig = parse_signature_file('op Plus variadic:2 associative commutative one_identity\nop g fixed:1')
    rules = [parse_rule('g(x_) -> Plus(x_, c)', sig)]
    result = replace_all(parse_term('Plus(b, g(Plus(a, d)))', sig), rules, sig).result
    assert result == parse_term('Plus(a, b, c, d)', sig)


def test_builder_replacement():
    sig = parse_signature_file('op f fixed:2')
    rule = ReplacementRule(parse_pattern('f(x_, y_)', sig), lambda s: Integer(s['x'].value + s['y'].value))
    assert replace_all(parse_term('f(2, 3)', sig), [rule], sig).result == Integer(5)


def test_template_variables_must_be_bound():
    with pytest.raises(TermweaveError):
        parse_rule('[x_] -> [y_]', SIG)


def test_match_all_positions():
    subject = parse_term('[1, 2, 3, 1, 1, 2]', SIG)
    pattern = parse_pattern('[___, x__, ___] ; where sum(x) == 5', SIG)
    got = [(pos, str(s)) for pos, s in match_all_positions(subject, pattern, SIG)]
    assert got == [((), '{x -> (2, 3)}'), ((), '{x -> (3, 1, 1)}')]
    assert list(match_all_positions(subject, parse_pattern('[1, 2, 3, 1, 1, 2]', SIG), SIG)) == [((), Substitution())]
    assert list(match_all_positions(subject, parse_pattern('f(x_)', SIG), SIG)) == []


def test_match_all_positions_preorder():
    subject = parse_term('[[1], [2, [3]]]', SIG)
    got = [(pos, str(s)) for pos, s in match_all_positions(subject, parse_pattern('[x_]', SIG), SIG)]
    assert got == [((0,), '{x -> 1}'), ((1, 1), '{x -> 3}')]
