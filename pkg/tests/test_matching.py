import random
from collections import Counter

import pytest

from termweave import (Integer, TermweaveError, MatchStats, Pattern, SequenceVariable, Substitution, Symbol, distribute_sequence_vars,
                       match, match_commutative, match_sequence, parse_pattern, parse_signature_file, parse_term,
                       substitute)
from termweave.terms import PLUS, STAR, Wildcard

from generators import has_anonymous_or_optional, random_case
from oracle import oracle_matches

SIG = parse_signature_file("""
op f variadic:0
op fc variadic:0 commutative
op fx fixed:1
op Plus variadic:2 associative commutative one_identity
op Times variadic:2 associative commutative one_identity
op F variadic:0 associative
class small 1 2
""")

a, b, c = Symbol('a'), Symbol('b'), Symbol('c')


def matches(subject, pattern, sig=SIG):
    return [str(s) for s in match(parse_term(subject, sig), parse_pattern(pattern, sig), sig)]


def test_single_variable():
    assert matches('f(a)', 'f(x_)') == ['{x -> a}']


def test_sequence_variable_vs_fixed_arity():
    assert matches('f(a, b)', 'f(x__)') == ['{x -> (a, b)}']
    assert matches('fx(a)', 'fx(x_)') == ['{x -> a}']
    assert matches('f(a, b)', 'f(x_)') == []


def test_optional_variable():
    assert matches('Times(a, b)', 'Times(x_:1, y_)')[0] == '{x -> a, y -> b}'
    assert matches('a', 'Times(x_:1, y_)') == ['{x -> 1, y -> a}']


def test_optional_default_only_when_arguments_run_out():
    # two subject arguments fill both pattern slots, so the default is never used
    assert matches('Times(a, b)', 'Times(x_:1, y_)') == ['{x -> a, y -> b}', '{x -> b, y -> a}']
    assert matches('f(a)', 'f(x_:1, y_)') == ['{x -> 1, y -> a}']


def test_match_sequence_associative_wraps():
    op = SIG['F']
    got = list(match_sequence([a, b, c], [a, Wildcard('x', PLUS)], Substitution(), op, SIG))
    assert [str(s) for s in got] == ['{x -> (b, c)}']
    got = list(match_sequence([Integer(1), a, b], [Integer(1), Wildcard('x')], Substitution(),
                              SIG['Plus'], SIG))
    assert [str(s) for s in got] == ['{x -> Plus(a, b)}']
    got = list(match_sequence([], [Wildcard('x', STAR)], Substitution(), SIG['f'], SIG))
    assert [str(s) for s in got] == ['{x -> ()}']


def test_regular_wildcard_under_associative_head():
    assert matches('Plus(1, a, b)', 'Plus(1, x_)') == ['{x -> Plus(a, b)}']
    assert sorted(matches('F(a, b, c)', 'F(a, x_)')) == ['{x -> F(b, c)}']


def test_commutative_examples():
    assert sorted(matches('Plus(a, b, c)', 'Plus(a, x_, y_)')) == ['{x -> b, y -> c}', '{x -> c, y -> b}']
    assert matches('Plus(a, b)', 'Plus(c, x___)') == []
    assert matches('fc(a, b, b, b)', 'fc(x___, y__, y__)') == ['{x -> (a, b), y -> (b)}']


def test_match_commutative_function():
    got = list(match_commutative([a, b, c], [a, Wildcard('x', PLUS)], Substitution(), SIG['fc'], SIG))
    assert [str(s) for s in got] == ['{x -> (b, c)}']


def test_distribute_examples():
    got = list(distribute_sequence_vars(Counter({a: 1, b: 3}),
                                        [SequenceVariable('x', 'star', 1), SequenceVariable('y', 'plus', 2)],
                                        Substitution()))
    assert [str(s) for s in got] == ['{x -> (a, b), y -> (b)}']
    assert [str(s) for s in distribute_sequence_vars(Counter(), [('x', 'star', 1)], Substitution())] == ['{x -> ()}']
    got = {str(s) for s in distribute_sequence_vars(Counter({a: 2}), [('x', 'star', 1), ('y', 'star', 1)],
                                                    Substitution())}
    assert got == {'{x -> (a, a), y -> ()}', '{x -> (a), y -> (a)}', '{x -> (), y -> (a, a)}'}


def test_symbol_class():
    assert matches('f(1, a)', 'f(x_small, y_)') == ['{x -> 1, y -> a}']
    assert matches('f(3, a)', 'f(x_small, y_)') == []


def test_constraints_filter():
    assert matches('f(1, 2, 3, 1, 1, 2)', 'f(___, x__, ___) ; where sum(x) == 5') == \
        ['{x -> (2, 3)}', '{x -> (3, 1, 1)}']
    assert matches('f(3, 4)', 'f(x_, y_) ; where x < y') == ['{x -> 3, y -> 4}']
    assert matches('f(4, 3)', 'f(x_, y_) ; where x < y') == []


def test_nonlinear_commutative_unique():
    assert matches('Plus(a, a)', 'Plus(x_, x_)') == ['{x -> a}']
    assert matches('Plus(a, a, b, b)', 'Plus(x_, x_, y_, y_)') == ['{x -> a, y -> b}', '{x -> b, y -> a}']


def test_subject_must_be_ground():
    with pytest.raises(TermweaveError):
        list(match(parse_term('f(x_)', SIG), Pattern(parse_term('f(y_)', SIG)), SIG))


def test_laziness_first_match_is_cheaper():
    subject = parse_term('fc(a, b, c, a, b, c, a)', SIG)
    pattern = parse_pattern('fc(x__, y__, z___)', SIG)
    first, full = MatchStats(), MatchStats()
    next(iter(match(subject, pattern, SIG, first)))
    total = sum(1 for _ in match(subject, pattern, SIG, full))
    assert total > 1
    assert first.comparisons <= full.comparisons


def test_oracle_equivalence_and_soundness():
    bad = []
    for seed in range(2000):
        rng = random.Random(seed)
        sig, subject, pattern = random_case(rng)
        got = list(match(subject, pattern, sig))
        if len(got) != len(set(got)) or set(got) != oracle_matches(subject, pattern, sig):
            bad.append((seed, str(subject), str(pattern)))
            continue
        if not has_anonymous_or_optional(pattern):
            for sigma in got:
                assert substitute(sigma, pattern, sig) == subject, (seed, str(sigma))
    assert not bad, bad[:5]
