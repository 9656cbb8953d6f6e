import importlib.util
import random

import pytest

from termweave import (CodegenError, Constraint, DiscriminationNet, MatchStats, Pattern, SignatureTable,
                       generate_matcher_source, load_matcher, parse_pattern, parse_signature_file, parse_term,
                       register_predicate)

from generators import max_width, random_pattern, random_signature, random_subject

SIG = SignatureTable()


def list_net():
    net = DiscriminationNet(SIG)
    for text in ('[1]', '[y_, 0]', '[1, x___]'):
        net.add(parse_term(text, SIG))
    return net


def results(matcher, text, sig=SIG):
    return sorted((pid, str(s)) for pid, s in matcher.match(parse_term(text, sig)))


def test_list_net_generated():
    spec = generate_matcher_source(list_net())
    module = load_matcher(spec.source)
    assert results(module, '[1, 0]') == [(1, '{y -> 1}'), (2, '{x -> (0)}')]
    assert spec.state_count == 9
    assert spec.entry_point == 'match'
    assert spec.units['manifest.tsv'] == '0\t[1]\n1\t[y_, 0]\n2\t[1, x___]\n'


def test_empty_net():
    module = load_matcher(generate_matcher_source(DiscriminationNet(SIG)).source)
    assert list(module.match(parse_term('[1, 2]', SIG))) == []
    assert module.first_match(parse_term('a', SIG)) is None


def test_regeneration_is_byte_identical():
    assert generate_matcher_source(list_net()).source == generate_matcher_source(list_net()).source


def test_written_module_imports_standalone(tmp_path):
    spec = generate_matcher_source(list_net())
    spec.write(tmp_path / 'out')
    assert sorted(p.name for p in (tmp_path / 'out').iterdir()) == ['manifest.tsv', 'matcher.py']
    loader = importlib.util.spec_from_file_location('list_matcher', tmp_path / 'out' / 'matcher.py')
    module = importlib.util.module_from_spec(loader)
    loader.loader.exec_module(module)
    assert results(module, '[[2, 1], 0]')[0] == (1, '{y -> [2, 1]}')


def test_constraints_and_predicates():
    sig = parse_signature_file('op f fixed:2')
    register_predicate('codegen_test_even', lambda x: x % 2 == 0)
    net = DiscriminationNet(sig)
    net.add(parse_pattern('f(x_, y_) ; where x < y', sig))
    net.add(Pattern(parse_term('f(x_, b)', sig), [Constraint.registered('codegen_test_even', ['x'])]))
    module = load_matcher(generate_matcher_source(net).source)
    assert results(module, 'f(1, 2)', sig) == [(0, '{x -> 1, y -> 2}')]
    assert results(module, 'f(4, b)', sig) == [(1, '{x -> 4}')]


def test_anonymous_function_constraint_is_rejected():
    sig = parse_signature_file('op f fixed:1')
    net = DiscriminationNet(sig)
    net.add(Pattern(parse_term('f(x_)', sig), [Constraint.from_function(lambda x: True)]))
    with pytest.raises(CodegenError):
        generate_matcher_source(net)


def test_commutative_delegation():
    sig = parse_signature_file('op Plus variadic:2 associative commutative one_identity\nop g fixed:1')
    net = DiscriminationNet(sig)
    net.add(parse_term('g(Plus(x_, x_))', sig))
    net.add(parse_term('g(Plus(x_, y__))', sig))
    module = load_matcher(generate_matcher_source(net).source)
    subject = parse_term('g(Plus(a, a))', sig)
    assert sorted(module.match(subject)) == sorted(net.match(subject))


def test_differential_against_net():
    for seed in range(400):
        rng = random.Random(seed)
        sig = random_signature(rng)
        subjects = [random_subject(rng, sig) for _ in range(3)]
        net = DiscriminationNet(sig)
        target = rng.randint(1, 12)
        for _ in range(4 * target):  # duplicates share an id, so allow a few extra draws
            p = random_pattern(rng, sig, rng.choice(subjects))
            if max_width(p) <= 5:
                net.add(p)
            if len(net) == target:
                break
        spec = generate_matcher_source(net)
        assert generate_matcher_source(net).source == spec.source
        module = load_matcher(spec.source)
        for subject in subjects:
            s1, s2 = MatchStats(), MatchStats()
            assert list(module.match(subject, s2)) == list(net.match(subject, s1)), seed
            assert s1.comparisons == s2.comparisons
            assert module.first_match(subject) == net.first_match(subject)
