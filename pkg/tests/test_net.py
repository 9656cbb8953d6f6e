import random
from collections import Counter

from termweave import (DiscriminationNet, MatchStats, SignatureTable, match, parse_pattern, parse_signature_file,
                       parse_term)
from termweave.net import CLOSE, detokenize, flatten, open_token, tokenize

from generators import max_width, random_pattern, random_signature, random_subject

LIST_SIG = SignatureTable()
LIST_PATTERNS = ('[1]', '[y_, 0]', '[1, x___]')


def list_net():
    net = DiscriminationNet(LIST_SIG)
    ids = [net.add(parse_term(t, LIST_SIG)) for t in LIST_PATTERNS]
    return net, ids


def net_matches(net, text, sig=LIST_SIG):
    return sorted((pid, str(s)) for pid, s in net.match(parse_term(text, sig)))


def test_list_net_structure():
    net, ids = list_net()
    assert ids == [0, 1, 2]
    assert len(net.states) == 9
    assert sum(len(s.finals) for s in net.states) == 3
    # one shared root transition on the list opening, then a shared "1" branch
    assert list(net.root.exact) == [open_token('List')]


def test_list_net_matches():
    net, _ = list_net()
    assert net_matches(net, '[1, 0]') == [(1, '{y -> 1}'), (2, '{x -> (0)}')]
    assert (1, '{y -> [2, 1]}') in net_matches(net, '[[2, 1], 0]')
    assert net_matches(net, '[2]') == []
    assert net_matches(net, '[1]') == [(0, '{}'), (2, '{x -> ()}')]


def test_add_is_idempotent():
    net, _ = list_net()
    before = len(net.states)
    assert net.add(parse_term('[y_, 0]', LIST_SIG)) == 1
    assert len(net.states) == before
    assert len(net) == 3


def test_prefix_sharing_state_bound():
    sig = parse_signature_file('op f fixed:4\nop g fixed:2')
    net = DiscriminationNet(sig)
    tokens_per_pattern = 0
    for i in range(200):
        p = parse_term(f'f(g(a, b), c, x_, s{i})', sig)
        tokens_per_pattern = len(tokenize(p))
        net.add(p)
    assert len(net.states) < 200 * tokens_per_pattern
    # only the trailing symbol and the closing token are private to each pattern
    assert len(net.states) == 1 + (tokens_per_pattern - 2) + 200 * 2


def test_tokenize_round_trip():
    rng = random.Random(2)
    for _ in range(300):
        sig = random_signature(rng)
        t = random_subject(rng, sig)
        tokens = tokenize(t)
        assert detokenize(tokens) == t
        if tokens[0] != t:
            assert tokens[-1] is CLOSE


def test_flatten_is_cached_and_composed():
    sig = SignatureTable()
    t = parse_term('[1, [2, 3], a]', sig)
    assert flatten(t) is flatten(t)
    assert len(flatten(t).tokens) == len(tokenize(t))


def test_first_match_is_lowest_pattern_id():
    net, _ = list_net()
    pid, sigma = net.first_match(parse_term('[1, 0]', LIST_SIG))
    assert (pid, str(sigma)) == (1, '{y -> 1}')
    assert net.first_match(parse_term('[2]', LIST_SIG)) is None


def test_constraints_at_final_states():
    sig = parse_signature_file('op f fixed:2')
    net = DiscriminationNet(sig)
    small = net.add(parse_pattern('f(x_, y_) ; where x < 5', sig))
    big = net.add(parse_pattern('f(x_, y_) ; where x >= 5', sig))
    assert net_matches(net, 'f(3, a)', sig) == [(small, '{x -> 3, y -> a}')]
    assert net_matches(net, 'f(7, a)', sig) == [(big, '{x -> 7, y -> a}')]


COMM_SIG = parse_signature_file("""
op Plus variadic:2 associative commutative one_identity
op fc variadic:0 commutative
op g fixed:1
""")


def test_commutative_many_to_one():
    net = DiscriminationNet(COMM_SIG)
    p = net.add(parse_term('Plus(x_, y_)', COMM_SIG))
    assert net_matches(net, 'Plus(a, b)', COMM_SIG) == [(p, '{x -> a, y -> b}'), (p, '{x -> b, y -> a}')]


def test_commutative_repeated_arguments_unique():
    net = DiscriminationNet(COMM_SIG)
    p = net.add(parse_term('Plus(x_, x_)', COMM_SIG))
    assert net_matches(net, 'Plus(a, a)', COMM_SIG) == [(p, '{x -> a}')]


def test_commutative_unsaturated_subpatterns():
    net = DiscriminationNet(COMM_SIG)
    net.add(parse_term('fc(g(x_), g(y_), z___)', COMM_SIG))
    assert net_matches(net, 'fc(g(a), b, c)', COMM_SIG) == []


def test_commutative_nested_group():
    net = DiscriminationNet(COMM_SIG)
    p0 = net.add(parse_term('fc(g(x_), y__)', COMM_SIG))
    p1 = net.add(parse_term('fc(g(a), g(x_))', COMM_SIG))
    got = net_matches(net, 'fc(g(a), g(b))', COMM_SIG)
    assert got == sorted([(p0, '{x -> a, y -> (g(b))}'), (p0, '{x -> b, y -> (g(a))}'), (p1, '{x -> b}')])


def test_net_is_cheaper_on_overlapping_patterns():
    sig = parse_signature_file('op f fixed:3\nop g fixed:2')
    patterns = [parse_term(f'f(g(a, b), x_, s{i})', sig) for i in range(50)]
    net = DiscriminationNet(sig)
    for p in patterns:
        net.add(p)
    subject = parse_term('f(g(a, b), c, s7)', sig)
    net_stats, one_stats = MatchStats(), MatchStats()
    assert len(list(net.match(subject, net_stats))) == 1
    assert sum(len(list(match(subject, p, sig, one_stats))) for p in patterns) == 1
    assert net_stats.comparisons < one_stats.comparisons


def random_pattern_set(rng, max_patterns=30):
    sig = random_signature(rng)
    subjects = [random_subject(rng, sig) for _ in range(3)]
    patterns = []
    target = rng.randint(1, max_patterns)
    while len(patterns) < target:
        p = random_pattern(rng, sig, rng.choice(subjects))
        if max_width(p) <= 5:
            patterns.append(p)
    return sig, patterns, subjects


def one_to_one_union(patterns, ids, subject, sig):
    return Counter((ids[i], sigma) for i, p in enumerate(patterns) for sigma in match(subject, p, sig))


def test_net_equals_union_of_one_to_one():
    bad = []
    for seed in range(500):
        rng = random.Random(seed)
        sig, patterns, subjects = random_pattern_set(rng)
        net = DiscriminationNet(sig)
        ids = [net.add(p) for p in patterns]
        for subject in subjects:
            got = Counter(net.match(subject))
            # a re-added pattern shares its id, so compare against the de-duplicated union
            expected = Counter(set(one_to_one_union(patterns, ids, subject, sig)))
            if got != expected:
                bad.append((seed, str(subject)))
    assert not bad, bad[:5]
