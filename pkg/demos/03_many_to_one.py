"""Many-to-one matching: one discrimination net for a whole pattern set, and code generated from it.

The net shares common pattern prefixes, so a subject is compared against each shared
token once instead of once per pattern. The comparison counters below show the effect on
a family of patterns that differ only in their last argument and a constraint.
"""
import tempfile
from pathlib import Path

from termweave import (DiscriminationNet, MatchStats, SignatureTable, generate_matcher_source, load_matcher, match,
                       parse_signature_file, parse_term)
from termweave.bench import overlap_workload

sig = SignatureTable(strict=False)
net = DiscriminationNet(sig)
for text in ('[1]', '[y_, 0]', '[1, x___]'):
    print(f'pattern {net.add(parse_term(text, sig))}: {text}')
print(f'{len(net.states)} states')
for subject in ('[1, 0]', '[[2, 1], 0]', '[2]'):
    found = [(pid, str(s)) for pid, s in net.match(parse_term(subject, sig))]
    print(f'  {subject:<12} -> {found}')

# Commutative subpatterns are resolved through bipartite matchings; equal subjects
# never produce the same substitution twice.
plus_sig = parse_signature_file('op Plus variadic:2 associative commutative one_identity')
plus_net = DiscriminationNet(plus_sig)
plus_net.add(parse_term('Plus(x_, x_)', plus_sig))
plus_net.add(parse_term('Plus(x_, y_)', plus_sig))
print('Plus(a, a) ->', [(pid, str(s)) for pid, s in plus_net.match(parse_term('Plus(a, a)', plus_sig))])

# Prefix sharing in numbers.
overlap_sig, patterns, subjects = overlap_workload(20, seed=1)
overlap_net = DiscriminationNet(overlap_sig)
for p in patterns:
    overlap_net.add(p)
one, many = MatchStats(), MatchStats()
for subject in subjects:
    for p in patterns:
        list(match(subject, p, overlap_sig, one))
    list(overlap_net.match(subject, many))
print(f'{len(patterns)} overlapping patterns, {len(subjects)} subjects: '
      f'one-to-one {one.comparisons} comparisons, net {many.comparisons}')

# Code generation: the net becomes a Python module with a match() function.
spec = generate_matcher_source(net)
with tempfile.TemporaryDirectory() as out:
    spec.write(out)
    print('generated files:', sorted(p.name for p in Path(out).iterdir()),
          f'({len(spec.source.splitlines())} lines of source)')
generated = load_matcher(spec.source)
print('generated matcher on [1, 0]:', [(pid, str(s)) for pid, s in generated.match(parse_term('[1, 0]', sig))])
