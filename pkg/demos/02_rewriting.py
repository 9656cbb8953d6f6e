"""Rewriting with replacement rules: bubble sort in one rule, and subsequence search."""
from termweave import (Compound, Constraint, Pattern, ReplacementRule, SignatureTable, Wildcard,
                       match_all_positions, parse_pattern, parse_rule, parse_term, replace_all)
from termweave.constraints import to_python
from termweave.terms import PLUS, STAR

sig = SignatureTable(strict=False)

# The rule text form: swap an adjacent pair that is out of order.
rule = parse_rule('[h___, a_, b_, t___] -> [h___, b_, a_, t___] ; where a > b', sig)
report = replace_all(parse_term('[1, 4, 3, 2]', sig), [rule], sig, trace=True)
for position, index, sigma in report.trace:
    print(f'step at {list(position)} with rule {index}: {sigma}')
print('sorted:', report.result, f'({report.steps} steps)')

# The same rule built from Python callables: a function constraint and a builder.
a_lt_b = Constraint.from_function(lambda a, b: a < b)
pattern = Pattern(Compound('List', [Wildcard('h', STAR), Wildcard('b'), Wildcard('a'), Wildcard('t', STAR)]), [a_lt_b])
builder = ReplacementRule(pattern, lambda s: Compound('List', [*s['h'], s['a'], s['b'], *s['t']]))
print('sorted again:', replace_all(parse_term('[9, 7, 8, 1]', sig), [builder], sig).result)

# All subsequences summing to 5: anonymous star wildcards on both sides.
pattern = parse_pattern('[___, x__, ___] ; where sum(x) == 5', sig)
subject = parse_term('[1, 2, 3, 1, 1, 2]', sig)
print([{k: to_python(v) for k, v in s.items()} for _, s in match_all_positions(subject, pattern, sig)])
