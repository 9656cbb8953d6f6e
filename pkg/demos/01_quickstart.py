"""Quickstart: terms, signatures and one-to-one matching.

Run with ``python demos/01_quickstart.py``.
"""
from termweave import match, parse_pattern, parse_signature_file, parse_term, substitute

# A signature says which heads exist and what algebraic laws they obey.
sig = parse_signature_file("""
op f variadic:0
op fc variadic:0 commutative
op Plus variadic:2 associative commutative one_identity
op Times variadic:2 associative commutative one_identity
""")


def show(subject_text, pattern_text):
    subject = parse_term(subject_text, sig)
    pattern = parse_pattern(pattern_text, sig)
    found = [str(s) for s in match(subject, pattern, sig)]
    print(f'{pattern_text:<32} vs {subject_text:<22} -> {", ".join(found) or "no match"}')


print('== canonical forms ==')
for text in ('Plus(b, Plus(c, a))', 'Times(a)', 'fc(b, a, b)'):
    print(f'{text:<22} => {parse_term(text, sig)}')

print('\n== syntactic and sequence variables ==')
show('f(a)', 'f(x_)')
show('f(a, b)', 'f(x_)')
show('f(a, b)', 'f(x__)')
show('f(a, b, c)', 'f(x___, y__)')

print('\n== optional variables ==')
show('a', 'Times(x_:1, y_)')
show('Times(a, b)', 'Times(x_:1, y_)')

print('\n== commutative and associative heads ==')
show('Plus(1, a, b)', 'Plus(1, x_)')
show('Plus(a, b, c)', 'Plus(a, x_, y_)')
show('Plus(a, a)', 'Plus(x_, x_)')
show('fc(a, b, b, b)', 'fc(x___, y__, y__)')

print('\n== constraints ==')
show('f(3, 4)', 'f(x_, y_) ; where x < y')
show('f(1, 2, 3, 1, 1, 2)', 'f(___, x__, ___) ; where sum(x) == 5')

# Applying a match substitution gives back the subject (modulo the laws above).
subject = parse_term('Plus(a, b, c)', sig)
pattern = parse_term('Plus(a, x_, y_)', sig)
sigma = next(iter(match(subject, pattern, sig)))
print(f'\nsubstitute({sigma}, {pattern}) = {substitute(sigma, pattern, sig)}')
