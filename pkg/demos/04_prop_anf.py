"""Algebraic normal form of propositional formulas.

Ten rules turn Not/Or/Implies/Iff into a XOR of conjunctions. And and Xor are
associative-commutative, so e.g. ``Xor(x_, x_, y_:F) -> y_`` cancels any duplicated pair.
"""
import random

from termweave import parse_term, replace_all
from termweave.prop import ANF_RULE_TEXTS, anf_rules, generate_formula, prop_signature, truth_table

sig = prop_signature()
rules = anf_rules(sig)
for i, text in enumerate(ANF_RULE_TEXTS):
    print(f'rule {i}: {text}')

print()
for text in ('Or(a, b)', 'Implies(a, b)', 'Iff(a, Not(b))', 'And(Or(a, b), Not(a))', 'Or(a, Not(a))'):
    result = replace_all(parse_term(text, sig), rules, sig).result
    same = truth_table(result) == truth_table(parse_term(text, sig))
    print(f'{text:<24} => {result}   (truth tables agree: {same})')

# Formulas grown from T or F by running simplifications backwards normalize back to the seed.
rng = random.Random(4)
print()
for _ in range(3):
    formula = generate_formula(rng, sig, depth=6)
    report = replace_all(formula, rules, sig, max_steps=100_000)
    print(f'{len(str(formula)):>4} chars, {report.steps:>4} steps => {report.result}')
