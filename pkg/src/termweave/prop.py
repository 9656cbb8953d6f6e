"""Propositional formulas and their algebraic normal form (ANF).

``And`` and ``Xor`` are associative-commutative; ``T`` and ``F`` are the constants.
:data:`ANF_RULES` rewrites any formula over ``Not``/``Or``/``Implies``/``Iff`` into a
XOR of conjunctions, which is unique for each boolean function. The generator builds
formulas by running simplifications backwards from a constant, so their normal form is
known in advance.
"""
from __future__ import annotations

import random
from itertools import product
from typing import Dict, List

from .rewrite import ReplacementRule, parse_rule
from .signature import SignatureTable, parse_signature_file
from .terms import Compound, Symbol, Term

__all__ = ['PROP_SIGNATURE_TEXT', 'ANF_RULE_TEXTS', 'prop_signature', 'anf_rules', 'evaluate',
           'truth_table', 'is_anf', 'generate_formula', 'random_formula', 'ATOMS', 'TRUE', 'FALSE']

PROP_SIGNATURE_TEXT = """\
op And variadic:2 associative commutative one_identity
op Xor variadic:2 associative commutative one_identity
op Not fixed:1
op Or fixed:2
op Implies fixed:2
op Iff fixed:2
"""

ANF_RULE_TEXTS = (
    'Not(x_) -> Xor(x_, T)',
    'Or(x_, y_) -> Xor(And(x_, y_), x_, y_)',
    'Implies(x_, y_) -> Or(Not(x_), y_)',
    'Iff(x_, y_) -> Xor(x_, y_, T)',
    'And(x_, Xor(y_, z_)) -> Xor(And(x_, y_), And(x_, z_))',
    'Xor(F, x_) -> x_',
    'And(T, x_) -> x_',
    'And(F, x_) -> F',
    'Xor(x_, x_, y_:F) -> y_',
    'And(x_, x_, y_:T) -> And(x_, y_)',
)

TRUE = Symbol('T')
FALSE = Symbol('F')
ATOMS = tuple(Symbol(name) for name in 'abcd')


def prop_signature() -> SignatureTable:
    return parse_signature_file(PROP_SIGNATURE_TEXT)


def anf_rules(sig: SignatureTable) -> List[ReplacementRule]:
    return [parse_rule(text, sig) for text in ANF_RULE_TEXTS]


def evaluate(term: Term, env: Dict[str, bool]) -> bool:
    if isinstance(term, Symbol):
        if term == TRUE:
            return True
        if term == FALSE:
            return False
        return env[term.name]
    values = [evaluate(a, env) for a in term.args]
    head = term.head
    if head == 'And':
        return all(values)
    if head == 'Xor':
        return sum(values) % 2 == 1
    if head == 'Not':
        return not values[0]
    if head == 'Or':
        return values[0] or values[1]
    if head == 'Implies':
        return (not values[0]) or values[1]
    if head == 'Iff':
        return values[0] == values[1]
    raise ValueError(f'not a propositional operator: {head}')


def truth_table(term: Term, atoms=ATOMS) -> tuple:
    """Values of ``term`` under all assignments to ``atoms``."""
    names = [a.name for a in atoms]
    return tuple(evaluate(term, dict(zip(names, bits))) for bits in product((False, True), repeat=len(names)))


def is_anf(term: Term) -> bool:
    """Only And, Xor, the constants and atoms occur."""
    if isinstance(term, Compound):
        return term.head in ('And', 'Xor') and all(is_anf(a) for a in term.args)
    return isinstance(term, Symbol)


def generate_formula(rng: random.Random, sig: SignatureTable, depth: int = 12, atoms=ATOMS) -> Term:
    """Expand ``T`` or ``F`` by ``depth`` random backward simplification steps.

    Each step picks a random position and replaces the subformula ``t`` there by an
    equivalent, larger formula, so the result keeps the truth value of the seed.
    """
    from .canonical import canonicalize
    term = rng.choice((TRUE, FALSE))
    for _ in range(depth):
        positions = _positions(term)
        position = rng.choice(positions)
        old = _at(term, position)
        term = _replace(term, position, _expand(rng, old, atoms))
    return canonicalize(term, sig)


def random_formula(rng: random.Random, sig: SignatureTable, depth: int = 4, atoms=ATOMS) -> Term:
    """A random formula over all connectives (not necessarily a tautology)."""
    from .canonical import canonicalize
    return canonicalize(_random_tree(rng, depth, atoms), sig)


def _random_tree(rng, depth, atoms):
    if depth == 0 or rng.random() < 0.25:
        return _random_atomic(rng, atoms) if rng.random() < 0.2 else rng.choice(atoms)
    head = rng.choice(('And', 'Xor', 'Not', 'Or', 'Implies', 'Iff'))
    n = 1 if head == 'Not' else (2 if head in ('Or', 'Implies', 'Iff') else rng.randint(2, 3))
    return Compound(head, [_random_tree(rng, depth - 1, atoms) for _ in range(n)])


def _random_atomic(rng, atoms):
    return rng.choice(atoms + (TRUE, FALSE))


def _expand(rng, t, atoms):
    u = _random_atomic(rng, atoms)
    choices = [
        lambda: Compound('Not', [Compound('Not', [t])]),
        lambda: Compound('And', [t, TRUE]),
        lambda: Compound('Xor', [t, FALSE]),
        lambda: Compound('Or', [t, t]),
        lambda: Compound('Or', [t, FALSE]),
        lambda: Compound('Iff', [t, TRUE]),
        lambda: Compound('Implies', [TRUE, t]),
        lambda: Compound('Xor', [t, u, u]),
        lambda: Compound('And', [t, Compound('Or', [u, Compound('Not', [u])])]),
    ]
    if t == FALSE:
        choices += [
            lambda: Compound('And', [u, FALSE]),
            lambda: Compound('And', [u, Compound('Not', [u])]),
            lambda: Compound('Xor', [u, u]),
        ]
    if t == TRUE:
        choices += [
            lambda: Compound('Or', [u, TRUE]),
            lambda: Compound('Implies', [u, u]),
            lambda: Compound('Or', [u, Compound('Not', [u])]),
            lambda: Compound('Iff', [u, u]),
        ]
    return rng.choice(choices)()


def _positions(term, position=()):
    out = [position]
    if isinstance(term, Compound):
        for i, a in enumerate(term.args):
            out.extend(_positions(a, position + (i,)))
    return out


def _at(term, position):
    for i in position:
        term = term.args[i]
    return term


def _replace(term, position, new):
    if not position:
        return new
    args = list(term.args)
    args[position[0]] = _replace(args[position[0]], position[1:], new)
    return Compound(term.head, args)
