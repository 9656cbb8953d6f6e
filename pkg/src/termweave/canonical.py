"""Canonical form of terms modulo associativity, commutativity and one-identity."""
from __future__ import annotations

from .signature import SignatureTable
from .terms import Compound, Term, Wildcard, is_sequence_wildcard, strip_defaults

__all__ = ['make_compound', 'canonicalize', 'term_equal_aci', 'commutative_sort_key']


def commutative_sort_key(term: Term):
    # ground arguments first, then the remaining ones, each by the total order
    return (not term.ground, term._key)


def make_compound(head: str, args, sig: SignatureTable) -> Term:
    """Build ``head(*args)`` in canonical form, assuming each argument is already canonical."""
    op = sig[head]
    args = list(args)
    if op.associative:
        flat = []
        for a in args:
            if isinstance(a, Compound) and a.head == head:
                flat.extend(a.args)
            else:
                flat.append(a)
        args = flat
    if op.one_identity and len(args) == 1 and not is_sequence_wildcard(args[0]):
        return args[0]
    if op.commutative:
        args.sort(key=commutative_sort_key)
    return Compound(head, args)


def canonicalize(term: Term, sig: SignatureTable) -> Term:
    """Flatten associative heads, sort commutative arguments and collapse unary one-identity heads.

    >>> from termweave import Symbol, parse_signature_file
    >>> sig = parse_signature_file('op Plus variadic:2 associative commutative')
    >>> print(canonicalize(Compound('Plus', [Symbol('b'), Compound('Plus', [Symbol('c'), Symbol('a')])]), sig))
    Plus(a, b, c)
    """
    if isinstance(term, Compound):
        return make_compound(term.head, (canonicalize(a, sig) for a in term.args), sig)
    if isinstance(term, Wildcard) and term.default is not None:
        default = canonicalize(term.default, sig)
        if default is not term.default:
            return Wildcard(term.name, term.kind, term.symbol_class, default)
    return term


def term_equal_aci(t: Term, s: Term, sig: SignatureTable) -> bool:
    """Equality modulo ACI. Wildcard defaults are ignored."""
    return canonicalize(strip_defaults(t), sig) == canonicalize(strip_defaults(s), sig)
