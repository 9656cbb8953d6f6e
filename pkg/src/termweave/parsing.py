"""Text syntax for terms.

Grammar::

    term      := INT | list | compound | wildcard | IDENT
    list      := '[' [term (',' term)*] ']'
    compound  := IDENT '(' [term (',' term)*] ')'
    wildcard  := [IDENT] ('_' | '__' | '___') [CLASS] [':' term]

``x_`` is a regular wildcard, ``x__`` a plus and ``x___`` a star wildcard. ``x_Scalar``
restricts ``x`` to the symbol class ``Scalar`` and ``x_:1`` makes it optional with
default ``1``. Bare underscores denote anonymous wildcards.
"""
from __future__ import annotations

import re

from .canonical import canonicalize
from .constraints import Constraint, Pattern
from .errors import ParseError, SignatureError
from .signature import SignatureTable
from .terms import LIST_HEAD, REGULAR, PLUS, STAR, Compound, Integer, Symbol, Term, Wildcard

__all__ = ['parse_term', 'parse_raw', 'validate', 'parse_pattern']

_TOKEN = re.compile(r'\s*(?:(?P<int>-?[0-9]+)|(?P<ident>[A-Za-z][A-Za-z0-9]*)|(?P<under>_+)'
                    r'|(?P<punct>[()\[\],:]))')
_KINDS = {1: REGULAR, 2: PLUS, 3: STAR}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message, pos=None):
        raise ParseError(message, self.pos if pos is None else pos)

    def peek(self):
        m = _TOKEN.match(self.text, self.pos)
        if m is None:
            if self.text[self.pos:].strip():
                self.error(f'unexpected character {self.text[self.pos:].lstrip()[0]!r}')
            return None, None, len(self.text)
        kind = m.lastgroup
        return kind, m.group(kind), m.start(kind)

    def take(self):
        m = _TOKEN.match(self.text, self.pos)
        if m is None:
            self.peek()
            self.error('unexpected end of input')
        self.pos = m.end()
        return m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)

    def expect(self, punct):
        kind, value, start = self.peek()
        if kind != 'punct' or value != punct:
            found = 'end of input' if kind is None else repr(value)
            self.error(f'expected {punct!r}, found {found}', start)
        self.take()

    def adjacent(self, kind):
        """Next token of ``kind`` only if it follows without whitespace."""
        m = _TOKEN.match(self.text, self.pos)
        if m is not None and m.lastgroup == kind and m.start(kind) == self.pos:
            return True
        return False

    def term(self) -> Term:
        kind, value, start = self.peek()
        if kind is None:
            self.error('unexpected end of input', start)
        if kind == 'int':
            self.take()
            return Integer(int(value))
        if kind == 'punct' and value == '[':
            self.take()
            return Compound(LIST_HEAD, self.arguments(']'))
        if kind == 'under':
            return self.wildcard(None)
        if kind == 'ident':
            self.take()
            if self.adjacent('under'):
                return self.wildcard(value)
            nkind, nvalue, _ = self.peek()
            if nkind == 'punct' and nvalue == '(':
                self.take()
                return Compound(value, self.arguments(')'))
            return Symbol(value)
        self.error(f'unexpected {value!r}', start)

    def wildcard(self, name):
        _, underscores, start = self.take()
        if len(underscores) > 3:
            self.error('too many underscores in wildcard', start)
        kind = _KINDS[len(underscores)]
        symbol_class = None
        default = None
        if kind == REGULAR and self.adjacent('ident'):
            _, symbol_class, _ = self.take()
        nkind, nvalue, _ = self.peek()
        if nkind == 'punct' and nvalue == ':':
            if kind != REGULAR:
                self.error('only regular wildcards can have defaults', start)
            self.take()
            default = self.term()
            if not default.ground:
                self.error('wildcard defaults must be ground', start)
        return Wildcard(name, kind, symbol_class, default)

    def arguments(self, closing):
        args = []
        kind, value, _ = self.peek()
        if kind == 'punct' and value == closing:
            self.take()
            return args
        while True:
            args.append(self.term())
            kind, value, start = self.peek()
            if kind == 'punct' and value == ',':
                self.take()
                continue
            if kind == 'punct' and value == closing:
                self.take()
                return args
            found = 'end of input' if kind is None else repr(value)
            self.error(f'expected {closing!r} or \',\', found {found}', start)


def parse_raw(text: str) -> Term:
    """Parse without validation or canonicalization."""
    parser = _Parser(text)
    term = parser.term()
    kind, value, start = parser.peek()
    if kind is not None:
        parser.error(f'unexpected trailing {value!r}', start)
    return term


def validate(term: Term, sig: SignatureTable) -> None:
    """Check heads, fixed arities, symbol classes and sequence wildcard placement."""
    if isinstance(term, Wildcard) and term.is_sequence:
        raise ParseError(f'misplaced sequence wildcard {term}: not an argument of a variadic operation')
    _validate(term, sig)


def _validate(term, sig):
    if isinstance(term, Wildcard):
        if term.symbol_class is not None:
            sig.class_members(term.symbol_class)
        if term.default is not None:
            _validate(term.default, sig)
        return
    if not isinstance(term, Compound):
        return
    op = sig[term.head]
    n = len(term.args)
    if not op.variadic:
        if n != op.arity:
            raise SignatureError(f'{term.head} expects {op.arity} arguments, got {n}')
        for a in term.args:
            if isinstance(a, Wildcard) and a.is_sequence:
                raise ParseError(f'misplaced sequence wildcard {a}: {term.head} has fixed arity')
    elif term.ground and n < op.arity and not (op.one_identity and n == 1):
        raise SignatureError(f'{term.head} expects at least {op.arity} arguments, got {n}')
    for a in term.args:
        _validate(a, sig)


def parse_term(text: str, sig: SignatureTable) -> Term:
    """Parse, validate and canonicalize a term.

    >>> from termweave import SignatureTable
    >>> print(parse_term('f(a, x__)', SignatureTable(strict=False)))
    f(a, x__)
    """
    term = parse_raw(text)
    validate(term, sig)
    return canonicalize(term, sig)


def parse_pattern(text: str, sig: SignatureTable) -> Pattern:
    """Parse a pattern line ``TERM [; where CONSTRAINT [&& CONSTRAINT ...]]``.

    >>> from termweave import SignatureTable
    >>> print(parse_pattern('f(x_, y_) ; where x < y', SignatureTable(strict=False)))
    f(x_, y_) ; where x < y
    """
    term_text, sep, rest = text.partition(';')
    term = parse_term(term_text, sig)
    constraints = []
    if sep:
        rest = rest.strip()
        if not rest.startswith('where'):
            raise ParseError("expected 'where' after ';'", len(term_text) + 1)
        for part in rest[len('where'):].split('&&'):
            constraints.append(Constraint.parse(part))
    return Pattern(term, constraints)
