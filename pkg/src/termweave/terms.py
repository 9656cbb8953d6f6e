"""Immutable terms: symbols, integer literals, compound applications and wildcards.

Every term carries a precomputed sort key and hash. The sort key realizes the total
order used to sort the arguments of commutative operations::

    Integer < Symbol < Compound < Wildcard

Integers compare by value, symbols by name, compounds by ``(head, argument count,
arguments)`` and wildcards by ``(kind, name, symbol class)``.

>>> f = Compound('f', (Symbol('a'), Wildcard('x')))
>>> print(f)
f(a, x_)
>>> f.ground
False
"""
from __future__ import annotations

from typing import Iterator, Optional, Tuple

REGULAR = 'regular'
PLUS = 'plus'
STAR = 'star'

_KIND_RANK = {REGULAR: 0, PLUS: 1, STAR: 2}
_UNDERSCORES = {REGULAR: '_', PLUS: '__', STAR: '___'}

LIST_HEAD = 'List'

__all__ = [
    'Term', 'Symbol', 'Integer', 'Compound', 'Wildcard', 'REGULAR', 'PLUS', 'STAR', 'LIST_HEAD',
    'is_sequence_wildcard', 'variables', 'subterms', 'strip_defaults',
]


class Term:
    """Base class of all terms.

    Terms compare and hash structurally. ``<`` follows the canonical total order.
    """

    __slots__ = ('_key', '_hash', 'ground')

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Term):
            return NotImplemented
        return self._hash == other._hash and self._key == other._key

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self._key < other._key

    def __le__(self, other):
        return self._key <= other._key

    def __gt__(self, other):
        return self._key > other._key

    def __ge__(self, other):
        return self._key >= other._key

    @property
    def key(self):
        """The sort key of the canonical term order."""
        return self._key

    def __repr__(self):
        return f'{type(self).__name__}({self})'


class Symbol(Term):
    __slots__ = ('name',)

    def __init__(self, name: str):
        self.name = name
        self._key = (1, name)
        self._hash = hash(self._key)
        self.ground = True

    def __str__(self):
        return self.name

    def __reduce__(self):
        return (Symbol, (self.name,))


class Integer(Term):
    """Integer literal; one member of an infinite family of constants."""

    __slots__ = ('value',)

    def __init__(self, value: int):
        self.value = int(value)
        self._key = (0, self.value)
        self._hash = hash(self._key)
        self.ground = True

    def __str__(self):
        return str(self.value)

    def __reduce__(self):
        return (Integer, (self.value,))


class Compound(Term):
    """Application of the operation ``head`` to an ordered tuple of arguments.

    The constructor performs no canonicalization; use
    :func:`termweave.canonical.make_compound` or :func:`termweave.canonical.canonicalize`
    to obtain canonical terms.
    """

    __slots__ = ('head', 'args')

    def __init__(self, head: str, args=()):
        args = tuple(args)
        self.head = head
        self.args = args
        self._key = (2, head, len(args), tuple(a._key for a in args))
        self._hash = hash((2, head, tuple(a._hash for a in args)))
        self.ground = all(a.ground for a in args)

    def __str__(self):
        inner = ', '.join(str(a) for a in self.args)
        if self.head == LIST_HEAD:
            return f'[{inner}]'
        return f'{self.head}({inner})'

    def __reduce__(self):
        return (Compound, (self.head, self.args))


class Wildcard(Term):
    """A pattern variable.

    Args:
        name: Variable name, or ``None`` for an anonymous wildcard.
        kind: ``REGULAR`` (one term), ``PLUS`` (one or more) or ``STAR`` (zero or more).
        symbol_class: Restricts a regular wildcard to the members of a declared class.
        default: Ground term bound when an optional regular wildcard matches nothing.
    """

    __slots__ = ('name', 'kind', 'symbol_class', 'default')

    def __init__(self, name: Optional[str] = None, kind: str = REGULAR,
                 symbol_class: Optional[str] = None, default: Optional[Term] = None):
        if kind not in _KIND_RANK:
            raise ValueError(f'unknown wildcard kind {kind!r}')
        if kind != REGULAR and (symbol_class is not None or default is not None):
            raise ValueError('symbol classes and defaults are only allowed on regular wildcards')
        if default is not None and not default.ground:
            raise ValueError('wildcard defaults must be ground')
        self.name = name
        self.kind = kind
        self.symbol_class = symbol_class
        self.default = default
        self._key = (3, _KIND_RANK[kind], name or '', symbol_class or '',
                     default._key if default is not None else ())
        self._hash = hash(self._key)
        self.ground = False

    @property
    def is_sequence(self):
        return self.kind != REGULAR

    @property
    def optional(self):
        return self.default is not None

    def __str__(self):
        text = (self.name or '') + _UNDERSCORES[self.kind] + (self.symbol_class or '')
        if self.default is not None:
            text += f':{self.default}'
        return text

    def __reduce__(self):
        return (Wildcard, (self.name, self.kind, self.symbol_class, self.default))


def is_sequence_wildcard(term: Term) -> bool:
    return isinstance(term, Wildcard) and term.kind != REGULAR


def subterms(term: Term, position: Tuple[int, ...] = ()) -> Iterator[Tuple[Tuple[int, ...], Term]]:
    """Yield ``(position, subterm)`` pairs in preorder."""
    stack = [(position, term)]
    while stack:
        pos, t = stack.pop()
        yield pos, t
        if isinstance(t, Compound):
            for i in range(len(t.args) - 1, -1, -1):
                stack.append((pos + (i,), t.args[i]))


def variables(term: Term) -> set:
    """Names of the named wildcards occurring in ``term``."""
    return {t.name for _, t in subterms(term) if isinstance(t, Wildcard) and t.name is not None}


def strip_defaults(term: Term) -> Term:
    """Remove default values from all wildcards (defaults are opaque annotations)."""
    if isinstance(term, Wildcard):
        if term.default is None:
            return term
        return Wildcard(term.name, term.kind, term.symbol_class)
    if isinstance(term, Compound) and not term.ground:
        return Compound(term.head, (strip_defaults(a) for a in term.args))
    return term
