"""Substitutions: finite maps from variable names to terms or term sequences."""
from __future__ import annotations

from collections.abc import Mapping
from typing import Optional, Tuple, Union

from .canonical import make_compound
from .errors import SubstitutionError
from .signature import SignatureTable
from .terms import Compound, Term, Wildcard

__all__ = ['Substitution', 'Binding', 'substitute', 'format_binding']

Binding = Union[Term, Tuple[Term, ...]]


def format_binding(value: Binding) -> str:
    if isinstance(value, tuple):
        return '(' + ', '.join(str(v) for v in value) + ')'
    return str(value)


def binding_key(value: Binding):
    if isinstance(value, tuple):
        return (1, tuple(v._key for v in value))
    return (0, value._key)


class Substitution(Mapping):
    """Immutable variable assignment.

    Single terms are bound by regular wildcards, tuples by sequence wildcards.

    >>> from termweave.terms import Symbol
    >>> s = Substitution({'x': Symbol('a')})
    >>> print(s.bind('y', (Symbol('b'), Symbol('c'))))
    {x -> a, y -> (b, c)}
    >>> s.bind('x', Symbol('b')) is None
    True
    """

    __slots__ = ('_data', '_hash')

    def __init__(self, data=None):
        self._data = dict(data) if data else {}
        self._hash = None

    def __getitem__(self, name):
        return self._data[name]

    def __iter__(self):
        return iter(self._data)

    def __len__(self):
        return len(self._data)

    def __contains__(self, name):
        return name in self._data

    def __eq__(self, other):
        if isinstance(other, Substitution):
            return self._data == other._data
        if isinstance(other, Mapping):
            return self._data == dict(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._data.items()))
        return self._hash

    def bind(self, name: str, value: Binding) -> Optional['Substitution']:
        """Extend with ``name -> value``; ``None`` if ``name`` is bound to something else."""
        existing = self._data.get(name)
        if existing is not None:
            return self if existing == value else None
        data = dict(self._data)
        data[name] = value
        return Substitution(data)

    def merge(self, other: Mapping) -> Optional['Substitution']:
        """Union of two substitutions, or ``None`` if they disagree on a shared variable."""
        if not other:
            return self
        if not self._data:
            return other if isinstance(other, Substitution) else Substitution(other)
        data = dict(self._data)
        for name, value in other.items():
            existing = data.get(name)
            if existing is None:
                data[name] = value
            elif existing != value:
                return None
        return Substitution(data)

    def sort_key(self):
        return tuple((name, binding_key(self._data[name])) for name in sorted(self._data))

    def __str__(self):
        items = ', '.join(f'{name} -> {format_binding(self._data[name])}' for name in sorted(self._data))
        return '{' + items + '}'

    def __repr__(self):
        return f'Substitution({self})'


def substitute(sigma: Mapping, term: Term, sig: SignatureTable) -> Term:
    """Instantiate the wildcards of ``term`` and return the canonical result.

    Sequence bindings are spliced into the argument list of the enclosing operation.
    Unbound optional wildcards take their default.
    """
    result = _substitute(sigma, term, sig)
    if isinstance(result, tuple):
        if len(result) != 1:
            raise SubstitutionError('a sequence binding cannot replace the whole term')
        return result[0]
    return result


def _lookup(sigma, w: Wildcard):
    if w.name is not None and w.name in sigma:
        return sigma[w.name]
    if w.default is not None:
        return w.default
    raise SubstitutionError(f'wildcard {w} is unbound and has no default')


def _substitute(sigma, term, sig):
    if term.ground:
        return term
    if isinstance(term, Wildcard):
        return _lookup(sigma, term)
    args = []
    for a in term.args:
        value = _substitute(sigma, a, sig)
        if isinstance(value, tuple):
            args.extend(value)
        else:
            args.append(value)
    return make_compound(term.head, args, sig)
