"""Match constraints and patterns.

Constraints are either expressions in a small comparison language::

    a < b && sum(x) == 5

or host predicates. Host predicates are called with the bound variables as keyword
arguments; integer literals are passed as Python ints and sequences as tuples.
"""
from __future__ import annotations

import inspect
import logging
import operator
import re
from typing import Callable, Dict, FrozenSet, Iterable, Optional

from .errors import ParseError, TermweaveError
from .terms import Integer, Term, variables

__all__ = ['Constraint', 'Pattern', 'register_predicate', 'parse_constraint', 'to_python']

logger = logging.getLogger(__name__)

_PREDICATES: Dict[str, Callable] = {}

_COMPARISONS = {
    '<': operator.lt, '<=': operator.le, '>': operator.gt, '>=': operator.ge,
    '==': operator.eq, '!=': operator.ne,
}
_TOKEN = re.compile(r'\s*(?:(?P<int>-?[0-9]+)|(?P<ident>[A-Za-z][A-Za-z0-9]*)'
                    r'|(?P<op><=|>=|==|!=|<|>|&&|\(|\)))')


def register_predicate(predicate_id: str, function: Callable) -> None:
    """Make ``function`` available to constraints that refer to ``predicate_id``."""
    _PREDICATES[predicate_id] = function


def to_python(value):
    if isinstance(value, tuple):
        return tuple(to_python(v) for v in value)
    if isinstance(value, Integer):
        return value.value
    return value


class _ConstraintFailure(TermweaveError):
    pass


def _as_int(value, name):
    if isinstance(value, Integer):
        return value.value
    raise _ConstraintFailure(f'{name} is bound to {value}, not an integer')


class _Var:
    def __init__(self, name):
        self.name = name

    def value(self, sigma):
        return _as_int(sigma[self.name], self.name)


class _Sum:
    def __init__(self, name):
        self.name = name

    def value(self, sigma):
        bound = sigma[self.name]
        if not isinstance(bound, tuple):
            bound = (bound,)
        return sum(_as_int(v, self.name) for v in bound)


class _Const:
    def __init__(self, number):
        self.number = number

    def value(self, sigma):
        return self.number


def parse_constraint(text: str):
    """Parse a constraint expression into ``(comparisons, variable names)``."""
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f'bad constraint syntax {text[pos:].strip()!r}', pos)
        tokens.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()
    names = set()
    index = 0

    def next_token():
        nonlocal index
        if index >= len(tokens):
            raise ParseError('unexpected end of constraint', len(text))
        token = tokens[index]
        index += 1
        return token

    def operand():
        kind, value, start = next_token()
        if kind == 'int':
            return _Const(int(value))
        if kind == 'ident':
            if value == 'sum' and index < len(tokens) and tokens[index][1] == '(':
                next_token()
                kind, name, start = next_token()
                if kind != 'ident':
                    raise ParseError('sum() expects a variable name', start)
                if next_token()[1] != ')':
                    raise ParseError("expected ')'", start)
                names.add(name)
                return _Sum(name)
            names.add(value)
            return _Var(value)
        raise ParseError(f'unexpected {value!r} in constraint', start)

    comparisons = []
    while True:
        left = operand()
        kind, op, start = next_token()
        if op not in _COMPARISONS:
            raise ParseError(f'expected a comparison operator, found {op!r}', start)
        right = operand()
        comparisons.append((left, _COMPARISONS[op], right))
        if index == len(tokens):
            break
        kind, value, start = next_token()
        if value != '&&':
            raise ParseError(f"expected '&&', found {value!r}", start)
    return comparisons, frozenset(names)


class Constraint:
    """Predicate over a substitution.

    Build one with :meth:`parse`, :meth:`from_function` or :meth:`registered`.
    """

    def __init__(self, variables: Iterable[str], *, source: Optional[str] = None,
                 function: Optional[Callable] = None, predicate_id: Optional[str] = None):
        self.variables: FrozenSet[str] = frozenset(variables)
        self.source = source
        self.function = function
        self.predicate_id = predicate_id
        self._comparisons = parse_constraint(source)[0] if source is not None else None

    @classmethod
    def parse(cls, text: str) -> 'Constraint':
        _, names = parse_constraint(text)
        return cls(names, source=text.strip())

    @classmethod
    def from_function(cls, function: Callable, predicate_id: Optional[str] = None) -> 'Constraint':
        names = [p.name for p in inspect.signature(function).parameters.values()
                 if p.kind in (p.POSITIONAL_OR_KEYWORD, p.KEYWORD_ONLY)]
        if predicate_id is not None:
            register_predicate(predicate_id, function)
        return cls(names, function=function, predicate_id=predicate_id)

    @classmethod
    def registered(cls, predicate_id: str, variables: Iterable[str]) -> 'Constraint':
        return cls(variables, predicate_id=predicate_id)

    def _callable(self):
        if self.function is not None:
            return self.function
        try:
            return _PREDICATES[self.predicate_id]
        except KeyError:
            raise TermweaveError(f'no predicate registered as {self.predicate_id!r}') from None

    def evaluate(self, sigma) -> Optional[bool]:
        """``None`` while a required variable is unbound, else the predicate value.

        Errors inside the predicate count as failure.
        """
        for name in self.variables:
            if name not in sigma:
                return None
        try:
            if self._comparisons is not None:
                return all(op(left.value(sigma), right.value(sigma))
                           for left, op, right in self._comparisons)
            kwargs = {name: to_python(sigma[name]) for name in self.variables}
            return bool(self._callable()(**kwargs))
        except Exception as exc:  # predicate errors reject the match
            logger.debug('constraint %s failed on %s: %s', self, sigma, exc)
            return False

    def _identity(self):
        return (self.source, self.predicate_id, self.function, self.variables)

    def __eq__(self, other):
        if not isinstance(other, Constraint):
            return NotImplemented
        return self._identity() == other._identity()

    def __hash__(self):
        return hash(self._identity())

    def __str__(self):
        if self.source is not None:
            return self.source
        if self.predicate_id is not None:
            return f'{self.predicate_id}({", ".join(sorted(self.variables))})'
        return f'<function {getattr(self.function, "__name__", "?")}>'

    def __repr__(self):
        return f'Constraint({self})'


class Pattern:
    """A term with wildcards plus constraints that every match must satisfy."""

    def __init__(self, term: Term, constraints: Iterable[Constraint] = ()):
        self.term = term
        self.constraints = tuple(constraints)
        names = variables(term)
        for c in self.constraints:
            missing = c.variables - names
            if missing:
                raise TermweaveError(f'constraint {c} uses variables {sorted(missing)} not in {term}')

    @property
    def variables(self):
        return variables(self.term)

    def __eq__(self, other):
        if not isinstance(other, Pattern):
            return NotImplemented
        return self.term == other.term and self.constraints == other.constraints

    def __hash__(self):
        return hash((self.term, self.constraints))

    def __str__(self):
        if not self.constraints:
            return str(self.term)
        return f'{self.term} ; where ' + ' && '.join(str(c) for c in self.constraints)

    def __repr__(self):
        return f'Pattern({self})'
