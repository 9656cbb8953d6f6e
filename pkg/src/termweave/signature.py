"""Operation signatures and symbol classes.

A signature file has one declaration per line::

    # comment
    op Plus variadic:2 associative commutative
    op f fixed:2
    class Scalar alpha beta
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Optional

from .errors import ParseError, SignatureError
from .terms import LIST_HEAD, Integer, Symbol, Term

__all__ = ['OperationSignature', 'SignatureTable', 'parse_signature_file']


@dataclass(frozen=True)
class OperationSignature:
    """Arity and algebraic properties of one operation.

    ``arity`` is the exact argument count of a fixed-arity head, or the minimum count of a
    variadic head.
    """

    name: str
    arity: int = 0
    variadic: bool = True
    associative: bool = False
    commutative: bool = False
    one_identity: bool = False

    def __post_init__(self):
        if self.arity < 0:
            raise SignatureError(f'{self.name}: arity must be non-negative')
        if (self.associative or self.one_identity) and not self.variadic:
            raise SignatureError(f'{self.name}: associative or one_identity operations must be variadic')

    @classmethod
    def fixed(cls, name: str, arity: int, commutative: bool = False) -> 'OperationSignature':
        return cls(name, arity, variadic=False, commutative=commutative)

    @classmethod
    def variadic_op(cls, name: str, min_arity: Optional[int] = None, associative=False,
                    commutative=False, one_identity=False) -> 'OperationSignature':
        if min_arity is None:
            min_arity = 2 if associative else 0
        return cls(name, min_arity, True, associative, commutative, one_identity)

    def describe(self) -> str:
        parts = ['op', self.name, f"{'variadic' if self.variadic else 'fixed'}:{self.arity}"]
        for flag in ('associative', 'commutative', 'one_identity'):
            if getattr(self, flag):
                parts.append(flag)
        return ' '.join(parts)


class SignatureTable:
    """Mapping from head names to signatures plus the declared symbol classes.

    A non-strict table silently treats undeclared heads as plain variadic operations.
    ``List`` is always available as a plain variadic head.
    """

    def __init__(self, operations: Iterable[OperationSignature] = (),
                 classes: Optional[Dict[str, Iterable]] = None, strict: bool = True):
        self.strict = strict
        self._ops: Dict[str, OperationSignature] = {}
        for op in operations:
            if op.name in self._ops:
                raise SignatureError(f'duplicate declaration of {op.name}')
            self._ops[op.name] = op
        self._ops.setdefault(LIST_HEAD, OperationSignature(LIST_HEAD))
        self.classes: Dict[str, FrozenSet[Term]] = {}
        for cls_name, members in (classes or {}).items():
            self.classes[cls_name] = frozenset(_class_member(m) for m in members)

    def __getitem__(self, head: str) -> OperationSignature:
        try:
            return self._ops[head]
        except KeyError:
            if self.strict:
                raise SignatureError(f'undeclared head {head!r}') from None
            op = OperationSignature(head)
            self._ops[head] = op
            return op

    def __contains__(self, head):
        return head in self._ops

    def __iter__(self):
        return iter(self._ops.values())

    def class_members(self, name: str) -> FrozenSet[Term]:
        try:
            return self.classes[name]
        except KeyError:
            raise SignatureError(f'undeclared symbol class {name!r}') from None

    def to_text(self) -> str:
        """Serialize in the signature file format (``List`` omitted)."""
        lines = [op.describe() for op in self._ops.values() if op != OperationSignature(LIST_HEAD)]
        for name, members in self.classes.items():
            lines.append(' '.join(['class', name] + [str(m) for m in sorted(members)]))
        return '\n'.join(lines) + ('\n' if lines else '')


def _class_member(member) -> Term:
    if isinstance(member, Term):
        return member
    if isinstance(member, int):
        return Integer(member)
    text = str(member)
    try:
        return Integer(int(text))
    except ValueError:
        return Symbol(text)


_FLAGS = ('associative', 'commutative', 'one_identity')


def parse_signature_file(text: str, strict: bool = True) -> SignatureTable:
    ops = []
    classes = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if words[0] == 'op':
            if len(words) < 3:
                raise ParseError(f'line {lineno}: expected "op NAME ARITY [flags]"')
            name, arity_spec = words[1], words[2]
            kind, _, count = arity_spec.partition(':')
            if kind not in ('fixed', 'variadic') or not count.isdigit():
                raise ParseError(f'line {lineno}: bad arity {arity_spec!r}')
            flags = words[3:]
            unknown = [f for f in flags if f not in _FLAGS]
            if unknown:
                raise ParseError(f'line {lineno}: unknown flag {unknown[0]!r}')
            try:
                ops.append(OperationSignature(name, int(count), kind == 'variadic',
                                              *(flag in flags for flag in _FLAGS)))
            except SignatureError as exc:
                raise SignatureError(f'line {lineno}: {exc}') from None
        elif words[0] == 'class':
            if len(words) < 2:
                raise ParseError(f'line {lineno}: expected "class NAME members..."')
            classes[words[1]] = words[2:]
        else:
            raise ParseError(f'line {lineno}: unknown declaration {words[0]!r}')
    return SignatureTable(ops, classes, strict=strict)
