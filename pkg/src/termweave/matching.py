"""One-to-one matching of a pattern against a ground subject.

All functions here are generators: matches are produced lazily and the search
resumes where it stopped when the next match is requested.

Sequence wildcards absorb runs of sibling arguments. Under an associative head a
regular wildcard behaves like a plus wildcard and its binding is wrapped in the head
(``x -> f(b, c)``) when it covers more than one argument. Commutative argument lists are
treated as multisets and matched in phases: constants, already bound variables,
compound subpatterns, bound variables again, regular variables, and finally sequence
variables, which are distributed by solving linear Diophantine equations.

Optional wildcards take their default only when the subject has too few arguments to
give every non-star pattern argument its own term; the smallest possible number of
defaults is used.
"""
from __future__ import annotations

from collections import Counter
from itertools import combinations, product
from typing import Iterable, Iterator, List, NamedTuple, Optional, Sequence

from .constraints import Pattern
from .diophantine import solve_cached
from .errors import TermweaveError
from .signature import OperationSignature, SignatureTable
from .substitution import Substitution
from .terms import PLUS, REGULAR, STAR, Compound, Term, Wildcard, subterms

__all__ = [
    'MatchStats', 'SequenceVariable', 'match', 'match_sequence', 'match_commutative',
    'distribute_sequence_vars', 'is_sequence_like',
]


class MatchStats:
    """Counter of elementary comparisons performed by a matcher."""

    __slots__ = ('comparisons',)

    def __init__(self):
        self.comparisons = 0

    def __repr__(self):
        return f'MatchStats(comparisons={self.comparisons})'


class SequenceVariable(NamedTuple):
    """A variable taking part in the distribution of leftover commutative arguments.

    ``wrap`` names the associative head used to wrap multi-term bindings of a regular
    variable; it is ``None`` for plus and star wildcards.
    """

    name: Optional[str]
    kind: str
    multiplicity: int = 1
    wrap: Optional[str] = None


class _Context:
    __slots__ = ('sig', 'stats', 'watch')

    def __init__(self, sig: SignatureTable, constraints=(), stats: Optional[MatchStats] = None):
        self.sig = sig
        self.stats = stats
        self.watch = {}
        for c in constraints:
            for name in c.variables:
                self.watch.setdefault(name, []).append(c)

    def tick(self, n=1):
        if self.stats is not None:
            self.stats.comparisons += n

    def bind(self, sigma: Substitution, name, value):
        if name is None:
            return sigma
        new = sigma.bind(name, value)
        if new is None or new is sigma:
            return new
        for c in self.watch.get(name, ()):
            if c.evaluate(new) is False:
                return None
        return new


def is_sequence_like(p: Term, op: OperationSignature) -> bool:
    """Whether argument ``p`` of ``op`` may absorb a variable number of subject arguments."""
    if not isinstance(p, Wildcard):
        return False
    if p.kind != REGULAR:
        return True
    return op.associative and p.symbol_class is None


def _min_length(p: Term) -> int:
    return 0 if isinstance(p, Wildcard) and p.kind == STAR else 1


def _expand(value, op: OperationSignature):
    """Subject arguments covered by a binding of a sequence-like variable under ``op``."""
    if isinstance(value, tuple):
        return value
    if isinstance(value, Compound) and value.head == op.name and op.associative:
        return value.args
    return (value,)


def _wrap(items: Sequence[Term], p: Wildcard, op: OperationSignature):
    if p.kind != REGULAR:
        return tuple(items)
    if len(items) == 1:
        return items[0]
    return Compound(op.name, items)


def match(subject: Term, pattern, sig: SignatureTable, stats: Optional[MatchStats] = None) -> Iterator[Substitution]:
    """Yield every match of ``pattern`` (a :class:`Pattern` or a term) against ``subject``.

    Matches are distinct and satisfy all constraints of the pattern.
    """
    if not subject.ground:
        raise TermweaveError(f'subject {subject} contains wildcards')
    if not isinstance(pattern, Pattern):
        pattern = Pattern(pattern)
    ctx = _Context(sig, pattern.constraints, stats)
    seen = set()
    for sigma in _match(ctx, subject, pattern.term, Substitution()):
        if not all(c.evaluate(sigma) for c in pattern.constraints):
            continue
        if sigma not in seen:
            seen.add(sigma)
            yield sigma


def _match(ctx: _Context, s: Term, p: Term, sigma: Substitution) -> Iterator[Substitution]:
    ctx.tick()
    if p.ground:
        if p == s:
            yield sigma
        return
    if isinstance(p, Wildcard):
        if p.symbol_class is not None and s not in ctx.sig.class_members(p.symbol_class):
            return
        new = ctx.bind(sigma, p.name, s)
        if new is not None:
            yield new
        return
    op = ctx.sig[p.head]
    if isinstance(s, Compound) and s.head == p.head:
        sargs = s.args
    elif op.one_identity:
        sargs = (s,)
    else:
        return
    yield from _match_args(ctx, sargs, p.args, sigma, op)


def _match_args(ctx, sargs, pargs, sigma, op):
    for sigma2, rest in _apply_defaults(ctx, len(sargs), pargs, sigma):
        if op.commutative:
            yield from _match_commutative(ctx, sargs, rest, sigma2, op)
        else:
            yield from _match_sequence(ctx, sargs, rest, sigma2, op)


def _apply_defaults(ctx, n_subjects, pargs, sigma):
    """Choose which optional wildcards take their default so the remaining arguments can fit."""
    need = sum(_min_length(p) for p in pargs) - n_subjects
    if need <= 0:
        yield sigma, pargs
        return
    optional = [i for i, p in enumerate(pargs) if isinstance(p, Wildcard) and p.default is not None]
    for chosen in combinations(optional, need):
        sigma2 = sigma
        for i in chosen:
            sigma2 = ctx.bind(sigma2, pargs[i].name, pargs[i].default)
            if sigma2 is None:
                break
        else:
            chosen = set(chosen)
            yield sigma2, tuple(p for i, p in enumerate(pargs) if i not in chosen)


def match_sequence(subjects: Sequence[Term], patterns: Sequence[Term], partial: Substitution,
                   head_sig: OperationSignature, sig: SignatureTable,
                   stats: Optional[MatchStats] = None) -> Iterator[Substitution]:
    """Match the argument list of a non-commutative operation.

    Splits are enumerated with shorter bindings for earlier variables first.
    """
    ctx = _Context(sig, (), stats)
    return _match_args(ctx, tuple(subjects), tuple(patterns), partial, head_sig)


def _match_sequence(ctx, sargs, pargs, sigma, op):
    n, m = len(sargs), len(pargs)
    flexible = [is_sequence_like(p, op) for p in pargs]
    suffix_min = [0] * (m + 1)
    suffix_flex = [False] * (m + 1)
    for i in range(m - 1, -1, -1):
        suffix_min[i] = suffix_min[i + 1] + _min_length(pargs[i])
        suffix_flex[i] = suffix_flex[i + 1] or flexible[i]
    if suffix_min[0] > n or (not suffix_flex[0] and suffix_min[0] != n):
        return

    def rec(i, j, sigma):
        if i == m:
            yield sigma
            return
        p = pargs[i]
        if not flexible[i]:
            for sigma2 in _match(ctx, sargs[j], p, sigma):
                yield from rec(i + 1, j + 1, sigma2)
            return
        lo = _min_length(p)
        hi = n - j - suffix_min[i + 1]
        if hi < lo:
            return
        tail_flexible = suffix_flex[i + 1]
        if p.name is not None and p.name in sigma:
            items = _expand(sigma[p.name], op)
            size = len(items)
            ctx.tick()
            if lo <= size <= hi and (tail_flexible or size == hi) and tuple(sargs[j:j + size]) == tuple(items):
                yield from rec(i + 1, j + size, sigma)
            return
        lengths = range(lo, hi + 1) if tail_flexible else (hi,)
        for size in lengths:
            ctx.tick()
            sigma2 = ctx.bind(sigma, p.name, _wrap(sargs[j:j + size], p, op))
            if sigma2 is not None:
                yield from rec(i + 1, j + size, sigma2)

    yield from rec(0, 0, sigma)


def _ground_count(p: Term) -> int:
    return sum(1 for _, t in subterms(p) if t.ground)


def match_commutative(subject_args: Iterable[Term], pattern_args: Sequence[Term], partial: Substitution,
                      head_sig: OperationSignature, sig: SignatureTable,
                      stats: Optional[MatchStats] = None) -> Iterator[Substitution]:
    """Match the argument multiset of a commutative operation."""
    ctx = _Context(sig, (), stats)
    return _match_args(ctx, tuple(subject_args), tuple(pattern_args), partial, head_sig)


class _Groups:
    """Pattern arguments of one commutative list, split by matching phase."""

    def __init__(self, pargs, op):
        self.constants = []
        self.compounds = []
        singles = {}
        sequences = {}
        self.anonymous_singles = []
        self.anonymous_sequences = []
        for p in pargs:
            if p.ground:
                self.constants.append(p)
            elif isinstance(p, Compound):
                self.compounds.append(p)
            elif is_sequence_like(p, op):
                if p.name is None:
                    self.anonymous_sequences.append(p)
                else:
                    entry = sequences.setdefault(p.name, [p, 0])
                    entry[1] += 1
            elif p.name is None:
                self.anonymous_singles.append(p)
            else:
                entry = singles.setdefault(p.name, [p, 0])
                entry[1] += 1
        self.compounds.sort(key=lambda c: (-_ground_count(c), c._key))
        self.singles = [(p, count) for p, count in singles.values()]
        self.sequences = [(p, count) for p, count in sequences.values()]


def _take(remaining: Counter, term, count=1) -> bool:
    have = remaining.get(term, 0)
    if have < count:
        return False
    if have == count:
        del remaining[term]
    else:
        remaining[term] = have - count
    return True


def _remove_bound(ctx, remaining, singles, sequences, sigma, op):
    """Consume subject arguments already determined by bound variables."""
    free_singles = []
    for p, count in singles:
        if p.name in sigma:
            value = sigma[p.name]
            ctx.tick()
            if p.symbol_class is not None and value not in ctx.sig.class_members(p.symbol_class):
                return None
            if not _take(remaining, value, count):
                return None
        else:
            free_singles.append((p, count))
    free_sequences = []
    for p, count in sequences:
        if p.name in sigma:
            ctx.tick()
            for item, k in Counter(_expand(sigma[p.name], op)).items():
                if not _take(remaining, item, k * count):
                    return None
        else:
            free_sequences.append((p, count))
    return free_singles, free_sequences


def _match_commutative(ctx, sargs, pargs, sigma, op):
    remaining = Counter(sargs)
    groups = _Groups(pargs, op)
    for c in groups.constants:
        ctx.tick()
        if not _take(remaining, c):
            return
    removed = _remove_bound(ctx, remaining, groups.singles, groups.sequences, sigma, op)
    if removed is None:
        return
    singles, sequences = removed
    for remaining2, sigma2 in _match_compounds(ctx, remaining, groups.compounds, 0, sigma):
        removed = _remove_bound(ctx, remaining2, singles, sequences, sigma2, op)
        if removed is None:
            continue
        singles2, sequences2 = removed
        singles2 = singles2 + [(p, 1) for p in groups.anonymous_singles]
        for remaining3, sigma3 in _match_singles(ctx, remaining2, singles2, 0, sigma2):
            seq_vars = [SequenceVariable(p.name, PLUS if p.kind == REGULAR else p.kind, count,
                                         op.name if p.kind == REGULAR else None)
                        for p, count in sequences2]
            seq_vars += [SequenceVariable(None, p.kind if p.kind != REGULAR else PLUS)
                         for p in groups.anonymous_sequences]
            yield from _distribute(ctx, remaining3, seq_vars, sigma3)


def _match_compounds(ctx, remaining, compounds, k, sigma):
    if k == len(compounds):
        yield remaining, sigma
        return
    p = compounds[k]
    for t in sorted(remaining):
        for sigma2 in _match(ctx, t, p, sigma):
            remaining2 = Counter(remaining)
            _take(remaining2, t)
            yield from _match_compounds(ctx, remaining2, compounds, k + 1, sigma2)


def _match_singles(ctx, remaining, singles, k, sigma):
    if k == len(singles):
        yield remaining, sigma
        return
    p, count = singles[k]
    members = ctx.sig.class_members(p.symbol_class) if p.symbol_class is not None else None
    for t in sorted(remaining):
        ctx.tick()
        if remaining[t] < count or (members is not None and t not in members):
            continue
        sigma2 = ctx.bind(sigma, p.name, t)
        if sigma2 is None:
            continue
        remaining2 = Counter(remaining)
        _take(remaining2, t, count)
        yield from _match_singles(ctx, remaining2, singles, k + 1, sigma2)


def distribute_sequence_vars(remainder, seq_vars: Iterable, partial: Substitution,
                             stats: Optional[MatchStats] = None, sig: Optional[SignatureTable] = None,
                             constraints=()) -> Iterator[Substitution]:
    """Distribute a multiset of leftover arguments over sequence variables.

    ``seq_vars`` holds :class:`SequenceVariable` entries (or ``(name, kind, multiplicity)``
    tuples). For every distinct term ``u`` with multiplicity ``c_u`` the equation
    ``c_u = sum_v multiplicity(v) * n_vu`` is solved over the non-negative integers; the
    per-term solutions are combined and plus variables must receive at least one term.
    Bindings list their terms in canonical order.
    """
    ctx = _Context(sig, constraints, stats)
    seq_vars = [v if isinstance(v, SequenceVariable) else SequenceVariable(*v) for v in seq_vars]
    return _distribute(ctx, Counter(remainder), seq_vars, partial)


def _distribute(ctx, remainder, seq_vars: List[SequenceVariable], sigma):
    named = [v for v in seq_vars if v.name is not None]
    sink_min = sum(1 for v in seq_vars if v.name is None and v.kind != STAR)
    has_sink = any(v.name is None for v in seq_vars)
    coefficients = tuple(v.multiplicity for v in named) + ((1,) if has_sink else ())
    terms = sorted(t for t, c in remainder.items() if c > 0)
    if not coefficients:
        if not terms:
            yield sigma
        return
    per_term = []
    for u in terms:
        ctx.tick()
        solutions = solve_cached(coefficients, remainder[u])
        if not solutions:
            return
        per_term.append(solutions)
    width = len(named)
    for combo in product(*per_term):
        totals = [0] * len(coefficients)
        for solution in combo:
            for idx, count in enumerate(solution):
                totals[idx] += count
        if any(v.kind != STAR and totals[idx] == 0 for idx, v in enumerate(named)):
            continue
        if has_sink and totals[width] < sink_min:
            continue
        sigma2 = sigma
        for idx, v in enumerate(named):
            items = []
            for u, solution in zip(terms, combo):
                items.extend([u] * solution[idx])
            if v.wrap is not None:
                value = items[0] if len(items) == 1 else Compound(v.wrap, items)
            else:
                value = tuple(items)
            sigma2 = ctx.bind(sigma2, v.name, value)
            if sigma2 is None:
                break
        if sigma2 is not None:
            yield sigma2
