"""Many-to-one matching with a non-deterministic discrimination net.

Patterns are flattened to preorder token sequences and merged into a shared
transition graph. Subjects are walked in preorder alongside it; every usable transition
is explored by backtracking, so the common prefix of many patterns is matched once.

Transition labels:

* exact tokens: symbols, integers, the opening of a compound ``(head`` and the
  end-of-compound marker;
* symbol classes and regular wildcards, which consume one whole subterm;
* plus and star wildcards, which consume a run of sibling subterms (regular wildcards
  under an associative head compile to plus transitions and are re-wrapped at the end);
* opaque subpatterns. Compound subpatterns with a commutative or one-identity head, or
  with optional arguments, are skipped by the walk and resolved once a final state is
  reached. Commutative ones go through a nested many-to-one matcher based on bipartite
  matchings; the others fall back to one-to-one matching.
"""
from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import product
from typing import Dict, Iterator, List, Optional, Tuple

from . import matching as _m
from .bipartite import BipartiteGraph, enumerate_maximum_matchings, is_order_preserving
from .constraints import Pattern
from .signature import SignatureTable
from .substitution import Substitution
from .terms import PLUS, REGULAR, STAR, Compound, Term, Wildcard

__all__ = ['DiscriminationNet', 'FlatTerm', 'CLOSE', 'open_token', 'tokenize', 'detokenize', 'flatten']


class _Close:
    __slots__ = ()

    def __repr__(self):
        return 'CLOSE'

    def __reduce__(self):
        return '_CLOSE_SINGLETON'


CLOSE = _Close()
_CLOSE_SINGLETON = CLOSE
_OPEN_TOKENS: Dict[str, Tuple[str, str]] = {}


def open_token(head: str) -> Tuple[str, str]:
    token = _OPEN_TOKENS.get(head)
    if token is None:
        token = _OPEN_TOKENS[head] = ('(', head)
    return token


class FlatTerm:
    """Preorder token array of a ground term.

    ``ends[i]`` is the index just past the subterm starting at ``i`` and ``terms[i]`` that
    subterm (``None`` at end-of-compound markers).
    """

    __slots__ = ('tokens', 'ends', 'terms', 'n')

    def __init__(self, term: Term):
        tokens, ends, terms = [], [], []
        stack = [(term, False)]
        opened = []
        while stack:
            t, closing = stack.pop()
            if closing:
                start = opened.pop()
                tokens.append(CLOSE)
                terms.append(None)
                ends.append(len(tokens))
                ends[start] = len(tokens)
                continue
            if isinstance(t, Compound):
                opened.append(len(tokens))
                tokens.append(open_token(t.head))
                terms.append(t)
                ends.append(None)
                stack.append((t, True))
                for a in reversed(t.args):
                    stack.append((a, False))
            else:
                tokens.append(t)
                terms.append(t)
                ends.append(len(tokens))
        self.tokens = tokens
        self.ends = ends
        self.terms = terms
        self.n = len(tokens)


@lru_cache(maxsize=8192)
def flatten(term: Term) -> FlatTerm:
    """Cached :class:`FlatTerm`; compound terms reuse the flattenings of their arguments."""
    if not isinstance(term, Compound):
        return FlatTerm(term)
    flat = FlatTerm.__new__(FlatTerm)
    tokens = [open_token(term.head)]
    ends = [0]
    terms = [term]
    for arg in term.args:
        part = flatten(arg)
        offset = len(tokens)
        tokens += part.tokens
        terms += part.terms
        ends += [e + offset for e in part.ends]
    tokens.append(CLOSE)
    terms.append(None)
    n = len(tokens)
    ends.append(n)
    ends[0] = n
    flat.tokens, flat.ends, flat.terms, flat.n = tokens, ends, terms, n
    return flat


def unroll_captures(caps) -> list:
    """Captured values of a walk, oldest first (captures are stored as a linked list)."""
    values = []
    while caps is not None:
        caps, value = caps
        values.append(value)
    values.reverse()
    return values


def wrap_run(head, items):
    """A sequence capture as bound by a regular wildcard under associative ``head``."""
    if head is None:
        return items
    return items[0] if len(items) == 1 else Compound(head, items)


def tokenize(term: Term) -> list:
    """Preorder token list of a ground term."""
    return FlatTerm(term).tokens


def detokenize(tokens) -> Term:
    """Inverse of :func:`tokenize`."""
    stack: List[Tuple[Optional[str], list]] = [(None, [])]
    for tok in tokens:
        if tok is CLOSE:
            head, args = stack.pop()
            stack[-1][1].append(Compound(head, args))
        elif isinstance(tok, tuple):
            stack.append((tok[1], []))
        else:
            stack[-1][1].append(tok)
    if len(stack) != 1 or len(stack[0][1]) != 1:
        raise ValueError('unbalanced token stream')
    return stack[0][1][0]


class _State:
    __slots__ = ('id', 'exact', 'opaque', 'classes', 'regular', 'plus', 'star', 'finals')

    def __init__(self, state_id):
        self.id = state_id
        self.exact = {}
        self.opaque = {}
        self.classes = {}
        self.regular = None
        self.plus = None
        self.star = None
        self.finals = []

    def transitions(self):
        """``(label, target)`` pairs in exploration order."""
        for tok, target in self.exact.items():
            yield ('exact', tok), target
        for head, target in self.opaque.items():
            yield ('opaque', head), target
        for cls, target in self.classes.items():
            yield ('class', cls), target
        if self.regular is not None:
            yield ('regular',), self.regular
        if self.plus is not None:
            yield ('plus',), self.plus
        if self.star is not None:
            yield ('star',), self.star


def _has_optional_args(p: Compound) -> bool:
    return any(isinstance(a, Wildcard) and a.default is not None for a in p.args)


class _Run:
    """Per-call state of one net traversal."""

    __slots__ = ('stats',)

    def __init__(self, stats):
        self.stats = stats

    def tick(self, n=1):
        if self.stats is not None:
            self.stats.comparisons += n


class DiscriminationNet:
    """Add-only many-to-one matcher.

    >>> from termweave import SignatureTable, parse_term
    >>> sig = SignatureTable()
    >>> net = DiscriminationNet(sig)
    >>> ids = [net.add(parse_term(t, sig)) for t in ('[1]', '[y_, 0]', '[1, x___]')]
    >>> sorted((pid, str(s)) for pid, s in net.match(parse_term('[1, 0]', sig)))
    [(1, '{y -> 1}'), (2, '{x -> (0)}')]
    """

    def __init__(self, sig: SignatureTable, _groups=None):
        self.sig = sig
        self._states: List[_State] = [_State(0)]
        self.patterns: List[Pattern] = []
        self._captures: List[list] = []
        self._contexts: List[_m._Context] = []
        self._ids: Dict[Pattern, int] = {}
        self._groups: Dict[str, '_CommutativeGroup'] = {} if _groups is None else _groups

    @property
    def root(self):
        return self._states[0]

    @property
    def states(self):
        return list(self._states)

    def __len__(self):
        return len(self.patterns)

    def _new_state(self):
        state = _State(len(self._states))
        self._states.append(state)
        return state

    # construction

    def add(self, pattern) -> int:
        """Register a pattern (or bare term) and return its id; re-adding returns the old id."""
        if not isinstance(pattern, Pattern):
            pattern = Pattern(pattern)
        existing = self._ids.get(pattern)
        if existing is not None:
            return existing
        steps = []
        self._compile(pattern.term, None, steps)
        state = self.root
        captures = []
        for label, capture in steps:
            state = self._follow(state, label)
            if capture is not None:
                captures.append(capture)
        pid = len(self.patterns)
        state.finals.append(pid)
        self.patterns.append(pattern)
        self._captures.append(captures)
        self._contexts.append(_m._Context(self.sig, pattern.constraints))
        self._ids[pattern] = pid
        return pid

    def _follow(self, state, label):
        kind = label[0]
        if kind == 'exact':
            table, key = state.exact, label[1]
        elif kind == 'opaque':
            table, key = state.opaque, label[1]
        elif kind == 'class':
            table, key = state.classes, label[1]
        else:
            target = getattr(state, kind)
            if target is None:
                target = self._new_state()
                setattr(state, kind, target)
            return target
        target = table.get(key)
        if target is None:
            target = table[key] = self._new_state()
        return target

    def _compile(self, p: Term, parent, steps):
        if p.ground:
            if isinstance(p, Compound):
                steps.append((('exact', open_token(p.head)), None))
                for a in p.args:
                    self._compile(a, None, steps)
                steps.append((('exact', CLOSE), None))
            else:
                steps.append((('exact', p), None))
            return
        if isinstance(p, Wildcard):
            if p.kind == REGULAR:
                if parent is not None and parent.associative and p.symbol_class is None:
                    steps.append((('plus',), ('seq', p.name, parent.name)))
                elif p.symbol_class is not None:
                    self.sig.class_members(p.symbol_class)
                    steps.append((('class', p.symbol_class), ('var', p.name)))
                else:
                    steps.append((('regular',), ('var', p.name)))
            else:
                steps.append(((p.kind,), ('seq', p.name, None)))
            return
        op = self.sig[p.head]
        if op.commutative or op.one_identity or (op.variadic and _has_optional_args(p)):
            if op.commutative:
                self._group(p.head).register(p)
            steps.append((('opaque', p.head), ('opaque', p)))
            return
        steps.append((('exact', open_token(p.head)), None))
        for a in p.args:
            self._compile(a, op, steps)
        steps.append((('exact', CLOSE), None))

    def _group(self, head) -> '_CommutativeGroup':
        group = self._groups.get(head)
        if group is None:
            group = self._groups[head] = _CommutativeGroup(self.sig, head, self._groups)
        return group

    # matching

    def match(self, subject: Term, stats: Optional[_m.MatchStats] = None) -> Iterator[Tuple[int, Substitution]]:
        """Yield every ``(pattern id, substitution)`` pair for ``subject``, each once."""
        run = _Run(stats)
        seen = set()
        for state, caps in self._walk(flatten(subject), self.root, 0, None, run):
            for pid in state.finals:
                for sigma in self._complete(pid, caps, run):
                    key = (pid, sigma)
                    if key not in seen:
                        seen.add(key)
                        yield key

    def first_match(self, subject: Term, stats: Optional[_m.MatchStats] = None) -> Optional[Tuple[int, Substitution]]:
        """The match of the lowest-numbered matching pattern, with that pattern's first substitution."""
        run = _Run(stats)
        best = None
        for state, caps in self._walk(flatten(subject), self.root, 0, None, run):
            for pid in state.finals:
                if best is not None and pid >= best[0]:
                    break
                for sigma in self._complete(pid, caps, run):
                    best = (pid, sigma)
                    break
        return best

    def complete_final(self, pids, caps, stats=None, run=None):
        """Finish matches for the given final-state pattern ids; used by generated matchers."""
        run = run or _Run(stats)
        for pid in pids:
            for sigma in self._complete(pid, caps, run):
                yield pid, sigma

    def _walk(self, flat: FlatTerm, state: _State, pos: int, caps, run: _Run):
        # explicit stack instead of recursion: backtracking depth grows with subject size
        stack = [(state, pos, caps)]
        n = flat.n
        tokens, terms, ends = flat.tokens, flat.terms, flat.ends
        sig = self.sig
        while stack:
            state, pos, caps = stack.pop()
            if pos == n:
                if state.finals:
                    yield state, caps
                continue
            out = []
            tok = tokens[pos]
            run.tick()
            target = state.exact.get(tok)
            if target is not None:
                out.append((target, pos + 1, caps))
            if tok is not CLOSE:
                term = terms[pos]
                end = ends[pos]
                for head, target in state.opaque.items():
                    run.tick()
                    if (isinstance(term, Compound) and term.head == head) or sig[head].one_identity:
                        out.append((target, end, (caps, term)))
                for cls, target in state.classes.items():
                    run.tick()
                    if term in sig.class_members(cls):
                        out.append((target, end, (caps, term)))
                if state.regular is not None:
                    run.tick()
                    out.append((state.regular, end, (caps, term)))
            for target, lo in ((state.plus, 1), (state.star, 0)):
                if target is None:
                    continue
                if lo == 0:
                    run.tick()
                    out.append((target, pos, (caps, ())))
                items = []
                j = pos
                while j < n and tokens[j] is not CLOSE:
                    items.append(terms[j])
                    j = ends[j]
                    run.tick()
                    out.append((target, j, (caps, tuple(items))))
            out.reverse()
            stack.extend(out)

    def _complete(self, pid, caps, run) -> Iterator[Substitution]:
        values = unroll_captures(caps)
        sigma = Substitution()
        obligations = []
        for capture, value in zip(self._captures[pid], values):
            kind = capture[0]
            if kind == 'var':
                sigma = self.bind_for(pid, sigma, capture[1], value)
            elif kind == 'seq':
                sigma = self.bind_for(pid, sigma, capture[1], wrap_run(capture[2], value))
            else:
                obligations.append((capture[1], value))
            if sigma is None:
                return
        yield from self.finish(pid, sigma, obligations, run)

    # finalization hooks shared with generated matchers

    def bind_for(self, pid, sigma, name, value):
        """Bind under pattern ``pid``'s constraints; ``None`` on conflict or violation."""
        return self._contexts[pid].bind(sigma, name, value)

    def opaque_subpatterns(self, pid):
        return [capture[1] for capture in self._captures[pid] if capture[0] == 'opaque']

    def finish(self, pid, sigma, obligations, run) -> Iterator[Substitution]:
        """Resolve opaque ``(subpattern, subject)`` obligations and apply the constraints."""
        constraints = self.patterns[pid].constraints
        for sigma in self._resolve(obligations, 0, sigma, self._contexts[pid], run):
            if all(c.evaluate(sigma) for c in constraints):
                yield sigma

    def _resolve(self, obligations, k, sigma, ctx, run):
        if k == len(obligations):
            yield sigma
            return
        pattern, subject = obligations[k]
        if self.sig[pattern.head].commutative:
            candidates = self._groups[pattern.head].match(pattern, subject, sigma, ctx, run)
        else:
            saved = ctx.stats
            ctx.stats = run.stats
            try:
                candidates = list(_m._match(ctx, subject, pattern, sigma))
            finally:
                ctx.stats = saved
        for sigma2 in candidates:
            yield from self._resolve(obligations, k + 1, sigma2, ctx, run)


_MEMO_LIMIT = 16384


class _CommutativeGroup:
    """Nested matcher for the commutative subpatterns sharing one head.

    The non-sequence arguments of all registered subpatterns live in one inner net, so
    each subject argument is matched against all of them in a single walk.
    """

    def __init__(self, sig: SignatureTable, head: str, groups):
        self.sig = sig
        self.head = head
        self.op = sig[head]
        self.inner = DiscriminationNet(sig, groups)
        self._registered = set()
        self._node_ids = {}
        # inner-net results per subject argument; they only change when patterns are added
        self._memo = {}

    def register(self, p: Compound):
        if p in self._registered:
            return
        self._registered.add(p)
        self._memo.clear()
        for a in p.args:
            if not _m.is_sequence_like(a, self.op):
                self._node_ids[a] = self.inner.add(_strip_default(a))

    def _inner_matches(self, subject: Term, run: _Run):
        cached = self._memo.get(subject)
        if cached is None:
            cached = {}
            for pid, sigma in self._inner_walk(subject, run):
                cached.setdefault(pid, []).append(sigma)
            if len(self._memo) >= _MEMO_LIMIT:
                self._memo.clear()
            self._memo[subject] = cached
        return cached

    def _inner_walk(self, subject, run):
        inner = self.inner
        seen = set()
        for state, caps in inner._walk(flatten(subject), inner.root, 0, None, run):
            for pid in state.finals:
                for sigma in inner._complete(pid, caps, run):
                    if (pid, sigma) not in seen:
                        seen.add((pid, sigma))
                        yield pid, sigma

    def match(self, pattern: Compound, subject: Term, sigma: Substitution, ctx, run) -> Iterator[Substitution]:
        op = self.op
        if not (isinstance(subject, Compound) and subject.head == self.head):
            # one-identity wrap of a single argument: the nested net would revisit the same
            # subject, so match directly
            saved = ctx.stats
            ctx.stats = run.stats
            try:
                results = list(_m._match(ctx, subject, pattern, sigma))
            finally:
                ctx.stats = saved
            yield from results
            return
        sargs = subject.args
        subjects = sorted(sargs)
        classes = {}
        first_index = {}
        for i, t in enumerate(subjects):
            classes[i] = first_index.setdefault(t, i)
        for sigma2, rest in _m._apply_defaults(ctx, len(subjects), pattern.args, sigma):
            nodes = [p for p in rest if not _m.is_sequence_like(p, op)]
            groups = _m._Groups([p for p in rest if _m.is_sequence_like(p, op)], op)
            if len(nodes) > len(subjects):
                continue
            if not nodes:
                yield from self._distribute(ctx, run, Counter(subjects), groups, sigma2)
                continue
            edges = {}
            for i, t in enumerate(subjects):
                found = self._inner_matches(t, run)
                for j, p in enumerate(nodes):
                    run.tick()
                    labels = found.get(self._node_ids[p])
                    if labels:
                        edges[(i, j)] = labels
            graph = BipartiteGraph(range(len(subjects)), range(len(nodes)), edges, classes)
            for matching in enumerate_maximum_matchings(graph):
                if len(matching) < len(nodes):
                    break
                if not is_order_preserving(matching, graph):
                    continue
                chosen = sorted(matching)
                used = {i for i, _ in chosen}
                leftover = Counter(t for i, t in enumerate(subjects) if i not in used)
                for labels in product(*(graph.labels[e] for e in chosen)):
                    merged = sigma2
                    for label in labels:
                        for name, value in label.items():
                            merged = ctx.bind(merged, name, value)
                            if merged is None:
                                break
                        if merged is None:
                            break
                    if merged is not None:
                        yield from self._distribute(ctx, run, Counter(leftover), groups, merged)

    def _distribute(self, ctx, run, leftover, groups, sigma):
        saved = ctx.stats
        ctx.stats = run.stats
        try:
            removed = _m._remove_bound(ctx, leftover, [], groups.sequences, sigma, self.op)
            if removed is None:
                return
            seq_vars = [_m.SequenceVariable(p.name, PLUS if p.kind == REGULAR else p.kind, count,
                                            self.head if p.kind == REGULAR else None)
                        for p, count in removed[1]]
            seq_vars += [_m.SequenceVariable(None, p.kind if p.kind != REGULAR else PLUS)
                         for p in groups.anonymous_sequences]
            results = list(_m._distribute(ctx, leftover, seq_vars, sigma))
        finally:
            ctx.stats = saved
        yield from results


def _strip_default(p: Term) -> Term:
    # node subpatterns only take defaults through the enclosing argument list
    if isinstance(p, Wildcard) and p.default is not None:
        return Wildcard(p.name, p.kind, p.symbol_class)
    return p
