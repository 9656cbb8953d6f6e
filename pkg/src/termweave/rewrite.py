"""Term rewriting with replacement rules.

Rewriting is leftmost-outermost: positions are visited in preorder and at each position
the rules are tried in declaration order; the first match found is applied. Three
interchangeable matching engines are available: plain one-to-one matching, a shared
discrimination net, and a matcher generated from that net.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, List, Optional, Sequence, Tuple, Union

from .canonical import canonicalize, make_compound
from .constraints import Pattern
from .errors import ParseError, TermweaveError
from .matching import MatchStats, match
from .parsing import parse_pattern, parse_term
from .signature import SignatureTable
from .substitution import Substitution, substitute
from .terms import Compound, Term, subterms, variables

__all__ = ['ReplacementRule', 'RewriteReport', 'apply_once', 'replace_all', 'match_all_positions',
           'parse_rule', 'make_engine', 'ENGINES']

Position = Tuple[int, ...]


class ReplacementRule:
    """``pattern -> replacement``, where the replacement is a template term or a builder.

    A builder is called with the match substitution and returns the replacement term.
    """

    def __init__(self, pattern: Union[Pattern, Term], replacement: Union[Term, Callable[[Substitution], Term]]):
        if not isinstance(pattern, Pattern):
            pattern = Pattern(pattern)
        self.pattern = pattern
        self.replacement = replacement
        if isinstance(replacement, Term):
            extra = variables(replacement) - pattern.variables
            if extra:
                raise TermweaveError(f'replacement uses variables {sorted(extra)} not bound by {pattern.term}')
        elif not callable(replacement):
            raise TypeError('replacement must be a Term or a callable')

    def instantiate(self, sigma: Substitution, sig: SignatureTable) -> Term:
        if isinstance(self.replacement, Term):
            return substitute(sigma, self.replacement, sig)
        return canonicalize(self.replacement(sigma), sig)

    def __str__(self):
        rhs = self.replacement if isinstance(self.replacement, Term) else getattr(self.replacement, '__name__', '<builder>')
        term_text, _, where = str(self.pattern).partition(' ; ')
        return f'{term_text} -> {rhs}' + (f' ; {where}' if where else '')

    def __repr__(self):
        return f'ReplacementRule({self})'


def parse_rule(text: str, sig: SignatureTable) -> ReplacementRule:
    """Parse ``PATTERN -> TEMPLATE [; where CONSTRAINT]``."""
    body, sep, where = text.partition(';')
    lhs, arrow, rhs = body.partition('->')
    if not arrow:
        raise ParseError("expected '->' in rule", 0)
    pattern = parse_pattern(lhs + (sep + where if sep else ''), sig)
    return ReplacementRule(pattern, parse_term(rhs, sig))


@dataclass
class RewriteReport:
    result: Term
    steps: int
    trace: Optional[List[Tuple[Position, int, Substitution]]] = None
    normal_form: bool = True
    stats: MatchStats = field(default_factory=MatchStats)


# engines: each answers "first (rule index, substitution) at this subterm"

class _OneToOneEngine:
    name = 'one2one'

    def __init__(self, rules, sig):
        self.rules = rules
        self.sig = sig

    def first(self, term, stats):
        for index, rule in enumerate(self.rules):
            for sigma in match(term, rule.pattern, self.sig, stats):
                return index, sigma
        return None

    def all(self, term, stats):
        for index, rule in enumerate(self.rules):
            for sigma in match(term, rule.pattern, self.sig, stats):
                yield index, sigma


class _NetEngine:
    name = 'net'

    def __init__(self, rules, sig):
        from .net import DiscriminationNet
        self.net = DiscriminationNet(sig)
        self.rule_of = {}
        for index, rule in enumerate(rules):
            # identical patterns share an id; the earlier rule wins
            self.rule_of.setdefault(self.net.add(rule.pattern), index)
        self.matcher = self.net

    def first(self, term, stats):
        found = self.matcher.first_match(term, stats)
        if found is None:
            return None
        return self.rule_of[found[0]], found[1]

    def all(self, term, stats):
        for pid, sigma in self.matcher.match(term, stats):
            yield self.rule_of[pid], sigma


class _CodegenEngine(_NetEngine):
    name = 'codegen'

    def __init__(self, rules, sig):
        super().__init__(rules, sig)
        from .codegen import generate_matcher_source, load_matcher
        self.source = generate_matcher_source(self.net)
        self.matcher = load_matcher(self.source.source)


ENGINES = {'one2one': _OneToOneEngine, 'net': _NetEngine, 'codegen': _CodegenEngine}


def make_engine(rules: Sequence[ReplacementRule], sig: SignatureTable, engine: str = 'one2one'):
    """Prepare a reusable matching engine for ``rules``."""
    try:
        return ENGINES[engine](list(rules), sig)
    except KeyError:
        raise TermweaveError(f'unknown engine {engine!r}; choose from {sorted(ENGINES)}') from None


class _Scanner:
    def __init__(self, engine, stats):
        self.engine = engine
        self.stats = stats
        self.irreducible = set()  # no rule matches at the root of these
        self.normal = set()       # no rule matches anywhere inside these

    def find(self, term, position=()):
        if term in self.normal:
            return None
        if term not in self.irreducible:
            found = self.engine.first(term, self.stats)
            if found is not None:
                return position, found[0], found[1]
            self.irreducible.add(term)
        if isinstance(term, Compound):
            for i, arg in enumerate(term.args):
                found = self.find(arg, position + (i,))
                if found is not None:
                    return found
        self.normal.add(term)
        return None


def _replace_at(term: Term, position: Position, new: Term, sig: SignatureTable) -> Term:
    if not position:
        return new
    i = position[0]
    args = list(term.args)
    args[i] = _replace_at(args[i], position[1:], new, sig)
    return make_compound(term.head, args, sig)


def _engine_for(rules, sig, engine):
    if isinstance(engine, str):
        return make_engine(rules, sig, engine)
    return engine


def apply_once(t: Term, rules: Sequence[ReplacementRule], sig: SignatureTable, engine='one2one',
               stats: Optional[MatchStats] = None) -> Optional[Tuple[Term, Position, int, Substitution]]:
    """Rewrite the leftmost-outermost redex once; ``None`` if ``t`` is in normal form.

    ``engine`` is an engine name or a prepared engine from :func:`make_engine`.
    """
    scanner = _Scanner(_engine_for(rules, sig, engine), stats)
    return _step(scanner, t, rules, sig)


def _step(scanner, t, rules, sig):
    found = scanner.find(t)
    if found is None:
        return None
    position, index, sigma = found
    redex = t
    for i in position:
        redex = redex.args[i]
    replacement = rules[index].instantiate(sigma, sig)
    return _replace_at(t, position, replacement, sig), position, index, sigma


def replace_all(t: Term, rules: Sequence[ReplacementRule], sig: SignatureTable, max_steps: int = 10000,
                engine='one2one', trace: bool = False, stats: Optional[MatchStats] = None) -> RewriteReport:
    """Rewrite until no rule applies or ``max_steps`` rewrites have been made.

    Hitting the limit is not an error: the report's ``normal_form`` flag is then false
    (unless the last step happened to produce a normal form).
    """
    if max_steps < 1:
        raise ValueError('max_steps must be positive')
    stats = stats if stats is not None else MatchStats()
    scanner = _Scanner(_engine_for(rules, sig, engine), stats)
    steps = 0
    log = [] if trace else None
    while True:
        result = _step(scanner, t, rules, sig)
        if result is None:
            return RewriteReport(t, steps, log, True, stats)
        if steps == max_steps:
            return RewriteReport(t, steps, log, False, stats)
        t, position, index, sigma = result
        steps += 1
        if log is not None:
            log.append((position, index, sigma))


def match_all_positions(t: Term, p: Union[Pattern, Term], sig: SignatureTable,
                        stats: Optional[MatchStats] = None) -> Iterator[Tuple[Position, Substitution]]:
    """Every match of ``p`` at every subterm of ``t``, positions in preorder."""
    for position, sub in subterms(t):
        for sigma in match(sub, p, sig, stats):
            yield position, sigma
