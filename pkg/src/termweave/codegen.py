"""Compile a discrimination net into standalone Python matcher source.

Every net state becomes a function that tests the current token and returns its
successor configurations; a small driver loop does the backtracking. Finalization
(binding captures) is emitted per pattern. Commutative and other opaque subpatterns are
handed back to the engine's nested matcher, which the generated module rebuilds from
the embedded signature and pattern texts at import time.
"""
from __future__ import annotations

import os
import types
from dataclasses import dataclass, field
from typing import List, Tuple

from .constraints import Constraint, Pattern
from .errors import CodegenError
from .net import CLOSE, DiscriminationNet, _Run
from .parsing import parse_term
from .signature import parse_signature_file
from .terms import Integer, Symbol

__all__ = ['GeneratedMatcherSpec', 'generate_matcher_source', 'load_matcher', 'build_runtime']

MATCHER_FILE = 'matcher.py'
MANIFEST_FILE = 'manifest.tsv'


@dataclass(frozen=True)
class GeneratedMatcherSpec:
    """Generated source plus the pattern manifest."""

    source: str
    entry_point: str = 'match'
    manifest: Tuple[Tuple[int, str], ...] = field(default_factory=tuple)
    state_count: int = 0

    @property
    def units(self):
        """File name → contents for everything that makes up the generated matcher."""
        manifest = ''.join(f'{pid}\t{text}\n' for pid, text in self.manifest)
        return {MATCHER_FILE: self.source, MANIFEST_FILE: manifest}

    def write(self, directory) -> None:
        os.makedirs(directory, exist_ok=True)
        for name, text in self.units.items():
            with open(os.path.join(directory, name), 'w', encoding='utf-8', newline='\n') as fh:
                fh.write(text)


def build_runtime(signature_text: str, patterns):
    """Rebuild the engine-side net that generated code delegates to.

    ``patterns`` holds ``(term_text, constraint_specs)`` pairs as embedded in the source;
    constraint specs are ``('source', text)`` or ``('predicate', id, variables)``.
    """
    sig = parse_signature_file(signature_text, strict=False)
    net = DiscriminationNet(sig)
    for pid, (text, specs) in enumerate(patterns):
        constraints = []
        for spec in specs:
            if spec[0] == 'source':
                constraints.append(Constraint.parse(spec[1]))
            else:
                constraints.append(Constraint.registered(spec[1], spec[2]))
        got = net.add(Pattern(parse_term(text, sig), constraints))
        if got != pid:
            raise CodegenError(f'pattern {pid} collapsed onto pattern {got} when rebuilding')
    return net, sig


def _constraint_spec(c: Constraint):
    if c.source is not None:
        return ('source', c.source)
    if c.predicate_id is not None:
        return ('predicate', c.predicate_id, tuple(sorted(c.variables)))
    raise CodegenError(f'constraint {c} is an anonymous function; register it under a predicate id')


def _token_literal(tok) -> str:
    if tok is CLOSE:
        return '_CLOSE'
    if isinstance(tok, tuple):
        return f'_open({tok[1]!r})'
    if isinstance(tok, Integer):
        return f'_Integer({tok.value!r})'
    if isinstance(tok, Symbol):
        return f'_Symbol({tok.name!r})'
    raise CodegenError(f'unexpected token {tok!r}')


class _Emitter:
    def __init__(self, net: DiscriminationNet):
        self.net = net
        self.lines: List[str] = []
        self.constants = {}
        self.classes = {}

    def const(self, tok) -> str:
        literal = _token_literal(tok)
        name = self.constants.get(literal)
        if name is None:
            name = self.constants[literal] = f'_K{len(self.constants)}'
        return name

    def cls(self, name) -> str:
        var = self.classes.get(name)
        if var is None:
            var = self.classes[name] = f'_C{len(self.classes)}'
        return var

    def emit(self, line=''):
        self.lines.append(line)

    def state(self, state):
        has_outgoing = any(True for _ in state.transitions())
        if not has_outgoing:
            return False
        emit = self.emit
        emit(f'def _s{state.id}(f, pos, caps, run):')
        emit('    tok = f.tokens[pos]')
        emit('    run.tick()')
        emit('    out = []')
        exact = list(state.exact.items())
        if len(exact) > 3:
            emit(f'    nxt = _X{state.id}.get(tok)')
            emit('    if nxt is not None:')
            emit('        out.append((nxt, pos + 1, caps))')
        else:
            for k, (tok, target) in enumerate(exact):
                keyword = 'if' if k == 0 else 'elif'
                test = 'tok is _CLOSE' if tok is CLOSE else f'tok == {self.const(tok)}'
                emit(f'    {keyword} {test}:')
                emit(f'        out.append((_s{target.id}, pos + 1, caps))')
        if state.opaque or state.classes or state.regular is not None:
            emit('    if tok is not _CLOSE:')
            emit('        term = f.terms[pos]')
            emit('        end = f.ends[pos]')
            for head, target in state.opaque.items():
                emit('        run.tick()')
                if self.net.sig[head].one_identity:
                    emit(f'        out.append((_s{target.id}, end, (caps, term)))')
                else:
                    emit(f'        if isinstance(term, _Compound) and term.head == {head!r}:')
                    emit(f'            out.append((_s{target.id}, end, (caps, term)))')
            for name, target in state.classes.items():
                emit('        run.tick()')
                emit(f'        if term in {self.cls(name)}:')
                emit(f'            out.append((_s{target.id}, end, (caps, term)))')
            if state.regular is not None:
                emit('        run.tick()')
                emit(f'        out.append((_s{state.regular.id}, end, (caps, term)))')
        for target, lo in ((state.plus, 1), (state.star, 0)):
            if target is None:
                continue
            if lo == 0:
                emit('    run.tick()')
                emit(f'    out.append((_s{target.id}, pos, (caps, ())))')
            emit('    _runs(f, pos, caps, run, out, _s%d)' % target.id)
        emit('    out.reverse()')
        emit('    return out')
        emit()
        return True

    def final(self, pid):
        emit = self.emit
        emit(f'def _p{pid}(v, run):')
        emit('    sigma = _EMPTY')
        opaque = 0
        obligations = []
        for k, capture in enumerate(self.net._captures[pid]):
            kind = capture[0]
            if kind == 'var':
                value = f'v[{k}]'
            elif kind == 'seq':
                value = f'v[{k}]' if capture[2] is None else f'_wrap({capture[2]!r}, v[{k}])'
            else:
                obligations.append(f'(_OPAQUE[{pid}][{opaque}], v[{k}])')
                opaque += 1
                continue
            emit(f'    sigma = _bind({pid}, sigma, {capture[1]!r}, {value})')
            emit('    if sigma is None:')
            emit('        return')
        tail = ', '.join(obligations) + (',' if len(obligations) == 1 else '')
        emit(f'    yield from _finish({pid}, sigma, ({tail}), run)')
        emit()


_DRIVER = '''
def _runs(f, pos, caps, run, out, target):
    items = []
    j = pos
    n = f.n
    while j < n and f.tokens[j] is not _CLOSE:
        items.append(f.terms[j])
        j = f.ends[j]
        run.tick()
        out.append((target, j, (caps, tuple(items))))


def _walk(f, run):
    if _START is None:
        return
    stack = [(_START, 0, None)]
    n = f.n
    while stack:
        fn, pos, caps = stack.pop()
        if pos == n:
            finals = _FINALS.get(fn)
            if finals:
                yield finals, caps
            continue
        stack.extend(fn(f, pos, caps, run))


def match(subject, stats=None):
    """Yield each (pattern id, substitution) pair for subject once."""
    run = _Run(stats)
    seen = set()
    for finals, caps in _walk(_FlatTerm(subject), run):
        v = _unroll(caps)
        for pid, final in finals:
            for sigma in final(v, run):
                key = (pid, sigma)
                if key not in seen:
                    seen.add(key)
                    yield key


def first_match(subject, stats=None):
    """Lowest matching pattern id with its first substitution, or None."""
    run = _Run(stats)
    best = None
    for finals, caps in _walk(_FlatTerm(subject), run):
        v = None
        for pid, final in finals:
            if best is not None and pid >= best[0]:
                break
            if v is None:
                v = _unroll(caps)
            for sigma in final(v, run):
                best = (pid, sigma)
                break
    return best
'''


def generate_matcher_source(net: DiscriminationNet) -> GeneratedMatcherSpec:
    """Emit Python source for ``net``; the output depends only on the net."""
    patterns = []
    for pattern in net.patterns:
        specs = tuple(_constraint_spec(c) for c in pattern.constraints)
        patterns.append((str(pattern.term), specs))
    em = _Emitter(net)
    emitted = {}
    # states are numbered in creation order, which fixes the output order
    for state in net.states:
        emitted[state.id] = em.state(state)
    for pid in range(len(net.patterns)):
        em.final(pid)
    body = em.lines
    tail = ['']
    for state in net.states:
        if emitted[state.id] and len(state.exact) > 3:
            items = ', '.join(f'{em.const(tok)}: _s{target.id}' for tok, target in state.exact.items())
            tail.append(f'_X{state.id} = {{{items}}}')

    head = [
        f'"""Generated pattern matcher: {len(net.patterns)} patterns, {len(net.states)} states.',
        '',
        'Entry points: match(subject, stats=None) and first_match(subject, stats=None).',
        'Do not edit; regenerate instead.',
        '"""',
        'from termweave.codegen import build_runtime as _build_runtime',
        'from termweave.net import CLOSE as _CLOSE, flatten as _FlatTerm, open_token as _open',
        'from termweave.net import _Run, unroll_captures as _unroll, wrap_run as _wrap',
        'from termweave.substitution import Substitution as _Substitution',
        'from termweave.terms import Compound as _Compound, Integer as _Integer, Symbol as _Symbol',
        '',
        f'SIGNATURE = {net.sig.to_text()!r}',
        '',
        'PATTERNS = [',
    ]
    for text, specs in patterns:
        head.append(f'    ({text!r}, {specs!r}),')
    head += [
        ']',
        '',
        '_net, _sig = _build_runtime(SIGNATURE, PATTERNS)',
        '_bind = _net.bind_for',
        '_finish = _net.finish',
        '_EMPTY = _Substitution()',
        '_OPAQUE = [_net.opaque_subpatterns(pid) for pid in range(len(PATTERNS))]',
    ]
    for literal, name in em.constants.items():
        head.append(f'{name} = {literal}')
    for cls_name, var in em.classes.items():
        head.append(f'{var} = _sig.class_members({cls_name!r})')
    head.append('')
    head.append('')

    finals = []
    for state in net.states:
        fn = f'_s{state.id}'
        if not emitted[state.id]:
            if not state.finals:
                continue
            # final-only state: no transitions, so any remaining input is a dead end
            body.append(f'def {fn}(f, pos, caps, run):')
            body.append('    return ()')
            body.append('')
        if state.finals:
            entries = ', '.join(f'({pid}, _p{pid})' for pid in state.finals)
            finals.append(f'    {fn}: ({entries},),')
    root = net.root
    start = f'_s{root.id}' if emitted[root.id] or root.finals else 'None'
    tail.append(f'_START = {start}')
    tail.append('_FINALS = {')
    tail.extend(finals)
    tail.append('}')
    source = '\n'.join(head + body + tail) + '\n' + _DRIVER
    manifest = tuple((pid, str(p)) for pid, p in enumerate(net.patterns))
    return GeneratedMatcherSpec(source, 'match', manifest, len(net.states))


def load_matcher(source: str, name: str = 'termweave_generated') -> types.ModuleType:
    """Execute generated source as a fresh module object."""
    module = types.ModuleType(name)
    module.__file__ = f'<{name}>'
    exec(compile(source, module.__file__, 'exec'), module.__dict__)
    return module
