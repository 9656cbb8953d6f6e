"""Command-line front end: ``termweave match|rewrite|bench|codegen``.

Exit codes: 0 success / match found, 1 no match, 2 usage or input error,
3 rewrite step limit reached.
"""
from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from .bench import ENGINE_NAMES, default_seed, run_bench, write_csv, WORKLOADS
from .errors import TermweaveError
from .matching import match
from .parsing import parse_pattern, parse_term
from .rewrite import parse_rule, replace_all
from .signature import SignatureTable, parse_signature_file

EXIT_OK, EXIT_NO_MATCH, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


class _UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding='utf-8') as fh:
            return fh.read()
    except OSError as exc:
        raise _UsageError(f'cannot read {path}: {exc.strerror}') from None


def _signature(path: Optional[str]) -> SignatureTable:
    if path is None:
        return SignatureTable(strict=False)
    return parse_signature_file(_read(path))


def _lines(text: str):
    """``(line number, content)`` for every non-blank, non-comment line."""
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith('#'):
            yield lineno, line


def _parse_lines(path, parser, sig):
    items = []
    for lineno, line in _lines(_read(path)):
        try:
            items.append(parser(line, sig))
        except TermweaveError as exc:
            raise _UsageError(f'{path}:{lineno}: {exc}') from None
    return items


def _format_position(position) -> str:
    return '[' + ','.join(str(i) for i in position) + ']'


def cmd_match(args) -> int:
    sig = _signature(args.signatures)
    pattern = parse_pattern(args.pattern, sig)
    subject = parse_term(args.subject, sig)
    if not subject.ground:
        raise _UsageError('the subject must not contain wildcards')
    if args.engine == 'net':
        from .net import DiscriminationNet
        net = DiscriminationNet(sig)
        net.add(pattern)
        results = (sigma for _, sigma in net.match(subject))
    else:
        results = match(subject, pattern, sig)
    if args.all:
        found = sorted(results, key=lambda s: s.sort_key())
    else:
        first = next(iter(results), None)
        found = [] if first is None else [first]
    for sigma in found:
        print(sigma)
    return EXIT_OK if found else EXIT_NO_MATCH


def cmd_rewrite(args) -> int:
    sig = _signature(args.signatures)
    rules = _parse_lines(args.rules, parse_rule, sig)
    subject = parse_term(args.subject, sig)
    if not subject.ground:
        raise _UsageError('the subject must not contain wildcards')
    if args.max_steps < 1:
        raise _UsageError('--max-steps must be positive')
    report = replace_all(subject, rules, sig, args.max_steps, engine=args.engine, trace=args.trace)
    for position, index, sigma in report.trace or ():
        print(f'pos={_format_position(position)} rule={index} sigma={sigma}')
    print(report.result)
    if not report.normal_form:
        print(f'warning: step limit {args.max_steps} reached before a normal form', file=sys.stderr)
        return EXIT_LIMIT
    return EXIT_OK


def cmd_bench(args) -> int:
    engines = [e.strip() for e in args.engines.split(',') if e.strip()]
    unknown = [e for e in engines if e not in ENGINE_NAMES]
    if unknown or not engines:
        raise _UsageError(f'unknown engine(s) {unknown}; choose from {",".join(ENGINE_NAMES)}')
    if args.size < 1:
        raise _UsageError('--size must be positive')
    seed = args.seed if args.seed is not None else default_seed()
    records = run_bench(args.workload, args.size, seed, engines, repeat=args.repeat)
    try:
        write_csv(records, args.out)
    except OSError as exc:
        raise _UsageError(f'cannot write {args.out}: {exc.strerror}') from None
    return EXIT_OK


def cmd_codegen(args) -> int:
    from .codegen import generate_matcher_source
    from .net import DiscriminationNet
    sig = _signature(args.signatures)
    patterns = _parse_lines(args.patterns, parse_pattern, sig)
    net = DiscriminationNet(sig)
    for pattern in patterns:
        net.add(pattern)
    spec = generate_matcher_source(net)
    try:
        spec.write(args.out)
    except OSError as exc:
        raise _UsageError(f'cannot write to {args.out}: {exc.strerror}') from None
    print(f'states={spec.state_count} patterns={len(net)}')
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='termweave', description='Pattern matching and term rewriting modulo ACI.')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('match', help='match one pattern against a subject')
    p.add_argument('--signatures', metavar='FILE', help='signature file (default: undeclared heads are plain variadic)')
    p.add_argument('--pattern', required=True, metavar='TEXT', help="pattern, optionally with '; where CONSTRAINT'")
    p.add_argument('--subject', required=True, metavar='TEXT')
    p.add_argument('--all', action='store_true', help='print every match (sorted) instead of the first')
    p.add_argument('--engine', choices=('one2one', 'net'), default='one2one')
    p.set_defaults(func=cmd_match)

    p = sub.add_parser('rewrite', help='rewrite a subject to normal form')
    p.add_argument('--signatures', metavar='FILE')
    p.add_argument('--rules', required=True, metavar='FILE', help="one 'PATTERN -> TEMPLATE [; where C]' per line")
    p.add_argument('--subject', required=True, metavar='TEXT')
    p.add_argument('--max-steps', type=int, default=10000, metavar='N')
    p.add_argument('--trace', action='store_true', help='print one line per rewrite step')
    p.add_argument('--engine', choices=ENGINE_NAMES, default='one2one')
    p.set_defaults(func=cmd_rewrite)

    p = sub.add_parser('bench', help='run a benchmark workload and write CSV')
    p.add_argument('--workload', required=True, choices=sorted(WORKLOADS))
    p.add_argument('--size', type=int, required=True, metavar='N', help='number of subjects')
    p.add_argument('--seed', type=int, metavar='S', help='random seed (default: $TERMWEAVE_SEED or 0)')
    p.add_argument('--engines', default=','.join(ENGINE_NAMES), metavar='LIST')
    p.add_argument('--repeat', type=int, default=5, metavar='K', help='timing repetitions (median is reported)')
    p.add_argument('--out', required=True, metavar='FILE')
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser('codegen', help='generate matcher source from a pattern file')
    p.add_argument('--signatures', metavar='FILE')
    p.add_argument('--patterns', required=True, metavar='FILE')
    p.add_argument('--out', required=True, metavar='DIR')
    p.set_defaults(func=cmd_codegen)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors and 0 for --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (_UsageError, TermweaveError, ValueError) as exc:
        print(f'termweave: error: {exc}', file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':  # pragma: no cover
    sys.exit(main())
