"""Benchmark workloads and CSV reporting.

Two workloads are available:

``prop``
    Formulas generated backwards from ``T``/``F`` and normalized with the ANF rules.
    ``matches`` counts the (position, rule, substitution) matches of the input formula;
    ``wall_ms`` is the time to rewrite it to normal form.
``overlap``
    A family of patterns sharing a long common prefix and differing only in a trailing
    symbol and a constraint, matched against random subjects.

Each engine runs every subject; rows are written subject by subject.
"""
from __future__ import annotations

import csv
import os
import random
import statistics
import time
from dataclasses import astuple, dataclass, fields
from typing import Callable, List, Sequence

from .constraints import Constraint, Pattern
from .matching import MatchStats
from .parsing import parse_term
from .rewrite import make_engine, replace_all, ReplacementRule
from .signature import parse_signature_file
from .terms import Compound, Integer, Symbol, subterms

__all__ = ['BenchRecord', 'run_bench', 'write_csv', 'WORKLOADS', 'ENGINE_NAMES', 'default_seed',
           'overlap_workload', 'prop_workload']

ENGINE_NAMES = ('one2one', 'net', 'codegen')
REPEAT = 5
# outermost rewriting can swell deep formulas before they collapse; give prop room
PROP_MAX_STEPS = 100_000


@dataclass
class BenchRecord:
    workload: str
    engine: str
    subjects: int  # index of the subject this row measures
    patterns: int
    wall_ms: float
    comparisons: int
    matches: int


def default_seed() -> int:
    return int(os.environ.get('TERMWEAVE_SEED', '0'))


def _median_ms(action: Callable[[], object], repeat: int) -> float:
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        action()
        times.append((time.perf_counter() - start) * 1000.0)
    return statistics.median(times)


# prop

def prop_workload(size: int, seed: int, depth: int = 12):
    from .prop import anf_rules, generate_formula, prop_signature
    sig = prop_signature()
    rng = random.Random(seed)
    formulas = [generate_formula(rng, sig, depth) for _ in range(size)]
    return sig, anf_rules(sig), formulas


def _prop_rows(size, seed, engines, repeat):
    sig, rules, formulas = prop_workload(size, seed)
    prepared = {name: make_engine(rules, sig, name) for name in engines}
    rows = []
    for index, formula in enumerate(formulas):
        for name in engines:
            engine = prepared[name]
            matches = sum(1 for position, sub in subterms(formula) for _ in engine.all(sub, None))
            stats = MatchStats()
            replace_all(formula, rules, sig, PROP_MAX_STEPS, engine=engine, stats=stats)
            wall = _median_ms(lambda: replace_all(formula, rules, sig, PROP_MAX_STEPS, engine=engine), repeat)
            rows.append(BenchRecord('prop', name, index, len(rules), round(wall, 3), stats.comparisons, matches))
    return rows


# overlap

OVERLAP_SIGNATURE = """\
op f fixed:4
op g fixed:3
op h fixed:2
op k fixed:1
"""
OVERLAP_PREFIX = 'f(g(a, b, c), h(k(a), k(b)), x_, '
OVERLAP_SYMBOLS = 20


def overlap_workload(size: int, seed: int, n_patterns: int = 200):
    """Patterns ``f(g(a,b,c), h(k(a),k(b)), x_, sJ) ; where x < K`` and matching subjects."""
    sig = parse_signature_file(OVERLAP_SIGNATURE)
    patterns = []
    for i in range(n_patterns):
        symbol = f's{i % OVERLAP_SYMBOLS}'
        bound = 10 * (i // OVERLAP_SYMBOLS + 1)
        patterns.append(Pattern(parse_term(OVERLAP_PREFIX + symbol + ')', sig), [Constraint.parse(f'x < {bound}')]))
    rng = random.Random(seed)
    prefix = parse_term(OVERLAP_PREFIX + 'a)', sig)
    subjects = []
    for _ in range(size):
        g, h = prefix.args[0], prefix.args[1]
        if rng.random() < 0.2:
            # occasionally break the shared prefix deep inside
            h = Compound('h', [Compound('k', [Symbol('a')]), Compound('k', [Symbol('c')])])
        last = Symbol(f's{rng.randrange(OVERLAP_SYMBOLS + 5)}')
        subjects.append(Compound('f', [g, h, Integer(rng.randrange(120)), last]))
    return sig, patterns, subjects


def _overlap_rows(size, seed, engines, repeat):
    sig, patterns, subjects = overlap_workload(size, seed)
    rules = [ReplacementRule(p, Symbol('matched')) for p in patterns]
    prepared = {name: make_engine(rules, sig, name) for name in engines}
    rows = []
    for index, subject in enumerate(subjects):
        for name in engines:
            engine = prepared[name]
            stats = MatchStats()
            matches = sum(1 for _ in engine.all(subject, stats))
            wall = _median_ms(lambda: sum(1 for _ in engine.all(subject, None)), repeat)
            rows.append(BenchRecord('overlap', name, index, len(patterns), round(wall, 4), stats.comparisons, matches))
    return rows


WORKLOADS = {'prop': _prop_rows, 'overlap': _overlap_rows}


def run_bench(workload: str, size: int, seed: int, engines: Sequence[str] = ENGINE_NAMES,
              repeat: int = REPEAT) -> List[BenchRecord]:
    try:
        runner = WORKLOADS[workload]
    except KeyError:
        raise ValueError(f'unknown workload {workload!r}; choose from {sorted(WORKLOADS)}') from None
    for name in engines:
        if name not in ENGINE_NAMES:
            raise ValueError(f'unknown engine {name!r}; choose from {list(ENGINE_NAMES)}')
    return runner(size, seed, list(engines), repeat)


def write_csv(records: Sequence[BenchRecord], out) -> None:
    """Write records to a path or an open text stream."""
    if isinstance(out, (str, os.PathLike)):
        with open(out, 'w', newline='', encoding='utf-8') as fh:
            write_csv(records, fh)
        return
    writer = csv.writer(out, lineterminator='\n')
    writer.writerow([f.name for f in fields(BenchRecord)])
    for record in records:
        writer.writerow(astuple(record))
