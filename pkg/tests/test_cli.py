import csv
import subprocess
import sys

import pytest

from termweave.cli import main

LIST_PATTERNS = '[1]\n[y_, 0]\n# comment lines are skipped\n[1, x___]\n'
BUBBLE_RULES = '[h___, a_, b_, t___] -> [h___, b_, a_, t___] ; where a > b\n'


@pytest.fixture
def files(tmp_path):
    (tmp_path / 'sig.txt').write_text('op f variadic:0\nop fc variadic:0 commutative\n')
    (tmp_path / 'rules.txt').write_text(BUBBLE_RULES)
    (tmp_path / 'patterns.txt').write_text(LIST_PATTERNS)
    (tmp_path / 'empty.txt').write_text('')
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_match_first(capsys):
    assert run(capsys, 'match', '--pattern', 'f(x_)', '--subject', 'f(a)') == (0, '{x -> a}\n', '')


def test_match_none(capsys):
    code, out, _ = run(capsys, 'match', '--pattern', 'f(x_)', '--subject', 'g(a)')
    assert (code, out) == (1, '')


def test_match_parse_error(capsys):
    code, out, err = run(capsys, 'match', '--pattern', 'f(x_', '--subject', 'f(a)')
    assert code == 2 and out == '' and 'error' in err


def test_match_all_sorted_with_signature(capsys, files):
    code, out, _ = run(capsys, 'match', '--signatures', files / 'sig.txt', '--pattern', 'fc(x___, y__, y__)',
                       '--subject', 'fc(a, b, b, b)', '--all')
    assert (code, out) == (0, '{x -> (a, b), y -> (b)}\n')
    code, out, _ = run(capsys, 'match', '--pattern', '[___, x__, ___] ; where sum(x) == 5',
                       '--subject', '[1, 2, 3, 1, 1, 2]', '--all', '--engine', 'net')
    assert out == '{x -> (2, 3)}\n{x -> (3, 1, 1)}\n'


def test_missing_signature_file(capsys, files):
    code, _, err = run(capsys, 'match', '--signatures', files / 'nope.txt', '--pattern', 'f(x_)', '--subject', 'f(a)')
    assert code == 2 and 'cannot read' in err


def test_rewrite_bubble_sort(capsys, files):
    code, out, _ = run(capsys, 'rewrite', '--rules', files / 'rules.txt', '--subject', '[1, 4, 3, 2]', '--trace')
    lines = out.splitlines()
    assert code == 0
    assert lines[-1] == '[1, 2, 3, 4]'
    assert lines[0] == 'pos=[] rule=0 sigma={a -> 4, b -> 3, h -> (1), t -> (2)}'
    assert len(lines) == 4


def test_rewrite_normal_subject(capsys, files):
    assert run(capsys, 'rewrite', '--rules', files / 'rules.txt', '--subject', '[1, 2]') == (0, '[1, 2]\n', '')


def test_rewrite_step_limit(capsys, files):
    code, out, err = run(capsys, 'rewrite', '--rules', files / 'rules.txt', '--subject', '[3, 1, 2]',
                         '--max-steps', '1')
    assert code == 3 and out == '[1, 3, 2]\n' and 'step limit' in err


def test_rewrite_bad_rule_file(capsys, tmp_path):
    (tmp_path / 'bad.txt').write_text('\n[x_] => [x_]\n')
    code, _, err = run(capsys, 'rewrite', '--rules', tmp_path / 'bad.txt', '--subject', '[1]')
    assert code == 2 and 'bad.txt:2' in err


def test_codegen(capsys, files):
    out_dir = files / 'gen'
    code, out, _ = run(capsys, 'codegen', '--patterns', files / 'patterns.txt', '--out', out_dir)
    assert (code, out) == (0, 'states=9 patterns=3\n')
    assert (out_dir / 'manifest.tsv').read_text().splitlines() == ['0\t[1]', '1\t[y_, 0]', '2\t[1, x___]']
    first = (out_dir / 'matcher.py').read_bytes()
    run(capsys, 'codegen', '--patterns', files / 'patterns.txt', '--out', out_dir)
    assert (out_dir / 'matcher.py').read_bytes() == first


def test_codegen_empty(capsys, files):
    code, out, _ = run(capsys, 'codegen', '--patterns', files / 'empty.txt', '--out', files / 'gen')
    assert (code, out) == (0, 'states=1 patterns=0\n')
    assert (files / 'gen' / 'manifest.tsv').read_text() == ''


def test_codegen_unwritable(capsys, files):
    code, _, err = run(capsys, 'codegen', '--patterns', files / 'patterns.txt', '--out', files / 'empty.txt' / 'x')
    assert code == 2 and 'cannot write' in err


def bench(capsys, tmp_path, name, *extra):
    out = tmp_path / name
    code, _, _ = run(capsys, 'bench', '--out', out, '--repeat', '1', *extra)
    return code, list(csv.DictReader(out.open())) if code == 0 else None


def test_bench_prop_rows_and_determinism(capsys, tmp_path):
    code, rows = bench(capsys, tmp_path, 'a.csv', '--workload', 'prop', '--size', '3', '--seed', '4')
    assert code == 0
    assert list(rows[0]) == ['workload', 'engine', 'subjects', 'patterns', 'wall_ms', 'comparisons', 'matches']
    assert len(rows) == 9
    for i in range(3):
        assert len({r['matches'] for r in rows[3 * i:3 * i + 3]}) == 1
    _, again = bench(capsys, tmp_path, 'b.csv', '--workload', 'prop', '--size', '3', '--seed', '4')
    strip = [{k: v for k, v in r.items() if k != 'wall_ms'} for r in rows]
    assert strip == [{k: v for k, v in r.items() if k != 'wall_ms'} for r in again]


def test_bench_seed_from_environment(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv('TERMWEAVE_SEED', '9')
    _, env_rows = bench(capsys, tmp_path, 'a.csv', '--workload', 'overlap', '--size', '4', '--engines', 'net')
    _, flag_rows = bench(capsys, tmp_path, 'b.csv', '--workload', 'overlap', '--size', '4', '--engines', 'net',
                         '--seed', '9')
    assert [r['matches'] for r in env_rows] == [r['matches'] for r in flag_rows]


def test_bench_errors(capsys, tmp_path):
    assert bench(capsys, tmp_path, 'x.csv', '--workload', 'nope', '--size', '3')[0] == 2
    assert bench(capsys, tmp_path, 'x.csv', '--workload', 'prop', '--size', '3', '--engines', 'fast')[0] == 2
    assert bench(capsys, tmp_path, 'x.csv', '--workload', 'prop', '--size', '0')[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, '-m', 'termweave', 'match', '--pattern', 'f(x_)', '--subject', 'f(a)'],
                          capture_output=True, text=True)
    assert (proc.returncode, proc.stdout) == (0, '{x -> a}\n')
