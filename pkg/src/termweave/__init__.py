"""termweave: pattern matching and rewriting modulo associativity, commutativity and one-identity.

The main entry points:

* :func:`parse_term`, :func:`parse_pattern` and :class:`SignatureTable` build terms;
* :func:`match` matches one pattern (one-to-one);
* :class:`DiscriminationNet` matches many patterns at once (many-to-one);
* :func:`generate_matcher_source` compiles a net to Python source;
* :func:`replace_all` rewrites with :class:`ReplacementRule` lists.
"""
from .errors import CodegenError, ParseError, SignatureError, SubstitutionError, TermweaveError
from .terms import LIST_HEAD, PLUS, REGULAR, STAR, Compound, Integer, Symbol, Term, Wildcard, subterms, variables
from .signature import OperationSignature, SignatureTable, parse_signature_file
from .canonical import canonicalize, make_compound, term_equal_aci
from .parsing import parse_pattern, parse_raw, parse_term, validate
from .substitution import Substitution, substitute
from .constraints import Constraint, Pattern, register_predicate
from .diophantine import solve_nonneg
from .bipartite import BipartiteGraph, enumerate_maximum_matchings, hopcroft_karp
from .matching import (MatchStats, SequenceVariable, distribute_sequence_vars, match, match_commutative,
                       match_sequence)
from .net import DiscriminationNet
from .codegen import GeneratedMatcherSpec, generate_matcher_source, load_matcher
from .rewrite import ReplacementRule, RewriteReport, apply_once, match_all_positions, parse_rule, replace_all

__all__ = [
    'TermweaveError', 'ParseError', 'SignatureError', 'SubstitutionError', 'CodegenError',
    'Term', 'Integer', 'Symbol', 'Compound', 'Wildcard', 'REGULAR', 'PLUS', 'STAR', 'LIST_HEAD',
    'subterms', 'variables',
    'OperationSignature', 'SignatureTable', 'parse_signature_file',
    'canonicalize', 'make_compound', 'term_equal_aci',
    'parse_term', 'parse_pattern', 'parse_raw', 'validate',
    'Substitution', 'substitute',
    'Constraint', 'Pattern', 'register_predicate',
    'solve_nonneg',
    'BipartiteGraph', 'hopcroft_karp', 'enumerate_maximum_matchings',
    'MatchStats', 'SequenceVariable', 'match', 'match_sequence', 'match_commutative', 'distribute_sequence_vars',
    'DiscriminationNet',
    'GeneratedMatcherSpec', 'generate_matcher_source', 'load_matcher',
    'ReplacementRule', 'RewriteReport', 'apply_once', 'replace_all', 'match_all_positions', 'parse_rule',
]
__version__ = '0.1.0'
