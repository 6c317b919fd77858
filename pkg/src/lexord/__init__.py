"""Lexicographic orderings of context-free languages and the finite
condensation rank of countable linear orders."""

from .errors import (
    AlphabetMismatch,
    EmptyLanguage,
    EpsilonInLanguage,
    GrammarError,
    GrammarSyntaxError,
    InvalidAddress,
    LexordError,
    NotNormalized,
    NotPrefixLanguage,
    OrderViolation,
    TermSyntaxError,
    WordNotInLanguage,
)
from .grammar import (
    Grammar,
    height,
    load_grammar,
    member,
    parse_grammar,
    reduce,
    render_grammar,
    to_weak_gnf,
)
from .interval import (
    IntervalGrammarResult,
    fc_rank_bound,
    finite_distance,
    interval_grammar,
    is_finite_language,
    sim1_partition,
)
from .lexorder import LexRel, compare, encode_binary, enumerate_window, prefixify
from .ordinal import Ordinal, omega_pow, ord_add, ord_cmp, ord_mul, parse_ordinal
from .terms import (
    CondensationTrace,
    OrderClass,
    OrderTerm,
    classify,
    condense_step,
    fc_rank,
    interval_finite,
    parse_term,
    point_cmp,
    render_term,
    sample_points,
)

__version__ = "0.1.0"

__all__ = [
    "AlphabetMismatch", "EmptyLanguage", "EpsilonInLanguage", "GrammarError",
    "GrammarSyntaxError", "InvalidAddress", "LexordError", "NotNormalized",
    "NotPrefixLanguage", "OrderViolation", "TermSyntaxError", "WordNotInLanguage",
    "Grammar", "height", "load_grammar", "member", "parse_grammar", "reduce",
    "render_grammar", "to_weak_gnf",
    "IntervalGrammarResult", "fc_rank_bound", "finite_distance", "interval_grammar",
    "is_finite_language", "sim1_partition",
    "LexRel", "compare", "encode_binary", "enumerate_window", "prefixify",
    "Ordinal", "omega_pow", "ord_add", "ord_cmp", "ord_mul", "parse_ordinal",
    "CondensationTrace", "OrderClass", "OrderTerm", "classify", "condense_step",
    "fc_rank", "interval_finite", "parse_term", "point_cmp", "render_term", "sample_points",
]
