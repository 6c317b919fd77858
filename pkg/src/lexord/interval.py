"""Interval grammars and the finite-distance relation on a CF prefix language.

Given a weak-GNF grammar ``g`` for a prefix language ``L`` and words
``u <_l v`` of ``L``, :func:`interval_grammar` builds a grammar for
``{w in L : u <=_s w <=_s v}`` from the finitely many leftmost derivations
whose terminal prefix stays a prefix of ``u`` or ``v``.  Finiteness of that
interval language decides whether ``u`` and ``v`` are at finite distance.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

import networkx as nx

from .errors import NotNormalized, NotPrefixLanguage, OrderViolation, WordNotInLanguage
from .grammar import (
    Grammar,
    Word,
    _terminal_prefix_len,
    accessibility_graph,
    fresh_name,
    height,
    member,
    reduce,
)
from .lexorder import LexRel, compare, enumerate_window, prefix_violation
from .ordinal import ONE, Ordinal, omega_pow

PREFIX_CHECK_MAX_LEN = 16


@dataclass(frozen=True)
class DerivationState:
    prefix: Word
    tail: tuple


@dataclass(frozen=True)
class IntervalGrammarResult:
    gprime: Grammar
    derivation_count: int
    added_productions: tuple

    def stats(self) -> dict:
        return {
            "derivation_count": self.derivation_count,
            "added_productions": len(self.added_productions),
        }


def _is_prefix(x: Word, y: Word) -> bool:
    return len(x) <= len(y) and y[: len(x)] == x


def check_prefix_window(g: Grammar, max_len: int = PREFIX_CHECK_MAX_LEN) -> None:
    """Best-effort prefix-language check on a bounded window."""
    bad = prefix_violation(enumerate_window(g, max_len))
    if bad:
        x, y = bad
        raise NotPrefixLanguage(f"{''.join(x)!r} is a proper prefix of {''.join(y)!r}")


def _validate(g: Grammar, u: Word, v: Word) -> None:
    if not g.weak_gnf:
        raise NotNormalized("interval construction needs a weak-GNF grammar")
    for w in (u, v):
        if not member(g, w):
            raise WordNotInLanguage(f"{''.join(w)!r} is not in the language")
    if compare(u, v, g.alphabet).lex_sign >= 0:
        raise OrderViolation("need u <_l v")
    check_prefix_window(g, min(PREFIX_CHECK_MAX_LEN, max(len(u), len(v)) + 2))


def interval_grammar(g: Grammar, u: Sequence[str], v: Sequence[str]) -> IntervalGrammarResult:
    u, v = tuple(u), tuple(v)
    _validate(g, u, v)
    rules = g.rules
    start = fresh_name(g.start, set(g.nonterminals) | g.terminals)

    added = []
    seen = {DerivationState((), (g.start,))}
    queue = deque(seen)
    while queue:
        state = queue.popleft()
        if not state.tail:
            continue
        head, rest = state.tail[0], state.tail[1:]
        for rhs in rules[head]:
            k = _terminal_prefix_len(rhs, g.terminals)
            w = state.prefix + rhs[:k]
            p = rhs[k:] + rest
            if _is_prefix(w, u) or _is_prefix(w, v):
                nxt = DerivationState(w, p)
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
            elif (
                compare(u, w, g.alphabet) is LexRel.LESS_STRICT
                and compare(w, v, g.alphabet) is LexRel.LESS_STRICT
            ):
                added.append((start, w + p))

    added = list(dict.fromkeys(added))
    prods = [(start, u), (start, v)] + added + list(g.productions)
    gprime = Grammar(g.alphabet, tuple(prods), start)
    return IntervalGrammarResult(gprime, len(seen), tuple(added))


def is_finite_language(g: Grammar) -> bool:
    """Finiteness of L(g) for a weak-GNF grammar: a cycle among useful
    nonterminals pumps at least one terminal per turn."""
    r = reduce(g)
    if not r.has_gnf_shape:
        raise NotNormalized("finiteness test needs weak-GNF shape")
    if not r.productions:
        return True
    return nx.is_directed_acyclic_graph(accessibility_graph(r))


def finite_distance(g: Grammar, u: Sequence[str], v: Sequence[str]) -> bool:
    u, v = tuple(u), tuple(v)
    rel = compare(u, v, g.alphabet)
    if rel is LexRel.EQUAL:
        if not member(g, u):
            raise WordNotInLanguage(f"{''.join(u)!r} is not in the language")
        return True
    if rel.lex_sign > 0:
        u, v = v, u
    return is_finite_language(interval_grammar(g, u, v).gprime)


def sim1_partition(g: Grammar, max_len: int) -> list:
    """Split the sorted window into its ~1 classes.

    Classes of ~1 are intervals of L, so deciding consecutive window words
    is enough to recover the partition.
    """
    window = enumerate_window(g, max_len)
    classes: list = []
    for w in window:
        if classes and finite_distance(g, classes[-1][-1], w):
            classes[-1].append(w)
        else:
            classes.append([w])
    return classes


def fc_rank_bound(g: Grammar) -> Ordinal:
    """w^height(g) + 1, the bound on the FC-rank of scattered intervals."""
    return omega_pow(height(g)) + ONE
