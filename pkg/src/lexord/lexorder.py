"""Lexicographic order on words, prefixification, binary encoding and
sorted bounded enumeration of a grammar's language."""

from __future__ import annotations

import enum
import math
from functools import lru_cache
from typing import Sequence

from .errors import AlphabetMismatch, GrammarError
from .grammar import Grammar, Word, fresh_name

DEFAULT_BOTTOM = "_"


class LexRel(enum.Enum):
    LESS_STRICT = "u <_s v"
    GREATER_STRICT = "v <_s u"
    PROPER_PREFIX_OF_SECOND = "u <_p v"
    SECOND_PROPER_PREFIX_OF_FIRST = "v <_p u"
    EQUAL = "u = v"

    @property
    def lex_sign(self) -> int:
        """-1, 0 or 1 according to the total order <_l."""
        if self in (LexRel.LESS_STRICT, LexRel.PROPER_PREFIX_OF_SECOND):
            return -1
        if self is LexRel.EQUAL:
            return 0
        return 1


def compare(u: Sequence[str], v: Sequence[str], alphabet: Sequence[str]) -> LexRel:
    rank = {a: i for i, a in enumerate(alphabet)}
    for word in (u, v):
        for a in word:
            if a not in rank:
                raise AlphabetMismatch(f"symbol {a!r} not in alphabet {tuple(alphabet)}")
    for a, b in zip(u, v):
        if a != b:
            return LexRel.LESS_STRICT if rank[a] < rank[b] else LexRel.GREATER_STRICT
    if len(u) == len(v):
        return LexRel.EQUAL
    if len(u) < len(v):
        return LexRel.PROPER_PREFIX_OF_SECOND
    return LexRel.SECOND_PROPER_PREFIX_OF_FIRST


def lex_less(u: Sequence[str], v: Sequence[str], alphabet: Sequence[str]) -> bool:
    return compare(u, v, alphabet).lex_sign < 0


def prefixify(g: Grammar, bottom: str = DEFAULT_BOTTOM) -> Grammar:
    """Grammar for ``L(g) . bottom`` with ``bottom`` below every letter.

    The result is a prefix language and ``w -> w bottom`` is an order
    isomorphism onto it.
    """
    if bottom in g.terminals:
        raise GrammarError(f"bottom symbol {bottom!r} already in the alphabet")
    if bottom in g.nonterminals:
        raise GrammarError(f"bottom symbol {bottom!r} is used as a nonterminal")
    start = fresh_name(g.start, set(g.nonterminals) | g.terminals | {bottom})
    prods = ((start, (g.start, bottom)),) + g.productions
    return Grammar((bottom,) + g.alphabet, prods, start)


def block_width(size: int) -> int:
    if size < 1:
        raise GrammarError("cannot encode an empty alphabet")
    return max(1, math.ceil(math.log2(size)))


def binary_code(alphabet: Sequence[str]) -> dict:
    """Map each symbol to its rank as a fixed-width block over ``0 < 1``."""
    width = block_width(len(alphabet))
    return {a: tuple(format(i, f"0{width}b")) for i, a in enumerate(alphabet)}


def encode_word(word: Sequence[str], alphabet: Sequence[str]) -> Word:
    code = binary_code(alphabet)
    return tuple(b for a in word for b in code[a])


def encode_binary(g: Grammar) -> Grammar:
    """Substitute fixed-width binary blocks for the terminals of ``g``.

    Equal block widths make the substitution preserve <_l in both
    directions.  A grammar already over ``0 < 1`` comes back unchanged.
    """
    code = binary_code(g.alphabet)
    clash = {"0", "1"} & set(g.nonterminals)
    if clash:
        raise GrammarError(f"nonterminal named {sorted(clash)[0]!r} clashes with binary alphabet")
    prods = []
    for lhs, rhs in g.productions:
        new = []
        for s in rhs:
            new.extend(code[s] if s in g.terminals else (s,))
        prods.append((lhs, tuple(new)))
    return Grammar(("0", "1"), tuple(prods), g.start)


@lru_cache(maxsize=256)
def _window_by_length(g: Grammar, max_len: int) -> dict:
    """For each nonterminal, its words of length <= max_len bucketed by
    length.  Least fixpoint of the productions, truncated at max_len."""
    buckets = {a: [set() for _ in range(max_len + 1)] for a in g.nonterminals}
    changed = True
    while changed:
        changed = False
        for lhs, rhs in g.productions:
            partial = [set() for _ in range(max_len + 1)]
            partial[0].add(())
            for s in rhs:
                nxt = [set() for _ in range(max_len + 1)]
                if s in g.terminals:
                    for n in range(max_len):
                        nxt[n + 1] = {p + (s,) for p in partial[n]}
                else:
                    sub = buckets[s]
                    for n, ps in enumerate(partial):
                        if not ps:
                            continue
                        for m in range(max_len - n + 1):
                            if sub[m]:
                                nxt[n + m].update(p + q for p in ps for q in sub[m])
                partial = nxt
                if not any(partial):
                    break
            target = buckets[lhs]
            for n, ws in enumerate(partial):
                if not ws <= target[n]:
                    target[n] |= ws
                    changed = True
    return buckets


def enumerate_window(g: Grammar, max_len: int) -> list:
    """All words of L(g) of length at most ``max_len``, sorted by <_l."""
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    buckets = _window_by_length(g, max_len)[g.start]
    words = set().union(*buckets)
    return sorted(words, key=g.word_key)


def prefix_violation(words: Sequence[Word]):
    """Return a pair (x, y) with x a proper prefix of y, or None.

    ``words`` must be sorted by <_l: a proper prefix is then also a prefix
    of its immediate successor, so adjacent pairs suffice.
    """
    for x, y in zip(words, words[1:]):
        if len(x) < len(y) and y[: len(x)] == x:
            return x, y
    return None
