"""Context-free grammars over an ordered alphabet.

Covers the text format, useless-symbol elimination, conversion to weak
Greibach normal form (every right-hand side is a nonempty block of
terminals followed only by nonterminals, and the start symbol occurs on no
right-hand side), the height of a weak-GNF grammar and membership by
leftmost-derivation search.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx

from .errors import (
    EmptyLanguage,
    EpsilonInLanguage,
    GrammarError,
    GrammarSyntaxError,
    NotNormalized,
)

Word = tuple  # tuple[str, ...]
Production = tuple  # (lhs: str, rhs: tuple[str, ...])

EPS = "eps"
_RESERVED = {"->", "|", "<", EPS}


@dataclass(frozen=True, eq=False)
class Grammar:
    """A context-free grammar ``(N, A, P, S)``.

    ``alphabet`` lists the terminals in increasing order.  Nonterminals are
    derived: the start symbol plus every non-terminal symbol mentioned in a
    production.  Equality ignores production order and duplicates.
    """

    alphabet: tuple
    productions: tuple
    start: str

    def __post_init__(self):
        alphabet = tuple(self.alphabet)
        if len(set(alphabet)) != len(alphabet):
            raise GrammarError(f"duplicate alphabet symbol in {alphabet}")
        seen = set()
        prods = []
        for lhs, rhs in self.productions:
            p = (lhs, tuple(rhs))
            if p not in seen:
                seen.add(p)
                prods.append(p)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "productions", tuple(prods))
        terminals = set(alphabet)
        if self.start in terminals:
            raise GrammarError(f"start symbol {self.start!r} is a terminal")
        for lhs, _ in prods:
            if lhs in terminals:
                raise GrammarError(f"production lhs {lhs!r} is a terminal")

    def __eq__(self, other):
        if not isinstance(other, Grammar):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.start == other.start
            and frozenset(self.productions) == frozenset(other.productions)
        )

    def __hash__(self):
        return hash((self.alphabet, self.start, frozenset(self.productions)))

    @cached_property
    def terminals(self) -> frozenset:
        return frozenset(self.alphabet)

    @cached_property
    def rank(self) -> dict:
        return {a: i for i, a in enumerate(self.alphabet)}

    @cached_property
    def nonterminals(self) -> tuple:
        """Nonterminals in declaration order, start first."""
        out = {self.start: None}
        for lhs, rhs in self.productions:
            out.setdefault(lhs, None)
            for s in rhs:
                if s not in self.terminals:
                    out.setdefault(s, None)
        return tuple(out)

    @cached_property
    def rules(self) -> dict:
        """Map nonterminal -> list of right-hand sides, in production order."""
        out = {a: [] for a in self.nonterminals}
        for lhs, rhs in self.productions:
            out[lhs].append(rhs)
        return out

    def is_terminal(self, symbol: str) -> bool:
        return symbol in self.terminals

    @cached_property
    def has_gnf_shape(self) -> bool:
        """Every rhs is terminal+ nonterminal*."""
        for _, rhs in self.productions:
            k = _terminal_prefix_len(rhs, self.terminals)
            if k == 0 or any(s in self.terminals for s in rhs[k:]):
                return False
        return True

    @cached_property
    def weak_gnf(self) -> bool:
        return self.has_gnf_shape and all(
            self.start not in rhs for _, rhs in self.productions
        )

    def word_key(self, word: Sequence[str]) -> tuple:
        """Sort key realising the lexicographic order on words."""
        return tuple(self.rank[a] for a in word)


def _terminal_prefix_len(rhs: Sequence[str], terminals) -> int:
    k = 0
    while k < len(rhs) and rhs[k] in terminals:
        k += 1
    return k


# -- text format -----------------------------------------------------------


def parse_grammar(text: str) -> Grammar:
    alphabet = None
    start = None
    raw_prods: list[tuple[int, str, list[list[str]]]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if stripped.startswith("alphabet:"):
            if alphabet is not None:
                raise GrammarSyntaxError("second alphabet line", lineno)
            alphabet = _parse_alphabet(stripped[len("alphabet:"):], lineno)
        elif stripped.startswith("start:"):
            if start is not None:
                raise GrammarSyntaxError("second start line", lineno)
            toks = stripped[len("start:"):].split()
            if len(toks) != 1:
                raise GrammarSyntaxError("start line needs exactly one symbol", lineno)
            start = toks[0]
        else:
            toks = stripped.split()
            if len(toks) < 2 or toks[1] != "->":
                raise GrammarSyntaxError(f"expected 'X -> ...', got {stripped!r}", lineno)
            alts: list[list[str]] = [[]]
            for tok in toks[2:]:
                if tok == "|":
                    alts.append([])
                elif tok == "->":
                    raise GrammarSyntaxError("unexpected '->'", lineno)
                else:
                    alts[-1].append(tok)
            raw_prods.append((lineno, toks[0], alts))
    if alphabet is None:
        raise GrammarSyntaxError("missing 'alphabet:' line")
    if start is None:
        raise GrammarSyntaxError("undeclared start: missing 'start:' line")
    terminals = set(alphabet)
    if start in terminals or start in _RESERVED:
        raise GrammarSyntaxError(f"start symbol {start!r} is not a nonterminal")
    prods = []
    for lineno, lhs, alts in raw_prods:
        if lhs in terminals or lhs in _RESERVED:
            raise GrammarSyntaxError(f"production lhs {lhs!r} is not a nonterminal", lineno)
        for alt in alts:
            if alt == [EPS]:
                prods.append((lhs, ()))
            elif not alt:
                raise GrammarSyntaxError("empty alternative (use 'eps')", lineno)
            elif EPS in alt:
                raise GrammarSyntaxError("'eps' must stand alone", lineno)
            else:
                prods.append((lhs, tuple(alt)))
    return Grammar(alphabet, tuple(prods), start)


def _parse_alphabet(text: str, lineno: int) -> tuple:
    toks = text.split()
    if not toks:
        return ()
    symbols = toks[0::2]
    seps = toks[1::2]
    if len(toks) % 2 == 0 or any(s != "<" for s in seps):
        raise GrammarSyntaxError("alphabet must read 's1 < s2 < ... < sk'", lineno)
    for s in symbols:
        if s in _RESERVED:
            raise GrammarSyntaxError(f"reserved token {s!r} in alphabet", lineno)
    if len(set(symbols)) != len(symbols):
        dup = next(s for s in symbols if symbols.count(s) > 1)
        raise GrammarSyntaxError(f"duplicate alphabet symbol {dup!r}", lineno)
    return tuple(symbols)


def render_grammar(g: Grammar) -> str:
    lines = [f"alphabet: {' < '.join(g.alphabet)}".rstrip(), f"start: {g.start}"]
    for a in g.nonterminals:
        alts = sorted(" ".join(rhs) if rhs else EPS for rhs in g.rules[a])
        if alts:
            lines.append(f"{a} -> {' | '.join(alts)}")
    return "\n".join(lines) + "\n"


def load_grammar(path) -> Grammar:
    with open(path, encoding="utf-8") as fh:
        return parse_grammar(fh.read())


# -- words -----------------------------------------------------------------


def parse_word(text: str, alphabet: Sequence[str]) -> Word:
    """Read a word: plain characters if every symbol is one character,
    otherwise comma-separated tokens.  ``eps`` or the empty string is the
    empty word."""
    text = text.strip()
    if text in ("", EPS):
        return ()
    if all(len(a) == 1 for a in alphabet):
        symbols = tuple(text)
    else:
        symbols = tuple(t.strip() for t in text.split(","))
    known = set(alphabet)
    bad = [s for s in symbols if s not in known]
    if bad:
        raise GrammarError(f"symbol {bad[0]!r} not in alphabet {tuple(alphabet)}")
    return symbols


def format_word(word: Sequence[str], alphabet: Sequence[str]) -> str:
    if not word:
        return EPS
    if all(len(a) == 1 for a in alphabet):
        return "".join(word)
    return ",".join(word)


# -- cleanup ---------------------------------------------------------------


def productive(g: Grammar) -> set:
    prod: set = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in g.productions:
            if lhs not in prod and all(s in g.terminals or s in prod for s in rhs):
                prod.add(lhs)
                changed = True
    return prod


def reachable(g: Grammar, allowed: Iterable[str] | None = None) -> set:
    """Nonterminals reachable from the start, using only productions whose
    nonterminals all lie in ``allowed`` (default: all)."""
    allowed = set(g.nonterminals) if allowed is None else set(allowed)
    if g.start not in allowed:
        return set()
    seen = {g.start}
    todo = [g.start]
    while todo:
        a = todo.pop()
        for rhs in g.rules[a]:
            nts = [s for s in rhs if s not in g.terminals]
            if all(s in allowed for s in nts):
                for s in nts:
                    if s not in seen:
                        seen.add(s)
                        todo.append(s)
    return seen


def reduce(g: Grammar) -> Grammar:
    """Drop every nonterminal that is unproductive or unreachable."""
    useful = reachable(g, productive(g))
    prods = tuple(
        (lhs, rhs)
        for lhs, rhs in g.productions
        if lhs in useful and all(s in g.terminals or s in useful for s in rhs)
    )
    return Grammar(g.alphabet, prods, g.start)


def is_reduced(g: Grammar) -> bool:
    return reduce(g) == g


def nullable(g: Grammar) -> set:
    null: set = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in g.productions:
            if lhs not in null and all(s in null for s in rhs):
                null.add(lhs)
                changed = True
    return null


# -- weak Greibach normal form ---------------------------------------------


def fresh_name(base: str, taken, prime: bool = True) -> str:
    """Deterministic fresh symbol: ``X'``, ``X'1``, ``X'2`` ... (or ``X``
    itself first when ``prime`` is false)."""
    if not prime and base not in taken:
        return base
    cand = base + "'"
    i = 0
    while cand in taken:
        i += 1
        cand = f"{base}'{i}"
    return cand


def _dedup(seq):
    return list(dict.fromkeys(seq))


def _remove_epsilon(g: Grammar, null: set) -> list:
    out = []
    for lhs, rhs in g.productions:
        spots = [i for i, s in enumerate(rhs) if s in null]
        for drop in itertools.product((False, True), repeat=len(spots)):
            gone = {i for i, d in zip(spots, drop) if d}
            new = tuple(s for i, s in enumerate(rhs) if i not in gone)
            if new:
                out.append((lhs, new))
    return _dedup(out)


def _remove_units(alphabet, prods: list, start: str) -> list:
    g = Grammar(alphabet, tuple(prods), start)
    is_unit = lambda rhs: len(rhs) == 1 and rhs[0] not in g.terminals  # noqa: E731
    out = []
    for a in g.nonterminals:
        closure = [a]
        i = 0
        while i < len(closure):
            for rhs in g.rules[closure[i]]:
                if is_unit(rhs) and rhs[0] not in closure:
                    closure.append(rhs[0])
            i += 1
        for b in closure:
            out.extend((a, rhs) for rhs in g.rules[b] if not is_unit(rhs))
    return _dedup(out)


def to_weak_gnf(g: Grammar) -> Grammar:
    """Equivalent reduced grammar in weak Greibach normal form.

    Raises :class:`EmptyLanguage` or :class:`EpsilonInLanguage` when no such
    grammar exists.  Grammars already of the right shape are only given a
    fresh start symbol when their start occurs on some right-hand side.
    """
    g = reduce(g)
    if not g.productions:
        raise EmptyLanguage(f"start symbol {g.start!r} generates no word")
    if g.start in nullable(g):
        raise EpsilonInLanguage("the empty word is in the language; prefixify first")

    if not g.has_gnf_shape:
        prods = _remove_epsilon(g, nullable(g))
        prods = _remove_units(g.alphabet, prods, g.start)
        g = reduce(Grammar(g.alphabet, tuple(prods), g.start))
        if not g.has_gnf_shape:
            g = _greibach(g)

    if any(g.start in rhs for _, rhs in g.productions):
        taken = set(g.nonterminals) | g.terminals
        s2 = fresh_name(g.start, taken)
        copies = tuple((s2, rhs) for rhs in g.rules[g.start])
        g = Grammar(g.alphabet, copies + g.productions, s2)
    return reduce(g)


def _greibach(g: Grammar) -> Grammar:
    # input: reduced, epsilon-free, unit-free
    terminals = g.terminals
    order = list(g.nonterminals)
    index = {a: i for i, a in enumerate(order)}
    rules = {a: list(g.rules[a]) for a in order}
    taken = set(order) | terminals
    primed = []

    for i, a in enumerate(order):
        changed = True
        while changed:
            changed = False
            new = []
            for rhs in rules[a]:
                head = rhs[0]
                if head in index and index[head] < i:
                    new.extend(d + rhs[1:] for d in rules[head])
                    changed = True
                else:
                    new.append(rhs)
            rules[a] = _dedup(new)
        recursive = [rhs[1:] for rhs in rules[a] if rhs[0] == a]
        if recursive:
            base = [rhs for rhs in rules[a] if rhs[0] != a]
            ap = fresh_name(a, taken)
            taken.add(ap)
            primed.append(ap)
            rules[a] = base + [b + (ap,) for b in base]
            rules[ap] = recursive + [r + (ap,) for r in recursive]

    # every rule of order[i] now starts with a terminal or order[k], k > i
    for a in reversed(order):
        new = []
        for rhs in rules[a]:
            if rhs[0] in terminals:
                new.append(rhs)
            else:
                new.extend(d + rhs[1:] for d in rules[rhs[0]])
        rules[a] = _dedup(new)
    for ap in primed:
        new = []
        for rhs in rules[ap]:
            if rhs[0] in terminals:
                new.append(rhs)
            else:
                new.extend(d + rhs[1:] for d in rules[rhs[0]])
        rules[ap] = _dedup(new)

    # terminals after the leading block become nonterminals
    term_nt: dict = {}
    out = []
    for a in order + primed:
        for rhs in rules[a]:
            k = _terminal_prefix_len(rhs, terminals)
            tail = []
            for s in rhs[k:]:
                if s in terminals:
                    if s not in term_nt:
                        name = fresh_name(f"T{s}", taken, prime=False)
                        taken.add(name)
                        term_nt[s] = name
                    s = term_nt[s]
                tail.append(s)
            out.append((a, rhs[:k] + tuple(tail)))
    out.extend((nt, (t,)) for t, nt in term_nt.items())
    return Grammar(g.alphabet, tuple(out), g.start)


# -- analyses --------------------------------------------------------------


def accessibility_graph(g: Grammar) -> nx.DiGraph:
    """Edge X -> Y iff Y occurs on some right-hand side of X."""
    graph = nx.DiGraph()
    graph.add_nodes_from(g.nonterminals)
    for lhs, rhs in g.productions:
        for s in rhs:
            if s not in g.terminals:
                graph.add_edge(lhs, s)
    return graph


def _require_weak_gnf(g: Grammar) -> Grammar:
    if not g.weak_gnf:
        raise NotNormalized("grammar is not in weak Greibach normal form")
    return reduce(g)


def height(g: Grammar) -> int:
    """Longest strict descent X0, ..., Xn in the accessibility preorder.

    Computed as the longest path of the condensation DAG of the
    accessibility graph restricted to nonterminals reachable from the start.
    """
    g = _require_weak_gnf(g)
    graph = accessibility_graph(g)
    graph = graph.subgraph(nx.descendants(graph, g.start) | {g.start})
    return nx.dag_longest_path_length(nx.condensation(graph))


def member(g: Grammar, word: Sequence[str]) -> bool:
    """Is ``word`` generated by ``g``?

    For grammars of weak-GNF shape this is a leftmost-derivation search in
    which every step consumes at least one terminal.  Other grammars fall
    back to a bounded enumeration.
    """
    w = tuple(word)
    if not g.has_gnf_shape:
        from .lexorder import enumerate_window

        return w in set(enumerate_window(g, len(w)))
    n = len(w)
    seen = set()
    stack = [(0, (g.start,))]
    while stack:
        state = stack.pop()
        if state in seen:
            continue
        seen.add(state)
        pos, tail = state
        if not tail:
            if pos == n:
                return True
            continue
        for rhs in g.rules.get(tail[0], ()):
            k = _terminal_prefix_len(rhs, g.terminals)
            if w[pos:pos + k] != rhs[:k]:
                continue
            new_tail = rhs[k:] + tail[1:]
            # each pending nonterminal still owes at least one terminal
            if pos + k + len(new_tail) <= n:
                stack.append((pos + k, new_tail))
    return False
