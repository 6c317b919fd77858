"""Fixture catalog: languages with known order types and FC-ranks.

Each entry pairs a weak-GNF grammar over ``0 < 1`` with an order term
describing its lexicographic ordering, the expected rank and class, and
word pairs with known finite-distance status.  :func:`check` cross-checks
all of it.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .grammar import Grammar, format_word, load_grammar, parse_word, to_weak_gnf
from .interval import fc_rank_bound, finite_distance, interval_grammar
from .lexorder import DEFAULT_BOTTOM, encode_binary, encode_word, enumerate_window, prefixify
from .ordinal import Ordinal, parse_ordinal
from .terms import OrderClass, OrderTerm, classify, fc_rank, parse_term

FIXTURE_DIR = Path(__file__).parent / "fixtures"
INTERVAL_PAIRS = 20


@dataclass(frozen=True)
class FixtureEntry:
    name: str
    grammar: Grammar
    raw_grammar: Grammar
    term: OrderTerm
    expected_rank: Ordinal
    expected_class: OrderClass
    witness_pairs: tuple
    window: int = 10
    interval_window: int = 12


@dataclass(frozen=True)
class CheckResult:
    entry: str
    check: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f" ({self.detail})" if self.detail else ""
        return f"{status} {self.entry}: {self.check}{tail}"


def apply_pipeline(g: Grammar, steps, bottom: str = DEFAULT_BOTTOM) -> tuple[Grammar, Callable]:
    """Run ``prefixify`` / ``encode_binary`` / ``gnf`` steps on ``g`` in
    order; also return the map taking words of ``g`` to words of the
    result."""
    alphabets = []
    prefixified = False
    for step in steps:
        if step == "prefixify":
            g = prefixify(g, bottom)
            prefixified = True
        elif step == "encode_binary":
            alphabets.append(g.alphabet)
            g = encode_binary(g)
        elif step == "gnf":
            g = to_weak_gnf(g)
        else:
            raise ValueError(f"unknown pipeline step {step!r}")

    def word_map(w):
        w = tuple(w) + ((bottom,) if prefixified else ())
        for alphabet in alphabets:
            w = encode_word(w, alphabet)
        return w

    return g, word_map


def load_catalog(directory=FIXTURE_DIR) -> list:
    directory = Path(directory)
    with open(directory / "catalog.json", encoding="utf-8") as fh:
        data = json.load(fh)
    entries = []
    for e in data["entries"]:
        raw = load_grammar(directory / e["grammar"])
        g, word_map = apply_pipeline(raw, [*e.get("pipeline", ()), "gnf"])
        pairs = tuple(
            (word_map(parse_word(u, raw.alphabet)), word_map(parse_word(v, raw.alphabet)), bool(exp))
            for u, v, exp in e["witness_pairs"]
        )
        entries.append(
            FixtureEntry(
                name=e["name"],
                grammar=g,
                raw_grammar=raw,
                term=parse_term(e["term"]),
                expected_rank=parse_ordinal(e["expected_rank"]),
                expected_class=OrderClass(e["expected_class"]),
                witness_pairs=pairs,
                window=e.get("window", 10),
                interval_window=e.get("interval_window", 12),
            )
        )
    return entries


def interval_window_mismatches(g: Grammar, u, v, max_len: int) -> list:
    """Differences between the interval grammar's window and the filtered
    window of ``g`` (empty when the construction is right)."""
    key = g.word_key
    expected = [w for w in enumerate_window(g, max_len) if key(u) <= key(w) <= key(v)]
    got = enumerate_window(interval_grammar(g, u, v).gprime, max_len)
    if got == expected:
        return []
    return sorted(set(got) ^ set(expected), key=key)


def random_pairs(words: list, count: int, seed: int) -> list:
    rng = random.Random(seed)
    pairs = []
    if len(words) < 2:
        return pairs
    for _ in range(count):
        i, j = sorted(rng.sample(range(len(words)), 2))
        pairs.append((words[i], words[j]))
    return pairs


def check_entry(e: FixtureEntry, seed: int = 0) -> list:
    results = []
    add = lambda name, ok, detail="": results.append(CheckResult(e.name, name, ok, detail))  # noqa: E731
    show = lambda w: format_word(w, e.grammar.alphabet)  # noqa: E731

    trace = fc_rank(e.term)
    add("rank", trace.rank == e.expected_rank, f"got {trace.rank}, expected {e.expected_rank}")
    cls = classify(e.term)
    add("class", cls == e.expected_class, f"got {cls.value}, expected {e.expected_class.value}")
    bound = fc_rank_bound(e.grammar)
    add("bound", trace.rank <= bound, f"rank {trace.rank} <= bound {bound}")

    for u, v, expected in e.witness_pairs:
        got = finite_distance(e.grammar, u, v)
        add(f"findist {show(u)} {show(v)}", got == expected, f"got {got}, expected {expected}")

    window = enumerate_window(e.grammar, e.window)
    keys = [e.grammar.word_key(w) for w in window]
    add("window sorted", all(a < b for a, b in zip(keys, keys[1:])), f"{len(window)} words")

    interval_words = enumerate_window(e.grammar, e.interval_window)
    bad = 0
    pairs = random_pairs(interval_words, INTERVAL_PAIRS, seed)
    for u, v in pairs:
        if interval_window_mismatches(e.grammar, u, v, e.interval_window):
            bad += 1
    add("interval grammar window", bad == 0 and len(pairs) > 0, f"{len(pairs)} pairs, {bad} mismatches")
    return results


def check(directory=FIXTURE_DIR, seed: int = 0) -> list:
    return [r for e in load_catalog(directory) for r in check_entry(e, seed)]
