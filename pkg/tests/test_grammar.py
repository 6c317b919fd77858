import itertools
import random

import pytest

from lexord.errors import EmptyLanguage, EpsilonInLanguage, GrammarSyntaxError, NotNormalized
from lexord.grammar import (
    Grammar, height, is_reduced, member, parse_grammar, parse_word, format_word, reduce,
    render_grammar, to_weak_gnf,
)
from lexord.lexorder import enumerate_window

from conftest import ONE_ZERO, OMEGA_OMEGA, grammar, random_grammar, random_weak_gnf, word


def all_words(alphabet, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


class TestParse:
    def test_simple(self):
        g = parse_grammar("alphabet: 0 < 1\nstart: S\nS -> 0 | 1 A\nA -> 0 | 1 A")
        assert g.alphabet == ("0", "1")
        assert len(g.nonterminals) == 2
        assert len(g.productions) == 4

    def test_duplicate_alphabet_symbol(self):
        with pytest.raises(GrammarSyntaxError, match="duplicate") as err:
            parse_grammar("alphabet: 0 < 0\nstart: S\nS -> 0")
        assert err.value.lineno == 1

    def test_eps_keyword(self):
        g = parse_grammar("alphabet: a < b < c\nstart: S\nS -> a S b | eps")
        assert ("S", ()) in g.productions
        assert enumerate_window(g, 4) == [(), ("a", "a", "b", "b"), ("a", "b")]

    def test_comments_and_blank_lines(self):
        g = parse_grammar("# a comment\n\nalphabet: 0 < 1\n  # another\nstart: S\nS -> 0\n")
        assert g.productions == (("S", ("0",)),)

    @pytest.mark.parametrize("text, lineno", [
        ("alphabet: 0 < 1\nstart: S\nS = 0", 3),
        ("alphabet: 0 1\nstart: S", 1),
        ("alphabet: 0 < 1\nstart: S T", 2),
        ("alphabet: 0 < 1\nstart: S\nS -> 0 |", 3),
        ("alphabet: 0 < 1\nstart: S\nS -> 0 eps", 3),
        ("alphabet: 0 < 1\nstart: S\n0 -> 1", 3),
        ("alphabet: 0 < 1\nalphabet: 0 < 1\nstart: S", 2),
    ])
    def test_syntax_errors_carry_line_numbers(self, text, lineno):
        with pytest.raises(GrammarSyntaxError) as err:
            parse_grammar(text)
        assert err.value.lineno == lineno

    def test_missing_headers(self):
        with pytest.raises(GrammarSyntaxError, match="start"):
            parse_grammar("alphabet: 0 < 1\nS -> 0")
        with pytest.raises(GrammarSyntaxError, match="alphabet"):
            parse_grammar("start: S\nS -> 0")

    def test_start_must_not_be_terminal(self):
        with pytest.raises(GrammarSyntaxError):
            parse_grammar("alphabet: 0 < 1\nstart: 0")


class TestRender:
    def test_round_trip(self):
        g = grammar(ONE_ZERO)
        assert parse_grammar(render_grammar(g)) == g

    def test_eps_rendered(self):
        g = grammar("S -> 0 S | eps")
        assert "S -> 0 S | eps" in render_grammar(g)

    def test_no_productions(self):
        g = Grammar(("0", "1"), (), "S")
        assert render_grammar(g) == "alphabet: 0 < 1\nstart: S\n"
        assert parse_grammar(render_grammar(g)) == g

    def test_canonical_order(self):
        a = grammar("S -> 1 A | 0\nA -> 1 A | 0")
        b = grammar("A -> 0 | 1 A\nS -> 0 | 1 A")
        assert render_grammar(a).splitlines()[2] == "S -> 0 | 1 A"
        assert a == b

    def test_random_round_trip(self, rng):
        for _ in range(100):
            g = random_grammar(rng)
            assert parse_grammar(render_grammar(g)) == g


class TestWords:
    def test_single_character_symbols(self):
        assert parse_word("0110", ("0", "1")) == ("0", "1", "1", "0")
        assert format_word(("0", "1"), ("0", "1")) == "01"

    def test_multi_character_symbols(self):
        alphabet = ("lo", "hi")
        assert parse_word("hi,lo", alphabet) == ("hi", "lo")
        assert format_word(("hi", "lo"), alphabet) == "hi,lo"

    def test_empty_word(self):
        assert parse_word("eps", ("0", "1")) == ()
        assert format_word((), ("0", "1")) == "eps"


class TestReduce:
    def test_removes_unproductive(self):
        g = grammar("S -> 0 | 1 A\nA -> 0 | 1 A\nB -> 1 B")
        r = reduce(g)
        assert "B" not in r.nonterminals
        assert r == grammar(ONE_ZERO)

    def test_removes_unreachable(self):
        g = grammar("S -> 0\nA -> 1")
        assert reduce(g) == grammar("S -> 0")

    def test_already_reduced_unchanged(self):
        g = grammar(ONE_ZERO)
        assert reduce(g) == g
        assert is_reduced(g)

    def test_empty_language(self):
        r = reduce(grammar("S -> 1 S"))
        assert r.productions == ()
        assert r.start == "S"
        assert enumerate_window(r, 5) == []

    def test_random_idempotent_and_language_preserving(self, rng):
        for _ in range(200):
            g = random_grammar(rng)
            r = reduce(g)
            assert reduce(r) == r
            assert enumerate_window(g, 8) == enumerate_window(r, 8)


def assert_weak_gnf(g):
    assert g.weak_gnf
    assert is_reduced(g)
    for _, rhs in g.productions:
        assert g.start not in rhs


class TestWeakGnf:
    def test_already_in_form(self):
        g = grammar(ONE_ZERO)
        assert to_weak_gnf(g) == g

    def test_start_in_rhs_gets_fresh_start(self):
        g = grammar("S -> 0 | 1 S")
        n = to_weak_gnf(g)
        assert_weak_gnf(n)
        assert n.start == "S'"
        assert n.rules["S'"] == n.rules["S"]
        assert enumerate_window(n, 10) == enumerate_window(g, 10)

    def test_trailing_terminal(self):
        g = grammar("S -> A 0\nA -> 1")
        n = to_weak_gnf(g)
        assert_weak_gnf(n)
        assert enumerate_window(n, 10) == [word("10")]

    def test_left_recursion(self):
        g = grammar("S -> S 0 | 1")
        n = to_weak_gnf(g)
        assert_weak_gnf(n)
        assert enumerate_window(n, 10) == enumerate_window(g, 10)

    def test_epsilon_and_units(self):
        g = grammar("S -> A B | B\nA -> eps | 0 A\nB -> 1 | C\nC -> 0 1")
        n = to_weak_gnf(g)
        assert_weak_gnf(n)
        assert enumerate_window(n, 10) == enumerate_window(g, 10)

    def test_epsilon_in_language(self):
        with pytest.raises(EpsilonInLanguage):
            to_weak_gnf(grammar("S -> 0 S | eps"))

    def test_empty_language(self):
        with pytest.raises(EmptyLanguage):
            to_weak_gnf(grammar("S -> 1 S"))

    def test_deterministic(self):
        g = grammar("S -> S 0 | A 1\nA -> S 1 | 0")
        assert render_grammar(to_weak_gnf(g)) == render_grammar(to_weak_gnf(g))

    def test_random_grammars(self, rng):
        checked = 0
        for _ in range(150):
            g = random_grammar(rng)
            try:
                n = to_weak_gnf(g)
            except EpsilonInLanguage:
                assert () in enumerate_window(g, 0)
                continue
            except EmptyLanguage:
                assert reduce(g).productions == ()
                continue
            assert_weak_gnf(n)
            assert enumerate_window(n, 9) == enumerate_window(g, 9)
            checked += 1
        assert checked >= 50


# oracle: reflexive-transitive closure by plain set iteration, then the longest
# chain in the strict part of the accessibility preorder
def brute_height(g):
    reach = {a: {a} for a in g.nonterminals}
    changed = True
    while changed:
        changed = False
        for lhs, rhs in g.productions:
            for s in rhs:
                if s in reach and not reach[s] <= reach[lhs]:
                    reach[lhs] |= reach[s]
                    changed = True
    nodes = reach[g.start]
    memo = {}

    def longest(x):
        if x not in memo:
            memo[x] = max(
                [1 + longest(y) for y in reach[x] if y in nodes and x not in reach[y]], default=0
            )
        return memo[x]

    return max(longest(x) for x in nodes)


def rename(g, mapping):
    sub = lambda s: mapping.get(s, s)  # noqa: E731
    return Grammar(g.alphabet, tuple((sub(l), tuple(map(sub, r))) for l, r in g.productions), sub(g.start))


class TestHeight:
    @pytest.mark.parametrize("body, expected", [
        ("S -> 0 | 1", 0),
        (ONE_ZERO, 1),
        (OMEGA_OMEGA, 2),
    ])
    def test_examples(self, body, expected):
        g = grammar(body)
        assert height(g) == expected == brute_height(g)

    def test_requires_weak_gnf(self):
        with pytest.raises(NotNormalized):
            height(grammar("S -> 0 | 1 S"))
        with pytest.raises(NotNormalized):
            height(grammar("S -> A 0\nA -> 1"))

    def test_random_against_oracle(self, rng):
        for _ in range(200):
            g = reduce(random_weak_gnf(rng))
            if not g.productions:
                continue
            h = height(g)
            assert h == brute_height(g)
            assert h <= len(g.nonterminals) - 1

    def test_renaming_invariance(self, rng):
        for _ in range(100):
            g = reduce(random_weak_gnf(rng))
            if not g.productions:
                continue
            names = list(g.nonterminals)
            shuffled = names[:]
            rng.shuffle(shuffled)
            mapping = {a: f"N{b}" for a, b in zip(names, shuffled)}
            assert height(rename(g, mapping)) == height(g)


class TestMember:
    def test_examples(self):
        g = grammar(ONE_ZERO)
        assert member(g, word("110"))
        assert not member(g, word("011"))
        assert member(grammar(OMEGA_OMEGA), word("10110"))

    def test_empty_word(self):
        assert not member(grammar(ONE_ZERO), ())

    def test_against_window_on_weak_gnf(self, rng):
        for _ in range(50):
            g = reduce(random_weak_gnf(rng))
            window = set(enumerate_window(g, 8))
            for w in all_words(g.alphabet, 8):
                assert member(g, w) == (w in window)

    def test_against_window_on_arbitrary_grammars(self):
        rng = random.Random(11)
        for _ in range(30):
            g = random_grammar(rng)
            window = set(enumerate_window(g, 6))
            for w in all_words(g.alphabet, 6):
                assert member(g, w) == (w in window)
