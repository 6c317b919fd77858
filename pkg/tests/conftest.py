import random

import pytest

from lexord.grammar import Grammar, parse_grammar

ONE_ZERO = "S -> 0 | 1 A\nA -> 0 | 1 A"
ZERO_ONE = "S -> 1 | 0 A\nA -> 1 | 0 A"
ETA = "S -> 0 1 | 0 0 A | 1 1 A\nA -> 0 1 | 0 0 A | 1 1 A"
OMEGA_OMEGA = "S -> 0 | 1 T B\nT -> 0 | 1 T B\nB -> 0 | 1 B"


def grammar(body: str, alphabet: str = "0 < 1", start: str = "S") -> Grammar:
    """Grammar from production lines, with an alphabet and start header."""
    return parse_grammar(f"alphabet: {alphabet}\nstart: {start}\n{body}\n")


def word(text: str) -> tuple:
    return tuple(text)


def random_grammar(rng: random.Random, nts=("S", "A", "B", "C"), alphabet=("0", "1"),
                   max_rules=3, max_rhs=3) -> Grammar:
    """Arbitrary small grammar; may be non-reduced, ambiguous or empty."""
    symbols = list(nts) + list(alphabet)
    prods = []
    for lhs in nts:
        for _ in range(rng.randint(0, max_rules)):
            prods.append((lhs, tuple(rng.choice(symbols) for _ in range(rng.randint(0, max_rhs)))))
    if not any(lhs == "S" for lhs, _ in prods):
        prods.append(("S", (rng.choice(alphabet),)))
    return Grammar(tuple(alphabet), tuple(prods), "S")


def random_weak_gnf(rng: random.Random, nts=("S", "A", "B", "C"), alphabet=("0", "1")) -> Grammar:
    """Grammar in weak-GNF shape whose start occurs in no right-hand side."""
    inner = [n for n in nts if n != "S"]
    prods = []
    for lhs in nts:
        for _ in range(rng.randint(1, 3)):
            head = tuple(rng.choice(alphabet) for _ in range(rng.randint(1, 2)))
            tail = tuple(rng.choice(inner) for _ in range(rng.randint(0, 2)))
            prods.append((lhs, head + tail))
    return Grammar(tuple(alphabet), tuple(prods), "S")


@pytest.fixture
def rng():
    return random.Random(20240611)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
