"""Ordinals below w^w in Cantor normal form.

An ordinal is stored as a tuple of ``(exponent, coefficient)`` pairs with
strictly decreasing natural exponents and positive coefficients; the empty
tuple is 0.  Every rank and bound this package produces lies below w^w, so
natural exponents are enough.
"""

from __future__ import annotations

import re
from functools import total_ordering
from typing import Iterable, Tuple

from .errors import LexordError

Term = Tuple[int, int]


class OrdinalSyntaxError(LexordError, ValueError):
    pass


def _canonical(terms: Iterable[Term]) -> tuple[Term, ...]:
    out: list[Term] = []
    for exp, coef in terms:
        if exp < 0 or coef < 0:
            raise ValueError(f"bad CNF term ({exp}, {coef})")
        if coef == 0:
            continue
        if out and out[-1][0] <= exp:
            raise ValueError("CNF exponents must strictly decrease")
        out.append((exp, coef))
    return tuple(out)


@total_ordering
class Ordinal:
    """Immutable ordinal below w^w.

    Supports ``+``, ``*`` and comparisons with other ordinals and with
    non-negative ints.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[Term] = ()):
        object.__setattr__(self, "terms", _canonical(terms))

    def __setattr__(self, name, value):
        raise AttributeError("Ordinal is immutable")

    @classmethod
    def of(cls, value: "Ordinal | int") -> "Ordinal":
        if isinstance(value, Ordinal):
            return value
        if isinstance(value, int) and value >= 0:
            return cls(((0, value),))
        raise TypeError(f"cannot make an ordinal from {value!r}")

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return not self.terms or self.terms[0][0] == 0

    @property
    def degree(self) -> int:
        """Leading exponent; 0 for finite ordinals (including 0)."""
        return self.terms[0][0] if self.terms else 0

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            if other < 0:
                return False
            other = Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __lt__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return ord_cmp(self, other) < 0

    def __add__(self, other):
        if isinstance(other, int):
            other = Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return ord_add(self, other)

    def __radd__(self, other):
        if isinstance(other, int):
            return ord_add(Ordinal.of(other), self)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, int):
            other = Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return ord_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return ord_mul(Ordinal.of(other), self)
        return NotImplemented

    def __str__(self):
        return render_ordinal(self)

    def __repr__(self):
        return f"Ordinal({render_ordinal(self)!r})"


ZERO = Ordinal()
ONE = Ordinal(((0, 1),))
OMEGA = Ordinal(((1, 1),))


def omega_pow(n: int) -> Ordinal:
    """The ordinal w^n; ``omega_pow(0)`` is 1."""
    if n < 0:
        raise ValueError("exponent must be a natural number")
    return Ordinal(((n, 1),))


def ord_cmp(a: Ordinal, b: Ordinal) -> int:
    """Three-way comparison: -1, 0 or 1."""
    # Term lists compare lexicographically; a longer list with an equal
    # prefix is the larger ordinal, which is exactly tuple ordering.
    if a.terms == b.terms:
        return 0
    return -1 if a.terms < b.terms else 1


def ord_add(a: Ordinal, b: Ordinal) -> Ordinal:
    if not b.terms:
        return a
    lead_exp, lead_coef = b.terms[0]
    kept = [t for t in a.terms if t[0] > lead_exp]
    same = [c for e, c in a.terms if e == lead_exp]
    head = (lead_exp, lead_coef + (same[0] if same else 0))
    return Ordinal(kept + [head] + list(b.terms[1:]))


def ord_mul(a: Ordinal, b: Ordinal) -> Ordinal:
    if not a.terms or not b.terms:
        return ZERO
    a_exp, a_coef = a.terms[0]
    result = ZERO
    for exp, coef in b.terms:
        if exp > 0:
            # a * w^e = w^(deg a + e) for a > 0
            part = Ordinal(((a_exp + exp, coef),))
        else:
            part = Ordinal(((a_exp, a_coef * coef),) + a.terms[1:])
        result = ord_add(result, part)
    return result


def render_ordinal(a: Ordinal) -> str:
    if not a.terms:
        return "0"
    parts = []
    for exp, coef in a.terms:
        if exp == 0:
            parts.append(str(coef))
            continue
        base = "w" if exp == 1 else f"w^{exp}"
        parts.append(base if coef == 1 else f"{base}*{coef}")
    return " + ".join(parts)


_TERM_RE = re.compile(r"^(?:w(?:\^(\d+))?(?:\*(\d+))?|(\d+))$")


def parse_ordinal(text: str) -> Ordinal:
    """Parse the textual form produced by :func:`render_ordinal`.

    Accepts ``0``, ``w``, ``w^k``, ``w^k*c``, ``w*c`` and plain naturals
    joined by ``+``.  Summands need not be in normal form; they are added
    with ordinal addition, so ``1 + w`` parses to ``w``.
    """
    pieces = [p.strip() for p in text.strip().split("+")]
    if not pieces or any(not p for p in pieces):
        raise OrdinalSyntaxError(f"malformed ordinal: {text!r}")
    total = ZERO
    for piece in pieces:
        m = _TERM_RE.match(piece.replace(" ", ""))
        if not m:
            raise OrdinalSyntaxError(f"malformed ordinal term: {piece!r}")
        exp_s, coef_s, nat_s = m.groups()
        if nat_s is not None:
            term = Ordinal.of(int(nat_s))
        else:
            exp = 1 if exp_s is None else int(exp_s)
            coef = 1 if coef_s is None else int(coef_s)
            term = Ordinal(((exp, coef),))
        total = ord_add(total, term)
    return total
