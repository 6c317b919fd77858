import random

import pytest
from hypothesis import given, strategies as st

from lexord.ordinal import (
    OMEGA, ONE, ZERO, Ordinal, OrdinalSyntaxError, omega_pow, ord_add, ord_cmp, ord_mul,
    parse_ordinal, render_ordinal,
)


def W(text):
    return parse_ordinal(text)


ordinals = st.lists(
    st.tuples(st.integers(0, 4), st.integers(0, 3)), max_size=4
).map(lambda ts: Ordinal.of(0) + sum((omega_pow(e) * c for e, c in ts), ZERO))


# independent reference: an ordinal below w^w as a dict exponent -> coefficient
def ref_add(a, b):
    if not b.terms:
        return a
    lead = b.terms[0][0]
    kept = [(e, c) for e, c in a.terms if e > lead]
    same = [c for e, c in a.terms if e == lead]
    head = [(lead, b.terms[0][1] + (same[0] if same else 0))]
    return Ordinal(tuple(kept + head + list(b.terms[1:])))


def ref_mul_by_nat(a, n):
    out = ZERO
    for _ in range(n):
        out = ref_add(out, a)
    return out


class TestExamples:
    def test_cmp(self):
        assert ord_cmp(W("w^2"), W("w*5 + 3")) == 1
        assert ord_cmp(W("w + 1"), W("w + 1")) == 0
        assert ord_cmp(ZERO, ONE) == -1

    def test_add(self):
        assert ord_add(ONE, OMEGA) == OMEGA
        assert ord_add(OMEGA, ONE) == W("w + 1")
        assert ord_add(W("w*2 + 3"), OMEGA) == W("w*3")

    def test_mul(self):
        assert ord_mul(W("w + 1"), Ordinal.of(2)) == W("w*2 + 1")
        assert ord_mul(W("w^3 + w + 7"), ZERO) == ZERO
        assert ord_mul(Ordinal.of(2), OMEGA) == OMEGA

    def test_omega_pow(self):
        assert omega_pow(0) == ONE
        assert omega_pow(1) == OMEGA
        assert omega_pow(2) == W("w^2")


class TestText:
    @pytest.mark.parametrize("text", ["0", "1", "7", "w", "w + 1", "w*3", "w^2 + 1", "w^4*2 + w^2 + w*5 + 3"])
    def test_canonical_text_round_trips(self, text):
        assert render_ordinal(parse_ordinal(text)) == text

    def test_explicit_forms(self):
        assert parse_ordinal("w^2*1 + w^0*3") == W("w^2 + 3")
        assert render_ordinal(parse_ordinal("w^0*2")) == "2"
        assert parse_ordinal("w^1") == OMEGA

    def test_sum_is_ordinal_addition(self):
        assert parse_ordinal("3 + w") == OMEGA

    @pytest.mark.parametrize("bad", ["", "w^", "w*0x", "x", "w + + 1", "-1"])
    def test_rejects(self, bad):
        with pytest.raises(OrdinalSyntaxError):
            parse_ordinal(bad)

    @given(ordinals)
    def test_round_trip(self, a):
        assert parse_ordinal(render_ordinal(a)) == a


class TestLaws:
    @given(ordinals, ordinals, ordinals)
    def test_associativity(self, a, b, c):
        assert ord_add(ord_add(a, b), c) == ord_add(a, ord_add(b, c))
        assert ord_mul(ord_mul(a, b), c) == ord_mul(a, ord_mul(b, c))

    @given(ordinals, ordinals, ordinals)
    def test_left_distributivity(self, a, b, c):
        assert ord_mul(a, ord_add(b, c)) == ord_add(ord_mul(a, b), ord_mul(a, c))

    @given(ordinals, ordinals, ordinals)
    def test_strict_right_monotonicity(self, z, x, y):
        if ord_cmp(x, y) < 0:
            assert ord_cmp(ord_add(z, x), ord_add(z, y)) < 0

    @given(ordinals, ordinals)
    def test_sum_dominates_left_summand(self, a, b):
        assert ord_cmp(a, ord_add(a, b)) <= 0

    @given(ordinals, ordinals, ordinals)
    def test_total_order(self, a, b, c):
        assert ord_cmp(a, b) == -ord_cmp(b, a)
        assert (ord_cmp(a, b) == 0) == (a == b)
        if ord_cmp(a, b) <= 0 and ord_cmp(b, c) <= 0:
            assert ord_cmp(a, c) <= 0

    @given(ordinals, ordinals)
    def test_add_matches_reference(self, a, b):
        assert ord_add(a, b) == ref_add(a, b)

    @given(ordinals, st.integers(0, 6))
    def test_mul_by_natural_is_repeated_addition(self, a, n):
        assert ord_mul(a, Ordinal.of(n)) == ref_mul_by_nat(a, n)

    @given(ordinals, st.integers(1, 4))
    def test_mul_by_omega_power(self, a, k):
        # a * w^k = w^(deg a + k) for nonzero a
        if not a.is_zero:
            assert ord_mul(a, omega_pow(k)) == omega_pow(a.degree + k)

    def test_finite_arithmetic_matches_ints(self):
        rng = random.Random(3)
        for _ in range(200):
            x, y = rng.randrange(50), rng.randrange(50)
            assert ord_add(Ordinal.of(x), Ordinal.of(y)) == Ordinal.of(x + y)
            assert ord_mul(Ordinal.of(x), Ordinal.of(y)) == Ordinal.of(x * y)
            assert ord_cmp(Ordinal.of(x), Ordinal.of(y)) == (x > y) - (x < y)

    def test_operators_and_ints(self):
        assert OMEGA + 1 == W("w + 1")
        assert 1 + OMEGA == OMEGA
        assert OMEGA * 2 == W("w*2")
        assert Ordinal.of(3).is_finite and not OMEGA.is_finite
        assert ONE < OMEGA < W("w + 1") < W("w^2")
