"""Moment oracles, words, and the exact polynomial ring."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ncfree.spaces import (
    CumulantPolynomial,
    a_word,
    alpha2_symbol,
    alpha_symbol,
    catalan,
    concat_words,
    formal_moment_space,
    gen_word,
    haar_phi,
    haar_phi2,
    haar_unitary_space,
    kappa2_symbol,
    kappa_symbol,
    semicircular_phi,
    semicircular_phi2,
    semicircular_phi2_closed,
    semicircular_space,
    u_word,
    x_word,
)

symbols = st.sampled_from(
    [kappa_symbol(n) for n in range(1, 4)]
    + [kappa2_symbol(1, 1), kappa2_symbol(1, 2)]
)
monomials = st.lists(symbols, max_size=3)
coeffs = st.one_of(
    st.integers(-9, 9),
    st.fractions(min_value=-9, max_value=9, max_denominator=9),
)


@st.composite
def polynomials(draw):
    acc = CumulantPolynomial.zero()
    for _ in range(draw(st.integers(0, 3))):
        term = CumulantPolynomial.constant(draw(coeffs))
        for sym in draw(monomials):
            term = term * CumulantPolynomial.from_symbol(sym)
        acc = acc + term
    return acc


class TestWords:
    def test_generators(self):
        assert x_word(2) == (("x", 1), ("x", 1))
        assert a_word(1) == (("a", 1),)
        assert u_word((1, -1)) == (("u", 1), ("u", -1))
        assert gen_word("x", 3) == x_word(3)

    def test_concat(self):
        assert concat_words([x_word(1), x_word(2)]) == x_word(3)

    def test_u_word_rejects_bad_signs(self):
        with pytest.raises(ValueError):
            u_word((1, 0))


class TestSemicircular:
    def test_catalan(self):
        assert [catalan(n) for n in range(6)] == [1, 1, 2, 5, 14, 42]

    def test_moments(self):
        assert [semicircular_phi(x_word(n)) for n in range(1, 9)] == [
            0, 1, 0, 2, 0, 5, 0, 14,
        ]

    def test_fluctuations_small(self):
        assert semicircular_phi2(1, 1) == 1
        assert semicircular_phi2(2, 2) == 2
        assert semicircular_phi2(1, 3) == 3
        assert semicircular_phi2(2, 4) == 8
        assert semicircular_phi2(1, 2) == 0

    def test_closed_form_agrees(self):
        for p in range(1, 7):
            for q in range(1, 7):
                assert semicircular_phi2(p, q) == semicircular_phi2_closed(p, q)

    def test_oracle_wiring(self):
        sc = semicircular_space()
        assert sc.phi(x_word(4)) == 2
        assert sc.phi2(x_word(2), x_word(2)) == 2


class TestHaar:
    def test_phi_counts_cancellation(self):
        assert haar_phi(u_word((1, -1))) == 1
        assert haar_phi(u_word((1, 1))) == 0
        assert haar_phi(()) == 1

    def test_phi2_matches_winding(self):
        assert haar_phi2(u_word((1, 1)), u_word((-1, -1))) == 2
        assert haar_phi2(u_word((1, 1)), u_word((1, 1))) == 0
        assert haar_phi2(u_word((1, -1)), u_word((1, -1))) == 0

    def test_oracle_wiring(self):
        hu = haar_unitary_space()
        assert hu.phi(u_word((1, -1, 1, -1))) == 1
        assert hu.phi2(u_word((1,)), u_word((-1,))) == 1


class TestFormal:
    def test_phi_returns_moment_symbols(self):
        fm = formal_moment_space()
        assert fm.phi(a_word(2)) == CumulantPolynomial.from_symbol(alpha_symbol(2))
        got = fm.phi2(a_word(2), a_word(1))
        assert got == CumulantPolynomial.from_symbol(alpha2_symbol(1, 2))

    def test_rejects_other_letters(self):
        with pytest.raises(ValueError):
            formal_moment_space().phi(x_word(2))


class TestSymbols:
    def test_canonical_order(self):
        assert kappa2_symbol(3, 1) == kappa2_symbol(1, 3) == "k1,3"
        assert alpha2_symbol(2, 1) == "a1,2"
        assert kappa_symbol(2) == "k2"


class TestPolynomialRing:
    def test_zero_and_constants(self):
        zero = CumulantPolynomial.zero()
        assert not zero
        assert zero == 0
        assert CumulantPolynomial.constant(3) == 3
        assert CumulantPolynomial.constant(Fraction(1, 2)) == Fraction(1, 2)

    def test_mixed_arithmetic(self):
        k2 = CumulantPolynomial.from_symbol("k2")
        poly = 2 * k2 + 1 - k2
        assert poly == k2 + 1
        assert poly - 1 == k2
        assert (k2 + 1) * (k2 - 1) == k2 * k2 - 1

    def test_power(self):
        k1 = CumulantPolynomial.from_symbol("k1")
        assert k1**3 == k1 * k1 * k1
        assert k1**0 == 1

    def test_sum_collapses_to_scalar(self):
        assert CumulantPolynomial.sum([1, 2, Fraction(1, 2)]) == Fraction(7, 2)
        k1 = CumulantPolynomial.from_symbol("k1")
        assert CumulantPolynomial.sum([k1, 1, -k1]) == 1

    def test_substitute(self):
        k1 = CumulantPolynomial.from_symbol("k1")
        k2 = CumulantPolynomial.from_symbol("k2")
        poly = k2 + k1 * k1
        assert poly.substitute({"k1": 2, "k2": -1}) == 3
        assert poly.substitute({"k1": k2, "k2": 0}) == k2 * k2

    def test_rendering(self):
        k1 = CumulantPolynomial.from_symbol("k1")
        k11 = CumulantPolynomial.from_symbol("k1,1")
        poly = 2 * k1 * k1 - k11
        assert str(poly) == "-k1,1 + 2*k1^2"
        assert poly.to_latex() == "-\\kappa_{1,1} + 2 \\kappa_1^2"

    def test_json_form(self):
        poly = CumulantPolynomial.from_symbol("k2") * 3 + 1
        assert poly.to_json_obj() == [
            {"coeff": 1, "monomial": []},
            {"coeff": 3, "monomial": ["k2"]},
        ]

    def test_json_form_is_integer_only(self):
        poly = CumulantPolynomial.constant(Fraction(1, 2))
        with pytest.raises(ValueError):
            poly.to_json_obj()

    @given(polynomials(), polynomials(), polynomials())
    def test_ring_laws(self, a, b, c):
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    @given(polynomials())
    def test_additive_inverse(self, a):
        assert a - a == 0
        assert a + (-a) == 0
        assert -(-a) == a

    @given(polynomials(), coeffs)
    def test_scalar_action_matches_constant_embedding(self, a, c):
        assert c * a == CumulantPolynomial.constant(c) * a
        assert a + c == a + CumulantPolynomial.constant(c)
