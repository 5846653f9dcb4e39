"""
Tests for the harmonic algebra H^1.

Tests:
- NCPoly arithmetic and rendering
- Word <-> index conversion
- Harmonic product, gamma and d
- Z_p as a ring map and Z_p o d = Z_p*
- Finite residual identities (m = 0 product form, star harmonic expansion)
"""

import os
import sys
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from zetakit.halg import (
    NCPoly,
    WordError,
    d_map,
    gamma_map,
    h1_words,
    harmonic_product,
    in_h1,
    index_from_word,
    main2_m0_residual,
    prop23_residual,
    prop_m0_finite_residual,
    star_harmonic_residual,
    word_from_index,
    z,
    zp_eval,
    zp_star_eval,
)
from zetakit.indices import Index


# ===== NCPoly =====

class TestNCPoly:
    """Noncommutative polynomial arithmetic."""

    def test_zero_coefficients_dropped(self):
        """Zero coefficients never appear as terms."""
        assert NCPoly({"xy": 0}).is_zero()

    def test_letters_checked(self):
        """Words may only use x and y."""
        with pytest.raises(WordError):
            NCPoly.word("xz")

    def test_concatenation(self):
        """Multiplication concatenates words."""
        assert z(2) * z(1) == NCPoly.word("xyy")

    def test_scalar_and_sum(self):
        """Scalars and sums combine like terms."""
        poly = z(2) * 3 + z(2) - NCPoly.one()
        assert poly.coefficient("xy") == 4
        assert poly.coefficient("") == -1

    def test_power(self):
        assert z(2) ** 2 == NCPoly.word("xyxy")
        assert z(3) ** 0 == 1

    def test_render(self):
        """render() prints terms in graded-lex order."""
        assert NCPoly({"": 2, "xy": -1}).render() == "2 - xy"
        assert NCPoly.word("xy", Fraction(1, 2)).render() == "1/2·xy"
        assert NCPoly.zero().render() == "0"

    def test_degree_and_weights(self):
        """Degree is the longest word length; weights() lists the term weights."""
        poly = z(3) + z(1) * z(1)
        assert poly.degree() == 3
        assert poly.weights() == {2, 3}
        assert NCPoly.zero().degree() == -1


# ===== Words and indices =====

class TestWords:
    """z_k words and the H^1 subspace."""

    def test_z(self):
        """z(k) is x^(k-1) y."""
        assert z(1) == NCPoly.word("y")
        assert z(3) == NCPoly.word("xxy")
        with pytest.raises(WordError):
            z(0)

    def test_word_index_round_trip(self):
        """Index to word and back recovers the index."""
        assert word_from_index(Index((2, 1, 3))) == "xyyxxy"
        assert index_from_word("xyyxxy") == Index((2, 1, 3))

    def test_not_in_h1(self):
        """Words not ending in y are rejected."""
        assert not in_h1("yx")
        assert in_h1("")
        with pytest.raises(WordError):
            index_from_word("xyx")

    def test_h1_words(self):
        """h1_words lists every H^1 word of a weight."""
        assert h1_words(0) == [""]
        assert h1_words(3) == ["xxy", "xyy", "yxy", "yyy"]
        assert len(h1_words(5)) == 16


# ===== Harmonic product, gamma, d =====

class TestHarmonicProduct:
    """The stuffle product and the d map."""

    def test_z2_squared(self):
        """z2 * z2 = 2 z2z2 + z4."""
        assert harmonic_product(z(2), z(2)) == z(2) * z(2) * 2 + z(4)

    def test_unit(self):
        """The empty word is the unit."""
        assert harmonic_product(NCPoly.one(), z(3)) == z(3)

    def test_commutative(self):
        """The harmonic product commutes."""
        u, v = z(2) * z(1), z(3)
        assert harmonic_product(u, v) == harmonic_product(v, u)

    def test_requires_h1(self):
        """Both factors must lie in H^1."""
        with pytest.raises(WordError):
            harmonic_product(NCPoly.word("yx"), z(1))

    def test_gamma(self):
        """gamma(y) = x + y."""
        assert gamma_map(NCPoly.word("y")) == NCPoly({"x": 1, "y": 1})

    def test_d_yy(self):
        """d(yy) = z2 + z1z1."""
        assert d_map(z(1) * z(1)) == z(2) + z(1) * z(1)

    def test_d_unit(self):
        assert d_map(NCPoly.one()) == 1


# ===== Evaluation =====

class TestEvaluation:
    """Z_p and Z_p*."""

    def test_zp_example(self):
        """Z_p on a single word is the truncated zeta value."""
        assert zp_eval(z(2) * z(1), 2) == Fraction(1, 4)

    def test_zp_star_example(self):
        """Z_p* gives the truncated zeta-star value."""
        assert zp_star_eval(z(2) * z(1), 2) == Fraction(11, 8)

    @pytest.mark.parametrize("weight", [1, 2, 3, 4])
    def test_zp_of_d_is_star(self, weight):
        """Z_p(d(w)) = Z_p*(w) for every word up to weight 4."""
        for word in h1_words(weight):
            w = NCPoly.word(word)
            assert zp_eval(d_map(w), 5) == zp_star_eval(w, 5)

    def test_zp_is_ring_map(self):
        """Z_p turns harmonic products into products."""
        u, v = z(2) * z(1), z(1) + z(3)
        assert zp_eval(harmonic_product(u, v), 6) == zp_eval(u, 6) * zp_eval(v, 6)


# ===== Identities =====

class TestIdentities:
    """Polynomial identity and its finite-p consequences."""

    @pytest.mark.parametrize("m,n", [(0, 0), (1, 0), (0, 1), (1, 1)])
    def test_prop23(self, m, n):
        """The d-expansion of z_c^m z_b z_a^n vanishes."""
        assert prop23_residual(m, n, 2, 1, 2).is_zero()

    def test_prop23_mixed_letters(self):
        """The expansion also vanishes when a, b, c differ."""
        assert prop23_residual(1, 1, 3, 1, 2).is_zero()

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_main2_m0(self, n):
        """The m=0 product form holds at finite p."""
        for p in range(0, 7):
            assert main2_m0_residual(n, p) == 0

    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_star_harmonic(self, n):
        """zeta*_p(1) zeta*_p({2}^n) matches its expansion."""
        assert star_harmonic_residual(n, 6) == 0

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_prop_m0_finite(self, n):
        """The finite form of the m=0 evaluation is exact."""
        for p in range(0, 7):
            assert prop_m0_finite_residual(n, p) == 0

    def test_domains(self):
        """Negative parameters are rejected."""
        with pytest.raises(ValueError):
            main2_m0_residual(0, 3)
        with pytest.raises(ValueError):
            prop23_residual(-1, 0, 2, 1, 2)
