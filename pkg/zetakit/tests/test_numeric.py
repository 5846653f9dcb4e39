"""
Tests for arbitrary-precision values.

Tests:
- NumericValue error propagation and digit counts
- PrecisionContext validation
- Bernoulli numbers, pi, zeta at integers
- Extrapolated MZV / MZSV values against closed forms
- Continued-fraction recognition
"""

import itertools
import os
import sys
from fractions import Fraction

import mpmath
import pytest
from mpmath import mp, mpf

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from zetakit.config import DEFAULTS
from zetakit.indices import Index, NotAdmissibleError, mzv_dual
from zetakit.numeric import (
    NumericValue,
    PrecisionContext,
    PrecisionError,
    bernoulli,
    const_pi,
    log_power,
    mzsv_numeric,
    mzv_numeric,
    recognize_rational,
    star_twos,
    star_twos_one,
    zeta_int,
)

# Smaller than the shipped defaults; tail error at p = 512 is well below 1e-10
CTX = PrecisionContext(bits=128, ladder=(512, 1024, 2048, 4096, 8192), order=4, target=1e-11, max_rungs=6)


class _IntLike:
    """Integer stand-in that Fraction() does not accept directly."""

    def __init__(self, value):
        self.value = value

    def __int__(self):
        return self.value


class _BinaryFloat:
    """Exposes man_exp like an mpf."""

    def __init__(self, man, exp):
        self.man_exp = (man, exp)


def _compositions(weight: int):
    """Compositions of weight from the cut points between unit steps."""
    for cuts in itertools.product((False, True), repeat=weight - 1):
        parts, run = [], 1
        for cut in cuts:
            if cut:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield tuple(parts)


def close(value: NumericValue, expected, tol=1e-10) -> bool:
    with mp.workprec(value.bits):
        return abs(value.value - expected) < tol


# ===== NumericValue =====

class TestNumericValue:
    """Error propagation."""

    def test_exact(self):
        """exact() rounds once and records a positive error."""
        v = NumericValue.exact(Fraction(1, 3), 64)
        assert abs(float(v) - 1 / 3) < 1e-15
        assert v.err > 0

    def test_add_sums_errors(self):
        """Errors add under addition."""
        a = NumericValue(mpf(1), mpf(2) ** -40, 128)
        b = NumericValue(mpf(2), mpf(2) ** -41, 128)
        total = a + b
        assert total.value == 3
        assert total.err == mpf(2) ** -40 + mpf(2) ** -41

    def test_scalar_multiply(self):
        """Scalars scale the error by their absolute value."""
        v = NumericValue(mpf(2), mpf(2) ** -40, 128) * 3
        assert v.value == 6
        assert v.err == 3 * mpf(2) ** -40

    def test_mixed_bits_takes_minimum(self):
        """Mixed precisions combine at the lower one."""
        a = NumericValue(mpf(1), mpf(0), 128)
        b = NumericValue(mpf(1), mpf(0), 96)
        assert (a * b).bits == 96

    def test_power(self):
        """Powers propagate the error to first order."""
        v = NumericValue(mpf(2), mpf(2) ** -40, 128) ** 3
        assert v.value == 8
        assert v.err == 12 * mpf(2) ** -40

    def test_divide_by_zero(self):
        """Dividing by a value centred at 0 raises."""
        with pytest.raises(ZeroDivisionError):
            NumericValue(mpf(1), mpf(0), 64) / NumericValue(mpf(0), mpf(0), 64)

    def test_digits(self):
        """digits() follows the error estimate."""
        assert NumericValue(mpf(1), mpf(2) ** -40, 128).digits() == 12
        assert NumericValue(mpf(1), mpf(0), 128).digits() == 38

    def test_negative_error_rejected(self):
        """Error estimates cannot be negative."""
        with pytest.raises(PrecisionError):
            NumericValue(mpf(1), mpf(-1), 64)


# ===== PrecisionContext =====

class TestPrecisionContext:
    """Validation and derived contexts."""

    def test_bits_floor(self):
        """Fewer than 64 bits is rejected."""
        with pytest.raises(PrecisionError):
            PrecisionContext(bits=32)

    def test_ladder_must_increase(self):
        """The ladder must be strictly increasing."""
        with pytest.raises(PrecisionError):
            PrecisionContext(ladder=(2048, 1024, 4096))

    def test_order_below_ladder_length(self):
        """The order must leave a spare rung."""
        with pytest.raises(PrecisionError):
            PrecisionContext(ladder=(64, 128, 256), order=3)

    def test_max_rungs(self):
        """max_rungs may not be below the ladder length."""
        with pytest.raises(PrecisionError):
            PrecisionContext(ladder=(64, 128, 256), order=2, max_rungs=2)

    def test_hashable(self):
        """Equal contexts hash equally, so they can key the value cache."""
        twin = PrecisionContext(**CTX.model_dump())
        assert twin == CTX
        assert hash(twin) == hash(CTX)

    def test_default_from_config(self):
        """default() reads bits and ladder from config."""
        ctx = PrecisionContext.default(DEFAULTS)
        assert ctx.bits == 192
        assert ctx.ladder == (1024, 2048, 4096, 8192, 16384)


# ===== Constants =====

class TestConstants:
    """Bernoulli numbers, pi and zeta(s)."""

    def test_bernoulli(self):
        """Low Bernoulli numbers with B_1 = -1/2, and B_12."""
        assert bernoulli(0) == 1
        assert bernoulli(1) == Fraction(-1, 2)
        assert bernoulli(2) == Fraction(1, 6)
        assert bernoulli(12) == Fraction(-691, 2730)

    def test_bernoulli_odd_rejected(self):
        """Odd indices above 1 and negative indices are rejected."""
        with pytest.raises(ValueError):
            bernoulli(3)
        with pytest.raises(ValueError):
            bernoulli(-2)

    def test_pi(self):
        """pi agrees with mpmath at the working precision."""
        with mp.workprec(128):
            assert abs(const_pi(CTX).value - mp.pi) < mpf(2) ** -120

    def test_zeta_even(self):
        """Even zeta values come from the Bernoulli closed form."""
        with mp.workprec(128):
            assert close(zeta_int(2, CTX), mp.pi**2 / 6, 1e-30)
            assert close(zeta_int(6, CTX), mp.pi**6 / 945, 1e-30)

    def test_zeta_odd(self):
        """Odd zeta values agree with mpmath."""
        with mp.workprec(128):
            assert close(zeta_int(3, CTX), mpmath.zeta(3), 1e-30)
            assert close(zeta_int(7, CTX), mpmath.zeta(7), 1e-30)

    def test_zeta_domain(self):
        """zeta(s) needs integer s >= 2."""
        with pytest.raises(ValueError):
            zeta_int(1, CTX)

    def test_star_twos(self):
        """zeta*({2}^n) closed form."""
        with mp.workprec(128):
            assert close(star_twos(2, CTX), 7 * mp.pi**4 / 360, 1e-30)
        assert star_twos(0, CTX).value == 1

    def test_star_twos_one(self):
        """zeta*({2}^m, 1) = 2 zeta(2m+1)."""
        with mp.workprec(128):
            assert close(star_twos_one(1, CTX), 2 * mpmath.zeta(3), 1e-30)
        with pytest.raises(ValueError):
            star_twos_one(0, CTX)


# ===== Extrapolated values =====

class TestExtrapolation:
    """mzv_numeric / mzsv_numeric against known closed forms."""

    def test_log_power(self):
        assert log_power((2, 1, 1)) == 2
        assert log_power((3, 2)) == 0

    def test_zeta_two(self):
        """zeta(2) = pi^2/6."""
        with mp.workprec(128):
            assert close(mzv_numeric((2,), CTX), mp.pi**2 / 6)

    def test_euler_two_one(self):
        """zeta(2,1) = zeta(3), with a log term in the tail."""
        # zeta(2,1) = zeta(3)
        with mp.workprec(128):
            assert close(mzv_numeric((2, 1), CTX), mpmath.zeta(3))

    def test_star_two_one(self):
        """zeta*(2,1) = 2 zeta(3)."""
        # zeta*(2,1) = 2 zeta(3)
        with mp.workprec(128):
            assert close(mzsv_numeric((2, 1), CTX), 2 * mpmath.zeta(3))

    def test_star_three_one(self):
        """zeta*(3,1) = pi^4/72."""
        with mp.workprec(128):
            assert close(mzsv_numeric((3, 1), CTX), mp.pi**4 / 72)

    def test_star_twos_matches_closed_form(self):
        """zeta*(2,2) agrees with the closed form."""
        with mp.workprec(128):
            assert close(mzsv_numeric((2, 2), CTX), star_twos(2, CTX).value)

    def test_empty_index(self):
        """The empty index evaluates to 1."""
        assert mzsv_numeric((), CTX).value == 1

    def test_error_estimate_reported(self):
        """The error estimate is positive and small."""
        v = mzsv_numeric((2, 1), CTX)
        assert 0 < v.err < 1e-8

    def test_divergent(self):
        """Non-admissible indices raise NotAdmissibleError."""
        with pytest.raises(NotAdmissibleError):
            mzsv_numeric((1, 2), CTX)
        with pytest.raises(NotAdmissibleError):
            mzv_numeric((1,), CTX)

    @pytest.mark.parametrize("parts", [(2, 2), (3, 1, 2), (2, 1), (4, 1, 1)])
    def test_order_step_within_error(self, parts):
        """Raising the fit order by one moves the value by no more than the reported errors."""
        lower = mzsv_numeric(parts, PrecisionContext(**{**CTX.model_dump(), "order": 3}))
        upper = mzsv_numeric(parts, CTX)
        step = upper - lower
        assert abs(step.value) <= step.err

    def test_duality_to_weight_eight(self):
        """zeta(i) = zeta(dual i) for every admissible index of weight <= 8."""
        ctx = PrecisionContext.default(DEFAULTS)
        seen = set()
        for weight in range(2, 9):
            for parts in _compositions(weight):
                if parts[0] < 2 or parts in seen:
                    continue
                dual = mzv_dual(Index(parts))
                seen.update({parts, dual.parts})
                gap = mzv_numeric(parts, ctx) - mzv_numeric(dual, ctx)
                assert abs(gap.value) <= max(gap.err, 1e-10), (parts, dual.parts)
        assert len(seen) == sum(2 ** (w - 2) for w in range(2, 9))


# ===== Recognition =====

class TestRecognizeRational:
    """Continued-fraction recognition."""

    def test_coarse_value(self):
        """A loose error admits an early convergent."""
        v = NumericValue(mpf("0.1234567"), mpf("1e-3"), 128)
        assert recognize_rational(v, max_den=10) == Fraction(1, 8)

    def test_exact_fraction(self):
        """An exactly rounded rational is recovered."""
        v = NumericValue.exact(Fraction(11, 8), 128)
        assert recognize_rational(v, max_den=100) == Fraction(11, 8)

    def test_denominator_bound(self):
        """max_den caps the convergents tried."""
        v = NumericValue.exact(Fraction(73, 3421440), 192)
        assert recognize_rational(v, max_den=10**6) is None
        assert recognize_rational(v, max_den=10**8) == Fraction(73, 3421440)

    def test_irrational(self):
        """pi is not recognized at a small bound."""
        with mp.workprec(128):
            v = NumericValue(+mp.pi, mpf(2) ** -120, 128)
        assert recognize_rational(v, max_den=1000) is None

    def test_bad_bound(self):
        with pytest.raises(ValueError):
            recognize_rational(NumericValue.exact(1, 64), max_den=0)

    def test_integer_like_mantissa(self):
        """Mantissa and exponent only need __int__, as with gmpy mpz parts."""
        v = NumericValue(_BinaryFloat(_IntLike(3), _IntLike(-3)), mpf(0), 128)
        assert recognize_rational(v, max_den=100) == Fraction(3, 8)

    def test_gmpy_mantissa(self):
        """mpz mantissas from gmpy2 convert cleanly."""
        gmpy2 = pytest.importorskip("gmpy2")
        v = NumericValue(_BinaryFloat(gmpy2.mpz(11), gmpy2.mpz(-3)), mpf(0), 128)
        assert recognize_rational(v, max_den=100) == Fraction(11, 8)
