"""
Arbitrary-precision values of convergent MZVs and MZSVs.

Truncated sums are run in mpmath floating point with the same ascending-q
recursion as the exact module, sampled along a ladder of truncation levels,
and extrapolated to p -> oo by a least-squares fit of the tail

    value(p) = L + sum_{i=1..order} sum_{j=0..J} c_ij (log p)^j / p^i

where J is the number of parts equal to 1. With J = 0 and one sample per
unknown this is plain Richardson extrapolation in 1/p. The reported error is
the change in L when the order drops by one; the ladder deepens while that
error is above ctx.target.

Also: pi, Bernoulli numbers, zeta(s) at integers, and continued-fraction
recognition of rationals.
"""

import functools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp, mpf
from pydantic import BaseModel, ConfigDict, ValidationError, field_validator, model_validator
from scipy.special import comb

from zetakit.config import default_ladder, load_config
from zetakit.indices import Index, NotAdmissibleError
from zetakit.truncated import iter_nested_sums

logger = logging.getLogger(__name__)

# Euler-Maclaurin correction terms used for odd zeta values
EM_ORDER = 8
# guard bits carried above ctx.bits in intermediate sums
GUARD_BITS = 16


class PrecisionError(ValueError):
    """Invalid precision context or unreachable precision request."""


# --- Values with error bars ---

def _to_mpf(x) -> mpf:
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


@dataclass(frozen=True)
class NumericValue:
    """A floating value with a first-order absolute error estimate."""

    value: mpf
    err: mpf
    bits: int

    def __post_init__(self):
        if self.err < 0:
            raise PrecisionError(f"error estimate must be >= 0, got {self.err}")

    @classmethod
    def exact(cls, x, bits: int) -> "NumericValue":
        """A rational (or integer) rounded once to `bits`."""
        with mp.workprec(bits):
            value = _to_mpf(x)
            return cls(value, abs(value) * mpf(2) ** (1 - bits), bits)

    def _combine(self, other):
        if isinstance(other, NumericValue):
            return other, min(self.bits, other.bits)
        return None, self.bits

    def __add__(self, other) -> "NumericValue":
        rhs, bits = self._combine(other)
        with mp.workprec(bits):
            if rhs is None:
                return NumericValue(self.value + _to_mpf(other), self.err, bits)
            return NumericValue(self.value + rhs.value, self.err + rhs.err, bits)

    __radd__ = __add__

    def __neg__(self) -> "NumericValue":
        return NumericValue(-self.value, self.err, self.bits)

    def __sub__(self, other) -> "NumericValue":
        return self + (-other)

    def __rsub__(self, other) -> "NumericValue":
        return (-self) + other

    def __mul__(self, other) -> "NumericValue":
        rhs, bits = self._combine(other)
        with mp.workprec(bits):
            if rhs is None:
                scalar = _to_mpf(other)
                return NumericValue(self.value * scalar, self.err * abs(scalar), bits)
            err = abs(self.value) * rhs.err + abs(rhs.value) * self.err + self.err * rhs.err
            return NumericValue(self.value * rhs.value, err, bits)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "NumericValue":
        rhs, bits = self._combine(other)
        with mp.workprec(bits):
            if rhs is None:
                scalar = _to_mpf(other)
                return NumericValue(self.value / scalar, self.err / abs(scalar), bits)
            if rhs.value == 0:
                raise ZeroDivisionError("division by a NumericValue centred at 0")
            quotient = self.value / rhs.value
            err = (self.err + abs(quotient) * rhs.err) / abs(rhs.value)
            return NumericValue(quotient, err, bits)

    def __pow__(self, k: int) -> "NumericValue":
        if not isinstance(k, int) or k < 0:
            raise ValueError(f"only non-negative integer powers, got {k!r}")
        with mp.workprec(self.bits):
            if k == 0:
                return NumericValue(mpf(1), mpf(0), self.bits)
            value = self.value**k
            err = k * abs(self.value) ** (k - 1) * self.err
            return NumericValue(value, err, self.bits)

    def __abs__(self) -> "NumericValue":
        return NumericValue(abs(self.value), self.err, self.bits)

    def __float__(self) -> float:
        return float(self.value)

    def digits(self) -> int:
        """Significant decimal digits the error estimate supports."""
        ceiling = int(self.bits * math.log10(2))
        if self.err == 0:
            return ceiling
        if self.value == 0:
            return 1
        with mp.workprec(self.bits):
            supported = int(mpmath.floor(mpmath.log10(abs(self.value) / self.err)))
        return max(1, min(ceiling, supported))

    def to_string(self, digits: int | None = None) -> str:
        shown = self.digits() if digits is None else min(digits, self.digits())
        with mp.workprec(self.bits):
            return mp.nstr(self.value, max(shown, 1))

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"NumericValue({self.to_string()} ± {mp.nstr(self.err, 3)}, bits={self.bits})"


# --- Precision context ---

class PrecisionContext(BaseModel):
    """Working precision and truncation ladder; immutable and hashable."""

    model_config = ConfigDict(frozen=True)

    bits: int = 192
    ladder: tuple[int, ...] = (1024, 2048, 4096, 8192, 16384)
    order: int = 4
    target: float = 1e-13
    max_rungs: int = 8

    def __init__(self, **data):
        try:
            super().__init__(**data)
        except ValidationError as e:
            raise PrecisionError(str(e)) from e

    @field_validator("bits")
    @classmethod
    def _bits_floor(cls, v: int) -> int:
        if v < 64:
            raise ValueError(f"bits must be >= 64, got {v}")
        return v

    @model_validator(mode="after")
    def _ladder_shape(self):
        ladder = self.ladder
        if not ladder or ladder[0] < 1:
            raise ValueError("ladder must be non-empty with levels >= 1")
        if any(b <= a for a, b in zip(ladder, ladder[1:])):
            raise ValueError(f"ladder must be strictly increasing, got {ladder}")
        if not 1 <= self.order < len(ladder):
            raise ValueError(f"order must satisfy 1 <= order < {len(ladder)}, got {self.order}")
        if self.max_rungs < len(ladder):
            raise ValueError(f"max_rungs ({self.max_rungs}) is below the ladder length ({len(ladder)})")
        return self

    @classmethod
    def default(cls, config: dict | None = None) -> "PrecisionContext":
        config = config or load_config()
        numeric = config["numeric"]
        return cls(
            bits=numeric["bits"],
            ladder=tuple(default_ladder(config)),
            order=numeric["order"],
            target=numeric["target"],
            max_rungs=numeric["max_rungs"],
        )


# --- Constants ---

def const_pi(ctx: PrecisionContext | None = None) -> NumericValue:
    ctx = ctx or PrecisionContext.default()
    with mp.workprec(ctx.bits):
        # 2 ulp of a value in [2, 4)
        return NumericValue(+mp.pi, mpf(2) ** (3 - ctx.bits), ctx.bits)


@functools.lru_cache(maxsize=None)
def _bernoulli(n: int) -> Fraction:
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2:
        return Fraction(0)
    # sum_{k=0}^{n} C(n+1, k) B_k = 0
    total = sum((comb(n + 1, k, exact=True) * _bernoulli(k) for k in range(n)), Fraction(0))
    return -total / (n + 1)


def bernoulli(n: int) -> Fraction:
    """Exact B_n with B_1 = -1/2."""
    if n < 0:
        raise ValueError(f"Bernoulli index must be >= 0, got {n}")
    if n > 1 and n % 2:
        raise ValueError(f"B_{n} is requested for odd n > 1 (it is 0; pass an even index)")
    # fill the cache bottom-up so the recursion stays shallow
    for k in range(0, n, 2):
        _bernoulli(k)
    return _bernoulli(n)


def _rising(s: int, length: int) -> int:
    out = 1
    for t in range(length):
        out *= s + t
    return out


def _em_term(s: int, j: int, N) -> mpf:
    """B_2j / (2j)! * s (s+1) ... (s+2j-2) * N^(-s-2j+1)."""
    coeff = bernoulli(2 * j) * Fraction(_rising(s, 2 * j - 1), math.factorial(2 * j))
    return _to_mpf(coeff) * mpf(N) ** (-s - 2 * j + 1)


@functools.lru_cache(maxsize=None)
def _zeta_int(s: int, bits: int) -> NumericValue:
    if s % 2 == 0:
        n = s // 2
        closed = (-1) ** (n + 1) * bernoulli(2 * n) / (2 * math.factorial(2 * n))
        with mp.workprec(bits + GUARD_BITS):
            value = _to_mpf(closed) * (2 * mp.pi) ** (2 * n)
        with mp.workprec(bits):
            value = +value
            return NumericValue(value, abs(value) * mpf(2) ** (4 - bits), bits)

    with mp.workprec(bits + GUARD_BITS):
        threshold = mpf(2) ** (-bits)
        N = 16
        while abs(_em_term(s, EM_ORDER + 1, N)) > threshold:
            N *= 2
        head = mpmath.fsum(mpf(k) ** (-s) for k in range(1, N))
        tail = mpf(N) ** (1 - s) / (s - 1) + mpf(N) ** (-s) / 2
        tail += mpmath.fsum(_em_term(s, j, N) for j in range(1, EM_ORDER + 1))
        remainder = abs(_em_term(s, EM_ORDER + 1, N))
    logger.debug("zeta(%d): Euler-Maclaurin with N=%d at %d bits", s, N, bits)
    with mp.workprec(bits):
        value = +(head + tail)
        return NumericValue(value, remainder + abs(value) * mpf(2) ** (4 - bits), bits)


def zeta_int(s: int, ctx: PrecisionContext | None = None) -> NumericValue:
    """zeta(s) for integer s >= 2."""
    if not isinstance(s, int) or s < 2:
        raise ValueError(f"zeta(s) needs integer s >= 2, got {s!r}")
    ctx = ctx or PrecisionContext.default()
    return _zeta_int(s, ctx.bits)


def star_twos(n: int, ctx: PrecisionContext | None = None) -> NumericValue:
    """zeta*({2}^n) = 2 (1 - 2^(1-2n)) zeta(2n); 1 for n = 0."""
    ctx = ctx or PrecisionContext.default()
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n == 0:
        return NumericValue.exact(1, ctx.bits)
    return zeta_int(2 * n, ctx) * (2 * (1 - Fraction(2, 4**n)))


def star_twos_one(m: int, ctx: PrecisionContext | None = None) -> NumericValue:
    """zeta*({2}^m, 1) = 2 zeta(2m + 1) for m >= 1."""
    if m < 1:
        raise ValueError(f"m must be >= 1 (zeta*(1) diverges), got {m}")
    return zeta_int(2 * m + 1, ctx) * 2


# --- Extrapolated MZV / MZSV ---

def log_power(i) -> int:
    """Number of parts equal to 1: the top power of log p in the truncation tail."""
    parts = i.parts if isinstance(i, Index) else tuple(i)
    return sum(1 for k in parts if k == 1)


def _mpf_power(q: int, k: int) -> mpf:
    return mpf(q) ** (-k)


def _sample_levels(ladder: tuple[int, ...], refine: int) -> list[int]:
    """Ladder rungs plus refine - 1 geometric points inside each gap."""
    levels = {ladder[0]}
    for lo, hi in zip(ladder, ladder[1:]):
        for t in range(1, refine + 1):
            levels.add(int(round(lo * (hi / lo) ** (t / refine))))
    return sorted(levels)


def _fit_limit(samples: dict[int, mpf], order: int, logs: int, base: int) -> mpf:
    """Least-squares constant term of the tail model on the given samples."""
    basis = [(0, 0)] + [(i, j) for i in range(1, order + 1) for j in range(logs + 1)]
    levels = sorted(samples)
    A = mp.matrix(len(levels), len(basis))
    b = mp.matrix(len(levels), 1)
    for row, p in enumerate(levels):
        t = mpf(base) / p
        lg = mpmath.log(mpf(p) / base)
        for col, (i, j) in enumerate(basis):
            A[row, col] = t**i * lg**j
        b[row] = samples[p]
    solution, _ = mp.qr_solve(A, b)
    return solution[0]


def _extrapolate(parts: tuple[int, ...], star: bool, ctx: PrecisionContext) -> NumericValue:
    logs = log_power(parts)
    unknowns = 1 + ctx.order * (logs + 1)
    rungs = len(ctx.ladder)
    # enough samples for the fit plus two spare rows
    refine = max(1, math.ceil((unknowns + 1) / (rungs - 1)))
    # the fit window slides up one rung per deepening
    window = list(ctx.ladder)
    reached = rungs

    with mp.workprec(ctx.bits + GUARD_BITS):
        stream = iter_nested_sums(parts, star=star, unit=mpf(1), power=_mpf_power)
        samples: dict[int, mpf] = {}
        q = -1
        while True:
            wanted = _sample_levels(tuple(window), refine)
            for p in wanted:
                if p in samples:
                    continue
                while q < p:
                    value = next(stream)
                    q += 1
                samples[p] = value
            used = {p: samples[p] for p in wanted}
            limit = _fit_limit(used, ctx.order, logs, window[0])
            lower = _fit_limit(used, ctx.order - 1, logs, window[0])
            err = abs(limit - lower)
            if err <= ctx.target or reached >= ctx.max_rungs:
                break
            window = window[1:] + [2 * window[-1]]
            reached += 1
            logger.info(
                "deepening ladder for (%s) to %d: extrapolation error %s",
                ",".join(map(str, parts)), window[-1], mp.nstr(err, 3),
            )

    if err > ctx.target:
        logger.warning(
            "(%s): extrapolation error %s above target %s at top level %d",
            ",".join(map(str, parts)), mp.nstr(err, 3), ctx.target, window[-1],
        )
    with mp.workprec(ctx.bits):
        return NumericValue(+limit, err + mpf(2) ** (4 - ctx.bits), ctx.bits)


@functools.lru_cache(maxsize=None)
def _evaluate(parts: tuple[int, ...], star: bool, ctx: PrecisionContext) -> NumericValue:
    if not parts:
        return NumericValue.exact(1, ctx.bits)
    return _extrapolate(parts, star, ctx)


def _numeric(i, star: bool, ctx: PrecisionContext | None) -> NumericValue:
    i = i if isinstance(i, Index) else Index(tuple(i))
    if not i.admissible:
        raise NotAdmissibleError(f"({i}) diverges: the first part must be >= 2")
    ctx = ctx or PrecisionContext.default()
    return _evaluate(i.parts, star, ctx)


def mzsv_numeric(i, ctx: PrecisionContext | None = None) -> NumericValue:
    """zeta*(i) for admissible i; zeta*(empty) = 1."""
    return _numeric(i, True, ctx)


def mzv_numeric(i, ctx: PrecisionContext | None = None) -> NumericValue:
    """zeta(i) for admissible i; zeta(empty) = 1."""
    return _numeric(i, False, ctx)


# --- Rational recognition ---

def _mpf_to_fraction(x: mpf) -> Fraction:
    if x == 0:
        return Fraction(0)
    man, exp = x.man_exp
    # gmpy-backed mpmath hands back mpz parts
    return Fraction(int(man)) * Fraction(2) ** int(exp)


def recognize_rational(v: NumericValue, max_den: int | None = None) -> Fraction | None:
    """First continued-fraction convergent of v with denominator <= max_den
    lying within max(4 err, 2^(-bits/2)) of v; None if there is none.
    """
    if max_den is None:
        max_den = load_config()["recognition"]["max_den"]
    if max_den < 1:
        raise ValueError(f"max_den must be >= 1, got {max_den}")

    with mp.workprec(v.bits):
        threshold = max(4 * v.err, mpf(2) ** (-(v.bits / 2)))
        x = _mpf_to_fraction(v.value)

        # convergents h/k of x
        h_prev, h = 1, math.floor(x)
        k_prev, k = 0, 1
        rest = x - math.floor(x)
        while k <= max_den:
            candidate = Fraction(h, k)
            if abs(_to_mpf(x - candidate)) <= threshold:
                return candidate
            if rest == 0:
                return None
            rest = 1 / rest
            a = math.floor(rest)
            rest -= a
            h_prev, h = h, a * h + h_prev
            k_prev, k = k, a * k + k_prev
    return None
