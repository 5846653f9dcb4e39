"""
Exact truncated zeta sums and the finite identities built on them.

    zeta_p(k1..kn)  = sum over p >= p1 >  p2 >  ... >  pn >  0
    zeta*_p(k1..kn) = sum over p >= p1 >= p2 >= ... >= pn >= 1
of 1 / (p1^k1 ... pn^kn), with zeta_p(empty) = zeta*_p(empty) = 1 for
every p >= 0. All values are Fractions.

Also here:
  - the weighted chain kernels C_j(A, B) and their two-sided sum identity,
  - the 2x2 generating-function recursions T_q / U_q over truncated
    bivariate power series, and the coefficient identity they imply,
  - the finite-cap telescoping behind the alternating sum of X(k) over a
    2-3-1 pattern, with its two boundary chain sums.

The C_j table and the truncated-value table are module-level caches, so each
worker process keeps its own; share nothing across processes.
"""

import functools
import logging
from fractions import Fraction
from typing import Callable, Iterable

from zetakit.indices import (
    EMPTY_PATTERN,
    Index,
    NotAdmissibleError,
    Pattern,
    PatternError,
    pattern_append_zero,
    pattern_increment_last,
    pattern_prefix,
    pattern_reverse,
    pattern_to_index,
    twos,
)

logger = logging.getLogger(__name__)

_ZERO = Fraction(0)
_ONE = Fraction(1)


# --- Truncated sums ---

def _fraction_power(q: int, k: int) -> Fraction:
    return Fraction(1, q**k)


def iter_nested_sums(parts, *, star: bool, unit=_ONE, power: Callable | None = None):
    """Yield the truncated value of one index at q = 0, 1, 2, ... without end.

    Keeps, for every suffix of the index, its truncated value at level q.
    Each step adds q^-k times the next suffix's value, at level q (star) or
    q - 1 (strict), so summation is ascending in q.

    Args:
        parts: index parts, outermost first
        star: non-strict inequalities when True
        unit: the number 1 in the target arithmetic (Fraction, mpf, ...)
        power: power(q, k) -> q^-k in the target arithmetic
    """
    parts = tuple(parts)
    if power is None:
        power = _fraction_power
    n = len(parts)
    zero = unit - unit
    # sums[i] holds the truncated value of parts[i:]; sums[n] is the empty suffix
    sums = [zero] * n + [unit]
    yield sums[0]

    distinct = set(parts)
    q = 0
    while True:
        q += 1
        weights = {k: power(q, k) for k in distinct}
        if star:
            for i in range(n - 1, -1, -1):
                sums[i] = sums[i] + weights[parts[i]] * sums[i + 1]
        else:
            # outer first: sums[i + 1] still holds its level q - 1 value
            for i in range(n):
                sums[i] = sums[i] + weights[parts[i]] * sums[i + 1]
        yield sums[0]


def nested_sums(parts, levels: Iterable[int], *, star: bool, unit=_ONE,
                power: Callable | None = None) -> dict:
    """Truncated values of one index at several levels from a single pass.

    Returns:
        Dict level -> truncated value.
    """
    wanted = set(levels)
    if not wanted:
        return {}
    if min(wanted) < 0:
        raise ValueError(f"truncation levels must be >= 0, got {sorted(wanted)}")
    out = {}
    stream = iter_nested_sums(parts, star=star, unit=unit, power=power)
    for q, value in zip(range(max(wanted) + 1), stream):
        if q in wanted:
            out[q] = value
    return out


@functools.lru_cache(maxsize=None)
def _truncated_value(parts: tuple[int, ...], p: int, star: bool) -> Fraction:
    return nested_sums(parts, [p], star=star)[p]


def _as_index(i) -> Index:
    return i if isinstance(i, Index) else Index(tuple(i))


def zeta_trunc(i, p: int) -> Fraction:
    """zeta_p(i). Admissibility is not required at finite p."""
    return _truncated_value(_as_index(i).parts, p, False)


def zeta_star_trunc(i, p: int) -> Fraction:
    """zeta*_p(i). Admissibility is not required at finite p."""
    return _truncated_value(_as_index(i).parts, p, True)


def zeta_trunc_ladder(i, levels: Iterable[int]) -> dict[int, Fraction]:
    return nested_sums(_as_index(i).parts, levels, star=False)


def zeta_star_trunc_ladder(i, levels: Iterable[int]) -> dict[int, Fraction]:
    return nested_sums(_as_index(i).parts, levels, star=True)


# --- C_j kernels ---

@functools.lru_cache(maxsize=None)
def c_kernel(j: int, A: int, B: int) -> Fraction:
    """C_j(A, B): sum of 1/(a1^2 ... aj^2) over A >= a1 >= ... >= aj >= B.

    C_{-1}(A, B) = delta_{A,B} A^2 and C_0 = 1; higher j by
    C_j(A, B) = sum_{p=B}^{A} p^-2 C_{j-1}(p, B).
    """
    if j < -1:
        raise ValueError(f"C_j needs j >= -1, got {j}")
    if B < 1 or A < B:
        raise ValueError(f"C_j(A, B) needs A >= B >= 1, got A={A}, B={B}")
    if j == -1:
        return Fraction(A * A) if A == B else _ZERO
    if j == 0:
        return _ONE
    return sum((Fraction(1, p * p) * c_kernel(j - 1, p, B) for p in range(B, A + 1)), _ZERO)


def c_duality_check(j: int, p: int, q: int) -> tuple[Fraction, Fraction]:
    """Both sides of
        sum_{p0=1}^{p} C_j(p, p0) q / (p0 (p0 + q))
      = sum_{q0=1}^{q} C_j(q, q0) p / (q0 (q0 + p))
    for finite p, q >= 1.
    """
    if p < 1 or q < 1:
        raise ValueError(f"p and q must be >= 1, got p={p}, q={q}")
    lhs = sum((c_kernel(j, p, p0) * Fraction(q, p0 * (p0 + q)) for p0 in range(1, p + 1)), _ZERO)
    rhs = sum((c_kernel(j, q, q0) * Fraction(p, q0 * (q0 + p)) for q0 in range(1, q + 1)), _ZERO)
    return lhs, rhs


# --- Generating functions ---

class GFPoly:
    """Bivariate polynomial in x, y with Fraction coefficients.

    Terms x^m y^n with m > M or n > N are dropped at construction and after
    every product, so the caps (M, N) bound every intermediate result.
    """

    __slots__ = ("caps", "coeffs")

    def __init__(self, coeffs: dict | None = None, caps: tuple[int, int] = (0, 0)):
        M, N = caps
        if M < 0 or N < 0:
            raise ValueError(f"caps must be non-negative, got {caps}")
        self.caps = (M, N)
        self.coeffs = {}
        for (m, n), c in (coeffs or {}).items():
            c = Fraction(c)
            if m <= M and n <= N and c != 0:
                self.coeffs[(m, n)] = c

    @classmethod
    def constant(cls, c, caps) -> "GFPoly":
        return cls({(0, 0): c}, caps)

    @classmethod
    def monomial(cls, c, m: int, n: int, caps) -> "GFPoly":
        return cls({(m, n): c}, caps)

    @classmethod
    def geometric(cls, ratio, var: str, caps) -> "GFPoly":
        """(1 - ratio*var)^-1 expanded up to the cap of var."""
        ratio = Fraction(ratio)
        M, N = caps
        if var == "x":
            return cls({(i, 0): ratio**i for i in range(M + 1)}, caps)
        if var == "y":
            return cls({(0, i): ratio**i for i in range(N + 1)}, caps)
        raise ValueError(f"unknown variable '{var}'")

    def _same_caps(self, other: "GFPoly"):
        if self.caps != other.caps:
            raise ValueError(f"cap mismatch: {self.caps} vs {other.caps}")

    def __add__(self, other) -> "GFPoly":
        if not isinstance(other, GFPoly):
            other = GFPoly.constant(other, self.caps)
        self._same_caps(other)
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out.get(key, _ZERO) + c
        return GFPoly(out, self.caps)

    __radd__ = __add__

    def __neg__(self) -> "GFPoly":
        return GFPoly({key: -c for key, c in self.coeffs.items()}, self.caps)

    def __sub__(self, other) -> "GFPoly":
        if not isinstance(other, GFPoly):
            other = GFPoly.constant(other, self.caps)
        return self + (-other)

    def __rsub__(self, other) -> "GFPoly":
        return (-self) + other

    def __mul__(self, other) -> "GFPoly":
        if not isinstance(other, GFPoly):
            scalar = Fraction(other)
            return GFPoly({key: c * scalar for key, c in self.coeffs.items()}, self.caps)
        self._same_caps(other)
        M, N = self.caps
        out: dict = {}
        for (m1, n1), c1 in self.coeffs.items():
            for (m2, n2), c2 in other.coeffs.items():
                m, n = m1 + m2, n1 + n2
                if m <= M and n <= N:
                    out[(m, n)] = out.get((m, n), _ZERO) + c1 * c2
        return GFPoly(out, self.caps)

    __rmul__ = __mul__

    def coefficient(self, m: int, n: int) -> Fraction:
        return self.coeffs.get((m, n), _ZERO)

    def swap_negate(self) -> "GFPoly":
        """P(-y, -x), with caps swapped."""
        M, N = self.caps
        return GFPoly(
            {(n, m): c if (m + n) % 2 == 0 else -c for (m, n), c in self.coeffs.items()},
            (N, M),
        )

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, GFPoly):
            return NotImplemented
        return self.caps == other.caps and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.caps, frozenset(self.coeffs.items())))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for (m, n), c in sorted(self.coeffs.items()):
            mono = "".join(
                f"{v}^{e}" if e > 1 else v for v, e in (("x", m), ("y", n)) if e
            )
            terms.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(terms)


class GFMatrix:
    """2x2 matrix of GFPolys sharing one pair of caps."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        (a, b), (c, d) = rows
        caps = a.caps
        for entry in (b, c, d):
            if entry.caps != caps:
                raise ValueError("matrix entries must share caps")
        self.rows = ((a, b), (c, d))

    @property
    def caps(self) -> tuple[int, int]:
        return self.rows[0][0].caps

    def entry(self, i: int, j: int) -> GFPoly:
        return self.rows[i][j]

    def __matmul__(self, other: "GFMatrix") -> "GFMatrix":
        (a, b), (c, d) = self.rows
        (e, f), (g, h) = other.rows
        return GFMatrix(((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h)))

    def scaled(self, factor: GFPoly) -> "GFMatrix":
        return GFMatrix(tuple(tuple(factor * entry for entry in row) for row in self.rows))

    def apply(self, vec: tuple[GFPoly, GFPoly]) -> tuple[GFPoly, GFPoly]:
        (a, b), (c, d) = self.rows
        u, v = vec
        return a * u + b * v, c * u + d * v


def gf_step_T(q: int, a: int, b: int, c: int, caps: tuple[int, int]) -> GFMatrix:
    """T_q = [[1 + x/q^a, 1/q^b], [0, 1 + y/q^c]]."""
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    one = GFPoly.constant(1, caps)
    return GFMatrix((
        (one + GFPoly.monomial(Fraction(1, q**a), 1, 0, caps), GFPoly.constant(Fraction(1, q**b), caps)),
        (GFPoly(caps=caps), one + GFPoly.monomial(Fraction(1, q**c), 0, 1, caps)),
    ))


def gf_step_U(q: int, a: int, b: int, c: int, caps: tuple[int, int]) -> GFMatrix:
    """U_q = (1 - x/q^c)^-1 (1 - y/q^a)^-1 [[1 - y/q^a, 1/q^b], [0, 1 - x/q^c]]."""
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    one = GFPoly.constant(1, caps)
    inner = GFMatrix((
        (one - GFPoly.monomial(Fraction(1, q**a), 0, 1, caps), GFPoly.constant(Fraction(1, q**b), caps)),
        (GFPoly(caps=caps), one - GFPoly.monomial(Fraction(1, q**c), 1, 0, caps)),
    ))
    factor = GFPoly.geometric(Fraction(1, q**c), "x", caps) * GFPoly.geometric(Fraction(1, q**a), "y", caps)
    return inner.scaled(factor)


def gf_generating(p: int, a: int, b: int, c: int, caps: tuple[int, int],
                  star: bool = False) -> tuple[GFPoly, GFPoly]:
    """(F_p, G_p) = T_p ... T_1 (0, 1)^T, or (F*_p, G*_p) from the U_q.

    Coefficients: [x^m y^n] F_p = zeta_p({a}^m, b, {c}^n), [y^n] G_p = zeta_p({c}^n),
    [x^m y^n] F*_p = zeta*_p({c}^m, b, {a}^n), [y^n] G*_p = zeta*_p({a}^n).
    """
    step = gf_step_U if star else gf_step_T
    vec = (GFPoly(caps=caps), GFPoly.constant(1, caps))
    for q in range(1, p + 1):
        vec = step(q, a, b, c, caps).apply(vec)
    return vec


def fstar_factorization_residual(p: int, a: int, b: int, c: int,
                                 caps: tuple[int, int]) -> GFPoly:
    """F*_p(x, y) - F_p(-y, -x) prod (1 - x/q^c)^-1 prod (1 - y/q^a)^-1."""
    M, N = caps
    fstar, _ = gf_generating(p, a, b, c, caps, star=True)
    f, _ = gf_generating(p, a, b, c, (N, M))
    product = GFPoly.constant(1, caps)
    for q in range(1, p + 1):
        product = product * GFPoly.geometric(Fraction(1, q**c), "x", caps)
        product = product * GFPoly.geometric(Fraction(1, q**a), "y", caps)
    return fstar - f.swap_negate() * product


# --- Coefficient identities ---

def ccbaa_residual(p: int, m: int, n: int, a: int, b: int, c: int) -> Fraction:
    """zeta*_p({c}^m, b, {a}^n) minus
    sum_{k<=m, l<=n} (-1)^(k+l) zeta_p({a}^l, b, {c}^k) zeta*_p({c}^(m-k)) zeta*_p({a}^(n-l)).
    """
    if min(p, m, n) < 0 or min(a, b, c) < 1:
        raise ValueError(f"bad parameters p={p} m={m} n={n} a={a} b={b} c={c}")
    lhs = zeta_star_trunc((c,) * m + (b,) + (a,) * n, p)
    rhs = _ZERO
    for k in range(m + 1):
        for l in range(n + 1):
            term = (
                zeta_trunc((a,) * l + (b,) + (c,) * k, p)
                * zeta_star_trunc((c,) * (m - k), p)
                * zeta_star_trunc((a,) * (n - l), p)
            )
            rhs += term if (k + l) % 2 == 0 else -term
    return lhs - rhs


def star_two_one_residual(m: int, p: int) -> Fraction:
    """zeta*_p({2}^m, 1) - sum_k (-1)^k zeta_p(1, {2}^k) zeta*_p({2}^(m-k))."""
    lhs = zeta_star_trunc(twos(m) + (1,), p)
    rhs = sum(
        ((-1) ** k * zeta_trunc((1,) + twos(k), p) * zeta_star_trunc(twos(m - k), p)
         for k in range(m + 1)),
        _ZERO,
    )
    return lhs - rhs


def main2_finite_residual(m: int, n: int, p: int) -> Fraction:
    """Finite-p form of the product formula for zeta*({2}^m,1) zeta*({2}^n).

    LHS  zeta*_p({2}^m,1,{2}^n) + zeta*_p({2}^(n-1),3,{2}^m)
    RHS  sum_k (-1)^k zeta_p(1,{2}^k) zeta*_p({2}^(m-k)) zeta*_p({2}^n)
       + sum_{k,l>=1} (-1)^(k+l) {zeta_p({2}^l,1,{2}^k) - zeta_p({2}^k,3,{2}^(l-1))}
                                 zeta*_p({2}^(m-k)) zeta*_p({2}^(n-l))
    Holds exactly for m >= 0, n >= 1; the braces vanish only in the limit.
    """
    if m < 0 or n < 1:
        raise ValueError(f"need m >= 0 and n >= 1, got m={m}, n={n}")
    lhs = zeta_star_trunc(twos(m) + (1,) + twos(n), p) + zeta_star_trunc(twos(n - 1) + (3,) + twos(m), p)
    rhs = _ZERO
    star_n = zeta_star_trunc(twos(n), p)
    for k in range(m + 1):
        sign = (-1) ** k
        star_mk = zeta_star_trunc(twos(m - k), p)
        rhs += sign * zeta_trunc((1,) + twos(k), p) * star_mk * star_n
        for l in range(1, n + 1):
            gap = zeta_trunc(twos(l) + (1,) + twos(k), p) - zeta_trunc(twos(k) + (3,) + twos(l - 1), p)
            rhs += sign * (-1) ** l * gap * star_mk * zeta_star_trunc(twos(n - l), p)
    return lhs - rhs


# --- Telescoping over a 2-3-1 pattern ---

def _e_at(p: Pattern, k: int) -> int:
    """e_k with the e_0 = e_n = 1 convention."""
    if k == 0 or k == p.n:
        return 1
    return p.evec[k - 1]


def theorem_sub_patterns(p: Pattern, k: int):
    """The two patterns whose zeta-star values multiply to X(k).

    e_k = 1:  ((j|_k)_+, e|_k)       and ((j'|_{n-k})_+, e'|_{n-k})
    e_k = 3:  ((j|_k)^+, e|_{k-1})   and ((j'|_{n-k})^+, e'|_{n-k-1})
    where j' is the reversal; (j|_0)_+ is the one-entry pattern (0), value 1.
    """
    if p is EMPTY_PATTERN:
        raise PatternError("X(k) needs a non-empty pattern")
    n = p.n
    if not 0 <= k <= n:
        raise PatternError(f"k={k} outside 0..{n}")
    rev = pattern_reverse(p)
    if _e_at(p, k) == 1:
        left = Pattern((0,)) if k == 0 else pattern_append_zero(pattern_prefix(p, k), 1)
        right = Pattern((0,)) if k == n else pattern_append_zero(pattern_prefix(rev, n - k), 1)
    else:
        left = pattern_increment_last(pattern_prefix(p, k))
        right = pattern_increment_last(pattern_prefix(rev, n - k))
    return left, right


def theorem_admissible(p: Pattern) -> bool:
    """Pattern, reverse, and every X(k) factor are admissible."""
    if not (p.admissible and pattern_reverse(p).admissible):
        return False
    return all(
        sub.admissible for k in range(p.n + 1) for sub in theorem_sub_patterns(p, k)
    )


def x_trunc(p: Pattern, k: int, P: int) -> Fraction:
    """X(k) with each zeta-star factor truncated at P."""
    left, right = theorem_sub_patterns(p, k)
    for sub in (left, right):
        if not sub.admissible:
            raise NotAdmissibleError(f"X({k}) of ({p}) has a divergent factor ({sub})")
    return zeta_star_trunc(pattern_to_index(left), P) * zeta_star_trunc(pattern_to_index(right), P)


def chain_sum(blocks, P: int, coupling: Callable[[int], Fraction]) -> Fraction:
    """Nested chain sum with C_j kernels.

    For blocks (j1, e1), ..., (jr, er), outermost first, returns
        sum over P >= v1 >= ... >= vr >= 1 of
        prod_i C_{ji}(v_{i-1}, v_i) v_i^-ei  *  coupling(vr)
    with v0 = P.
    """
    blocks = list(blocks)
    if not blocks:
        raise ValueError("chain_sum needs at least one block")
    j, e = blocks[0]
    weights = {v: c_kernel(j, P, v) * Fraction(1, v**e) for v in range(1, P + 1)}
    for j, e in blocks[1:]:
        weights = {
            v: sum((weights[u] * c_kernel(j, u, v) for u in range(v, P + 1)), _ZERO) * Fraction(1, v**e)
            for v in range(1, P + 1)
        }
    return sum((w * coupling(v) for v, w in weights.items()), _ZERO)


def boundary_E0(p: Pattern, P: int) -> Fraction:
    """E(0) with the outer variables capped at P: coupling q1 / (P + q1)."""
    n = p.n
    # q_n carries e_{n-1}, ..., q_1 carries e_0 = 1
    blocks = [(p.jvec[beta - 1], _e_at(p, beta - 1)) for beta in range(n, 0, -1)]
    return chain_sum(blocks, P, lambda v: Fraction(v, P + v))


def boundary_Fn(p: Pattern, P: int) -> Fraction:
    """F(n) with the outer variables capped at P: coupling p_n / (p_n + P)."""
    n = p.n
    blocks = [(p.jvec[alpha - 1], _e_at(p, alpha)) for alpha in range(1, n + 1)]
    return chain_sum(blocks, P, lambda v: Fraction(v, v + P))


def telescope_residual(p: Pattern, P: int) -> Fraction:
    """sum_k (-1)^k X_P(k) - E_P(0) - (-1)^n F_P(n); exactly 0 for P >= 1."""
    if P < 1:
        raise ValueError(f"cap must be >= 1, got {P}")
    alternating = sum(((-1) ** k * x_trunc(p, k, P) for k in range(p.n + 1)), _ZERO)
    residual = alternating - boundary_E0(p, P) - (-1) ** p.n * boundary_Fn(p, P)
    logger.debug("telescope (%s) P=%d residual=%s, C_j memo %s", p, P, residual, c_kernel.cache_info())
    return residual
