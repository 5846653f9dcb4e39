"""
Identity checkers.

Every checker returns an IdentityReport. Exact checkers compare Fractions (or
polynomials) at finite truncation and pass only on a literal zero residual.
Numeric checkers compare NumericValues and pass when |lhs - rhs| is within
tolerance(weight, bits). Conjecture instances never fail: a value that is
not recognized as a rational multiple of the expected power of pi is
reported as "unrecognized".

CHECKERS maps identity ids to checkers for the CLI.
"""

import itertools
import logging
import math
from collections import Counter
from fractions import Fraction
from typing import Any, Callable, Literal, NamedTuple

from mpmath import mp
from pydantic import BaseModel, SerializationInfo, field_serializer
from scipy.special import comb

from zetakit.halg import (
    NCPoly,
    d_map,
    prop23_residual,
    prop_m0_finite_residual,
    zp_eval,
    zp_star_eval,
)
from zetakit.indices import (
    Index,
    NotAdmissibleError,
    Pattern,
    PatternError,
    alternating_evec,
    pattern_append_zero,
    pattern_increment_last,
    pattern_to_index,
    twos,
)
from zetakit.numeric import (
    NumericValue,
    PrecisionContext,
    const_pi,
    mzsv_numeric,
    recognize_rational,
    star_twos,
    star_twos_one,
    zeta_int,
)
from zetakit.truncated import (
    GFPoly,
    c_duality_check,
    ccbaa_residual,
    main2_finite_residual,
    telescope_residual,
    theorem_admissible,
    theorem_sub_patterns,
)

logger = logging.getLogger(__name__)


class DivergentIdentityError(ValueError):
    """Identity requested at parameters where both sides diverge."""


def tolerance(weight: int, bits: int) -> float:
    """Numeric pass threshold: max(1e-10, 2^(weight - bits/3))."""
    return max(1e-10, 2.0 ** (weight - bits / 3))


# --- Reports ---

def render_value(value, digits: int | None = None, short: bool = False):
    """JSON-friendly text for a report operand."""
    if value is None:
        return None
    if isinstance(value, NumericValue):
        if short:
            with mp.workprec(value.bits):
                return mp.nstr(value.value, 5)
        return value.to_string(digits)
    if isinstance(value, NCPoly):
        return value.render()
    if isinstance(value, GFPoly):
        return repr(value)
    return str(value)


def _is_zero(value) -> bool:
    if isinstance(value, (NCPoly, GFPoly)):
        return value.is_zero()
    return value == 0


def _jsonable(value):
    if isinstance(value, (tuple, list)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (Pattern, Index, Fraction)):
        return str(value)
    return value


class IdentityReport(BaseModel):
    """One checked instance of one identity."""

    identity: str
    params: dict[str, Any]
    lhs: Any = None
    rhs: Any = None
    residual: Any = None
    tolerance: float
    method: Literal["exact", "numeric"]
    status: Literal["pass", "fail", "unrecognized"]
    precision_bits: int | None = None
    ladder: list[int] | None = None

    @field_serializer("lhs", "rhs", "residual")
    def _serialize_operand(self, value, info: SerializationInfo):
        digits = (info.context or {}).get("digits")
        return render_value(value, digits, short=info.field_name == "residual")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_record(self, digits: int | None = None) -> dict:
        return self.model_dump(mode="json", context={"digits": digits})


def _exact_report(identity: str, params: dict, residual, lhs=None, rhs=None) -> IdentityReport:
    status = "pass" if _is_zero(residual) else "fail"
    if status == "fail":
        logger.warning("%s %s: nonzero exact residual %s", identity, params, render_value(residual))
    return IdentityReport(
        identity=identity,
        params={k: _jsonable(v) for k, v in params.items()},
        lhs=lhs,
        rhs=rhs,
        residual=residual,
        tolerance=0.0,
        method="exact",
        status=status,
    )


def _numeric_report(identity: str, params: dict, lhs: NumericValue, rhs: NumericValue,
                    weight: int, ctx: PrecisionContext, status: str | None = None) -> IdentityReport:
    residual = lhs - rhs
    tol = tolerance(weight, ctx.bits)
    if status is None:
        status = "pass" if abs(residual.value) <= tol else "fail"
    if status == "fail":
        logger.warning("%s %s: residual %s above tolerance %g",
                       identity, params, render_value(residual, short=True), tol)
    return IdentityReport(
        identity=identity,
        params={k: _jsonable(v) for k, v in params.items()},
        lhs=lhs,
        rhs=rhs,
        residual=residual,
        tolerance=tol,
        method="numeric",
        status=status,
        precision_bits=ctx.bits,
        ladder=list(ctx.ladder),
    )


def _ctx(ctx: PrecisionContext | None) -> PrecisionContext:
    return ctx or PrecisionContext.default()


def _zstar(parts, ctx: PrecisionContext) -> NumericValue:
    return mzsv_numeric(Index(tuple(parts)), ctx)


def _positive(**values):
    for name, v in values.items():
        if v < 1:
            raise ValueError(f"{name} must be >= 1, got {v}")


def _non_negative(**values):
    for name, v in values.items():
        if v < 0:
            raise ValueError(f"{name} must be >= 0, got {v}")


# --- Product formulas ---

def verify_main1(m: int, n: int, ctx: PrecisionContext | None = None) -> IdentityReport:
    """zeta*({2}^m,1) zeta*({2}^n,1) = zeta*({2}^m,1,{2}^n,1) + zeta*({2}^n,1,{2}^m,1)."""
    if m == 0 or n == 0:
        raise DivergentIdentityError("both sides diverge when m=0 or n=0 (zeta*(1) appears)")
    _positive(m=m, n=n)
    ctx = _ctx(ctx)
    lhs = star_twos_one(m, ctx) * star_twos_one(n, ctx)
    rhs = _zstar(twos(m) + (1,) + twos(n) + (1,), ctx) + _zstar(twos(n) + (1,) + twos(m) + (1,), ctx)
    return _numeric_report("main1", {"m": m, "n": n}, lhs, rhs, 2 * m + 2 * n + 2, ctx)


def verify_main2(m: int, n: int, ctx: PrecisionContext | None = None) -> IdentityReport:
    """zeta*({2}^m,1) zeta*({2}^n) = zeta*({2}^m,1,{2}^n) + zeta*({2}^(n-1),3,{2}^m)."""
    if m == 0:
        raise DivergentIdentityError(
            "both sides diverge when m=0; use main2_finite for the finite-p form"
        )
    _positive(m=m, n=n)
    ctx = _ctx(ctx)
    lhs = star_twos_one(m, ctx) * star_twos(n, ctx)
    rhs = _zstar(twos(m) + (1,) + twos(n), ctx) + _zstar(twos(n - 1) + (3,) + twos(m), ctx)
    return _numeric_report("main2", {"m": m, "n": n}, lhs, rhs, 2 * m + 2 * n + 1, ctx)


def verify_main3(m: int, n: int, ctx: PrecisionContext | None = None) -> IdentityReport:
    """zeta*({2}^m) zeta*({2}^n) = zeta*({2}^(m-1),3,{2}^(n-1),1) + zeta*({2}^(n-1),3,{2}^(m-1),1)."""
    _positive(m=m, n=n)
    ctx = _ctx(ctx)
    lhs = star_twos(m, ctx) * star_twos(n, ctx)
    rhs = (_zstar(twos(m - 1) + (3,) + twos(n - 1) + (1,), ctx)
           + _zstar(twos(n - 1) + (3,) + twos(m - 1) + (1,), ctx))
    return _numeric_report("main3", {"m": m, "n": n}, lhs, rhs, 2 * m + 2 * n, ctx)


def verify_two_one(m: int, n: int, ctx: PrecisionContext | None = None) -> IdentityReport:
    """zeta*({2}^m,1,{2}^n,1) = 4 zeta*(2m+1, 2n+1) - 2 zeta(2m+2n+2)."""
    _positive(m=m, n=n)
    ctx = _ctx(ctx)
    lhs = _zstar(twos(m) + (1,) + twos(n) + (1,), ctx)
    rhs = _zstar((2 * m + 1, 2 * n + 1), ctx) * 4 - zeta_int(2 * m + 2 * n + 2, ctx) * 2
    return _numeric_report("two_one", {"m": m, "n": n}, lhs, rhs, 2 * m + 2 * n + 2, ctx)


# --- Zagier-type evaluations ---

def _binom(a: int, b: int) -> int:
    # zero outside 0 <= b <= a
    return int(comb(a, b, exact=True))


def _odd_zeta_expansion(coefficient: Callable[[int], Fraction], top: int,
                        ctx: PrecisionContext) -> NumericValue:
    """sum_{r=1}^{top} coefficient(r) zeta(2r+1) zeta*({2}^(top-r))."""
    total = NumericValue.exact(0, ctx.bits)
    for r in range(1, top + 1):
        c = coefficient(r)
        if c:
            total = total + zeta_int(2 * r + 1, ctx) * star_twos(top - r, ctx) * c
    return total


def coefficient_22322(m: int, n: int, r: int) -> Fraction:
    """-2 (C(2r,2n) - delta_{r,n} - (1 - 4^-r) C(2r,2m+1))."""
    delta = 1 if r == n else 0
    return -2 * (_binom(2 * r, 2 * n) - delta - (1 - Fraction(1, 4**r)) * _binom(2 * r, 2 * m + 1))


def coefficient_22122(m: int, n: int, r: int) -> Fraction:
    """2 (C(2r,2m+2) - (1 - 4^-r) C(2r,2n-1))."""
    return 2 * (_binom(2 * r, 2 * m + 2) - (1 - Fraction(1, 4**r)) * _binom(2 * r, 2 * n - 1))


def verify_22322(m: int, n: int, ctx: PrecisionContext | None = None) -> IdentityReport:
    """zeta*({2}^m,3,{2}^n) as a combination of zeta(2r+1) zeta*({2}^(m+n+1-r))."""
    _non_negative(m=m, n=n)
    ctx = _ctx(ctx)
    lhs = _zstar(twos(m) + (3,) + twos(n), ctx)
    rhs = _odd_zeta_expansion(lambda r: coefficient_22322(m, n, r), m + n + 1, ctx)
    return _numeric_report("22322", {"m": m, "n": n}, lhs, rhs, 2 * m + 2 * n + 3, ctx)


def verify_22122(m: int, n: int, ctx: PrecisionContext | None = None) -> IdentityReport:
    """zeta*({2}^(m+1),1,{2}^n) as a combination of zeta(2r+1) zeta*({2}^(m+n+1-r))."""
    _non_negative(m=m, n=n)
    ctx = _ctx(ctx)
    lhs = _zstar(twos(m + 1) + (1,) + twos(n), ctx)
    rhs = _odd_zeta_expansion(lambda r: coefficient_22122(m, n, r), m + n + 1, ctx)
    return _numeric_report("22122", {"m": m, "n": n}, lhs, rhs, 2 * m + 2 * n + 3, ctx)


def verify_prop_m0(n: int, ctx: PrecisionContext | None = None, finite_levels: int = 10) -> IdentityReport:
    """zeta*({2}^(n-1),3) = sum_{l=1}^{n} zeta*({2}^l,1,{2}^(n-l)) - sum_{l<n} zeta*({2}^l,3,{2}^(n-1-l)).

    The exact finite-p form is checked for p <= finite_levels as well; a
    nonzero exact residual fails the report.
    """
    _positive(n=n)
    ctx = _ctx(ctx)
    lhs = _zstar(twos(n - 1) + (3,), ctx)
    rhs = NumericValue.exact(0, ctx.bits)
    for l in range(1, n + 1):
        rhs = rhs + _zstar(twos(l) + (1,) + twos(n - l), ctx)
    for l in range(n):
        rhs = rhs - _zstar(twos(l) + (3,) + twos(n - 1 - l), ctx)
    status = None
    if any(prop_m0_finite_residual(n, p) != 0 for p in range(finite_levels + 1)):
        status = "fail"
    return _numeric_report("prop_m0", {"n": n}, lhs, rhs, 2 * n + 1, ctx, status=status)


# --- Alternating sums over 2-3-1 patterns ---

def _x_numeric(pattern: Pattern, k: int, ctx: PrecisionContext) -> tuple[NumericValue, int]:
    left, right = theorem_sub_patterns(pattern, k)
    i_left, i_right = pattern_to_index(left), pattern_to_index(right)
    value = mzsv_numeric(i_left, ctx) * mzsv_numeric(i_right, ctx)
    return value, i_left.weight + i_right.weight


def _alternating_report(identity: str, params: dict, pattern: Pattern,
                        ctx: PrecisionContext) -> IdentityReport:
    if not theorem_admissible(pattern):
        raise NotAdmissibleError(f"pattern ({pattern}) has a divergent X(k) factor")
    even = NumericValue.exact(0, ctx.bits)
    odd = NumericValue.exact(0, ctx.bits)
    weight = 0
    for k in range(pattern.n + 1):
        value, w = _x_numeric(pattern, k, ctx)
        weight = max(weight, w)
        if k % 2:
            odd = odd + value
        else:
            even = even + value
    return _numeric_report(identity, params, even, odd, weight, ctx)


def verify_thm31_numeric(pattern: Pattern, ctx: PrecisionContext | None = None) -> IdentityReport:
    """sum_k (-1)^k X(k) = 0 with every factor evaluated numerically (lhs: even k, rhs: odd k)."""
    return _alternating_report("thm31", {"pattern": pattern}, pattern, _ctx(ctx))


def verify_1ext(jvec, ctx: PrecisionContext | None = None) -> IdentityReport:
    """sum_k (-1)^k zeta*({2}^j1,1,...,{2}^jk,1) zeta*({2}^jn,1,...,{2}^j(k+1),1) = 0."""
    jvec = tuple(jvec)
    if not jvec:
        raise PatternError("1ext needs at least one block")
    if jvec[0] < 1 or jvec[-1] < 1:
        raise NotAdmissibleError(f"1ext needs j1, jn >= 1, got {jvec}")
    pattern = Pattern(jvec, (1,) * (len(jvec) - 1))
    return _alternating_report("1ext", {"jvec": jvec}, pattern, _ctx(ctx))


def verify_3ext(jvec, ctx: PrecisionContext | None = None) -> IdentityReport:
    """The alternating-sum identity for e = (3,1,...,3) of length 2n-1."""
    jvec = tuple(jvec)
    if not jvec or len(jvec) % 2:
        raise PatternError(f"3ext needs an even number of blocks, got {len(jvec)}")
    pattern = Pattern(jvec, alternating_evec(len(jvec) - 1))
    return _alternating_report("3ext", {"jvec": jvec}, pattern, _ctx(ctx))


# --- Symmetrized sums and pi-power recognition ---

def _arrangements(jvec: tuple[int, ...]):
    """Distinct orderings of jvec with the number of permutations giving each."""
    weight = math.prod(math.factorial(c) for c in Counter(jvec).values())
    for arrangement in sorted(set(itertools.permutations(jvec))):
        yield arrangement, weight


def _kind_pattern(kind: str, arrangement: tuple[int, ...]):
    if kind == "A":
        # ({2}^j0,3,{2}^j1,1,...,3,{2}^j(2n-1),1)
        return pattern_append_zero(Pattern(arrangement, alternating_evec(len(arrangement) - 1)), 1)
    if kind == "B":
        # ({2}^j0,3,...,1,{2}^(j2n + 1))
        return pattern_increment_last(Pattern(arrangement, alternating_evec(len(arrangement) - 1)))
    raise ValueError(f"Unknown symmetrized sum kind: {kind}")


def symmetrized_sum(kind: str, jvec, ctx: PrecisionContext | None = None) -> NumericValue:
    """sum over all permutations s of Z(s(j)_+) (kind "A") or Z(s(j)^+) (kind "B")."""
    jvec = tuple(jvec)
    ctx = _ctx(ctx)
    if kind == "A" and (not jvec or len(jvec) % 2):
        raise PatternError(f"A-sums need an even, non-zero number of entries, got {len(jvec)}")
    if kind == "B" and len(jvec) % 2 == 0:
        raise PatternError(f"B-sums need an odd number of entries, got {len(jvec)}")
    total = NumericValue.exact(0, ctx.bits)
    for arrangement, multiplicity in _arrangements(jvec):
        pattern = _kind_pattern(kind, arrangement)
        if not pattern.admissible:
            raise NotAdmissibleError(f"symmetrized term ({pattern}) diverges")
        total = total + mzsv_numeric(pattern_to_index(pattern), ctx) * multiplicity
    return total


def _conjecture_report(identity: str, kind: str, n: int, jvec: tuple[int, ...], pi_power: int,
                       ctx: PrecisionContext, max_den: int | None) -> IdentityReport:
    scaled = symmetrized_sum(kind, jvec, ctx) / (const_pi(ctx) ** pi_power)
    recognized = recognize_rational(scaled, max_den)
    params = {"n": n, "jvec": jvec, "pi_power": pi_power}
    if recognized is None:
        logger.info("%s %s: no rational with denominator <= %s", identity, jvec, max_den)
        return IdentityReport(
            identity=identity, params={k: _jsonable(v) for k, v in params.items()},
            lhs=scaled, rhs=None, residual=None, tolerance=tolerance(pi_power, ctx.bits),
            method="numeric", status="unrecognized", precision_bits=ctx.bits, ladder=list(ctx.ladder),
        )
    rhs = NumericValue.exact(recognized, ctx.bits)
    report = _numeric_report(identity, params, scaled, rhs, pi_power, ctx, status="pass")
    return report.model_copy(update={"rhs": recognized})


def conjecture_A_instance(n: int, jvec, ctx: PrecisionContext | None = None,
                          max_den: int | None = None) -> IdentityReport:
    """sum_s Z(s(j)_+) / pi^(2m+4n), recognized as a rational if possible."""
    jvec = tuple(jvec)
    _positive(n=n)
    if len(jvec) != 2 * n:
        raise PatternError(f"conjecture A with n={n} needs {2 * n} entries, got {len(jvec)}")
    ctx = _ctx(ctx)
    return _conjecture_report("conjectureA", "A", n, jvec, 2 * sum(jvec) + 4 * n, ctx, max_den)


def conjecture_B_instance(n: int, jvec, ctx: PrecisionContext | None = None,
                          max_den: int | None = None) -> IdentityReport:
    """sum_s Z(s(j)^+) / pi^(2m+4n+2), recognized as a rational if possible."""
    jvec = tuple(jvec)
    _non_negative(n=n)
    if len(jvec) != 2 * n + 1:
        raise PatternError(f"conjecture B with n={n} needs {2 * n + 1} entries, got {len(jvec)}")
    ctx = _ctx(ctx)
    return _conjecture_report("conjectureB", "B", n, jvec, 2 * sum(jvec) + 4 * n + 2, ctx, max_den)


def verify_an_recursion(n: int, jvec, ctx: PrecisionContext | None = None) -> IdentityReport:
    """2 A(j) = sum_{l=1}^{n} sum_{|S|=2l-1} B(j_S) B(j_T) - sum_{l=1}^{n-1} sum_{|S|=2l} A(j_S) A(j_T),
    S running over position subsets of j and T its complement.
    """
    jvec = tuple(jvec)
    _positive(n=n)
    if len(jvec) != 2 * n:
        raise PatternError(f"A-recursion with n={n} needs {2 * n} entries, got {len(jvec)}")
    ctx = _ctx(ctx)
    positions = range(2 * n)

    def split(size):
        for subset in itertools.combinations(positions, size):
            rest = tuple(jvec[t] for t in positions if t not in subset)
            yield tuple(jvec[s] for s in subset), rest

    lhs = symmetrized_sum("A", jvec, ctx) * 2
    rhs = NumericValue.exact(0, ctx.bits)
    for l in range(1, n + 1):
        for left, right in split(2 * l - 1):
            rhs = rhs + symmetrized_sum("B", left, ctx) * symmetrized_sum("B", right, ctx)
    for l in range(1, n):
        for left, right in split(2 * l):
            rhs = rhs - symmetrized_sum("A", left, ctx) * symmetrized_sum("A", right, ctx)
    weight = 2 * sum(jvec) + 4 * n
    return _numeric_report("an_recursion", {"n": n, "jvec": jvec}, lhs, rhs, weight, ctx)


# --- Exact checkers ---

def verify_ccbaa(p: int, m: int, n: int, a: int, b: int, c: int) -> IdentityReport:
    residual = ccbaa_residual(p, m, n, a, b, c)
    return _exact_report("ccbaa", {"p": p, "m": m, "n": n, "a": a, "b": b, "c": c}, residual)


def verify_c_duality(j: int, p: int, q: int) -> IdentityReport:
    lhs, rhs = c_duality_check(j, p, q)
    return _exact_report("c_duality", {"j": j, "p": p, "q": q}, lhs - rhs, lhs, rhs)


def verify_prop23(m: int, n: int, a: int, b: int, c: int) -> IdentityReport:
    residual = prop23_residual(m, n, a, b, c)
    return _exact_report("prop23", {"m": m, "n": n, "a": a, "b": b, "c": c}, residual)


def verify_telescope(pattern: Pattern, P: int) -> IdentityReport:
    return _exact_report("telescope", {"pattern": pattern, "P": P}, telescope_residual(pattern, P))


def verify_main2_finite(m: int, n: int, p: int) -> IdentityReport:
    return _exact_report("main2_finite", {"m": m, "n": n, "p": p}, main2_finite_residual(m, n, p))


def verify_prop_m0_finite(n: int, p: int) -> IdentityReport:
    return _exact_report("prop_m0_finite", {"n": n, "p": p}, prop_m0_finite_residual(n, p))


def verify_zp_d(word: str, p: int) -> IdentityReport:
    """Z_p(d(w)) = Z_p*(w)."""
    w = NCPoly.word(word)
    lhs, rhs = zp_eval(d_map(w), p), zp_star_eval(w, p)
    return _exact_report("zp_d", {"word": word, "p": p}, lhs - rhs, lhs, rhs)


# --- Registry ---

class CheckerSpec(NamedTuple):
    checker: Callable[..., IdentityReport]
    params: tuple[str, ...]
    method: Literal["exact", "numeric"]
    # extra keyword arguments the checker accepts: "ctx", "max_den"
    options: tuple[str, ...] = ()


CHECKERS: dict[str, CheckerSpec] = {
    "main1": CheckerSpec(verify_main1, ("m", "n"), "numeric", ("ctx",)),
    "main2": CheckerSpec(verify_main2, ("m", "n"), "numeric", ("ctx",)),
    "main3": CheckerSpec(verify_main3, ("m", "n"), "numeric", ("ctx",)),
    "two_one": CheckerSpec(verify_two_one, ("m", "n"), "numeric", ("ctx",)),
    "22322": CheckerSpec(verify_22322, ("m", "n"), "numeric", ("ctx",)),
    "22122": CheckerSpec(verify_22122, ("m", "n"), "numeric", ("ctx",)),
    "prop_m0": CheckerSpec(verify_prop_m0, ("n",), "numeric", ("ctx",)),
    "1ext": CheckerSpec(verify_1ext, ("jvec",), "numeric", ("ctx",)),
    "3ext": CheckerSpec(verify_3ext, ("jvec",), "numeric", ("ctx",)),
    "thm31": CheckerSpec(verify_thm31_numeric, ("pattern",), "numeric", ("ctx",)),
    "an_recursion": CheckerSpec(verify_an_recursion, ("n", "jvec"), "numeric", ("ctx",)),
    "conjectureA": CheckerSpec(conjecture_A_instance, ("n", "jvec"), "numeric", ("ctx", "max_den")),
    "conjectureB": CheckerSpec(conjecture_B_instance, ("n", "jvec"), "numeric", ("ctx", "max_den")),
    "ccbaa": CheckerSpec(verify_ccbaa, ("p", "m", "n", "a", "b", "c"), "exact"),
    "c_duality": CheckerSpec(verify_c_duality, ("j", "p", "q"), "exact"),
    "prop23": CheckerSpec(verify_prop23, ("m", "n", "a", "b", "c"), "exact"),
    "telescope": CheckerSpec(verify_telescope, ("pattern", "P"), "exact"),
    "main2_finite": CheckerSpec(verify_main2_finite, ("m", "n", "p"), "exact"),
    "prop_m0_finite": CheckerSpec(verify_prop_m0_finite, ("n", "p"), "exact"),
    "zp_d": CheckerSpec(verify_zp_d, ("word", "p"), "exact"),
}


def run_checker(identity: str, params: dict, ctx: PrecisionContext | None = None,
                max_den: int | None = None) -> IdentityReport:
    """Look up and run one checker with the given parameters."""
    try:
        entry = CHECKERS[identity]
    except KeyError:
        raise ValueError(f"Unknown identity: {identity}")
    missing = [name for name in entry.params if name not in params]
    if missing:
        raise ValueError(f"{identity} needs parameters: {', '.join(missing)}")
    kwargs = {name: params[name] for name in entry.params}
    if "ctx" in entry.options:
        kwargs["ctx"] = ctx
    if "max_den" in entry.options:
        kwargs["max_den"] = max_den
    return entry.checker(**kwargs)
