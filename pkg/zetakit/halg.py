"""
The harmonic algebra H^1.

Words are plain strings over {"x", "y"}; z_k = x^(k-1) y. H^1 is spanned by
the empty word and the words ending in y, and word_from_index /
index_from_word identify those words with indices.

Z_p (truncated MZV) is a ring map for the harmonic product, and
Z_p o d = Z_p* turns zeta-star sums into plain ones. Both are exact here.
"""

import functools
import itertools
import logging
from fractions import Fraction

from zetakit.indices import Index, twos
from zetakit.truncated import zeta_star_trunc, zeta_trunc

logger = logging.getLogger(__name__)

__all__ = [
    "WordError",
    "NCPoly",
    "z",
    "word_from_index",
    "index_from_word",
    "in_h1",
    "h1_words",
    "harmonic_product",
    "gamma_map",
    "d_map",
    "zp_eval",
    "zp_star_eval",
    "prop23_residual",
    "main2_m0_residual",
    "star_harmonic_residual",
    "prop_m0_finite_residual",
]

_LETTERS = frozenset("xy")
_SUBSCRIPTS = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


class WordError(ValueError):
    """Word outside H^1 where H^1 is required, or letters outside {x, y}."""


def _check_letters(word: str) -> str:
    if not isinstance(word, str) or not set(word) <= _LETTERS:
        raise WordError(f"words are strings over x, y; got {word!r}")
    return word


def in_h1(word: str) -> bool:
    return word == "" or word.endswith("y")


def _graded_lex(word: str):
    return (len(word), word)


class NCPoly:
    """Element of Q<x, y>: a map word -> Fraction with no zero entries."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {}
        for word, c in (terms or {}).items():
            c = Fraction(c)
            if c != 0:
                self.terms[_check_letters(word)] = c

    @classmethod
    def word(cls, w: str, coeff=1) -> "NCPoly":
        return cls({w: coeff})

    @classmethod
    def one(cls) -> "NCPoly":
        return cls({"": 1})

    @classmethod
    def zero(cls) -> "NCPoly":
        return cls()

    @classmethod
    def from_index(cls, i) -> "NCPoly":
        return cls({word_from_index(i): 1})

    def items(self):
        """(word, coefficient) pairs in graded-lex order."""
        return sorted(self.terms.items(), key=lambda item: _graded_lex(item[0]))

    def __iter__(self):
        return iter(self.items())

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, word: str) -> Fraction:
        return self.terms.get(word, Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def in_h1(self) -> bool:
        return all(in_h1(w) for w in self.terms)

    def degree(self) -> int:
        """Longest word length; -1 for the zero polynomial."""
        return max((len(w) for w in self.terms), default=-1)

    def weights(self) -> set[int]:
        """Set of word lengths (the weight of z_k1...z_kn is its length)."""
        return {len(w) for w in self.terms}

    def __add__(self, other) -> "NCPoly":
        other = _coerce(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return NCPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "NCPoly":
        return NCPoly({w: -c for w, c in self.terms.items()})

    def __sub__(self, other) -> "NCPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "NCPoly":
        return _coerce(other) - self

    def __mul__(self, other) -> "NCPoly":
        """Concatenation product, or scaling by a number."""
        if not isinstance(other, NCPoly):
            scalar = Fraction(other)
            return NCPoly({w: c * scalar for w, c in self.terms.items()})
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                out[w1 + w2] = out.get(w1 + w2, 0) + c1 * c2
        return NCPoly(out)

    def __rmul__(self, other) -> "NCPoly":
        if isinstance(other, NCPoly):
            return other.__mul__(self)
        return self.__mul__(other)

    def __pow__(self, n: int) -> "NCPoly":
        if n < 0:
            raise ValueError(f"negative power {n}")
        out = NCPoly.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = _coerce(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.items()))

    def render(self) -> str:
        """"c1·w1 + c2·w2" in graded-lex order; the empty word prints as 1."""
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.items():
            word = w or "1"
            if c == 1:
                parts.append(word)
            elif c == -1:
                parts.append(f"-{word}")
            else:
                parts.append(f"{c}·{word}" if w else str(c))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"NCPoly({self.render()})"


def _coerce(value) -> NCPoly:
    if isinstance(value, NCPoly):
        return value
    if isinstance(value, str):
        return NCPoly.word(value)
    return NCPoly({"": value})


def z(k: int) -> NCPoly:
    """z_k = x^(k-1) y."""
    if k < 1:
        raise WordError(f"z_k needs k >= 1, got {k}")
    return NCPoly.word("x" * (k - 1) + "y")


def word_from_index(i) -> str:
    parts = i.parts if isinstance(i, Index) else Index(tuple(i)).parts
    return "".join("x" * (k - 1) + "y" for k in parts)


def index_from_word(w: str) -> Index:
    _check_letters(w)
    if not in_h1(w):
        raise WordError(f"'{w}' does not end in y, so it is not in H^1")
    parts, run = [], 0
    for letter in w:
        if letter == "x":
            run += 1
        else:
            parts.append(run + 1)
            run = 0
    return Index(tuple(parts))


def h1_words(weight: int) -> list[str]:
    """All words of H^1 of the given weight (length), graded-lex order."""
    if weight < 0:
        raise ValueError(f"weight must be >= 0, got {weight}")
    if weight == 0:
        return [""]
    return ["".join(letters) + "y" for letters in itertools.product("xy", repeat=weight - 1)]


def _require_h1(u: NCPoly, what: str):
    for w in u.terms:
        if not in_h1(w):
            raise WordError(f"{what} needs an element of H^1, found word '{w}'")


# --- Harmonic product ---

def _stuffle(u: tuple[int, ...], v: tuple[int, ...]) -> tuple:
    # commutative, so memoize on the ordered pair
    if u > v:
        u, v = v, u
    return _stuffle_ordered(u, v)


@functools.lru_cache(maxsize=None)
def _stuffle_ordered(u: tuple[int, ...], v: tuple[int, ...]) -> tuple:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    k, l = u[0], v[0]
    out: dict = {}
    for head, (a, b) in ((k, (u[1:], v)), (l, (u, v[1:])), (k + l, (u[1:], v[1:]))):
        for w, c in _stuffle(a, b):
            key = (head,) + w
            out[key] = out.get(key, 0) + c
    return tuple(sorted(out.items()))


def harmonic_product(u: NCPoly, v: NCPoly) -> NCPoly:
    """u * v, the bilinear extension of
    z_k w * z_l w' = z_k (w * z_l w') + z_l (z_k w * w') + z_{k+l} (w * w'),
    with 1 * w = w * 1 = w.
    """
    u, v = _coerce(u), _coerce(v)
    _require_h1(u, "harmonic_product")
    _require_h1(v, "harmonic_product")
    out: dict = {}
    for w1, c1 in u.terms.items():
        p1 = index_from_word(w1).parts
        for w2, c2 in v.terms.items():
            for parts, c in _stuffle(p1, index_from_word(w2).parts):
                w = word_from_index(parts)
                out[w] = out.get(w, 0) + c1 * c2 * c
    logger.debug("harmonic product memo: %s", _stuffle_ordered.cache_info())
    return NCPoly(out)


# --- gamma and d ---

def gamma_map(u: NCPoly) -> NCPoly:
    """The automorphism x -> x, y -> x + y, applied letterwise."""
    u = _coerce(u)
    out: dict = {}
    for w, c in u.terms.items():
        choices = [("x",) if letter == "x" else ("x", "y") for letter in w]
        for letters in itertools.product(*choices):
            image = "".join(letters)
            out[image] = out.get(image, 0) + c
    return NCPoly(out)


def d_map(u: NCPoly) -> NCPoly:
    """d(1) = 1 and d(w y) = gamma(w) y, extended linearly."""
    u = _coerce(u)
    _require_h1(u, "d_map")
    out = NCPoly.zero()
    for w, c in u.terms.items():
        if w == "":
            out = out + NCPoly({"": c})
        else:
            out = out + gamma_map(NCPoly.word(w[:-1], c)) * NCPoly.word("y")
    return out


# --- Evaluation ---

def zp_eval(u: NCPoly, p: int) -> Fraction:
    """Z_p: word -> zeta_p(index), extended linearly."""
    u = _coerce(u)
    _require_h1(u, "zp_eval")
    return sum((c * zeta_trunc(index_from_word(w), p) for w, c in u.terms.items()), Fraction(0))


def zp_star_eval(u: NCPoly, p: int) -> Fraction:
    """Z_p*: word -> zeta*_p(index), extended linearly."""
    u = _coerce(u)
    _require_h1(u, "zp_star_eval")
    return sum((c * zeta_star_trunc(index_from_word(w), p) for w, c in u.terms.items()), Fraction(0))


# --- Identities in H^1 and their finite-p consequences ---

def prop23_residual(m: int, n: int, a: int, b: int, c: int) -> NCPoly:
    """d(z_c^m z_b z_a^n) minus
    sum_{k<=m, l<=n} (-1)^(k+l) (z_a^l z_b z_c^k) * d(z_c^(m-k)) * d(z_a^(n-l)).
    The zero polynomial for every m, n >= 0 and a, b, c >= 1.
    """
    if m < 0 or n < 0:
        raise ValueError(f"need m, n >= 0, got m={m}, n={n}")
    za, zb, zc = z(a), z(b), z(c)
    lhs = d_map(zc**m * zb * za**n)
    rhs = NCPoly.zero()
    for k in range(m + 1):
        d_c = d_map(zc ** (m - k))
        for l in range(n + 1):
            term = harmonic_product(harmonic_product(za**l * zb * zc**k, d_c), d_map(za ** (n - l)))
            rhs = rhs + (term if (k + l) % 2 == 0 else -term)
    return lhs - rhs


def _duality_gap_sum(n: int, p: int) -> Fraction:
    """sum_{l=1}^{n} (-1)^l {zeta_p({2}^l,1) - zeta_p(3,{2}^(l-1))} zeta*_p({2}^(n-l))."""
    total = Fraction(0)
    for l in range(1, n + 1):
        gap = zeta_trunc(twos(l) + (1,), p) - zeta_trunc((3,) + twos(l - 1), p)
        total += (-1) ** l * gap * zeta_star_trunc(twos(n - l), p)
    return total


def _star_one_twos_expansion(n: int) -> NCPoly:
    """sum_{l=0}^{n} z_2^l z_1 z_2^(n-l) - sum_{l=0}^{n-1} z_2^l z_3 z_2^(n-1-l)."""
    out = NCPoly.zero()
    for l in range(n + 1):
        out = out + NCPoly.from_index(twos(l) + (1,) + twos(n - l))
    for l in range(n):
        out = out - NCPoly.from_index(twos(l) + (3,) + twos(n - 1 - l))
    return out


def main2_m0_residual(n: int, p: int) -> Fraction:
    """m = 0 form of the product identity at finite p (both limits diverge):
    zeta*_p(1,{2}^n) + zeta*_p({2}^(n-1),3)
      = zeta*_p(1) zeta*_p({2}^n) + duality-gap sum.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    lhs = zeta_star_trunc((1,) + twos(n), p) + zeta_star_trunc(twos(n - 1) + (3,), p)
    rhs = zeta_star_trunc((1,), p) * zeta_star_trunc(twos(n), p) + _duality_gap_sum(n, p)
    return lhs - rhs


def star_harmonic_residual(n: int, p: int) -> Fraction:
    """zeta*_p(1) zeta*_p({2}^n) minus its harmonic-product expansion in star values.

    The expansion is evaluated through Z_p* directly, so d never has to be inverted.
    """
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    product = zeta_star_trunc((1,), p) * zeta_star_trunc(twos(n), p)
    return product - zp_star_eval(_star_one_twos_expansion(n), p)


def prop_m0_finite_residual(n: int, p: int) -> Fraction:
    """zeta*_p({2}^(n-1),3) minus
    sum_{l=1}^{n} zeta*_p({2}^l,1,{2}^(n-l)) - sum_{l=0}^{n-1} zeta*_p({2}^l,3,{2}^(n-1-l))
    + duality-gap sum. Exactly 0 for n >= 1, p >= 0.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    lhs = zeta_star_trunc(twos(n - 1) + (3,), p)
    rhs = Fraction(0)
    for l in range(1, n + 1):
        rhs += zeta_star_trunc(twos(l) + (1,) + twos(n - l), p)
    for l in range(n):
        rhs -= zeta_star_trunc(twos(l) + (3,) + twos(n - 1 - l), p)
    return lhs - (rhs + _duality_gap_sum(n, p))
