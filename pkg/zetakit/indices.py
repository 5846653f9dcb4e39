"""
Indices and 2-3-1 patterns.

An Index is a composition (k1, ..., kn) stored outermost-first, exactly as
written in zeta(k1, ..., kn): k1 belongs to the largest summation variable.

A Pattern (jvec, evec) stands for the index
    ({2}^j1, e1, {2}^j2, e2, ..., e_{n-1}, {2}^jn)
with every e_i in {1, 3}. The empty pattern is its own object
(EMPTY_PATTERN) and expands to the empty index, whose zeta-star value is 1.

Text syntax (used by the CLI):
    Index    "2,1,2"          (empty index: "" or "empty")
    Pattern  "j=1,0;e=1"      (empty pattern: "empty")
"""

from dataclasses import dataclass

__all__ = [
    "CompositionError",
    "NotAdmissibleError",
    "PatternError",
    "Index",
    "Pattern",
    "EmptyPattern",
    "EMPTY_PATTERN",
    "EMPTY_INDEX",
    "twos",
    "alternating_evec",
    "star_pattern",
    "pattern_to_index",
    "pattern_append_zero",
    "pattern_increment_last",
    "pattern_reverse",
    "pattern_prefix",
    "mzv_dual",
]

_EMPTY_TOKENS = ("", "empty", "∅", "()")


class CompositionError(ValueError):
    """Index parts that are not positive integers."""


class NotAdmissibleError(ValueError):
    """Index or pattern whose series diverges."""


class PatternError(ValueError):
    """Malformed pattern, or a pattern operation outside its domain."""


@dataclass(frozen=True)
class Index:
    """Composition (k1, ..., kn) of positive integers; n may be 0."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(self.parts)
        for k in parts:
            if isinstance(k, bool) or not isinstance(k, int) or k < 1:
                raise CompositionError(f"index parts must be positive integers, got {parts!r}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Index":
        """Parse "2,1,2" (spaces allowed)."""
        text = text.strip()
        if text in _EMPTY_TOKENS:
            return cls(())
        try:
            parts = tuple(int(tok) for tok in text.split(","))
        except ValueError:
            raise CompositionError(f"cannot parse index '{text}'")
        return cls(parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def depth(self) -> int:
        return len(self.parts)

    @property
    def admissible(self) -> bool:
        return not self.parts or self.parts[0] >= 2

    def __iter__(self):
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, item):
        return self.parts[item]

    def __add__(self, other) -> "Index":
        other_parts = other.parts if isinstance(other, Index) else tuple(other)
        return Index(self.parts + other_parts)

    def __str__(self) -> str:
        return ",".join(str(k) for k in self.parts) if self.parts else "empty"


EMPTY_INDEX = Index(())


def twos(n: int) -> tuple[int, ...]:
    """The block {2}^n."""
    if n < 0:
        raise CompositionError(f"block length must be >= 0, got {n}")
    return (2,) * n


def alternating_evec(length: int) -> tuple[int, ...]:
    """(3, 1, 3, 1, ...) of the given length."""
    return tuple(3 if i % 2 == 0 else 1 for i in range(length))


class EmptyPattern:
    """The pattern with n = 0. Its zeta-star value is 1."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    n = 0
    jvec: tuple[int, ...] = ()
    evec: tuple[int, ...] = ()
    admissible = True

    def reversed(self) -> "EmptyPattern":
        return self

    def __repr__(self) -> str:
        return "EMPTY_PATTERN"

    def __str__(self) -> str:
        return "empty"

    def __reduce__(self):
        return (EmptyPattern, ())


EMPTY_PATTERN = EmptyPattern()


@dataclass(frozen=True)
class Pattern:
    """2-3-1 pattern: jvec in Z>=0^n, evec in {1,3}^(n-1), n >= 1."""

    jvec: tuple[int, ...]
    evec: tuple[int, ...] = ()

    def __post_init__(self):
        jvec, evec = tuple(self.jvec), tuple(self.evec)
        if not jvec:
            raise PatternError("a pattern needs n >= 1; use EMPTY_PATTERN for n = 0")
        if len(evec) != len(jvec) - 1:
            raise PatternError(
                f"evec must have length n-1 = {len(jvec) - 1}, got {len(evec)}"
            )
        if any(isinstance(j, bool) or not isinstance(j, int) or j < 0 for j in jvec):
            raise PatternError(f"jvec entries must be non-negative integers, got {jvec!r}")
        if any(e not in (1, 3) for e in evec):
            raise PatternError(f"evec entries must be 1 or 3, got {evec!r}")
        object.__setattr__(self, "jvec", jvec)
        object.__setattr__(self, "evec", evec)

    @classmethod
    def parse(cls, text: str) -> "Pattern | EmptyPattern":
        """Parse "j=1,0;e=1". The e part may be omitted when n = 1."""
        text = text.strip()
        if text in _EMPTY_TOKENS:
            return EMPTY_PATTERN
        fields = {}
        for chunk in text.split(";"):
            if not chunk.strip():
                continue
            key, sep, value = chunk.partition("=")
            if not sep or key.strip() not in ("j", "e"):
                raise PatternError(f"cannot parse pattern '{text}'")
            if key.strip() in fields:
                raise PatternError(f"pattern '{text}' repeats {key.strip()}=")
            fields[key.strip()] = value.strip()
        if "j" not in fields:
            raise PatternError(f"pattern '{text}' has no j= part")
        try:
            jvec = tuple(int(tok) for tok in fields["j"].split(","))
            evec_text = fields.get("e", "")
            evec = tuple(int(tok) for tok in evec_text.split(",")) if evec_text else ()
        except ValueError:
            raise PatternError(f"cannot parse pattern '{text}'")
        return cls(jvec, evec)

    @property
    def n(self) -> int:
        return len(self.jvec)

    @property
    def admissible(self) -> bool:
        # the series diverges iff n >= 2, j1 = 0 and e1 = 1
        return not (self.n >= 2 and self.jvec[0] == 0 and self.evec[0] == 1)

    def reversed(self) -> "Pattern":
        return pattern_reverse(self)

    def __str__(self) -> str:
        text = "j=" + ",".join(map(str, self.jvec))
        if self.evec:
            text += ";e=" + ",".join(map(str, self.evec))
        return text


def star_pattern(jvec, evec=()) -> "Pattern | EmptyPattern":
    """Pattern constructor that maps an empty jvec to EMPTY_PATTERN."""
    if not tuple(jvec):
        if tuple(evec):
            raise PatternError("the empty pattern has no e entries")
        return EMPTY_PATTERN
    return Pattern(tuple(jvec), tuple(evec))


def pattern_to_index(p: "Pattern | EmptyPattern") -> Index:
    """Expand ({2}^j1, e1, {2}^j2, ..., e_{n-1}, {2}^jn)."""
    if p is EMPTY_PATTERN:
        return EMPTY_INDEX
    parts = list(twos(p.jvec[0]))
    for e, j in zip(p.evec, p.jvec[1:]):
        parts.append(e)
        parts.extend(twos(j))
    return Index(tuple(parts))


def pattern_append_zero(p: "Pattern | EmptyPattern", e: int = 1) -> Pattern:
    """j_+ : append j = 0, joined by the given e."""
    if p is EMPTY_PATTERN:
        raise PatternError("cannot append to the empty pattern: there is no e slot to fill")
    return Pattern(p.jvec + (0,), p.evec + (e,))


def pattern_increment_last(p: "Pattern | EmptyPattern") -> Pattern:
    """j^+ : increment the last j."""
    if p is EMPTY_PATTERN:
        raise PatternError("the empty pattern has no last entry")
    return Pattern(p.jvec[:-1] + (p.jvec[-1] + 1,), p.evec)


def pattern_reverse(p: "Pattern | EmptyPattern") -> "Pattern | EmptyPattern":
    """j' : reverse jvec and evec."""
    if p is EMPTY_PATTERN:
        return p
    return Pattern(p.jvec[::-1], p.evec[::-1])


def pattern_prefix(p: "Pattern | EmptyPattern", k: int) -> "Pattern | EmptyPattern":
    """j|_k with e|_{k-1}; k = 0 gives the empty pattern."""
    if not 0 <= k <= p.n:
        raise PatternError(f"prefix length {k} outside 0..{p.n}")
    if k == 0:
        return EMPTY_PATTERN
    return Pattern(p.jvec[:k], p.evec[: k - 1])


def _index_to_word(i: Index) -> str:
    return "".join("x" * (k - 1) + "y" for k in i.parts)


def _word_to_index(word: str) -> Index:
    parts, run = [], 0
    for letter in word:
        if letter == "x":
            run += 1
        else:
            parts.append(run + 1)
            run = 0
    return Index(tuple(parts))


def mzv_dual(i: Index) -> Index:
    """Duality of MZVs: reverse the x/y word of the index and swap x <-> y."""
    if i.depth == 0 or not i.admissible:
        raise NotAdmissibleError(f"duality needs an admissible non-empty index, got ({i})")
    swapped = {"x": "y", "y": "x"}
    word = _index_to_word(i)
    return _word_to_index("".join(swapped[letter] for letter in reversed(word)))
