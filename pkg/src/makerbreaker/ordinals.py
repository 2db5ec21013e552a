"""Ordinal arithmetic in Cantor normal form.

Every value below epsilon_0 has a unique representation

    w^{e1}*c1 + w^{e2}*c2 + ... + w^{ek}*ck

with strictly decreasing ordinal exponents e1 > e2 > ... > ek and positive
integer coefficients.  An :class:`Ordinal` stores exactly that term list, so
equality is structural and comparison is lexicographic on (exponent,
coefficient) pairs.

Addition and multiplication are the usual non-commutative ordinal operations:
addition absorbs low terms of the left argument into the right one, and
multiplication distributes over the right argument only.

The literal grammar, used everywhere ordinals travel as text (CLI flags,
config files, transcripts):

    ordinal := "0" | term ("+" term)*
    term    := "w" ("^" "{" ordinal "}")? ("*" nat)? | nat

Examples: "w*2+3", "w^{2}+w", "17".  Parsing folds terms with ordinal
addition, so non-canonical input such as "1+w" normalises to "w".

Representations are bounded: nesting depth at most MAX_DEPTH and at most
MAX_TERMS terms per level.  Exceeding either raises CapacityError; desk-scale
games never get near the bounds, but repeated arithmetic could.
"""

from __future__ import annotations

from typing import Iterator, Union


class OrdinalError(ValueError):
    """Base class for every error this module raises."""


class CapacityError(OrdinalError):
    """Representation exceeds the configured depth or term-count bound."""


class OrdinalParseError(OrdinalError):
    """Literal text does not match the ordinal grammar."""

    def __init__(self, text: str, pos: int, message: str):
        super().__init__(f"bad ordinal literal {text!r} at position {pos}: {message}")
        self.text = text
        self.pos = pos


# Capacity bounds for the CNF representation.  Depth counts exponent nesting:
# naturals have depth 1, w has depth 2, w^{w} depth 3, and so on.
MAX_DEPTH = 4
MAX_TERMS = 16

ZERO_CLASS = "zero"
SUCCESSOR_CLASS = "successor"
LIMIT_CLASS = "limit"

OrdinalLike = Union["Ordinal", int]


class Ordinal:
    """An ordinal below epsilon_0 in Cantor normal form.

    Instances are immutable, hashable, and totally ordered.  Construct them
    from an int, from another Ordinal (copy), via :meth:`parse`, or through
    arithmetic on existing values.
    """

    __slots__ = ("_terms", "_depth", "_finite", "_hash")

    _terms: tuple[tuple["Ordinal", int], ...]
    _depth: int
    _finite: int | None
    _hash: int

    def __init__(self, value: OrdinalLike = 0):
        if isinstance(value, Ordinal):
            terms = value._terms
        elif isinstance(value, int):
            if value < 0:
                raise OrdinalError(f"ordinals are non-negative, got {value}")
            terms = ((ZERO, value),) if value else ()
        else:
            raise TypeError(f"cannot build an Ordinal from {type(value).__name__}")
        self._init_from_terms(terms)

    def _init_from_terms(self, terms: tuple[tuple["Ordinal", int], ...]) -> None:
        prev = None
        depth = 0
        for exponent, coeff in terms:
            if not isinstance(coeff, int) or coeff < 1:
                raise OrdinalError(f"coefficients must be positive ints, got {coeff!r}")
            if prev is not None and not exponent < prev:
                raise OrdinalError("exponents must be strictly decreasing")
            prev = exponent
            depth = max(depth, exponent._depth + 1)
        if depth > MAX_DEPTH:
            raise CapacityError(f"nesting depth {depth} exceeds bound {MAX_DEPTH}")
        if len(terms) > MAX_TERMS:
            raise CapacityError(f"{len(terms)} terms exceed bound {MAX_TERMS}")
        self._terms = terms
        self._depth = depth
        if not terms:
            self._finite = 0
        elif len(terms) == 1 and not terms[0][0]._terms:
            self._finite = terms[0][1]
        else:
            self._finite = None
        self._hash = hash(terms)

    @classmethod
    def _from_terms(cls, terms: tuple[tuple["Ordinal", int], ...]) -> "Ordinal":
        out = cls.__new__(cls)
        out._init_from_terms(terms)
        return out

    # -- introspection ----------------------------------------------------

    @property
    def terms(self) -> tuple[tuple["Ordinal", int], ...]:
        return self._terms

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_finite(self) -> bool:
        return self._finite is not None

    def as_int(self) -> int:
        """The value as a Python int; raises unless the ordinal is finite."""
        if self._finite is None:
            raise OrdinalError(f"{self} is not a natural number")
        return self._finite

    def classify(self) -> str:
        """One of "zero", "successor", "limit"."""
        if not self._terms:
            return ZERO_CLASS
        if self._terms[-1][0].is_zero:
            return SUCCESSOR_CLASS
        return LIMIT_CLASS

    @property
    def is_limit(self) -> bool:
        return self.classify() == LIMIT_CLASS

    def predecessor(self) -> "Ordinal":
        """For a successor w^{e1}c1+...+n, the value with n replaced by n-1."""
        if self.classify() != SUCCESSOR_CLASS:
            raise OrdinalError(f"{self} is not a successor ordinal")
        head, (exponent, coeff) = self._terms[:-1], self._terms[-1]
        if coeff > 1:
            return Ordinal._from_terms(head + ((exponent, coeff - 1),))
        return Ordinal._from_terms(head)

    def limit_part(self) -> "Ordinal":
        """The value with any trailing finite term removed."""
        if self._terms and self._terms[-1][0].is_zero:
            return Ordinal._from_terms(self._terms[:-1])
        return self

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: OrdinalLike) -> "Ordinal":
        other = _coerce(other)
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        pivot = other._terms[0][0]
        kept = []
        merged_coeff = other._terms[0][1]
        for exponent, coeff in self._terms:
            if pivot < exponent:
                kept.append((exponent, coeff))
            elif exponent == pivot:
                merged_coeff += coeff
            else:
                break  # absorbed
        head = ((pivot, merged_coeff),) + other._terms[1:]
        return Ordinal._from_terms(tuple(kept) + head)

    def __radd__(self, other: OrdinalLike) -> "Ordinal":
        return _coerce(other) + self

    def __mul__(self, other: OrdinalLike) -> "Ordinal":
        other = _coerce(other)
        if self.is_zero or other.is_zero:
            return ZERO
        lead_exp, lead_coeff = self._terms[0]
        total = ZERO
        for exponent, coeff in other._terms:
            if exponent.is_zero:
                piece = Ordinal._from_terms(
                    ((lead_exp, lead_coeff * coeff),) + self._terms[1:]
                )
            else:
                piece = Ordinal._from_terms(((lead_exp + exponent, coeff),))
            total = total + piece
        return total

    def __rmul__(self, other: OrdinalLike) -> "Ordinal":
        return _coerce(other) * self

    # -- ordering ----------------------------------------------------------

    def _cmp(self, other: "Ordinal") -> int:
        if self._finite is not None and other._finite is not None:
            return (self._finite > other._finite) - (self._finite < other._finite)
        for (exp_a, c_a), (exp_b, c_b) in zip(self._terms, other._terms):
            sign = exp_a._cmp(exp_b)
            if sign:
                return sign
            if c_a != c_b:
                return 1 if c_a > c_b else -1
        if len(self._terms) != len(other._terms):
            return 1 if len(self._terms) > len(other._terms) else -1
        return 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self._finite == other
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self._hash == other._hash and self._terms == other._terms

    def __lt__(self, other: OrdinalLike) -> bool:
        return self._cmp(_coerce(other)) < 0

    def __le__(self, other: OrdinalLike) -> bool:
        return self._cmp(_coerce(other)) <= 0

    def __gt__(self, other: OrdinalLike) -> bool:
        return self._cmp(_coerce(other)) > 0

    def __ge__(self, other: OrdinalLike) -> bool:
        return self._cmp(_coerce(other)) >= 0

    def __hash__(self) -> int:
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- text --------------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        rendered = []
        for exponent, coeff in self._terms:
            if exponent.is_zero:
                rendered.append(str(coeff))
                continue
            if exponent == ONE:
                body = "w"
            else:
                body = "w^{" + str(exponent) + "}"
            rendered.append(body if coeff == 1 else f"{body}*{coeff}")
        return "+".join(rendered)

    def __repr__(self) -> str:
        return f"Ordinal({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "Ordinal":
        """Parse an ordinal literal; see the module docstring for the grammar."""
        parser = _Parser(text)
        value = parser.parse_ordinal()
        parser.expect_end()
        return value


def _coerce(value: OrdinalLike) -> Ordinal:
    if isinstance(value, Ordinal):
        return value
    if isinstance(value, int):
        return from_int(value)
    raise TypeError(f"expected Ordinal or int, got {type(value).__name__}")


_FINITE_CACHE_SIZE = 4096
_finite_cache: list[Ordinal] = []


def from_int(n: int) -> Ordinal:
    """Finite ordinal for a non-negative int, interned for small values."""
    if 0 <= n < len(_finite_cache):
        return _finite_cache[n]
    return Ordinal(n)


ZERO = Ordinal.__new__(Ordinal)
ZERO._init_from_terms(())
ONE = Ordinal._from_terms(((ZERO, 1),))
OMEGA = Ordinal._from_terms(((ONE, 1),))

_finite_cache.extend([ZERO, ONE])
_finite_cache.extend(
    Ordinal._from_terms(((ZERO, n),)) for n in range(2, _FINITE_CACHE_SIZE)
)


def least_limit_above(value: OrdinalLike) -> Ordinal:
    """The smallest limit ordinal strictly greater than `value`."""
    return _coerce(value).limit_part() + OMEGA


def omega_block(index: int, offset: int) -> Ordinal:
    """w*index + offset, the turn ordinal used by block schedules."""
    return OMEGA * index + offset


class _Parser:
    """Recursive-descent parser for the literal grammar."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _take(self, char: str) -> None:
        if self._peek() != char:
            raise OrdinalParseError(self.text, self.pos, f"expected {char!r}")
        self.pos += 1

    def _nat(self) -> int:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise OrdinalParseError(self.text, start, "expected a digit")
        return int(self.text[start : self.pos])

    def parse_ordinal(self) -> Ordinal:
        value = self._term()
        while self._peek() == "+":
            self._take("+")
            value = value + self._term()
        return value

    def _term(self) -> Ordinal:
        head = self._peek()
        if head == "w":
            self.pos += 1
            exponent = ONE
            if self._peek() == "^":
                self._take("^")
                self._take("{")
                exponent = self.parse_ordinal()
                self._take("}")
            coeff = 1
            if self._peek() == "*":
                self._take("*")
                coeff = self._nat()
            if coeff == 0:
                return ZERO
            return Ordinal._from_terms(((exponent, coeff),))
        if head.isdigit():
            return from_int(self._nat())
        raise OrdinalParseError(self.text, self.pos, "expected 'w' or a digit")

    def expect_end(self) -> None:
        self._skip_ws()
        if self.pos != len(self.text):
            raise OrdinalParseError(self.text, self.pos, "trailing input")


def iter_naturals(bound: Ordinal | None = None) -> Iterator[Ordinal]:
    """Finite ordinals 0, 1, 2, ... below `bound` (unbounded when None or infinite)."""
    cap = None
    if bound is not None and bound.is_finite:
        cap = bound.as_int()
    n = 0
    while cap is None or n < cap:
        yield from_int(n)
        n += 1
