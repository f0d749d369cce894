"""
Exact scalar arithmetic over prime fields F_p and the rationals.

Scalars are plain Python values: an ``int`` in ``[0, p)`` for F_p and a
``fractions.Fraction`` for Q.  Both are canonical, so equality of scalars is
equality of representations.  All arithmetic goes through a ``FieldCtx``.
"""

import logging
import re
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterator, Union

from sympy import isprime

from graphaxial.errors import DivisionByZero, InfiniteField, ParseError

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]

MAX_PRIME = 2**31

# optional sign, decimal integer, optional "/denominator"
SCALAR_PATTERN = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


class FieldKind(str, Enum):
    """The two kinds of exact field supported."""

    PRIME = "Fp"
    RATIONAL = "Q"


class FieldCtx:
    """An exact field: F_p for a prime p <= 2^31, or Q."""

    __slots__ = ("_kind", "_p")

    def __init__(self, kind: FieldKind, p: int = 0):
        if kind == FieldKind.PRIME:
            if not isinstance(p, int) or isinstance(p, bool):
                raise ValueError(f"p must be an integer, got {p!r}")
            if p > MAX_PRIME or not isprime(p):
                raise ValueError(f"p must be a prime at most 2^31, got {p}")
        else:
            p = 0
        object.__setattr__(self, "_kind", FieldKind(kind))
        object.__setattr__(self, "_p", p)

    def __setattr__(self, name, value):
        raise AttributeError("FieldCtx is immutable")

    def __reduce__(self):
        return (FieldCtx, (self._kind, self._p))

    @classmethod
    def prime(cls, p: int) -> "FieldCtx":
        return cls(FieldKind.PRIME, p)

    @classmethod
    def rationals(cls) -> "FieldCtx":
        return cls(FieldKind.RATIONAL)

    @property
    def kind(self) -> FieldKind:
        return self._kind

    @property
    def p(self) -> int:
        return self._p

    @property
    def is_finite(self) -> bool:
        return self._kind == FieldKind.PRIME

    @property
    def characteristic(self) -> int:
        return self._p

    @property
    def size(self) -> Union[int, float]:
        return self._p if self.is_finite else float("inf")

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldCtx):
            return self._kind == other._kind and self._p == other._p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self._kind, self._p))

    def __repr__(self) -> str:
        return f"FieldCtx.prime({self._p})" if self.is_finite else "FieldCtx.rationals()"

    def __str__(self) -> str:
        return f"F_{self._p}" if self.is_finite else "Q"

    # -- elements ---------------------------------------------------------

    @property
    def zero(self) -> Scalar:
        return 0 if self.is_finite else Fraction(0)

    @property
    def one(self) -> Scalar:
        return 1 if self.is_finite else Fraction(1)

    def element(self, value: Union[int, Fraction]) -> Scalar:
        """Coerce an integer or fraction into its canonical form in this field."""
        if self.is_finite:
            if isinstance(value, Fraction):
                return self.div(value.numerator % self._p, value.denominator % self._p)
            return int(value) % self._p
        return Fraction(value)

    def elements(self) -> Iterator[Scalar]:
        """All field elements in canonical order (finite fields only)."""
        if not self.is_finite:
            raise InfiniteField("the rationals cannot be enumerated")
        return iter(range(self._p))

    def sort_key(self, a: Scalar) -> Scalar:
        return a

    # -- arithmetic -------------------------------------------------------

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        if self.is_finite:
            return (a + b) % self._p
        return a + b

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        if self.is_finite:
            return (a - b) % self._p
        return a - b

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        if self.is_finite:
            return (a * b) % self._p
        return a * b

    def neg(self, a: Scalar) -> Scalar:
        if self.is_finite:
            return (-a) % self._p
        return -a

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in {self}")
        if self.is_finite:
            return pow(a, -1, self._p)
        return 1 / a

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def half(self) -> Scalar:
        """The element 1/2; raises ``DivisionByZero`` in characteristic 2."""
        return self.inv(self.element(2))

    # -- text and JSON ----------------------------------------------------

    def parse(self, text: str) -> Scalar:
        """Parse ``"n"`` or ``"n/d"`` into a canonical scalar."""
        if not isinstance(text, str):
            raise ParseError(f"scalar must be a string, got {text!r}")
        match = SCALAR_PATTERN.match(text)
        if not match:
            raise ParseError(f"malformed scalar: {text!r}")
        numerator = int(match.group(1))
        denominator = int(match.group(2)) if match.group(2) is not None else 1
        if self.is_finite:
            if denominator % self._p == 0:
                raise DivisionByZero(f"denominator of {text!r} vanishes in {self}")
            return self.div(numerator % self._p, denominator % self._p)
        if denominator == 0:
            raise DivisionByZero(f"denominator of {text!r} is zero")
        return Fraction(numerator, denominator)

    def render(self, a: Scalar) -> str:
        if self.is_finite:
            return str(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def to_json(self) -> Dict[str, Any]:
        if self.is_finite:
            return {"kind": FieldKind.PRIME.value, "p": self._p}
        return {"kind": FieldKind.RATIONAL.value}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "FieldCtx":
        kind = data.get("kind")
        if kind == FieldKind.PRIME.value:
            if "p" not in data:
                raise ParseError("prime field needs 'p'")
            try:
                return cls.prime(int(data["p"]))
            except ValueError as e:
                raise ParseError(str(e))
        if kind == FieldKind.RATIONAL.value:
            return cls.rationals()
        raise ParseError(f"unknown field kind: {kind!r}")

    @classmethod
    def from_option(cls, text: str) -> "FieldCtx":
        """Parse a command-line field option such as ``"Q"``, ``"F7"`` or ``"7"``."""
        text = text.strip()
        if text.upper() == "Q":
            return cls.rationals()
        digits = text[1:].lstrip("_") if text[:1] in ("F", "f") else text
        if not digits.isdigit():
            raise ParseError(f"unknown field: {text!r}")
        try:
            return cls.prime(int(digits))
        except ValueError as e:
            raise ParseError(str(e))
