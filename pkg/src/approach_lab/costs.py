"""Exact arithmetic on the extended half-line ``[0, inf]``.

Finite values are :class:`fractions.Fraction` instances (always reduced,
never negative); infinity is the singleton :data:`INF`.  Nothing in the
core touches floating point.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Literal, Union

from . import _mutation

__all__ = [
    "INF",
    "ZERO",
    "ExtValue",
    "Infinity",
    "EmptyFoldError",
    "ext",
    "is_inf",
    "add",
    "tminus",
    "d_L",
    "d_R",
    "fold",
    "compare",
    "parse",
    "fmt",
]


class Infinity:
    """The top element of ``[0, inf]``.  Compares above every fraction."""

    __slots__ = ()
    _instance: "Infinity | None" = None

    def __new__(cls) -> "Infinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (Infinity, ())

    def __hash__(self) -> int:
        return hash(float("inf"))

    def __eq__(self, other: object) -> bool:
        return other is self

    def __ne__(self, other: object) -> bool:
        return other is not self

    def __lt__(self, other: object) -> bool:
        return False

    def __le__(self, other: object) -> bool:
        return other is self

    def __gt__(self, other: object) -> bool:
        return other is not self

    def __ge__(self, other: object) -> bool:
        return True

    def __add__(self, other: object) -> "Infinity":
        return self

    __radd__ = __add__


INF = Infinity()
ZERO = Fraction(0)

ExtValue = Union[Fraction, Infinity]


class EmptyFoldError(ValueError):
    """Raised when an extremum of an empty family is requested.

    Callers that need ``sup {} = 0`` or ``inf {} = inf`` encode it explicitly.
    """


def ext(value: object) -> ExtValue:
    """Coerce ``value`` into an :data:`ExtValue`.

    Accepts ints, fractions, :data:`INF`, ``float('inf')`` and the text
    forms understood by :func:`parse`.  Finite floats are refused.
    """
    if value is INF:
        return INF
    if isinstance(value, bool):
        raise TypeError("booleans are not extended values")
    if isinstance(value, (int, Fraction)):
        q = Fraction(value)
        if q < 0:
            raise ValueError(f"negative value {q} is not in [0, inf]")
        return q
    if isinstance(value, float):
        if value == float("inf"):
            return INF
        raise TypeError("finite floats are not exact; pass a Fraction or a string")
    if isinstance(value, str):
        return parse(value)
    raise TypeError(f"cannot interpret {value!r} as an extended value")


def is_inf(value: ExtValue) -> bool:
    return value is INF


def add(a: ExtValue, b: ExtValue) -> ExtValue:
    if a is INF or b is INF:
        return INF
    return a + b


def tminus(b: ExtValue, a: ExtValue) -> ExtValue:
    """Truncated difference ``b (-) a = max(b - a, 0)``.

    Conventions: ``inf (-) inf = 0`` and ``inf (-) a = inf`` for finite ``a``.
    """
    if b is INF:
        if a is INF:
            return INF if _mutation.active("inf_tminus") else ZERO
        return INF
    if a is INF:
        return ZERO
    return b - a if b > a else ZERO


def d_L(a: ExtValue, b: ExtValue) -> ExtValue:
    """Lawvere distance from ``a`` to ``b``: ``b (-) a``."""
    return tminus(b, a)


def d_R(a: ExtValue, b: ExtValue) -> ExtValue:
    """Opposite Lawvere distance: ``a (-) b``."""
    return tminus(a, b)


def fold(values: Iterable[ExtValue], mode: Literal["min", "max"]) -> ExtValue:
    items = list(values)
    if not items:
        raise EmptyFoldError(f"{mode} of an empty family is undefined here")
    if mode == "min":
        return min(items)
    if mode == "max":
        return max(items)
    raise ValueError(f"mode must be 'min' or 'max', not {mode!r}")


def compare(a: ExtValue, b: ExtValue) -> Literal["lt", "eq", "gt"]:
    if a == b:
        return "eq"
    return "lt" if a < b else "gt"


_TEXT = re.compile(r"^\s*(?:(inf)|(\d+)(?:/(\d+))?)\s*$")


def parse(text: str) -> ExtValue:
    """Parse ``"n"``, ``"p/q"`` or ``"inf"``.  Decimal points are rejected."""
    m = _TEXT.match(text)
    if m is None:
        raise ValueError(f"not an extended value: {text!r} (use n, p/q or inf)")
    if m.group(1):
        return INF
    num = int(m.group(2))
    den = int(m.group(3)) if m.group(3) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def fmt(value: ExtValue) -> str:
    if value is INF:
        return "inf"
    q = Fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
