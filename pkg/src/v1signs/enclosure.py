"""Certified real intervals with exact rational endpoints.

An :class:`Enclosure` is a pair of `fractions.Fraction` bounds guaranteed to
contain a real number.  Field arithmetic on rationals is exact, so the only
places where rounding can occur are the explicit :meth:`Enclosure.round`
(always outward) and the square-root helper (directed integer square roots).
No floating point is used anywhere; certificates are platform independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from numbers import Rational


class PrecisionError(ArithmeticError):
    """A certified computation could not reach the requested tightness.

    Carries the best enclosure obtained so far (may be None when nothing
    useful was produced).
    """

    def __init__(self, message: str, best: "Enclosure | None" = None):
        super().__init__(message)
        self.best = best


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot build an exact rational from {value!r}")


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


@dataclass(frozen=True)
class Enclosure:
    """Interval [lo, hi] with exact rational endpoints, lo <= hi."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", _as_fraction(self.lo))
        object.__setattr__(self, "hi", _as_fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"inverted enclosure: lo={self.lo} > hi={self.hi}")

    @classmethod
    def point(cls, value) -> "Enclosure":
        v = _as_fraction(value)
        return cls(v, v)

    # -- queries -------------------------------------------------------

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, value) -> bool:
        v = _as_fraction(value)
        return self.lo <= v <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def intersects(self, other: "Enclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def contained_in(self, other: "Enclosure") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def certified_sign(self) -> int | None:
        """+1 or -1 when the interval is sign definite, 0 for the exact
        point zero, None when the sign is undecided."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None

    # -- exact arithmetic ----------------------------------------------

    @staticmethod
    def _coerce(other) -> "Enclosure":
        if isinstance(other, Enclosure):
            return other
        return Enclosure.point(other)

    def __add__(self, other) -> "Enclosure":
        o = self._coerce(other)
        return Enclosure(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self) -> "Enclosure":
        return Enclosure(-self.hi, -self.lo)

    def __sub__(self, other) -> "Enclosure":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Enclosure":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "Enclosure":
        o = self._coerce(other)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Enclosure(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Enclosure":
        o = self._coerce(other)
        if o.contains_zero():
            raise ZeroDivisionError("division by an enclosure containing zero")
        inv = Enclosure(1 / o.hi, 1 / o.lo)
        return self * inv

    def __rtruediv__(self, other) -> "Enclosure":
        return self._coerce(other) / self

    def __abs__(self) -> "Enclosure":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Enclosure(Fraction(0), max(-self.lo, self.hi))

    def hull(self, other: "Enclosure") -> "Enclosure":
        return Enclosure(min(self.lo, other.lo), max(self.hi, other.hi))

    # -- rounding and formatting ---------------------------------------

    def round(self, digits: int) -> "Enclosure":
        """Outward rounding onto the decimal grid 10^-digits.

        The result contains self, so containment of the true value is
        preserved; this is the only widening operation.
        """
        s = 10 ** digits
        lo = Fraction(self.lo.numerator * s // self.lo.denominator, s)
        hi = Fraction(_ceil_div(self.hi.numerator * s, self.hi.denominator), s)
        return Enclosure(lo, hi)

    def decimal_bounds(self, digits: int = 40) -> tuple[str, str]:
        """Outward decimal-string endpoints, exact for the printed digits."""
        r = self.round(digits)
        return (_decimal_str(r.lo, digits), _decimal_str(r.hi, digits))

    def __str__(self) -> str:
        lo, hi = self.decimal_bounds(30)
        return f"[{lo}, {hi}]"


def _decimal_str(value: Fraction, digits: int) -> str:
    """Exact decimal string of a fraction whose denominator divides 10^digits."""
    s = 10 ** digits
    scaled = value.numerator * s
    if scaled % value.denominator != 0:
        raise ValueError("fraction is not on the requested decimal grid")
    scaled //= value.denominator
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    whole, frac = divmod(scaled, s)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}".rstrip("0").rstrip(".") or "0"


def sqrt_enclosure(x, digits: int = 50) -> Enclosure:
    """Certified square root, endpoints on the 10^-digits grid.

    Accepts a nonnegative rational or Enclosure.  Bounds come from integer
    square roots of scaled numerators: floor(isqrt) below, isqrt+1 above.
    """
    e = x if isinstance(x, Enclosure) else Enclosure.point(x)
    if e.lo < 0:
        raise ValueError(f"square root of an interval reaching below zero: {e}")
    s = 10 ** digits

    def lower(f: Fraction) -> Fraction:
        return Fraction(isqrt(f.numerator * s * s // f.denominator), s)

    def upper(f: Fraction) -> Fraction:
        t = _ceil_div(f.numerator * s * s, f.denominator)
        r = isqrt(t)
        if r * r < t:
            r += 1
        return Fraction(r, s)

    return Enclosure(lower(e.lo), upper(e.hi))
