"""Certified elementary functions over rational enclosures.

Every routine here brackets its target between exact rationals.  Series are
evaluated in scaled-integer arithmetic (denominator 10^g): each truncating
division understates a term's magnitude by less than one unit, the
understatement is propagated through the recurrences with ceiling
arithmetic, and the final bracket absorbs both the accumulated slack and an
explicit tail bound.  Correctness never depends on how many terms were
taken, only the width of the result does.

pi comes from Machin's formula 16*atan(1/5) - 4*atan(1/239); the alternating
partial sums bracket each arctangent.  cos uses its Taylor series after
reduction modulo 2*pi (reduction subtracts an integer multiple of the pi
enclosure and is therefore sound for any choice of the integer).  log uses
atanh((t-1)/(t+1)) after dyadic scaling into [2/3, 3/2].
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import floor

from .enclosure import Enclosure, _ceil_div

_GUARD_DIGITS = 8


def _atan_recip_scaled(x: int, scale: int) -> tuple[int, int]:
    """Bracket atan(1/x) * scale between two integers; x >= 2.

    Alternating series sum_j (-1)^j / ((2j+1) x^(2j+1)) with strictly
    decreasing terms, so stopping after any term leaves a remainder smaller
    than the next term.  p tracks the truncated scaled power, low by < 2
    units (each division truncates by < 1, previous slack shrinks by x^2).
    """
    x2 = x * x
    p = scale // x
    lo = hi = 0
    j = 0
    while True:
        term = p // (2 * j + 1)
        if term == 0 and p == 0:
            break
        if j % 2 == 0:
            lo += term
            hi += term + 3
        else:
            lo -= term + 3
            hi -= term
        p //= x2
        j += 1
    # remainder: next true term < (p + 2)/(2j+1) + slack < 3 units at exit
    return lo - 3, hi + 3


@lru_cache(maxsize=None)
def pi_enclosure(digits: int = 50) -> Enclosure:
    """Certified enclosure of pi on the 10^-digits grid."""
    scale = 10 ** (digits + _GUARD_DIGITS)
    a5_lo, a5_hi = _atan_recip_scaled(5, scale)
    a239_lo, a239_hi = _atan_recip_scaled(239, scale)
    lo = Fraction(16 * a5_lo - 4 * a239_hi, scale)
    hi = Fraction(16 * a5_hi - 4 * a239_lo, scale)
    return Enclosure(lo, hi).round(digits)


def _cos_point_scaled(a: int, s: int, scale: int) -> tuple[int, int]:
    """Bracket cos(a/s) * scale between two integers; requires |a/s| <= 4.6.

    Taylor terms T_k = (a/s)^(2k) / (2k)! are generated by the recurrence
    T_k = T_{k-1} * y / ((2k-1)(2k)) with y = (a/s)^2 <= 21.2; they decrease
    strictly from k = 3 on, so the first omitted term bounds the tail.
    err_k bounds the truncation deficit of p_k in units of 1/scale.
    """
    y_num = a * a
    y_den = s * s
    if y_num > 22 * y_den:
        raise ValueError("cos kernel argument out of reduced range")
    lo = hi = scale  # k = 0 term, exact
    p, err = scale, 0
    k = 0
    while True:
        k += 1
        d = y_den * (2 * k - 1) * (2 * k)
        p = p * y_num // d
        err = _ceil_div(err * y_num, d) + 1
        if k % 2 == 1:
            lo -= p + err
            hi -= p
        else:
            lo += p
            hi += p + err
        if k >= 3 and p + err <= 2:
            # next true term <= (p + err) * y / ((2k+1)(2k+2)) + 1 <= 3
            lo -= 3
            hi += 3
            break
    return lo, hi


def _round_endpoints(x: Enclosure, digits: int) -> tuple[int, int, int]:
    """Outward endpoints of x as integers over 10^digits."""
    s = 10 ** digits
    lo = x.lo.numerator * s // x.lo.denominator
    hi = _ceil_div(x.hi.numerator * s, x.hi.denominator)
    return lo, hi, s


def cos_enclosure(x: Enclosure, digits: int = 50) -> Enclosure:
    """Certified cos over an enclosure, reduced modulo 2*pi.

    The reduction subtracts k times the 2*pi enclosure, which contains the
    true 2*pi*k, so cos evaluated over the reduced interval still brackets
    cos of every point of x.  Precision of the pi enclosure is raised with
    the magnitude of x so the reduction itself cannot dominate the width.
    """
    if x.width > 2:
        return Enclosure(Fraction(-1), Fraction(1))
    mag = abs(int(x.mid))
    work = digits + _GUARD_DIGITS + len(str(mag))
    pi_enc = pi_enclosure(work)
    two_pi = pi_enc * 2
    k = floor(x.mid / two_pi.mid + Fraction(1, 2))
    y = x - two_pi * k
    if y.width > 2 or y.lo < Fraction(-9, 2) or y.hi > Fraction(9, 2):
        return Enclosure(Fraction(-1), Fraction(1))

    a_lo, a_hi, s = _round_endpoints(y, work)
    scale = 10 ** work
    c1 = _cos_point_scaled(a_lo, s, scale)
    c2 = _cos_point_scaled(a_hi, s, scale)
    lo = Fraction(min(c1[0], c2[0]), scale)
    hi = Fraction(max(c1[1], c2[1]), scale)
    # interior extrema: max at 0, minima at +-pi (|y| < 4.2 < 2*pi)
    if a_lo <= 0 <= a_hi:
        hi = Fraction(1)
    yl, yh = Fraction(a_lo, s), Fraction(a_hi, s)
    if yh >= pi_enc.lo and yl <= pi_enc.hi:
        lo = Fraction(-1)
    if yh >= -pi_enc.hi and yl <= -pi_enc.lo:
        lo = Fraction(-1)
    lo = max(lo, Fraction(-1))
    hi = min(hi, Fraction(1))
    return Enclosure(lo, hi).round(digits)


def sin_enclosure(x: Enclosure, digits: int = 50) -> Enclosure:
    """Certified sin via the shift sin(x) = cos(x - pi/2)."""
    half_pi = pi_enclosure(digits + _GUARD_DIGITS) * Fraction(1, 2)
    return cos_enclosure(x - half_pi, digits)


def _atanh_scaled(num: int, den: int, scale: int) -> tuple[int, int]:
    """Bracket atanh(num/den) * scale; requires |num/den| <= 1/3.

    All terms share the sign of num; truncation only shrinks magnitudes, so
    the truncated sum is a magnitude lower bound and slack plus a geometric
    tail bound give the upper one.
    """
    sign = -1 if num < 0 else 1
    num = abs(num)
    if 3 * num > den:
        raise ValueError("atanh kernel argument out of range")
    y2_num, y2_den = num * num, den * den
    p = scale * num // den
    err = 1
    mag_lo = mag_hi = 0
    j = 0
    while True:
        term = p // (2 * j + 1)
        mag_lo += term
        mag_hi += term + err
        if p + err <= 2:
            # geometric tail, ratio y^2 <= 1/9: sum < first term * 9/8
            mag_hi += 2 * (p + err) + 2
            break
        p = p * y2_num // y2_den
        err = _ceil_div(err * y2_num, y2_den) + 1
        j += 1
    if sign < 0:
        return -mag_hi, -mag_lo
    return mag_lo, mag_hi


@lru_cache(maxsize=None)
def _ln2_scaled(work: int) -> tuple[int, int, int]:
    scale = 10 ** work
    lo, hi = _atanh_scaled(1, 3, scale)
    return 2 * lo, 2 * hi, scale


def _log_point(t: Fraction, work: int) -> tuple[Fraction, Fraction]:
    """Certified bracket of ln(t) for an exact rational t > 0."""
    k = 0
    low, high = Fraction(2, 3), Fraction(3, 2)
    while t > high:
        t /= 2
        k += 1
    while t < low:
        t *= 2
        k -= 1
    scale = 10 ** work
    num = t.numerator - t.denominator
    den = t.numerator + t.denominator
    a_lo, a_hi = _atanh_scaled(num, den, scale)
    l2_lo, l2_hi, l2_scale = _ln2_scaled(work)
    if k >= 0:
        lo = Fraction(2 * a_lo, scale) + Fraction(k * l2_lo, l2_scale)
        hi = Fraction(2 * a_hi, scale) + Fraction(k * l2_hi, l2_scale)
    else:
        lo = Fraction(2 * a_lo, scale) + Fraction(k * l2_hi, l2_scale)
        hi = Fraction(2 * a_hi, scale) + Fraction(k * l2_lo, l2_scale)
    return lo, hi


def log_enclosure(x: Enclosure | Fraction | int, digits: int = 50) -> Enclosure:
    """Certified natural log of a strictly positive enclosure."""
    e = x if isinstance(x, Enclosure) else Enclosure.point(x)
    if e.lo <= 0:
        raise ValueError(f"log of an interval reaching zero or below: {e}")
    work = digits + _GUARD_DIGITS
    # log is increasing: bracket endpoints independently
    lo, _ = _log_point(e.lo, work)
    _, hi = _log_point(e.hi, work)
    return Enclosure(lo, hi).round(digits)
