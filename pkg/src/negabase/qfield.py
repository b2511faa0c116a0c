"""Exact arithmetic in the real quadratic field Q(beta).

An element is stored as ``(a + b*beta) / d`` with Python integers, where
``beta`` is the dominant root of ``x^2 - m*x - c`` (``c = n`` for the
``x^2 - mx - n`` family and ``c = -n`` for ``x^2 - mx + n``).  Signs and
floors are decided exactly through integer square roots; rational
enclosures are available separately for rendering and cross-checks.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


class BaseMismatch(ValueError):
    """Raised when combining elements of two different fields."""


def _sign_of_surd(p: int, q: int, disc: int) -> int:
    # sign of p + q*sqrt(disc); disc is never a perfect square here
    if q == 0:
        return (p > 0) - (p < 0)
    if p == 0 or (p > 0) == (q > 0):
        return 1 if q > 0 else -1
    if p * p > q * q * disc:
        return 1 if p > 0 else -1
    return 1 if q > 0 else -1


class FieldElement:
    """Immutable element ``(a + b*beta)/d`` of Q(beta) in canonical form."""

    __slots__ = ("a", "b", "d", "base")

    def __init__(self, a: int, b: int = 0, d: int = 1, base=None):
        if base is None:
            raise TypeError("FieldElement needs a base")
        if d == 0:
            raise ZeroDivisionError("zero denominator")
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(gcd(a, b), d)
        if g > 1:
            a, b, d = a // g, b // g, d // g
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "base", base)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def __reduce__(self):
        return (FieldElement, (self.a, self.b, self.d, self.base))

    # -- coercion -------------------------------------------------------

    def _coerce(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.base is not self.base and other.base != self.base:
                raise BaseMismatch(f"{self.base} vs {other.base}")
            return other
        if isinstance(other, int):
            return FieldElement(other, 0, 1, self.base)
        if isinstance(other, Fraction):
            return FieldElement(other.numerator, 0, other.denominator, self.base)
        return NotImplemented

    # -- ring operations ------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.d == other.d:
            return FieldElement(self.a + other.a, self.b + other.b, self.d, self.base)
        return FieldElement(self.a * other.d + other.a * self.d,
                            self.b * other.d + other.b * self.d,
                            self.d * other.d, self.base)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(-self.a, -self.b, self.d, self.base)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        # beta^2 = m*beta + c
        m, c = self.base.m, self.base.c
        bb = self.b * other.b
        return FieldElement(self.a * other.a + c * bb,
                            self.a * other.b + self.b * other.a + m * bb,
                            self.d * other.d, self.base)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm ``x * conjugate(x)``, a rational number."""
        m, c = self.base.m, self.base.c
        # (a + b beta)(a + b gamma) with beta + gamma = m, beta*gamma = -c
        num = self.a * self.a + m * self.a * self.b - c * self.b * self.b
        return Fraction(num, self.d * self.d)

    def inverse(self) -> FieldElement:
        if not self:
            raise ZeroDivisionError("inverse of zero")
        nrm = self.norm()
        conj = self.conjugate()
        return FieldElement(conj.a * nrm.denominator, conj.b * nrm.denominator,
                            conj.d * nrm.numerator, self.base)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = FieldElement(1, 0, 1, self.base)
        square = self
        while exponent:
            if exponent & 1:
                result = result * square
            exponent >>= 1
            if exponent:
                square = square * square
        return result

    def conjugate(self) -> FieldElement:
        """Galois conjugate: beta is sent to its conjugate ``m - beta``."""
        return FieldElement(self.a + self.b * self.base.m, -self.b, self.d, self.base)

    # -- order ----------------------------------------------------------

    def sign(self) -> Sign:
        return Sign(_sign_of_surd(2 * self.a + self.b * self.base.m, self.b, self.base.disc))

    def __floor__(self) -> int:
        return floor(self)

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return (self.a == other.a and self.b == other.b and self.d == other.d
                    and (self.base is other.base or self.base == other.base))
        if isinstance(other, int):
            return self.b == 0 and self.d == 1 and self.a == other
        if isinstance(other, Fraction):
            return self.b == 0 and Fraction(self.a, self.d) == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(Fraction(self.a, self.d))
        return hash((self.a, self.b, self.d, self.base))

    def _cmp(self, other) -> int:
        other = self._coerce(other)
        if other is NotImplemented:
            raise TypeError(f"cannot compare FieldElement with {other!r}")
        return int((self - other).sign())

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    # -- misc -----------------------------------------------------------

    def is_rational(self) -> bool:
        return self.b == 0

    def is_integer(self) -> bool:
        return self.b == 0 and self.d == 1

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "d": self.d}

    def __float__(self):
        lo, hi = refine_interval(self, Fraction(1, 10**20))
        return float((lo + hi) / 2)

    def __repr__(self):
        return f"FieldElement({self.a}, {self.b}, {self.d}, base={self.base})"

    def __str__(self):
        return format_element(self)


def add(x: FieldElement, y: FieldElement) -> FieldElement:
    return x + y


def mul(x: FieldElement, y: FieldElement) -> FieldElement:
    return x * y


def conjugate(x: FieldElement) -> FieldElement:
    return x.conjugate()


def sign(x: FieldElement) -> Sign:
    return x.sign()


def floor(x: FieldElement) -> int:
    """Greatest integer not exceeding ``x``.

    With ``beta = (m + sqrt(D))/2`` we have ``x = (P + Q*sqrt(D)) / (2d)``.
    ``Q*sqrt(D)`` lies strictly between two consecutive integers when
    ``Q != 0``, so flooring its integer part first does not change the
    result.
    """
    p = 2 * x.a + x.b * x.base.m
    q = x.b
    if q >= 0:
        s = isqrt(q * q * x.base.disc)
    else:
        s = -isqrt(q * q * x.base.disc) - 1
    return (p + s) // (2 * x.d)


# -- rational enclosures ------------------------------------------------


@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty interval")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, value) -> bool:
        return self.lo <= value <= self.hi

    def __iter__(self):
        return iter((self.lo, self.hi))


@lru_cache(maxsize=None)
def _beta_bracket(m: int, c: int, steps: int) -> tuple[Fraction, Fraction]:
    # bisection on x^2 - m x - c, starting from [1, m + 1]
    if steps == 0:
        return Fraction(1), Fraction(m + 1)
    lo, hi = _beta_bracket(m, c, steps - 1)
    mid = (lo + hi) / 2
    if mid * mid - m * mid - c < 0:
        return mid, hi
    return lo, mid


def beta_interval(base, width) -> RationalInterval:
    """Enclosure of beta itself of width at most ``width``."""
    width = Fraction(width)
    steps = 0
    lo, hi = _beta_bracket(base.m, base.c, 0)
    while hi - lo > width:
        steps += 1
        lo, hi = _beta_bracket(base.m, base.c, steps)
    return RationalInterval(lo, hi)


def refine_interval(x: FieldElement, width) -> RationalInterval:
    """Return a rational interval of width ``<= width`` containing ``x``."""
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    if x.b == 0:
        q = Fraction(x.a, x.d)
        return RationalInterval(q, q)
    scale = Fraction(abs(x.b), x.d)
    lo, hi = beta_interval(x.base, width / scale)
    ends = (Fraction(x.a + x.b * lo, x.d), Fraction(x.a + x.b * hi, x.d))
    return RationalInterval(min(ends), max(ends))


def to_decimal(x: FieldElement, digits: int = 30) -> Decimal:
    """Decimal rendering with ``digits`` significant digits (display only)."""
    lo, hi = refine_interval(x, Fraction(1, 10 ** (digits + 10)))
    mid = (lo + hi) / 2
    with localcontext() as ctx:
        ctx.prec = digits
        return Decimal(mid.numerator) / Decimal(mid.denominator)


# -- text forms ---------------------------------------------------------


def format_element(x: FieldElement) -> str:
    """Expression form, e.g. ``(-1+2*beta)/3``; ``d`` is omitted when 1."""
    if x.b == 0:
        body = str(x.a)
    elif x.a == 0:
        body = f"{x.b}*beta"
    else:
        body = f"{x.a}{'+' if x.b > 0 else '-'}{abs(x.b)}*beta"
    if x.d == 1:
        return body
    return f"({body})/{x.d}"


_TRIPLE = re.compile(r"^\s*(-?\d+)\s+(-?\d+)\s+(\d+)\s*$")
_TERM = re.compile(r"([+-]?)\s*(\d*)\s*(\*?\s*beta)?")


class ParseError(ValueError):
    pass


def _parse_linear(text: str) -> tuple[int, int]:
    if re.search(r"\d\s+\d", text):
        raise ParseError(f"missing operator in {text!r}")
    text = text.replace(" ", "")
    if not text:
        raise ParseError("empty expression")
    a = b = 0
    pos = 0
    while pos < len(text):
        match = _TERM.match(text, pos)
        if not match or match.end() == pos:
            raise ParseError(f"unexpected {text[pos:]!r} in {text!r}")
        sgn, num, has_beta = match.groups()
        if not num and not has_beta:
            raise ParseError(f"dangling sign in {text!r}")
        if pos > 0 and not sgn:
            raise ParseError(f"missing operator before {text[pos:]!r}")
        coef = int(num) if num else 1
        if sgn == "-":
            coef = -coef
        if has_beta:
            if num and not has_beta.startswith("*"):
                raise ParseError(f"write '{num}*beta' in {text!r}")
            b += coef
        else:
            a += coef
        pos = match.end()
    return a, b


def parse_element(text: str, base) -> FieldElement:
    """Parse ``"a b d"`` or an expression such as ``(a+b*beta)/d``.

    >>> from negabase.pbase import make_base
    >>> tau = make_base(1, 1, "-")
    >>> parse_element("(1+2*beta)/3", tau).to_json()
    {'a': 1, 'b': 2, 'd': 3}
    """
    match = _TRIPLE.match(text)
    if match:
        a, b, d = (int(g) for g in match.groups())
        if d == 0:
            raise ParseError("denominator must be positive")
        return FieldElement(a, b, d, base)
    body, _, den = text.strip().rpartition("/") if "/" in text else (text, "", "1")
    body = body.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    elif "/" in text and ("+" in body[1:] or "-" in body[1:]):
        raise ParseError(f"parenthesize the numerator in {text!r}")
    try:
        d = int(den)
    except ValueError:
        raise ParseError(f"bad denominator {den!r}") from None
    if d == 0:
        raise ParseError("zero denominator")
    a, b = _parse_linear(body)
    return FieldElement(a, b, d, base)
