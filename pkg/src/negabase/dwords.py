"""Digit words, their orders, admissibility tests and the text format.

Words are eventually periodic and stored canonically, so equality of
values of :class:`EPWord` / :class:`Expansion` is structural.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from math import lcm
from typing import NamedTuple, Optional, Sequence


def _primitive_root(period: tuple) -> tuple:
    size = len(period)
    for p in range(1, size):
        if size % p == 0 and period[:p] * (size // p) == period:
            return period[:p]
    return period


@dataclass(frozen=True)
class EPWord:
    """Infinite word ``preperiod + period^omega``.

    An empty period stands for the tail ``0^omega``.  The constructor
    canonicalizes: primitive period, minimal preperiod, and a zero period
    collapsed into the empty one.
    """

    preperiod: tuple = ()
    period: tuple = ()

    def __post_init__(self):
        pre = tuple(int(x) for x in self.preperiod)
        per = tuple(int(x) for x in self.period)
        if not any(per):
            per = ()
            while pre and pre[-1] == 0:
                pre = pre[:-1]
        else:
            per = _primitive_root(per)
            while pre and pre[-1] == per[-1]:
                pre = pre[:-1]
                per = per[-1:] + per[:-1]
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @classmethod
    def finite(cls, digits: Sequence[int]) -> EPWord:
        return cls(tuple(digits), ())

    @property
    def is_finite(self) -> bool:
        return not self.period

    @property
    def is_zero(self) -> bool:
        return not self.preperiod and not self.period

    def __getitem__(self, i: int) -> int:
        if i < 0:
            raise IndexError(i)
        if i < len(self.preperiod):
            return self.preperiod[i]
        if not self.period:
            return 0
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def prefix(self, count: int) -> tuple:
        return tuple(self[i] for i in range(count))

    def shift(self, count: int = 1) -> EPWord:
        """Drop the first ``count`` symbols."""
        pre, per = self.preperiod, self.period
        if count <= len(pre):
            return EPWord(pre[count:], per)
        if not per:
            return EPWord()
        r = (count - len(pre)) % len(per)
        return EPWord((), per[r:] + per[:r])

    def prepend(self, digits: Sequence[int]) -> EPWord:
        return EPWord(tuple(digits) + self.preperiod, self.period)

    def shifts(self) -> list:
        """All distinct suffixes; beyond these, shifts repeat."""
        count = len(self.preperiod) + max(len(self.period), 1)
        return [self.shift(i) for i in range(count)]

    def horizon(self, other: EPWord) -> int:
        """Length after which two words agreeing so far agree forever."""
        return (max(len(self.preperiod), len(other.preperiod))
                + lcm(len(self.period) or 1, len(other.period) or 1))

    def digits_until_tail(self) -> tuple:
        return self.preperiod + self.period

    def max_digit(self) -> int:
        return max(self.preperiod + self.period, default=0)

    def __str__(self):
        return format_word(self)


@dataclass(frozen=True)
class Expansion:
    """Digit word anchored at the exponent ``k`` of its first symbol.

    The digit at flattened index ``i`` multiplies ``(+-beta)^(k - i)``.
    Leading zeros are stripped on construction (they never change the
    value); zero is ``EPWord()`` anchored at ``k = 0``.
    """

    word: EPWord
    k: int = 0

    def __post_init__(self):
        word, k = self.word, self.k
        if not isinstance(word, EPWord):
            word = EPWord.finite(word)
        if word.is_zero:
            k = 0
        else:
            lead = 0
            while word[lead] == 0:
                lead += 1
            if lead:
                word, k = word.shift(lead), k - lead
        object.__setattr__(self, "word", word)
        object.__setattr__(self, "k", k)

    @classmethod
    def from_digits(cls, digits: Sequence[int], frac: int = 0) -> Expansion:
        """Finite expansion from digits, the last ``frac`` being fractional."""
        return cls(EPWord.finite(digits), len(digits) - frac - 1)

    @property
    def is_finite(self) -> bool:
        return self.word.is_finite

    @property
    def is_zero(self) -> bool:
        return self.word.is_zero

    def digit_at(self, power: int) -> int:
        idx = self.k - power
        return self.word[idx] if idx >= 0 else 0

    @property
    def low_power(self) -> int:
        """Exponent of the last nonzero digit of a finite expansion."""
        if not self.is_finite:
            raise ValueError("infinite expansion")
        return self.k - len(self.word.preperiod) + 1

    def finite_digits(self) -> tuple:
        """Digits from the leading one down to ``min(0, low_power)``."""
        if self.is_zero:
            return (0,)
        low = min(0, self.low_power)
        return tuple(self.digit_at(p) for p in range(max(self.k, 0), low - 1, -1))

    def fractional_length(self):
        if not self.is_finite:
            return float("inf")
        if self.is_zero:
            return 0
        return max(0, -self.low_power)

    @property
    def is_integer(self) -> bool:
        return self.fractional_length() == 0

    def __str__(self):
        return format_expansion(self)


# -- orders ---------------------------------------------------------------


def lex_compare(u: EPWord, v: EPWord) -> int:
    """Lexicographic comparison of infinite words: -1, 0 or 1."""
    for i in range(u.horizon(v)):
        x, y = u[i], v[i]
        if x != y:
            return -1 if x < y else 1
    return 0


def alt_compare(u: EPWord, v: EPWord) -> int:
    """Alternate order; the first symbol has index 1 (odd, so reversed)."""
    for i in range(u.horizon(v)):
        x, y = u[i], v[i]
        if x != y:
            # j = i + 1; compare x*(-1)^j with y*(-1)^j
            less = x > y if i % 2 == 0 else x < y
            return -1 if less else 1
    return 0


# -- admissibility --------------------------------------------------------


def is_admissible_neg(w: EPWord, base, open_left: bool = False) -> bool:
    """Ito-Sadahiro condition on every shift of ``w``.

    ``open_left`` additionally rejects ``w == d(l)``, i.e. tests whether
    ``w`` is the digit word of some point of the open interval ``(l, r)``;
    that is the condition an expansion's own digit word must satisfy.
    """
    refs = base.reference_words()
    if w.max_digit() > base.alphabet_max_neg:
        return False
    if open_left and w == refs.d_l:
        return False
    for s in w.shifts():
        if alt_compare(refs.d_l, s) > 0 or alt_compare(s, refs.dstar_r) >= 0:
            return False
    return True


def is_admissible_pos(w: EPWord, base) -> bool:
    """Parry condition: every shift strictly below ``d*(1)``."""
    if w.max_digit() > base.alphabet_max_pos:
        return False
    dstar = base.reference_words().dstar_pos
    return all(lex_compare(s, dstar) < 0 for s in w.shifts())


def is_expansion(e: Expansion, base, sign: str = "neg") -> bool:
    """Whether ``e`` is the canonical expansion of its value."""
    if e.is_zero:
        return True
    if sign == "neg":
        return is_admissible_neg(e.word, base, open_left=True)
    return is_admissible_pos(e.word, base)


class PatternKind(enum.Enum):
    EVEN_RUN_LOW = "m(m-n)^{2k}C"     # C <= m-n-1, only when m > n
    ODD_RUN_HIGH = "m(m-n)^{2k+1}D"   # D >= m-n+1 (m 0^{2k+1} D when m = n)
    TERMINAL = "0m0^omega"            # only when m = n


class Forbidden(NamedTuple):
    start: int          # index of the m, or of the 0 before it for TERMINAL
    kind: PatternKind
    run: int            # number of (m-n) digits after the m


def forbidden_scan(w: Sequence[int], base) -> Optional[Forbidden]:
    """Left-most forbidden factor of ``0 w 0^omega`` for ``x^2 - mx - n``.

    ``w`` is read with an implicit ``0`` in front (so a word consisting of
    ``m`` alone trips the terminal rule, index ``-1``) and ``0^omega``
    behind.  Returns ``None`` exactly when ``w`` is the digit string of an
    expansion.
    """
    if not base.is_minus:
        raise ValueError("forbidden patterns are defined for x^2 - mx - n only")
    m, n = base.m, base.n
    gap = m - n
    size = len(w)
    for d in w:
        if not 0 <= d <= m:
            raise ValueError(f"digit {d} outside 0..{m}")
    best = None
    if m == n:
        last = size - 1
        while last >= 0 and w[last] == 0:
            last -= 1
        if last >= 0 and w[last] == m and (last == 0 or w[last - 1] == 0):
            best = Forbidden(last - 1, PatternKind.TERMINAL, 0)
    for i in range(size):
        if best is not None and i >= best.start:
            break
        if w[i] != m:
            continue
        j = i + 1
        while j < size and w[j] == gap:
            j += 1
        run = j - i - 1
        if j == size and gap == 0:
            continue  # m followed by 0^omega
        nxt = w[j] if j < size else 0
        if run % 2 == 0 and nxt < gap:
            return Forbidden(i, PatternKind.EVEN_RUN_LOW, run)
        if run % 2 == 1 and nxt > gap:
            return Forbidden(i, PatternKind.ODD_RUN_HIGH, run)
    return best


# -- text format ----------------------------------------------------------


def _join(digits: Sequence[int], comma: bool) -> str:
    return ",".join(map(str, digits)) if comma else "".join(map(str, digits))


def _use_comma(digits, comma) -> bool:
    if comma is not None:
        return comma
    return any(d > 9 or d < 0 for d in digits)


def format_word(w: EPWord, comma: Optional[bool] = None) -> str:
    """``pre(per)``; a finite word prints without parentheses, zero as ``0``."""
    comma = _use_comma(w.preperiod + w.period, comma)
    if w.is_zero:
        return "0"
    text = _join(w.preperiod, comma)
    if w.period:
        text += "(" + _join(w.period, comma) + ")"
    return text


def format_expansion(e: Expansion, comma: Optional[bool] = None) -> str:
    """Render as ``int.frac(period)``, e.g. ``11.(1)`` or ``10.01``."""
    top = max(e.k, 0)
    full = e.word.prepend([0] * (top - e.k))
    pre, per = list(full.preperiod), list(full.period)
    if per:
        while len(pre) < top + 1:
            pre.append(per[0])
            per = per[1:] + per[:1]
    else:
        pre += [0] * (top + 1 - len(pre))
    comma = _use_comma(pre + per, comma)
    text = _join(pre[: top + 1], comma) + "." + _join(pre[top + 1:], comma)
    if per:
        text += "(" + _join(per, comma) + ")"
    return text


class WordSyntaxError(ValueError):
    pass


_EXPANSION = re.compile(r"^([0-9,]*)(?:\.([0-9,]*)(?:\(([0-9,]+)\))?)?$")
_WORD = re.compile(r"^([0-9,]*)(?:\(([0-9,]+)\))?$")


def _digits(text: str, comma: bool) -> list:
    if comma:
        tokens = text.split(",") if text else []
        if "" in tokens:
            raise WordSyntaxError(f"empty digit in {text!r}")
        return [int(tok) for tok in tokens]
    return [int(ch) for ch in text if ch != ","]


def _comma_mode(text: str, alphabet_max: Optional[int]) -> bool:
    return "," in text or (alphabet_max is not None and alphabet_max > 9)


def parse_expansion(text: str, alphabet_max: Optional[int] = None) -> Expansion:
    """Inverse of :func:`format_expansion`.

    Digits are juxtaposed unless the text contains commas or the alphabet
    has digits above 9.  Text written with ``comma=alphabet_max > 9``
    parses back to the same expansion.  A missing point means an integer: ``"110"`` is
    ``110.``.
    """
    text = text.strip()
    match = _EXPANSION.match(text)
    if not text or not match:
        raise WordSyntaxError(
            f"bad digit word {text!r}; expected e.g. 110. or 11.(1) or 10,3.2(1,0)")
    comma = _comma_mode(text, alphabet_max)
    int_part = _digits(match.group(1), comma) or [0]
    frac = _digits(match.group(2) or "", comma)
    per = _digits(match.group(3) or "", comma)
    word = EPWord(tuple(int_part + frac), tuple(per))
    return Expansion(word, len(int_part) - 1)


def parse_word(text: str, alphabet_max: Optional[int] = None) -> EPWord:
    """Parse ``pre(per)`` as printed by :func:`format_word`."""
    text = text.strip()
    match = _WORD.match(text)
    if not text or not match:
        raise WordSyntaxError(f"bad word {text!r}; expected e.g. 2(1) or (10)")
    comma = _comma_mode(text, alphabet_max)
    return EPWord(tuple(_digits(match.group(1), comma)),
                  tuple(_digits(match.group(2) or "", comma)))
