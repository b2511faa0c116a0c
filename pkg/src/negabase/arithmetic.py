"""Digit-level arithmetic in base -beta for beta a root of x^2 - mx - n.

Normalization removes forbidden factors one at a time by adding digit
representations of zero; addition is a sequence of unit increments, each
overflow ``m + 1`` being absorbed by a zero template.  Multiplication and
subtraction go through the exact field, as there is no digit algorithm for
them here.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .dwords import (EPWord, Expansion, Forbidden, PatternKind, format_expansion,
                     forbidden_scan, is_expansion)
from .expander import NEG, POS, DomainError, evaluate, expand_real
from .pbase import TAU


@dataclass(frozen=True)
class RawDigitString:
    """Finite digit string; ``digits[0]`` sits at exponent ``anchor``."""

    digits: tuple
    anchor: int = 0

    @classmethod
    def integer(cls, digits: Sequence[int]) -> RawDigitString:
        return cls(tuple(digits), len(digits) - 1)

    @classmethod
    def from_expansion(cls, e: Expansion) -> RawDigitString:
        if not e.is_finite:
            raise DomainError("expansion is not finite")
        return cls(tuple(e.word.preperiod) or (0,), e.k)

    def as_expansion(self) -> Expansion:
        return Expansion(EPWord.finite(self.digits), self.anchor)

    def value(self, base, sign: str = NEG):
        return evaluate(self.as_expansion(), base, sign)


@dataclass(frozen=True)
class ZeroTemplate:
    pattern: tuple
    offset: int = 0     # exponent of pattern[0] relative to the target digit

    def value(self, base):
        return RawDigitString(self.pattern, self.offset).value(base)


def zero_plus(base) -> ZeroTemplate:
    """``1 m -n .`` = 0."""
    return ZeroTemplate((1, base.m, -base.n), 2)


def zero_minus(base) -> ZeroTemplate:
    """``-1 -m n .`` = 0."""
    return ZeroTemplate((-1, -base.m, base.n), 2)


def long_zero(base, k: int) -> ZeroTemplate:
    """``1 (m+1) (m-n+1)^(k-1) (m-n) -n`` = 0, used for carries of length k."""
    m, n = base.m, base.n
    return ZeroTemplate((1, m + 1) + (m - n + 1,) * (k - 1) + (m - n, -n), 1)


class _Digits:
    """Mutable digit buffer indexed by exponent, growing on demand."""

    __slots__ = ("digits", "top")

    def __init__(self, digits, top):
        self.digits = list(digits)
        self.top = top

    @property
    def low(self):
        return self.top - len(self.digits) + 1

    def _cover(self, power):
        if power > self.top:
            self.digits[:0] = [0] * (power - self.top)
            self.top = power
        elif power < self.low:
            self.digits.extend([0] * (self.low - power))

    def __getitem__(self, power):
        if power > self.top or power < self.low:
            return 0
        return self.digits[self.top - power]

    def __setitem__(self, power, value):
        self._cover(power)
        self.digits[self.top - power] = value

    def add_at(self, power, values):
        """Add ``values`` to consecutive exponents ``power, power-1, ...``."""
        self._cover(power)
        self._cover(power - len(values) + 1)
        i = self.top - power
        for v in values:
            self.digits[i] += v
            i += 1

    def pad_left(self, count=2):
        lead = 0
        while lead < len(self.digits) and self.digits[lead] == 0:
            lead += 1
        if lead < count:
            self._cover(self.top + count - lead)

    def to_expansion(self) -> Expansion:
        return Expansion(EPWord.finite(self.digits), self.top)

    def snapshot(self) -> RawDigitString:
        return RawDigitString(tuple(self.digits), self.top)


def _require_minus(base):
    if not base.is_minus:
        raise DomainError("digit arithmetic is implemented for x^2 - mx - n bases only")


@dataclass
class RewriteStep:
    rule: str
    power: int              # exponent of the left-most forbidden occurrence
    before: RawDigitString
    after: RawDigitString


def _rewrite(buf: _Digits, hit: Forbidden, base) -> str:
    m, n = base.m, base.n
    p = buf.top - hit.start            # exponent of the m (or of the 0 for TERMINAL)
    if hit.kind is PatternKind.TERMINAL:
        # A 0 m -> (A+1) m 0
        buf.add_at(p + 1, (1, m, -n))
        return "3"
    high = "1" if hit.kind is PatternKind.EVEN_RUN_LOW else "2"
    if buf[p + 1] == 0:
        # A 0 m -> (A+1) m (m-n)
        buf.add_at(p + 2, (1, m, -n))
        return high + ".1"
    # B m X -> (B-1) 0 (X+n)
    buf.add_at(p + 1, (-1, -m, n))
    if high == "2":
        return "2.2"
    return "1.2" if hit.run else "1.3"


def _normalize(buf: _Digits, base, trace: Optional[Callable] = None) -> None:
    m = base.m
    last_power = None
    while True:
        buf.pad_left()
        hit = forbidden_scan(buf.digits, base)
        if hit is None:
            return
        power = buf.top - hit.start
        if last_power is not None and power >= last_power:
            raise AssertionError("left-most forbidden factor did not move right")
        last_power = power
        before = buf.snapshot() if trace else None
        rule = _rewrite(buf, hit, base)
        if any(d < 0 or d > m for d in buf.digits):
            raise AssertionError(f"rule {rule} left the alphabet")
        if trace:
            trace(RewriteStep(rule, power, before, buf.snapshot()))


def normalize_neg(s, base, trace: Optional[Callable] = None) -> Expansion:
    """(-beta)-expansion of a finite string over ``{0, ..., m}``.

    ``s`` is a :class:`RawDigitString` or a finite :class:`Expansion`.
    ``trace`` receives a :class:`RewriteStep` after each rewrite.
    """
    _require_minus(base)
    if isinstance(s, Expansion):
        s = RawDigitString.from_expansion(s)
    for d in s.digits:
        if not 0 <= d <= base.m:
            raise DomainError(f"digit {d} outside 0..{base.m}")
    buf = _Digits(s.digits, s.anchor)
    _normalize(buf, base, trace)
    return buf.to_expansion()


def _increment(buf: _Digits, power: int, base) -> None:
    """Add ``(-beta)^power`` to an admissible buffer whose digit there is m."""
    m, n = base.m, base.n
    if buf[power + 1] == 0:
        # case 1: A 0 (m+1) + 1 m -n
        buf.add_at(power + 2, (1, m, 1 - n))
        return
    if buf[power - 1] == m - n:
        # case 2: B (m+1) (m-n) - 1 m -n
        buf.add_at(power + 1, (-1, 1 - m, n))
        return
    # case 3: B (m+1) X_1..X_k Y with X_i > m - n, Y <= m - n
    k = 0
    while buf[power - 1 - k] > m - n:
        k += 1
    tmpl = long_zero(base, k).pattern
    buf.add_at(power + 1, (-tmpl[0], 1 - tmpl[1]) + tuple(-t for t in tmpl[2:]))


def add_neg(x: Expansion, y: Expansion, base, trace: Optional[Callable] = None) -> Expansion:
    """Sum of two finite (-beta)-expansions by unit increments.

    Increments that stay inside the alphabet are batched; the buffer is
    normalized only before an overflow has to be resolved, because the
    overflow rules assume an admissible neighbourhood.
    """
    _require_minus(base)
    if not (x.is_finite and y.is_finite):
        raise DomainError("add_neg needs finite expansions")
    if y.is_zero:
        return x
    m = base.m
    buf = _Digits(x.word.preperiod or (0,), x.k)
    dirty = False
    for i, count in enumerate(y.word.preperiod):
        power = y.k - i
        for _ in range(count):
            if buf[power] < m:
                buf[power] = buf[power] + 1
                dirty = True
                continue
            if dirty:
                _normalize(buf, base, trace)
                dirty = False
                if buf[power] < m:
                    buf[power] = buf[power] + 1
                    dirty = True
                    continue
            _increment(buf, power, base)
            if any(d < 0 or d > m for d in buf.digits):
                raise AssertionError("overflow rule left the alphabet")
            dirty = True
    _normalize(buf, base, trace)
    return buf.to_expansion()


def field_op(x: Expansion, y: Expansion, base, op: str, sign: str = NEG) -> Expansion:
    """Exact route: evaluate, combine in Q(beta), expand again."""
    a, b = evaluate(x, base, sign), evaluate(y, base, sign)
    if op == "add":
        value = a + b
    elif op == "sub":
        value = a - b
    elif op == "mul":
        value = a * b
    else:
        raise ValueError(f"unknown operation {op!r}")
    return expand_real(value, base, sign)


def mul_neg(x: Expansion, y: Expansion, base) -> Expansion:
    """Product; the result's ``is_finite`` tells whether it lies in Fin(-beta)."""
    return field_op(x, y, base, "mul")


def sub_neg(x: Expansion, y: Expansion, base) -> Expansion:
    return field_op(x, y, base, "sub")


# -- golden ratio, positive base -------------------------------------------


def _check_tau(base):
    if base != TAU:
        raise DomainError("this routine is specific to the golden ratio")


def _carry_tau(buf: _Digits) -> None:
    # replace the highest factor 011 by 100 until no 11 remains
    while True:
        buf.pad_left(1)
        digits = buf.digits
        for i in range(len(digits) - 1):
            if digits[i] == 1 and digits[i + 1] == 1:
                break
        else:
            return
        p = buf.top - i
        buf.add_at(p + 1, (1, -1, -1))


def normalize_pos_tau(s: RawDigitString, base=TAU) -> Expansion:
    """tau-expansion of a string of non-negative digits.

    Binary strings only need ``011 -> 100``; larger digits are fed in as
    unit insertions.
    """
    _check_tau(base)
    if any(d < 0 for d in s.digits):
        raise DomainError("normalize_pos_tau takes non-negative digits")
    if all(d in (0, 1) for d in s.digits):
        buf = _Digits(s.digits, s.anchor)
        _carry_tau(buf)
        return buf.to_expansion()
    buf = _Digits((0,), s.anchor)
    for i, count in enumerate(s.digits):
        for _ in range(count):
            _add_unit_tau(buf, s.anchor - i)
    return buf.to_expansion()


def _add_unit_tau(buf: _Digits, power: int) -> None:
    if buf[power] == 0:
        buf[power] = 1
        _carry_tau(buf)
        return
    # 2 tau^p = tau^(p+1) + tau^(p-2)
    buf[power] = 0
    _add_unit_tau(buf, power + 1)
    _add_unit_tau(buf, power - 2)


def add_pos_tau(x: Expansion, y: Expansion) -> Expansion:
    """Sum in Fin(tau) by unit insertions into a carry-free buffer."""
    buf = _Digits(x.word.preperiod or (0,), x.k)
    for i, count in enumerate(y.word.preperiod):
        for _ in range(count):
            _add_unit_tau(buf, y.k - i)
    return buf.to_expansion()


def sigma_transport_add_tau(x: Expansion, y: Expansion, base=TAU) -> Expansion:
    """x + y in base -tau through the conjugate positive representations.

    Reversing the digits of a (-tau)-integer gives a tau-representation of
    its conjugate; those are added in Fin(tau), and reversing the sum
    represents the conjugate of that sum, i.e. ``x + y``.
    """
    _check_tau(base)
    for e in (x, y):
        if not (e.is_finite and e.is_integer):
            raise DomainError("sigma transport takes (-tau)-integers")

    def mirrored(e: Expansion) -> Expansion:
        digits = e.finite_digits()
        return Expansion(EPWord.finite(digits[::-1]), 0)

    z = add_pos_tau(normalize_pos_tau(RawDigitString.from_expansion(mirrored(x))),
                    normalize_pos_tau(RawDigitString.from_expansion(mirrored(y))))
    if z.is_zero:
        return z
    digits = z.finite_digits()
    reflected = RawDigitString(digits[::-1], -min(0, z.low_power))
    return normalize_neg(reflected, base)


def fractional_length(e: Expansion):
    """Digits after the point of a finite expansion; ``inf`` if periodic."""
    return e.fractional_length()


# -- empirical L-bounds ---------------------------------------------------


@dataclass
class LScanReport:
    max: int
    witness_x: Optional[str]
    witness_y: Optional[str]
    result: Optional[str]
    infinite_count: int
    pairs: int
    witnesses: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"max": self.max, "witness_x": self.witness_x, "witness_y": self.witness_y,
                "result": self.result, "infinite_count": self.infinite_count,
                "pairs": self.pairs, "witness_count": len(self.witnesses)}


def integer_words(base, sign: str, max_len: int) -> list:
    """Expansions of the integers with at most ``max_len`` digits, >= 0 for ``pos``."""
    from .integers import enumerate_integers
    return list(enumerate_integers(base, sign, max_len, nonnegative=(sign == POS)).expansions)


def _combine(x, y, base, sign, op):
    if op == "add" and sign == NEG and base.is_minus:
        return add_neg(x, y, base)
    if op == "add" and sign == POS and base == TAU:
        return add_pos_tau(x, y)
    return field_op(x, y, base, op, sign)


def _scan_chunk(args):
    base, sign, op, words, rows = args
    best, infinite, found = -1, 0, []
    for i in rows:
        x = words[i]
        for j in range(i, len(words)):
            res = _combine(x, words[j], base, sign, op)
            f = res.fractional_length()
            if f == math.inf:
                infinite += 1
                continue
            if f > best:
                best, found = f, []
            if f == best:
                found.append((i, j, res))
    return best, infinite, found


def _shortlex_pair(w):
    x, y = w[0], w[1]
    return (len(x) + len(y), len(x), x, y)


def l_scan(base, sign: str, op: str, max_len: int, workers: int = 1) -> LScanReport:
    """Largest finite fractional length of ``x op y`` over integers of length ``<= max_len``.

    Pairs are unordered (both operations commute).  The reported witness is
    the shortlex-least pair among those attaining the maximum, so the
    report does not depend on ``workers``.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    if op not in ("add", "mul"):
        raise ValueError("op must be 'add' or 'mul'")
    words = integer_words(base, sign, max_len)
    rows = list(range(len(words)))
    if workers > 1:
        chunks = [(base, sign, op, words, rows[k::workers]) for k in range(workers)]
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_scan_chunk, chunks))
    else:
        parts = [_scan_chunk((base, sign, op, words, rows))]
    best = max(p[0] for p in parts)
    infinite = sum(p[1] for p in parts)
    fmt = format_expansion
    witnesses = sorted(((fmt(words[i]), fmt(words[j]), fmt(r))
                        for p in parts if p[0] == best for (i, j, r) in p[2]),
                       key=_shortlex_pair)
    first = witnesses[0] if witnesses else (None, None, None)
    pairs = len(words) * (len(words) + 1) // 2
    return LScanReport(best, first[0], first[1], first[2], infinite, pairs, witnesses)


def check_admissible(e: Expansion, base, sign: str = NEG) -> Expansion:
    if not is_expansion(e, base, sign):
        raise DomainError(f"{format_expansion(e)} is not an admissible expansion")
    return e
