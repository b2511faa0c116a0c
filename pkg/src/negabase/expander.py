"""Exact beta- and (-beta)-expansions by iterating the transformations."""

from __future__ import annotations

from dataclasses import dataclass

from .dwords import EPWord, Expansion
from .qfield import FieldElement, floor

POS = "pos"
NEG = "neg"


class DomainError(ValueError):
    """Input outside the domain of a transformation."""


@dataclass(frozen=True)
class OrbitState:
    value: FieldElement
    step: int


def _check_sign(sign: str) -> None:
    if sign not in (POS, NEG):
        raise ValueError(f"sign must be 'pos' or 'neg', not {sign!r}")


def radix(base, sign: str) -> FieldElement:
    """``beta`` or ``-beta``."""
    return base.beta if sign == POS else -base.beta


def t_pos_step(x: FieldElement) -> tuple[int, FieldElement]:
    if x.sign() < 0 or x >= 1:
        raise DomainError(f"{x} is not in [0, 1)")
    y = x * x.base.beta
    digit = floor(y)
    return digit, y - digit


def t_neg_step(x: FieldElement) -> tuple[int, FieldElement]:
    l, r = x.base.endpoints
    if x < l or x >= r:
        raise DomainError(f"{x} is not in [l, r)")
    y = -(x * x.base.beta)
    digit = floor(y - l)
    return digit, y - digit


def orbit(x: FieldElement, sign: str):
    """Yield ``(OrbitState, digit)`` pairs forever."""
    step_fn = t_neg_step if sign == NEG else t_pos_step
    step = 0
    while True:
        digit, nxt = step_fn(x)
        yield OrbitState(x, step), digit
        x, step = nxt, step + 1


def expand_in_interval(x: FieldElement, sign: str = NEG) -> EPWord:
    """Digit word ``d(x)`` of a point of ``[0,1)`` resp. ``[l, r)``.

    The orbit lives in a finite set (fixed denominator, bounded value and
    bounded conjugate), so it is eventually periodic; the first repeated
    state closes the period.
    """
    _check_sign(sign)
    step_fn = t_neg_step if sign == NEG else t_pos_step
    seen = {}
    digits = []
    while x not in seen:
        seen[x] = len(digits)
        digit, x = step_fn(x)
        digits.append(digit)
    start = seen[x]
    return EPWord(tuple(digits[:start]), tuple(digits[start:]))


def expand_real(x: FieldElement, base=None, sign: str = NEG) -> Expansion:
    """Canonical expansion of ``x`` in base ``-beta`` or ``beta``.

    The scaling exponent ``K`` is the least one with
    ``x * radix^(-K)`` in the open window (``(l, r)`` resp. ``(0, 1)``);
    the admissible ``K`` form an up-set, so a walk from ``K = 0`` finds it.
    Minimality makes the leading digit nonzero, and excluding ``l`` itself
    gives ``<l> = 1 d_1 . d_2 ...`` automatically.
    """
    _check_sign(sign)
    base = base or x.base
    if x.base != base:
        raise DomainError("element belongs to a different base")
    if not x:
        return Expansion(EPWord(), 0)
    if sign == POS:
        if x.sign() < 0:
            raise DomainError("positive-base expansions need x >= 0")
        lo, hi = base.elem(0), base.elem(1)
    else:
        lo, hi = base.endpoints

    def inside(y):
        return lo < y < hi

    rad = radix(base, sign)
    inv = rad.inverse()
    y, K = x, 0
    if inside(y):
        while inside(y * rad):
            y, K = y * rad, K - 1
    else:
        while not inside(y):
            y, K = y * inv, K + 1
    word = expand_in_interval(y, sign)
    assert word[0] != 0
    return Expansion(word, K - 1)


def _horner(digits, rad: FieldElement) -> FieldElement:
    acc = rad.base.elem(0)
    for d in digits:
        acc = acc * rad + d
    return acc


def evaluate(e: Expansion, base, sign: str = NEG) -> FieldElement:
    """Exact value of a (possibly raw, possibly periodic) expansion."""
    _check_sign(sign)
    rad = radix(base, sign)
    pre, per = e.word.preperiod, e.word.period
    value = _horner(pre, rad) * rad ** (e.k - len(pre) + 1)
    if per:
        p = len(per)
        block = _horner(per, rad) * rad ** (e.k - len(pre) - p + 1)
        value = value + block / (1 - rad ** (-p))
    return value


def expand_one_quasi_greedy(base) -> EPWord:
    """``d*(1)`` computed from the greedy expansion of 1 itself.

    Independent of the closed forms; used to cross-check them.
    """
    beta = base.beta
    first = floor(beta)
    rest = beta - first
    tail = expand_in_interval(rest, POS) if rest else EPWord()
    word = tail.prepend([first])
    if not word.is_finite:
        return word
    digits = list(word.preperiod)
    digits[-1] -= 1
    return EPWord((), tuple(digits))
