"""Quadratic Pisot bases, their interval endpoints and reference words."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .dwords import EPWord
from .qfield import FieldElement


class Family(enum.Enum):
    MINUS_N = "-"   # x^2 - m x - n,  m >= n >= 1
    PLUS_N = "+"    # x^2 - m x + n,  m >= n + 2 >= 3


class InvalidBase(ValueError):
    """Parameters outside the quadratic Pisot ranges."""


class BaseSyntaxError(ValueError):
    pass


class Endpoints(NamedTuple):
    l: FieldElement
    r: FieldElement


class ReferenceWords(NamedTuple):
    dstar_pos: EPWord   # d*(1) for the positive base
    d_l: EPWord         # d(l) for the negative base
    dstar_r: EPWord     # d*(r) for the negative base


@dataclass(frozen=True)
class PisotBase:
    m: int
    n: int
    family: Family

    def __post_init__(self):
        fam = self.family
        if not isinstance(fam, Family):
            fam = Family(fam)
            object.__setattr__(self, "family", fam)
        m, n = self.m, self.n
        if fam is Family.MINUS_N and not m >= n >= 1:
            raise InvalidBase(f"x^2-{m}x-{n} needs m >= n >= 1")
        if fam is Family.PLUS_N and not m >= n + 2 >= 3:
            raise InvalidBase(f"x^2-{m}x+{n} needs m >= n + 2 >= 3")

    @property
    def is_minus(self) -> bool:
        return self.family is Family.MINUS_N

    @property
    def c(self) -> int:
        """Constant with ``beta^2 = m*beta + c``."""
        return self.n if self.is_minus else -self.n

    @property
    def disc(self) -> int:
        return self.m * self.m + 4 * self.c

    @property
    def alphabet_max_neg(self) -> int:
        return self.m if self.is_minus else self.m - 1

    @property
    def alphabet_max_pos(self) -> int:
        # beta is irrational, so ceil(beta) - 1 == floor(beta)
        return self.alphabet_max_neg

    def elem(self, a: int = 0, b: int = 0, d: int = 1) -> FieldElement:
        return FieldElement(a, b, d, self)

    @cached_property
    def beta(self) -> FieldElement:
        return FieldElement(0, 1, 1, self)

    @cached_property
    def endpoints(self) -> Endpoints:
        beta = self.beta
        l = -beta / (beta + 1)
        return Endpoints(l, l + 1)

    def reference_words(self) -> ReferenceWords:
        return self._reference_words

    @cached_property
    def _reference_words(self) -> ReferenceWords:
        m, n = self.m, self.n
        if self.is_minus:
            dstar_pos = EPWord((), (m, n - 1))
            d_l = EPWord((m,), (m - n,))
        else:
            dstar_pos = EPWord((m - 1,), (m - n - 1,))
            d_l = EPWord((), (m - 1, n))
        return ReferenceWords(dstar_pos, d_l, dstar_r_from_dl(d_l))

    def __str__(self):
        return f"{self.m},{self.n},{self.family.value}"


def dstar_r_from_dl(d_l: EPWord) -> EPWord:
    """``d*(r)`` from ``d(l)``: the odd purely periodic case is special."""
    per = d_l.period
    if not d_l.preperiod and len(per) % 2 == 1:
        return EPWord((), (0,) + per[:-1] + (per[-1] - 1,))
    return d_l.prepend([0])


def make_base(m: int, n: int, family="-") -> PisotBase:
    return PisotBase(int(m), int(n), Family(family) if isinstance(family, str) else family)


def parse_base(text: str) -> PisotBase:
    """``"m,n,-"`` for ``x^2 - mx - n``, ``"m,n,+"`` for ``x^2 - mx + n``."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3 or parts[2] not in ("-", "+"):
        raise BaseSyntaxError(f"bad base {text!r}; expected m,n,- or m,n,+")
    try:
        m, n = int(parts[0]), int(parts[1])
    except ValueError:
        raise BaseSyntaxError(f"bad base {text!r}; m and n must be integers") from None
    return make_base(m, n, parts[2])


def endpoints(base: PisotBase) -> Endpoints:
    return base.endpoints


def reference_words(base: PisotBase) -> ReferenceWords:
    return base.reference_words()


TAU = make_base(1, 1, "-")
TAU_SQUARED = make_base(3, 1, "+")
