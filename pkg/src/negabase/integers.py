"""beta- and (-beta)-integers, gap words and the substitution fixed point."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Optional

from .dwords import EPWord, Expansion, forbidden_scan, is_admissible_pos, format_expansion
from .expander import NEG, POS, evaluate, radix
from .pbase import TAU, TAU_SQUARED
from .qfield import FieldElement

DELTA0, DELTA1 = 0, 1
PHI = {DELTA0: (DELTA0, DELTA0, DELTA1), DELTA1: (DELTA0, DELTA1)}


class GapError(ValueError):
    """A gap other than 1 or 1/tau between consecutive integers."""


@dataclass
class IntegerSet:
    """Sorted integers of one numeration system within a digit-length window.

    For ``sign == "pos"`` negative points carry the expansion of ``|x|``.
    ``window`` is the open interval that the enumeration covers completely.
    """

    base: object
    sign: str
    points: list
    expansions: list
    window: tuple = field(default=(None, None))

    def __len__(self):
        return len(self.points)

    def between(self, lo, hi) -> IntegerSet:
        keep = [i for i, x in enumerate(self.points) if lo <= x <= hi]
        return IntegerSet(self.base, self.sign, [self.points[i] for i in keep],
                          [self.expansions[i] for i in keep], self.window)

    def nonnegative(self) -> IntegerSet:
        keep = [i for i, x in enumerate(self.points) if x.sign() >= 0]
        return IntegerSet(self.base, self.sign, [self.points[i] for i in keep],
                          [self.expansions[i] for i in keep], self.window)

    def __contains__(self, x) -> bool:
        return x in set(self.points)


def _neg_words(base, digit_len):
    # depth-first over digit strings; a prefix is dropped as soon as it
    # contains a forbidden factor that no continuation can repair
    m = base.m
    out = []

    def closed_forbidden(prefix):
        hit = forbidden_scan(prefix, base)
        if hit is None:
            return False
        # the factor is complete if its deciding digit lies inside the prefix
        end = hit.start + hit.run + 1
        return hit.kind is not type(hit.kind).TERMINAL and end < len(prefix)

    def walk(prefix):
        if forbidden_scan(prefix, base) is None:
            out.append(tuple(prefix))
        if len(prefix) == digit_len:
            return
        for d in range(m + 1):
            prefix.append(d)
            if not closed_forbidden(prefix):
                walk(prefix)
            prefix.pop()

    for lead in range(1, m + 1):
        walk([lead])
    return out


def _pos_words(base, digit_len):
    top = base.alphabet_max_pos
    out = []
    for size in range(1, digit_len + 1):
        for tail in product(range(top + 1), repeat=size - 1):
            for lead in range(1, top + 1):
                w = (lead,) + tail
                if is_admissible_pos(EPWord.finite(w), base):
                    out.append(w)
    return out


def enumerate_integers(base, sign: str, digit_len: int, nonnegative: bool = False) -> IntegerSet:
    """All integers whose expansion has at most ``digit_len`` digits.

    In base -beta these are exactly the integers inside
    ``(-beta)^digit_len * (l, r)``; in base beta those of absolute value
    below ``beta^digit_len``.
    """
    if digit_len < 1:
        raise ValueError("digit_len must be >= 1")
    if sign == NEG:
        if not base.is_minus:
            words = [w for w in _pos_words_neg_alphabet(base, digit_len)]
        else:
            words = _neg_words(base, digit_len)
    else:
        words = _pos_words(base, digit_len)
    items = [(base.elem(0), Expansion(EPWord(), 0))]
    for w in words:
        e = Expansion(EPWord.finite(w), len(w) - 1)
        x = evaluate(e, base, sign)
        items.append((x, e))
        if sign == POS and not nonnegative:
            items.append((-x, e))
    if sign == NEG and nonnegative:
        items = [it for it in items if it[0].sign() >= 0]
    items.sort(key=_SortKey)
    scale = radix(base, sign) ** digit_len
    if sign == NEG:
        lo, hi = sorted((scale * base.endpoints.l, scale * base.endpoints.r))
    else:
        lo, hi = -scale, scale
    if nonnegative:
        lo = base.elem(0)
    return IntegerSet(base, sign, [x for x, _ in items], [e for _, e in items], (lo, hi))


def _pos_words_neg_alphabet(base, digit_len):
    # x^2 - mx + n bases: filter with the generic alternate-order test
    from .dwords import is_admissible_neg
    top = base.alphabet_max_neg
    out = []
    for size in range(1, digit_len + 1):
        for tail in product(range(top + 1), repeat=size - 1):
            for lead in range(1, top + 1):
                w = (lead,) + tail
                if is_admissible_neg(EPWord.finite(w), base, open_left=True):
                    out.append(w)
    return out


class _SortKey:
    __slots__ = ("x",)

    def __init__(self, item):
        self.x = item[0]

    def __lt__(self, other):
        return self.x < other.x


def covering_length(base, sign: str, bound: FieldElement) -> int:
    """Least digit length whose complete window contains ``[0, bound]``."""
    size = 1
    while True:
        scale = radix(base, sign) ** size
        if sign == NEG:
            lo, hi = sorted((scale * base.endpoints.l, scale * base.endpoints.r))
        else:
            hi = scale
        if bound < hi:
            return size
        size += 1


def gaps(s: IntegerSet) -> list:
    return [y - x for x, y in zip(s.points, s.points[1:])]


def delta1_for(base) -> FieldElement:
    """``1/tau`` inside the field of ``base`` (tau or tau^2 only)."""
    if base == TAU:
        return base.elem(-1, 1)        # tau - 1
    if base == TAU_SQUARED:
        return base.elem(-2, 1)        # tau^2 - 2
    raise GapError(f"no two-letter gap alphabet is known for base {base}")


@dataclass(frozen=True)
class DistanceWord:
    letters: tuple

    def __str__(self):
        return "".join(str(c) for c in self.letters)

    def pretty(self) -> str:
        return "".join("Δ" + str(c) for c in self.letters)

    def __len__(self):
        return len(self.letters)


def distance_word(s: IntegerSet) -> DistanceWord:
    """Code consecutive gaps as 0 (gap 1) and 1 (gap 1/tau)."""
    one, short = s.base.elem(1), delta1_for(s.base)
    letters = []
    for x, g in zip(s.points, gaps(s)):
        if g == one:
            letters.append(DELTA0)
        elif g == short:
            letters.append(DELTA1)
        else:
            raise GapError(f"gap {g} after {x}")
    return DistanceWord(tuple(letters))


def phi_iterate(letter: int, times: int) -> tuple:
    word = (letter,)
    for _ in range(times):
        word = tuple(c for a in word for c in PHI[a])
    return word


def phi_fixed_point(length: int) -> DistanceWord:
    """Prefix of the fixed point of ``0 -> 001, 1 -> 01`` starting with 0."""
    if length < 1:
        raise ValueError("length must be >= 1")
    word = (DELTA0,)
    while len(word) < length:
        nxt = tuple(c for a in word for c in PHI[a])
        assert nxt[: len(word)] == word
        word = nxt
    return DistanceWord(word[:length])


def first_nonnegative(base, sign: str, count: int) -> IntegerSet:
    """The ``count`` smallest non-negative integers of the system."""
    size = 1
    while True:
        s = enumerate_integers(base, sign, size, nonnegative=True)
        complete = [x for x in s.points if x < s.window[1]]
        if len(complete) >= count:
            bound = s.points[count - 1]
            return s.between(base.elem(0), bound)
        size += 1


@dataclass
class CoincidenceReport:
    bound_exponent: int
    equal: bool
    neg_points: list
    pos_points: list
    neg_word: DistanceWord
    pos_word: DistanceWord
    mismatches: list

    def to_json(self) -> dict:
        return {"bound_exponent": self.bound_exponent, "equal": self.equal,
                "count": len(self.neg_points),
                "neg_word": str(self.neg_word), "pos_word": str(self.pos_word),
                "mismatches": [str(x) for x in self.mismatches]}


def _transport(x: FieldElement, target) -> FieldElement:
    # Q(tau) == Q(tau^2): a + b*tau == (a - b) + b*tau^2
    return target.elem(x.a - x.b, x.b, x.d)


def coincidence_check(bound_exponent: int) -> CoincidenceReport:
    """Compare (-tau)-integers and tau^2-integers on ``[0, tau^bound_exponent]``."""
    if bound_exponent < 0:
        raise ValueError("bound_exponent must be >= 0")
    bound = TAU.beta ** bound_exponent
    neg = enumerate_integers(TAU, NEG, covering_length(TAU, NEG, bound), nonnegative=True)
    neg = neg.between(TAU.elem(0), bound)
    pos_bound = _transport(bound, TAU_SQUARED)
    pos = enumerate_integers(TAU_SQUARED, POS, covering_length(TAU_SQUARED, POS, pos_bound),
                             nonnegative=True)
    pos = pos.between(TAU_SQUARED.elem(0), pos_bound)
    moved = [_transport(x, TAU_SQUARED) for x in neg.points]
    mismatches = sorted(set(moved).symmetric_difference(pos.points), key=lambda z: _SortKey((z,)))
    return CoincidenceReport(bound_exponent, moved == pos.points and not mismatches,
                             neg.points, pos.points, distance_word(neg), distance_word(pos),
                             mismatches)


def describe(s: IntegerSet) -> list:
    return [format_expansion(e) for e in s.expansions]
