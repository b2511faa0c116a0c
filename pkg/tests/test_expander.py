from itertools import product

import pytest

from conftest import MINUS_SMALL, PLUS_SMALL, random_element
from negabase.dwords import (EPWord, Expansion, alt_compare, format_expansion, forbidden_scan,
                             is_expansion, lex_compare, parse_expansion)
from negabase.expander import (DomainError, evaluate, expand_in_interval, expand_real,
                               t_neg_step, t_pos_step)
from negabase.pbase import TAU, make_base

BASES = MINUS_SMALL + PLUS_SMALL


@pytest.mark.parametrize("value,sign,text", [
    ((2, 0), "pos", "10.01"),
    ((5, 5), "pos", "100010.01"),     # (tau^2 + 1)^2
    ((-1, 0), "neg", "11.(1)"),
    ((1, 0), "neg", "110."),
    ((0, 0), "neg", "0."),
    ((0, 0), "pos", "0."),
    ((0, 1), "pos", "10."),
    ((0, -1), "neg", "1100."),
    ((1, -1), "neg", "11."),          # l = 1 - tau
])
def test_tau_examples(value, sign, text):
    x = TAU.elem(*value)
    assert format_expansion(expand_real(x, TAU, sign)) == text
    assert evaluate(parse_expansion(text), TAU, sign) == x


def test_left_endpoint_expansion():
    # l is outside the open window: <l> = 1 d_1 . d_2 ...
    for base in MINUS_SMALL:
        e = expand_real(base.endpoints.l, base, "neg")
        d_l = base.reference_words().d_l
        assert e.k == 1 and e.word == d_l.prepend([1])
        assert evaluate(e, base, "neg") == base.endpoints.l


def test_domain_errors():
    with pytest.raises(DomainError):
        t_pos_step(TAU.elem(1))
    with pytest.raises(DomainError):
        t_neg_step(TAU.endpoints.r)
    with pytest.raises(DomainError):
        expand_real(TAU.elem(-1), TAU, "pos")
    with pytest.raises(ValueError):
        expand_real(TAU.elem(1), TAU, "both")


@pytest.mark.parametrize("base", BASES, ids=str)
def test_round_trip(base, rng):
    for _ in range(150):
        x = random_element(rng, base, size=10 ** 6, dmax=25)
        for sign in ("neg", "pos"):
            if sign == "pos" and x.sign() < 0:
                x = -x
            e = expand_real(x, base, sign)
            assert is_expansion(e, base, sign)
            assert evaluate(e, base, sign) == x
            assert e.is_zero or e.word[0] != 0


@pytest.mark.parametrize("base,length", [(TAU, 10), (make_base(2, 1), 7), (make_base(2, 2), 7)],
                         ids=str)
def test_admissible_strings_are_fixed(base, length):
    for size in range(1, length + 1):
        for w in product(range(base.m + 1), repeat=size):
            if w[0] == 0 or forbidden_scan(w, base) is not None:
                continue
            e = Expansion(EPWord.finite(w), size - 1)
            assert expand_real(evaluate(e, base), base) == e


@pytest.mark.parametrize("base", [TAU, make_base(3, 2), make_base(4, 1, "+")], ids=str)
def test_digit_order_matches_real_order(base, rng):
    l, r = base.endpoints
    for _ in range(300):
        x, y = (random_element(rng, base, size=10 ** 4, dmax=40) for _ in range(2))
        x, y = x - (x - l).__floor__(), y - (y - l).__floor__()
        want = (x > y) - (x < y)
        assert alt_compare(expand_in_interval(x, "neg"), expand_in_interval(y, "neg")) == want
        x, y = x - x.__floor__(), y - y.__floor__()
        want = (x > y) - (x < y)
        assert lex_compare(expand_in_interval(x, "pos"), expand_in_interval(y, "pos")) == want


def test_rational_orbits_are_periodic():
    w = expand_in_interval(TAU.elem(1, 0, 7), "pos")
    assert w.period and evaluate(Expansion(w, -1), TAU, "pos") == TAU.elem(1, 0, 7)


def test_step_examples():
    assert t_pos_step(TAU.elem(0)) == (0, TAU.elem(0))
    assert t_pos_step(TAU.beta - 1) == (1, TAU.elem(0))
    assert t_neg_step(TAU.elem(0)) == (0, TAU.elem(0))
    assert t_neg_step(TAU.endpoints.l) == (1, TAU.elem(0))
    from negabase.pbase import TAU_SQUARED
    assert t_pos_step(TAU_SQUARED.beta ** -1) == (1, TAU_SQUARED.elem(0))
    assert t_pos_step(TAU_SQUARED.beta ** -2) == (0, TAU_SQUARED.beta ** -1)
    assert expand_in_interval(TAU.elem(2, -1), "pos") == EPWord.finite((0, 1))
    assert expand_in_interval(TAU.elem(0), "neg") == EPWord()


def test_evaluate_examples():
    for text, value in (("110.", 1), ("0.", 0), ("11.(1)", -1), ("1111.", 1 - 2 * TAU.beta),
                        ("110000.11", 2 - 4 * TAU.beta)):
        assert evaluate(parse_expansion(text), TAU, "neg") == value
    assert evaluate(parse_expansion("10.01"), TAU, "pos") == 2
