import numpy as np
import pytest

from conftest import MINUS_SMALL
from negabase import _kernels
from negabase.arithmetic import (RawDigitString, add_neg, add_pos_tau, field_op, l_scan,
                                 long_zero, mul_neg, normalize_neg, normalize_pos_tau,
                                 sigma_transport_add_tau, sub_neg, zero_minus, zero_plus)
from negabase.dwords import format_expansion, is_expansion, parse_expansion
from negabase.expander import DomainError, evaluate, expand_real
from negabase.integers import enumerate_integers
from negabase.pbase import TAU, TAU_SQUARED, make_base


def P(text):
    return parse_expansion(text)


def random_raw(rng, base, max_len=8, anchor_shift=3):
    digits = tuple(rng.randint(0, base.m) for _ in range(rng.randint(1, max_len)))
    return RawDigitString(digits, len(digits) - 1 - rng.randint(0, anchor_shift))


def test_examples():
    assert format_expansion(add_neg(P("1111."), P("1111."), TAU)) == "110000.11"
    assert format_expansion(mul_neg(P("1111."), P("1111."), TAU)) == "11100.11"
    assert format_expansion(sub_neg(P("0."), P("110."), TAU)) == "11.(1)"
    assert format_expansion(normalize_neg(RawDigitString.integer((1,)), TAU)) == "110."
    two = normalize_neg(RawDigitString.integer((2,)), make_base(2, 1))
    assert format_expansion(two) == "121."
    assert format_expansion(normalize_pos_tau(RawDigitString.integer((2,)))) == "10.01"
    assert format_expansion(add_pos_tau(P("1."), P("1."))) == "10.01"


@pytest.mark.parametrize("base", MINUS_SMALL, ids=str)
def test_zero_templates(base):
    assert zero_plus(base).value(base) == 0
    assert zero_minus(base).value(base) == 0
    for k in range(1, 6):
        assert long_zero(base, k).value(base) == 0


@pytest.mark.parametrize("base", MINUS_SMALL, ids=str)
def test_normalize_matches_oracle_with_trace(base, rng):
    for _ in range(200):
        raw = random_raw(rng, base)
        value = raw.value(base)
        steps = []
        out = normalize_neg(raw, base, trace=steps.append)
        assert out == expand_real(value, base)
        powers = [s.power for s in steps]
        assert powers == sorted(set(powers), reverse=True)
        for s in steps:
            assert s.before.value(base) == value and s.after.value(base) == value
            assert all(0 <= d <= base.m for d in s.after.digits)


def test_normalize_rejects_bad_input():
    with pytest.raises(DomainError):
        normalize_neg(RawDigitString.integer((2,)), TAU)
    with pytest.raises(DomainError):
        normalize_neg(RawDigitString.integer((1,)), TAU_SQUARED)


@pytest.mark.parametrize("base", MINUS_SMALL, ids=str)
def test_add_neg_matches_field_route(base, rng):
    for _ in range(150):
        x = normalize_neg(random_raw(rng, base), base)
        y = normalize_neg(random_raw(rng, base), base)
        steps = []
        z = add_neg(x, y, base, trace=steps.append)
        assert z == field_op(x, y, base, "add")
        assert is_expansion(z, base) and z.is_finite
        total = evaluate(x, base) + evaluate(y, base)
        assert all(s.after.value(base) == s.before.value(base) for s in steps)
        assert evaluate(z, base) == total


def test_add_neg_edge_cases():
    zero = P("0.")
    assert add_neg(zero, zero, TAU) == zero
    assert add_neg(P("110."), zero, TAU) == P("110.")
    assert add_neg(zero, P("110."), TAU) == P("110.")
    with pytest.raises(DomainError):
        add_neg(P("11.(1)"), P("1."), TAU)


def test_sigma_transport_matches_add_neg(rng):
    words = enumerate_integers(TAU, "neg", 9).expansions
    for _ in range(1000):
        x, y = rng.choice(words), rng.choice(words)
        assert sigma_transport_add_tau(x, y) == add_neg(x, y, TAU)


def test_add_pos_tau_matches_field_route(rng):
    words = enumerate_integers(TAU, "pos", 8, nonnegative=True).expansions
    for _ in range(500):
        x, y = rng.choice(words), rng.choice(words)
        assert add_pos_tau(x, y) == field_op(x, y, TAU, "add", "pos")


def test_non_closure_under_subtraction():
    for base in MINUS_SMALL:
        one = expand_real(base.elem(1), base)
        z = sub_neg(P("0."), one, base)
        assert z.word.period


def test_small_lscans_are_worker_independent():
    one = l_scan(TAU, "neg", "add", 5)
    two = l_scan(TAU, "neg", "add", 5, workers=2)
    assert one == two and one.max == 2
    assert (one.witness_x, one.witness_y) == ("1111.", "111.")
    with pytest.raises(ValueError):
        l_scan(TAU, "neg", "div", 3)
    with pytest.raises(ValueError):
        l_scan(TAU, "neg", "add", 0)


def test_lscan_json_shape():
    data = l_scan(TAU, "pos", "mul", 4).to_json()
    assert set(data) == {"max", "witness_x", "witness_y", "result", "infinite_count", "pairs",
                         "witness_count"}


@pytest.mark.parametrize("base", [make_base(2, 1), make_base(2, 2), make_base(3, 2)], ids=str)
def test_kernel_agrees_with_add_neg(base, rng):
    words = enumerate_integers(base, "neg", 6).expansions
    for _ in range(300):
        x, y = rng.choice(words), rng.choice(words)
        assert _kernels.add_via_kernel(x, y, base) == add_neg(x, y, base)


@pytest.mark.parametrize("base", [make_base(2, 1), make_base(2, 2)], ids=str)
def test_kernel_sweep_matches_python(base):
    words = enumerate_integers(base, "neg", 4).expansions
    report = _kernels.closure_sweep(base, 4)
    fracs = [0] * 8
    for i, x in enumerate(words):
        for y in words[i:]:
            fracs[min(add_neg(x, y, base).fractional_length(), 7)] += 1
    assert report["failures"] == 0 and report["fractional_histogram"] == fracs


@pytest.mark.parametrize("m,n", [(2, 2), (3, 2), (3, 3)])
def test_kernel_normalization_exhaustive(m, n):
    for length in range(1, 11 if m < 3 else 9):
        strings, failures, max_frac, over = _kernels.sweep_normalize(m, n, length)
        assert strings == (m + 1) ** length and failures == 0
        assert max_frac <= (1 if m > n else 0) and over == 0


def test_kernel_detects_bad_values():
    # a deliberately wrong expected value must be reported
    buf = np.zeros(_kernels.WIDTH, dtype=np.int64)
    buf[_kernels.TOP] = 1
    ok, _ = _kernels._check(buf, 2, 1, 2, 0)
    assert not ok


def test_normalize_pos_tau_matches_field_route(rng):
    for _ in range(300):
        raw = random_raw(rng, make_base(3, 3))
        assert normalize_pos_tau(raw) == expand_real(raw.value(TAU, "pos"), TAU, "pos")


def test_more_examples():
    two = expand_real(TAU.elem(2), TAU)
    assert add_neg(P("110."), P("110."), TAU) == two
    assert mul_neg(P("110."), P("110."), TAU) == P("110.")
    assert mul_neg(P("1111."), P("0."), TAU) == P("0.")
    assert sub_neg(P("110000.11"), P("1111."), TAU) == P("1111.")
    assert sub_neg(P("1111."), P("0."), TAU) == P("1111.")
    assert normalize_neg(RawDigitString.integer((1, 1, 1, 1)), TAU) == P("1111.")
    assert normalize_neg(RawDigitString.integer((0,)), TAU) == P("0.")
    assert normalize_pos_tau(RawDigitString.integer((0, 1, 1))) == P("100.")
    assert normalize_pos_tau(RawDigitString.integer((0,))) == P("0.")
    assert normalize_pos_tau(RawDigitString.integer((1, 1, 1, 1))) == expand_real(
        TAU.elem(1) + TAU.beta + TAU.beta ** 2 + TAU.beta ** 3, TAU, "pos")
    assert sigma_transport_add_tau(P("0."), P("0.")) == P("0.")
    assert sigma_transport_add_tau(P("1111."), P("1111."), TAU) == P("110000.11")


def test_lscan_witness_lists():
    add = l_scan(TAU, "neg", "add", 6)
    assert add.max == 2 and ("1111.", "1111.", "110000.11") in add.witnesses
    mul = l_scan(TAU, "neg", "mul", 6)
    assert mul.max == 2 and ("1111.", "1111.", "11100.11") in mul.witnesses
    pos = l_scan(TAU, "pos", "add", 6)
    assert pos.max == 2 and (pos.witness_x, pos.witness_y) == ("1.", "1.")
