"""Compiled sweeps for exhaustive checks over all pairs of integers.

These mirror :func:`negabase.arithmetic.normalize_neg` and
:func:`negabase.arithmetic.add_neg` on fixed-size int64 buffers, so that
hundreds of millions of additions fit in minutes.  Every result is
checked in place: digits in the alphabet, no forbidden factor, and exact
equality of values in Z[beta].  A string with those properties is the
unique expansion of its value, i.e. what the field route returns.

Buffer layout: ``buf[t]`` is the digit at exponent ``TOP - t``.
"""

from __future__ import annotations

import numpy as np
from numba import njit

WIDTH = 48
TOP = 30
MAX_STEPS = 100_000

EVEN_RUN_LOW, ODD_RUN_HIGH, TERMINAL = 0, 1, 2


@njit(cache=True)
def _scan(buf, m, n):
    """Return (start, kind, run) of the left-most forbidden factor, or start -1."""
    gap = m - n
    size = buf.shape[0]
    term = -1
    if m == n:
        last = size - 1
        while last >= 0 and buf[last] == 0:
            last -= 1
        if last >= 1 and buf[last] == m and buf[last - 1] == 0:
            term = last - 1
    for i in range(size):
        if term >= 0 and i >= term:
            break
        if buf[i] != m:
            continue
        j = i + 1
        while j < size and buf[j] == gap:
            j += 1
        run = j - i - 1
        if j == size:
            if gap == 0:
                continue
            nxt = 0
        else:
            nxt = buf[j]
        if run % 2 == 0 and nxt < gap:
            return i, EVEN_RUN_LOW, run
        if run % 2 == 1 and nxt > gap:
            return i, ODD_RUN_HIGH, run
    if term >= 0:
        return term, TERMINAL, 0
    return -1, -1, 0


@njit(cache=True)
def _normalize(buf, m, n):
    """Rewrite in place; returns the number of steps, or -1 on failure."""
    steps = 0
    last = -1
    while True:
        start, kind, run = _scan(buf, m, n)
        if start < 0:
            return steps
        if start < 2 or start <= last or start >= buf.shape[0] - 2:
            return -1
        last = start
        if kind == TERMINAL:
            buf[start - 1] += 1
            buf[start] += m
            buf[start + 1] -= n
        elif buf[start - 1] == 0:
            buf[start - 2] += 1
            buf[start - 1] += m
            buf[start] -= n
        else:
            buf[start - 1] -= 1
            buf[start] -= m
            buf[start + 1] += n
        steps += 1
        if steps > MAX_STEPS:
            return -1


@njit(cache=True)
def _increment(buf, t, m, n):
    """Add one at index t where the digit is m (buffer admissible)."""
    if buf[t - 1] == 0:
        buf[t - 2] += 1
        buf[t - 1] += m
        buf[t] += 1 - n
        return
    if buf[t + 1] == m - n:
        buf[t - 1] -= 1
        buf[t] += 1 - m
        buf[t + 1] += n
        return
    k = 0
    while buf[t + 1 + k] > m - n:
        k += 1
    buf[t - 1] -= 1
    buf[t] = 0
    for i in range(1, k):
        buf[t + i] -= m - n + 1
    buf[t + k] -= m - n
    buf[t + k + 1] += n


@njit(cache=True)
def _add(buf, ydig, ylen, m, n):
    """buf += integer word ydig[:ylen] (most significant first); -1 on failure."""
    dirty = False
    for i in range(ylen):
        t = TOP - (ylen - 1 - i)
        for _ in range(ydig[i]):
            if buf[t] < m:
                buf[t] += 1
                dirty = True
                continue
            if dirty:
                if _normalize(buf, m, n) < 0:
                    return -1
                dirty = False
                if buf[t] < m:
                    buf[t] += 1
                    dirty = True
                    continue
            _increment(buf, t, m, n)
            dirty = True
    return _normalize(buf, m, n)


@njit(cache=True)
def _value(buf, m, n, low_t):
    """p + q*beta = sum buf[t] (-beta)^(low_exp - ...) scaled so low_t has exponent 0."""
    p = 0
    q = 0
    for t in range(low_t + 1):
        # Horner: (p + q beta) * (-beta) = -q n + (-p - q m) beta
        p, q = -q * n, -p - q * m
        p += buf[t]
    return p, q


@njit(cache=True)
def _times_neg_beta(p, q, m, n, times):
    for _ in range(times):
        p, q = -q * n, -p - q * m
    return p, q


@njit(cache=True)
def _check(buf, m, n, p_exp, q_exp):
    """Alphabet, admissibility and value; returns (ok, fractional_length)."""
    size = buf.shape[0]
    for t in range(size):
        if buf[t] < 0 or buf[t] > m:
            return False, 0
    start, kind, run = _scan(buf, m, n)
    if start >= 0:
        return False, 0
    low_t = size - 1
    while low_t > TOP and buf[low_t] == 0:
        low_t -= 1
    frac = low_t - TOP if low_t > TOP else 0
    low_t = TOP + frac
    p, q = _value(buf, m, n, low_t)
    pe, qe = _times_neg_beta(p_exp, q_exp, m, n, frac)
    return p == pe and q == qe, frac


@njit(cache=True)
def sweep_add(words, lengths, vals, m, n, row_lo, row_hi):
    """All pairs i <= j with row_lo <= i < row_hi.

    Returns counts ``[pairs, failures, max_frac, first_bad_i, first_bad_j]``
    and a histogram of fractional lengths.
    """
    count = words.shape[0]
    buf = np.zeros(WIDTH, dtype=np.int64)
    hist = np.zeros(8, dtype=np.int64)
    out = np.zeros(5, dtype=np.int64)
    out[3] = -1
    out[4] = -1
    for i in range(row_lo, row_hi):
        for j in range(i, count):
            buf[:] = 0
            xl = lengths[i]
            for s in range(xl):
                buf[TOP - (xl - 1 - s)] = words[i, s]
            res = _add(buf, words[j], lengths[j], m, n)
            out[0] += 1
            ok = res >= 0
            frac = 0
            if ok:
                ok, frac = _check(buf, m, n, vals[i, 0] + vals[j, 0], vals[i, 1] + vals[j, 1])
            if not ok:
                out[1] += 1
                if out[3] < 0:
                    out[3] = i
                    out[4] = j
                continue
            if frac > out[2]:
                out[2] = frac
            hist[min(frac, 7)] += 1
    return out, hist


@njit(cache=True)
def sweep_normalize(m, n, length):
    """Every string over {0..m} of exactly ``length`` digits, integer anchored.

    Returns ``[strings, failures, max_frac, bad_frac_rule]`` where the last
    counts strings whose fractional length breaks the bound 0 (a_0 != m or
    m == n) resp. 1 (m > n and a_0 == m).
    """
    buf = np.zeros(WIDTH, dtype=np.int64)
    digits = np.zeros(length, dtype=np.int64)
    out = np.zeros(4, dtype=np.int64)
    total = (m + 1) ** length
    for code in range(total):
        c = code
        for s in range(length - 1, -1, -1):
            digits[s] = c % (m + 1)
            c //= m + 1
        buf[:] = 0
        for s in range(length):
            buf[TOP - (length - 1 - s)] = digits[s]
        p, q = _value(buf, m, n, TOP)
        out[0] += 1
        if _normalize(buf, m, n) < 0:
            out[1] += 1
            continue
        ok, frac = _check(buf, m, n, p, q)
        if not ok:
            out[1] += 1
            continue
        if frac > out[2]:
            out[2] = frac
        bound = 1 if (m > n and digits[length - 1] == m) else 0
        if frac > bound:
            out[3] += 1
    return out


@njit(cache=True)
def _alt_less(u, ui, ulen, ref):
    """u[ui:ulen] 0^omega against the unrolled ref; -1, 0 or 1 in the alternate order."""
    for j in range(ref.shape[0]):
        a = u[ui + j] if ui + j < ulen else 0
        b = ref[j]
        if a != b:
            less = a > b if j % 2 == 0 else a < b
            return -1 if less else 1
    return 0


@njit(cache=True)
def sweep_scan_vs_alt(m, n, length, d_l, dstar_r):
    """Compare the pattern scanner with the alternate-order condition.

    For every w over {0..m} of exactly ``length`` digits, the word
    ``0 w 0^omega`` is tested both ways; ``d_l`` and ``dstar_r`` must be
    unrolled far enough to decide every comparison.  Returns the number of
    words and of disagreements.
    """
    size = length + 1
    word = np.zeros(size, dtype=np.int64)
    buf = np.zeros(WIDTH, dtype=np.int64)
    out = np.zeros(2, dtype=np.int64)
    total = (m + 1) ** length
    for code in range(total):
        c = code
        for s in range(length, 0, -1):
            word[s] = c % (m + 1)
            c //= m + 1
        admissible = True
        for i in range(size):
            if _alt_less(word, i, size, d_l) < 0 or _alt_less(word, i, size, dstar_r) >= 0:
                admissible = False
                break
        buf[:] = 0
        for s in range(size):
            buf[2 + s] = word[s]
        start, kind, run = _scan(buf, m, n)
        out[0] += 1
        if admissible != (start < 0):
            out[1] += 1
    return out


def scan_agreement(base, length: int):
    """Exhaustive scanner against alternate order for words of ``length`` digits."""
    refs = base.reference_words()
    horizon = length + 2 * (len(refs.d_l.preperiod) + len(refs.d_l.period)) + 4
    d_l = np.array(refs.d_l.prefix(horizon), dtype=np.int64)
    dstar_r = np.array(refs.dstar_r.prefix(horizon), dtype=np.int64)
    words, bad = sweep_scan_vs_alt(base.m, base.n, length, d_l, dstar_r)
    return int(words), int(bad)


def pack_words(expansions, base):
    """Integer expansions as a padded digit matrix plus their Z[beta] values."""
    size = max((len(e.finite_digits()) for e in expansions), default=1)
    words = np.zeros((len(expansions), size), dtype=np.int64)
    lengths = np.zeros(len(expansions), dtype=np.int64)
    vals = np.zeros((len(expansions), 2), dtype=np.int64)
    m, n = base.m, base.n
    for i, e in enumerate(expansions):
        digits = e.finite_digits()
        if not e.is_integer:
            raise ValueError("integer expansions only")
        words[i, : len(digits)] = digits
        lengths[i] = len(digits)
        p = q = 0
        for d in digits:
            p, q = -q * n + d, -p - q * m
        vals[i] = (p, q)
    return words, lengths, vals


def add_via_kernel(x, y, base):
    """Single addition through the compiled path (for cross-checks)."""
    from .dwords import EPWord, Expansion
    words, lengths, _ = pack_words([x, y], base)
    buf = np.zeros(WIDTH, dtype=np.int64)
    xl = lengths[0]
    buf[TOP - xl + 1: TOP + 1] = words[0, :xl]
    if _add(buf, words[1], lengths[1], base.m, base.n) < 0:
        raise RuntimeError("kernel addition failed")
    return Expansion(EPWord.finite(tuple(int(d) for d in buf)), TOP)


def closure_sweep(base, max_len: int, rows=None) -> dict:
    """Add every unordered pair of integers with at most ``max_len`` digits.

    ``rows`` restricts the first operand to a range of indices, which keeps
    individual calls short when the sweep is split up.
    """
    from .integers import enumerate_integers
    if not base.is_minus:
        raise ValueError("closure sweep is for x^2 - mx - n bases")
    expansions = enumerate_integers(base, "neg", max_len).expansions
    words, lengths, vals = pack_words(expansions, base)
    lo, hi = rows if rows is not None else (0, len(expansions))
    out, hist = sweep_add(words, lengths, vals, base.m, base.n, lo, hi)
    bad = None
    if out[3] >= 0:
        bad = (expansions[out[3]], expansions[out[4]])
    return {"integers": len(expansions), "pairs": int(out[0]), "failures": int(out[1]),
            "max_fractional": int(out[2]), "first_failure": bad,
            "fractional_histogram": [int(h) for h in hist]}
