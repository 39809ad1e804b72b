import threading
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from erasing.words import (BudgetError, EPWord, LazyWord, WordError, canonicalize,
                           cylinder_interval, expand, expand_terminating, freq, gap_word,
                           insert_zero_pairs, is_dyadic, parse_rational, parse_word,
                           primitive_root, word_value)

from oracles import binary_digits

bits = st.text(alphabet="01", max_size=12)


def ep(pre, per):
    return EPWord.make(pre, per)


def test_value_examples():
    assert word_value(ep("", "01")) == Fraction(1, 3)
    assert word_value(ep("", "1")) == 1
    assert word_value(ep("0", "1")) == Fraction(1, 2)
    assert word_value("011") == Fraction(3, 8)


def test_expansion_examples():
    assert expand(Fraction(1, 3)) == ep("", "01")
    assert expand(1) == ep("", "1")
    assert expand(Fraction(1, 2)) == ep("0", "1")
    assert expand_terminating(Fraction(1, 2)) == ep("1", "0")
    assert expand_terminating(0) == ep("", "0")
    assert expand_terminating(Fraction(1, 3)) == ep("", "01")


def test_expansion_domains():
    with pytest.raises(WordError):
        expand(0)
    with pytest.raises(WordError):
        expand_terminating(1)
    with pytest.raises(WordError):
        expand(Fraction(3, 2))


@pytest.mark.parametrize("q", range(1, 65))
def test_round_trip_all_denominators(q):
    for p in range(q + 1):
        x = Fraction(p, q)
        if x > 0:
            assert word_value(expand(x)) == x
        if x < 1:
            assert word_value(expand_terminating(x)) == x
        if 0 < x < 1:
            assert (expand(x) == expand_terminating(x)) == (not is_dyadic(x))


def test_expansion_matches_digit_oracle():
    for q in range(1, 40):
        for p in range(1, q + 1):
            x = Fraction(p, q)
            assert expand(x).take(60) == binary_digits(x, 60)


def test_gap_word():
    assert gap_word((1, 2)) == "01001"
    assert gap_word(()) == ""
    assert gap_word((0, 0, 0)) == "111"


def test_insert_zero_pairs_examples():
    assert insert_zero_pairs((1,), ep("", "1")) == ep("001", "1")
    w = ep("", "01")
    assert insert_zero_pairs((), w) is w
    assert insert_zero_pairs((0, 2), "11") == "100001"
    with pytest.raises(WordError):
        insert_zero_pairs((1, 1, 1), "11")


def test_insert_zero_pairs_lazy():
    lw = ep("", "1").lazy()
    assert insert_zero_pairs((1, 0, 2), lw).prefix(12) == "001100001111"


@given(st.lists(st.integers(0, 3), max_size=6), st.text(alphabet="01", min_size=6, max_size=30))
def test_insertion_shifts_ones_by_even_amounts(a, b):
    b = "1" + b  # enough ones is not guaranteed, so trim a to the number of ones
    a = a[: b.count("1")]
    w = insert_zero_pairs(a, b)
    p0 = [i for i, c in enumerate(b) if c == "1"]
    p1 = [i for i, c in enumerate(w) if c == "1"]
    for k, (i, j) in enumerate(zip(p0, p1)):
        assert j - i == 2 * sum(a[:k + 1])


def test_cylinders():
    assert cylinder_interval("0") == (0, Fraction(1, 2))
    assert cylinder_interval("1") == (Fraction(1, 2), 1)
    assert cylinder_interval("01") == (Fraction(1, 4), Fraction(1, 2))
    for n in range(21):
        lo, hi = cylinder_interval("1" * n)
        assert hi - lo == Fraction(1, 2**n)


def test_freq():
    assert freq("1", ep("", "01"), 4) == Fraction(1, 2)
    assert freq("00", ep("", "01"), 10) == 0
    assert freq("01", "0101010", 5) == Fraction(3, 5)


def test_canonicalize_examples():
    assert canonicalize(EPWord("0", "1010")) == EPWord("", "01")
    assert canonicalize(EPWord("011", "11")) == EPWord("0", "1")
    assert canonicalize(EPWord("", "0")) == EPWord("", "0")


def test_primitive_root():
    assert primitive_root("0101") == "01"
    assert primitive_root("010") == "010"
    assert primitive_root("1111") == "1"


@settings(max_examples=300)
@given(bits, st.text(alphabet="01", min_size=1, max_size=8))
def test_canonicalize_idempotent_and_value_preserving(pre, per):
    e = EPWord(pre, per)
    c = canonicalize(e)
    assert canonicalize(c) == c
    assert word_value(c) == word_value(e)
    assert c.take(40) == e.take(40)


def test_flags():
    assert ep("1", "0").eventually_zero
    assert ep("0", "1").eventually_one
    assert not ep("", "01").eventually_zero


def test_parse():
    assert EPWord.parse("0(1)") == ep("0", "1")
    assert EPWord.parse("(01)") == ep("", "01")
    assert parse_word("0110") == "0110"
    assert parse_rational("1/3") == Fraction(1, 3)
    assert parse_rational("(01)") == Fraction(1, 3)
    for bad in ("abc", "1/0", "0(2)", "3/2"):
        with pytest.raises(WordError):
            parse_rational(bad)


def test_bad_words_rejected():
    with pytest.raises(WordError):
        EPWord("012", "1")
    with pytest.raises(WordError):
        EPWord("0", "")


def test_lazy_word_is_deterministic():
    calls = []

    def gen():
        calls.append(1)
        i = 0
        while True:
            yield str(i % 2) * 3
            i += 1
    w = LazyWord(gen)
    assert w.prefix(10) == "0001110001"
    assert w.digit(3) == "1"
    assert w[2:5] == "011"
    assert w.prefix(4) == w.prefix(10)[:4]
    assert len(calls) == 1
    with pytest.raises(WordError):
        w[3:]


def test_lazy_word_bounds():
    w = LazyWord.from_word("0101")
    assert w.available(10) == "0101"
    with pytest.raises(BudgetError):
        w.prefix(5)
    big = LazyWord.from_ep(ep("", "1"))
    big.budget = 100
    with pytest.raises(BudgetError):
        big.prefix(101)


def test_lazy_word_concurrent_readers():
    w = ep("1", "01").lazy()
    out = []

    def read(n):
        out.append(w.prefix(n))
    threads = [threading.Thread(target=read, args=(n,)) for n in range(1000, 20000, 1000)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    full = w.prefix(20000)
    assert all(full.startswith(s) for s in out)
    assert full == ep("1", "01").take(20000)
