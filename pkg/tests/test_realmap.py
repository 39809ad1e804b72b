from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from erasing.realmap import (C0, C1, check_functional, check_word_functional, class_witness,
                             classify, guaranteed_prefix, image_of_cylinder, interval_map,
                             iterate_orbit, max_preimage, required_precision)
from erasing.substitution import erase_pow
from erasing.words import WordError, expand, word_value

from oracles import all_words, binary_digits, naive_erase, value

rationals = st.builds(lambda q, p: F(p % (q + 1), q), st.integers(1, 64), st.integers(0, 10**6))


def test_image_examples():
    assert interval_map(F(1, 2)) == F(2, 3)
    assert interval_map(F(1, 4)) == F(1, 3)
    assert interval_map(0) == F(2, 3)
    assert interval_map(1) == F(1, 3)
    assert interval_map(F(1, 3)) == 1
    assert interval_map(F(2, 3)) == 0


def test_image_against_digit_oracle():
    # the image's first k digits come from the first k ones of the input
    for q in range(1, 30):
        for p in range(1, q + 1):
            x = F(p, q)
            img = naive_erase(binary_digits(x, 400))[:40]
            r = interval_map(x)
            assert abs(value(img) - r) <= F(1, 2**len(img))


def test_orbit_examples():
    rec = iterate_orbit(F(1, 2))
    assert rec.points == [F(1, 2), F(2, 3), 0]
    assert rec.tail_cycle == "C0" and rec.steps_to_cycle == 1
    rec = iterate_orbit(F(1, 3))
    assert rec.points == [F(1, 3), 1] and rec.tail_cycle == "C1" and rec.steps_to_cycle == 0
    rec = iterate_orbit(0)
    assert rec.points == [0, F(2, 3)] and rec.label == "C0"


def test_orbit_budget():
    rec = iterate_orbit(F(5, 127), max_steps=0)
    assert rec.status == "undecided" and rec.label == "undecided"


def test_classify_examples():
    assert classify(F(2, 3)) == "Q0"
    assert classify(1) == "Q1"
    assert classify(F(1, 4)) == "Q1"


@pytest.mark.parametrize("q", range(1, 65))
def test_every_rational_orbit_reaches_a_two_cycle(q):
    for p in range(q + 1):
        rec = iterate_orbit(F(p, q))
        assert frozenset(rec.cycle) in (C0, C1)


def test_class_witness():
    for w in all_words(6, 1):
        for t in (0, 1):
            x = class_witness(w, t)
            assert expand(x).take(len(w)) == w
            assert classify(x) == ("Q1" if t else "Q0")


def test_max_preimage_examples():
    assert max_preimage(1) == F(1, 3)
    assert max_preimage(F(1, 3)) == 1
    assert interval_map(max_preimage(0)) == 0
    assert max_preimage(F(2, 3)) != 0
    assert interval_map(max_preimage(F(2, 3))) == F(2, 3)


@settings(max_examples=200)
@given(rationals)
def test_max_preimage_is_a_preimage(y):
    assert interval_map(max_preimage(y)) == y


def test_functional_examples():
    assert interval_map(F(1, 2)) == 1 - interval_map(1)
    assert interval_map(F(1, 3)) == 1 - interval_map(F(2, 3))
    assert interval_map(F(3, 4)) == F(1, 6)
    for x in (1, F(2, 3), F(1, 2)):
        assert all(v in (True, None) for v in check_functional(x).values())
    with pytest.raises(WordError):
        check_functional(0)


@settings(max_examples=300)
@given(rationals.filter(lambda x: x > 0))
def test_functional_identities(x):
    res = check_functional(x)
    assert res["half"] and res["half_plus"]
    assert res["shift"] in ((True,) if x <= F(1, 2) else (None,))


def test_word_functional_examples():
    assert check_word_functional("1", 1)
    x = F(1, 3)
    assert interval_map(x / 4) == interval_map(x)
    assert check_word_functional("00", x)
    assert interval_map(F(1, 4) + F(3, 4)) == F(1, 4) + F(1, 4) * interval_map(1)
    assert check_word_functional("11", 1)


def test_word_functional_all_short_words():
    for w in all_words(5, 1):
        for x in (1, F(1, 3), F(2, 5), F(5, 7)):
            assert check_word_functional(w, x)


def test_cylinder_images():
    assert image_of_cylinder("00").full
    ci = image_of_cylinder("1")
    assert ci.interval == (0, F(1, 2)) and ci.isolated == F(2, 3)
    assert ci.oscillation_bound == 1
    assert image_of_cylinder("11").oscillation_bound == F(1, 2)
    assert image_of_cylinder("11").diameter <= 1


def test_cylinder_image_contains_sampled_images():
    for w in all_words(5, 1):
        ci = image_of_cylinder(w)
        lo, hi = F(int(w, 2), 2**len(w)), F(int(w, 2) + 1, 2**len(w))
        for j in range(1, 9):
            x = lo + (hi - lo) * F(j, 9)
            r = interval_map(x)
            assert ci.full or r == ci.isolated or ci.interval[0] <= r <= ci.interval[1]
        if not ci.full:
            # the isolated value is the image of the left end point
            assert interval_map(lo) == ci.isolated


def test_guaranteed_prefix_examples():
    assert guaranteed_prefix("01").digits == "1"
    assert guaranteed_prefix("0" * 7).digits == ""
    assert guaranteed_prefix(expand(F(1, 3)).take(10)).digits == "11111"
    with pytest.raises(WordError):
        guaranteed_prefix("")


def test_guaranteed_prefix_is_shared_by_extensions():
    for w in all_words(6, 1):
        lo, hi = guaranteed_prefix(w).interval()
        for tail in ("1", "01", "011", "0111", "110"):
            x = word_value(w) + F(1, 2**len(w)) * word_value_tail(tail)
            assert lo <= interval_map(x) <= hi


def word_value_tail(t):
    # value of t repeated forever
    return F(int(t, 2), 2**len(t) - 1)


def test_left_continuity_at_dyadics():
    for x in (F(1, 2), F(1, 4), F(3, 8), F(5, 16)):
        b = expand(x).take(60)
        target = expand(interval_map(x)).take(12)
        assert erase_pow(b[:40], 1)[:12] == target


def test_right_cluster_at_one_half():
    assert interval_map(F(1, 2)) == F(2, 3)
    for j in range(3, 12):
        for t in range(1, 8):
            r = interval_map(F(1, 2) + F(t, 8 * 2**j))
            assert 0 <= r <= F(1, 2)


def test_required_precision():
    assert required_precision(1, 1) == 2
    assert required_precision(2, 2) == 5
    with pytest.raises(WordError):
        required_precision(40, 3, cap=12)
    with pytest.raises(WordError):
        required_precision(0)


def test_required_precision_is_minimal_by_exhaustion():
    from erasing.realmap import _stable_words
    for m in (1, 2, 3):
        for n in (1, 2):
            L = required_precision(m, n)
            assert min(len(erase_pow(w, n)) for w in _stable_words(L, n)) >= m
            assert min(len(erase_pow(w, n)) for w in _stable_words(L - 1, n)) < m
