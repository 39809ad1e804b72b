import json
from fractions import Fraction as F
from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from erasing.runs import RunWord
from erasing.special import (ScheduleSpec, ScrambledParams, checkpoint_gap, closeness_statistics,
                             complete_fixed, complexity_profile, exponent_sequence, family_json,
                             fixed_point_from_gaps, gaps_of_fixed_point, is_fixed_prefix,
                             minimal_period_witness, odd_period_blocks, odd_period_point,
                             periodic_point, scrambled_family, separated_set, simplest_fixed_point,
                             spread, stage_words, steer, steered_point, subword_complexity,
                             thue_morse)
from erasing.substitution import erase, erase_after, erase_pow, block_lift, vanishing_order
from erasing.words import EPWord, WordError

from oracles import factor_count, naive_erase

B0_32 = "00101111010101111111010101010101"


def b0_oracle(n):
    """Digits of the largest fixed word straight from its block formula."""
    s = "00101"
    h = 0
    while len(s) < n:
        s += "1" * (3 * 2**h) + "01" * (3 * 2**h)
        h += 1
    return s[:n]


def test_b0_prefix():
    b = simplest_fixed_point()
    assert b.prefix(32) == B0_32
    assert b.prefix(5000) == b0_oracle(5000)


def test_b0_is_fixed():
    b = simplest_fixed_point()
    assert is_fixed_prefix(b, 100_000)
    w = b.prefix(4000)
    assert w.startswith(naive_erase(w))


def test_complete_fixed():
    assert complete_fixed("0").prefix(10_000) == simplest_fixed_point().prefix(10_000)
    assert complete_fixed("00101").prefix(10_000) == simplest_fixed_point().prefix(10_000)
    with pytest.raises(WordError):
        complete_fixed("1")
    b = complete_fixed("00001")
    assert b.prefix(5) == "00001"
    assert is_fixed_prefix(b, 10_000)


def test_gap_parametrization_examples():
    assert fixed_point_from_gaps(()).prefix(10_000) == simplest_fixed_point().prefix(10_000)
    b = fixed_point_from_gaps((1,))
    assert b.prefix(5) == "00001"
    assert is_fixed_prefix(b, 10_000)
    assert gaps_of_fixed_point(fixed_point_from_gaps((2, 0, 1)), 3) == (2, 0, 1)
    assert gaps_of_fixed_point(simplest_fixed_point(), 10) == (0,) * 10


def test_gaps_reject_non_fixed_words():
    with pytest.raises(WordError):
        gaps_of_fixed_point(thue_morse(0), 3)


def test_gaps_round_trip_exhaustive():
    for k in range(5):
        for a in product(range(5), repeat=k):
            b = fixed_point_from_gaps(a)
            assert gaps_of_fixed_point(b, k + 2, check=2048) == a + (0, 0)


def test_gap_map_injective():
    seqs = [a for k in range(4) for a in product(range(3), repeat=k) if not a or a[-1]][:20]
    assert len(seqs) == 20
    prefixes = {fixed_point_from_gaps(a).prefix(400) for a in seqs}
    assert len(prefixes) == 20


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 6), max_size=6))
def test_gap_points_are_fixed(a):
    assert is_fixed_prefix(fixed_point_from_gaps(a), 5000)


def test_odd_period_points():
    x1 = odd_period_point(1)
    assert x1.prefix(28) == "01" + "11" + "01" + "11" + "01" * 4 + "1111" + "01" * 4
    assert is_fixed_prefix(x1, 10_000, power=3)
    assert not is_fixed_prefix(x1, 10_000, power=1)
    x2 = odd_period_point(2)
    assert is_fixed_prefix(x2, 10_000, power=5)
    for p in (1, 2, 3, 4):
        assert not is_fixed_prefix(x2, 10_000, power=p)
    with pytest.raises(WordError):
        odd_period_point(0)


def test_odd_period_block_identities():
    for ell in (1, 2):
        blocks = odd_period_blocks(ell, 3)
        assert "".join(b.spell() for b in blocks) == odd_period_point(ell).prefix(sum(b.length for b in blocks))
        m = 2 * ell + 1
        w, rest = blocks[0], blocks[1:]
        assert erase_after(w.spell(), m, rest[0].spell()) == w.spell()
        for h in range(2):
            u, v, u_next = rest[2 * h], rest[2 * h + 1], rest[2 * h + 2]
            assert erase_pow(v, m) == u
            assert erase_pow(u_next, m) == v


def test_thue_morse():
    u = thue_morse(0)
    assert u.prefix(32) == "01101001100101101001011001101001"
    assert erase(u.prefix(4096)) == thue_morse(1).prefix(2048)
    assert erase(thue_morse(1).prefix(4096)) == u.prefix(2048)
    assert block_lift(block_lift("0")) == "0110"
    with pytest.raises(WordError):
        thue_morse(2)


def test_periodic_points():
    b = periodic_point("0")
    assert b.prefix(10_000) == simplest_fixed_point().prefix(10_000)
    for n in range(1, 9):
        w = "1" * n
        p = vanishing_order(w)
        assert p == 2 * (n.bit_length() - 1) + 2
        b = periodic_point(w)
        assert b.prefix(n) == w
        assert is_fixed_prefix(b, 10_000, power=p)
    b0, b1 = periodic_point("110"), periodic_point("110", (1,))
    assert b0.prefix(500) != b1.prefix(500)
    assert is_fixed_prefix(b1, 5000, power=4)
    with pytest.raises(WordError):
        periodic_point("")


@pytest.mark.parametrize("n", range(1, 9))
def test_minimal_period_witness(n):
    w = minimal_period_witness(n)
    assert vanishing_order(w) == n
    b = periodic_point(w)
    N = 4000
    assert is_fixed_prefix(b, N, power=n)
    for k in range(1, n):
        assert not is_fixed_prefix(b, N, power=k)


def test_steered_point_examples():
    spec = ScheduleSpec.tight(("1", "0"))
    assert spec.times == (0, vanishing_order("1"))
    pt = steer(spec)
    assert steered_point(spec).prefix(1) == "1"
    assert pt.checkpoint(1).startswith("0")
    spec = ScheduleSpec.tight(["1"] * 6)
    pt = steer(spec)
    assert all(pt.checkpoint(n).startswith("1") for n in range(6))


def test_steered_choices_give_distinct_points():
    targets = ("1", "01", "110", "0")
    p0 = steer(ScheduleSpec.tight(targets, 0))
    p1 = steer(ScheduleSpec.tight(targets, 1))
    assert p0.prefix_word != p1.prefix_word
    for pt in (p0, p1):
        for n, w in enumerate(targets):
            assert pt.checkpoint(n).startswith(w)


def test_steered_stream_images_are_certified():
    spec = ScheduleSpec.tight(("1", "01", "11"))
    pt = steer(spec)
    s = pt.stream().prefix(len(pt.prefix_word) + 4096)
    for k in range(6):
        img = pt.image(k)
        assert erase_pow(s, k).startswith(img)


def test_schedule_validation():
    with pytest.raises(WordError):
        ScheduleSpec(("1", "1"), (0, 1))
    with pytest.raises(WordError):
        ScheduleSpec(("1",), (1,))
    with pytest.raises(WordError):
        ScheduleSpec(("1", ""), (0, 2))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.text(alphabet="01", min_size=1, max_size=5), min_size=1, max_size=4),
       st.integers(0, 2))
def test_steered_targets_hit(targets, c):
    pt = steer(ScheduleSpec.tight(targets, c))
    for n, w in enumerate(targets):
        assert pt.checkpoint(n).startswith(w)


# ---------------------------------------------------------------------------
# scrambled family


def test_exponents_and_stages():
    assert exponent_sequence(4) == (1, 4, 45, 800)
    st3 = stage_words(3)
    assert st3[1][0] == RunWord([("1", 16)])
    for v, u in stage_words(4):
        assert v.vanishing_order() == u.vanishing_order()
        assert u.prefix(2) == "00"
    # a double section doubles a run of ones, so v_m = 1^(2^(e_2 + ... + e_m))
    assert stage_words(3)[2][0] == RunWord([("1", 2**49)])
    assert stage_words(4)[3][0] == RunWord([("1", 2**849)])
    with pytest.raises(WordError):
        stage_words(5)


def test_spread_positions():
    bits = (1, 0, 1)
    a = spread(bits, 9)
    # positions 1..9: 1 -> 0, 2 -> b1, 3 -> b1, 4 -> b2, 5 -> b1, 6 -> 0, 7 -> b1, 8 -> b3, 9 -> b2
    assert a == (0, 1, 1, 0, 1, 0, 1, 1, 0)


def test_scrambled_checkpoint_law():
    fam = scrambled_family(ScrambledParams(list(product((0, 1), repeat=2)), depth=3))
    times = fam[0].times
    assert times == (0, 2, 4, 14)
    assert all(m.times == times for m in fam)
    stages = stage_words(3)
    for m in fam:
        for n in range(1, 4):
            w = stages[n - 1][m.alpha[n - 1]]
            assert m.image(times[n]).prefix(min(w.length, 4096)) == w.prefix(4096)
    for m1, m2 in combinations(fam, 2):
        for n in range(1, 4):
            lo, hi = checkpoint_gap(m1, m2, n)
            if m1.alpha[n - 1] != m2.alpha[n - 1]:
                assert lo >= F(1, 8)


def test_scrambled_family_parallel_and_json():
    p = ScrambledParams([(0, 0), (1, 1)], depth=2)
    a = family_json(scrambled_family(p))
    b = family_json(scrambled_family(p, workers=4))
    assert a == b
    data = json.loads(a)
    assert data[0]["times"] == [0, 2, 4]
    assert {"member", "bits", "alpha", "w0", "times", "prefix_rle", "checkpoints"} <= set(data[0])
    with pytest.raises(WordError):
        ScrambledParams([(0,)], depth=5)


def test_closeness_statistics():
    fam = scrambled_family(ScrambledParams([(0, 0), (0, 1), (1, 0)], depth=3))
    rep = closeness_statistics(fam[0], fam[0], 30)
    assert rep.counts == {"close": 31, "far": 0, "undecided": 0}
    assert rep.close_incl[-1] == 1
    # the first two sources only differ beyond depth 3, so the points coincide
    assert fam[0].alpha == fam[1].alpha
    rep = closeness_statistics(fam[0], fam[1], 14)
    assert rep.counts["close"] == 15
    rep = closeness_statistics(fam[0], fam[2], 14)
    assert sum(rep.counts.values()) == 15
    assert rep.indicators[4] == rep.indicators[14] == "far"
    assert rep.close_excl[-1] == F(rep.counts["close"], 15 - rep.counts["undecided"])
    u = thue_morse(0)
    assert closeness_statistics(u, u, 5).counts["close"] == 6


def test_separated_sets_small():
    s = separated_set(1, 1)
    assert s.size == 4 and s.separated and s.min_distance >= F(1, 4)
    s = separated_set(2, 1)
    assert s.size == 16 and s.separated and s.min_distance >= F(1, 8)
    assert len(set(s.prefixes)) == 16
    assert s.entropy_estimate == 4
    with pytest.raises(WordError):
        separated_set(4, 3)


def test_separated_set_distances_against_oracle():
    s = separated_set(2, 1)
    m = s.k + 1
    imgs = []
    for p in s.prefixes:
        rows, w = [], p
        for _ in range(s.horizon + 1):
            rows.append(int(w[:m], 2))
            w = naive_erase(w)
        imgs.append(rows)
    for i, j in combinations(range(s.size), 2):
        want = max(abs(a - b) - 1 for a, b in zip(imgs[i], imgs[j]))
        assert s.units[i, j] == want


# ---------------------------------------------------------------------------
# complexity


def test_complexity_examples():
    assert subword_complexity(EPWord.make("", "01").lazy(), 2, 100) == 2
    u = thue_morse(0)
    assert subword_complexity(u, 3, 1000) == 6 == factor_count(u.prefix(1000), 3)


def test_complexity_matches_brute_force():
    b = simplest_fixed_point()
    s = b.prefix(5000)
    for n in (1, 2, 5, 17, 40, 64, 65, 80):
        assert subword_complexity(b, n, 5000) == factor_count(s, n)
        assert subword_complexity(s, n, 5000) == factor_count(s, n)


def test_complexity_monotone_and_subadditive():
    b = simplest_fixed_point()
    prof = complexity_profile(b, range(1, 41), 20_000)
    vals = [prof[n] for n in range(1, 41)]
    assert all(b2 <= 2 * a for a, b2 in zip(vals, vals[1:]))
    assert all(a <= b2 for a, b2 in zip(vals, vals[1:]))
    for n in (3, 10, 30):
        assert subword_complexity(b, n, 1000) <= subword_complexity(b, n, 20_000)
