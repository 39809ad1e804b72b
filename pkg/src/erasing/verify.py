"""Registry of invariant checks, grouped in suites, run by ``erasing verify``.

Each check returns ``(ok, detail)``; ``detail`` is a short summary on success
and a counterexample on failure. ``budget`` is "small" (quick) or "full".
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import fibers, geometry, realmap
from .special import chaos, complexity, fixed
from .substitution import block_erase, erase, erase_pow, pair_census, section, vanishing_order
from .words import (EPWord, canonicalize, cylinder_interval, expand, expand_terminating,
                    insert_zero_pairs, is_dyadic, word_value)

SUITES = ("words", "map", "fibers", "graph", "chaos")
_REGISTRY: list = []


@dataclass
class Check:
    name: str
    suite: str
    fn: object


def check(suite: str, name: str):
    def deco(fn):
        _REGISTRY.append(Check(name, suite, fn))
        return fn
    return deco


def _big(budget: str, small, full):
    return full if budget == "full" else small


def _rationals(qmax: int, lo_incl=True, hi_incl=True):
    seen = set()
    for q in range(1, qmax + 1):
        for p in range(q + 1):
            x = Fraction(p, q)
            if x in seen or (x == 0 and not lo_incl) or (x == 1 and not hi_incl):
                continue
            seen.add(x)
            yield x


def _words(max_len: int, min_len: int = 0):
    for n in range(min_len, max_len + 1):
        for t in product("01", repeat=n):
            yield "".join(t)


# ---------------------------------------------------------------------------
# words and substitution


@check("words", "round trip xi(beta(x)) = x")
def _round_trip(budget):
    q = _big(budget, 32, 64)
    for x in _rationals(q):
        if x > 0 and word_value(expand(x)) != x:
            return False, f"beta at {x}"
        if x < 1 and word_value(expand_terminating(x)) != x:
            return False, f"beta' at {x}"
    return True, f"q <= {q}"


@check("words", "beta = beta' exactly off dyadics")
def _two_expansions(budget):
    for x in _rationals(_big(budget, 32, 64), False, False):
        if (expand(x) == expand_terminating(x)) == is_dyadic(x):
            return False, str(x)
    return True, ""


@check("words", "zero-pair insertion keeps parities")
def _zero_pairs(budget):
    rng = random.Random(1)
    for _ in range(_big(budget, 200, 1000)):
        b = section("".join(rng.choice("01") for _ in range(30)))
        a = [rng.randint(0, 3) for _ in range(rng.randint(0, 6))]
        w = insert_zero_pairs(a, b)
        p0 = [i for i, c in enumerate(b) if c == "1"]
        p1 = [i for i, c in enumerate(w) if c == "1"]
        shifts = [2 * sum(a[:k + 1]) for k in range(len(p0))]
        if any(j != i + s for i, j, s in zip(p0, p1, shifts)):
            return False, f"a={a} b={b}"
    return True, ""


@check("words", "cylinder widths 2^-|w|")
def _widths(budget):
    for n in range(_big(budget, 12, 20) + 1):
        w = "10" * (n // 2) + "1" * (n % 2)
        lo, hi = cylinder_interval(w)
        if hi - lo != Fraction(1, 2**n):
            return False, w
    return True, ""


@check("words", "canonicalize idempotent and value preserving")
def _canon(budget):
    m = _big(budget, 6, 8)
    for total in range(1, m + 1):
        for pre in _words(total - 1):
            for per in _words(total - len(pre), total - len(pre)):
                e = EPWord(pre, per)
                c = canonicalize(e)
                if canonicalize(c) != c or word_value(c) != word_value(e):
                    return False, str(e)
    return True, ""


@check("words", "rho = tau on even words")
def _tau(budget):
    m = _big(budget, 12, 16)
    for n in range(0, m + 1, 2):
        for w in _words(n, n):
            if erase(w) != block_erase(w):
                return False, w
    return True, f"|w| <= {m}"


@check("words", "rho(vw) = rho(v) rho_v(w)")
def _morphic(budget):
    rng = random.Random(2)
    for _ in range(_big(budget, 2000, 20000)):
        v = "".join(rng.choice("01") for _ in range(rng.randint(0, 10)))
        w = "".join(rng.choice("01") for _ in range(rng.randint(0, 10)))
        if erase(v + w) != erase(v) + erase(w, len(v) & 1):
            return False, f"v={v} w={w}"
    return True, ""


@check("words", "rho(sigma(b)) = b and rho(<a>sigma(b)) = b")
def _section_identity(budget):
    rng = random.Random(3)
    for _ in range(_big(budget, 300, 1000)):
        b = "".join(rng.choice("01") for _ in range(256))
        s = section(b)
        a = [rng.randint(0, 4) for _ in range(rng.randint(0, 20))]
        if erase(s) != b or erase(insert_zero_pairs(a, s)) != b:
            return False, b
        if a and any(a) and insert_zero_pairs(a, s) >= s:
            return False, f"maximality a={a}"
    return True, ""


@check("words", "vanishing bound 2 floor(log2 |w|) + 2")
def _vanishing(budget):
    m = _big(budget, 12, 16)
    for n in range(1, m + 1):
        bound = 2 * (n.bit_length() - 1) + 2
        top = 0
        for w in _words(n, n):
            k = vanishing_order(w)
            if k > bound:
                return False, w
            top += k == bound
        if vanishing_order("1" * n) != bound:
            return False, "1" * n
        # the extremal word is unique exactly at lengths that are powers of two
        if (top == 1) != (n & (n - 1) == 0):
            return False, f"{top} extremal words of length {n}"
    return True, f"|w| <= {m}"


@check("words", "n_eps(w0) = n_eps(w) and |rho^2(w)| <= |w|/2")
def _vanishing_extra(budget):
    for w in _words(_big(budget, 10, 12), 1):
        if vanishing_order(w + "0") != vanishing_order(w):
            return False, w
        if len(w) % 2 == 0 and 2 * len(erase_pow(w, 2)) > len(w):
            return False, w
    return True, ""


# ---------------------------------------------------------------------------
# the interval map


@check("map", "541/228 census")
def _census(budget):
    got = pair_census(8)
    return got == (541, 228), f"{got[0]}/{got[1]}"


@check("map", "rationals reach C0 or C1")
def _attraction(budget):
    q = _big(budget, 64, 128)
    for x in _rationals(q):
        rec = realmap.iterate_orbit(x)
        if rec.label not in ("C0", "C1"):
            return False, str(x)
    return True, f"q <= {q}"


@check("map", "both classes in every dyadic interval")
def _density(budget):
    level = _big(budget, 4, 6)
    for n in range(1, level + 1):
        for w in _words(n, n):
            for t in (0, 1):
                x = realmap.class_witness(w, t)
                lo, hi = cylinder_interval(w)
                if not lo <= x <= hi or realmap.classify(x) != f"Q{t}":
                    return False, f"{w} class {t}"
    return True, f"levels <= {level}"


@check("map", "section property R(S(y)) = y")
def _section_property(budget):
    for y in _rationals(_big(budget, 32, 64)):
        s = realmap.max_preimage(y)
        if realmap.interval_map(s) != y:
            return False, str(y)
        if y > 0 and "00" in (fibers.fiber_spec(y).sigma_beta.period * 2):
            return False, f"00 in the period over {y}"
    return True, ""


@check("map", "functional identities")
def _functional(budget):
    rng = random.Random(4)
    for _ in range(_big(budget, 200, 1000)):
        q = rng.randint(1, 60)
        x = Fraction(rng.randint(1, q), q)
        res = realmap.check_functional(x)
        if not all(v for v in res.values() if v is not None):
            return False, str(x)
        w = "".join(rng.choice("01") for _ in range(rng.randint(1, 4)))
        if not realmap.check_word_functional(w, x):
            return False, f"w={w} x={x}"
    return True, ""


@check("map", "left continuity at dyadics")
def _left_continuity(budget):
    for x in _rationals(_big(budget, 16, 32), False, False):
        if not is_dyadic(x):
            continue
        r = realmap.interval_map(x)
        b = expand(x)
        for j in range(8, 40):
            y = x - Fraction(1, 2**j)
            common = 0
            by = expand(y)
            while common < j and b.digit(common) == by.digit(common):
                common += 1
            width = Fraction(1, 2 ** len(erase(b.take(common))))
            if abs(realmap.interval_map(y) - r) > width:
                return False, f"x={x} j={j}"
        if width > Fraction(1, 256):
            return False, f"x={x}: no convergence"
    return True, ""


@check("map", "right cluster interval excludes R(x)")
def _right_cluster(budget):
    level = _big(budget, 6, 8)
    for n in range(1, level + 1):
        for k in range(1, 2**n, 2):
            x = Fraction(k, 2**n)
            w = expand_terminating(x).prefix
            lo, hi = geometry.cluster_interval(w)
            if lo <= realmap.interval_map(x) <= hi:
                return False, f"R({x}) in I"
            for j in (2, 5, 11):
                y = realmap.interval_map(x + Fraction(1, 3 * 2 ** (n + j)))
                if not lo <= y <= hi:
                    return False, f"x={x} j={j}"
    return True, ""


# ---------------------------------------------------------------------------
# fibres


@check("fibers", "fibre points map back to y")
def _fiber_round_trip(budget):
    q = _big(budget, 12, 32)
    gaps = [a for n in range(4) for a in product(range(4), repeat=n)]
    for y in _rationals(q):
        spec = fibers.fiber_spec(y)
        for br in spec.branches():
            top = fibers.fiber_point(y, (), br)
            pts = set()
            for a in gaps:
                x = fibers.fiber_point(y, a, br)
                if realmap.interval_map(x) != y:
                    return False, f"y={y} a={a} {br}"
                if any(a) and x >= top:
                    return False, f"maximality y={y} a={a}"
                pts.add(x)
            if len(pts) != len({tuple(a) + (0,) * (3 - len(a)) for a in gaps}):
                return False, f"distinctness at y={y}"
        if realmap.max_preimage(y) != max(fibers.fiber_point(y, (), br) for br in spec.branches()):
            return False, f"max preimage y={y}"
    return True, f"q <= {q}"


@check("fibers", "cylinder measure by Monte Carlo")
def _measure(budget):
    samples = _big(budget, 200_000, 1_000_000)
    for w in ("1", "0", "11", "01"):
        exact = fibers.fiber_measure_cylinder(w)
        p, se = fibers.sample_cylinder_measure(w, samples, seed=7)
        if abs(p - float(exact)) > 4 * se:
            return False, f"{w}: {p} vs {exact}"
    return True, f"{samples} samples"


@check("fibers", "dimension solver")
def _solver(budget):
    for i in range(1, _big(budget, 200, 1000) + 1):
        d = i / _big(budget, 200, 1000)
        t = 2.0 ** -fibers.dimension_from_density(d)
        if abs(t * t + t ** (1 / d) - 1) > 1e-12:
            return False, f"d={d}"
    if abs(fibers.fiber_dimension(1) - 0.5) > 1e-12:
        return False, "y=1"
    if abs(fibers.fiber_dimension(Fraction(1, 3)) - math.log2((1 + math.sqrt(5)) / 2)) > 1e-12:
        return False, "y=1/3"
    return True, ""


@check("fibers", "dimension bounds [1/2, log2 phi]")
def _dim_bounds(budget):
    top = math.log2((1 + math.sqrt(5)) / 2)
    for y in _rationals(_big(budget, 32, 64)):
        dim = fibers.fiber_dimension(y)
        if not 0.5 - 1e-12 <= dim <= top + 1e-12:
            return False, f"y={y} dim={dim}"
    return True, ""


# ---------------------------------------------------------------------------
# graph geometry


@check("graph", "area=(3/4)^n")
def _area(budget):
    for n in range(_big(budget, 10, 12) + 1):
        if geometry.area(geometry.rect_level(n)) != Fraction(3, 4) ** n:
            return False, f"n={n}"
    return True, ""


@check("graph", "boxcount=3^n")
def _boxcount(budget):
    for n in range(_big(budget, 9, 12) + 1):
        if geometry.box_count(n) != 3**n:
            return False, f"n={n}"
    return True, ""


@check("graph", "K_(n+1) = T(K_n)")
def _recursive(budget):
    for n in range(_big(budget, 7, 10) + 1):
        if geometry.t_image(geometry.rect_level(n)) != geometry.rect_level(n + 1).rects:
            return False, f"n={n}"
    return True, ""


@check("graph", "children keep three quarters")
def _quarters(budget):
    for n in range(_big(budget, 6, 8) + 1):
        K, K1 = geometry.rect_level(n), geometry.rect_level(n + 1)
        for k in range(len(K)):
            r, left, right = K.rect(k), K1.rect(2 * k), K1.rect(2 * k + 1)
            mid = (r.y_lo + r.y_hi) / 2
            if (left.y_lo, left.y_hi) != (r.y_lo, r.y_hi):
                return False, f"n={n} k={k}"
            kept = (r.y_lo, mid) if n % 2 == 0 else (mid, r.y_hi)
            if (right.y_lo, right.y_hi) != kept:
                return False, f"n={n} k={k}"
    return True, ""


@check("graph", "graph inside K_n")
def _containment(budget):
    rng = random.Random(5)
    levels = [geometry.rect_level(n) for n in range(13)]
    for _ in range(_big(budget, 200, 1000)):
        q = rng.randint(1, 200)
        x = Fraction(rng.randint(0, q), q)
        y = realmap.interval_map(x)
        for K in levels:
            if not any(K.rect(k).contains(x, y) for k in K.containing_column(x)):
                return False, f"x={x} level {K.level}"
    return True, ""


@check("graph", "staircase integral closed form")
def _integral(budget):
    for n in range(0, 2 * _big(budget, 8, 10) + 1, 2):
        if geometry.integral_staircase(n) != geometry.integral_closed_form(n):
            return False, f"level {n}"
        if geometry.integral_recursive(n) != geometry.integral_closed_form(n):
            return False, f"recursion at level {n}"
    return True, ""


# ---------------------------------------------------------------------------
# special points


def _fixed_under(b, n, power):
    p = b.prefix(n)
    img = erase_pow(p, power)
    return b.prefix(len(img)) == img


@check("chaos", "fixed and periodic generators")
def _generators(budget):
    n = _big(budget, 10_000, 100_000)
    if not _fixed_under(fixed.simplest_fixed_point(), n, 1):
        return False, "b0"
    for ell in (1, 2):
        if not _fixed_under(fixed.odd_period_point(ell), 10_000, 2 * ell + 1):
            return False, f"x^{ell}"
    u, v = fixed.thue_morse(0), fixed.thue_morse(1)
    if erase(u.prefix(10_000)) != v.prefix(5000) or erase(v.prefix(10_000)) != u.prefix(5000):
        return False, "thue-morse"
    for w in ("0", "1", "11", "0110", "10"):
        if not _fixed_under(fixed.periodic_point(w), 10_000, vanishing_order(w)):
            return False, f"periodic {w}"
    return True, ""


@check("chaos", "minimal period witnesses")
def _witness(budget):
    for n in range(1, _big(budget, 6, 8) + 1):
        w = fixed.minimal_period_witness(n)
        b = fixed.periodic_point(w)
        p = b.prefix(20_000)
        if vanishing_order(w) != n or not _fixed_under(b, 20_000, n):
            return False, f"n={n}"
        for k in range(1, n):
            img = erase_pow(p, k)
            if w.startswith(erase_pow(w, k)) or b.prefix(len(img)) == img:
                return False, f"n={n} k={k}"
    return True, ""


@check("chaos", "psi(phi(a)) = a")
def _psi_phi(budget):
    m = _big(budget, 3, 4)
    seen = set()
    for n in range(m + 1):
        for a in product(range(m + 1), repeat=n):
            b = fixed.fixed_point_from_gaps(a)
            if fixed.gaps_of_fixed_point(b, n) != a or not _fixed_under(b, 10_000, 1):
                return False, str(a)
            if a and a[-1] and n <= 2:
                p = b.prefix(200)
                if p in seen:
                    return False, f"phi not injective at {a}"
                seen.add(p)
    return True, f"entries <= {m}"


@check("chaos", "scrambled checkpoint law")
def _scrambled(budget):
    depth = _big(budget, 3, 4)
    fam = chaos.scrambled_family(chaos.ScrambledParams(list(product((0, 1), repeat=2)), "1", depth))
    stages = chaos.stage_words(depth)
    for m in fam:
        if m.times != fam[0].times:
            return False, "times differ"
        for n in range(1, depth + 1):
            w = stages[n - 1][m.alpha[n - 1]]
            blk = m.image(m.times[n])
            if blk.prefix(w.length if w.length < 4096 else 4096) != w.prefix(4096):
                return False, f"member {m.member_id} stage {n}"
    for m1 in fam:
        for m2 in fam:
            for n in range(1, depth + 1):
                if m1.alpha[n - 1] != m2.alpha[n - 1]:
                    lo, _ = chaos.checkpoint_gap(m1, m2, n)
                    if lo <= Fraction(1, 8):
                        return False, f"members {m1.member_id},{m2.member_id} stage {n}"
    return True, f"depth {depth}"


@check("chaos", "separated sets")
def _separated(budget):
    cases = _big(budget, [(1, 1), (2, 1), (1, 3), (2, 2), (3, 1)],
                 [(k, n) for k in range(1, 7) for n in range(1, 12) if k * (n + 1) <= 12])
    for k, n in cases:
        S = chaos.separated_set(k, n)
        if S.size != 2 ** ((n + 1) * k) or len(set(S.prefixes)) != S.size or not S.separated:
            return False, f"k={k} n={n}"
    return True, f"{len(cases)} sets"


@check("chaos", "complexity monotone and subadditive")
def _complexity(budget):
    b = fixed.simplest_fixed_point()
    lens = _big(budget, (1000, 10_000), (1000, 10_000, 100_000))
    prev = None
    for L in lens:
        prof = complexity.complexity_profile(b, range(1, 33), L)
        if any(prof[n + 1] > 2 * prof[n] for n in range(1, 32)):
            return False, f"subadditivity at {L}"
        if prev and any(prof[n] < prev[n] for n in prof):
            return False, f"monotonicity at {L}"
        prev = prof
    return True, ""


@check("chaos", "complexity of b0 below 8n+3")
def _complexity_bound(budget):
    L = _big(budget, 100_000, 1_000_000)
    prof = complexity.complexity_profile(fixed.simplest_fixed_point(), range(1, 65), L)
    bad = [n for n, c in prof.items() if c >= 8 * n + 3]
    return not bad, f"prefix {L}" if not bad else f"n={bad[0]}"


# ---------------------------------------------------------------------------


def run(suite: str = "all", budget: str = "small") -> list:
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    if budget not in ("small", "full"):
        raise ValueError(f"unknown budget {budget!r}")
    report = []
    for c in _REGISTRY:
        if suite != "all" and c.suite != suite:
            continue
        try:
            ok, detail = c.fn(budget)
        except Exception as exc:  # a crash is a failure with its message as counterexample
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        report.append({
            "name": c.name,
            "suite": c.suite,
            "status": "pass" if ok else "fail",
            "detail" if ok else "counterexample": detail,
        })
    return report
