"""The interval map x = 0.b -> 0.rho(b) on exact rationals.

A point x in (0, 1] is read through its expansion that does not end in zeros,
so the map is left-continuous at dyadic points; 0 is sent to 2/3. Every
rational orbit ends in one of the two 2-cycles {0, 2/3} and {1, 1/3}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .substitution import erase, erase_ep, erase_pow, parities, section, section_ep, vanishing_order
from .words import (EPWord, WordError, as_fraction, check_word, cylinder_interval,
                    expand, expand_terminating, is_dyadic, word_value)

__all__ = [
    "interval_map", "guaranteed_prefix", "GuaranteedPrefix", "required_precision",
    "OrbitRecord", "iterate_orbit", "classify", "max_preimage", "check_functional",
    "check_word_functional", "CylinderImage", "image_of_cylinder", "class_witness",
    "C0", "C1",
]

C0 = frozenset({Fraction(0), Fraction(2, 3)})
C1 = frozenset({Fraction(1), Fraction(1, 3)})


def interval_map(x) -> Fraction:
    """Exact image of a rational point of [0, 1]."""
    x = as_fraction(x)
    if x == 0:
        return Fraction(2, 3)
    return word_value(erase_ep(expand(x)))


# ---------------------------------------------------------------------------
# guaranteed prefixes


@dataclass(frozen=True)
class GuaranteedPrefix:
    """Digits of the n-th image shared by every continuation of ``source``.

    Valid for continuations whose intermediate images never end in zeros
    (always true for a single step).
    """

    digits: str
    source_length: int
    iterates: int

    def interval(self) -> tuple[Fraction, Fraction]:
        return cylinder_interval(self.digits)

    def __len__(self):
        return len(self.digits)


def guaranteed_prefix(w: str, n: int = 1) -> GuaranteedPrefix:
    check_word(w)
    if not w:
        raise WordError("need a non-empty input prefix")
    if n < 1:
        raise WordError("need n >= 1")
    return GuaranteedPrefix(erase_pow(w, n), len(w), n)


def _stable_words(length: int, n: int):
    """Words of the given length such that neither they nor their first n-1
    images contain 00 (so every level keeps a 1 in each window of two)."""
    def grow(prefix):
        if len(prefix) == length:
            yield prefix
            return
        yield from grow(prefix + "1")
        if not prefix.endswith("0"):
            yield from grow(prefix + "0")

    for w in grow(""):
        img = w
        ok = True
        for _ in range(n - 1):
            img = erase(img)
            if "00" in img:
                ok = False
                break
        if ok:
            yield w


def _worst_output(length: int, n: int) -> int:
    return min(len(erase_pow(w, n)) for w in _stable_words(length, n))


def required_precision(m: int, n: int = 1, cap: int = 24) -> int:
    """Least input length L after which n steps always yield m output digits.

    Arbitrary inputs give no bound at all (a prefix of zeros erases), so the
    guarantee is over words that have a 1 in every window of two and keep that
    property for their first n-1 images. For n = 1 this is the class of words
    without 00. L is found by doubling and then bisecting, testing the worst
    word of each candidate length exhaustively.
    """
    if m < 1 or n < 1:
        raise WordError("need m, n >= 1")
    hi = 1
    while _worst_output(hi, n) < m:
        hi *= 2
        if hi > cap:
            if _worst_output(cap, n) >= m:
                hi = cap
                break
            raise WordError(f"no input length up to {cap} guarantees {m} digits after {n} steps")
    lo = hi // 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _worst_output(mid, n) >= m:
            hi = mid
        else:
            lo = mid
    return hi


# ---------------------------------------------------------------------------
# orbits


@dataclass
class OrbitRecord:
    """Orbit of a rational: ``points`` lists every point up to the first repeat."""

    points: list
    tail_cycle: object = None  # "C0", "C1", a tuple for any other cycle, or None
    steps_to_cycle: int | None = None
    status: str = "cycle"  # or "undecided" when the step budget ran out
    cycle: list = field(default_factory=list)

    @property
    def label(self) -> str:
        if self.status != "cycle":
            return "undecided"
        return self.tail_cycle if isinstance(self.tail_cycle, str) else "other"


def iterate_orbit(x, max_steps: int = 10_000) -> OrbitRecord:
    x = as_fraction(x)
    seen = {}
    points = []
    while x not in seen:
        if len(points) > max_steps:
            return OrbitRecord(points, None, None, "undecided")
        seen[x] = len(points)
        points.append(x)
        x = interval_map(x)
    start = seen[x]
    cycle = points[start:]
    cyc = frozenset(cycle)
    label = "C0" if cyc == C0 else "C1" if cyc == C1 else tuple(cycle)
    return OrbitRecord(points, label, start, "cycle", cycle)


def classify(x, max_steps: int = 10_000) -> str:
    """'Q0' or 'Q1' according to the 2-cycle the orbit of x falls into."""
    rec = iterate_orbit(x, max_steps)
    if rec.tail_cycle == "C0":
        return "Q0"
    if rec.tail_cycle == "C1":
        return "Q1"
    raise RuntimeError(f"orbit of {x} did not reach a known cycle: {rec.label}")


def class_witness(w: str, target: int) -> Fraction:
    """A rational in the cylinder of w whose orbit enters C0 (target 0) or C1 (target 1).

    Builds x = 0.w p p p ... with p chosen backwards so that after
    n = vanishing_order(w) steps the expansion is all zeros or all ones.
    """
    check_word(w)
    n = vanishing_order(w) if w else 1
    ps = parities(w, n)
    p = "1" if target else "0"
    for i in reversed(range(n)):
        p = section(p, 1 - ps[i])
        if len(p) % 2:
            p += "0"
    return word_value(EPWord(w, p))


# ---------------------------------------------------------------------------
# the maximal section


def max_preimage(y) -> Fraction:
    """Largest x with interval_map(x) = y (never 0, which only adds to the fibre of 2/3)."""
    y = as_fraction(y)
    if y == 0:
        return word_value(section_ep(expand_terminating(y)))
    best = word_value(section_ep(expand(y)))
    if y < 1 and is_dyadic(y):
        best = max(best, word_value(section_ep(expand_terminating(y))))
    return best


# ---------------------------------------------------------------------------
# functional equations


def check_functional(x) -> dict:
    """The three halving identities at x in (0, 1]; None where one does not apply."""
    x = as_fraction(x)
    if x == 0:
        raise WordError("identities are stated on (0, 1]")
    r = interval_map(x)
    out = {
        "half": interval_map(x / 2) == 1 - r,
        "half_plus": interval_map((x + 1) / 2) == (1 - r) / 2,
        "shift": None,
    }
    if x <= Fraction(1, 2):
        out["shift"] = r == 2 * interval_map(x + Fraction(1, 2))
    return out


def check_word_functional(w: str, x) -> bool:
    """R(x/2^n + 0.w) = 0.v + 2^-m ((1 + (-1)^(n+1))/2 + (-1)^n R(x)), v = rho(w)."""
    check_word(w)
    x = as_fraction(x)
    if not w or x == 0:
        raise WordError("need w non-empty and x in (0, 1]")
    n = len(w)
    v = erase(w)
    sign = 1 if n % 2 == 0 else -1
    lhs = interval_map(x / 2**n + word_value(w))
    rhs = word_value(v) + Fraction(1, 2 ** len(v)) * (Fraction(1 - sign, 2) + sign * interval_map(x))
    return lhs == rhs


# ---------------------------------------------------------------------------
# images of cylinders


@dataclass(frozen=True)
class CylinderImage:
    """Image of the points whose expansion starts with ``word``.

    Either the whole interval, or one isolated value (the image of the left
    end point) together with a cylinder interval.
    """

    word: str
    full: bool
    isolated: Fraction | None = None
    interval: tuple | None = None
    oscillation_bound: Fraction = Fraction(1)

    @property
    def diameter(self) -> Fraction:
        if self.full:
            return Fraction(1)
        lo, hi = self.interval
        return max(hi, self.isolated) - min(lo, self.isolated)


def image_of_cylinder(x: str) -> CylinderImage:
    check_word(x)
    if not x:
        raise WordError("need a non-empty word")
    if "1" not in x:
        return CylinderImage(x, True)
    k = x.rindex("1")
    left = EPWord(x[:k] + "0", "1")
    iso = word_value(erase_ep(left))
    h = x.count("1") - 1
    return CylinderImage(x, False, iso, cylinder_interval(erase(x)), Fraction(1, 2**h))


