"""Points steered through prescribed cylinders, and the chaotic families built from them.

A steered point is b = v_0 v_1 v_2 ... where v_0 = w_0 and v_n is a preimage
ending in 1 of the target w_n under k_n steps read after v_0 ... v_(n-1). Then
rho^(k_n)(b) starts with w_n. Only finitely many stages are materialized; the
word continues with the Thue-Morse word, whose images under both rules stay
in the pair {u, complement(u)}. So no image of b is eventually 0, and images of
the materialized prefix are certified prefixes of the true orbit.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from ..runs import RunWord
from ..substitution import erase, preimage_for, section, vanishing_order
from ..words import LazyWord, WordError, check_word, cylinder_interval
from .fixed import _absorb, _parities, _repeat, thue_morse

__all__ = [
    "ScheduleSpec", "SteeredPoint", "steer", "steered_point",
    "exponent_sequence", "stage_words", "spread", "ScrambledParams",
    "ScrambledMember", "scrambled_family", "family_json", "checkpoint_gap",
    "ClosenessReport", "closeness_statistics", "SeparatedSet", "separated_set",
    "MAX_DEPTH",
]

MAX_DEPTH = 4
_BLOCK_DIGITS = 64


def _length(w) -> int:
    return w.length if isinstance(w, RunWord) else len(w)


def _concat(blocks):
    if any(isinstance(b, RunWord) for b in blocks):
        out = RunWord()
        for b in blocks:
            out = out + (b if isinstance(b, RunWord) else RunWord.of(b))
        return out
    return "".join(blocks)


def _head(w, n: int = _BLOCK_DIGITS) -> str:
    return w.prefix(n) if isinstance(w, RunWord) else w[:n]


def _rho(w):
    return w.rho() if isinstance(w, RunWord) else erase(w)


@dataclass(frozen=True)
class ScheduleSpec:
    """Targets w_0, w_1, ... with times k_0 = 0 <= k_1 <= ...

    ``choice_index`` is one int for every stage or a per-stage sequence;
    0 is the canonical preimage.
    """

    targets: tuple
    times: tuple
    choice_index: int | tuple = 0

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(self.targets))
        object.__setattr__(self, "times", tuple(self.times))
        if not self.targets or len(self.targets) != len(self.times):
            raise WordError("need as many times as targets, and at least one")
        if self.times[0] != 0:
            raise WordError("the first time must be 0")
        for w in self.targets:
            if isinstance(w, str):
                check_word(w)
            if not _length(w):
                raise WordError("targets must be non-empty")
        for i in range(1, len(self.times)):
            need = self.times[i - 1] + vanishing_order(self.targets[i - 1])
            if self.times[i] < need:
                raise WordError(f"time {i} is {self.times[i]}, needs at least {need}")

    @classmethod
    def tight(cls, targets, choice_index=0) -> "ScheduleSpec":
        """Smallest admissible times."""
        targets = tuple(targets)
        times = [0]
        for w in targets[:-1]:
            times.append(times[-1] + vanishing_order(w))
        return cls(targets, tuple(times), choice_index)

    def choice(self, n: int) -> int:
        c = self.choice_index
        if isinstance(c, int):
            return c
        return c[n] if n < len(c) else 0


@dataclass
class SteeredPoint:
    spec: ScheduleSpec
    blocks: list

    @property
    def prefix_word(self):
        """The materialized prefix v_0 ... v_N (str, or RunWord for huge stages)."""
        return _concat(self.blocks)

    def stream(self) -> LazyWord:
        def gen():
            for b in self.blocks:
                if isinstance(b, RunWord):
                    for p, c in b.blocks:
                        yield from _repeat(p, c)
                else:
                    yield b
            yield from thue_morse(0).chunks()
        return LazyWord(gen, label="steered")

    def image(self, k: int):
        """rho^k of the materialized prefix: a certified prefix of rho^k(b)."""
        w = self.prefix_word
        for _ in range(k):
            w = _rho(w)
        return w

    def checkpoint(self, n: int):
        """rho^(k_n) of the prefix, which starts with the n-th target."""
        return self.image(self.spec.times[n])


def steer(spec: ScheduleSpec) -> SteeredPoint:
    blocks = []
    lens: list = []
    for n, (w, k) in enumerate(zip(spec.targets, spec.times)):
        # the first block is the first target itself; choices act from stage 1 on
        v = preimage_for(w, _parities(lens, k), spec.choice(n)) if n else w
        _absorb(lens, v)
        blocks.append(v)
    return SteeredPoint(spec, blocks)


def steered_point(spec: ScheduleSpec) -> LazyWord:
    return steer(spec).stream()


# ---------------------------------------------------------------------------
# the scrambled family


def exponent_sequence(n: int) -> tuple:
    """e_1 = 1 and e_m = m^2 (e_1 + ... + e_(m-1))."""
    out = []
    for m in range(1, n + 1):
        out.append(1 if m == 1 else m * m * sum(out))
    return tuple(out)


@lru_cache(maxsize=None)
def stage_words(depth: int) -> tuple:
    """Pairs (v_m, u_m), m = 1..depth, as RunWords.

    v_1 = 1, u_1 = 001, then v_m = section^(2 e_m)(v_(m-1)) and
    u_m = 00 section^(2 e_m)(u_(m-1)).
    """
    if not 1 <= depth <= MAX_DEPTH:
        raise WordError(f"depth must be between 1 and {MAX_DEPTH}")
    e = exponent_sequence(depth)
    v, u = RunWord.of("1"), RunWord.of("001")
    out = [(v, u)]
    for m in range(1, depth):
        for _ in range(2 * e[m]):
            v, u = section(v), section(u)
        u = RunWord.of("00") + u
        out.append((v, u))
    return tuple(out)


def _prime_power_exponent(m: int) -> int:
    """k if m = p^k with p prime and k >= 1, else 0."""
    if m < 2:
        return 0
    p = 2
    while p * p <= m and m % p:
        p += 1
    if m % p:
        p = m
    k = 0
    while m % p == 0:
        m //= p
        k += 1
    return k if m == 1 else 0


def spread(bits: Sequence[int], n: int) -> tuple:
    """alpha_1 .. alpha_n with alpha_m = bits_k (1-based) when m = p^k, else 0."""
    out = []
    for m in range(1, n + 1):
        k = _prime_power_exponent(m)
        out.append(int(bits[k - 1]) if k and k <= len(bits) else 0)
    return tuple(out)


@dataclass(frozen=True)
class ScrambledParams:
    alpha_sources: tuple
    w0: str = "1"
    depth: int = 3

    def __post_init__(self):
        object.__setattr__(self, "alpha_sources", tuple(tuple(int(c) for c in s) for s in self.alpha_sources))
        check_word(self.w0)
        if not self.w0:
            raise WordError("w0 must be non-empty")
        if not 1 <= self.depth <= MAX_DEPTH:
            raise WordError(f"depth must be between 1 and {MAX_DEPTH}")


@dataclass
class ScrambledMember:
    member_id: int
    bits: tuple
    alpha: tuple
    point: SteeredPoint
    _images: dict = field(default_factory=dict, repr=False)

    @property
    def times(self) -> tuple:
        return self.point.spec.times

    def image(self, k: int):
        if k not in self._images:
            self._images[k] = self.point.image(k)
        return self._images[k]

    def checkpoints(self) -> list:
        rows = []
        for n in range(1, len(self.times)):
            img = self.image(self.times[n])
            rows.append({"n": n, "k": self.times[n], "block": _head(img), "length": str(_length(img))})
        return rows

    def to_json(self) -> dict:
        pw = self.point.prefix_word
        if isinstance(pw, str):
            pw = RunWord.of(pw)
        return {
            "member": self.member_id,
            "bits": list(self.bits),
            "alpha": list(self.alpha),
            "w0": self.point.spec.targets[0],
            "times": list(self.times),
            "prefix_rle": pw.encode(),
            "checkpoints": self.checkpoints(),
        }


def _member(i: int, bits, w0: str, depth: int) -> ScrambledMember:
    alpha = spread(bits, depth)
    stages = stage_words(depth)
    targets = [w0] + [stages[m][alpha[m]] for m in range(depth)]
    pt = steer(ScheduleSpec.tight(targets))
    return ScrambledMember(i, tuple(bits), alpha, pt)


def scrambled_family(p: ScrambledParams, workers: int | None = None) -> list:
    """One member per alpha source, built over ``p.depth`` stages.

    All members share their checkpoint times, because v_m and u_m have the
    same vanishing order.
    """
    stage_words(p.depth)  # build the shared stages once
    jobs = list(enumerate(p.alpha_sources))
    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            return list(ex.map(lambda j: _member(j[0], j[1], p.w0, p.depth), jobs))
    return [_member(i, s, p.w0, p.depth) for i, s in jobs]


def family_json(members: list) -> str:
    return json.dumps([m.to_json() for m in members], sort_keys=True)


def _bounds(a: str, b: str) -> tuple:
    """Certified lower and upper bounds for |x - y| with x in [a], y in [b]."""
    alo, ahi = cylinder_interval(a)
    blo, bhi = cylinder_interval(b)
    lower = max(Fraction(0), blo - ahi, alo - bhi)
    upper = max(ahi, bhi) - min(alo, blo)
    return lower, upper


def checkpoint_gap(m1: ScrambledMember, m2: ScrambledMember, n: int) -> tuple:
    """(lower, upper) bounds of |R^(k_n)(x1) - R^(k_n)(x2)| from the stage-n blocks."""
    k = m1.times[n]
    if m2.times[n] != k:
        raise WordError("members do not share checkpoint times")
    return _bounds(_head(m1.image(k)), _head(m2.image(k)))


# ---------------------------------------------------------------------------
# closeness statistics


@dataclass
class ClosenessReport:
    delta: Fraction
    indicators: list
    close_incl: list  # running proportion of close ticks, undecided counted as not close
    close_excl: list  # running proportion among decided ticks (None while none decided)

    @property
    def counts(self) -> dict:
        return {s: self.indicators.count(s) for s in ("close", "far", "undecided")}


def _finite_prefix(x, prefix_len: int):
    if isinstance(x, ScrambledMember):
        return x.point.prefix_word
    if isinstance(x, SteeredPoint):
        return x.prefix_word
    if isinstance(x, LazyWord):
        return x.available(prefix_len)
    if isinstance(x, (str, RunWord)):
        return x
    raise TypeError(type(x))


def closeness_statistics(x, y, horizon: int, delta=Fraction(1, 8),
                         prefix_len: int = 1 << 16) -> ClosenessReport:
    """Classify ticks k = 0..horizon as close (sup distance < delta), far
    (inf distance >= delta) or undecided, from certified image prefixes.

    Inputs are steered points, family members, finite words known to be
    prefixes, or lazy words (read up to ``prefix_len`` digits). The same object
    passed twice is the same point, so every tick is close.
    """
    delta = Fraction(delta)
    same = x is y
    a, b = _finite_prefix(x, prefix_len), _finite_prefix(y, prefix_len)
    ind = []
    close = decided = 0
    incl, excl = [], []
    for k in range(horizon + 1):
        if same:
            s = "close"
        else:
            lo, hi = _bounds(_head(a), _head(b))
            s = "close" if hi < delta else "far" if lo >= delta else "undecided"
        ind.append(s)
        close += s == "close"
        decided += s != "undecided"
        incl.append(Fraction(close, k + 1))
        excl.append(Fraction(close, decided) if decided else None)
        if k < horizon and not same:
            a, b = _rho(a), _rho(b)
    return ClosenessReport(delta, ind, incl, excl)


# ---------------------------------------------------------------------------
# separated sets


@dataclass
class SeparatedSet:
    k: int
    n: int
    ell: int
    tuples: list
    prefixes: list
    units: np.ndarray  # pairwise lower bounds of d_n, in units of 2^-(k+1)

    @property
    def size(self) -> int:
        return len(self.tuples)

    @property
    def horizon(self) -> int:
        return self.n * self.ell

    @property
    def min_distance(self) -> Fraction:
        if self.size < 2:
            return Fraction(0)
        d = self.units + np.diag(np.full(self.size, np.iinfo(self.units.dtype).max, dtype=self.units.dtype))
        return Fraction(int(d.min()), 2 ** (self.k + 1))

    @property
    def separated(self) -> bool:
        return self.min_distance >= Fraction(1, 2 ** (self.k + 1))

    @property
    def entropy_estimate(self) -> Fraction:
        """log2 of the size divided by n: (n + 1) k / n."""
        return Fraction((self.n + 1) * self.k, self.n)


def separated_set(k: int, n: int, max_size_exp: int = 12) -> SeparatedSet:
    """One point per tuple (w_0, ..., w_n) of length-k words, steered into
    [w_i 0] at time i*ell, ell = 2 floor(log2 k) + 2.

    Distances are certified lower bounds of max over iterates 0..n*ell of
    |R^t(x) - R^t(y)|, read off the first k+1 digits of each image.
    """
    if k < 1 or n < 1:
        raise WordError("need k, n >= 1")
    if k * (n + 1) > max_size_exp:
        raise WordError(f"k(n+1) = {k * (n + 1)} exceeds the size guard {max_size_exp}")
    ell = 2 * (k.bit_length() - 1) + 2
    words = ["".join(t) for t in product("01", repeat=k)]
    tuples, prefixes = [], []

    def grow(i, chosen, blocks, lens):
        if i > n:
            tuples.append(tuple(chosen))
            prefixes.append("".join(blocks))
            return
        for w in words:
            v = preimage_for(w + "0", _parities(lens, i * ell)) if i else w + "0"
            sub = list(lens)
            _absorb(sub, v)
            grow(i + 1, chosen + [w], blocks + [v], sub)

    grow(0, [], [], [])
    T = n * ell
    m = k + 1
    codes = np.empty((len(prefixes), T + 1), dtype=np.int16)
    for j, p in enumerate(prefixes):
        img = p
        for t in range(T + 1):
            if len(img) < m:
                raise AssertionError("image prefix shorter than k+1 digits")
            codes[j, t] = int(img[:m], 2)
            img = erase(img)
    units = np.zeros((len(prefixes), len(prefixes)), dtype=np.int16)
    for t in range(T + 1):
        a = codes[:, t]
        np.maximum(units, np.abs(a[:, None] - a[None, :]) - 1, out=units)
    return SeparatedSet(k, n, ell, tuples, prefixes, units)
