"""Fixed and periodic words of the erasing substitution.

A fixed word is determined by any prefix w whose image is again a prefix of
w: writing w = rho(w) v0, the rest is v1 v2 ... with each v_k the section of
v_(k-1) (or of its complement, after a prefix of odd length). Every fixed word
arises from the simplest one by inserting pairs of zeros before its ones.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from ..runs import RunWord
from ..substitution import erase, preimage_for, section, vanishing_order
from ..words import LazyWord, WordError, check_word, complement

__all__ = [
    "simplest_fixed_point", "complete_fixed", "fixed_point_from_gaps",
    "gaps_of_fixed_point", "odd_period_blocks", "odd_period_point",
    "thue_morse", "periodic_point", "minimal_period_witness", "is_fixed_prefix",
]

_CHUNK = 1 << 16


def _repeat(pattern: str, count: int):
    """pattern * count in chunks of bounded size."""
    per = max(1, _CHUNK // len(pattern))
    while count > 0:
        k = min(per, count)
        yield pattern * k
        count -= k


def simplest_fixed_point() -> LazyWord:
    """00101 followed by 1^(3*2^h) (01)^(3*2^h) for h = 0, 1, 2, ..."""
    def gen():
        yield "00101"
        h = 0
        while True:
            yield from _repeat("1", 3 << h)
            yield from _repeat("01", 3 << h)
            h += 1
    return LazyWord(gen, label="b0")


def complete_fixed(w: str) -> LazyWord:
    """The unique fixed word w v1 v2 ... whose tail has no factor 00."""
    check_word(w)
    img = erase(w)
    if not w or not w.startswith(img):
        raise WordError(f"rho({w!r}) = {img!r} is not a prefix of {w!r}")

    def gen():
        v = w[len(img):]
        size = len(w)
        yield w
        while True:
            v = section(v) if size % 2 == 0 else section(complement(v))
            size += len(v)
            yield v
    return LazyWord(gen, label=f"fix[{w}]")


def _nth_one(b: LazyWord, n: int, start: int = 0) -> int:
    """1-based position of the n-th 1 of b."""
    seen = 0
    pos = 0
    for chunk in b.chunks(0):
        c = chunk.count("1")
        if seen + c >= n:
            i = -1
            for _ in range(n - seen):
                i = chunk.index("1", i + 1)
            return pos + i + 1
        seen += c
        pos += len(chunk)
    raise WordError("stream ended before its n-th one")


def fixed_point_from_gaps(a: Sequence[int] | Iterable[int]) -> LazyWord:
    """The fixed word attached to the gap sequence a (finite, or any iterable).

    Stage n truncates the current fixed word right after its n-th one,
    inserts 0^(2 a_n) before that one and completes again. Digits before the
    n-th one never change afterwards, so they are emitted stage by stage.
    """
    def gen():
        b = simplest_fixed_point()
        emitted = 0
        for n, an in enumerate(a, start=1):
            if an < 0:
                raise WordError("gaps must be non-negative")
            k = _nth_one(b, n)
            head = b.prefix(k)
            w = head[:-1] + "00" * an + head[-1]
            b = complete_fixed(w)
            yield w[emitted:]
            emitted = len(w)
        for chunk in b.chunks(emitted):
            yield chunk
    label = "phi" if not isinstance(a, (tuple, list)) else f"phi{tuple(a)}"
    return LazyWord(gen, label=label)


def is_fixed_prefix(b: LazyWord, n: int, power: int = 1) -> bool:
    """Whether rho^power of the first n digits is a prefix of b."""
    w = b.available(n)
    img = w
    for _ in range(power):
        img = erase(img)
    return b.available(len(img)) == img


def gaps_of_fixed_point(b: LazyWord, entries: int, check: int = 4096) -> tuple:
    """Inverse of :func:`fixed_point_from_gaps` on its first ``entries`` gaps.

    The n-th gap is the number of pairs of zeros right before the n-th 1; the
    first 1 of any fixed word follows at least one pair, which is not counted.
    """
    if not is_fixed_prefix(b, check):
        raise WordError(f"{b.label or 'word'} is not fixed by rho on its first {check} digits")
    out = []
    run = 0
    pos = 0
    while len(out) < entries:
        c = b.digit(pos)
        pos += 1
        if c == "0":
            run += 1
            continue
        out.append(run // 2 - (1 if not out else 0))
        run = 0
    return tuple(out)


# ---------------------------------------------------------------------------
# odd periods


def odd_period_blocks(ell: int, stages: int) -> list:
    """Blocks w, u_0, v_0, u_1, v_1, ... of the rho^(2 ell + 1)-fixed word, as RunWords."""
    if ell < 1:
        raise WordError("ell must be at least 1")
    r = 2**ell - 1
    blocks = [RunWord([("01", 2 ** (ell - 1))])]
    for h in range(stages):
        a = 2 ** ((2 * ell + 1) * h + ell)
        b = 2 ** ((2 * ell + 1) * h + 2 * ell)
        blocks.append(RunWord([("1", a), ("01", a // 2), ("1", r * a)]))
        blocks.append(RunWord([("01", b), ("1", b), ("01", r * b)]))
    return blocks


def odd_period_point(ell: int) -> LazyWord:
    """Expansion of the point of period 2 ell + 1 built from (01)-runs and 1-runs."""
    if ell < 1:
        raise WordError("ell must be at least 1")
    r = 2**ell - 1

    def gen():
        yield "01" * 2 ** (ell - 1)
        h = 0
        while True:
            a = 2 ** ((2 * ell + 1) * h + ell)
            b = 2 ** ((2 * ell + 1) * h + 2 * ell)
            yield from _repeat("1", a)
            yield from _repeat("01", a // 2)
            yield from _repeat("1", r * a)
            yield from _repeat("01", b)
            yield from _repeat("1", b)
            yield from _repeat("01", r * b)
            h += 1
    return LazyWord(gen, label=f"x^{ell}")


def thue_morse(start: int = 0) -> LazyWord:
    """Thue-Morse word starting with the given digit (built by doubling)."""
    if start not in (0, 1):
        raise WordError("start must be 0 or 1")

    def gen():
        cur = str(start)
        yield cur
        while True:
            nxt = complement(cur)
            yield nxt
            cur += nxt
    return LazyWord(gen, label=f"thue-morse[{start}]")


# ---------------------------------------------------------------------------
# periodic points


def _absorb(lens: list, block) -> None:
    """Update |rho^i(prefix)| for all i after appending ``block``."""
    z = block
    i = 0
    while z:
        if i == len(lens):
            lens.append(0)
        p = lens[i] & 1
        lens[i] += z.length if isinstance(z, RunWord) else len(z)
        z = z.rho(p) if isinstance(z, RunWord) else erase(z, p)
        i += 1


def _parities(lens: list, k: int) -> list:
    return [(lens[i] & 1) if i < len(lens) else 0 for i in range(k)]


def periodic_point(w: str, choice: Sequence[int] = ()) -> LazyWord:
    """A word of [w] fixed by rho^n, n = vanishing_order(w).

    Blocks w_0 = w, w_1, w_2, ... with w_k a preimage of w_(k-1) under n steps
    read after w_0 ... w_(k-1). ``choice[k-1]`` selects the k-th block among
    the preimages (0 = shortest); missing entries mean 0.
    """
    check_word(w)
    if not w:
        raise WordError("need a non-empty word")
    n = vanishing_order(w)
    choice = tuple(choice)

    def gen():
        lens: list = []
        prev = w
        _absorb(lens, w)
        yield w
        k = 1
        while True:
            c = choice[k - 1] if k - 1 < len(choice) else 0
            blk = preimage_for(prev, _parities(lens, n), c)
            _absorb(lens, blk)
            yield blk
            prev = blk
            k += 1
    return LazyWord(gen, label=f"periodic[{w}]")


def minimal_period_witness(n: int) -> str:
    """A word of vanishing order n none of whose images rho^k(w), 0 < k < n,
    is a prefix of it.

    Built backwards: z_(n-1) = 0, z_k = 00 section(z_(k+1)) and w = section(z_1).
    Each z_k with k >= 1 starts with 0 and has its first 1 at an even
    position, so every image starts with 0 while w starts with 1.
    """
    if n < 1:
        raise WordError("n must be at least 1")
    if n == 1:
        return "0"
    z = "0"
    for _ in range(n - 2):
        z = "00" + section(z)
    return section(z)
