"""The erasing substitution and its relatives.

``erase`` deletes every 0 and rewrites every 1 according to the parity of its
position: a 1 in an odd position becomes 0, a 1 in an even position becomes 1.
With ``parity=1`` the roles are swapped (the complementary rule, which is what
the plain rule looks like after a prefix of odd length).

``section`` is the shortest right inverse: digit x becomes ``1`` when it
follows 1-x and ``01`` when it follows x. Every preimage ending in 1 is
obtained from it by inserting pairs of zeros before its ones.
"""

from __future__ import annotations

import warnings
from typing import Union

import numpy as np

from .runs import RunWord
from .words import BudgetError, EPWord, LazyWord, WordError, canonicalize, check_word

__all__ = [
    "erase", "erase_pow", "erase_ep", "erase_lazy", "erase_after", "parities",
    "block_erase", "block_lift", "section", "section_ep", "vanishing_order",
    "preimage", "preimage_for", "preimages", "pair_census", "DegenerateWordWarning",
]


class DegenerateWordWarning(UserWarning):
    """The empty word was given where the theory never uses it."""


_NUMPY_FROM = 256


def erase(w: str, parity: int = 0) -> str:
    """Image of a finite word; ``|erase(w)| == w.count('1')``."""
    if len(w) < _NUMPY_FROM:
        return "".join("01"[(j + parity) & 1] for j, c in enumerate(w) if c == "1")
    a = np.frombuffer(w.encode("ascii"), dtype=np.uint8)
    idx = np.flatnonzero(a == 49)
    return (((idx + parity) & 1).astype(np.uint8) + 48).tobytes().decode("ascii")


def erase_pow(w, n: int):
    """n-fold image of a finite (str or RunWord) word."""
    for _ in range(n):
        w = w.rho() if isinstance(w, RunWord) else erase(w)
    return w


def _erase_period(p: str, parity: int) -> str:
    # image of one period of a periodic tail that starts at the given parity
    if len(p) % 2 == 0:
        return erase(p, parity)
    return erase(p, parity) + erase(p, parity ^ 1)


def erase_ep(b: EPWord, parity: int = 0) -> EPWord:
    """Exact image of an eventually periodic word that is not eventually 0.

    The result is canonical; it may be eventually 0, in which case the caller
    decides how to re-expand its value.
    """
    if "1" not in b.period:
        raise WordError(f"{b} is eventually 0; its image is a finite word")
    head = erase(b.prefix, parity)
    tail = _erase_period(b.period, (parity + len(b.prefix)) & 1)
    return canonicalize(EPWord(head, tail))


def erase_lazy(b: LazyWord, parity: int = 0, scan_limit: int = 1_000_000) -> LazyWord:
    """Digit-by-digit image of a stream.

    An output digit exists as soon as the input prefix holds that many ones.
    Reading more than ``scan_limit`` consecutive zeros is taken as evidence
    that the input is eventually 0 and raises :class:`BudgetError`.
    """
    def gen():
        pos = parity
        zeros = 0
        for chunk in b.chunks():
            out = erase(chunk, pos & 1)
            pos += len(chunk)
            last_one = chunk.rfind("1")
            zeros = zeros + len(chunk) if last_one < 0 else len(chunk) - 1 - last_one
            if zeros > scan_limit:
                raise BudgetError(f"{zeros} zeros without a 1: input looks eventually 0")
            if out:
                yield out
    return LazyWord(gen, label=f"rho({b.label})")


def parities(v, n: int) -> list[int]:
    """Parities of |rho^i(v)| for i = 0..n-1: the rule used at each step after v."""
    out = []
    for _ in range(n):
        if isinstance(v, RunWord):
            out.append(v.length & 1)
            v = v.rho()
        else:
            out.append(len(v) & 1)
            v = erase(v)
    return out


def erase_after(v, n: int, w):
    """The n-fold image of w read as a continuation of v.

    This is the word with ``erase_pow(v + w, n) == erase_pow(v, n) + erase_after(v, n, w)``.
    Works on str, RunWord, EPWord (returning a str once the word has become
    eventually 0) and LazyWord.
    """
    if n < 1:
        raise WordError("need n >= 1")
    for p in parities(v, n):
        if isinstance(w, str):
            w = erase(w, p)
        elif isinstance(w, RunWord):
            w = w.rho(p)
        elif isinstance(w, EPWord):
            w = erase_ep(w, p) if "1" in w.period else erase(w.prefix, p)
            if isinstance(w, EPWord) and w.period == "0":
                w = w.prefix
        elif isinstance(w, LazyWord):
            w = erase_lazy(w, p)
        else:
            raise TypeError(type(w))
    return w


# ---------------------------------------------------------------------------
# block forms

_TAU = {"00": "", "01": "1", "10": "0", "11": "01"}


def block_erase(w: str) -> str:
    """00 -> e, 01 -> 1, 10 -> 0, 11 -> 01 on consecutive pairs."""
    check_word(w)
    if len(w) % 2:
        raise WordError("block form needs an even-length word")
    return "".join(_TAU[w[i:i + 2]] for i in range(0, len(w), 2))


def block_lift(w: Union[str, LazyWord]):
    """0 -> 10, 1 -> 01; a right inverse of :func:`block_erase`."""
    table = str.maketrans({"0": "10", "1": "01"})
    if isinstance(w, LazyWord):
        return LazyWord(lambda: (c.translate(table) for c in w.chunks()), label=f"lift({w.label})")
    return check_word(w).translate(table)


# ---------------------------------------------------------------------------
# section


def _section_str(w: str, pred: str) -> str:
    if len(w) >= _NUMPY_FROM:
        a = np.frombuffer(w.encode("ascii"), dtype=np.uint8) == 49
        prev = np.empty_like(a)
        prev[0] = pred == "1"
        prev[1:] = a[:-1]
        eq = a == prev
        # digit i becomes "01" after an equal digit, "1" otherwise; its 1 lands here
        where = np.arange(len(a)) + np.cumsum(eq)
        out = np.full(len(a) + int(eq.sum()), 48, dtype=np.uint8)
        out[where] = 49
        return out.tobytes().decode("ascii")
    out = []
    for c in w:
        out.append("1" if c != pred else "01")
        pred = c
    return "".join(out)


def section(w, first_pred: int = 1):
    """Shortest preimage, the first digit being read as preceded by ``first_pred``.

    With the default it is a right inverse of :func:`erase`; with
    ``first_pred=0`` it is a right inverse of the complementary rule.
    """
    pred = str(int(first_pred))
    if isinstance(w, str):
        return _section_str(check_word(w), pred)
    if isinstance(w, RunWord):
        return w.sigma(pred)
    if isinstance(w, EPWord):
        return section_ep(w, int(pred))
    if isinstance(w, LazyWord):
        def gen():
            p = pred
            for chunk in w.chunks():
                yield _section_str(chunk, p)
                p = chunk[-1]
        return LazyWord(gen, label=f"sigma({w.label})")
    raise TypeError(type(w))


def section_ep(b: EPWord, first_pred: int = 1) -> EPWord:
    """Exact section of an eventually periodic word.

    With b = u p p p ...: every copy of p after the first sees its last digit as
    predecessor, so the period is the section of p after p[-1]; the first copy
    is folded into the preperiod when the digit before it differs from p[-1].
    """
    u, p = b.prefix, b.period
    before = u[-1] if u else str(int(first_pred))
    head = _section_str(u if before == p[-1] else u + p, str(int(first_pred)))
    return canonicalize(EPWord(head, _section_str(p, p[-1])))


# ---------------------------------------------------------------------------
# vanishing order and preimages


def vanishing_order(w) -> int:
    """Least k > 0 with rho^k(w) empty."""
    if isinstance(w, RunWord):
        if not w:
            warnings.warn("vanishing order of the empty word", DegenerateWordWarning, stacklevel=2)
        return w.vanishing_order()
    check_word(w)
    if not w:
        warnings.warn("vanishing order of the empty word", DegenerateWordWarning, stacklevel=2)
        return 1
    k = 1
    w = erase(w)
    while w:
        w = erase(w)
        k += 1
    return k


def preimage(w, v="", n: int = 1, choice: int = 0):
    """Canonical preimage of w under ``erase_after(v, n, .)``, ending in 1.

    It is the n-fold section taken with the parities seen after v, which is
    the shortest preimage (and the first one in :func:`preimages` order).
    ``choice`` > 0 inserts that many pairs of zeros before its first 1,
    which gives another valid preimage.
    """
    if n < 1:
        raise WordError("need n >= 1")
    return preimage_for(w, parities(v, n), choice)


def preimage_for(w, ps: list, choice: int = 0):
    """Canonical preimage of w when the successive steps use the parities ``ps``."""
    if choice < 0:
        raise WordError("choice must be non-negative")
    for p in reversed(ps):
        w = section(w, 1 - p)
    empty = (not w) if isinstance(w, (str, RunWord)) else False
    if empty:
        raise WordError("the empty word has no preimage ending in 1 under this map")
    if choice:
        if isinstance(w, RunWord):
            head, tail = w.split(w.first_one())
            w = head + RunWord([("00", choice)]) + tail
        else:
            i = w.index("1")
            w = w[:i] + "00" * choice + w[i:]
    return w


def _fiber(base: str, extra: int, trailing: bool):
    # all <a>base + 0^j of length <= len(base) + extra (j = 0 unless trailing)
    m = base.count("1")
    parts = base.split("1")
    results = []

    def rec(i, left, acc):
        if i == m:
            word = "1".join(acc + [parts[m]])
            results.append(word)
            if trailing:
                for j in range(1, left + 1):
                    results.append(word + "0" * j)
            return
        for a in range(left // 2 + 1):
            rec(i + 1, left - 2 * a, acc + [parts[i] + "00" * a])
    rec(0, extra, [])
    return results


def preimages(w: str, v: str = "", n: int = 1, max_len: int = 12) -> list[str]:
    """Every u with |u| <= max_len, ending in 1, with erase_after(v, n, u) == w.

    Sorted shortest first, then lexicographically. Empty when max_len is too
    small (or when no such word exists, e.g. w empty and n = 1).
    """
    check_word(w)
    if n < 1:
        raise WordError("need n >= 1")
    ps = parities(v, n)
    level = {w}
    for i in reversed(range(n)):
        nxt = set()
        for z in level:
            base = _section_str(z, str(1 - ps[i]))
            if len(base) > max_len:
                continue
            if i == 0 and not base:
                continue
            nxt.update(_fiber(base, max_len - len(base), trailing=i > 0))
        level = nxt
    return sorted(level, key=lambda u: (len(u), u))


def pair_census(n: int = 8) -> tuple[int, int]:
    """Adjacent pairs inside the images of all 2^n words of length n:
    (number of 01 or 10, number of 00 or 11)."""
    mixed = same = 0
    for k in range(1 << n):
        img = erase(format(k, f"0{n}b"))
        for a, b in zip(img, img[1:]):
            if a == b:
                same += 1
            else:
                mixed += 1
    return mixed, same
