"""Run-length words: finite words stored as blocks ``pattern ** count``.

The stage words of the scrambled-set construction reach lengths like 2**51,
but they are made of a handful of runs of ``1`` and ``01``. The erasing map
and its section act block by block, so both can be applied exactly without
ever spelling the word out.
"""

from __future__ import annotations

import re
from bisect import bisect_right
from itertools import accumulate

from .words import WordError, check_word, primitive_root

__all__ = ["RunWord"]

_TOKEN = re.compile(r"(?:01)+|1+|0")
_SPLIT_LIMIT = 64  # short repeated blocks are spelled out and re-tokenized


def _rho_pattern(p: str, parity: int) -> str:
    return "".join("01"[(j + parity) & 1] for j, c in enumerate(p) if c == "1")


def _sigma_pattern(p: str, pred: str) -> str:
    out = []
    for c in p:
        out.append("1" if c != pred else "01")
        pred = c
    return "".join(out)


class RunWord:
    """Immutable finite word given by a tuple of ``(pattern, count)`` blocks."""

    __slots__ = ("blocks", "_ends")

    def __init__(self, blocks=()):
        self.blocks = self._normalize(blocks)
        self._ends = None

    @classmethod
    def of(cls, w: str) -> "RunWord":
        return cls([(check_word(w), 1)]) if w else cls()

    # normalization ---------------------------------------------------------

    @staticmethod
    def _normalize(blocks):
        out: list[list] = []

        def push(pat, cnt):
            if out and out[-1][0] == pat:
                out[-1][1] += cnt
            else:
                out.append([pat, cnt])

        for pat, cnt in blocks:
            if cnt < 0:
                raise WordError("negative block count")
            if cnt == 0 or not pat:
                continue
            root = primitive_root(pat)
            cnt *= len(pat) // len(root)
            if len(root) > 2 and (cnt == 1 or len(root) * cnt <= _SPLIT_LIMIT):
                for m in _TOKEN.finditer(root * cnt):
                    t = m.group()
                    r = primitive_root(t)
                    push(r, len(t) // len(r))
            else:
                push(root, cnt)
        return tuple((p, c) for p, c in out)

    # basic measurements ----------------------------------------------------

    def __len__(self):
        # may exceed sys.maxsize; use .length for huge words
        return self.length

    @property
    def length(self) -> int:
        return sum(len(p) * c for p, c in self.blocks)

    @property
    def ones(self) -> int:
        return sum(p.count("1") * c for p, c in self.blocks)

    def __eq__(self, other):
        if isinstance(other, str):
            other = RunWord.of(other)
        return isinstance(other, RunWord) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __bool__(self):
        return bool(self.blocks)

    def __add__(self, other: "RunWord") -> "RunWord":
        if isinstance(other, str):
            other = RunWord.of(other)
        return RunWord(self.blocks + other.blocks)

    def __repr__(self):
        body = " ".join(f"({p})^{c}" if c > 1 else p for p, c in self.blocks)
        return f"RunWord[{body}]"

    def last(self) -> str:
        if not self.blocks:
            raise WordError("empty word has no last digit")
        return self.blocks[-1][0][-1]

    # digit access ----------------------------------------------------------

    def _offsets(self):
        if self._ends is None:
            self._ends = list(accumulate(len(p) * c for p, c in self.blocks))
        return self._ends

    def digit(self, i: int) -> str:
        ends = self._offsets()
        b = bisect_right(ends, i)
        if b >= len(ends):
            raise IndexError(i)
        start = ends[b - 1] if b else 0
        p = self.blocks[b][0]
        return p[(i - start) % len(p)]

    def prefix(self, n: int) -> str:
        """Spell out the first min(n, length) digits."""
        out = []
        left = n
        for p, c in self.blocks:
            if left <= 0:
                break
            size = len(p) * c
            if size <= left:
                out.append(p * c)
                left -= size
            else:
                reps = -(-left // len(p))
                out.append((p * reps)[:left])
                left = 0
        return "".join(out)

    def split(self, i: int) -> tuple["RunWord", "RunWord"]:
        """(first i digits, the rest)."""
        head, tail = [], []
        left = i
        for p, c in self.blocks:
            size = len(p) * c
            if left >= size:
                head.append((p, c))
                left -= size
            elif left <= 0:
                tail.append((p, c))
            else:
                reps, r = divmod(left, len(p))
                head.append((p, reps))
                if r:
                    head.append((p[:r], 1))
                    tail.append((p[r:], 1))
                    reps += 1
                tail.append((p, c - reps))
                left = 0
        return RunWord(head), RunWord(tail)

    def first_one(self) -> int:
        """0-based index of the first 1 (-1 if there is none)."""
        pos = 0
        for p, c in self.blocks:
            if "1" in p:
                return pos + p.index("1")
            pos += len(p) * c
        return -1

    def spell(self, limit: int = 10_000_000) -> str:
        if self.length > limit:
            raise WordError(f"word of length {self.length} is too long to spell out")
        return "".join(p * c for p, c in self.blocks)

    def complement(self) -> "RunWord":
        t = str.maketrans("01", "10")
        return RunWord((p.translate(t), c) for p, c in self.blocks)

    def encode(self) -> list:
        """JSON-friendly run-length form: ``[[pattern, count], ...]``."""
        return [[p, str(c) if c > 2**53 else c] for p, c in self.blocks]

    # the two engines -------------------------------------------------------

    def rho(self, parity: int = 0) -> "RunWord":
        """Erasing map; ``parity`` = 1 gives the complementary rule."""
        out = []
        off = parity & 1
        for p, c in self.blocks:
            if len(p) % 2 == 0:
                img = _rho_pattern(p, off)
                out.append((img, c))
            else:
                pair = _rho_pattern(p, off) + _rho_pattern(p, off ^ 1)
                out.append((pair, c // 2))
                if c % 2:
                    out.append((_rho_pattern(p, off), 1))
                    off ^= 1
        return RunWord(out)

    def sigma(self, first_pred: int | str = 1) -> "RunWord":
        """Shortest section: each digit x becomes 1 after 1-x and 01 after x."""
        pred = str(first_pred)
        out = []
        for p, c in self.blocks:
            if pred == p[-1]:
                out.append((_sigma_pattern(p, pred), c))
            else:
                out.append((_sigma_pattern(p, pred), 1))
                out.append((_sigma_pattern(p, p[-1]), c - 1))
            pred = p[-1]
        return RunWord(out)

    def vanishing_order(self) -> int:
        w = self.rho()
        k = 1
        while w:
            w = w.rho()
            k += 1
        return k
