"""Binary words and binary expansions.

Finite words are plain ``str`` objects over the characters ``'0'`` and ``'1'``.
Eventually periodic words are :class:`EPWord` values (preperiod + period), which
are exactly the expansions of rationals. Everything else infinite is a
:class:`LazyWord`, a cached stream of digits.

Positions are 1-indexed in docstrings (as in the mathematics) and 0-indexed in
the code.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence, Union

__all__ = [
    "WordError", "BudgetError", "EPWord", "LazyWord", "Word",
    "check_word", "ones", "complement", "primitive_root",
    "canonicalize", "word_value", "expand", "expand_terminating", "is_dyadic",
    "gap_word", "insert_zero_pairs", "cylinder_interval", "freq",
    "parse_word", "parse_rational", "as_fraction", "prefix_of",
]


class WordError(ValueError):
    """Raised for malformed words or violated preconditions."""


class BudgetError(RuntimeError):
    """Raised when a materialization or search budget would be exceeded."""


_BITS = re.compile(r"[01]*\Z")


def check_word(w: str) -> str:
    if not isinstance(w, str) or not _BITS.match(w):
        raise WordError(f"not a binary word: {w!r}")
    return w


def ones(w: str) -> int:
    return w.count("1")


_COMP = str.maketrans("01", "10")


def complement(w: str) -> str:
    return w.translate(_COMP)


def primitive_root(p: str) -> str:
    """Shortest r with p = r^k, via the prefix (failure) function."""
    n = len(p)
    if n <= 1:
        return p
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and p[i] != p[k]:
            k = fail[k - 1]
        if p[i] == p[k]:
            k += 1
        fail[i] = k
    d = n - fail[-1]
    return p[:d] if n % d == 0 else p


# ---------------------------------------------------------------------------
# eventually periodic words


@dataclass(frozen=True)
class EPWord:
    """The infinite word ``prefix · period · period · ...``.

    Construct through :meth:`make` (or :func:`canonicalize`) to get the
    canonical form: primitive period and shortest preperiod. Equality of
    canonical forms is equality of infinite words.
    """

    prefix: str
    period: str

    def __post_init__(self):
        check_word(self.prefix)
        check_word(self.period)
        if not self.period:
            raise WordError("period must be non-empty")

    @classmethod
    def make(cls, prefix: str, period: str) -> "EPWord":
        return canonicalize(cls(prefix, period))

    @classmethod
    def parse(cls, text: str) -> "EPWord":
        """Parse ``PREFIX(PERIOD)``, e.g. ``0(1)`` or ``(01)``."""
        m = re.fullmatch(r"\s*([01]*)\(([01]+)\)\s*", text)
        if not m:
            raise WordError(f"bad eventually periodic literal: {text!r}")
        return cls.make(m.group(1), m.group(2))

    def __str__(self):
        return f"{self.prefix}({self.period})"

    def digit(self, i: int) -> str:
        """Digit at 0-based index i."""
        if i < len(self.prefix):
            return self.prefix[i]
        return self.period[(i - len(self.prefix)) % len(self.period)]

    def take(self, n: int) -> str:
        if n <= len(self.prefix):
            return self.prefix[:n]
        rest = n - len(self.prefix)
        reps = -(-rest // len(self.period))
        return self.prefix + (self.period * reps)[:rest]

    def unroll(self, copies: int) -> "EPWord":
        """Same word with ``copies`` periods moved into the prefix."""
        return EPWord(self.prefix + self.period * copies, self.period)

    @property
    def eventually_zero(self) -> bool:
        return set(canonicalize(self).period) == {"0"}

    @property
    def eventually_one(self) -> bool:
        return set(canonicalize(self).period) == {"1"}

    def value(self) -> Fraction:
        return word_value(self)

    def lazy(self) -> "LazyWord":
        return LazyWord.from_ep(self)


def canonicalize(w: EPWord) -> EPWord:
    """Primitive period and shortest preperiod; value preserving and idempotent."""
    per = primitive_root(w.period)
    pre = w.prefix
    while pre and pre[-1] == per[-1]:
        pre = pre[:-1]
        per = per[-1] + per[:-1]
    return EPWord(pre, per)


# ---------------------------------------------------------------------------
# lazy infinite words


class LazyWord:
    """An infinite (or explicitly bounded) word materialized on demand.

    ``source`` is a zero-argument callable returning an iterator of digit
    chunks (non-empty strings). It must be deterministic, so that replaying it
    always gives the same word. Digits are cached; the cache only grows, and
    growth is serialized by a lock so concurrent readers see one prefix.

    If the iterator stops, the word is finite and reading past its end raises
    :class:`BudgetError` (used for streams of which only a prefix is known).
    """

    DEFAULT_BUDGET = 50_000_000

    def __init__(self, source: Callable[[], Iterator[str]], label: str = "",
                 budget: int | None = None):
        self._source = source
        self._it: Iterator[str] | None = None
        self._chunks: list[str] = []
        self._cache = ""
        self._done = False
        self._lock = threading.Lock()
        self.label = label
        self.budget = self.DEFAULT_BUDGET if budget is None else budget

    # constructors ---------------------------------------------------------

    @classmethod
    def from_ep(cls, w: EPWord) -> "LazyWord":
        def gen():
            if w.prefix:
                yield w.prefix
            block = w.period * max(1, 4096 // len(w.period))
            while True:
                yield block
        return cls(gen, label=str(w))

    @classmethod
    def from_word(cls, w: str, label: str = "") -> "LazyWord":
        """A bounded stream: only the digits of ``w`` exist."""
        check_word(w)

        def gen():
            if w:
                yield w
        return cls(gen, label=label or "finite")

    @classmethod
    def from_function(cls, f: Callable[[int], int | str], label: str = "",
                      chunk: int = 4096) -> "LazyWord":
        """Word whose 0-based digit i is ``f(i)``."""
        def gen():
            i = 0
            while True:
                yield "".join(str(int(f(j))) for j in range(i, i + chunk))
                i += chunk
        return cls(gen, label=label)

    @classmethod
    def from_chunks(cls, chunks: Callable[[], Iterable[str]], label: str = "") -> "LazyWord":
        return cls(lambda: iter(chunks()), label=label)

    # access ---------------------------------------------------------------

    @property
    def known(self) -> int:
        """Number of digits materialized so far."""
        return len(self._cache)

    @property
    def finite(self) -> bool:
        return self._done

    def _extend(self, n: int) -> None:
        if len(self._cache) >= n:
            return
        if n > self.budget:
            raise BudgetError(f"{self.label or 'stream'}: {n} digits exceeds budget {self.budget}")
        with self._lock:
            if self._it is None and not self._done:
                self._it = iter(self._source())
            have = len(self._cache)
            pieces = []
            while have < n and not self._done:
                try:
                    c = next(self._it)
                except StopIteration:
                    self._done = True
                    break
                pieces.append(c)
                have += len(c)
            if pieces:
                self._cache += "".join(pieces)
        if len(self._cache) < n:
            raise BudgetError(
                f"{self.label or 'stream'}: only {len(self._cache)} digits are available, {n} requested")

    def prefix(self, n: int) -> str:
        self._extend(n)
        return self._cache[:n]

    def available(self, n: int) -> str:
        """Up to n digits, without failing on bounded streams."""
        try:
            self._extend(n)
        except BudgetError:
            if not self._done:
                raise
        return self._cache[:n]

    def digit(self, i: int) -> str:
        self._extend(i + 1)
        return self._cache[i]

    def __getitem__(self, key):
        if isinstance(key, slice):
            if key.stop is None or key.stop < 0:
                raise WordError("lazy words need an explicit non-negative slice end")
            return self.prefix(key.stop)[key]
        return self.digit(key)

    def chunks(self, start: int = 0, size: int = 4096) -> Iterator[str]:
        """Iterate the word in pieces starting at 0-based index ``start``."""
        i = start
        while True:
            s = self.available(i + size)[i:]
            if not s:
                return
            yield s
            i += len(s)

    def __repr__(self):
        return f"LazyWord({self.label!r}, known={self.known})"


Word = Union[str, EPWord, LazyWord]


def prefix_of(w: Word, n: int) -> str:
    """First n digits of any kind of word."""
    if isinstance(w, str):
        if len(w) < n:
            raise WordError(f"word of length {len(w)} has no {n}-digit prefix")
        return w[:n]
    if isinstance(w, EPWord):
        return w.take(n)
    return w.prefix(n)


# ---------------------------------------------------------------------------
# values and expansions


def as_fraction(x) -> Fraction:
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise WordError(f"{x} is outside [0, 1]")
    return x


def word_value(w: Union[str, EPWord]) -> Fraction:
    """Value of the binary expansion 0.w (finite words are padded with zeros)."""
    if isinstance(w, str):
        check_word(w)
        return Fraction(int(w, 2), 1 << len(w)) if w else Fraction(0)
    head = int(w.prefix, 2) if w.prefix else 0
    tail = Fraction(int(w.period, 2), (1 << len(w.period)) - 1)
    return (head + tail) / (1 << len(w.prefix))


def _long_division(x: Fraction) -> EPWord:
    # expansion of x in [0,1) that is not eventually 1
    p, q = x.numerator, x.denominator
    seen = {}
    digits = []
    r = p
    while r not in seen:
        seen[r] = len(digits)
        r *= 2
        if r >= q:
            digits.append("1")
            r -= q
        else:
            digits.append("0")
    i = seen[r]
    return canonicalize(EPWord("".join(digits[:i]), "".join(digits[i:])))


def is_dyadic(x) -> bool:
    d = Fraction(x).denominator
    return d & (d - 1) == 0


def expand(x) -> EPWord:
    """Binary expansion of x in (0, 1] that is not eventually 0."""
    x = as_fraction(x)
    if x == 0:
        raise WordError("0 has no expansion that avoids a tail of zeros")
    if x == 1:
        return EPWord("", "1")
    w = _long_division(x)
    if w.period == "0":
        # finite expression x1...xk with xk = 1 becomes x1...x(k-1) 0 1 1 1 ...
        return canonicalize(EPWord(w.prefix[:-1] + "0", "1"))
    return w


def expand_terminating(x) -> EPWord:
    """Binary expansion of x in [0, 1) that is not eventually 1."""
    x = as_fraction(x)
    if x == 1:
        raise WordError("1 has no expansion that avoids a tail of ones")
    return _long_division(x)


# ---------------------------------------------------------------------------
# gaps, insertion, cylinders, frequencies


def gap_word(a: Sequence[int]) -> str:
    """0^{a1} 1 0^{a2} 1 ... for the listed gaps."""
    if any(k < 0 for k in a):
        raise WordError("gaps must be non-negative")
    return "".join("0" * k + "1" for k in a)


def _insert_finite(a: Sequence[int], w: str) -> str:
    if any(k < 0 for k in a):
        raise WordError("gaps must be non-negative")
    parts = w.split("1")
    if len(parts) - 1 < len(a):
        raise WordError(f"word has {len(parts) - 1} ones, {len(a)} insertions requested")
    for i, k in enumerate(a):
        parts[i] += "00" * k
    return "1".join(parts)


def insert_zero_pairs(a: Sequence[int], b: Word) -> Word:
    """Insert 0^{2 a_k} right before the k-th 1 of b."""
    a = tuple(a)
    if isinstance(b, str):
        return _insert_finite(a, check_word(b))
    if not a:
        return b
    if isinstance(b, EPWord):
        if "1" not in b.period:
            if ones(b.prefix) < len(a):
                raise WordError("word has too few ones")
            return canonicalize(EPWord(_insert_finite(a, b.prefix), b.period))
        copies = 0
        while ones(b.prefix) + copies * ones(b.period) < len(a):
            copies += 1
        u = b.unroll(copies)
        return canonicalize(EPWord(_insert_finite(a, u.prefix), u.period))

    def gen():
        seen = 0
        for chunk in b.chunks():
            if seen >= len(a):
                yield chunk
                continue
            out = []
            for c in chunk:
                if c == "1" and seen < len(a):
                    out.append("00" * a[seen])
                    seen += 1
                out.append(c)
            yield "".join(out)
    return LazyWord(gen, label=f"<{','.join(map(str, a))}>{b.label}")


def cylinder_interval(w: str) -> tuple[Fraction, Fraction]:
    """[0.w000..., 0.w111...], the values of all expansions starting with w."""
    lo = word_value(check_word(w))
    return lo, lo + Fraction(1, 1 << len(w))


def freq(w: str, b: Word, n: int) -> Fraction:
    """Relative frequency of w among the first n length-|w| factors of b."""
    check_word(w)
    if n <= 0 or not w:
        raise WordError("need n >= 1 and a non-empty pattern")
    s = prefix_of(b, n + len(w) - 1)
    hits = sum(1 for i in range(n) if s.startswith(w, i))
    return Fraction(hits, n)


# ---------------------------------------------------------------------------
# literals


def parse_word(text: str) -> Union[str, EPWord]:
    """``0110`` -> finite word, ``0(1)`` -> EPWord."""
    text = text.strip()
    if "(" in text:
        return EPWord.parse(text)
    if text in ("", "e", "eps"):
        return ""
    return check_word(text)


def parse_rational(text: str) -> Fraction:
    """A point of [0,1] given as ``p/q``, an integer, or a word literal."""
    text = text.strip()
    if "(" in text:
        return word_value(EPWord.parse(text))
    try:
        x = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise WordError(f"cannot parse rational {text!r}") from exc
    return as_fraction(x)
