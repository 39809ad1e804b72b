"""Factor complexity of finite prefixes."""

from __future__ import annotations

import numpy as np

from ..words import EPWord, LazyWord, WordError, check_word

__all__ = ["subword_complexity", "complexity_profile"]

_MAX_PACKED = 64


def _prefix(b, prefix_len: int) -> str:
    if isinstance(b, LazyWord):
        return b.prefix(prefix_len)
    if isinstance(b, EPWord):
        return b.take(prefix_len)
    w = check_word(b)
    if len(w) < prefix_len:
        raise WordError(f"word has only {len(w)} digits, {prefix_len} requested")
    return w[:prefix_len]


def _digits(w: str) -> np.ndarray:
    return (np.frombuffer(w.encode("ascii"), dtype=np.uint8) - 48).astype(np.uint64)


def subword_complexity(b, n: int, prefix_len: int) -> int:
    """Number of distinct length-n factors of the first prefix_len digits."""
    if n < 1 or prefix_len < n:
        raise WordError("need 1 <= n <= prefix_len")
    return complexity_profile(b, [n], prefix_len)[n]


def complexity_profile(b, ns, prefix_len: int) -> dict:
    """{n: number of distinct length-n factors} for every n in ns.

    Windows of up to 64 digits are packed into uint64 codes (grown one digit at
    a time) and counted with np.unique; longer windows use a set of strings.
    """
    ns = sorted(set(ns))
    if not ns or ns[0] < 1 or ns[-1] > prefix_len:
        raise WordError("need 1 <= n <= prefix_len")
    w = _prefix(b, prefix_len)
    out = {}
    d = _digits(w)
    codes = np.zeros(len(d), dtype=np.uint64)
    width = 0
    for n in ns:
        if n > _MAX_PACKED:
            out[n] = len({w[i:i + n] for i in range(len(w) - n + 1)})
            continue
        while width < n:
            m = len(d) - width
            codes = (codes[:m] << np.uint64(1)) | d[width:width + m]
            width += 1
        out[n] = int(np.unique(codes).size)
    return out
