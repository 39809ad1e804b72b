"""Plane geometry of the graph: the nested rectangle sets K_n.

Over the dyadic column [k/2^n, (k+1)/2^n] the graph stays inside the cylinder
interval of rho(x1...xn), where x1...xn are the n binary digits of k. K_n is the
union of these 2^n rectangles. Going one level down keeps three of the four
quarters of every rectangle, which gives area (3/4)^n and 3^n boxes of side
2^-n. The bottom edges form a step function whose integral tends to 3/7.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .substitution import erase
from .words import WordError, cylinder_interval

__all__ = [
    "DyadicRect", "RectSet", "cluster_interval", "rect_level", "area",
    "box_count", "integral_staircase", "integral_recursive", "integral_closed_form", "t_image",
    "dyadic_decimal", "export_plot_data", "MAX_LEVEL", "MAX_BOX_LEVEL",
]

MAX_LEVEL = 24
MAX_BOX_LEVEL = 16


@dataclass(frozen=True, order=True)
class DyadicRect:
    x_lo: Fraction
    x_hi: Fraction
    y_lo: Fraction
    y_hi: Fraction

    def contains(self, x, y) -> bool:
        return self.x_lo <= x <= self.x_hi and self.y_lo <= y <= self.y_hi

    @property
    def area(self) -> Fraction:
        return (self.x_hi - self.x_lo) * (self.y_hi - self.y_lo)


def cluster_interval(x: str) -> tuple[Fraction, Fraction]:
    """Cylinder of rho(x): where R accumulates just right of 0.x."""
    return cylinder_interval(erase(x))


def _column_data(n: int):
    # numerator and length of rho(binary digits of k) for every k
    k = np.arange(1 << n, dtype=np.int64)
    val = np.zeros_like(k)
    length = np.zeros_like(k)
    for i in range(n):
        bit = (k >> (n - 1 - i)) & 1
        val = np.where(bit == 1, 2 * val + (i & 1), val)
        length += bit
    return val, length


class RectSet:
    """The 2^n rectangles of K_n, ordered by column k.

    Stored as integer arrays (numerator and length of each column's image
    word); :class:`DyadicRect` objects are built on demand.
    """

    def __init__(self, level: int):
        if not 0 <= level <= MAX_LEVEL:
            raise WordError(f"level must be between 0 and {MAX_LEVEL}")
        self.level = level
        self.numer, self.height_exp = _column_data(level)

    def __len__(self):
        return 1 << self.level

    def rect(self, k: int) -> DyadicRect:
        n = self.level
        h = int(self.height_exp[k])
        lo = Fraction(int(self.numer[k]), 1 << h)
        return DyadicRect(Fraction(k, 1 << n), Fraction(k + 1, 1 << n), lo, lo + Fraction(1, 1 << h))

    def __iter__(self):
        return (self.rect(k) for k in range(len(self)))

    @property
    def rects(self) -> list:
        return list(self)

    def containing_column(self, x) -> list:
        """Indices of the columns whose closed x-range contains x."""
        n = self.level
        x = Fraction(x)
        k = int(x * (1 << n))
        ks = [k] if 0 <= k < len(self) else []
        if x * (1 << n) == k and k > 0:
            ks.append(k - 1)
        return ks


def rect_level(n: int) -> RectSet:
    return RectSet(n)


def area(K: RectSet) -> Fraction:
    n = K.level
    # sum of 2^-n * 2^-h over columns, over the common denominator 4^n
    total = int(np.sum(np.left_shift(np.int64(1), n - K.height_exp)))
    return Fraction(total, 1 << (2 * n))


def box_count(n: int) -> int:
    """Number of dyadic boxes of side 2^-n contained in K_n."""
    if not 0 <= n <= MAX_BOX_LEVEL:
        raise WordError(f"box counting is limited to levels 0..{MAX_BOX_LEVEL}")
    K = RectSet(n)
    scale = 1 << n
    count = 0
    for k in range(len(K)):
        r = K.rect(k)
        lo, hi = r.y_lo * scale, r.y_hi * scale
        count += max(0, int(hi.__floor__()) - int(lo.__ceil__()))
    return count


def integral_staircase(n: int) -> Fraction:
    """Integral of the level-n step function (bottom edges of K_n)."""
    if n < 0 or n % 2:
        raise WordError("the staircase is taken at even levels")
    K = RectSet(n)
    total = int(np.sum(np.left_shift(K.numer, n - K.height_exp)))
    return Fraction(total, 1 << (2 * n))


def integral_recursive(n: int) -> Fraction:
    """Staircase integral at any level from the self-affine structure.

    The two affine pieces send a column of K_n with bottom y and height h to
    columns of half the width with bottoms 1 - y - h and (1 - y - h)/2, so
    A_(n+1) = (3/4)(1 - A_n - area(K_n)) with area(K_n) = (3/4)^n and A_0 = 0.
    """
    if n < 0:
        raise WordError("level must be non-negative")
    a = Fraction(0)
    for m in range(n):
        a = Fraction(3, 4) * (1 - a - Fraction(3, 4) ** m)
    return a


def integral_closed_form(n: int) -> Fraction:
    """(3/7)(1 - (9/16)^(n/2)) for even n."""
    return Fraction(3, 7) * (1 - Fraction(9, 16) ** (n // 2))


def _t0(r: DyadicRect) -> DyadicRect:
    return DyadicRect(r.x_lo / 2, r.x_hi / 2, 1 - r.y_hi, 1 - r.y_lo)


def _t1(r: DyadicRect) -> DyadicRect:
    return DyadicRect((r.x_lo + 1) / 2, (r.x_hi + 1) / 2, (1 - r.y_hi) / 2, (1 - r.y_lo) / 2)


def t_image(rects) -> list:
    """Image of a rectangle list under the pair of affine maps
    (x, y) -> (x/2, 1-y) and (x, y) -> ((x+1)/2, (1-y)/2), sorted."""
    rects = list(rects)
    return sorted([_t0(r) for r in rects] + [_t1(r) for r in rects])


# ---------------------------------------------------------------------------
# export


def dyadic_decimal(x: Fraction) -> str:
    """Exact decimal expansion of a dyadic rational."""
    x = Fraction(x)
    d = x.denominator
    if d & (d - 1):
        raise WordError(f"{x} is not dyadic")
    k = d.bit_length() - 1
    digits = x.numerator * 5**k
    if k == 0:
        return str(digits)
    sign = "-" if digits < 0 else ""
    s = str(abs(digits)).rjust(k + 1, "0")
    s = f"{s[:-k]}.{s[-k:]}".rstrip("0").rstrip(".")
    return sign + s


def export_plot_data(what: str, path, level: int = 14) -> int:
    """Write CSV plot data; returns the number of data rows.

    ``rects``: ``level,k,x_lo,x_hi,y_lo,y_hi`` for K_level.
    ``graph``: ``x,y`` bottom-left corners, i.e. the step function at that level.
    ``integral``: ``level,A`` for the even levels 0..level.
    """
    path = Path(path)
    rows = 0
    with path.open("w", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        if what == "rects":
            K = RectSet(level)
            out.writerow(["level", "k", "x_lo", "x_hi", "y_lo", "y_hi"])
            for k in range(len(K)):
                r = K.rect(k)
                out.writerow([level, k] + [dyadic_decimal(v) for v in (r.x_lo, r.x_hi, r.y_lo, r.y_hi)])
                rows += 1
        elif what == "graph":
            K = RectSet(level)
            out.writerow(["x", "y"])
            for k in range(len(K)):
                r = K.rect(k)
                out.writerow([dyadic_decimal(r.x_lo), dyadic_decimal(r.y_lo)])
                rows += 1
        elif what == "integral":
            out.writerow(["level", "A"])
            for n in range(0, level + 1, 2):
                a = integral_staircase(n) if n <= MAX_LEVEL else integral_recursive(n)
                out.writerow([n, dyadic_decimal(a)])
                rows += 1
        else:
            raise WordError(f"unknown export kind {what!r}")
    return rows
