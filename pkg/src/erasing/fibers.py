"""Fibres of the interval map over rational points.

The preimages of y are the values of the words obtained from the section of
y's expansion by inserting pairs of zeros before its ones. For rational y the
section is eventually periodic, and the density of ones in its period fixes
the Hausdorff dimension of the fibre through t^2 + t^(1/d) = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .substitution import section, section_ep
from .words import (EPWord, WordError, as_fraction, check_word, expand,
                    expand_terminating, insert_zero_pairs, is_dyadic, word_value)

__all__ = [
    "FiberSpec", "fiber_spec", "fiber_point", "fiber_measure_cylinder",
    "density", "dimension_from_density", "fiber_dimension", "sample_cylinder_measure",
]


@dataclass(frozen=True)
class FiberSpec:
    """Generators of the fibre over y.

    ``sigma_beta`` is the section of the expansion not ending in zeros (absent
    for y = 0), ``sigma_beta_prime`` the section of the expansion not ending
    in ones (present for y = 0 and dyadic y in (0, 1)). ``includes_zero`` marks
    the extra preimage 0 of 2/3.
    """

    y: Fraction
    sigma_beta: EPWord | None
    sigma_beta_prime: EPWord | None
    includes_zero: bool

    def branches(self) -> dict:
        out = {}
        if self.sigma_beta is not None:
            out["beta"] = self.sigma_beta
        if self.sigma_beta_prime is not None:
            out["beta_prime"] = self.sigma_beta_prime
        return out


def fiber_spec(y) -> FiberSpec:
    y = as_fraction(y)
    sb = section_ep(expand(y)) if y > 0 else None
    sbp = None
    if y == 0 or (y < 1 and is_dyadic(y)):
        sbp = section_ep(expand_terminating(y))
    return FiberSpec(y, sb, sbp, y == Fraction(2, 3))


def fiber_point(y, a: Sequence[int] = (), branch: str = "beta") -> Fraction:
    """Value of the fibre word with gap insertions a on the chosen branch."""
    y = as_fraction(y)
    if branch == "beta":
        if y == 0:
            raise WordError("0 has no expansion avoiding a tail of zeros; use branch='beta_prime'")
        base = expand(y)
    elif branch == "beta_prime":
        if y == 1:
            raise WordError("1 has no expansion avoiding a tail of ones; use branch='beta'")
        base = expand_terminating(y)
    else:
        raise WordError(f"unknown branch {branch!r}")
    return word_value(insert_zero_pairs(a, section_ep(base)))


def fiber_measure_cylinder(y: str) -> Fraction:
    """Lebesgue measure of the points mapped into the cylinder of y:
    2^(2n - |section(y)|) / 3^n with n = |y|."""
    check_word(y)
    if not y:
        raise WordError("need a non-empty word")
    n = len(y)
    return Fraction(2 ** (2 * n - len(section(y))), 3**n)


def density(y) -> Fraction:
    """Density of ones in the period of the section of y's expansion."""
    spec = fiber_spec(y)
    w = spec.sigma_beta if spec.sigma_beta is not None else spec.sigma_beta_prime
    return Fraction(w.period.count("1"), len(w.period))


def dimension_from_density(d) -> float:
    """-log2 t for the root t in (0, 1) of t^2 + t^(1/d) = 1.

    Solved for s = -log2 t directly, by bisection on g(s) = 4^-s + 2^(-s/d),
    which decreases from 2 at s = 0 to below 1 at s = 1. It stops when the
    midpoint no longer moves or hits the root exactly.
    """
    d = float(d)
    if not 0 < d <= 1:
        raise WordError("density must lie in (0, 1]")
    e = 1.0 / d
    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        g = 4.0**-mid + 2.0 ** (-mid * e)
        if g == 1.0:
            return mid
        if g > 1.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def fiber_dimension(y=None, d=None) -> float:
    """Hausdorff dimension of the fibre over rational y.

    Passing ``d`` instead evaluates the same formula at an arbitrary density
    (for experiments; not tied to any fibre).
    """
    if d is None:
        if y is None:
            raise WordError("give y or d")
        d = density(y)
    return dimension_from_density(d)


def sample_cylinder_measure(y: str, samples: int = 1_000_000, seed: int = 0,
                            bits: int = 64, chunk: int = 100_000):
    """Monte Carlo estimate of the measure of points mapped into the cylinder of y.

    Each sample is a random 0/1 sequence (a uniform point); its image starts
    with y iff the k-th one sits at an even position (0-based) exactly when
    y_k = 0. Returns (estimate, standard error).
    """
    check_word(y)
    n = len(y)
    if n == 0 or n > bits // 4:
        raise WordError("pattern length must be between 1 and bits/4")
    target = np.array([int(c) for c in y], dtype=np.int64)
    rng = np.random.default_rng(seed)
    hits = 0
    done = 0
    while done < samples:
        m = min(chunk, samples - done)
        b = rng.integers(0, 2, size=(m, bits), dtype=np.int8)
        counts = np.cumsum(b, axis=1, dtype=np.int16)
        short = counts[:, -1] < n
        while short.any():
            # extremely rare: fewer than n ones in the drawn bits; draw more
            extra = rng.integers(0, 2, size=(m, bits), dtype=np.int8)
            b = np.concatenate([b, extra], axis=1)
            counts = np.cumsum(b, axis=1, dtype=np.int16)
            short = counts[:, -1] < n
        ok = np.ones(m, dtype=bool)
        for k in range(n):
            pos = np.argmax(counts >= k + 1, axis=1)
            ok &= (pos & 1) == target[k]
        hits += int(ok.sum())
        done += m
    p = hits / samples
    return p, math.sqrt(max(p * (1 - p), 1e-300) / samples)
