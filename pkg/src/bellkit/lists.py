"""Exact arithmetic on lists of +/-1 outcomes.

The Bell and CHSH inequalities, read as statements about cross correlations
of three or four equal-length +/-1 lists, are arithmetic identities: they
hold for every such family of lists, whatever produced them. For lists
a, b, b' the elementwise factoring

    a_i b_i - a_i b'_i = a_i b_i (1 - b_i b'_i)

gives |corr(a,b) - corr(a,b')| <= 1 - corr(b,b'), and the four-list analogue
bounds |corr(a,b) + corr(a,b')| + |corr(a',b) - corr(a',b')| by 2.

Correlations here are exact rationals (integer product sum over N), never
floats, so the identity checks in this module carry zero tolerance.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

import numpy as np

from . import _kernels

CHSH_BOUND = 2


def as_pm1(values) -> np.ndarray:
    """Validate a +/-1 sequence and return it as a contiguous int8 array.

    Rejects empty input and any element other than +1 or -1 (0 included).
    """
    arr = np.asarray(values)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D sequence, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError("empty list: need at least one +/-1 outcome")
    ok = np.isin(arr, (-1, 1))
    if not ok.all():
        bad = arr[~ok][0]
        try:
            bad = bad.item()
        except AttributeError:
            pass
        raise ValueError(f"list elements must be +1 or -1, found {bad!r}")
    return np.ascontiguousarray(arr, dtype=np.int8)


def negate(values) -> np.ndarray:
    """Flip every outcome's sign."""
    return -as_pm1(values)


def _paired(x, y) -> tuple[np.ndarray, np.ndarray]:
    a, b = as_pm1(x), as_pm1(y)
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return a, b


def _corr(a: np.ndarray, b: np.ndarray) -> Fraction:
    # inputs already validated and equal-length
    return Fraction(int(_kernels.active.dot_pm1(a, b)), len(a))


def correlation(x, y) -> Fraction:
    """Exact cross correlation (1/N) * sum_i x_i y_i, in [-1, 1]."""
    return _corr(*_paired(x, y))


def fraction_positive(x) -> Fraction:
    """Fraction of +1 entries, in [0, 1]."""
    arr = as_pm1(x)
    return Fraction(int(_kernels.active.count_plus(arr)), len(arr))


class Bell3Sides(NamedTuple):
    lhs: Fraction
    rhs: Fraction
    holds: bool


class Chsh4Sides(NamedTuple):
    lhs: Fraction
    bound: int
    holds: bool


def _equal_length(*arrays: np.ndarray) -> None:
    lengths = {len(a) for a in arrays}
    if len(lengths) > 1:
        raise ValueError(f"length mismatch: {sorted(len(a) for a in arrays)}")


def bell3_sides(a, b, bp) -> Bell3Sides:
    """Three-list inequality sides: |corr(a,b) - corr(a,bp)| vs 1 - corr(b,bp).

    ``holds`` is true for every valid input; a false value signals a software
    defect, not a property of the data.
    """
    a, b, bp = as_pm1(a), as_pm1(b), as_pm1(bp)
    _equal_length(a, b, bp)
    lhs = abs(_corr(a, b) - _corr(a, bp))
    rhs = 1 - _corr(b, bp)
    return Bell3Sides(lhs, rhs, lhs <= rhs)


def chsh4_sides(a, b, ap, bp) -> Chsh4Sides:
    """Four-list (CHSH) inequality side:

        |corr(a,b) + corr(a,bp)| + |corr(ap,b) - corr(ap,bp)| <= 2

    exactly, for any four equal-length +/-1 lists.
    """
    a, b, ap, bp = as_pm1(a), as_pm1(b), as_pm1(ap), as_pm1(bp)
    _equal_length(a, b, ap, bp)
    lhs = abs(_corr(a, b) + _corr(a, bp)) + abs(_corr(ap, b) - _corr(ap, bp))
    return Chsh4Sides(lhs, CHSH_BOUND, lhs <= CHSH_BOUND)
