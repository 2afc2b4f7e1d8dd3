"""Vectorized numpy fallback for the hot kernels.

Semantics here are the reference for the compiled backend in ``_core.pyx``:
every function must produce bit-identical output in both. All randomness is
counter-based splitmix64 (see ``bellkit.rng`` for the scalar reference), so
outputs depend only on ``(seed, counter)`` and never on call order.
"""

import numpy as np

NAME = "numpy"

_MASK64 = np.uint64(0xFFFFFFFFFFFFFFFF)
_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX_M1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX_M2 = np.uint64(0x94D049BB133111EB)
_U53 = 2.0 ** -53


def _mix64(z):
    """splitmix64 finalizer on a uint64 array (wraps mod 2**64)."""
    z = z ^ (z >> np.uint64(30))
    z = z * _MIX_M1
    z = z ^ (z >> np.uint64(27))
    z = z * _MIX_M2
    return z ^ (z >> np.uint64(31))


def raw_u64(seed, start, count):
    """splitmix64 outputs for counters start .. start+count-1."""
    counters = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    return _mix64(np.uint64(seed) + counters * _GAMMA)


def uniforms(seed, start, count):
    """Uniform doubles in [0, 1): top 53 bits of each raw output."""
    return (raw_u64(seed, start, count) >> np.uint64(11)).astype(np.float64) * _U53


def _pm1(condition):
    return np.where(condition, np.int8(1), np.int8(-1))


def _conditional(given, u, t_plus, t_minus):
    # outcome is -1 when u falls below the threshold for the given side
    thr = np.where(given == 1, t_plus, t_minus)
    return np.where(u < thr, np.int8(-1), np.int8(1))


def sample_pair(n, seed, t_plus, t_minus):
    """Singlet pair run: counters (2i, 2i+1) drive (B, A|B) for trial i."""
    u = uniforms(seed, 0, 2 * n)
    b = _pm1(u[0::2] < 0.5)
    a = _conditional(b, u[1::2], t_plus, t_minus)
    return a, b


def sample_triple(n, seed, ta_plus, ta_minus, tap_plus, tap_minus):
    """Three aligned lists: counters (3i, 3i+1, 3i+2) -> (B, A|B, A'|B)."""
    u = uniforms(seed, 0, 3 * n)
    b = _pm1(u[0::3] < 0.5)
    a = _conditional(b, u[1::3], ta_plus, ta_minus)
    ap = _conditional(b, u[2::3], tap_plus, tap_minus)
    return a, ap, b


def sample_quad(n, seed, ta_plus, ta_minus, tap_plus, tap_minus,
                tbp_plus, tbp_minus):
    """Four aligned lists: counters (4i, .., 4i+3) -> (B, A|B, A'|B, B'|A)."""
    u = uniforms(seed, 0, 4 * n)
    b = _pm1(u[0::4] < 0.5)
    a = _conditional(b, u[1::4], ta_plus, ta_minus)
    ap = _conditional(b, u[2::4], tap_plus, tap_minus)
    bp = _conditional(a, u[3::4], tbp_plus, tbp_minus)
    return a, b, ap, bp


def dot_pm1(x, y):
    """Exact integer sum of elementwise products of two +/-1 arrays."""
    return int(np.sum(x.astype(np.int64) * y.astype(np.int64)))


def count_plus(x):
    """Number of +1 entries."""
    return int(np.count_nonzero(x == 1))


def match_indices(ref, cand):
    """Class-FIFO alignment of a candidate +/-1 sequence to a reference one.

    Walking ``ref`` in order, each position consumes the next unused ``cand``
    index holding the same value; positions whose class is exhausted are
    dropped. Returns (kept, perm): surviving reference positions (ascending)
    and the candidate index assigned to each.
    """
    ref = np.asarray(ref, dtype=np.int8)
    cand = np.asarray(cand, dtype=np.int8)
    pos_plus = np.flatnonzero(cand == 1)
    pos_minus = np.flatnonzero(cand == -1)

    is_plus = ref == 1
    # occurrence rank of each reference position within its own class
    rank = np.where(is_plus, np.cumsum(is_plus), np.cumsum(~is_plus)) - 1
    capacity = np.where(is_plus, len(pos_plus), len(pos_minus))
    kept = np.flatnonzero(rank < capacity).astype(np.int64)

    perm = np.empty(len(kept), dtype=np.int64)
    kept_plus = is_plus[kept]
    perm[kept_plus] = pos_plus[rank[kept][kept_plus]]
    perm[~kept_plus] = pos_minus[rank[kept][~kept_plus]]
    return kept, perm
