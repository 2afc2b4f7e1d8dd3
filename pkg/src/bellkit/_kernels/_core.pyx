# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: bit-identical to the numpy fallback in ``_numpy.py``.

Plain C loops over the splitmix64 counter stream; thresholds arrive as
ready-made doubles so both backends compare against the same values.
"""

import numpy as np

cimport numpy as cnp
from libc.stdint cimport int8_t, int64_t, uint64_t

cnp.import_array()

cdef uint64_t GAMMA = 0x9E3779B97F4A7C15ULL
cdef uint64_t MIX_M1 = 0xBF58476D1CE4E5B9ULL
cdef uint64_t MIX_M2 = 0x94D049BB133111EBULL
cdef double U53 = 1.0 / 9007199254740992.0  # 2**-53

NAME = "cython"


cdef inline uint64_t mix64(uint64_t z) noexcept nogil:
    z ^= z >> 30
    z *= MIX_M1
    z ^= z >> 27
    z *= MIX_M2
    z ^= z >> 31
    return z


cdef inline uint64_t value_at(uint64_t seed, uint64_t counter) noexcept nogil:
    return mix64(seed + (counter + 1) * GAMMA)


cdef inline double uniform_at(uint64_t seed, uint64_t counter) noexcept nogil:
    return <double> (value_at(seed, counter) >> 11) * U53


cdef inline int8_t conditional(int8_t given, double u, double t_plus,
                               double t_minus) noexcept nogil:
    if given == 1:
        return -1 if u < t_plus else 1
    return -1 if u < t_minus else 1


def raw_u64(seed, start, count):
    """splitmix64 outputs for counters start .. start+count-1."""
    cdef uint64_t s = seed, c0 = start
    cdef Py_ssize_t i, m = count
    out = np.empty(m, dtype=np.uint64)
    cdef uint64_t[::1] v = out
    with nogil:
        for i in range(m):
            v[i] = value_at(s, c0 + <uint64_t> i)
    return out


def uniforms(seed, start, count):
    """Uniform doubles in [0, 1): top 53 bits of each raw output."""
    cdef uint64_t s = seed, c0 = start
    cdef Py_ssize_t i, m = count
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] v = out
    with nogil:
        for i in range(m):
            v[i] = uniform_at(s, c0 + <uint64_t> i)
    return out


def sample_pair(n, seed, t_plus, t_minus):
    """Singlet pair run: counters (2i, 2i+1) drive (B, A|B) for trial i."""
    cdef uint64_t s = seed
    cdef double tp = t_plus, tm = t_minus
    cdef Py_ssize_t i, m = n
    a_arr = np.empty(m, dtype=np.int8)
    b_arr = np.empty(m, dtype=np.int8)
    cdef int8_t[::1] a = a_arr
    cdef int8_t[::1] b = b_arr
    with nogil:
        for i in range(m):
            b[i] = 1 if uniform_at(s, 2 * <uint64_t> i) < 0.5 else -1
            a[i] = conditional(b[i], uniform_at(s, 2 * <uint64_t> i + 1), tp, tm)
    return a_arr, b_arr


def sample_triple(n, seed, ta_plus, ta_minus, tap_plus, tap_minus):
    """Three aligned lists: counters (3i, 3i+1, 3i+2) -> (B, A|B, A'|B)."""
    cdef uint64_t s = seed
    cdef double tap_ = ta_plus, tam = ta_minus, tpp = tap_plus, tpm = tap_minus
    cdef Py_ssize_t i, m = n
    a_arr = np.empty(m, dtype=np.int8)
    ap_arr = np.empty(m, dtype=np.int8)
    b_arr = np.empty(m, dtype=np.int8)
    cdef int8_t[::1] a = a_arr
    cdef int8_t[::1] ap = ap_arr
    cdef int8_t[::1] b = b_arr
    with nogil:
        for i in range(m):
            b[i] = 1 if uniform_at(s, 3 * <uint64_t> i) < 0.5 else -1
            a[i] = conditional(b[i], uniform_at(s, 3 * <uint64_t> i + 1), tap_, tam)
            ap[i] = conditional(b[i], uniform_at(s, 3 * <uint64_t> i + 2), tpp, tpm)
    return a_arr, ap_arr, b_arr


def sample_quad(n, seed, ta_plus, ta_minus, tap_plus, tap_minus,
                tbp_plus, tbp_minus):
    """Four aligned lists: counters (4i, .., 4i+3) -> (B, A|B, A'|B, B'|A)."""
    cdef uint64_t s = seed
    cdef double t1p = ta_plus, t1m = ta_minus
    cdef double t2p = tap_plus, t2m = tap_minus
    cdef double t3p = tbp_plus, t3m = tbp_minus
    cdef Py_ssize_t i, m = n
    a_arr = np.empty(m, dtype=np.int8)
    b_arr = np.empty(m, dtype=np.int8)
    ap_arr = np.empty(m, dtype=np.int8)
    bp_arr = np.empty(m, dtype=np.int8)
    cdef int8_t[::1] a = a_arr
    cdef int8_t[::1] b = b_arr
    cdef int8_t[::1] ap = ap_arr
    cdef int8_t[::1] bp = bp_arr
    with nogil:
        for i in range(m):
            b[i] = 1 if uniform_at(s, 4 * <uint64_t> i) < 0.5 else -1
            a[i] = conditional(b[i], uniform_at(s, 4 * <uint64_t> i + 1), t1p, t1m)
            ap[i] = conditional(b[i], uniform_at(s, 4 * <uint64_t> i + 2), t2p, t2m)
            bp[i] = conditional(a[i], uniform_at(s, 4 * <uint64_t> i + 3), t3p, t3m)
    return a_arr, b_arr, ap_arr, bp_arr


def dot_pm1(x, y):
    """Exact integer sum of elementwise products of two +/-1 arrays."""
    cdef const int8_t[::1] xv = np.ascontiguousarray(x, dtype=np.int8)
    cdef const int8_t[::1] yv = np.ascontiguousarray(y, dtype=np.int8)
    cdef Py_ssize_t i, m = xv.shape[0]
    cdef int64_t acc = 0
    with nogil:
        for i in range(m):
            acc += xv[i] * yv[i]
    return acc


def count_plus(x):
    """Number of +1 entries."""
    cdef const int8_t[::1] xv = np.ascontiguousarray(x, dtype=np.int8)
    cdef Py_ssize_t i, m = xv.shape[0]
    cdef int64_t acc = 0
    with nogil:
        for i in range(m):
            if xv[i] == 1:
                acc += 1
    return acc


def match_indices(ref, cand):
    """Class-FIFO alignment; see the numpy backend for the full contract."""
    cdef const int8_t[::1] r = np.ascontiguousarray(ref, dtype=np.int8)
    cdef const int8_t[::1] c = np.ascontiguousarray(cand, dtype=np.int8)
    cdef Py_ssize_t nr = r.shape[0], nc = c.shape[0]
    cdef Py_ssize_t i, k = 0, np_ = 0, nm = 0, ip = 0, im = 0

    pos_plus_arr = np.empty(nc, dtype=np.int64)
    pos_minus_arr = np.empty(nc, dtype=np.int64)
    cdef int64_t[::1] pos_plus = pos_plus_arr
    cdef int64_t[::1] pos_minus = pos_minus_arr
    kept_arr = np.empty(nr, dtype=np.int64)
    perm_arr = np.empty(nr, dtype=np.int64)
    cdef int64_t[::1] kept = kept_arr
    cdef int64_t[::1] perm = perm_arr

    with nogil:
        for i in range(nc):
            if c[i] == 1:
                pos_plus[np_] = i
                np_ += 1
            else:
                pos_minus[nm] = i
                nm += 1
        for i in range(nr):
            if r[i] == 1:
                if ip < np_:
                    kept[k] = i
                    perm[k] = pos_plus[ip]
                    ip += 1
                    k += 1
            else:
                if im < nm:
                    kept[k] = i
                    perm[k] = pos_minus[im]
                    im += 1
                    k += 1
    return kept_arr[:k].copy(), perm_arr[:k].copy()
