"""Counter-based splitmix64 random number generator.

Every random draw in this package is a pure function of ``(seed, counter)``,
which makes runs reproducible bit-exactly and lets grid scans assign each
cell an independent stream regardless of scheduling or worker count.

The algorithm, fixed for all time so outputs stay reproducible:

    GAMMA = 0x9E3779B97F4A7C15
    mix64(z): z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9
              z ^= z >> 27;  z *= 0x94D049BB133111EB
              z ^= z >> 31          (all arithmetic mod 2**64)

    value(seed, counter)   = mix64(seed + (counter + 1) * GAMMA)
    uniform(seed, counter) = (value(seed, counter) >> 11) * 2**-53   in [0, 1)
    fold_in(seed, index)   = value(seed, index)

Derived streams: ``fold_in`` hashes a non-negative index into a seed, so the
stream for grid cell (i, j) under master seed m is ``fold_in(fold_in(m, i), j)``.
Distinct indices always yield distinct derived seeds (``mix64`` is a bijection
and ``GAMMA`` is odd). This module holds the scalar pure-Python reference;
bulk generation goes through the active kernel backend, which must agree with
it bit-for-bit (enforced by tests).
"""

from __future__ import annotations

from . import _kernels

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_MIX_M1 = 0xBF58476D1CE4E5B9
_MIX_M2 = 0x94D049BB133111EB
_U53 = 2.0 ** -53


def check_seed(seed: int) -> int:
    """Validate and return a seed as a plain int in [0, 2**64)."""
    seed = int(seed)
    if not 0 <= seed <= MASK64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def mix64(z: int) -> int:
    """splitmix64 finalizer (a bijection on 64-bit integers)."""
    z &= MASK64
    z ^= z >> 30
    z = (z * _MIX_M1) & MASK64
    z ^= z >> 27
    z = (z * _MIX_M2) & MASK64
    return z ^ (z >> 31)


def value_at(seed: int, counter: int) -> int:
    """Raw 64-bit output at a given counter position."""
    return mix64((seed + ((counter + 1) * GAMMA)) & MASK64)


def uniform_at(seed: int, counter: int) -> float:
    """Uniform double in [0, 1) at a given counter position."""
    return (value_at(seed, counter) >> 11) * _U53


def fold_in(seed: int, index: int) -> int:
    """Derive a child seed from a seed and a non-negative stream index."""
    if index < 0:
        raise ValueError(f"stream index must be non-negative, got {index}")
    return value_at(check_seed(seed), index)


def derive_seed(master: int, *path: int) -> int:
    """Fold a sequence of indices into a master seed, left to right."""
    seed = check_seed(master)
    for index in path:
        seed = fold_in(seed, index)
    return seed


def uniforms(seed: int, start: int, count: int):
    """Bulk uniforms for counters start .. start+count-1 (active backend)."""
    return _kernels.active.uniforms(check_seed(seed), start, count)


def raw_u64(seed: int, start: int, count: int):
    """Bulk raw outputs for counters start .. start+count-1 (active backend)."""
    return _kernels.active.raw_u64(check_seed(seed), start, count)
