"""Seeded Monte Carlo generation of measurement runs.

Pair runs draw, per trial, first B (fair coin) and then A from the singlet
conditionals: when B = +1, A is set to -1 if the next uniform is below
cos^2(delta/2) and to +1 otherwise; when B = -1 the threshold is
sin^2(delta/2). The thresholds are computed once as (1 +/- cos delta)/2, so
at delta = 0 the anticorrelation a_i = -b_i is exact (not statistical), and
at delta = pi the lists are exactly equal.

The per-trial "gedanken" samplers extend this to three or four lists at
once: all conditional outcomes in a trial are drawn independently given the
shared outcome of that trial, which realizes the conditional-independence
factoring directly. The lists they return are genuinely aligned, so the
list identities of ``bellkit.lists`` hold on them exactly at every n and
seed. Output metadata labels this construction "gedanken-conditional".

All sampling is pure in (angles, n, seed): no hidden RNG state, identical
results on every platform, backend, and worker count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from . import _kernels, rng
from .quantum import AngleConfig3, AngleConfig4

GEDANKEN_SOURCE = "gedanken-conditional"


def conditional_thresholds(delta: float) -> tuple[float, float]:
    """(threshold given +1, threshold given -1) for outcome -1.

    Equal to (cos^2(delta/2), sin^2(delta/2)), computed in the algebraically
    identical form (1 +/- cos delta)/2 so both endpoints are exact doubles.
    """
    c = math.cos(delta)
    return (1.0 + c) / 2.0, (1.0 - c) / 2.0


@dataclass(frozen=True)
class RunSpec:
    """One run's settings: two detector angles, trial count, and seed.

    ``seed`` is None for runs ingested from outside rather than generated
    here; such runs cannot be re-sampled.
    """

    theta_a: float
    theta_b: float
    n: int
    seed: Optional[int]

    def __post_init__(self):
        if not (math.isfinite(self.theta_a) and math.isfinite(self.theta_b)):
            raise ValueError("angles must be finite")
        if self.n < 1:
            raise ValueError(f"need at least one trial, got n={self.n}")
        if self.seed is not None:
            rng.check_seed(self.seed)


@dataclass(frozen=True)
class PairedRun:
    """A run's two jointly sampled outcome lists, aligned by trial."""

    spec: RunSpec
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        if len(self.a) != self.spec.n or len(self.b) != self.spec.n:
            raise ValueError(
                f"list lengths ({len(self.a)}, {len(self.b)}) "
                f"do not match n={self.spec.n}")


def sample_pair_run(spec: RunSpec) -> PairedRun:
    """Sample n trials of (A, B) at the run settings' two angles."""
    if spec.seed is None:
        raise ValueError("cannot sample a run whose spec has no seed")
    t_plus, t_minus = conditional_thresholds(spec.theta_a - spec.theta_b)
    a, b = _kernels.active.sample_pair(spec.n, spec.seed, t_plus, t_minus)
    return PairedRun(spec, a, b)


class Gedanken3(NamedTuple):
    a: np.ndarray
    ap: np.ndarray
    b: np.ndarray


class Gedanken4(NamedTuple):
    a: np.ndarray
    b: np.ndarray
    ap: np.ndarray
    bp: np.ndarray


def _check_trials(n: int):
    if n < 1:
        raise ValueError(f"need at least one trial, got n={n}")


def sample_gedanken3(cfg: AngleConfig3, n: int, seed: int) -> Gedanken3:
    """Per trial: draw B, then A|B and A'|B independently given that B.

    The empirical cross correlation of a and ap converges to the matched
    closed form cos(theta_a - theta_b) * cos(theta_ap - theta_b).
    """
    _check_trials(n)
    ta = conditional_thresholds(cfg.theta_a - cfg.theta_b)
    tap = conditional_thresholds(cfg.theta_ap - cfg.theta_b)
    a, ap, b = _kernels.active.sample_triple(n, rng.check_seed(seed), *ta, *tap)
    return Gedanken3(a, ap, b)


def sample_gedanken4(cfg: AngleConfig4, n: int, seed: int) -> Gedanken4:
    """Per trial: draw (A, B) jointly, then A'|B and B'|A independently.

    The empirical correlation of ap and bp converges to the matched closed
    form -cos(theta_ap - theta_b) * cos(theta_bp - theta_a)
    * cos(theta_a - theta_b).
    """
    _check_trials(n)
    ta = conditional_thresholds(cfg.theta_a - cfg.theta_b)
    tap = conditional_thresholds(cfg.theta_ap - cfg.theta_b)
    tbp = conditional_thresholds(cfg.theta_bp - cfg.theta_a)
    a, b, ap, bp = _kernels.active.sample_quad(
        n, rng.check_seed(seed), *ta, *tap, *tbp)
    return Gedanken4(a, b, ap, bp)
