"""Singlet-state probabilities, closed-form correlations, and oracles.

Outcome conventions: a detector reading is +1 or -1, and the conditional
probabilities for a singlet pair measured at orientations theta_A, theta_B
(delta = theta_A - theta_B) are

    p(A = -1 | B = +1) = p(A = +1 | B = -1) = cos^2(delta / 2)
    p(A = -1 | B = -1) = p(A = +1 | B = +1) = sin^2(delta / 2)
    p(B = +1) = p(B = -1) = 1/2

The pairwise correlation is -cos(delta). When independently collected runs
are matched on their shared variable (see ``bellkit.matching``), the induced
cross correlations have closed forms:

    <A A'>  =  cos(theta_A - theta_B) * cos(theta_A' - theta_B)
    <A' B'> = -cos(theta_A' - theta_B) * cos(theta_B' - theta_A)
                                       * cos(theta_A - theta_B)

(note the opposite leading signs: A and A' sit on the same side of the
apparatus, A' and B' on opposite sides). These matched correlations satisfy
the three- and four-correlation inequality bounds at every angle; the
"unmatched-stationary" assignment, which gives every pair its independent-run
cosine and the A-A' pair zero, violates them.

Every function broadcasts over numpy arrays in the angle arguments, so grid
sweeps can evaluate whole meshes in one call. The half-angle forms are
computed as (1 +/- cos delta)/2, which is exact at delta = 0 and delta = pi.

``brute_force_corr3`` and ``brute_force_corr4`` are deliberately naive
enumerations over all outcome combinations; they serve as independent
oracles for the closed forms and must stay structurally distinct from them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

BELL3_BOUND = 1.0
CHSH4_BOUND = 2.0

MATCHED = "matched"
UNMATCHED = "unmatched-stationary"


def _check_finite(name, value):
    if not np.all(np.isfinite(value)):
        raise ValueError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class AngleConfig3:
    """Detector settings for the three-correlation case (radians).

    Fields may be floats or broadcastable numpy arrays.
    """

    theta_a: float
    theta_ap: float
    theta_b: float

    def __post_init__(self):
        for name in ("theta_a", "theta_ap", "theta_b"):
            _check_finite(name, getattr(self, name))


@dataclass(frozen=True)
class AngleConfig4:
    """Detector settings for the four-correlation (CHSH) case (radians)."""

    theta_a: float
    theta_ap: float
    theta_b: float
    theta_bp: float

    def __post_init__(self):
        for name in ("theta_a", "theta_ap", "theta_b", "theta_bp"):
            _check_finite(name, getattr(self, name))


def _check_outcome(name, value):
    if value not in (-1, 1):
        raise ValueError(f"{name} must be +1 or -1, got {value!r}")


def cond_prob(a_out: int, b_out: int, delta) -> float:
    """p(A = a_out | B = b_out) for angle difference delta = theta_A - theta_B."""
    _check_outcome("a_out", a_out)
    _check_outcome("b_out", b_out)
    _check_finite("delta", delta)
    if a_out == -b_out:
        return (1.0 + np.cos(delta)) / 2.0  # cos^2(delta/2)
    return (1.0 - np.cos(delta)) / 2.0      # sin^2(delta/2)


def joint_prob(a_out: int, b_out: int, delta) -> float:
    """p(A = a_out, B = b_out) = p(A | B) * 1/2."""
    return cond_prob(a_out, b_out, delta) * 0.5


def corr_pair(delta) -> float:
    """Correlation of one jointly measured pair: -cos(delta)."""
    _check_finite("delta", delta)
    return -np.cos(delta)


def corr_aa_matched(cfg: AngleConfig3) -> float:
    """<A A'> after matching both runs on the shared B sequence."""
    return np.cos(cfg.theta_a - cfg.theta_b) * np.cos(cfg.theta_ap - cfg.theta_b)


def corr_apbp_matched(cfg: AngleConfig4) -> float:
    """<A' B'> after the two-stage matching that aligns B then A."""
    return (-np.cos(cfg.theta_ap - cfg.theta_b)
            * np.cos(cfg.theta_bp - cfg.theta_a)
            * np.cos(cfg.theta_a - cfg.theta_b))


def brute_force_corr3(cfg: AngleConfig3) -> float:
    """Oracle for <A A'>: enumerate all 8 outcome combinations.

    Sums A * A' * p(A|B) * p(A'|B) * p(B), with A and A' conditionally
    independent given B.
    """
    d_a = cfg.theta_a - cfg.theta_b
    d_ap = cfg.theta_ap - cfg.theta_b
    total = 0.0
    for a, ap, b in itertools.product((-1, 1), repeat=3):
        total = total + (a * ap
                         * cond_prob(a, b, d_a)
                         * cond_prob(ap, b, d_ap)
                         * 0.5)
    return total


def brute_force_corr4(cfg: AngleConfig4) -> float:
    """Oracle for <A' B'>: enumerate all 16 outcome combinations.

    Sums A' * B' * p(A'|B) * p(B'|A) * p(A, B), where A' couples to B and
    B' couples to A, each through its own separate run.
    """
    d_ab = cfg.theta_a - cfg.theta_b
    d_ap = cfg.theta_ap - cfg.theta_b
    d_bp = cfg.theta_bp - cfg.theta_a
    total = 0.0
    for a, b, ap, bp in itertools.product((-1, 1), repeat=4):
        total = total + (ap * bp
                         * cond_prob(ap, b, d_ap)
                         * cond_prob(bp, a, d_bp)
                         * joint_prob(a, b, d_ab))
    return total


def bell3_lhs_theory(cfg: AngleConfig3, matched: bool) -> float:
    """Left-hand side |<AB> - <A'B>| + <AA'> of the three-correlation bound.

    Matched mode uses the closed-form <AA'> and never exceeds 1. Unmatched
    mode sets <AA'> = 0 (independent runs share no data) and can reach 2.
    """
    lhs = np.abs(corr_pair(cfg.theta_a - cfg.theta_b)
                 - corr_pair(cfg.theta_ap - cfg.theta_b))
    if matched:
        lhs = lhs + corr_aa_matched(cfg)
    return lhs


def chsh4_lhs_theory(cfg: AngleConfig4, matched: bool) -> float:
    """Left-hand side |<AB> + <AB'>| + |<A'B> - <A'B'>| of the CHSH bound.

    Matched mode uses the closed-form <A'B'> and never exceeds 2. Unmatched
    mode assigns <A'B'> its stationary cosine -cos(theta_A' - theta_B') and
    reaches 2*sqrt(2).
    """
    if matched:
        c_apbp = corr_apbp_matched(cfg)
    else:
        c_apbp = corr_pair(cfg.theta_ap - cfg.theta_bp)
    return (np.abs(corr_pair(cfg.theta_a - cfg.theta_b)
                   + corr_pair(cfg.theta_a - cfg.theta_bp))
            + np.abs(corr_pair(cfg.theta_ap - cfg.theta_b) - c_apbp))


def mode_label(matched: bool) -> str:
    """Canonical output label for the two evaluation modes."""
    return MATCHED if matched else UNMATCHED
