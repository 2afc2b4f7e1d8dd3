"""Reordering independently collected runs onto a shared value sequence.

Two runs that both measured B at the same nominal angle can be aligned so
their B sequences coincide: walk the reference run's B list and, for each
position, consume the next unused pair of the candidate run whose B value
matches, preserving the candidate's internal order within each value class
(FIFO). Reordering alone never changes a correlation (a sum is invariant
under permutation); only the finite-sample trim, which drops reference
positions whose value class runs out of candidates, can move an estimate,
and the dropped fraction vanishes as O(1/sqrt(n)).

One alignment turns the four lists of two runs into three aligned lists;
a second alignment on the A values of a third run turns six lists into four.
The aligned lists then satisfy the three- and four-list inequalities of
``bellkit.lists`` exactly, by arithmetic alone. Matching looks only at
recorded outcome values, never at RNG state, so runs ingested from other
sources align the same way as generated ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .quantum import AngleConfig3, AngleConfig4
from .sampler import PairedRun


@dataclass(frozen=True)
class MatchReport:
    """Bookkeeping for one alignment stage.

    ``kept_reference`` and ``permutation`` are parallel: matched position k
    pairs the reference element at ``kept_reference[k]`` with the candidate
    element at ``permutation[k]``. For the second stage of a four-list
    match, "reference" means the stage-one survivors in order.
    """

    requested: int            # reference length before trimming
    matched: int              # aligned length
    dropped_reference: int    # reference positions with exhausted class
    dropped_candidate: int    # candidate pairs never consumed
    kept_reference: np.ndarray  # surviving reference index per position
    permutation: np.ndarray   # candidate index for each matched position

    def __post_init__(self):
        if self.matched + self.dropped_reference != self.requested:
            raise ValueError("matched + dropped_reference must equal requested")
        if len(self.permutation) != self.matched:
            raise ValueError("permutation length must equal matched")
        if len(self.kept_reference) != self.matched:
            raise ValueError("kept_reference length must equal matched")


@dataclass(frozen=True)
class MatchedTriple:
    """Three aligned lists; b is the reference B list on kept positions."""

    a: np.ndarray
    b: np.ndarray
    ap: np.ndarray
    report: MatchReport
    angles: AngleConfig3


@dataclass(frozen=True)
class MatchedQuad:
    """Four aligned lists; a and b are the reference run's on kept positions."""

    a: np.ndarray
    b: np.ndarray
    ap: np.ndarray
    bp: np.ndarray
    reports: tuple[MatchReport, MatchReport]
    angles: AngleConfig4


def _align(ref_values: np.ndarray, cand_values: np.ndarray):
    kept, perm = _kernels.active.match_indices(ref_values, cand_values)
    report = MatchReport(
        requested=len(ref_values),
        matched=len(kept),
        dropped_reference=len(ref_values) - len(kept),
        dropped_candidate=len(cand_values) - len(kept),
        kept_reference=kept,
        permutation=perm,
    )
    return kept, perm, report


def match_three(run_ab: PairedRun, run_apb: PairedRun) -> MatchedTriple:
    """Align a second run's pairs so its B sequence equals the first run's.

    Both runs must have been taken at the same nominal B angle. Returns the
    aligned (a, b, ap) lists restricted to the surviving positions, plus the
    trim/permutation report.
    """
    if run_ab.spec.theta_b != run_apb.spec.theta_b:
        raise ValueError(
            f"shared-angle mismatch: runs were taken at theta_b="
            f"{run_ab.spec.theta_b} and {run_apb.spec.theta_b}")
    kept, perm, report = _align(run_ab.b, run_apb.b)
    if report.matched == 0:
        raise ValueError("no overlap: every reference position was dropped")
    angles = AngleConfig3(theta_a=run_ab.spec.theta_a,
                          theta_ap=run_apb.spec.theta_a,
                          theta_b=run_ab.spec.theta_b)
    return MatchedTriple(a=run_ab.a[kept], b=run_ab.b[kept],
                         ap=run_apb.a[perm], report=report, angles=angles)


def match_four(run_ab: PairedRun, run_apb: PairedRun,
               run_abp: PairedRun) -> MatchedQuad:
    """Two-stage alignment: B of the A'-B run, then A of the A-B' run.

    run_apb must share theta_b with run_ab; run_abp must share theta_a.
    Positions dropped at either stage are removed from all four lists.
    """
    if run_ab.spec.theta_b != run_apb.spec.theta_b:
        raise ValueError(
            f"shared-angle mismatch: runs were taken at theta_b="
            f"{run_ab.spec.theta_b} and {run_apb.spec.theta_b}")
    if run_ab.spec.theta_a != run_abp.spec.theta_a:
        raise ValueError(
            f"shared-angle mismatch: runs were taken at theta_a="
            f"{run_ab.spec.theta_a} and {run_abp.spec.theta_a}")

    kept1, perm1, report1 = _align(run_ab.b, run_apb.b)
    if report1.matched == 0:
        raise ValueError("no overlap: every reference position was dropped "
                         "while aligning B values")
    kept2, perm2, report2 = _align(run_ab.a[kept1], run_abp.a)
    if report2.matched == 0:
        raise ValueError("no overlap: every reference position was dropped "
                         "while aligning A values")

    kept = kept1[kept2]
    angles = AngleConfig4(theta_a=run_ab.spec.theta_a,
                          theta_ap=run_apb.spec.theta_a,
                          theta_b=run_ab.spec.theta_b,
                          theta_bp=run_abp.spec.theta_b)
    return MatchedQuad(a=run_ab.a[kept], b=run_ab.b[kept],
                       ap=run_apb.a[perm1[kept2]], bp=run_abp.b[perm2],
                       reports=(report1, report2), angles=angles)


def conditional_corr_estimate(a, ap, b) -> float:
    """Average of the two B-conditioned correlations, weighted 1/2 each:

        (1/2) avg(a_i ap_i | b_i = +1) + (1/2) avg(a_i ap_i | b_i = -1)

    This estimator targets the matched closed form; it differs from the raw
    correlation(a, ap) by O(1/sqrt(N)) when the class counts are unequal.
    """
    a = np.asarray(a, dtype=np.int8)
    ap = np.asarray(ap, dtype=np.int8)
    b = np.asarray(b, dtype=np.int8)
    if not (len(a) == len(ap) == len(b)):
        raise ValueError(
            f"length mismatch: {len(a)}, {len(ap)}, {len(b)}")
    products = (a * ap).astype(np.int64)
    result = Fraction(0)
    for value in (1, -1):
        mask = b == value
        count = int(np.count_nonzero(mask))
        if count == 0:
            side = "+1" if value == 1 else "-1"
            raise ValueError(f"conditional class b = {side} is empty")
        result += Fraction(int(products[mask].sum()), 2 * count)
    return float(result)
