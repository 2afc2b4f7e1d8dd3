"""Exact Bell-type list identities and a singlet-state run simulator.

The package has three layers:

* arithmetic identities on +/-1 outcome lists, checked with exact rational
  arithmetic (:mod:`bellkit.lists`);
* closed-form singlet probabilities and correlations with brute-force
  enumeration oracles (:mod:`bellkit.quantum`);
* seeded simulation, run matching, and grid scans built on a counter-based
  RNG (:mod:`bellkit.sampler`, :mod:`bellkit.matching`, :mod:`bellkit.scan`).

Hot loops run in a compiled extension when available and fall back to a
vectorized numpy implementation otherwise; both produce bit-identical
output. ``active_backend()`` reports which one is in use.
"""

from ._kernels import available_backends, backend_name as active_backend
from .lists import (Bell3Sides, Chsh4Sides, as_pm1, bell3_sides, chsh4_sides,
                    correlation, fraction_positive, negate)
from .matching import (MatchReport, MatchedQuad, MatchedTriple,
                       conditional_corr_estimate, match_four, match_three)
from .quantum import (AngleConfig3, AngleConfig4, BELL3_BOUND, CHSH4_BOUND,
                      MATCHED, UNMATCHED, bell3_lhs_theory,
                      brute_force_corr3, brute_force_corr4, chsh4_lhs_theory,
                      cond_prob, corr_aa_matched, corr_apbp_matched,
                      corr_pair, joint_prob)
from .sampler import (Gedanken3, Gedanken4, PairedRun, RunSpec,
                      sample_gedanken3, sample_gedanken4, sample_pair_run)
from .scan import (Fig2Row, Fig2Table, GridSpec, InequalityTable,
                   ScanCellError, ScanSummary, ViolationReport, fig2_scan,
                   inequality_scan, violation_report)

__version__ = "0.1.0"

__all__ = [
    "AngleConfig3", "AngleConfig4", "BELL3_BOUND", "Bell3Sides",
    "CHSH4_BOUND", "Chsh4Sides", "Fig2Row", "Fig2Table", "Gedanken3",
    "Gedanken4", "GridSpec", "InequalityTable", "MATCHED", "MatchReport",
    "MatchedQuad", "MatchedTriple", "PairedRun", "RunSpec", "ScanCellError",
    "ScanSummary", "UNMATCHED", "ViolationReport", "active_backend",
    "as_pm1", "available_backends", "bell3_lhs_theory", "bell3_sides",
    "brute_force_corr3", "brute_force_corr4", "chsh4_lhs_theory",
    "chsh4_sides", "cond_prob", "conditional_corr_estimate", "correlation",
    "corr_aa_matched", "corr_apbp_matched", "corr_pair", "fig2_scan",
    "fraction_positive", "inequality_scan", "joint_prob", "match_four",
    "match_three", "negate", "sample_gedanken3", "sample_gedanken4",
    "sample_pair_run", "violation_report", "__version__",
]
