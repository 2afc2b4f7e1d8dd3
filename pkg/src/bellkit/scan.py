"""Angle-grid experiments: estimator surfaces and inequality sweeps.

Three entry points:

* ``fig2_scan``: sample the three-list construction over an (alpha, alpha')
  grid at fixed beta and compare the conditional-correlation estimator
  against the matched closed form cos(alpha - beta) * cos(alpha' - beta).
* ``inequality_scan``: evaluate a theoretical inequality left-hand side over
  a grid of free angles, in matched or unmatched-stationary mode.
* ``violation_report``: side-by-side matched vs unmatched values at one
  angle configuration, plus an empirical check that finite sampled lists
  never exceed the bound.

Each grid cell draws from its own RNG stream, derived by folding the cell
coordinates into the master seed, so a scan's output is bit-identical for a
fixed (grid, seed) no matter how many workers evaluate it or in what order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from . import lists, rng
from .matching import conditional_corr_estimate, match_three
from .quantum import (AngleConfig3, AngleConfig4, BELL3_BOUND, CHSH4_BOUND,
                      bell3_lhs_theory, chsh4_lhs_theory, corr_aa_matched,
                      mode_label)
from .sampler import (GEDANKEN_SOURCE, RunSpec, sample_gedanken3,
                      sample_gedanken4, sample_pair_run)

# float-roundoff guard when flagging violations; bounds can be met exactly
VIOLATION_EPS = 1e-9

SOURCE_GEDANKEN = "gedanken"
SOURCE_MATCHED = "matched-runs"


class ScanCellError(RuntimeError):
    """A cell's sampling or matching failed; identifies the cell."""


def _check_axis(name, axis):
    start, stop, steps = axis
    if steps < 2:
        raise ValueError(f"{name}: need at least 2 steps, got {steps}")
    if not start < stop:
        raise ValueError(f"{name}: start must be below stop, "
                         f"got [{start}, {stop}]")
    if not (np.isfinite(start) and np.isfinite(stop)):
        raise ValueError(f"{name}: endpoints must be finite")
    return float(start), float(stop), int(steps)


@dataclass(frozen=True)
class GridSpec:
    """An (alpha, alpha') grid at fixed beta, with per-cell trial count.

    Ranges are (start, stop, steps) with both endpoints included.
    """

    beta: float
    alpha_range: tuple[float, float, int]
    alpha_prime_range: tuple[float, float, int]
    n_per_cell: int
    seed: int

    def __post_init__(self):
        if not np.isfinite(self.beta):
            raise ValueError("beta must be finite")
        object.__setattr__(self, "alpha_range",
                           _check_axis("alpha_range", self.alpha_range))
        object.__setattr__(self, "alpha_prime_range",
                           _check_axis("alpha_prime_range",
                                       self.alpha_prime_range))
        if self.n_per_cell < 1:
            raise ValueError("n_per_cell must be at least 1")
        rng.check_seed(self.seed)

    def alphas(self) -> np.ndarray:
        return np.linspace(*self.alpha_range)

    def alpha_primes(self) -> np.ndarray:
        return np.linspace(*self.alpha_prime_range)


@dataclass(frozen=True)
class ScanSummary:
    cells: int
    rms_error: Optional[float] = None
    max_abs_error: Optional[float] = None
    max_lhs: Optional[float] = None
    violations: Optional[int] = None


@dataclass(frozen=True)
class Fig2Row:
    alpha: float
    alpha_prime: float
    beta: float
    n: int
    empirical: float
    theoretical: float
    abs_error: float


@dataclass(frozen=True)
class Fig2Table:
    grid: GridSpec
    source: str
    sampling: str          # how per-trial lists were produced
    rows: list[Fig2Row]
    summary: ScanSummary


def _fig2_cell(grid: GridSpec, i: int, j: int, alpha: float,
               alpha_prime: float, source: str) -> Fig2Row:
    cell_seed = rng.derive_seed(grid.seed, i, j)
    cfg = AngleConfig3(theta_a=alpha, theta_ap=alpha_prime, theta_b=grid.beta)
    try:
        if source == SOURCE_GEDANKEN:
            a, ap, b = sample_gedanken3(cfg, grid.n_per_cell, cell_seed)
        elif source == SOURCE_MATCHED:
            run_ab = sample_pair_run(RunSpec(alpha, grid.beta, grid.n_per_cell,
                                             rng.fold_in(cell_seed, 0)))
            run_apb = sample_pair_run(RunSpec(alpha_prime, grid.beta,
                                              grid.n_per_cell,
                                              rng.fold_in(cell_seed, 1)))
            triple = match_three(run_ab, run_apb)
            a, ap, b = triple.a, triple.ap, triple.b
        else:
            raise ValueError(f"unknown source {source!r}")
        empirical = conditional_corr_estimate(a, ap, b)
    except ValueError as exc:
        raise ScanCellError(
            f"cell ({i}, {j}) at alpha={alpha!r}, alpha_prime={alpha_prime!r} "
            f"failed: {exc}") from exc
    theoretical = float(corr_aa_matched(cfg))
    return Fig2Row(alpha=alpha, alpha_prime=alpha_prime, beta=grid.beta,
                   n=grid.n_per_cell, empirical=empirical,
                   theoretical=theoretical,
                   abs_error=abs(empirical - theoretical))


def fig2_scan(grid: GridSpec, source: str = SOURCE_GEDANKEN,
              workers: int = 1) -> Fig2Table:
    """Estimator-vs-theory surface over the grid.

    ``source`` selects how each cell's three lists are produced: per-trial
    conditional sampling ("gedanken") or two independent pair runs aligned
    by matching ("matched-runs"). Cells are independent; ``workers`` > 1
    evaluates them in a thread pool with identical results.
    """
    cells = [(i, j, alpha, alpha_prime)
             for i, alpha in enumerate(grid.alphas())
             for j, alpha_prime in enumerate(grid.alpha_primes())]

    def run_cell(cell):
        i, j, alpha, alpha_prime = cell
        return _fig2_cell(grid, i, j, alpha, alpha_prime, source)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run_cell, cells))
    else:
        rows = [run_cell(cell) for cell in cells]

    errors = np.array([row.abs_error for row in rows])
    summary = ScanSummary(cells=len(rows),
                          rms_error=float(np.sqrt(np.mean(errors ** 2))),
                          max_abs_error=float(errors.max()))
    return Fig2Table(grid=grid, source=source, sampling=GEDANKEN_SOURCE,
                     rows=rows, summary=summary)


@dataclass(frozen=True)
class InequalityTable:
    """Columnar table of a theoretical inequality over a grid."""

    which: str                     # "bell3" | "chsh4"
    mode: str                      # "matched" | "unmatched-stationary"
    beta: float
    axis: tuple[float, float, int]
    angles: dict[str, np.ndarray]  # column name -> flat angle column
    lhs: np.ndarray
    bound: float
    violated: np.ndarray
    summary: ScanSummary

    @property
    def column_names(self) -> list[str]:
        return [*self.angles, "mode", "lhs", "bound", "violated"]

    def iter_rows(self) -> Iterator[tuple]:
        angle_cols = list(self.angles.values())
        for k in range(len(self.lhs)):
            yield (*(float(col[k]) for col in angle_cols), self.mode,
                   float(self.lhs[k]), self.bound, bool(self.violated[k]))


def inequality_scan(which: str, axis: tuple[float, float, int],
                    beta: float = 0.0, matched: bool = True) -> InequalityTable:
    """Evaluate one inequality's theoretical lhs over a grid of free angles.

    The free angles (theta_a and theta_ap, plus theta_bp for "chsh4") each
    sweep ``axis`` = (start, stop, steps), endpoints included, with theta_b
    fixed at ``beta``. Matched mode stays within the bound everywhere;
    unmatched mode locates violations.
    """
    axis = _check_axis("axis", axis)
    if not np.isfinite(beta):
        raise ValueError("beta must be finite")
    values = np.linspace(*axis)

    if which == "bell3":
        th_a, th_ap = np.meshgrid(values, values, indexing="ij")
        th_a, th_ap = th_a.ravel(), th_ap.ravel()
        cfg = AngleConfig3(theta_a=th_a, theta_ap=th_ap, theta_b=beta)
        lhs = np.asarray(bell3_lhs_theory(cfg, matched), dtype=np.float64)
        bound = BELL3_BOUND
        angles = {"theta_a": th_a, "theta_ap": th_ap,
                  "theta_b": np.full_like(th_a, beta)}
    elif which == "chsh4":
        th_a, th_ap, th_bp = np.meshgrid(values, values, values, indexing="ij")
        th_a, th_ap, th_bp = th_a.ravel(), th_ap.ravel(), th_bp.ravel()
        cfg = AngleConfig4(theta_a=th_a, theta_ap=th_ap, theta_b=beta,
                           theta_bp=th_bp)
        lhs = np.asarray(chsh4_lhs_theory(cfg, matched), dtype=np.float64)
        bound = CHSH4_BOUND
        angles = {"theta_a": th_a, "theta_ap": th_ap,
                  "theta_b": np.full_like(th_a, beta), "theta_bp": th_bp}
    else:
        raise ValueError(f"unknown inequality {which!r}; "
                         "expected 'bell3' or 'chsh4'")

    violated = lhs > bound + VIOLATION_EPS
    summary = ScanSummary(cells=len(lhs), max_lhs=float(lhs.max()),
                          violations=int(np.count_nonzero(violated)))
    return InequalityTable(which=which, mode=mode_label(matched), beta=beta,
                           axis=axis, angles=angles, lhs=lhs, bound=bound,
                           violated=violated, summary=summary)


@dataclass(frozen=True)
class ViolationReport:
    """Matched vs unmatched theory at one configuration, plus data check."""

    kind: str                  # "bell3" | "chsh4"
    angles: object             # the AngleConfig echo
    bound: float
    theory_matched_lhs: float
    theory_unmatched_lhs: float
    empirical_matched_lhs: float
    empirical_holds: bool
    n: int
    seed: int
    source: str


def violation_report(cfg, n: int = 1000, seed: int = 0) -> ViolationReport:
    """Contrast both modes at one configuration.

    The empirical lhs comes from finite sampled lists and can never exceed
    the bound, while the unmatched theoretical value may; seeing both side
    by side is the point.
    """
    if isinstance(cfg, AngleConfig4):
        a, b, ap, bp = sample_gedanken4(cfg, n, seed)
        sides = lists.chsh4_sides(a, b, ap, bp)
        return ViolationReport(
            kind="chsh4", angles=cfg, bound=CHSH4_BOUND,
            theory_matched_lhs=float(chsh4_lhs_theory(cfg, True)),
            theory_unmatched_lhs=float(chsh4_lhs_theory(cfg, False)),
            empirical_matched_lhs=float(sides.lhs),
            empirical_holds=sides.holds, n=n, seed=seed,
            source=GEDANKEN_SOURCE)
    if isinstance(cfg, AngleConfig3):
        a, ap, b = sample_gedanken3(cfg, n, seed)
        # in the three-list identity the shared B list plays the a role
        sides = lists.bell3_sides(b, a, ap)
        empirical = float(sides.lhs + 1 - sides.rhs)  # |<AB>-<A'B>| + <AA'>
        return ViolationReport(
            kind="bell3", angles=cfg, bound=BELL3_BOUND,
            theory_matched_lhs=float(bell3_lhs_theory(cfg, True)),
            theory_unmatched_lhs=float(bell3_lhs_theory(cfg, False)),
            empirical_matched_lhs=empirical,
            empirical_holds=sides.holds, n=n, seed=seed,
            source=GEDANKEN_SOURCE)
    raise ValueError(f"expected AngleConfig3 or AngleConfig4, got {cfg!r}")
