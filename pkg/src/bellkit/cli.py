"""Command-line front end: run generation, matching, scans, identity checks.

Subcommands: generate, match3, match4, scan {fig2|bell3|chsh4}, check.
Angles are radians everywhere (``--degrees`` converts flag values at parse
time); run records are JSON with explicit +1/-1 integers; scan output is
CSV with floats printed to 9 significant digits.

Exit codes:
    0  success
    1  identity violated; unreachable on valid +/-1 lists, so it flags a
       software defect, not bad data
    2  invalid input or arguments
    3  I/O or file-format error
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import lists, matching, quantum, rng, scan
from .sampler import PairedRun, RunSpec, sample_pair_run

RUN_FORMAT_VERSION = 1
MATCH_FORMAT_VERSION = 1
DEFAULT_SEED = 42

EXIT_OK = 0
EXIT_IDENTITY_VIOLATED = 1
EXIT_INVALID_INPUT = 2
EXIT_IO_FORMAT = 3


class FormatError(Exception):
    """A file exists but its contents do not parse as the expected format."""


def _fmt(x) -> str:
    """Floats at 9 significant digits; exceeds statistical precision."""
    return format(float(x), ".9g")


# ---------------------------------------------------------------------------
# run record files

def save_run_record(path: str, run: PairedRun) -> None:
    record = {
        "format_version": RUN_FORMAT_VERSION,
        "theta_a": run.spec.theta_a,
        "theta_b": run.spec.theta_b,
        "n": run.spec.n,
        "seed": run.spec.seed,
        "pairs": [[int(a), int(b)] for a, b in zip(run.a, run.b)],
    }
    with open(path, "w", newline="") as fh:
        json.dump(record, fh, separators=(",", ":"))
        fh.write("\n")


def load_run_record(path: str) -> PairedRun:
    with open(path) as fh:
        try:
            record = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: not valid JSON ({exc})") from exc
    try:
        if record["format_version"] != RUN_FORMAT_VERSION:
            raise FormatError(f"{path}: unsupported format_version "
                              f"{record['format_version']!r}")
        theta_a = float(record["theta_a"])
        theta_b = float(record["theta_b"])
        n = int(record["n"])
        seed = record.get("seed")
        pairs = record["pairs"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"{path}: missing or malformed field ({exc})") from exc
    if len(pairs) != n:
        raise FormatError(f"{path}: n={n} but {len(pairs)} pairs present")
    arr = np.asarray(pairs)
    if arr.shape != (n, 2) or not np.all(np.isin(arr, (-1, 1))):
        raise FormatError(f"{path}: pairs must be [a, b] with values +1/-1")
    try:
        spec = RunSpec(theta_a=theta_a, theta_b=theta_b, n=n,
                       seed=None if seed is None else int(seed))
    except ValueError as exc:
        raise FormatError(f"{path}: {exc}") from exc
    return PairedRun(spec, np.ascontiguousarray(arr[:, 0], dtype=np.int8),
                     np.ascontiguousarray(arr[:, 1], dtype=np.int8))


def _read_pm1_text(path: str) -> np.ndarray:
    """Raw list file: whitespace-separated +1/-1 tokens."""
    with open(path) as fh:
        tokens = fh.read().split()
    if not tokens:
        raise ValueError(f"{path}: empty list file")
    try:
        values = [int(tok) for tok in tokens]
    except ValueError:
        raise ValueError(f"{path}: every token must be an integer +1 or -1")
    return lists.as_pm1(values)


# ---------------------------------------------------------------------------
# subcommands

def cmd_generate(args) -> int:
    spec = RunSpec(theta_a=args.theta_a, theta_b=args.theta_b,
                   n=args.n, seed=args.seed)
    run = sample_pair_run(spec)
    save_run_record(args.out, run)
    print(f"wrote {args.out}: n={spec.n} theta_a={_fmt(spec.theta_a)} "
          f"theta_b={_fmt(spec.theta_b)} seed={spec.seed}")
    print(f"correlation(a,b) = {_fmt(lists.correlation(run.a, run.b))}")
    print(f"fraction_positive: a = {_fmt(lists.fraction_positive(run.a))}, "
          f"b = {_fmt(lists.fraction_positive(run.b))}")
    return EXIT_OK


def _report_dict(report: matching.MatchReport) -> dict:
    return {
        "requested": report.requested,
        "matched": report.matched,
        "dropped_reference": report.dropped_reference,
        "dropped_candidate": report.dropped_candidate,
        "kept_reference": [int(i) for i in report.kept_reference],
        "permutation": [int(i) for i in report.permutation],
    }


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w", newline="") as fh:
        json.dump(payload, fh, separators=(",", ":"))
        fh.write("\n")


def cmd_match3(args) -> int:
    run_ab = load_run_record(args.file_ab)
    run_apb = load_run_record(args.file_apb)
    triple = matching.match_three(run_ab, run_apb)
    cfg = triple.angles

    c_ab = lists.correlation(triple.a, triple.b)
    c_apb = lists.correlation(triple.ap, triple.b)
    c_aap = lists.correlation(triple.a, triple.ap)
    c_apb_pre = lists.correlation(run_apb.a, run_apb.b)
    # shared B list takes the pivot role in the three-list identity
    sides = lists.bell3_sides(triple.b, triple.a, triple.ap)
    bound3_lhs = sides.lhs + 1 - sides.rhs  # |<AB>-<A'B>| + <AA'>

    rep = triple.report
    print(f"aligned {rep.matched} of {rep.requested} reference positions "
          f"(dropped {rep.dropped_reference} reference, "
          f"{rep.dropped_candidate} candidate)")
    print(f"corr(a,b)   = {_fmt(c_ab)}   theory {_fmt(quantum.corr_pair(cfg.theta_a - cfg.theta_b))}")
    print(f"corr(ap,b)  = {_fmt(c_apb)}   theory {_fmt(quantum.corr_pair(cfg.theta_ap - cfg.theta_b))}   pre-trim {_fmt(c_apb_pre)}")
    print(f"corr(a,ap)  = {_fmt(c_aap)}   theory {_fmt(quantum.corr_aa_matched(cfg))}")
    print(f"identity: lhs = {_fmt(sides.lhs)}  rhs = {_fmt(sides.rhs)}  "
          f"holds = {str(sides.holds).lower()}")
    print(f"bound form: {_fmt(bound3_lhs)} <= 1  "
          f"(theory matched {_fmt(quantum.bell3_lhs_theory(cfg, True))})")

    payload = {
        "format_version": MATCH_FORMAT_VERSION,
        "kind": "matched_triple",
        "angles": {"theta_a": cfg.theta_a, "theta_ap": cfg.theta_ap,
                   "theta_b": cfg.theta_b},
        "report": _report_dict(rep),
        "correlations": {"ab": float(c_ab), "apb": float(c_apb),
                         "aap": float(c_aap),
                         "apb_pre_trim": float(c_apb_pre)},
        "theory": {"ab": float(quantum.corr_pair(cfg.theta_a - cfg.theta_b)),
                   "apb": float(quantum.corr_pair(cfg.theta_ap - cfg.theta_b)),
                   "aap_matched": float(quantum.corr_aa_matched(cfg))},
        "identity": {"lhs": float(sides.lhs), "rhs": float(sides.rhs),
                     "holds": sides.holds},
        "bound3": {"lhs": float(bound3_lhs), "bound": quantum.BELL3_BOUND},
        "lists": {"a": [int(v) for v in triple.a],
                  "b": [int(v) for v in triple.b],
                  "ap": [int(v) for v in triple.ap]},
    }
    _write_json(args.out, payload)
    print(f"wrote {args.out}")
    if not sides.holds:
        print("identity violated: this cannot happen for +/-1 lists and "
              "signals a software defect", file=sys.stderr)
        return EXIT_IDENTITY_VIOLATED
    return EXIT_OK


def cmd_match4(args) -> int:
    run_ab = load_run_record(args.file_ab)
    run_apb = load_run_record(args.file_apb)
    run_abp = load_run_record(args.file_abp)
    quad = matching.match_four(run_ab, run_apb, run_abp)
    cfg = quad.angles

    c_ab = lists.correlation(quad.a, quad.b)
    c_apb = lists.correlation(quad.ap, quad.b)
    c_abp = lists.correlation(quad.a, quad.bp)
    c_apbp = lists.correlation(quad.ap, quad.bp)
    c_apb_pre = lists.correlation(run_apb.a, run_apb.b)
    c_abp_pre = lists.correlation(run_abp.a, run_abp.b)
    sides = lists.chsh4_sides(quad.a, quad.b, quad.ap, quad.bp)

    rep1, rep2 = quad.reports
    print(f"stage 1 (align B): {rep1.matched} of {rep1.requested} kept")
    print(f"stage 2 (align A): {rep2.matched} of {rep2.requested} kept")
    print(f"corr(a,b)   = {_fmt(c_ab)}   theory {_fmt(quantum.corr_pair(cfg.theta_a - cfg.theta_b))}")
    print(f"corr(ap,b)  = {_fmt(c_apb)}   theory {_fmt(quantum.corr_pair(cfg.theta_ap - cfg.theta_b))}   pre-trim {_fmt(c_apb_pre)}")
    print(f"corr(a,bp)  = {_fmt(c_abp)}   theory {_fmt(quantum.corr_pair(cfg.theta_a - cfg.theta_bp))}   pre-trim {_fmt(c_abp_pre)}")
    print(f"corr(ap,bp) = {_fmt(c_apbp)}   theory {_fmt(quantum.corr_apbp_matched(cfg))}")
    print(f"chsh: lhs = {_fmt(sides.lhs)} <= {sides.bound}  "
          f"holds = {str(sides.holds).lower()}  "
          f"(theory matched {_fmt(quantum.chsh4_lhs_theory(cfg, True))})")

    payload = {
        "format_version": MATCH_FORMAT_VERSION,
        "kind": "matched_quad",
        "angles": {"theta_a": cfg.theta_a, "theta_ap": cfg.theta_ap,
                   "theta_b": cfg.theta_b, "theta_bp": cfg.theta_bp},
        "reports": {"align_b": _report_dict(rep1),
                    "align_a": _report_dict(rep2)},
        "correlations": {"ab": float(c_ab), "apb": float(c_apb),
                         "abp": float(c_abp), "apbp": float(c_apbp),
                         "apb_pre_trim": float(c_apb_pre),
                         "abp_pre_trim": float(c_abp_pre)},
        "theory": {"ab": float(quantum.corr_pair(cfg.theta_a - cfg.theta_b)),
                   "apb": float(quantum.corr_pair(cfg.theta_ap - cfg.theta_b)),
                   "abp": float(quantum.corr_pair(cfg.theta_a - cfg.theta_bp)),
                   "apbp_matched": float(quantum.corr_apbp_matched(cfg))},
        "identity": {"lhs": float(sides.lhs), "bound": float(sides.bound),
                     "holds": sides.holds},
        "lists": {"a": [int(v) for v in quad.a],
                  "b": [int(v) for v in quad.b],
                  "ap": [int(v) for v in quad.ap],
                  "bp": [int(v) for v in quad.bp]},
    }
    _write_json(args.out, payload)
    print(f"wrote {args.out}")
    if not sides.holds:
        print("identity violated: this cannot happen for +/-1 lists and "
              "signals a software defect", file=sys.stderr)
        return EXIT_IDENTITY_VIOLATED
    return EXIT_OK


# ---------------------------------------------------------------------------
# scans

FIG2_CSV_HEADER = "alpha,alpha_prime,beta,n,empirical,theoretical,abs_error"


def write_fig2_csv(table: scan.Fig2Table, path: str) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(FIG2_CSV_HEADER + "\n")
        for row in table.rows:
            fh.write(",".join([_fmt(row.alpha), _fmt(row.alpha_prime),
                               _fmt(row.beta), str(row.n),
                               _fmt(row.empirical), _fmt(row.theoretical),
                               _fmt(row.abs_error)]) + "\n")


def write_inequality_csv(table: scan.InequalityTable, path: str) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(",".join(table.column_names) + "\n")
        for row in table.iter_rows():
            *angles, mode, lhs, bound, violated = row
            fields = [_fmt(v) for v in angles]
            fields += [mode, _fmt(lhs), _fmt(bound), str(violated).lower()]
            fh.write(",".join(fields) + "\n")


def cmd_scan_fig2(args) -> int:
    grid = scan.GridSpec(beta=args.beta,
                         alpha_range=tuple(args.alpha_range),
                         alpha_prime_range=tuple(args.alpha_prime_range),
                         n_per_cell=args.n, seed=args.seed)
    source = (scan.SOURCE_MATCHED if args.source == "matched"
              else scan.SOURCE_GEDANKEN)
    table = scan.fig2_scan(grid, source=source, workers=args.workers)
    write_fig2_csv(table, args.out)
    s = table.summary
    print(f"wrote {args.out}: cells={s.cells} "
          f"rms_error={_fmt(s.rms_error)} "
          f"max_abs_error={_fmt(s.max_abs_error)} "
          f"source={args.source} sampling={table.sampling}")
    return EXIT_OK


def _cmd_scan_inequality(args, which: str) -> int:
    matched = args.mode == "matched"
    table = scan.inequality_scan(which, axis=tuple(args.range),
                                 beta=args.beta, matched=matched)
    write_inequality_csv(table, args.out)
    s = table.summary
    print(f"wrote {args.out}: cells={s.cells} max_lhs={_fmt(s.max_lhs)} "
          f"bound={_fmt(table.bound)} violations={s.violations} "
          f"mode={table.mode}")
    return EXIT_OK


def cmd_scan_bell3(args) -> int:
    return _cmd_scan_inequality(args, "bell3")


def cmd_scan_chsh4(args) -> int:
    return _cmd_scan_inequality(args, "chsh4")


# ---------------------------------------------------------------------------
# identity check

def cmd_check(args) -> int:
    arrays = [_read_pm1_text(path) for path in args.files]
    lengths = sorted({len(a) for a in arrays})
    if len(lengths) > 1:
        raise ValueError(f"length mismatch across files: {lengths}")
    if len(arrays) == 3:
        sides = lists.bell3_sides(*arrays)
        print("inequality: three-list")
        print(f"lhs = {_fmt(sides.lhs)}")
        print(f"rhs = {_fmt(sides.rhs)}")
        holds = sides.holds
    else:
        sides = lists.chsh4_sides(*arrays)
        print("inequality: four-list (CHSH)")
        print(f"lhs = {_fmt(sides.lhs)}")
        print(f"bound = {sides.bound}")
        holds = sides.holds
    print(f"holds = {str(holds).lower()}")
    if not holds:
        print("identity violated: this cannot happen for +/-1 lists and "
              "signals a software defect", file=sys.stderr)
        return EXIT_IDENTITY_VIOLATED
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser

def _angle_args(args, names):
    """Convert the named angle attributes in place when --degrees is set."""
    if not getattr(args, "degrees", False):
        return
    factor = math.pi / 180.0
    for name in names:
        value = getattr(args, name)
        if isinstance(value, list):
            setattr(args, name, [value[0] * factor, value[1] * factor,
                                 value[2]])
        else:
            setattr(args, name, value * factor)


def _range_triplet(parser, raw):
    start, stop, steps = raw
    if not float(steps).is_integer():
        parser.error(f"steps must be an integer, got {steps}")
    return [float(start), float(stop), int(steps)]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellkit",
        description="Singlet-run simulation, run matching, and exact "
                    "Bell/CHSH list-identity checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="sample a paired run to JSON")
    gen.add_argument("--theta-a", type=float, required=True,
                     help="detector angle for the A side (radians)")
    gen.add_argument("--theta-b", type=float, required=True,
                     help="detector angle for the B side (radians)")
    gen.add_argument("--n", type=int, required=True, help="number of trials")
    gen.add_argument("--seed", type=int, default=DEFAULT_SEED,
                     help="64-bit unsigned RNG seed")
    gen.add_argument("--out", required=True, help="output run-record path")
    gen.add_argument("--degrees", action="store_true",
                     help="interpret angle flags as degrees")
    gen.set_defaults(func=cmd_generate, angle_names=("theta_a", "theta_b"))

    m3 = sub.add_parser("match3",
                        help="align two runs on their shared B sequence")
    m3.add_argument("file_ab", help="reference run record (A-B)")
    m3.add_argument("file_apb", help="candidate run record (A'-B)")
    m3.add_argument("--out", required=True, help="matched-triple JSON path")
    m3.set_defaults(func=cmd_match3, angle_names=())

    m4 = sub.add_parser("match4",
                        help="two-stage alignment of three runs to four lists")
    m4.add_argument("file_ab", help="reference run record (A-B)")
    m4.add_argument("file_apb", help="candidate run record (A'-B)")
    m4.add_argument("file_abp", help="candidate run record (A-B')")
    m4.add_argument("--out", required=True, help="matched-quad JSON path")
    m4.set_defaults(func=cmd_match4, angle_names=())

    sc = sub.add_parser("scan", help="angle-grid sweeps to CSV")
    sc_sub = sc.add_subparsers(dest="target", required=True)

    fig2 = sc_sub.add_parser("fig2",
                             help="estimator vs closed-form surface scan")
    fig2.add_argument("--beta", type=float, default=0.0,
                      help="fixed B-side angle (radians)")
    fig2.add_argument("--alpha-range", nargs=3, type=float,
                      default=[0.0, math.pi, 17],
                      metavar=("START", "STOP", "STEPS"))
    fig2.add_argument("--alpha-prime-range", nargs=3, type=float,
                      default=[0.0, math.pi, 17],
                      metavar=("START", "STOP", "STEPS"))
    fig2.add_argument("--n", type=int, default=10000,
                      help="trials per grid cell")
    fig2.add_argument("--seed", type=int, default=DEFAULT_SEED)
    fig2.add_argument("--source", choices=("gedanken", "matched"),
                      default="gedanken",
                      help="per-trial triple sampling, or matched pair runs")
    fig2.add_argument("--workers", type=int, default=1,
                      help="thread workers (output identical for any count)")
    fig2.add_argument("--out", required=True, help="CSV output path")
    fig2.add_argument("--degrees", action="store_true")
    fig2.set_defaults(func=cmd_scan_fig2,
                      angle_names=("beta", "alpha_range", "alpha_prime_range"),
                      range_names=("alpha_range", "alpha_prime_range"))

    for which, steps in (("bell3", 121), ("chsh4", 41)):
        ineq = sc_sub.add_parser(
            which, help=f"theoretical {which} left-hand side over a grid")
        ineq.add_argument("--beta", type=float, default=0.0,
                          help="fixed B-side angle (radians)")
        ineq.add_argument("--range", nargs=3, type=float,
                          default=[0.0, 2.0 * math.pi, steps],
                          metavar=("START", "STOP", "STEPS"),
                          help="sweep for each free angle, endpoints included")
        ineq.add_argument("--mode", choices=("matched", "unmatched"),
                          default="matched")
        ineq.add_argument("--out", required=True, help="CSV output path")
        ineq.add_argument("--degrees", action="store_true")
        ineq.set_defaults(
            func=cmd_scan_bell3 if which == "bell3" else cmd_scan_chsh4,
            angle_names=("beta", "range"), range_names=("range",))

    chk = sub.add_parser("check",
                         help="verify the identity on raw +/-1 list files")
    chk.add_argument("files", nargs="+",
                     help="3 or 4 text files of whitespace-separated +1/-1")
    chk.set_defaults(func=cmd_check, angle_names=())

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in getattr(args, "range_names", ()):
        setattr(args, name, _range_triplet(parser, getattr(args, name)))
    _angle_args(args, args.angle_names)
    if args.func is cmd_check and len(args.files) not in (3, 4):
        parser.error(f"check takes 3 or 4 list files, got {len(args.files)}")
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO_FORMAT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO_FORMAT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT


if __name__ == "__main__":
    sys.exit(main())
