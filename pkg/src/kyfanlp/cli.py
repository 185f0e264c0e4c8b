"""Command-line entry point ``kyfanlp``.

Exit status is 0 when every checked property holds, 1 when a property is
violated, and 2 for unreadable input or invalid options.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import tensor
from .alignment_lp import (
    LinearProgramInstance,
    SlacknessError,
    StaggerIndexError,
    alignment_table,
    alignment_terms,
    solve_lp,
    staggered_bound,
    u_k_decomposed,
)
from .campaign import TASKS, CampaignConfig, ConfigError, run_campaign
from .majorization import partial_sums
from .matrix_io import MatrixFileError, dumps, load_matrix
from .spectral import eigh

EXIT_PASS, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _emit(args, payload, lines):
    if args.json:
        print(dumps(payload))
    else:
        for line in lines:
            print(line)


def _status(ok):
    return EXIT_PASS if ok else EXIT_VIOLATION


def _pair(args):
    A1, A2 = load_matrix(args.file1), load_matrix(args.file2)
    if A1.shape != A2.shape:
        raise InputError(f"dimension mismatch: {A1.shape[0]} vs {A2.shape[0]}")
    return A1, A2


def _check_k(k, d, name="k"):
    if not 1 <= k <= d:
        raise InputError(f"{name} must lie in [1, {d}], got {k}")


def _dims(text):
    try:
        dims = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"dims must be comma-separated integers, got {text!r}") from None
    if not dims:
        raise argparse.ArgumentTypeError("dims must not be empty")
    return dims


def cmd_sk(args):
    A = load_matrix(args.file)
    _check_k(args.k, len(A))
    lam = eigh(A).eigenvalues
    value = float(partial_sums(lam)[args.k - 1])
    _emit(args, {"k": args.k, "s_k": value, "eigenvalues": lam},
          [f"s_{args.k} = {value:.17g}"])
    return EXIT_PASS


def cmd_ukbound(args):
    A1, A2 = _pair(args)
    d = len(A1)
    _check_k(args.k, d)
    dec1, dec2 = eigh(A1), eigh(A2)
    alpha = alignment_terms(dec1, dec2)
    sol = u_k_decomposed(dec1, dec2, args.k, alpha)
    lower = float(partial_sums(eigh(A1 + A2).eigenvalues)[args.k - 1])
    upper = float(partial_sums(dec1.eigenvalues)[args.k - 1] + partial_sums(dec2.eigenvalues)[args.k - 1])
    ok = lower - args.tol <= sol.value <= upper + args.tol
    if args.table_out:
        with open(args.table_out, "w", encoding="utf-8") as fh:
            fh.write(dumps({"d": d, "k": args.k, "alpha": alpha[args.k - 1]}) + "\n")
    _emit(args, {"k": args.k, "u_k": sol.value, "s_k_sum": lower, "s_k_separate": upper,
                 "point": sol.point, "vertex_is_integral": sol.vertex_is_integral,
                 "status": "pass" if ok else "fail"},
          [f"s_k(A1+A2)        = {lower:.17g}",
           f"u_k               = {sol.value:.17g}",
           f"s_k(A1) + s_k(A2) = {upper:.17g}",
           f"sandwich: {'pass' if ok else 'FAIL'}"])
    return _status(ok)


def cmd_alignment(args):
    A1, A2 = _pair(args)
    d = len(A1)
    _check_k(args.k, d)
    table = alignment_table(eigh(A1), eigh(A2), args.k)
    problems = table.violations(args.tol)
    lines = [f"alpha[l1, l2] for k = {args.k} (rows l1 = 1..{d}, columns l2 = 1..{d})"]
    lines += ["  " + " ".join(f"{v:9.6f}" for v in row) for row in table.alpha]
    lines += problems or ["bounds: pass"]
    _emit(args, {"k": args.k, "alpha": table.alpha, "violations": problems,
                 "status": "fail" if problems else "pass"}, lines)
    return _status(not problems)


def cmd_staggered(args):
    A1, A2 = _pair(args)
    d = len(A1)
    _check_k(args.k, d)
    _check_k(args.l1, d, "l1")
    _check_k(args.l2, d, "l2")
    dec1, dec2 = eigh(A1), eigh(A2)
    table = alignment_table(dec1, dec2, args.k)
    alpha = table[args.l1, args.l2]
    try:
        bound = staggered_bound(dec1.eigenvalues, dec2.eigenvalues, args.k, args.l1, args.l2, alpha)
    except (SlacknessError, StaggerIndexError) as exc:
        raise InputError(str(exc)) from None
    # the formula optimizes the LP with only the (l1, l2) row, using the rounded-up rhs
    lp = LinearProgramInstance(d, args.k, ((args.l1, args.l2, float(np.ceil(alpha - 1e-9))),))
    lp_value = solve_lp(lp.with_objective(np.concatenate([dec1.eigenvalues, dec2.eigenvalues]))).value
    target = float(partial_sums(eigh(A1 + A2).eigenvalues)[args.k - 1])
    ok = abs(bound - lp_value) <= args.tol and target <= bound + args.tol
    _emit(args, {"k": args.k, "l1": args.l1, "l2": args.l2, "alpha": alpha, "bound": bound,
                 "lp_value": lp_value, "s_k_sum": target, "status": "pass" if ok else "fail"},
          [f"alpha       = {alpha:.17g}",
           f"bound       = {bound:.17g}",
           f"LP optimum  = {lp_value:.17g}",
           f"s_k(A1+A2)  = {target:.17g}",
           f"check: {'pass' if ok else 'FAIL'}"])
    return _status(ok)


def _report(args, cfg):
    rep = run_campaign(cfg)
    lines = [f"{rep.task}: {rep.trials} trials, {len(rep.violations)} violations, "
             f"max gap {rep.max_gap:.3g}: {rep.status}"]
    lines += [f"  trial {v.seed_offset} [{v.digest}] gap {v.gap:.3g}" for v in rep.violations]
    _emit(args, rep.to_dict(), lines)
    return _status(rep.status == "pass")


def cmd_diag_tight(args):
    cfg = CampaignConfig("diag-tight", args.seed, args.trials, tuple(args.dims), args.tol)
    return _report(args, cfg)


def cmd_spin_align2(args):
    cfg = CampaignConfig("spin-align2", args.seed, args.trials, (args.dim,), args.tol)
    return _report(args, cfg)


def cmd_campaign(args):
    try:
        with open(args.config, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {args.config}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{args.config} is not valid JSON: {exc}") from None
    if isinstance(obj, dict):
        obj.setdefault("tol", args.tol)
        obj.setdefault("seed", args.seed)
    return _report(args, CampaignConfig.from_dict(obj))


def cmd_sep_fan(args):
    Ms = [load_matrix(p) for p in (args.B1, args.C1, args.B2, args.C2)]
    try:
        v = tensor.check_separable_fan(*Ms, tol=args.tol)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    lines = [f"partial-sum gaps: {' '.join(f'{g:.3g}' for g in v.gaps)}",
             "separable Fan majorization: " + ("pass" if v.holds else f"FAIL at k = {v.first_violation}")]
    _emit(args, {"holds": v.holds, "gaps": v.gaps, "trace_gap": v.trace_gap,
                 "first_violation": v.first_violation}, lines)
    return _status(v.holds)


def cmd_counterexamples(args):
    ind = tensor.indefinite_counterexample()
    one = tensor.check_one_sided_counterexample()
    ok = (not ind.verdict.holds) and one.fails
    _emit(args, {
        "indefinite": {"spectrum_sum": ind.spectrum_sum, "spectrum_aligned": ind.spectrum_aligned,
                       "holds": ind.verdict.holds, "first_violation": ind.verdict.first_violation},
        "one_sided": {"s2_half_aligned": one.s2_half_aligned, "s2_original": one.s2_original,
                      "difference": one.difference},
    }, [
        "indefinite factors:",
        f"  spectrum of sum         {np.round(ind.spectrum_sum, 12).tolist()}",
        f"  spectrum of aligned sum {np.round(ind.spectrum_aligned, 12).tolist()}",
        f"  majorization fails at k = {ind.verdict.first_violation}",
        "aligning only the first factors:",
        f"  s_2(half aligned) = {one.s2_half_aligned:.17g}",
        f"  s_2(original)     = {one.s2_original:.17g}",
        f"  difference        = {one.difference:.17g}",
    ])
    return _status(ok)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS,
                        help="numerical tolerance (default 1e-7)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="base seed (default 0)")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")

    parser = argparse.ArgumentParser(prog="kyfanlp", description=__doc__.splitlines()[0])
    parser.add_argument("--tol", type=float, default=1e-7)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--json", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("sk", cmd_sk, "sum of the k largest eigenvalues")
    p.add_argument("file")
    p.add_argument("--k", type=int, required=True)

    for name, func, text in (("ukbound", cmd_ukbound, "LP bound u_k and the sandwich check"),
                             ("alignment", cmd_alignment, "alignment-term table and its bounds")):
        p = add(name, func, text)
        p.add_argument("file1")
        p.add_argument("file2")
        p.add_argument("--k", type=int, required=True)
        if name == "ukbound":
            p.add_argument("--table-out", help="write the alignment table for k as JSON")

    p = add("staggered", cmd_staggered, "closed-form bound from one alignment constraint")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l1", type=int, required=True)
    p.add_argument("--l2", type=int, required=True)

    p = add("diag-tight", cmd_diag_tight, "random check that u_k is exact for diagonal pairs")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--dims", type=_dims, default=[3, 4, 5, 6, 7, 8], help="comma-separated dimensions")

    p = add("sep-fan", cmd_sep_fan, "separable Fan majorization for four PSD matrix files")
    for name in ("B1", "C1", "B2", "C2"):
        p.add_argument(name)

    p = add("spin-align2", cmd_spin_align2, "random two-letter spin alignment check")
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--dim", type=int, default=2)

    add("counterexamples", cmd_counterexamples, "reproduce the two fixed counterexamples")

    p = add("campaign", cmd_campaign, f"run a campaign config (tasks: {', '.join(TASKS)})")
    p.add_argument("--config", required=True)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, MatrixFileError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
