"""Command-line front-end.

Subcommands:
  caterpillar   emit the unique semiregular caterpillar of a class
  mu            index, residual, and Perron vector of a tree file
  verify-min    enumerate a semiregular class and check that the
                caterpillar is its unique index minimizer
  search        exhaustive index minimization for a degree sequence
  reduce        branch-reduction trace of a semiregular tree, with the
                Rayleigh data of the certified inverse replay

Exit codes: 0 success/verified, 1 verification failure, 2 usage or input
error.  All output is deterministic for fixed arguments; machine formats
carry floats at 17 significant digits, tables at 6.
"""

from __future__ import annotations

import argparse
import sys

from .enumeration import enumerate_trees, find_minimizers
from .spectral import ConvergenceError, spectral_radius
from .transforms import (
    ReductionError,
    caterpillar_bound_witness,
    reduce_to_caterpillar,
)
from .trees import (
    DegreeSequence,
    Tree,
    TreeError,
    canonical_form,
    is_caterpillar,
    make_caterpillar,
    semiregular_degree,
    tree_from_json,
    tree_to_dot,
    tree_to_json,
)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w") as handle:
            handle.write(text)


def _read_tree(path: str) -> Tree:
    try:
        with open(path) as handle:
            text = handle.read()
    except OSError as exc:
        raise TreeError(f"cannot read {path}: {exc}") from None
    return tree_from_json(text)


def cmd_caterpillar(args: argparse.Namespace) -> int:
    t = make_caterpillar(args.d, args.n)
    if args.format == "dot":
        _emit(tree_to_dot(t), args.out)
    elif args.format == "table":
        k = (args.n - 2) // (args.d - 1)
        lines = [
            f"caterpillar d={args.d} n={args.n} (trunk {k})",
            "edges: " + " ".join(f"{u}-{v}" for u, v in t.edges()),
        ]
        _emit("\n".join(lines), args.out)
    else:
        _emit(tree_to_json(t), args.out)
    return EXIT_OK


def cmd_mu(args: argparse.Namespace) -> int:
    t = _read_tree(args.tree)
    result = spectral_radius(t, tol=args.tol, max_iter=args.max_iter)
    if args.format == "table":
        lines = [
            f"mu         = {result.mu:.6g}",
            f"residual   = {result.residual:.6g}",
            f"iterations = {result.iterations}",
            "perron     = " + " ".join(f"{x:.6g}" for x in result.perron),
        ]
        _emit("\n".join(lines), args.out)
    else:
        _emit(result.to_json(), args.out)
    return EXIT_OK


def cmd_verify_min(args: argparse.Namespace) -> int:
    pi = DegreeSequence.semiregular(args.d, args.n)
    report = find_minimizers(pi, tie_tol=args.tie_tol, max_n=args.max_n, jobs=args.jobs)
    cat_code = canonical_form(make_caterpillar(args.d, args.n))
    rows = sorted(
        (spectral_radius(t).mu, canonical_form(t).code, is_caterpillar(t))
        for t in enumerate_trees(pi)
    )
    lines = [f"{'mu':>12}  caterpillar  canonical_code"]
    lines.extend(f"{mu:12.6f}  {str(cat):11}  {code}" for mu, code, cat in rows)
    verified = report.unique and report.minimizer_codes[0] == cat_code
    lines.append(
        "VERIFIED: unique minimizer is the caterpillar"
        if verified
        else "FAILED: caterpillar is not the unique minimizer"
    )
    _emit("\n".join(lines), args.out)
    return EXIT_OK if verified else EXIT_VERIFICATION_FAILED


def cmd_search(args: argparse.Namespace) -> int:
    pi = DegreeSequence.parse(args.pi)
    report = find_minimizers(pi, tie_tol=args.tie_tol, max_n=args.max_n, jobs=args.jobs)
    if args.format == "csv":
        _emit(report.to_csv(), args.out)
    elif args.format == "table":
        lines = [
            f"degree sequence : {report.pi.compact()}",
            f"trees examined  : {report.tree_count}",
            f"minimal index   : {report.min_mu:.6g}",
            f"minimizers      : {len(report.minimizers)}"
            + (" (unique)" if report.unique else " (tied)"),
            f"all caterpillars: {report.all_caterpillars}",
        ]
        if report.gap_to_runner_up is not None:
            lines.append(f"gap to runner-up: {report.gap_to_runner_up:.6g}")
        for code, obs in zip(report.minimizer_codes, report.observations):
            lines.append(
                f"  caterpillar={obs.is_caterpillar} buds_max={obs.buds_have_max_branch_degree} "
                f"trunk_monotone={obs.trunk_degrees_monotone}  {code.code}"
            )
        _emit("\n".join(lines), args.out)
    elif args.format == "dot":
        chunks = [tree_to_dot(t, name=f"M{i}") for i, t in enumerate(report.minimizers)]
        _emit("\n".join(chunks), args.out)
    else:
        _emit(report.to_json(), args.out)
    return EXIT_OK


def _reduction_json(seq, records) -> str:
    by_step = {idx: (r.rq_before, r.rq_after) for idx, r in records.items()}
    rows = []
    for idx, step in enumerate(seq.steps):
        before, after = by_step.get(idx, (None, None))
        rows.append(
            '{"kind":"%s","v_star":%d,"move":{"u1":%d,"v1":%d,"u2":%d,"v2":%d},'
            '"fork_size":%d,"rq_before":%s,"rq_after":%s}'
            % (
                step.kind,
                step.reduction_point,
                step.move.u1_pendant,
                step.move.v1,
                step.move.u2,
                step.move.v2,
                step.fork_size,
                "null" if before is None else "%.17g" % before,
                "null" if after is None else "%.17g" % after,
            )
        )
    return "[" + ",".join(rows) + "]"


def cmd_reduce(args: argparse.Namespace) -> int:
    t = _read_tree(args.tree)
    if semiregular_degree(t) is None and t.vertex_count > 2:
        raise TreeError("input tree is not semiregular: non-pendant degrees differ")
    seq = reduce_to_caterpillar(t, policy=args.policy)
    records: dict[int, object] = {}
    if seq.steps:
        witness = caterpillar_bound_witness(t)
        # witness records run caterpillar -> tree; step i of the reduction
        # is record len(steps)-1-i of the replay
        for replay_idx, rec in enumerate(witness.step_records):
            records[len(seq.steps) - 1 - replay_idx] = rec
    if args.format == "table":
        lines = [
            f"{'step':>4}  {'kind':<16}  {'v*':>3}  {'move':<22}  {'fork':>4}  "
            f"{'rq_before':>12}  {'rq_after':>12}"
        ]
        for idx, step in enumerate(seq.steps):
            rec = records.get(idx)
            move = f"({step.move.u1_pendant},{step.move.v1})<->({step.move.v2},{step.move.u2})"
            before = f"{rec.rq_before:12.6f}" if rec else " " * 12
            after = f"{rec.rq_after:12.6f}" if rec else " " * 12
            lines.append(
                f"{idx:>4}  {step.kind:<16}  {step.reduction_point:>3}  {move:<22}  "
                f"{step.fork_size:>4}  {before}  {after}"
            )
        if not seq.steps:
            lines.append("(already a caterpillar; empty trace)")
        _emit("\n".join(lines), args.out)
    else:
        _emit(_reduction_json(seq, records), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treeindex",
        description="Spectral-radius toolkit for trees with prescribed degrees.",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed reserved for randomized workflows")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("caterpillar", help="emit the semiregular caterpillar of a class")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=["json", "dot", "table"], default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_caterpillar)

    p = sub.add_parser("mu", help="index and Perron vector of a tree JSON file")
    p.add_argument("tree")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--max-iter", type=int, default=100_000)
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_mu)

    p = sub.add_parser(
        "verify-min",
        help="check that the caterpillar uniquely minimizes the index in its class",
    )
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tie-tol", type=float, default=1e-9)
    p.add_argument("--max-n", type=int, default=22)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify_min)

    p = sub.add_parser("search", help="exhaustive index minimization for a degree sequence")
    p.add_argument("--pi", required=True, help='e.g. "4^4,3^2,2,1^12" or "3,3,1,1,1,1"')
    p.add_argument("--tie-tol", type=float, default=1e-9)
    p.add_argument("--max-n", type=int, default=22)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=["json", "csv", "table", "dot"], default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("reduce", help="branch-reduction trace of a semiregular tree")
    p.add_argument("tree")
    p.add_argument("--policy", choices=["minimal", "any"], default="minimal")
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_reduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (TreeError, ReductionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION_FAILED


if __name__ == "__main__":
    sys.exit(main())
