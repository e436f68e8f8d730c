"""Command-line front end.

Exit codes: 0 success, 1 verification failure (or divergence / non-membership),
2 input error, 3 germ enumeration limit.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import Arith, DimensionError, DivergenceError, kleene_star
from .extremals import scaled_basis
from .generators import generating_set
from .io import FormatError, dump_matrix, load_matrix, load_vector, to_dot
from .oracle import decompose, is_supereigenvector, verify_paper_properties
from . import report
from .strategy import (
    DEFAULT_GERM_LIMIT,
    EnumerationLimitExceeded,
    Strategy,
    UnboundStrategy,
    check_bound,
    enumerate_admissible_germs,
    enumerate_cycles_geq1,
    inverse_matrix,
    restrict_matrix,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("matrix", help="matrix file (text or JSON)")
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.add_argument("--tol", type=float, default=1e-9, help="relative tolerance in float mode")
    p.add_argument("--germ-limit", type=int, default=DEFAULT_GERM_LIMIT)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("auto", "text", "json"), default="auto", help="input format")
    p.add_argument("--output", choices=("text", "json"), default="text")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="supercone", description="Generators and extremals of {x : A ⊗ x >= x} in max algebra."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    parent = _parent()
    sub.add_parser("star", parents=[parent], help="Kleene star A*")
    sub.add_parser("cycles", parents=[parent], help="simple cycles of weight >= 1")
    sub.add_parser("germs", parents=[parent], help="admissible germs")
    sub.add_parser("generators", parents=[parent], help="generating set S of V*(A)")
    sub.add_parser("basis", parents=[parent], help="scaled basis (scaled extremals) of V*(A)")
    check = sub.add_parser("check", parents=[parent], help="membership of a vector in V*(A)")
    check.add_argument("vector", help="vector file (text or JSON)")
    verify = sub.add_parser("verify", parents=[parent], help="run the property checks")
    verify.add_argument("--samples", type=int, default=100)
    dot = sub.add_parser("export-dot", parents=[parent], help="DOT digraph of A, A^tau or A^{tau-}")
    dot.add_argument("--strategy", help='strategy as "i:j,..." using node labels, e.g. "1:2,2:1"')
    dot.add_argument("--graph", choices=("A", "tau", "inverse"), default=None)
    return parser


def _config(args) -> Arith:
    if args.germ_limit <= 0:
        raise InputError("--germ-limit must be positive")
    if args.mode == "float":
        if not args.tol > 0:
            raise InputError("--tol must be positive in float mode")
        return Arith.floating(args.tol)
    return Arith()


def _parse_strategy(text: str, labels, n: int) -> Strategy:
    index = {str(lab): t for t, lab in enumerate(labels)}
    pairs = []
    for item in filter(None, (s.strip() for s in text.split(","))):
        try:
            a, b = (index[s.strip()] for s in item.split(":"))
        except (KeyError, ValueError):
            raise InputError(f"bad strategy item {item!r}") from None
        pairs.append((a, b))
    sources = [a for a, _ in pairs]
    for a in sources:
        if sources.count(a) > 1:
            raise InputError(f"node {labels[a]} has two successors in the strategy")
    for _, b in pairs:
        if b not in sources:
            raise InputError(f"strategy target {labels[b]} is not itself mapped")
    return Strategy(tuple(pairs))


def _emit(args, doc, text: str) -> None:
    if args.output == "json":
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write(text)


def _run(args) -> int:
    arith = _config(args)
    try:
        A, labels = load_matrix(args.matrix, args.format, arith)
    except OSError as exc:
        raise InputError(str(exc)) from None
    cmd = args.command

    if cmd == "star":
        try:
            star = kleene_star(A)
        except DivergenceError as exc:
            sys.stderr.write(f"{exc}\n")
            return EXIT_FAIL
        sys.stdout.write(dump_matrix(star, "json" if args.output == "json" else "text", labels))
        return EXIT_OK

    if cmd == "cycles":
        cycles = enumerate_cycles_geq1(A)
        docs = [report.cycle_dict(A, c, labels) for c in cycles]
        text = "".join(f"{report.strategy_text(c, labels)}  weight {d['weight']}\n" for c, d in zip(cycles, docs))
        _emit(args, {"cycles": docs}, text or "no cycles of weight >= 1\n")
        return EXIT_OK

    if cmd == "germs":
        germs = enumerate_admissible_germs(A, args.germ_limit)
        docs = [report.germ_dict(A, g, labels) for g in germs]
        text = "".join(
            f"{report.strategy_text(g, labels)}  origin {d['origin']}  cycle weight {d['cycle_weight']}\n"
            for g, d in zip(germs, docs)
        )
        _emit(args, {"germs": docs}, text or "no admissible germs\n")
        return EXIT_OK

    if cmd == "generators":
        S = generating_set(A, args.germ_limit)
        text = report.generators_text(S, labels) + "\n" if len(S) else "S is empty: V*(A) = {0}\n"
        _emit(args, report.generating_set_dict(S, labels), text)
        return EXIT_OK

    if cmd == "basis":
        result = scaled_basis(A, args.germ_limit)
        _emit(args, report.basis_dict(result, labels), report.basis_text(result, labels))
        return EXIT_OK

    if cmd == "check":
        try:
            x = load_vector(args.vector, args.format, arith)
        except OSError as exc:
            raise InputError(str(exc)) from None
        if x.n != A.n:
            raise InputError(f"vector has dimension {x.n}, matrix has {A.n}")
        member = is_supereigenvector(A, x)
        d = decompose(x, generating_set(A, args.germ_limit))
        doc = {"supereigenvector": member, "decomposition": report.decomposition_dict(d)}
        text = (
            f"A ⊗ x >= x: {'yes' if member else 'no'}\n"
            f"coefficients: {' '.join(doc['decomposition']['coefficients']) or '(none)'}\n"
            f"max combination: {report.vector_text(d.combination)}\n"
            f"decomposes over S: {'yes' if d.residual_equal else 'no'}\n"
        )
        _emit(args, doc, text)
        return EXIT_OK if member else EXIT_FAIL

    if cmd == "verify":
        rep = verify_paper_properties(A, samples=args.samples, seed=args.seed, germ_limit=args.germ_limit)
        _emit(args, report.verify_dict(rep, labels), report.verify_text(rep, labels))
        return EXIT_OK if rep.passed else EXIT_FAIL

    if cmd == "export-dot":
        graph = args.graph or ("tau" if args.strategy else "A")
        if graph == "A":
            sys.stdout.write(to_dot(A, labels, "D_A"))
            return EXIT_OK
        if not args.strategy:
            raise InputError(f"--graph {graph} needs --strategy")
        tau = _parse_strategy(args.strategy, labels, A.n)
        try:
            check_bound(A, tau)
        except UnboundStrategy as exc:
            raise InputError(str(exc)) from None
        if graph == "tau":
            sys.stdout.write(to_dot(restrict_matrix(A, tau), labels, "D_A_tau"))
        else:
            sys.stdout.write(to_dot(inverse_matrix(A, tau), labels, "D_A_tau_inv"))
        return EXIT_OK

    raise AssertionError(cmd)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except (InputError, FormatError, DimensionError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except EnumerationLimitExceeded as exc:
        sys.stderr.write(f"{exc}; raise --germ-limit to continue\n")
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
