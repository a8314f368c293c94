"""Command line interface.

Exit codes: 0 success, 1 usage or parse error, 2 inconsistent input,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .ahograph import build_ahograph
from .build import InconsistentError, build_tree, is_consistent
from .closure import ComponentPair, closure, lmax_all
from .core import LabelTable, NewickError, TripleFormatError, TripleSet, parse_newick, parse_triple_file, to_newick
from .oracle import OracleCapError

EXIT_OK, EXIT_USAGE, EXIT_INCONSISTENT, EXIT_INVARIANT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class InvariantViolation(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(str(exc)) from None


def _load(path: str, labels: LabelTable | None = None) -> TripleSet:
    return parse_triple_file(_read(path), labels)


def _names(leaves, labels: LabelTable) -> list[str]:
    return sorted(labels.name(x) for x in leaves)


def _pair_text(P: ComponentPair, labels: LabelTable) -> str:
    return ",".join(_names(P.A, labels)) + " || " + ",".join(_names(P.B, labels))


def _pair_json(P: ComponentPair, labels: LabelTable) -> list[list[str]]:
    return [_names(P.A, labels), _names(P.B, labels)]


def _triples_json(R: TripleSet, labels: LabelTable) -> list[str]:
    return [t.format(labels) for t in R]


class Out:
    def __init__(self, command: str, as_json: bool):
        self.as_json = as_json
        self.data: dict = {"command": command, "status": "ok"}
        self.lines: list[str] = []

    def line(self, text: str = "") -> None:
        self.lines.append(text)

    def emit(self) -> None:
        if self.as_json:
            print(json.dumps(self.data, indent=2, sort_keys=True))
        elif self.lines:
            print("\n".join(self.lines))


# --------------------------------------------------------------------------


def cmd_check(args, out: Out) -> int:
    R = _load(args.file)
    ok = is_consistent(R)
    out.data.update(consistent=ok, leaves=len(R.leaf_set), triples=len(R))
    out.line("consistent" if ok else "inconsistent")
    if args.dot:
        Path(args.dot).write_text(build_ahograph(R, R.leaf_set).to_dot(R.labels), encoding="utf-8")
    if not ok:
        out.data["status"] = "inconsistent"
        return EXIT_INCONSISTENT
    return EXIT_OK


def cmd_build(args, out: Out) -> int:
    R = _load(args.file)
    T = build_tree(R)
    nwk = to_newick(T)
    out.data["newick"] = nwk
    out.line(nwk)
    return EXIT_OK


def cmd_closure(args, out: Out) -> int:
    R = _load(args.file)
    cl = closure(R, args.algo)
    if not R.issubset(cl):
        raise InvariantViolation("closure does not contain the input triples")
    out.data.update(algo=args.algo, closure=_triples_json(cl, R.labels), size=len(cl))
    for t in cl:
        out.line(t.format(R.labels))
    if args.emit_lmax:
        pairs = lmax_all(R).pairs
        out.data["lmax"] = [_pair_json(P, R.labels) for P in pairs]
        out.line()
        for P in pairs:
            out.line(_pair_text(P, R.labels))
    return EXIT_OK


def cmd_lmax(args, out: Out) -> int:
    R = _load(args.file)
    table = lmax_all(R)
    out.data["per_triple"] = {t.format(R.labels): _pair_json(P, R.labels) for t, P in table.by_triple.items()}
    out.data["lmax"] = [_pair_json(P, R.labels) for P in table.pairs]
    for t, P in table.by_triple.items():
        out.line(f"{t.format(R.labels)}\t{_pair_text(P, R.labels)}")
    return EXIT_OK


def cmd_minrep(args, out: Out) -> int:
    from .closure import lmax
    from .representative import greedy_max_weight_basis, greedy_min_rep, is_minimal_representative

    R = _load(args.file)
    if args.weights:
        W = parse_triple_file(_read(args.weights), R.labels)
        if not W.weights:
            raise UsageError("weights file carries no w= annotations")
        S = greedy_max_weight_basis(R, W.weights)
        out.data["total_weight"] = sum(W.weights[t] for t in S)
    else:
        S = greedy_min_rep(R, args.seed)
    out.data.update(size=len(S), minrep=_triples_json(S, R.labels))
    for t in S:
        out.line(t.format(R.labels))
    if args.certify:
        ok = is_minimal_representative(R, S)
        cert = {t.format(R.labels): _pair_json(lmax(S, t), R.labels) for t in S}
        out.data.update(certified=ok, certificate=cert)
        out.line()
        out.line(f"# certified minimal: {'yes' if ok else 'NO'}")
        for t in S:
            out.line(f"# {t.format(R.labels)}\t{_pair_text(lmax(S, t), R.labels)}")
        if not ok:
            raise InvariantViolation("greedy output failed bridge certification")
    return EXIT_OK


def cmd_identify(args, out: Out) -> int:
    from .tree_ident import identify_report

    labels = LabelTable()
    R = _load(args.file, labels)
    T = parse_newick(args.tree, labels)
    if not R.leaf_set <= T.leaf_set:
        raise UsageError("triple leaves missing from the tree")
    rep = identify_report(R, T)
    out.data.update(rep)
    for key, val in rep.items():
        if val is None:
            val = "undecided"
        out.line(f"{key}: {val}")
    return EXIT_OK


def cmd_matroid(args, out: Out) -> int:
    from . import matroid_checks as mc
    from .representative import greedy_min_rep

    did = False
    if args.demo_nonclosure:
        did = True
        d = mc.non_matroid_closure_demo()
        lab = d.labels
        out.data["nonclosure"] = {
            "violated": d.violated,
            "cl_X": _triples_json(d.cl_X, lab),
            "cl_X_r": _triples_json(d.cl_X_r, lab),
            "cl_X_r_prime": _triples_json(d.cl_X_r_prime, lab),
            "cl_X_r_r_prime": _triples_json(d.cl_X_both, lab),
        }
        out.line(f"X = {{{d.X.format()}}}, r = {d.r.format(lab)}, r' = {d.r_prime.format(lab)}")
        out.line(f"cl(X)      = {{{d.cl_X.format()}}}")
        out.line(f"cl(X+r)    = {{{d.cl_X_r.format()}}}")
        out.line(f"cl(X+r')   = {{{d.cl_X_r_prime.format()}}}")
        out.line(f"cl(X+r+r') = {{{d.cl_X_both.format()}}}")
        out.line(f"exchange axiom violated: {'yes' if d.violated else 'no'}")
        if not d.violated:
            raise InvariantViolation("non-closure demo did not reproduce")
    if args.file:
        did = True
        R = _load(args.file)
        sizes = mc.greedy_sizes(R, args.trials, args.seed)
        invariant = len(set(sizes)) <= 1
        out.data.update(trials=args.trials, sizes=sorted(set(sizes)), invariant=invariant)
        out.line(f"greedy basis sizes over {args.trials} trials: {sorted(set(sizes))}")
        if args.check_exchange:
            B1 = greedy_min_rep(R, args.seed)
            B2 = greedy_min_rep(R, args.seed + 1)
            rep = mc.verify_exchange(R, B1, B2)
            out.data["exchange"] = {
                "ok": rep.ok,
                "witnesses": {x.format(R.labels): y.format(R.labels) for x, y in rep.witnesses.items()},
            }
            for x, y in rep.witnesses.items():
                out.line(f"exchange {x.format(R.labels)} -> {y.format(R.labels)}")
            if not rep.ok:
                raise InvariantViolation(f"no exchange partner for {rep.violation.format(R.labels)}")
        if not invariant:
            raise InvariantViolation("greedy bases of different sizes")
    if not did:
        raise UsageError("matroid needs a triple file or --demo-nonclosure")
    return EXIT_OK


def cmd_quartet_demo(args, out: Out) -> int:
    from .quartets import quartet_counterexample_demo

    r = quartet_counterexample_demo()
    lab = r.labels
    splits = sorted(
        ("".join(_names(min(sp, key=min), lab)) for sp in r.tree.splits), key=lambda s: (len(s), s)
    )
    out.data.update(
        splits=splits,
        displayed_quartets=r.displayed,
        q_prime=[q.format(lab) for q in r.q_prime],
        q_prime_spans_only_tree=r.q_prime_spans_only_tree,
        small_representatives=len(r.small_reps),
        example_small=[q.format(lab) for q in r.small_reps[0]] if r.small_reps else [],
        sizes=sorted(r.sizes),
        no_matroid=r.no_matroid,
    )
    out.line(f"tree splits: {' '.join(splits)} ({r.displayed} displayed quartets)")
    out.line(f"Q' = {' '.join(q.format(lab) for q in r.q_prime)}; spans only T: {r.q_prime_spans_only_tree}")
    for q, n in r.q_prime_removals_span.items():
        out.line(f"  without {q.format(lab)}: {n} trees")
    out.line(f"minimal representatives of size {len(lab) - 3}: {len(r.small_reps)}")
    if r.small_reps:
        out.line(f"  e.g. {' '.join(q.format(lab) for q in r.small_reps[0])}")
    out.line(f"sizes realized: {sorted(r.sizes)}; matroid: {'no' if r.no_matroid else 'undetermined'}")
    if not r.no_matroid:
        raise InvariantViolation("quartet counterexample did not reproduce")
    return EXIT_OK


def cmd_bench(args, out: Out) -> int:
    from .bench import BenchMismatch, bench, write_csv

    try:
        grid = [int(x) for x in args.grid.split(",") if x]
    except ValueError:
        raise UsageError(f"bad grid {args.grid!r}") from None
    try:
        rows = bench(grid, args.density, args.reps, args.seed)
    except BenchMismatch as exc:
        raise InvariantViolation(str(exc)) from None
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            write_csv(rows, fh)
    out.data["rows"] = [vars(r) for r in rows]
    if not args.out:
        import io

        buf = io.StringIO()
        write_csv(rows, buf)
        out.line(buf.getvalue().rstrip("\n"))
    return EXIT_OK


def cmd_oracle(args, out: Out) -> int:
    from .oracle import closure_oracle, enumerate_minimal_reps, span

    R = _load(args.file)
    if args.action == "span":
        trees = span(R)
        out.data["trees"] = [to_newick(T) for T in trees]
        for T in trees:
            out.line(to_newick(T))
    elif args.action == "closure":
        cl = closure_oracle(R)
        out.data["closure"] = _triples_json(cl, R.labels)
        for t in cl:
            out.line(t.format(R.labels))
    else:
        reps = enumerate_minimal_reps(R)
        out.data["minimal_representatives"] = [_triples_json(S, R.labels) for S in reps]
        for S in reps:
            out.line("{" + S.format() + "}")
    return EXIT_OK


# --------------------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="JSON output")
    p = _Parser(prog="tripleclosure", description=__doc__, parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("check", parents=[common], help="test consistency")
    s.add_argument("file")
    s.add_argument("--dot", metavar="PATH", help="write the Aho graph of the input in DOT format")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("build", parents=[common], help="print the BUILD tree as Newick")
    s.add_argument("file")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("closure", parents=[common], help="compute the closure")
    s.add_argument("file")
    s.add_argument("--algo", choices=("fast", "baseline", "oracle"), default="fast")
    s.add_argument("--emit-lmax", action="store_true")
    s.set_defaults(func=cmd_closure)

    s = sub.add_parser("lmax", parents=[common], help="maximal witness pair per triple")
    s.add_argument("file")
    s.set_defaults(func=cmd_lmax)

    s = sub.add_parser("minrep", parents=[common], help="greedy minimum representative set")
    s.add_argument("file")
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--weights", metavar="FILE")
    s.add_argument("--certify", action="store_true")
    s.set_defaults(func=cmd_minrep)

    s = sub.add_parser("identify", parents=[common], help="identify/define diagnostics")
    s.add_argument("file")
    s.add_argument("--tree", required=True, metavar="NEWICK")
    s.set_defaults(func=cmd_identify)

    s = sub.add_parser("matroid", parents=[common], help="matroid checks")
    s.add_argument("file", nargs="?")
    s.add_argument("--check-exchange", action="store_true")
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--demo-nonclosure", action="store_true")
    s.set_defaults(func=cmd_matroid)

    s = sub.add_parser("quartet-demo", parents=[common], help="quartet counterexample")
    s.set_defaults(func=cmd_quartet_demo)

    s = sub.add_parser("bench", parents=[common], help="time fast vs baseline closure")
    s.add_argument("--grid", default="8,12,16")
    s.add_argument("--density", type=float, default=2.0)
    s.add_argument("--reps", type=int, default=5)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", metavar="CSV")
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("oracle", parents=[common], help="brute-force diagnostics")
    s.add_argument("action", choices=("span", "closure", "minreps"))
    s.add_argument("file")
    s.set_defaults(func=cmd_oracle)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    out = Out(args.command, getattr(args, "json", False))
    try:
        code = args.func(args, out)
    except InconsistentError as exc:
        out.data.update(status="inconsistent", error=str(exc))
        out.lines = ["inconsistent"]
        code = EXIT_INCONSISTENT
    except (UsageError, TripleFormatError, NewickError, OracleCapError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        if not out.as_json:
            return EXIT_USAGE
        out.data.update(status="error", error=str(exc))
        out.lines = []
        code = EXIT_USAGE
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        out.data.update(status="invariant_violation", error=str(exc))
        code = EXIT_INVARIANT
    out.emit()
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
